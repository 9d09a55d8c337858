"""
Validation of `lab` config files. Every block is optional in the file;
missing fields are filled with their defaults so the validated mapping is
the complete config echo. Float defaults are written as floats so that
re-reading an echo yields the same echo.
"""
from rest_framework import serializers

from epr.config import (
    DECISION_MODE, DEFAULT_SETTINGS_DEG, DISTURBANCE_MODES, FLUCTUATION_LAWS,
    INDEPENDENT_BORN, MEASUREMENT_MODEL_NAMES, SHARED_STREAM_THRESHOLD, WINGS)
from epr.stats import MIN_COUNTS
from oracle.validation import START_REST, STARTS

MAX_SEED = 2 ** 63 - 1
CHSH_SETTINGS_DEG = [0.0, 90.0, 45.0, 315.0]


def default_settings_deg():
    return [[float(mu), float(nu)] for mu, nu in DEFAULT_SETTINGS_DEG]


def default_chsh_settings_deg():
    return list(CHSH_SETTINGS_DEG)


def settings_field():
    return serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(),
                                    min_length=2, max_length=2),
        min_length=1, default=default_settings_deg)


def chsh_settings_field():
    """(mu, mu', nu, nu') in degrees."""
    return serializers.ListField(child=serializers.FloatField(),
                                 min_length=4, max_length=4,
                                 default=default_chsh_settings_deg)


def chsh_quadruple(angles):
    mu, mu_p, nu, nu_p = angles
    return [(mu, nu), (mu, nu_p), (mu_p, nu), (mu_p, nu_p)]


class StrictSerializer(serializers.Serializer):
    """Rejects unknown keys and materializes the nested blocks it names."""
    nested_blocks = ()

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(str(key) for key in set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError(
                    {key: ['Unknown field.'] for key in unknown})
            data = dict(data)
            for name in self.nested_blocks:
                if data.get(name) is None:
                    data[name] = {}
        return super().to_internal_value(data)


class PhysicsSerializer(StrictSerializer):
    m0 = serializers.FloatField(default=1.0)
    tau = serializers.FloatField(default=1.0)
    tau_coll = serializers.FloatField(default=1.0)
    kB = serializers.FloatField(default=1.0)
    hbar = serializers.FloatField(default=1.0)


class EprPhysicsSerializer(PhysicsSerializer):
    tau = serializers.FloatField(default=2.0)
    tau_coll = serializers.FloatField(default=0.5)


class DensityPhysicsSerializer(PhysicsSerializer):
    tau = serializers.FloatField(default=1.0)
    tau_coll = serializers.FloatField(default=0.1)


class VerifyTheoremSerializer(StrictSerializer):
    grid_step = serializers.FloatField(default=0.05, max_value=0.5)
    lemma_models = serializers.IntegerField(default=1000, min_value=1)
    settings = settings_field()
    chsh_settings = chsh_settings_field()

    def validate_grid_step(self, value):
        if not value > 0:
            raise serializers.ValidationError('Must be positive.')
        return value


class EprSerializer(StrictSerializer):
    nested_blocks = ('physics',)

    pairs = serializers.IntegerField(default=10000, min_value=1)
    flight_time = serializers.FloatField(default=1.0)
    dt = serializers.FloatField(default=0.05)
    measurement_model = serializers.ChoiceField(
        choices=MEASUREMENT_MODEL_NAMES, default=SHARED_STREAM_THRESHOLD)
    ensemble_size = serializers.IntegerField(default=1000, min_value=2)
    settings = settings_field()
    chsh_settings = chsh_settings_field()
    v0 = serializers.FloatField(default=10.0)
    sigma_v = serializers.FloatField(default=1.0, min_value=0.0)
    sigma0 = serializers.FloatField(default=0.5, min_value=0.0)
    bin_width = serializers.FloatField(default=0.1)
    window = serializers.IntegerField(default=2, min_value=1)
    superposition = serializers.BooleanField(default=True)
    track_positions = serializers.BooleanField(default=False)
    detector_records = serializers.BooleanField(default=False)
    physics = EprPhysicsSerializer()

    def validate(self, attrs):
        available = {tuple(s) for s in attrs['settings']}
        missing = [s for s in chsh_quadruple(attrs['chsh_settings'])
                   if s not in available]
        if missing:
            raise serializers.ValidationError(
                {'chsh_settings': ['Setting pairs %s are not in settings.' %
                                   missing]})
        return attrs


class SwapSerializer(EprSerializer):
    second_source_seed = serializers.IntegerField(
        default=None, allow_null=True, min_value=0, max_value=MAX_SEED)


class DisturbanceSerializer(EprSerializer):
    magnitudes = serializers.ListField(
        child=serializers.FloatField(min_value=0.0), min_length=1,
        default=lambda: [0.0, 0.01, 0.05, 0.1, 1.0])
    target_wing = serializers.ChoiceField(choices=WINGS, default=2)
    law = serializers.ChoiceField(choices=FLUCTUATION_LAWS,
                                  default='gaussian')
    mode = serializers.ChoiceField(choices=DISTURBANCE_MODES,
                                   default=DECISION_MODE)


class ChshScanSerializer(EprSerializer):
    measurement_model = serializers.ChoiceField(
        choices=MEASUREMENT_MODEL_NAMES, default=INDEPENDENT_BORN)
    pairs = serializers.IntegerField(default=10000, min_value=MIN_COUNTS)
    angle_step_deg = serializers.FloatField(default=10.0, min_value=0.5,
                                            max_value=180.0)


class DensitySerializer(StrictSerializer):
    nested_blocks = ('physics',)

    trajectories = serializers.IntegerField(default=100000, min_value=2)
    sigma0 = serializers.FloatField(default=1.0)
    t_final = serializers.FloatField(default=2.0)
    dt = serializers.FloatField(default=0.01)
    bin_width = serializers.FloatField(default=None, allow_null=True)
    x_min = serializers.FloatField(default=-12.0)
    x_max = serializers.FloatField(default=12.0)
    grid_points = serializers.IntegerField(default=481)
    oracle_dt = serializers.FloatField(default=0.01)
    ks_threshold = serializers.FloatField(default=0.05, min_value=0.0)
    start = serializers.ChoiceField(choices=STARTS, default=START_REST)
    physics = DensityPhysicsSerializer()


class LabConfigSerializer(StrictSerializer):
    nested_blocks = ('verify_theorem', 'epr', 'swap', 'density',
                     'disturbance', 'chsh_scan')

    master_seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED)
    verify_theorem = VerifyTheoremSerializer()
    epr = EprSerializer()
    swap = SwapSerializer()
    density = DensitySerializer()
    disturbance = DisturbanceSerializer()
    chsh_scan = ChshScanSerializer()
