import math
from dataclasses import dataclass, field
from typing import Optional

from dynamics.exchange import DEFAULT_WINDOW
from dynamics.params import PhysParams
from lab_helpers.exceptions import ConfigError
from probspace.families import SettingPair

INDEPENDENT_BORN = 'IndependentBorn'
SHARED_STREAM_THRESHOLD = 'SharedStreamThreshold'
ANALYTIC_QUANTUM_ORACLE = 'AnalyticQuantumOracle'
MEASUREMENT_MODEL_NAMES = (INDEPENDENT_BORN, SHARED_STREAM_THRESHOLD,
                           ANALYTIC_QUANTUM_ORACLE)

DEFAULT_SETTINGS_DEG = ((0, 45), (0, 315), (90, 45), (90, 315), (0, 0),
                        (90, 90))

FLUCTUATION_LAWS = ('sign', 'gaussian', 'uniform')
DECISION_MODE = 'decision'
DYNAMIC_MODE = 'dynamic'
DISTURBANCE_MODES = (DECISION_MODE, DYNAMIC_MODE)
WINGS = (1, 2)


def default_settings():
    return tuple(SettingPair.from_degrees(mu, nu)
                 for mu, nu in DEFAULT_SETTINGS_DEG)


def epr_physics():
    return PhysParams(m0=1.0, tau=2.0, tau_coll=0.5)


@dataclass(frozen=True)
class PairConfig:
    """
    One EPR run: `pairs` sources each ejecting two particles that fly for
    `flight_time` in 1-D wing-local frames before detection.

    Pairs are simulated in batches of `ensemble_size`; each batch forms
    the A/B ensemble of each wing. `second_source_seed` feeds the wing-2
    source from a different past (no shared lambda values).
    """
    pairs: int
    master_seed: int
    flight_time: float = 1.0
    dt: float = 0.05
    measurement_model: str = SHARED_STREAM_THRESHOLD
    physics: PhysParams = field(default_factory=epr_physics)
    ensemble_size: int = 1000
    settings: tuple = field(default_factory=default_settings)
    v0: float = 10.0
    sigma_v: float = 1.0
    sigma0: float = 0.5
    bin_width: float = 0.1
    window: int = DEFAULT_WINDOW
    superposition: bool = True
    second_source_seed: Optional[int] = None
    track_positions: bool = False

    def __post_init__(self):
        if self.pairs < 1:
            raise ConfigError('pairs must be >= 1, got %r' % self.pairs)
        if not self.dt > 0 or self.dt > self.flight_time:
            raise ConfigError('need 0 < dt <= flight_time (dt=%r, T=%r)' %
                              (self.dt, self.flight_time))
        if self.dt > self.physics.tau:
            raise ConfigError('dt must not exceed tau')
        if self.measurement_model not in MEASUREMENT_MODEL_NAMES:
            raise ConfigError('unknown measurement model %r' %
                              (self.measurement_model,))
        if self.ensemble_size < 2:
            raise ConfigError('ensemble_size must be >= 2')
        if not self.settings:
            raise ConfigError('at least one setting pair is required')
        if self.sigma_v < 0 or self.sigma0 < 0:
            raise ConfigError('initial spreads must be nonnegative')
        if not self.bin_width > 0:
            raise ConfigError('bin_width must be positive')
        if self.window < 1:
            raise ConfigError('exchange window must be >= 1')
        object.__setattr__(self, 'settings', tuple(self.settings))

    @property
    def steps(self):
        return int(round(self.flight_time / self.dt))

    @property
    def source_seeds(self):
        second = self.master_seed if self.second_source_seed is None \
            else self.second_source_seed
        return self.master_seed, second


@dataclass(frozen=True)
class DisturbanceSpec:
    """
    Zero-mean per-step velocity kicks of size `magnitude` on one wing,
    applied to the swap decisions (`decision`) or to the Langevin step
    (`dynamic`).
    """
    magnitude: float
    target_wing: int = 2
    law: str = 'gaussian'
    mode: str = DECISION_MODE

    def __post_init__(self):
        if not self.magnitude >= 0 or math.isinf(self.magnitude):
            raise ConfigError('disturbance magnitude must be finite and '
                              '>= 0, got %r' % self.magnitude)
        if self.target_wing not in WINGS:
            raise ConfigError('target wing must be 1 or 2')
        if self.law not in FLUCTUATION_LAWS:
            raise ConfigError('unknown fluctuation law %r' % (self.law,))
        if self.mode not in DISTURBANCE_MODES:
            raise ConfigError('unknown disturbance mode %r' % (self.mode,))
