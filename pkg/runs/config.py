import logging
from collections.abc import Mapping

import yaml

from dynamics.params import PhysParams
from epr.config import DisturbanceSpec, PairConfig
from lab_helpers.exceptions import ConfigError
from oracle.validation import DensityPlan
from probspace.families import SettingPair
from .serializers import LabConfigSerializer

logger = logging.getLogger(__name__)

# config blocks per subcommand
BLOCKS = {
    'verify-theorem': 'verify_theorem',
    'epr': 'epr',
    'swap': 'swap',
    'density': 'density',
    'disturbance': 'disturbance',
    'chsh-scan': 'chsh_scan',
}


def plain(value):
    if isinstance(value, Mapping):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value


def read_config_file(path):
    try:
        with open(path, encoding='utf-8') as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError('cannot read config %s: %s' % (path, exc))
    except yaml.YAMLError as exc:
        raise ConfigError('malformed config %s: %s' % (path, exc))
    if data is None:
        return {}
    if not isinstance(data, Mapping):
        raise ConfigError('config %s must be a mapping' % path)
    return data


def load_config(path=None, seed=None):
    """
    Validated, fully materialized config from the YAML file at `path`
    (optional); `seed` overrides its master_seed.
    """
    data = dict(read_config_file(path)) if path else {}
    if seed is not None:
        data['master_seed'] = seed
    serializer = LabConfigSerializer(data=data)
    if not serializer.is_valid():
        raise ConfigError('invalid config: %s' % plain(serializer.errors))
    config = plain(serializer.validated_data)
    logger.debug('resolved config: %s', config)
    return config


def dump_config(config):
    return yaml.safe_dump(plain(config), sort_keys=True,
                          default_flow_style=False)


def physics_from(block):
    return PhysParams(**block['physics'])


def settings_from(pairs_deg):
    return tuple(SettingPair.from_degrees(mu, nu) for mu, nu in pairs_deg)


def chsh_angles(block):
    """(mu, mu', nu, nu') in radians."""
    return tuple(SettingPair.from_degrees(a, 0.0).mu
                 for a in block['chsh_settings'])


def pair_config_from(config, name):
    block = config[name]
    return PairConfig(
        pairs=block['pairs'], master_seed=config['master_seed'],
        flight_time=block['flight_time'], dt=block['dt'],
        measurement_model=block['measurement_model'],
        physics=physics_from(block), ensemble_size=block['ensemble_size'],
        settings=settings_from(block['settings']), v0=block['v0'],
        sigma_v=block['sigma_v'], sigma0=block['sigma0'],
        bin_width=block['bin_width'], window=block['window'],
        superposition=block['superposition'],
        second_source_seed=block.get('second_source_seed'),
        track_positions=block['track_positions'])


def disturbance_spec_from(config):
    block = config['disturbance']
    return DisturbanceSpec(0.0, target_wing=block['target_wing'],
                           law=block['law'], mode=block['mode'])


def density_plan_from(config):
    block = dict(config['density'])
    physics = physics_from(block)
    del block['physics']
    return DensityPlan(master_seed=config['master_seed'], physics=physics,
                       **block)
