from probspace.families import SettingPair
from ..config import PairConfig


def degrees(*pairs):
    return tuple(SettingPair.from_degrees(mu, nu) for mu, nu in pairs)


def pair_config(pairs, master_seed=1, **kwargs):
    kwargs.setdefault('ensemble_size', 500)
    return PairConfig(pairs=pairs, master_seed=master_seed, **kwargs)
