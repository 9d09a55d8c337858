"""
Per-pair seeds and everything a source derives from them.

The master stream is split into one key per pair. Both wings of pair j
use the same key for their Brownian streams; the source preparation
(A/B membership, initial speed and position, spin of wing 1) is read off
a salted sub-stream of the same key.
"""
import numpy as np

from dynamics.ensemble import ENSEMBLE_A, ENSEMBLE_B
from lab_helpers import streams
from lab_helpers.exceptions import PreconditionError

# sub-stream counters of the source preparation
_ENSEMBLE_DRAW = 0
_SPIN_DRAW = 1
_SPEED_DRAW = 2
_POSITION_DRAW = 4


def generate_pair_seeds(master_seed, pairs):
    """lambda_j for j < pairs, as uint64 stream keys."""
    if pairs < 1:
        raise PreconditionError('pairs >= 1', 'pairs=%r' % pairs)
    return streams.split_keys(master_seed, pairs)


def assign_settings(master_seed, pairs, count):
    """Setting index per pair, uniform over `count` settings."""
    key = streams.domain_key(streams.as_key(master_seed), streams.SALT_PAIR)
    draws = streams.uniform(key, np.arange(pairs, dtype=np.uint64))
    return np.minimum((draws * count).astype(np.int64), count - 1)


def source_events(keys):
    """0 for S1 (wing 1 prepared up), 1 for S2."""
    initial = streams.domain_key(keys, streams.SALT_INITIAL)
    return (streams.uniform(initial, _SPIN_DRAW) > 0.5).astype(np.int8)


def prepare_wing(keys, config, wing):
    """
    (positions, velocities, ensembles, spin codes) of one wing, in the
    wing-local frame whose x axis points away from the source.
    """
    keys = np.asarray(keys, dtype=np.uint64)
    initial = streams.domain_key(keys, streams.SALT_INITIAL)
    n = len(keys)
    ensembles = np.where(streams.uniform(initial, _ENSEMBLE_DRAW) <= 0.5,
                         ENSEMBLE_A, ENSEMBLE_B).astype(np.int8)
    positions = np.zeros((n, 3))
    positions[:, 0] = config.sigma0 * streams.standard_normal(
        initial, _POSITION_DRAW)
    velocities = np.zeros((n, 3))
    velocities[:, 0] = config.v0 + config.sigma_v * streams.standard_normal(
        initial, _SPEED_DRAW)
    spins = source_events(keys)
    if wing == 2:
        spins = spins ^ 1
    return positions, velocities, ensembles, spins
