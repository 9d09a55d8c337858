import numpy as np

from lab_helpers import streams
from ..ensemble import BinGrid, EnsembleState
from ..forces import BrownianSourceBank


def line_state(velocities, ensembles, positions=None, width=1.0, states=None,
               ids=None):
    """1-D ensemble; velocities and positions along x."""
    n = len(velocities)
    vel = np.zeros((n, 3))
    vel[:, 0] = velocities
    pos = np.zeros((n, 3))
    if positions is not None:
        pos[:, 0] = positions
    return EnsembleState(
        ids=np.arange(n) if ids is None else ids, positions=pos,
        velocities=vel, ensembles=ensembles,
        states=np.zeros(n) if states is None else states,
        grid=BinGrid(width, dims=1))


def gaussian_state(n, sigma_x, sigma_v, seed, width=None):
    rng = np.random.default_rng(seed)
    positions = rng.normal(0.0, sigma_x, n)
    velocities = rng.normal(0.0, sigma_v, n)
    return line_state(velocities, np.arange(n) % 2, positions,
                      width=width or sigma_x / 5)


def bank_for(state, seed, sigma, dims=1):
    return BrownianSourceBank(streams.split_keys(seed, len(state)), sigma,
                              dims)
