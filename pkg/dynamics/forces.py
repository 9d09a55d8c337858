"""
Brownian forces drawn from counter-based streams.

Component c of the force acting at step t on a trajectory with stream key
k uses counters 8t + 2c and 8t + 2c + 1 of k. Counter 8t + 6 is the
shared uniform read by threshold detectors; 8t + 7 is unused.
"""
from dataclasses import dataclass

import numpy as np

from lab_helpers import streams
from lab_helpers.exceptions import PreconditionError

SLOTS_PER_STEP = 8
SHARED_UNIFORM_SLOT = 6


def _step_counter(t, slot):
    if t < 0:
        raise PreconditionError('t >= 0', 't=%r' % t)
    return np.uint64(int(t) * SLOTS_PER_STEP + slot)


@dataclass(frozen=True, eq=False)
class BrownianSourceBank:
    """One force stream per trajectory, vectorized."""
    keys: np.ndarray
    sigma: float
    dims: int = 3

    def __post_init__(self):
        object.__setattr__(self, 'keys',
                           np.asarray(self.keys, dtype=np.uint64).reshape(-1))

    def __len__(self):
        return len(self.keys)

    def forces(self, t):
        forces = np.zeros((len(self.keys), 3))
        if self.sigma == 0.0:
            return forces
        for component in range(self.dims):
            counter = _step_counter(t, 2 * component)
            forces[:, component] = self.sigma * streams.standard_normal(
                self.keys, counter)
        return forces

    def shared_uniform(self, t):
        return streams.uniform(self.keys,
                               _step_counter(t, SHARED_UNIFORM_SLOT))

    def subset(self, index):
        return BrownianSourceBank(self.keys[index], self.sigma, self.dims)


@dataclass(frozen=True)
class BrownianSource:
    key: int
    sigma: float
    dims: int = 3

    def bank(self):
        return BrownianSourceBank(np.array([streams.as_key(self.key)]),
                                  self.sigma, self.dims)


def sample_brownian_force(src, t):
    """3-vector force of stream `src` at step `t`."""
    return src.bank().forces(t)[0]


def sources_for(keys, params, dims=3):
    return BrownianSourceBank(keys, params.brownian_sigma, dims)
