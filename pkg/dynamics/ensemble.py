"""
Trajectories and ensemble state.

The state is stored as parallel arrays (ids, positions, velocities,
ensemble codes, state codes); `Trajectory` is the per-trajectory view.
Ensemble code 0 is A (accelerated by friction), 1 is B (damped). For
spin ensembles the state code is 0 for up and 1 for down; weighted
superpositions use one code per superposed state.
"""
import math
from dataclasses import dataclass, field, replace

import numpy as np

from lab_helpers.exceptions import ConfigError, PreconditionError
from spin.states import DOWN, UP

ENSEMBLE_A = 0
ENSEMBLE_B = 1
ENSEMBLE_LABELS = ('A', 'B')
SPIN_CODES = {UP: 0, DOWN: 1}
SPIN_BY_CODE = (UP, DOWN)


def ensemble_code(label):
    try:
        return ENSEMBLE_LABELS.index(label)
    except ValueError:
        raise ConfigError('unknown ensemble label %r' % (label,))


@dataclass(frozen=True)
class BinGrid:
    """Cubic bins of edge `width`, centred on `origin`; `dims` active axes."""
    width: float
    dims: int = 3
    origin: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if not self.width > 0 or math.isinf(self.width):
            raise ConfigError('bin width must be positive and finite')
        if self.dims not in (1, 2, 3):
            raise ConfigError('dims must be 1, 2 or 3')
        object.__setattr__(self, 'origin',
                           tuple(float(o) for o in self.origin))

    @property
    def volume(self):
        return self.width ** self.dims

    def indices(self, positions):
        """Integer bin index per trajectory, shape (n, 3); inactive axes 0."""
        positions = np.asarray(positions, dtype=float).reshape(-1, 3)
        scaled = (positions - np.array(self.origin)) / self.width + 0.5
        indices = np.floor(scaled).astype(np.int64)
        indices[:, self.dims:] = 0
        return indices

    def centers(self, indices):
        centers = np.asarray(indices, dtype=float) * self.width + \
            np.array(self.origin)
        centers[:, self.dims:] = 0.0
        return centers


@dataclass(frozen=True, eq=False)
class Trajectory:
    id: int
    position: np.ndarray
    velocity: np.ndarray
    ensemble: str = 'A'
    spin: str = UP

    def __post_init__(self):
        object.__setattr__(self, 'position',
                           np.array(self.position, dtype=float).reshape(3))
        object.__setattr__(self, 'velocity',
                           np.array(self.velocity, dtype=float).reshape(3))
        ensemble_code(self.ensemble)

    @property
    def speed(self):
        return float(np.linalg.norm(self.velocity))

    def evolved(self, position, velocity):
        return replace(self, position=position, velocity=velocity)


@dataclass
class EnsembleState:
    ids: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    ensembles: np.ndarray
    states: np.ndarray
    grid: BinGrid
    time: float = 0.0
    step: int = 0
    keys: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.ids = np.asarray(self.ids, dtype=np.int64)
        n = len(self.ids)
        self.positions = np.array(self.positions, dtype=float).reshape(n, 3)
        self.velocities = np.array(self.velocities,
                                   dtype=float).reshape(n, 3)
        self.ensembles = np.array(self.ensembles, dtype=np.int8).reshape(n)
        self.states = np.array(self.states, dtype=np.int8).reshape(n)
        if len(np.unique(self.ids)) != n:
            raise PreconditionError('unique trajectory ids')

    def __len__(self):
        return len(self.ids)

    @classmethod
    def from_trajectories(cls, trajectories, grid, time=0.0):
        trajectories = list(trajectories)
        return cls(
            ids=[t.id for t in trajectories],
            positions=[t.position for t in trajectories],
            velocities=[t.velocity for t in trajectories],
            ensembles=[ensemble_code(t.ensemble) for t in trajectories],
            states=[SPIN_CODES[t.spin] for t in trajectories],
            grid=grid, time=time)

    def trajectory(self, i):
        code = int(self.states[i])
        return Trajectory(
            id=int(self.ids[i]), position=self.positions[i].copy(),
            velocity=self.velocities[i].copy(),
            ensemble=ENSEMBLE_LABELS[self.ensembles[i]],
            spin=SPIN_BY_CODE[code] if code < 2 else str(code))

    @property
    def trajectories(self):
        return [self.trajectory(i) for i in range(len(self))]

    def copy(self):
        return EnsembleState(
            ids=self.ids.copy(), positions=self.positions.copy(),
            velocities=self.velocities.copy(),
            ensembles=self.ensembles.copy(), states=self.states.copy(),
            grid=self.grid, time=self.time, step=self.step,
            keys=None if self.keys is None else self.keys.copy())

    @property
    def speeds(self):
        return np.linalg.norm(self.velocities, axis=1)

    def bins(self):
        """(bin index rows sorted lexicographically, inverse per trajectory)."""
        indices = self.grid.indices(self.positions)
        unique, inverse = np.unique(indices, axis=0, return_inverse=True)
        return unique, inverse.reshape(-1)

    def ensemble_means(self):
        means = []
        for code in (ENSEMBLE_A, ENSEMBLE_B):
            members = self.ensembles == code
            means.append(self.velocities[members].mean(axis=0)
                         if members.any() else np.full(3, np.nan))
        return means


def superposition_counts(total, amplitudes):
    """
    Integer sub-ensemble sizes proportional to total * |a_i|^2
    (largest remainder), summing to `total`.
    """
    weights = np.abs(np.asarray(amplitudes, dtype=complex)) ** 2
    if weights.sum() <= 0:
        raise ConfigError('superposition amplitudes are all zero')
    weights = weights / weights.sum()
    exact = total * weights
    counts = np.floor(exact).astype(int)
    remainder = total - counts.sum()
    order = np.argsort(-(exact - counts), kind='stable')
    counts[order[:remainder]] += 1
    return counts
