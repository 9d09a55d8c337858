"""
Setting-indexed families of measures: one joint distribution over
(source event, outcome 1, outcome 2) per pair of detector axes.
"""
import math
from dataclasses import dataclass

import numpy as np

from lab_helpers.exceptions import MissingSettingError, PreconditionError
from spin.operators import quantum_joint_probs
from spin.states import DOWN, UP, Axis
from .space import EXACT_TOLERANCE, FiniteProbSpace, Partition

TWO_PI = 2.0 * math.pi
DEFAULT_SOURCES = ('S1', 'S2')
OUTCOME_INDEX = {UP: 0, DOWN: 1}
LABELS = (UP, DOWN)


def normalize_angle(angle):
    angle = float(angle) % TWO_PI
    # values within rounding of 2*pi fold back to 0
    if TWO_PI - angle < 1e-15:
        angle = 0.0
    return angle


@dataclass(frozen=True, order=True)
class SettingPair:
    mu: float
    nu: float

    def __post_init__(self):
        object.__setattr__(self, 'mu', normalize_angle(self.mu))
        object.__setattr__(self, 'nu', normalize_angle(self.nu))

    @classmethod
    def from_degrees(cls, mu_deg, nu_deg):
        return cls(math.radians(mu_deg), math.radians(nu_deg))

    @property
    def mu_deg(self):
        return float('%.12g' % math.degrees(self.mu))

    @property
    def nu_deg(self):
        return float('%.12g' % math.degrees(self.nu))

    @property
    def relative_angle(self):
        return math.acos(max(-1.0, min(1.0, math.cos(self.mu - self.nu))))

    @property
    def is_equal_axis(self):
        return self.relative_angle < 1e-12

    def __str__(self):
        return '(%sdeg, %sdeg)' % (self.mu_deg, self.nu_deg)


class SettingIndexedModel:
    """
    tables[s] has shape (len(sources), 2, 2): probability of
    (source, out1, out2) with outcome index 0 = up, 1 = down.
    """

    def __init__(self, tables, sources=DEFAULT_SOURCES):
        if not tables:
            raise PreconditionError('at least one setting pair')
        self.sources = tuple(sources)
        self._tables = {}
        for setting, table in tables.items():
            table = np.array(table, dtype=float).reshape(
                len(self.sources), 2, 2)
            if np.any(table < 0):
                raise PreconditionError('nonnegative probabilities',
                                        str(setting))
            if abs(table.sum() - 1.0) > EXACT_TOLERANCE:
                raise PreconditionError('probabilities sum to 1',
                                        str(setting))
            table.flags.writeable = False
            self._tables[setting] = table
        marginals = np.array([t.sum(axis=(1, 2))
                              for t in self._tables.values()])
        if np.max(np.ptp(marginals, axis=0)) > EXACT_TOLERANCE:
            raise PreconditionError('identical source marginal across '
                                    'settings')
        self.source_weights = marginals[0]

    @property
    def settings(self):
        return sorted(self._tables)

    def __contains__(self, setting):
        return setting in self._tables

    def table(self, setting):
        try:
            return self._tables[setting]
        except KeyError:
            raise MissingSettingError(setting)

    def joint(self, setting):
        """(2, 2) joint outcome table summed over source events."""
        return self.table(setting).sum(axis=0)

    def space(self, setting):
        table = self.table(setting)
        outcomes = [(source, out1, out2)
                    for source in self.sources
                    for out1 in LABELS
                    for out2 in LABELS]
        return FiniteProbSpace(outcomes, table.reshape(-1))

    def source_partition(self, setting):
        space = self.space(setting)
        cells = [frozenset(o for o in space.outcomes if o[0] == source)
                 for source in self.sources]
        return Partition(cells).validate(space)

    @staticmethod
    def outcome_event(space, wing, label):
        return space.event(lambda o: o[wing] == label)


def product_model(settings, sources, source_weights, wing1_up, wing2_up):
    """
    Model whose outcomes are independent given the source event.
    wing1_up(setting, source) and wing2_up(setting, source) return the
    conditional probabilities of 'up' on each wing.
    """
    tables = {}
    for setting in settings:
        table = np.zeros((len(sources), 2, 2))
        for i, source in enumerate(sources):
            p = wing1_up(setting, source)
            q = wing2_up(setting, source)
            table[i] = source_weights[i] * np.outer([p, 1 - p], [q, 1 - q])
        tables[setting] = table
    return SettingIndexedModel(tables, sources)


def build_quantum_epr_model(settings, source_weights=(0.5, 0.5),
                            sources=DEFAULT_SOURCES):
    if not settings:
        raise PreconditionError('nonempty settings')
    weights = np.asarray(source_weights, dtype=float)
    tables = {}
    for setting in settings:
        uu, ud, du, dd = quantum_joint_probs(Axis.planar(setting.mu),
                                             Axis.planar(setting.nu))
        joint = np.array([[uu, ud], [du, dd]])
        tables[setting] = weights[:, None, None] * joint[None, :, :]
    return SettingIndexedModel(tables, sources)


def random_local_model(rng, settings=None):
    """
    Candidate model with an equal-axis setting and random per-cell wing
    conditionals. Some candidates are passively local, some respect
    equal-axis anticorrelation, some both.
    """
    if settings is None:
        settings = [SettingPair(0.0, 0.0),
                    SettingPair(0.0, math.pi / 2),
                    SettingPair(math.pi / 2, math.pi / 2)]
    cell_count = int(rng.integers(2, 5))
    sources = tuple('S%d' % (i + 1) for i in range(cell_count))
    weights = rng.dirichlet(np.ones(cell_count))
    weights[-1] = 1.0 - weights[:-1].sum()

    def draw_probability():
        if rng.random() < 0.8:
            return float(rng.integers(0, 2))
        return float(rng.random())

    tables = {}
    for setting in settings:
        table = np.zeros((cell_count, 2, 2))
        for i in range(cell_count):
            p = draw_probability()
            q = 1.0 - p if rng.random() < 0.9 else draw_probability()
            if rng.random() < 0.9:
                conditional = np.outer([p, 1 - p], [q, 1 - q])
            else:
                conditional = np.array([[0.0, p], [1.0 - p, 0.0]])
            table[i] = weights[i] * conditional
        tables[setting] = table
    return SettingIndexedModel(tables, sources)
