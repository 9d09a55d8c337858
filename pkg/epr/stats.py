"""
Outcome counts of EPR runs and the statistics read off them.

Counts are kept per setting pair as an array of shape (sources, 4): one
row per source event, one column per joint outcome in the order
(up up, up down, down up, down down).
"""
import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from lab_helpers.exceptions import (
    InsufficientCountsError, MissingSettingError, PreconditionError)
from probspace.families import DEFAULT_SOURCES, SettingPair

logger = logging.getLogger(__name__)

MIN_COUNTS = 100
SIGMA_FACTOR = 4.0

# wing -> outcome cells where that wing reads "up"
_UP_CELLS = {1: (0, 1), 2: (0, 2)}


def outcome_cells(out1, out2):
    """Joint-outcome column for outcome signs (+1 up, -1 down)."""
    return 2 * (np.asarray(out1) < 0) + (np.asarray(out2) < 0)


@dataclass
class RunStats:
    counts: dict = field(default_factory=dict)
    sources: tuple = DEFAULT_SOURCES

    @classmethod
    def from_outcomes(cls, settings, setting_index, source, out1, out2,
                      sources=DEFAULT_SOURCES):
        table = np.zeros((len(settings), len(sources), 4), dtype=np.int64)
        np.add.at(table, (np.asarray(setting_index), np.asarray(source),
                          outcome_cells(out1, out2)), 1)
        return cls({setting: table[k] for k, setting in enumerate(settings)},
                   tuple(sources))

    def merge(self, other):
        if self.sources != other.sources:
            raise PreconditionError('identical source events')
        counts = {s: c.copy() for s, c in self.counts.items()}
        for setting, table in other.counts.items():
            if setting in counts:
                counts[setting] = counts[setting] + table
            else:
                counts[setting] = table.copy()
        return RunStats(counts, self.sources)

    @property
    def settings(self):
        return sorted(self.counts)

    def table(self, setting):
        try:
            return self.counts[setting]
        except KeyError:
            raise MissingSettingError(setting)

    def joint(self, setting):
        return self.table(setting).sum(axis=0)

    def total(self, setting=None):
        if setting is None:
            return int(sum(int(t.sum()) for t in self.counts.values()))
        return int(self.table(setting).sum())

    def marginal_up(self, setting, wing):
        """(count of local 'up' on `wing`, total) at `setting`."""
        joint = self.joint(setting)
        return int(joint[list(_UP_CELLS[wing])].sum()), int(joint.sum())

    def anticorrelated_fraction(self, setting):
        joint = self.joint(setting)
        total = joint.sum()
        return float((joint[1] + joint[2]) / total) if total else math.nan

    def __eq__(self, other):
        return (isinstance(other, RunStats) and
                self.sources == other.sources and
                set(self.counts) == set(other.counts) and
                all(np.array_equal(t, other.counts[s])
                    for s, t in self.counts.items()))


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float
    counts: int = 0


def estimate_correlation(stats, s):
    """Plug-in E = P(same) - P(different) with binomial standard error."""
    uu, ud, du, dd = stats.joint(s)
    n = int(uu + ud + du + dd)
    if n < MIN_COUNTS:
        raise InsufficientCountsError(
            '%d pairs at %s, need at least %d' % (n, s, MIN_COUNTS))
    value = float((uu + dd - ud - du) / n)
    return Estimate(value, math.sqrt(max(0.0, 1.0 - value ** 2) / n), n)


def chsh_estimate(stats, mu, mu_p, nu, nu_p):
    """|E(mu,nu) + E(mu,nu') + E(mu',nu) - E(mu',nu')| and its error."""
    terms = [(mu, nu, 1), (mu, nu_p, 1), (mu_p, nu, 1), (mu_p, nu_p, -1)]
    value, variance = 0.0, 0.0
    for a, b, sign in terms:
        estimate = estimate_correlation(stats, SettingPair(a, b))
        value += sign * estimate.value
        variance += estimate.stderr ** 2
    return Estimate(abs(value), math.sqrt(variance))


@dataclass
class ShiftReport:
    max_marginal_shift: float
    stderr: float
    passed: bool
    witness: tuple = None
    comparisons: list = field(default_factory=list)


def _proportion_gap(k1, n1, k2, n2):
    p1, p2 = k1 / n1, k2 / n2
    stderr = math.sqrt(p1 * (1 - p1) / n1 + p2 * (1 - p2) / n2)
    return abs(p1 - p2), stderr


def no_signaling_test(stats):
    """
    Compares each wing's local 'up' frequency across setting pairs that
    share that wing's axis. Passes when every shift stays within 4 standard
    errors.
    """
    comparisons = []
    for first, second in itertools.combinations(stats.settings, 2):
        for wing, local in ((1, 'mu'), (2, 'nu')):
            if getattr(first, local) != getattr(second, local):
                continue
            k1, n1 = stats.marginal_up(first, wing)
            k2, n2 = stats.marginal_up(second, wing)
            if not n1 or not n2:
                continue
            shift, stderr = _proportion_gap(k1, n1, k2, n2)
            comparisons.append((wing, first, second, shift, stderr))
    if not comparisons:
        raise PreconditionError('two setting pairs sharing a local axis')
    worst = max(comparisons, key=lambda c: c[3])
    passed = all(shift <= SIGMA_FACTOR * stderr
                 for _, _, _, shift, stderr in comparisons)
    if not passed:
        logger.warning('no-signaling check failed: wing %d shift %.4f '
                       'between %s and %s', worst[0], worst[3], worst[1],
                       worst[2])
    return ShiftReport(worst[3], worst[4], passed, worst[:3], comparisons)


@dataclass
class FactorizationReport:
    max_gap: float
    stderr: float
    passed: bool
    witness: tuple = None
    gaps: dict = field(default_factory=dict)


def passive_factorization_test(stats):
    """
    max over settings, source events and outcome cells of
    |P(o1, o2 | S) - P(o1 | S) P(o2 | S)|. `passed` means the run
    factorizes within 4 standard errors; entangled runs fail it.
    """
    worst = (-1.0, 0.0, None)
    gaps = {}
    for setting in stats.settings:
        table = stats.table(setting)
        for i, source in enumerate(stats.sources):
            n = int(table[i].sum())
            if not n:
                continue
            joint = table[i].reshape(2, 2) / n
            product = np.outer(joint.sum(axis=1), joint.sum(axis=0))
            cell_gaps = np.abs(joint - product)
            index = np.unravel_index(int(np.argmax(cell_gaps)), (2, 2))
            gap = float(cell_gaps[index])
            p = float(joint[index])
            stderr = math.sqrt(max(p * (1 - p), 0.25 / n) / n)
            gaps[(setting, source)] = gap
            if gap > worst[0]:
                worst = (gap, stderr, (setting, source) + tuple(index))
    if worst[2] is None:
        raise PreconditionError('recorded source events')
    gap, stderr, witness = worst
    return FactorizationReport(gap, stderr, gap <= SIGMA_FACTOR * stderr,
                               witness, gaps)


def source_marginal_test(stats):
    """Frequency of S1 per setting against the pooled frequency."""
    pooled = sum(stats.table(s)[0].sum() for s in stats.settings)
    total = stats.total()
    if not total:
        raise PreconditionError('at least one recorded pair')
    comparisons = []
    for setting in stats.settings:
        n = stats.total(setting)
        if not n:
            continue
        k = int(stats.table(setting)[0].sum())
        shift, stderr = _proportion_gap(k, n, pooled, total)
        comparisons.append((setting, shift, stderr))
    worst = max(comparisons, key=lambda c: c[1])
    passed = all(shift <= SIGMA_FACTOR * stderr + 1e-15
                 for _, shift, stderr in comparisons)
    return ShiftReport(worst[1], worst[2], passed, (worst[0],), comparisons)
