"""
Finite probability spaces, partition-generated sigma-algebras and
conditional probabilities with respect to them.
"""
from dataclasses import dataclass, field

import numpy as np

from lab_helpers.exceptions import PreconditionError, ZeroProbabilityCellError

EXACT_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class FiniteProbSpace:
    outcomes: tuple
    weights: np.ndarray

    def __post_init__(self):
        outcomes = tuple(self.outcomes)
        weights = np.array(self.weights, dtype=float)
        if len(outcomes) != len(weights):
            raise PreconditionError('one weight per outcome')
        if len(set(outcomes)) != len(outcomes):
            raise PreconditionError('distinct outcomes')
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise PreconditionError('nonnegative weights')
        if abs(weights.sum() - 1.0) > EXACT_TOLERANCE:
            raise PreconditionError('weights sum to 1',
                                    'sum=%r' % weights.sum())
        weights.flags.writeable = False
        object.__setattr__(self, 'outcomes', outcomes)
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, '_index',
                           {o: i for i, o in enumerate(outcomes)})

    @classmethod
    def uniform(cls, outcomes):
        outcomes = tuple(outcomes)
        return cls(outcomes, np.full(len(outcomes), 1.0 / len(outcomes)))

    def index(self, outcome):
        return self._index[outcome]

    def mask(self, event):
        mask = np.zeros(len(self.outcomes), dtype=bool)
        for outcome in event:
            mask[self._index[outcome]] = True
        return mask

    def probability(self, event):
        return float(self.weights[self.mask(event)].sum())

    def event(self, predicate):
        return frozenset(o for o in self.outcomes if predicate(o))


@dataclass(frozen=True)
class Partition:
    cells: tuple
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'cells',
                           tuple(frozenset(c) for c in self.cells))

    def validate(self, space):
        seen = set()
        for cell in self.cells:
            if seen & cell:
                raise PreconditionError('pairwise disjoint cells')
            seen |= cell
        if seen != set(space.outcomes):
            raise PreconditionError('cells cover the outcome space')
        if not self.degenerate:
            for cell in self.cells:
                if space.probability(cell) <= 0.0:
                    raise ZeroProbabilityCellError(cell)
        return self

    def cell_of(self, outcome):
        for cell in self.cells:
            if outcome in cell:
                return cell
        raise KeyError(outcome)


@dataclass(frozen=True, eq=False)
class ConditionalRV:
    """P(event | partition) as a function on the outcomes of `space`."""
    space: FiniteProbSpace
    partition: Partition
    values: np.ndarray = field(repr=False)

    def value(self, outcome):
        return float(self.values[self.space.index(outcome)])

    def on_cell(self, cell):
        return self.value(next(iter(cell)))

    def expectation(self):
        return float(np.dot(self.space.weights, self.values))


def conditional_probability(space, event, partition):
    partition.validate(space)
    event_mask = space.mask(event)
    values = np.zeros(len(space.outcomes))
    for cell in partition.cells:
        cell_mask = space.mask(cell)
        cell_probability = space.weights[cell_mask].sum()
        if cell_probability <= 0.0:
            raise ZeroProbabilityCellError(cell)
        joint = space.weights[cell_mask & event_mask].sum()
        values[cell_mask] = joint / cell_probability
    np.clip(values, 0.0, 1.0, out=values)
    values.flags.writeable = False
    return ConditionalRV(space, partition, values)


@dataclass
class ConditionalPropertiesReport:
    measurable: bool = True
    bounded: bool = True
    additive: bool = True
    expectation: bool = True
    intersection: bool = True
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def check_conditional_properties(space, partition, events,
                                 tol=EXACT_TOLERANCE):
    """
    Check measurability, bounds, additivity over disjoint events, the
    expectation identity and the intersection rule for the given events.
    """
    report = ConditionalPropertiesReport()
    events = [frozenset(e) for e in events]
    conditionals = [conditional_probability(space, e, partition)
                    for e in events]

    def fail(prop, detail):
        setattr(report, prop, False)
        report.failures.append((prop, detail))

    for event, rv in zip(events, conditionals):
        for cell in partition.cells:
            cell_values = rv.values[space.mask(cell)]
            if np.ptp(cell_values) > tol:
                fail('measurable', (event, cell))
        if rv.values.min() < -tol or rv.values.max() > 1.0 + tol:
            fail('bounded', event)
        if abs(rv.expectation() - space.probability(event)) > tol:
            fail('expectation', event)
        for cell in partition.cells:
            lhs = conditional_probability(space, event & cell, partition)
            rhs = space.mask(cell) * rv.values
            if np.max(np.abs(lhs.values - rhs)) > tol:
                fail('intersection', (event, cell))

    for i, first in enumerate(events):
        for j in range(i + 1, len(events)):
            second = events[j]
            if first & second:
                continue
            union = conditional_probability(space, first | second, partition)
            total = conditionals[i].values + conditionals[j].values
            if np.max(np.abs(union.values - total)) > tol:
                fail('additive', (first, second))
    return report
