import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from lab_helpers.exceptions import PreconditionError
from .families import LABELS, SettingPair, random_local_model
from .space import EXACT_TOLERANCE, conditional_probability

logger = logging.getLogger(__name__)

LEMMA_TOLERANCE = 1e-9


@dataclass
class LocalityReport:
    ok: bool
    max_deviation: float
    witness: tuple = None


@dataclass
class DeterminismReport:
    """
    `witness_events` holds, per equal-axis setting, the source cells whose
    event coincides with {out1 = up} up to null sets; settings without such
    a set are left out. `up_probabilities` is P(out1 = up) per setting.
    """
    is_deterministic: bool
    witness_events: dict = field(default_factory=dict)
    up_probabilities: dict = field(default_factory=dict)
    max_distance: float = 0.0

    @property
    def witness_event(self):
        if not self.witness_events:
            return None
        return self.witness_events[min(self.witness_events)]

    @property
    def has_witness(self):
        """
        Every equal-axis setting has a witness, and an empty witness only
        stands for an {out1 = up} event of probability zero.
        """
        if not self.up_probabilities:
            return False
        for setting, up in self.up_probabilities.items():
            witness = self.witness_events.get(setting)
            if witness is None:
                return False
            if not witness and up > EXACT_TOLERANCE:
                return False
        return True


@dataclass
class ChshScanResult:
    max_value: float
    argmax: tuple
    grid_points: int


def _wing_conditionals(model, setting, wing, label):
    space = model.space(setting)
    event = model.outcome_event(space, wing, label)
    partition = model.source_partition(setting)
    return space, partition, event, conditional_probability(
        space, event, partition)


def _remote_pairs(model):
    """Setting pairs that share one local axis: (wing, first, second)."""
    settings = model.settings
    pairs = []
    for first, second in itertools.combinations(settings, 2):
        if first.mu == second.mu:
            pairs.append((1, first, second))
        if first.nu == second.nu:
            pairs.append((2, first, second))
    return pairs


def is_actively_local(model, tol=EXACT_TOLERANCE):
    pairs = _remote_pairs(model)
    if not pairs:
        raise PreconditionError('two settings sharing one axis')
    worst, witness = 0.0, None
    for wing, first, second in pairs:
        for label in LABELS:
            space_a, partition_a, event_a, cond_a = _wing_conditionals(
                model, first, wing, label)
            space_b, partition_b, event_b, cond_b = _wing_conditionals(
                model, second, wing, label)
            deviation = abs(space_a.probability(event_a) -
                            space_b.probability(event_b))
            if deviation > worst:
                worst, witness = deviation, (wing, first, second, label, None)
            for source in model.sources:
                cell_a = next(c for c in partition_a.cells
                              if next(iter(c))[0] == source)
                cell_b = next(c for c in partition_b.cells
                              if next(iter(c))[0] == source)
                deviation = abs(cond_a.on_cell(cell_a) -
                                cond_b.on_cell(cell_b))
                if deviation > worst:
                    worst = deviation
                    witness = (wing, first, second, label, source)
    return LocalityReport(worst <= tol, worst, witness)


def is_passively_local(model, tol=EXACT_TOLERANCE):
    worst, witness = 0.0, None
    for setting in model.settings:
        space = model.space(setting)
        partition = model.source_partition(setting)
        for out1, out2 in itertools.product(LABELS, LABELS):
            first = model.outcome_event(space, 1, out1)
            second = model.outcome_event(space, 2, out2)
            joint = conditional_probability(space, first & second, partition)
            marginal_1 = conditional_probability(space, first, partition)
            marginal_2 = conditional_probability(space, second, partition)
            gaps = np.abs(joint.values -
                          marginal_1.values * marginal_2.values)
            index = int(np.argmax(gaps))
            if gaps[index] > worst:
                worst = float(gaps[index])
                witness = (setting, space.outcomes[index][0], out1, out2)
    return LocalityReport(worst <= tol, worst, witness)


def correlation_coefficient(model, setting):
    joint = model.joint(setting)
    return float(joint[0, 0] + joint[1, 1] - joint[0, 1] - joint[1, 0])


def chsh(model, mu, mu_p, nu, nu_p):
    e = lambda a, b: correlation_coefficient(model, SettingPair(a, b))
    return abs(e(mu, nu) + e(mu, nu_p) + e(mu_p, nu) - e(mu_p, nu_p))


def bell_original(model, mu, nu, nu_p):
    e = lambda a, b: correlation_coefficient(model, SettingPair(a, b))
    return abs(e(mu, nu) - e(mu, nu_p)) - e(nu, nu_p)


def chsh_grid(grid_step):
    count = int(math.floor(1.0 / grid_step + 1e-9))
    grid = [k * grid_step for k in range(count + 1)]
    if grid[-1] < 1.0 - 1e-12:
        grid.append(1.0)
    grid[-1] = min(grid[-1], 1.0)
    return np.array(grid)


def conditional_chsh_bound_scan(grid_step):
    """
    Maximum of the CHSH combination of conditional correlations
    E = -(2 P_mu - 1)(2 P_nu - 1) over a grid of the four conditional
    probabilities in [0, 1].
    """
    if not 0.0 < grid_step <= 0.5:
        raise PreconditionError('0 < grid_step <= 0.5',
                                'grid_step=%r' % grid_step)
    grid = chsh_grid(grid_step)
    signed = 2.0 * grid - 1.0
    # remaining axes: (P_mu', P_nu, P_nu')
    a_p = signed[:, None, None]
    b = signed[None, :, None]
    b_p = signed[None, None, :]
    best, argmax = -1.0, None
    for i, a in enumerate(signed):
        values = np.abs(-(a * b) - (a * b_p) - (a_p * b) + (a_p * b_p))
        index = np.unravel_index(int(np.argmax(values)), values.shape)
        if values[index] > best:
            best = float(values[index])
            argmax = (float(grid[i]), float(grid[index[0]]),
                      float(grid[index[1]]), float(grid[index[2]]))
    logger.info('conditional CHSH scan: step=%s points=%d max=%r',
                grid_step, len(grid) ** 4, best)
    return ChshScanResult(best, argmax, len(grid) ** 4)


def _equal_axis_settings(model):
    return [s for s in model.settings if s.is_equal_axis]


def deterministic_passive_locality_check(model, tol=LEMMA_TOLERANCE):
    """
    For models with equal-axis anticorrelation and passive locality, the
    equal-axis conditionals are indicator functions of a source event.
    """
    equal_axis = _equal_axis_settings(model)
    if not equal_axis:
        raise PreconditionError('equal-axis equivalence',
                                'no equal-axis setting in the model')
    for setting in equal_axis:
        joint = model.joint(setting)
        if joint[0, 0] > EXACT_TOLERANCE or joint[1, 1] > EXACT_TOLERANCE:
            raise PreconditionError('equal-axis equivalence',
                                    'setting %s has equal outcomes' % setting)
    passive = is_passively_local(model)
    if not passive.ok:
        raise PreconditionError(
            'passive locality',
            'max deviation %.6g at %s' % (passive.max_deviation,
                                          passive.witness))

    report = DeterminismReport(True)
    for setting in equal_axis:
        space, partition, event, conditional = _wing_conditionals(
            model, setting, 1, LABELS[0])
        witness = set()
        for cell, source in zip(partition.cells, model.sources):
            value = conditional.on_cell(cell)
            distance = min(value, 1.0 - value)
            report.max_distance = max(report.max_distance, distance)
            if distance > tol:
                report.is_deterministic = False
            elif value > 0.5:
                witness.add(source)
        # the witness event must coincide with {out1 = up} up to null sets
        witness_event = space.event(lambda o: o[0] in witness)
        mismatch = space.probability(witness_event ^ event)
        report.up_probabilities[setting] = space.probability(event)
        if mismatch > tol:
            report.is_deterministic = False
            continue
        report.witness_events[setting] = frozenset(witness)
    return report


@dataclass
class LemmaBatteryReport:
    models_tested: int
    candidates_drawn: int
    deterministic_count: int
    witnesses_found: int

    @property
    def ok(self):
        return (self.deterministic_count == self.models_tested and
                self.witnesses_found == self.models_tested)


def lemma_battery(seed, count):
    """
    Draw candidate models until `count` of them satisfy equal-axis
    anticorrelation and passive locality, and check each is deterministic.
    """
    rng = np.random.default_rng(seed)
    tested = drawn = deterministic = witnesses = 0
    while tested < count:
        drawn += 1
        model = random_local_model(rng)
        try:
            report = deterministic_passive_locality_check(model)
        except PreconditionError:
            continue
        tested += 1
        deterministic += int(report.is_deterministic)
        witnesses += int(report.has_witness)
    logger.info('lemma battery: %d models from %d candidates', tested, drawn)
    return LemmaBatteryReport(tested, drawn, deterministic, witnesses)
