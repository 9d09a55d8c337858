"""
Robustness of equal-axis anticorrelation against small velocity
disturbances acting on one wing only.

In `decision` mode the disturbance enters where the wing decides its
swaps: each logged swap of the undisturbed flight is re-decided with the
kicked speeds against the unchanged |v_bar|, and a swap whose A speed no
longer exceeds |v_bar| (or whose B speed no longer falls below it) does
not happen, which flips the spin of both trajectories. Only decisions
within |delta| of |v_bar| can change. `dynamic` mode feeds the kicks into
the Langevin step instead and lets every consequence propagate.
"""
import logging
from dataclasses import dataclass, replace

import numpy as np

from lab_helpers import streams
from probspace.families import SettingPair
from .config import DECISION_MODE
from .experiment import run_epr
from .measurement import get_measurement_model
from .stats import RunStats

logger = logging.getLogger(__name__)

# |delta| counts as small against the velocity half-width below this ratio
SMALLNESS_RATIO = 0.1


def fluctuations(law, pair_keys, step):
    """Zero-mean unit-scale draws per pair for step `step`."""
    counter = np.asarray(step, dtype=np.uint64) * np.uint64(2)
    if law == 'sign':
        return np.where(streams.uniform(pair_keys, counter) <= 0.5, -1.0, 1.0)
    if law == 'uniform':
        return 2.0 * streams.uniform(pair_keys, counter) - 1.0
    return streams.standard_normal(pair_keys, counter)


def _pair_keys(spec, master_seed, ids):
    key = streams.domain_key(streams.as_key(master_seed),
                             streams.SALT_DISTURBANCE, spec.target_wing)
    return streams.counter_hash(key, np.asarray(ids, dtype=np.uint64))


def make_kicks(spec, master_seed):
    """Velocity increments (step, state) -> (n, 3) along the flight axis."""
    if spec.magnitude == 0:
        return None

    def kicks(step, state):
        increments = np.zeros((len(state), 3))
        increments[:, 0] = spec.magnitude * fluctuations(
            spec.law, _pair_keys(spec, master_seed, state.ids), step)
        return increments

    return kicks


def undone_swaps(swap_log, spec, master_seed):
    """
    Mask over `swap_log` of the swaps the disturbance prevents. The kick of
    a trajectory at a decision acts along its direction of motion, so its
    speed moves by delta while |v_bar| stays put.
    """
    if not swap_log or spec.magnitude == 0:
        return np.zeros(len(swap_log), dtype=bool)
    columns = np.array([(r.a_id, r.b_id, r.step) for r in swap_log],
                       dtype=np.int64)
    speeds = np.array([(r.a_speed, r.b_speed, r.vbar_speed)
                       for r in swap_log])
    a_ids, b_ids, steps = columns.T
    # the kick of step t acts before the exchange logged at t + 1
    steps = steps - 1
    a_speed, b_speed, vbar = speeds.T
    delta_a = spec.magnitude * fluctuations(
        spec.law, _pair_keys(spec, master_seed, a_ids), steps)
    delta_b = spec.magnitude * fluctuations(
        spec.law, _pair_keys(spec, master_seed, b_ids), steps)
    return (np.abs(a_speed + delta_a) <= vbar) | \
        (np.abs(b_speed + delta_b) >= vbar)


def spin_flips(swap_log, undone, pairs):
    """Per pair, whether an odd number of its swaps was undone."""
    ids = np.array([(r.a_id, r.b_id) for r in swap_log],
                   dtype=np.int64).reshape(-1, 2)[undone]
    return np.bincount(ids.ravel(), minlength=pairs) % 2 == 1


@dataclass
class DisturbanceRow:
    magnitude: float
    relative_magnitude: float
    efficiency: float
    efficiency_drop: float
    altered_swap_fraction: float
    swap_decisions: int
    undone_swaps: int
    precondition_ok: bool


def equal_axis_setting(config):
    for setting in config.settings:
        if setting.is_equal_axis:
            return setting
    return SettingPair(0.0, 0.0)


def altered_swap_fraction(swap_log, magnitude):
    """Share of swap decisions with a speed within |delta| of |v_bar|."""
    if not swap_log:
        return 0.0
    margins = np.array([min(abs(r.a_speed - r.vbar_speed),
                            abs(r.b_speed - r.vbar_speed))
                        for r in swap_log])
    return float(np.mean(margins < magnitude))


def _redetect(reference, setting, wing, flips):
    """Equal-axis efficiency of the reference run with `wing` spins flipped."""
    config = reference.config
    n = reference.pairs
    data = reference.population.detection_input(
        config.master_seed, np.full(n, setting.mu), np.full(n, setting.nu))
    name = 'spins%d' % wing
    spins = getattr(data, name)
    setattr(data, name, np.where(flips, -spins, spins).astype(np.int8))
    out1, out2 = get_measurement_model(config.measurement_model).detect(data)
    stats = RunStats.from_outcomes((setting,), np.zeros(n, dtype=np.int64),
                                   reference.source, out1, out2)
    return stats.anticorrelated_fraction(setting)


def disturbance_sweep(config, spec, magnitudes, executor=None):
    """
    Equal-axis efficiency (anticorrelated fraction) per |delta| in
    `magnitudes`, the target wing of `spec` disturbed at every step.
    """
    setting = equal_axis_setting(config)
    assignments = [setting] * config.pairs
    reference = run_epr(config, assignments, executor=executor)
    baseline = reference.stats.anticorrelated_fraction(setting)
    # models detecting without dynamics have no swaps to disturb
    decisions = reference.swap_log(spec.target_wing) \
        if reference.flights else []
    half_width = config.sigma_v
    rows = []
    for magnitude in magnitudes:
        magnitude = abs(float(magnitude))
        disturbed = replace(spec, magnitude=magnitude)
        undone = undone_swaps(decisions, disturbed, config.master_seed)
        if magnitude == 0 or not reference.flights:
            efficiency = baseline
        elif spec.mode == DECISION_MODE:
            flips = spin_flips(decisions, undone, config.pairs) \
                if config.superposition else np.zeros(config.pairs, bool)
            efficiency = _redetect(reference, setting, spec.target_wing,
                                   flips)
        else:
            result = run_epr(
                config, assignments, executor=executor,
                kicks={spec.target_wing: make_kicks(disturbed,
                                                    config.master_seed)})
            efficiency = result.stats.anticorrelated_fraction(setting)
        if half_width:
            relative = magnitude / half_width
        else:
            relative = 0.0 if magnitude == 0 else np.inf
        small = relative <= SMALLNESS_RATIO
        if not small:
            logger.warning('|delta|=%r is not small against the velocity '
                           'half-width %r', magnitude, half_width)
        rows.append(DisturbanceRow(
            magnitude=magnitude, relative_magnitude=float(relative),
            efficiency=efficiency, efficiency_drop=baseline - efficiency,
            altered_swap_fraction=altered_swap_fraction(decisions,
                                                        magnitude),
            swap_decisions=len(decisions), undone_swaps=int(undone.sum()),
            precondition_ok=small))
        logger.info('disturbance |delta|=%r (%s): efficiency %.6f, %d of %d '
                    'swaps undone', magnitude, spec.mode, efficiency,
                    int(undone.sum()), len(decisions))
    return rows
