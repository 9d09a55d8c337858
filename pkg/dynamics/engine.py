import logging
import math
from dataclasses import dataclass, field

import numpy as np

from lab_helpers.exceptions import PreconditionError
from .ensemble import ENSEMBLE_A, ENSEMBLE_B
from .exchange import DEFAULT_WINDOW, exchange_in_place
from .integrator import langevin_update

logger = logging.getLogger(__name__)

C_MAX_FACTOR = 100.0


@dataclass
class StepDiagnostics:
    step: int
    time: float
    mean_a: np.ndarray
    mean_b: np.ndarray
    delta_pre: float
    delta_post: float
    bin_delta_pre: float
    bin_delta_post: float
    swaps: int
    capped: int
    kinetic_energy: float


@dataclass
class EvolutionResult:
    state: object
    diagnostics: list
    swap_log: list
    c_max: float
    ensemble_history: np.ndarray = None
    state_history: np.ndarray = None
    position_history: np.ndarray = None
    velocity_history: np.ndarray = None
    capped_total: int = 0
    extras: dict = field(default_factory=dict)


def default_c_max(velocities):
    rms = math.sqrt(float(np.mean(np.sum(velocities ** 2, axis=1)))) \
        if len(velocities) else 0.0
    return C_MAX_FACTOR * rms if rms > 0 else math.inf


def _global_means(state):
    means = []
    for code in (ENSEMBLE_A, ENSEMBLE_B):
        members = state.ensembles == code
        if members.any():
            means.append(state.velocities[members].mean(axis=0))
        else:
            means.append(np.full(3, np.nan))
    return means


def _delta(means):
    difference = means[0] - means[1]
    if np.any(np.isnan(difference)):
        return math.nan
    return float(np.linalg.norm(difference))


def _external_forces(f_ext, state):
    if f_ext is None:
        return 0.0
    if callable(f_ext):
        return np.asarray(f_ext(state.positions, state.time), dtype=float)
    return np.broadcast_to(np.asarray(f_ext, dtype=float), (len(state), 3))


def evolve(state, sources, f_ext, p, steps, dt, superposition_mode=False,
           exchange=True, window=DEFAULT_WINDOW, c_max=None, kicks=None,
           executor=None, n_states=2, pairing_key=0, track_history=False,
           track_positions=False):
    """
    Repeat force sampling, the Langevin step of every trajectory and the
    bin-wise exchange for `steps` steps of length `dt`.

    `sources` holds one force stream per trajectory (same order as the
    state). `f_ext` is None, a constant 3-vector or a callable
    (positions, time) -> forces. `kicks`, if given, is a callable
    (step, state) -> velocity increments applied before the exchange.
    """
    if steps < 1:
        raise PreconditionError('steps >= 1', 'steps=%r' % steps)
    if len(sources) != len(state):
        raise PreconditionError('one force stream per trajectory')
    state = state.copy()
    if c_max is None:
        c_max = default_c_max(state.velocities)

    def snapshot():
        return (state.ensembles.copy(), state.states.copy(),
                state.positions.copy() if track_positions else None,
                state.velocities.copy() if track_positions else None)

    history = [snapshot()] if track_history or track_positions else None
    diagnostics, swap_log = [], []
    capped_total = 0
    for _ in range(steps):
        forces = sources.forces(state.step) + _external_forces(f_ext, state)
        state.positions, state.velocities, capped = langevin_update(
            state.positions, state.velocities, state.ensembles, forces, p,
            dt, c_max)
        if kicks is not None:
            state.velocities = state.velocities + kicks(state.step, state)
        state.step += 1
        state.time += dt
        pre_means = _global_means(state)
        if exchange:
            result = exchange_in_place(state, superposition_mode, window,
                                       executor, n_states, pairing_key)
            swaps = result.swap_log
            bin_pre, bin_post = result.bin_delta_pre, result.bin_delta_post
        else:
            swaps, bin_pre, bin_post = [], 0.0, 0.0
        post_means = _global_means(state)
        n_capped = int(capped.sum())
        capped_total += n_capped
        if n_capped:
            logger.warning('step %d: %d trajectories capped at c_max=%r',
                           state.step, n_capped, c_max)
        diagnostics.append(StepDiagnostics(
            step=state.step, time=state.time, mean_a=post_means[0],
            mean_b=post_means[1], delta_pre=_delta(pre_means),
            delta_post=_delta(post_means), bin_delta_pre=bin_pre,
            bin_delta_post=bin_post, swaps=len(swaps), capped=n_capped,
            kinetic_energy=float(0.5 * p.m0 * np.mean(
                np.sum(state.velocities ** 2, axis=1)))))
        swap_log.extend(swaps)
        if history is not None:
            history.append(snapshot())
        logger.debug('step %d: %d swaps', state.step, len(swaps))

    result = EvolutionResult(state, diagnostics, swap_log, c_max,
                             capped_total=capped_total)
    if history is not None:
        result.ensemble_history = np.array([h[0] for h in history])
        result.state_history = np.array([h[1] for h in history])
        if track_positions:
            result.position_history = np.array([h[2] for h in history])
            result.velocity_history = np.array([h[3] for h in history])
    return result
