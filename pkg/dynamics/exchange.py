"""
Velocity-ordered exchange of trajectories between the A and B
sub-ensembles, bin by bin.

Within a bin, A members faster than |v_bar| and B members slower than
|v_bar| are candidates, v_bar being the arithmetic mean of the A and B
mean velocities. A candidates are scanned from the fastest, B candidates
from the slowest, ties broken by the higher trajectory id. Among the
`window` leading candidates of each side the pair minimizing
|v_A - v_B| after the swap is applied, as long as it strictly reduces the
difference.
"""
import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from lab_helpers import streams
from lab_helpers.exceptions import PreconditionError
from .ensemble import ENSEMBLE_A, ENSEMBLE_B

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 2


@dataclass(frozen=True)
class SwapRecord:
    step: int
    time: float
    bin: tuple
    a_id: int
    b_id: int
    a_speed: float
    b_speed: float
    vbar_speed: float


@dataclass
class BinExchange:
    bin: tuple
    members: np.ndarray
    swaps: list = field(default_factory=list)
    new_states: dict = field(default_factory=dict)
    delta_pre: float = 0.0
    delta_post: float = 0.0
    mixed: bool = False


@dataclass
class ExchangeResult:
    swap_log: list
    bins: list

    @property
    def swap_count(self):
        return len(self.swap_log)

    @property
    def bin_delta_pre(self):
        return float(sum(b.delta_pre for b in self.bins if b.mixed))

    @property
    def bin_delta_post(self):
        return float(sum(b.delta_post for b in self.bins if b.mixed))


def _scan_order(indices, speeds, ids, fastest_first):
    if not len(indices):
        return indices
    key_speed = -speeds[indices] if fastest_first else speeds[indices]
    return indices[np.lexsort((-ids[indices], key_speed))]


def _pairing_order(pairing_key, step, bin_index, iteration, n_states):
    pairs = [(i, k) for i in range(n_states) for k in range(n_states)
             if i != k]
    key = streams.domain_key(pairing_key, step, *bin_index)
    draws = streams.uniform(key, np.uint64(iteration) * np.uint64(64) +
                            np.arange(len(pairs), dtype=np.uint64))
    return [pairs[j] for j in np.argsort(draws, kind='stable')]


def exchange_bin(job, velocities, ensembles, states, ids, step, time,
                 superposition_mode=False, window=DEFAULT_WINDOW,
                 n_states=2, pairing_key=0):
    """Greedy exchange inside one bin; reads the arrays, never writes."""
    members = job.members
    vel = velocities[members]
    speeds = np.linalg.norm(vel, axis=1)
    member_ids = ids[members]
    is_a = ensembles[members] == ENSEMBLE_A
    local_states = states[members].copy()
    n_a = int(is_a.sum())
    n_b = len(members) - n_a
    if n_a == 0 or n_b == 0:
        return job
    job.mixed = True
    sum_a = vel[is_a].sum(axis=0)
    sum_b = vel[~is_a].sum(axis=0)
    delta = float(np.linalg.norm(sum_a / n_a - sum_b / n_b))
    job.delta_pre = delta
    weighted = superposition_mode and n_states > 2
    iteration = 0
    while True:
        vbar = float(np.linalg.norm(0.5 * (sum_a / n_a + sum_b / n_b)))
        if weighted:
            pairings = _pairing_order(pairing_key, step, job.bin, iteration,
                                      n_states)
        else:
            pairings = [None]
        chosen = None
        for pairing in pairings:
            a_mask = is_a & (speeds > vbar)
            b_mask = ~is_a & (speeds < vbar)
            if pairing is not None:
                state_b, state_a = pairing
                a_mask &= local_states == state_a
                b_mask &= local_states == state_b
            a_top = _scan_order(np.flatnonzero(a_mask), speeds, member_ids,
                                True)[:window]
            b_top = _scan_order(np.flatnonzero(b_mask), speeds, member_ids,
                                False)[:window]
            best = None
            for a, b in itertools.product(a_top, b_top):
                moved = vel[b] - vel[a]
                value = float(np.linalg.norm((sum_a + moved) / n_a -
                                             (sum_b - moved) / n_b))
                if best is None or value < best[0]:
                    best = (value, a, b)
            if best is not None and best[0] < delta:
                chosen = best + (pairing,)
                break
        if chosen is None:
            break
        value, a, b, pairing = chosen
        moved = vel[b] - vel[a]
        sum_a = sum_a + moved
        sum_b = sum_b - moved
        is_a[a], is_a[b] = False, True
        if superposition_mode:
            if pairing is None:
                local_states[a] ^= 1
                local_states[b] ^= 1
            else:
                local_states[a], local_states[b] = pairing
        job.swaps.append(SwapRecord(
            step=step, time=time, bin=job.bin,
            a_id=int(member_ids[a]), b_id=int(member_ids[b]),
            a_speed=float(speeds[a]), b_speed=float(speeds[b]),
            vbar_speed=vbar))
        job.new_states[int(members[a])] = (ENSEMBLE_B, local_states[a])
        job.new_states[int(members[b])] = (ENSEMBLE_A, local_states[b])
        delta = value
        iteration += 1
    job.delta_post = delta
    return job


def exchange_procedure(state, superposition_mode=False, window=DEFAULT_WINDOW,
                       executor=None, n_states=2, pairing_key=0):
    """
    Exchange on a copy of `state`; returns (new state, ExchangeResult).
    """
    unique, inverse = state.bins()
    mixed = any(
        len(np.unique(state.ensembles[inverse == b])) == 2
        for b in range(len(unique)))
    if not mixed:
        raise PreconditionError('A and B members sharing a bin')
    new_state = state.copy()
    result = exchange_in_place(new_state, superposition_mode, window,
                               executor, n_states, pairing_key)
    return new_state, result


def exchange_in_place(state, superposition_mode=False, window=DEFAULT_WINDOW,
                      executor=None, n_states=2, pairing_key=0):
    """Exchange in every bin of `state`; swap log in bin order."""
    if window < 1:
        raise PreconditionError('exchange window >= 1')
    unique, inverse = state.bins()
    order = np.argsort(inverse, kind='stable')
    boundaries = np.flatnonzero(np.diff(inverse[order])) + 1
    jobs = [BinExchange(tuple(int(v) for v in unique[inverse[chunk[0]]]),
                        chunk)
            for chunk in np.split(order, boundaries) if len(chunk)]

    def run(job):
        return exchange_bin(job, state.velocities, state.ensembles,
                            state.states, state.ids, state.step, state.time,
                            superposition_mode, window, n_states,
                            pairing_key)

    if executor is None:
        results = [run(job) for job in jobs]
    else:
        results = list(executor.map(run, jobs))

    swap_log = []
    for job in results:
        for index, (ensemble, code) in job.new_states.items():
            state.ensembles[index] = ensemble
            state.states[index] = code
        swap_log.extend(job.swaps)
    return ExchangeResult(swap_log, results)
