import logging
from dataclasses import dataclass, field, replace

import numpy as np

from lab_helpers.exceptions import ConfigError, PreconditionError
from .flight import simulate_wing
from .measurement import DetectionInput, get_measurement_model
from .seeds import assign_settings, generate_pair_seeds, source_events
from .stats import RunStats

logger = logging.getLogger(__name__)


@dataclass
class EprResult:
    config: object
    settings: tuple
    setting_index: np.ndarray
    source: np.ndarray
    out1: np.ndarray
    out2: np.ndarray
    stats: RunStats
    flights: dict = field(default_factory=dict)

    @property
    def pairs(self):
        return len(self.setting_index)

    def spin_history(self, wing):
        """(pairs, steps + 1) spin codes of `wing` (0 up, 1 down)."""
        return np.concatenate([f.spin_history for f in self.flights[wing]])

    def ensemble_history(self, wing):
        return np.concatenate([f.ensemble_history
                               for f in self.flights[wing]])

    def position_history(self, wing):
        return np.concatenate([f.position_history
                               for f in self.flights[wing]])

    def swap_log(self, wing):
        return [record for f in self.flights[wing] for record in f.swap_log]

    def capped(self, wing):
        return sum(f.capped for f in self.flights.get(wing, ()))

    @property
    def population(self):
        return PairPopulation(np.arange(self.pairs, dtype=np.int64),
                              self.source, self.flights)


def _resolve_assignments(config, assignments):
    if assignments is None:
        settings = config.settings
        index = assign_settings(config.master_seed, config.pairs,
                                len(settings))
        return settings, index
    assignments = list(assignments)
    if len(assignments) != config.pairs:
        raise ConfigError('%d setting assignments for %d pairs' %
                          (len(assignments), config.pairs))
    settings = tuple(sorted(set(assignments)))
    lookup = {s: k for k, s in enumerate(settings)}
    return settings, np.array([lookup[s] for s in assignments],
                              dtype=np.int64)


@dataclass
class PairPopulation:
    """Simulated pairs up to the detectors, before any setting is chosen."""
    pair_ids: np.ndarray
    source: np.ndarray
    flights: dict = field(default_factory=dict)

    def detection_input(self, master_seed, mu, nu):
        data = DetectionInput(master_seed, self.pair_ids, mu, nu)
        if self.flights:
            data.spins1, data.spins2 = (
                np.concatenate([f.final_spins for f in self.flights[wing]])
                for wing in (1, 2))
            data.shared1, data.shared2 = (
                np.concatenate([f.shared for f in self.flights[wing]])
                for wing in (1, 2))
        return data


def simulate_pairs(config, dynamics=True, kicks=None, executor=None):
    """
    Flights of all pairs, batch by batch. Both wings of pair j draw their
    Brownian forces from the stream of lambda_j; with
    `config.second_source_seed` wing 2 gets its own stream. `kicks` maps a
    wing to a velocity-kick callable. Batches run on `executor` when
    given.
    """
    kicks = kicks or {}
    seed1, seed2 = config.source_seeds
    keys = {1: generate_pair_seeds(seed1, config.pairs),
            2: generate_pair_seeds(seed2, config.pairs)}
    pair_ids = np.arange(config.pairs, dtype=np.int64)
    population = PairPopulation(pair_ids, source_events(keys[1]))
    if not dynamics:
        return population

    def run_batch(start):
        batch = slice(start, start + config.ensemble_size)
        return tuple(
            simulate_wing(config, keys[wing][batch], pair_ids[batch], wing,
                          kicks.get(wing))
            for wing in (1, 2))

    starts = range(0, config.pairs, config.ensemble_size)
    if executor is None:
        batches = [run_batch(start) for start in starts]
    else:
        batches = list(executor.map(run_batch, starts))
    population.flights = {1: [b[0] for b in batches],
                          2: [b[1] for b in batches]}
    logger.info('simulated %d pairs in %d batches', config.pairs,
                len(batches))
    return population


def detect_population(config, population, assignments=None, model=None):
    """
    Detects already simulated pairs at the settings given per pair by
    `assignments` (default: uniform draws over config.settings from the
    master seed). The same population can be detected at any number of
    setting choices.
    """
    model = model or get_measurement_model(config.measurement_model)
    settings, setting_index = _resolve_assignments(config, assignments)
    mu = np.array([s.mu for s in settings])[setting_index]
    nu = np.array([s.nu for s in settings])[setting_index]
    out1, out2 = model.detect(
        population.detection_input(config.master_seed, mu, nu))
    stats = RunStats.from_outcomes(settings, setting_index,
                                   population.source, out1, out2)
    return EprResult(config, settings, setting_index, population.source,
                     out1, out2, stats, population.flights)


def run_epr(config, assignments=None, model=None, kicks=None,
            executor=None):
    """Simulates `config.pairs` pairs and detects them."""
    model = model or get_measurement_model(config.measurement_model)
    population = simulate_pairs(config, model.needs_dynamics, kicks,
                                executor)
    return detect_population(config, population, assignments, model)


def entanglement_swap_scenario(config, second_source_seed=None,
                               assignments=None, executor=None):
    """
    Two disjoint sources, each emitting one of the measured particles.
    Both derive their streams from lambda values fixed in their common
    past; a different `second_source_seed` removes that common past.
    """
    if second_source_seed is not None:
        config = replace(config, second_source_seed=second_source_seed)
    return run_epr(config, assignments, executor=executor).stats


@dataclass
class SpinTrajectoryReport:
    ok: bool
    opposite_at_source: bool
    unmatched_flips: int
    forbidden_transitions: int


def validate_spin_trajectories(result):
    """
    Checks that the wings start with opposite spins and that every spin
    flip coincides with a logged swap of that trajectory (and, with spin
    coupling on, every ensemble change with a spin flip).
    """
    if not result.flights:
        raise PreconditionError('simulated spin trajectories')
    first = result.spin_history(1)
    second = result.spin_history(2)
    same_source = result.config.second_source_seed in (
        None, result.config.master_seed)
    opposite = bool(np.all(first[:, 0] != second[:, 0])) \
        if same_source else True
    unmatched = forbidden = 0
    for wing in (1, 2):
        spins = result.spin_history(wing)
        ensembles = result.ensemble_history(wing)
        flips = spins[:, 1:] != spins[:, :-1]
        changes = ensembles[:, 1:] != ensembles[:, :-1]
        swapped = np.zeros_like(flips)
        for record in result.swap_log(wing):
            swapped[record.a_id, record.step - 1] = True
            swapped[record.b_id, record.step - 1] = True
        unmatched += int(np.sum(flips & ~swapped))
        if result.config.superposition:
            forbidden += int(np.sum(flips != changes))
    return SpinTrajectoryReport(
        opposite and not unmatched and not forbidden, opposite, unmatched,
        forbidden)


def position_gap(result):
    """Largest |x1 - x2| between the wing-local positions of a pair."""
    if not result.config.track_positions or not result.flights:
        raise PreconditionError('tracked positions')
    return float(np.max(np.abs(result.position_history(1) -
                               result.position_history(2))))
