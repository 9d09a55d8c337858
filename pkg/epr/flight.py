import logging
from dataclasses import dataclass

import numpy as np

from dynamics.engine import evolve
from dynamics.ensemble import BinGrid, EnsembleState
from dynamics.forces import sources_for
from .seeds import prepare_wing

logger = logging.getLogger(__name__)

FLIGHT_DIMS = 1


@dataclass
class WingFlight:
    """One wing of one batch of pairs, from the source to the detector."""
    wing: int
    pair_ids: np.ndarray
    final_spins: np.ndarray
    shared: np.ndarray
    spin_history: np.ndarray
    ensemble_history: np.ndarray
    swap_log: list
    position_history: np.ndarray = None
    capped: int = 0


def spin_signs(codes):
    return np.where(np.asarray(codes) == 0, 1, -1).astype(np.int8)


def simulate_wing(config, keys, pair_ids, wing, kicks=None):
    """
    Evolves the wing-`wing` particles of the pairs `pair_ids` (stream keys
    `keys`) as one A/B ensemble under zero external force, with spin
    flips tied to ensemble swaps when `config.superposition` is set.
    """
    positions, velocities, ensembles, spins = prepare_wing(keys, config,
                                                           wing)
    grid = BinGrid(config.bin_width, dims=FLIGHT_DIMS)
    state = EnsembleState(ids=pair_ids, positions=positions,
                          velocities=velocities, ensembles=ensembles,
                          states=spins, grid=grid, keys=keys)
    bank = sources_for(keys, config.physics, dims=FLIGHT_DIMS)
    result = evolve(state, bank, None, config.physics, config.steps,
                    config.dt, superposition_mode=config.superposition,
                    window=config.window, kicks=kicks, track_history=True,
                    track_positions=config.track_positions)
    logger.debug('wing %d batch from pair %d: %d swaps', wing,
                 int(pair_ids[0]), len(result.swap_log))
    positions = None
    if config.track_positions:
        positions = result.position_history[:, :, 0].T.copy()
    return WingFlight(
        wing=wing, pair_ids=np.asarray(pair_ids),
        final_spins=spin_signs(result.state.states),
        shared=bank.shared_uniform(config.steps),
        spin_history=result.state_history.T.copy(),
        ensemble_history=result.ensemble_history.T.copy(),
        swap_log=result.swap_log, position_history=positions,
        capped=result.capped_total)
