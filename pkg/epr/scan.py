import logging
import math
from dataclasses import dataclass

import numpy as np

from lab_helpers.exceptions import ConfigError
from .experiment import simulate_pairs
from .measurement import get_measurement_model
from .stats import MIN_COUNTS

logger = logging.getLogger(__name__)


@dataclass
class ChshGridReport:
    angles_deg: np.ndarray
    e_table: np.ndarray
    stderr_table: np.ndarray
    max_value: float
    max_stderr: float
    argmax_deg: tuple
    pairs: int


def correlation_table(population, model, master_seed, angles):
    """E-hat and its error for every (mu, nu) on the angle grid."""
    k = len(angles)
    e_table = np.zeros((k, k))
    stderr = np.zeros((k, k))
    n = len(population.pair_ids)
    for i, mu in enumerate(angles):
        for j, nu in enumerate(angles):
            data = population.detection_input(
                master_seed, np.full(n, mu), np.full(n, nu))
            out1, out2 = model.detect(data)
            value = float(np.mean(out1.astype(np.int64) * out2))
            e_table[i, j] = value
            stderr[i, j] = math.sqrt(max(0.0, 1.0 - value ** 2) / n)
    return e_table, stderr


def chsh_scan(config, angles_deg, executor=None):
    """
    CHSH combination over every quadruple (mu, mu', nu, nu') of the angle
    grid. One pair population is simulated and detected at every grid
    setting with each station's own rule.
    """
    angles_deg = np.asarray(angles_deg, dtype=float)
    if len(angles_deg) < 2:
        raise ConfigError('the CHSH scan needs at least two angles')
    if config.pairs < MIN_COUNTS:
        raise ConfigError('the CHSH scan needs at least %d pairs' %
                          MIN_COUNTS)
    model = get_measurement_model(config.measurement_model)
    population = simulate_pairs(config, model.needs_dynamics,
                                executor=executor)
    angles = np.radians(angles_deg)
    e_table, stderr = correlation_table(population, model,
                                        config.master_seed, angles)
    # values[a, a', b, b'] = E(a,b) + E(a,b') + E(a',b) - E(a',b')
    values = np.abs(e_table[:, None, :, None] + e_table[:, None, None, :] +
                    e_table[None, :, :, None] - e_table[None, :, None, :])
    index = np.unravel_index(int(np.argmax(values)), values.shape)
    a, a_p, b, b_p = index
    max_stderr = math.sqrt(stderr[a, b] ** 2 + stderr[a, b_p] ** 2 +
                           stderr[a_p, b] ** 2 + stderr[a_p, b_p] ** 2)
    report = ChshGridReport(
        angles_deg, e_table, stderr, float(values[index]), max_stderr,
        tuple(float(angles_deg[i]) for i in index), config.pairs)
    logger.info('CHSH scan over %d angles: max %.6f at %s',
                len(angles_deg), report.max_value, report.argmax_deg)
    return report
