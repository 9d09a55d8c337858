import logging
from dataclasses import dataclass

import numpy as np

from lab_helpers.exceptions import IncompatibleGridError, PreconditionError
from .wavefunction import expectation_force, expectation_velocity

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class BinnedDensity:
    """Histogram density with one cell of width dx per grid point."""
    grid: object
    rho: np.ndarray
    samples: int = 0
    outside: int = 0


def histogram_on_grid(positions, grid, drop_outside=False):
    """
    Positions off the grid raise IncompatibleGridError, or with
    `drop_outside` are counted in `outside` and left out of the
    normalization.
    """
    positions = np.asarray(positions, dtype=float).reshape(-1)
    if not len(positions):
        raise PreconditionError('at least one position')
    index = np.floor((positions - grid.x_min) / grid.dx + 0.5).astype(
        np.int64)
    outside = (index < 0) | (index >= grid.n)
    if outside.any() and not drop_outside:
        raise IncompatibleGridError(
            '%d positions fall outside the grid [%r, %r]' %
            (int(outside.sum()), grid.x_min, grid.x_max))
    index = index[~outside]
    if not len(index):
        raise PreconditionError('at least one position on the grid')
    counts = np.bincount(index, minlength=grid.n)
    return BinnedDensity(grid, counts / (len(index) * grid.dx), len(index),
                         int(outside.sum()))


@dataclass(frozen=True)
class DensityComparison:
    l1_distance: float
    ks_distance: float


def compare_density(ensemble_rho, psi):
    """
    L1 and Kolmogorov-Smirnov distances between a histogram density and
    |psi|^2 on the same grid.
    """
    grid = psi.grid
    if isinstance(ensemble_rho, BinnedDensity):
        if ensemble_rho.grid != grid:
            raise IncompatibleGridError(
                'histogram grid %r differs from wave function grid %r' %
                (ensemble_rho.grid, grid))
        rho = ensemble_rho.rho
    else:
        rho = grid.check_values(ensemble_rho, 'histogram density')
    rho = np.asarray(rho, dtype=float)
    total = float(rho.sum() * grid.dx)
    if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
        raise PreconditionError('normalized ensemble density',
                                'integral=%r' % total)
    reference = psi.density()
    l1 = float(np.sum(np.abs(rho - reference)) * grid.dx)
    ks = float(np.max(np.abs(np.cumsum(rho - reference) * grid.dx)))
    return DensityComparison(l1_distance=min(l1, 2.0),
                             ks_distance=min(max(ks, 0.0), 1.0))


@dataclass
class EhrenfestReport:
    max_residual: float
    times: np.ndarray
    velocities: np.ndarray
    forces: np.ndarray
    residuals: np.ndarray


def ehrenfest_check(snapshots, V, p):
    """
    Residual of d<v>/dt - <F>/m0 at the interior snapshots, the time
    derivative taken by centred differences.
    """
    snapshots = list(snapshots)
    if len(snapshots) < 3:
        raise PreconditionError('at least 3 snapshots',
                                'got %d' % len(snapshots))
    times = np.array([psi.time for psi in snapshots])
    spacing = np.diff(times)
    if not spacing.min() > 0 or \
            not np.allclose(spacing, spacing[0], rtol=1e-6, atol=0.0):
        raise PreconditionError('uniform snapshot spacing')
    velocities = np.array([expectation_velocity(psi, p)
                           for psi in snapshots])
    forces = np.array([expectation_force(psi, V) for psi in snapshots])
    derivative = (velocities[2:] - velocities[:-2]) / \
        (times[2:] - times[:-2])
    residuals = np.abs(derivative - forces[1:-1] / p.m0)
    report = EhrenfestReport(float(residuals.max()), times, velocities,
                             forces, residuals)
    logger.debug('Ehrenfest residual over %d snapshots: %r', len(snapshots),
                 report.max_residual)
    return report
