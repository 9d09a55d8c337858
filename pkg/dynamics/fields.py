from dataclasses import dataclass

import numpy as np

from lab_helpers.exceptions import EmptyGridError
from .ensemble import ensemble_code


@dataclass
class FieldEstimate:
    """
    Fields on the occupied bins only, one row per bin in lexicographic
    index order. u is NaN along an axis where a bin has no occupied
    neighbour on either side.
    """
    indices: np.ndarray
    centers: np.ndarray
    counts: np.ndarray
    rho: np.ndarray
    v: np.ndarray
    u: np.ndarray
    bin_width: float
    dims: int

    @property
    def occupied(self):
        return self.counts > 0

    @property
    def bin_volume(self):
        return self.bin_width ** self.dims

    def total_probability(self):
        return float(self.rho.sum() * self.bin_volume)


def _neighbour_rows(indices, axis, shift):
    """Row of the bin `shift` steps along `axis`, -1 where it is empty."""
    lookup = {row: i for i, row in enumerate(map(tuple, indices.tolist()))}
    moved = indices.copy()
    moved[:, axis] += shift
    return np.array([lookup.get(row, -1) for row in map(tuple, moved.tolist())],
                    dtype=np.int64)


def _log_gradient(log_rho, indices, axis, width):
    """Central differences, one-sided where a neighbour is missing."""
    ahead = _neighbour_rows(indices, axis, 1)
    behind = _neighbour_rows(indices, axis, -1)
    forward = np.where(ahead >= 0, (log_rho[ahead] - log_rho) / width, np.nan)
    backward = np.where(behind >= 0, (log_rho - log_rho[behind]) / width,
                        np.nan)
    central = 0.5 * (forward + backward)
    return np.where(np.isnan(central),
                    np.where(np.isnan(forward), backward, forward), central)


def estimate_fields(state, p, ensemble=None):
    """Histogram density, mean velocity and osmotic velocity per bin."""
    grid = state.grid
    members = np.ones(len(state), dtype=bool)
    if ensemble is not None:
        members = state.ensembles == ensemble_code(ensemble)
    if not members.any():
        raise EmptyGridError('no trajectories to estimate fields from')
    positions = state.positions[members]
    velocities = state.velocities[members]
    occupied, first, flat, counts = np.unique(
        grid.indices(positions), axis=0, return_index=True,
        return_inverse=True, return_counts=True)
    flat = flat.reshape(-1)
    size = len(occupied)
    rho = counts / (len(positions) * grid.volume)

    # mean relative to the first member keeps identical velocities exact
    reference = velocities[first]
    deviation = np.zeros((size, 3))
    np.add.at(deviation, flat, velocities - reference[flat])
    v = reference + deviation / counts[:, None]

    log_rho = np.log(rho)
    u = np.zeros((size, 3))
    for axis in range(grid.dims):
        u[:, axis] = -p.nu * _log_gradient(log_rho, occupied, axis,
                                           grid.width)
    return FieldEstimate(
        indices=occupied, centers=grid.centers(occupied), counts=counts,
        rho=rho, v=v, u=u, bin_width=grid.width, dims=grid.dims)
