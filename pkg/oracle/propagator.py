"""
Crank-Nicolson propagation of i hbar dpsi/dt = (-hbar^2/2m0 d2/dx2 + V) psi.

One step solves (1 + i dt H / 2hbar) psi' = (1 - i dt H / 2hbar) psi on the
interior points, H being the three-point Hamiltonian with psi = 0 at the
walls. The step is unitary for any real potential.
"""
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from lab_helpers.exceptions import PreconditionError, SolverError
from .wavefunction import hamiltonian_bands

logger = logging.getLogger(__name__)


class CrankNicolsonPropagator:
    def __init__(self, grid, V, p, dt):
        if not dt > 0:
            raise PreconditionError('dt > 0', 'dt=%r' % dt)
        V = np.asarray(grid.check_values(V, 'potential'), dtype=float)
        if not np.all(np.isfinite(V)):
            raise PreconditionError('finite potential')
        self.grid = grid
        self.dt = dt
        diagonal, off = hamiltonian_bands(grid, V, p)
        factor = 0.5j * dt / p.hbar
        self.diagonal = factor * diagonal
        self.off = factor * off[0]
        m = grid.n - 2
        self.bands = np.zeros((3, m), dtype=complex)
        self.bands[0, 1:] = self.off
        self.bands[1, :] = 1.0 + self.diagonal
        self.bands[2, :-1] = self.off

    def step(self, psi):
        interior = psi.values[1:-1]
        rhs = (1.0 - self.diagonal) * interior
        rhs[:-1] -= self.off * interior[1:]
        rhs[1:] -= self.off * interior[:-1]
        try:
            solved = solve_banded((1, 1), self.bands, rhs,
                                  check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise SolverError('Crank-Nicolson solve failed: %s' % exc)
        if not np.all(np.isfinite(solved)):
            raise SolverError('Crank-Nicolson solve produced non-finite '
                              'amplitudes')
        values = np.zeros(self.grid.n, dtype=complex)
        values[1:-1] = solved
        return psi.at(values, psi.time + self.dt)


def crank_nicolson_step(psi, V, p, dt):
    return CrankNicolsonPropagator(psi.grid, V, p, dt).step(psi)


@dataclass
class SchrodingerRun:
    final: object
    snapshots: list = field(default_factory=list)
    steps: int = 0


def evolve_schrodinger(psi0, V, p, t_final, dt, snapshot_every=None):
    """
    Repeated Crank-Nicolson steps; round(t_final / dt) of them. With
    `snapshot_every`, the initial state and every snapshot_every-th state
    are kept.
    """
    if not dt > 0:
        raise PreconditionError('dt > 0', 'dt=%r' % dt)
    if t_final < dt * (1 - 1e-9):
        raise PreconditionError('t_final >= dt',
                                't_final=%r dt=%r' % (t_final, dt))
    if snapshot_every is not None and snapshot_every < 1:
        raise PreconditionError('snapshot_every >= 1')
    steps = int(round(t_final / dt))
    propagator = CrankNicolsonPropagator(psi0.grid, V, p, dt)
    psi = psi0
    snapshots = [psi0] if snapshot_every else []
    for step in range(1, steps + 1):
        psi = propagator.step(psi)
        if snapshot_every and step % snapshot_every == 0:
            snapshots.append(psi)
    logger.debug('evolved %d Crank-Nicolson steps to t=%r', steps, psi.time)
    return SchrodingerRun(psi, snapshots, steps)
