"""
Wave functions on a hard-wall grid and the quantities read off them.

Norms and expectations are discrete sums over grid points times dx; the
wall points always hold zero amplitude.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from lab_helpers.exceptions import ConfigError, SolverError

NORM_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class WaveFunction:
    grid: object
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        values = np.array(self.grid.check_values(self.values, 'amplitudes'),
                          dtype=complex)
        if values[0] != 0 or values[-1] != 0:
            raise ConfigError('amplitude must vanish at the walls')
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)
        norm = self.norm()
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ConfigError('wave function norm %r differs from 1' % norm)

    @classmethod
    def normalized(cls, grid, values, time=0.0):
        values = np.array(grid.check_values(values, 'amplitudes'),
                          dtype=complex)
        values[0] = values[-1] = 0.0
        norm = math.sqrt(float(np.sum(np.abs(values) ** 2) * grid.dx))
        if norm == 0.0:
            raise ConfigError('cannot normalize a zero wave function')
        return cls(grid, values / norm, time)

    def norm(self):
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.dx)

    def density(self):
        return np.abs(self.values) ** 2

    def at(self, values, time):
        return WaveFunction(self.grid, values, time)

    def conjugate(self):
        return WaveFunction(self.grid, np.conj(self.values), self.time)


def gaussian_packet(grid, x0, sigma, k0=0.0):
    """exp(-(x - x0)^2 / (4 sigma^2) + i k0 x); |psi|^2 has variance sigma^2."""
    if not sigma > 0:
        raise ConfigError('packet width must be positive')
    x = grid.x
    return WaveFunction.normalized(
        grid, np.exp(-(x - x0) ** 2 / (4.0 * sigma ** 2) + 1j * k0 * x))


def box_eigenstate(grid, mode=1):
    """Standing wave sin(mode * pi * i / (n - 1)) of the walled grid."""
    index = np.arange(grid.n)
    return WaveFunction.normalized(
        grid, np.sin(mode * np.pi * index / (grid.n - 1)))


def harmonic_potential(grid, p, omega, center=0.0):
    return 0.5 * p.m0 * omega ** 2 * (grid.x - center) ** 2


def hamiltonian_bands(grid, V, p):
    """Diagonal and off-diagonal of H on the interior points."""
    V = np.asarray(grid.check_values(V, 'potential'), dtype=float)
    kinetic = p.hbar ** 2 / (2.0 * p.m0 * grid.dx ** 2)
    diagonal = 2.0 * kinetic + V[1:-1]
    off = np.full(grid.n - 3, -kinetic)
    return diagonal, off


def harmonic_ground_state(grid, p, omega, center=0.0):
    """Lowest eigenvector of the discretized oscillator Hamiltonian."""
    diagonal, off = hamiltonian_bands(
        grid, harmonic_potential(grid, p, omega, center), p)
    try:
        _, vectors = eigh_tridiagonal(diagonal, off, select='i',
                                      select_range=(0, 0))
    except np.linalg.LinAlgError as exc:
        raise SolverError('oscillator eigensolver failed: %s' % exc)
    values = np.zeros(grid.n, dtype=complex)
    values[1:-1] = vectors[:, 0]
    return WaveFunction.normalized(grid, values)


def mean_position(psi):
    return float(np.sum(psi.grid.x * psi.density()) * psi.grid.dx)


def position_variance(psi):
    x = psi.grid.x
    mean = mean_position(psi)
    return float(np.sum((x - mean) ** 2 * psi.density()) * psi.grid.dx)


def expectation_velocity(psi, p):
    """(hbar/m0) Im sum psi* dpsi/dx dx with centred differences."""
    gradient = np.gradient(psi.values, psi.grid.dx)
    return float(p.hbar / p.m0 *
                 np.imag(np.sum(np.conj(psi.values) * gradient)) *
                 psi.grid.dx)


def expectation_force(psi, V):
    force = -np.gradient(np.asarray(V, dtype=float), psi.grid.dx)
    return float(np.sum(force * psi.density()) * psi.grid.dx)


def free_packet_variance(sigma0, t, p):
    return sigma0 ** 2 + (p.hbar * t / (2.0 * p.m0 * sigma0)) ** 2
