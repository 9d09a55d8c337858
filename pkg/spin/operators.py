import logging
import math

import numpy as np
from scipy.spatial.transform import Rotation

from lab_helpers.exceptions import PreconditionError, SolverError
from .states import (DOWN, UP, Spinor, axis_vector, singlet_state,
                     spin_sign)

logger = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# joint outcome order used by every table in the lab
JOINT_OUTCOMES = ((UP, UP), (UP, DOWN), (DOWN, UP), (DOWN, DOWN))


def rotation_matrix(psi, phi, theta):
    """
    Unitary 2x2 matrix of the Euler rotation (psi, phi, theta) acting on
    spinors (Cayley-Klein form).
    """
    half = 0.5 * theta
    cos_half, sin_half = math.cos(half), math.sin(half)
    plus = 0.5 * (psi + phi)
    minus = 0.5 * (psi - phi)
    return np.array([
        [np.exp(1j * plus) * cos_half, 1j * np.exp(1j * minus) * sin_half],
        [1j * np.exp(-1j * minus) * sin_half, np.exp(-1j * plus) * cos_half],
    ])


def euler_rotation(psi, phi, theta):
    """3x3 rotation R with Q (B.sigma) Q^+ = (R B).sigma for Q = rotation_matrix."""
    return Rotation.from_euler('ZXZ', [-psi, -theta, -phi]).as_matrix()


def field_matrix(b):
    bx, by, bz = np.asarray(b, dtype=float)
    return bx * SIGMA_X + by * SIGMA_Y + bz * SIGMA_Z


def sigma_along(axis):
    return field_matrix(axis_vector(axis))


def spin_operator(axis, hbar=1.0):
    return 0.5 * hbar * sigma_along(axis)


def rotate_spinor(spinor, psi, phi, theta):
    """Apply the adjoint of rotation_matrix(psi, phi, theta)."""
    q = rotation_matrix(psi, phi, theta)
    return Spinor.normalized(q.conj().T @ spinor.amplitudes)


def transform_spinor(spinor, theta, varphi):
    """Spinor seen in the frame of a detector tilted by (theta, varphi)."""
    return rotate_spinor(spinor, -0.5 * math.pi, varphi + 0.5 * math.pi,
                         theta)


def spin_expectation(spinor, axis, hbar=1.0):
    amplitudes = spinor.amplitudes
    value = amplitudes.conj() @ spin_operator(axis, hbar) @ amplitudes
    return float(value.real)


def measurement_probs(spin, theta):
    """(p_up, p_down) for a particle of spin `spin` and detector angle theta."""
    if not -1e-12 <= theta <= math.pi + 1e-12:
        raise PreconditionError('relative angle in [0, pi]',
                                'theta=%r' % theta)
    aligned = math.cos(0.5 * theta) ** 2
    p_up = aligned if spin_sign(spin) > 0 else 1.0 - aligned
    return p_up, 1.0 - p_up


def up_probabilities(signs, thetas):
    """Vectorized p_up for spin signs (+1/-1) and relative angles."""
    aligned = np.cos(0.5 * np.asarray(thetas, dtype=float)) ** 2
    return np.where(np.asarray(signs) > 0, aligned, 1.0 - aligned)


def singlet_correlation(mu, nu, state=None):
    """<psi| (mu.sigma) x (nu.sigma) |psi> on the singlet, by 4x4 expectation."""
    state = state or singlet_state()
    operator = np.kron(sigma_along(mu), sigma_along(nu))
    amplitudes = state.amplitudes
    value = float((amplitudes.conj() @ operator @ amplitudes).real)
    expected = -float(np.dot(axis_vector(mu), axis_vector(nu)))
    if abs(value - expected) > 1e-10:
        raise SolverError('singlet correlation %r disagrees with -mu.nu=%r' %
                          (value, expected))
    return value


def projector(axis, spin):
    return 0.5 * (IDENTITY + spin_sign(spin) * sigma_along(axis))


def quantum_joint_probs(mu, nu, state=None):
    """Singlet joint probabilities in JOINT_OUTCOMES order."""
    state = state or singlet_state()
    amplitudes = state.amplitudes
    table = []
    for out1, out2 in JOINT_OUTCOMES:
        operator = np.kron(projector(mu, out1), projector(nu, out2))
        table.append(float((amplitudes.conj() @ operator @ amplitudes).real))
    table = np.clip(np.array(table), 0.0, 1.0)
    logger.debug('joint table for %s/%s: %s', mu, nu, table)
    return table


def correlation_from_table(table):
    uu, ud, du, dd = table
    return uu + dd - ud - du
