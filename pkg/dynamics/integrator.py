import logging

import numpy as np

from lab_helpers.exceptions import NonFiniteForceError, PreconditionError
from .ensemble import ENSEMBLE_A, ensemble_code

logger = logging.getLogger(__name__)


def friction_signs(ensembles):
    """+1 for A (accelerating), -1 for B (damping)."""
    return np.where(np.asarray(ensembles) == ENSEMBLE_A, 1.0, -1.0)


def langevin_update(positions, velocities, ensembles, forces, p, dt,
                    c_max=np.inf):
    """
    Semi-implicit Euler step of m0 dv = (F +/- m0 v / tau) dt (+ for A, - for
    B), then x += v' dt.
    Returns (positions, velocities, capped mask).
    """
    if not dt > 0:
        raise PreconditionError('dt > 0', 'dt=%r' % dt)
    if dt > p.tau:
        raise PreconditionError('dt <= tau', 'dt=%r tau=%r' % (dt, p.tau))
    forces = np.asarray(forces, dtype=float)
    if not np.all(np.isfinite(forces)):
        raise NonFiniteForceError('non-finite force input')
    signs = friction_signs(ensembles)[:, None]
    velocities = velocities + dt * (forces / p.m0 +
                                    signs * p.friction_rate * velocities)
    speeds = np.linalg.norm(velocities, axis=1)
    capped = speeds > c_max
    if capped.any():
        velocities[capped] *= (c_max / speeds[capped])[:, None]
    positions = positions + velocities * dt
    return positions, velocities, capped


def step_langevin(traj, f_ext, f_brown, p, dt, c_max=np.inf):
    forces = np.asarray(f_ext, dtype=float) + np.asarray(f_brown, dtype=float)
    positions, velocities, capped = langevin_update(
        traj.position[None, :], traj.velocity[None, :],
        np.array([ensemble_code(traj.ensemble)]), forces.reshape(1, 3), p,
        dt, c_max)
    if capped[0]:
        logger.debug('trajectory %d capped at %r', traj.id, c_max)
    return traj.evolved(positions[0], velocities[0])
