"""
Spin states: planar/3-D detector axes, one-particle spinors and
two-particle spinor states over the basis {++, +-, -+, --}.
"""
import math
from dataclasses import dataclass

import numpy as np

from lab_helpers.exceptions import PreconditionError

UP = 'up'
DOWN = 'down'
SPIN_LABELS = (UP, DOWN)

# Magnitude of the spin angular momentum in units of hbar. Only the two
# projections +-hbar/2 enter the dynamics.
SPIN_MAGNITUDE = 0.5

NORM_TOLERANCE = 1e-12
TWO_PI = 2.0 * math.pi


def spin_sign(label):
    if label in (UP, 1, '+'):
        return 1
    if label in (DOWN, -1, '-'):
        return -1
    raise ValueError('unknown spin label: %r' % (label,))


def spin_label(sign):
    return UP if sign > 0 else DOWN


@dataclass(frozen=True)
class Axis:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not -1e-12 <= self.theta <= math.pi + 1e-12:
            raise PreconditionError('polar angle in [0, pi]',
                                    'theta=%r' % self.theta)
        object.__setattr__(self, 'theta',
                           min(max(float(self.theta), 0.0), math.pi))
        object.__setattr__(self, 'phi', float(self.phi) % TWO_PI)

    @classmethod
    def planar(cls, angle):
        """Axis in the x-z plane, `angle` radians away from +z."""
        angle = float(angle) % TWO_PI
        theta = math.acos(math.cos(angle))
        phi = 0.0 if angle <= math.pi else math.pi
        return cls(theta, phi)

    @classmethod
    def from_vector(cls, vector):
        vector = np.asarray(vector, dtype=float)
        norm = np.linalg.norm(vector)
        if norm == 0.0:
            raise PreconditionError('nonzero axis vector')
        x, y, z = vector / norm
        return cls(math.acos(max(-1.0, min(1.0, z))), math.atan2(y, x))

    @property
    def vector(self):
        sin_theta = math.sin(self.theta)
        return np.array([math.cos(self.phi) * sin_theta,
                         math.sin(self.phi) * sin_theta,
                         math.cos(self.theta)])


Z_AXIS = Axis(0.0, 0.0)


def axis_vector(axis):
    if isinstance(axis, Axis):
        return axis.vector
    vector = np.asarray(axis, dtype=float)
    return vector / np.linalg.norm(vector)


def _frozen(values, size):
    values = np.array(values, dtype=complex).reshape(size)
    values.flags.writeable = False
    return values


@dataclass(frozen=True, eq=False)
class Spinor:
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = _frozen(self.amplitudes, 2)
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise PreconditionError('normalized spinor', 'norm=%r' % norm)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def normalized(cls, amplitudes):
        amplitudes = np.asarray(amplitudes, dtype=complex)
        return cls(amplitudes / np.linalg.norm(amplitudes))

    @classmethod
    def plus(cls):
        return cls([1.0, 0.0])

    @classmethod
    def minus(cls):
        return cls([0.0, 1.0])

    @property
    def probabilities(self):
        p_up = float(abs(self.amplitudes[0]) ** 2)
        return p_up, 1.0 - p_up

    def __eq__(self, other):
        if not isinstance(other, Spinor):
            return NotImplemented
        return bool(np.allclose(self.amplitudes, other.amplitudes,
                                rtol=0.0, atol=NORM_TOLERANCE))


@dataclass(frozen=True, eq=False)
class TwoSpinorState:
    amplitudes: np.ndarray

    BASIS = ('++', '+-', '-+', '--')

    def __post_init__(self):
        amplitudes = _frozen(self.amplitudes, 4)
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise PreconditionError('normalized two-spinor state',
                                    'norm=%r' % norm)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def product(cls, first, second):
        return cls(np.kron(first.amplitudes, second.amplitudes))


def singlet_state():
    """(|-+> - |+->)/sqrt(2)."""
    root = 1.0 / math.sqrt(2.0)
    return TwoSpinorState([0.0, -root, root, 0.0])
