from dataclasses import dataclass

import numpy as np

from lab_helpers.exceptions import ConfigError, IncompatibleGridError

MIN_POINTS = 16


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid with hard walls at both end points."""
    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < MIN_POINTS:
            raise ConfigError('grid needs at least %d points, got %r' %
                              (MIN_POINTS, self.n))
        if not np.isfinite(self.x_min) or not np.isfinite(self.x_max) or \
                not self.x_max > self.x_min:
            raise ConfigError('grid needs finite x_max > x_min, got [%r, %r]'
                              % (self.x_min, self.x_max))
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'x_min', float(self.x_min))
        object.__setattr__(self, 'x_max', float(self.x_max))

    @classmethod
    def with_spacing(cls, x_min, x_max, dx):
        """Grid over [x_min, x_max] whose spacing is as close to dx as fits."""
        if not dx > 0:
            raise ConfigError('grid spacing must be positive, got %r' % dx)
        return cls(x_min, x_max, int(round((x_max - x_min) / dx)) + 1)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def x(self):
        return np.linspace(self.x_min, self.x_max, self.n)

    def check_values(self, values, what='values'):
        values = np.asarray(values)
        if values.shape != (self.n,):
            raise IncompatibleGridError(
                '%s of shape %s do not match a grid of %d points' %
                (what, values.shape, self.n))
        return values
