import math
from dataclasses import dataclass
from typing import Optional

from lab_helpers.exceptions import ConfigError


@dataclass(frozen=True)
class PhysParams:
    """
    Physical constants of one ensemble run.

    The heat bath temperature and the coarse timescale are tied by
    kB * temperature * tau = hbar / 2, which makes the diffusion
    coefficient nu = kB T tau / m0 equal to hbar / (2 m0). When the
    temperature is omitted it is derived from tau; tau may be infinite
    (no friction, no Brownian force).
    """
    m0: float = 1.0
    tau: float = 1.0
    tau_coll: float = 1.0
    temperature: Optional[float] = None
    kB: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ('m0', 'tau', 'tau_coll', 'kB', 'hbar'):
            value = getattr(self, name)
            if not value > 0 or math.isnan(value):
                raise ConfigError('%s must be positive, got %r' %
                                  (name, value))
        derived = 0.0 if math.isinf(self.tau) else \
            self.hbar / (2.0 * self.kB * self.tau)
        if self.temperature is None:
            object.__setattr__(self, 'temperature', derived)
        elif not math.isclose(self.temperature, derived, rel_tol=1e-9,
                              abs_tol=1e-15):
            raise ConfigError(
                'temperature %r inconsistent with nu = hbar/(2 m0): '
                'kB*T*tau must equal hbar/2 (T=%r)' %
                (self.temperature, derived))

    @property
    def nu(self):
        return self.hbar / (2.0 * self.m0)

    @property
    def brownian_sigma(self):
        """Standard deviation of each Brownian force component."""
        return math.sqrt(self.m0 * self.kB * self.temperature /
                         (2.0 * self.tau_coll ** 2))

    @property
    def friction_rate(self):
        return 0.0 if math.isinf(self.tau) else 1.0 / self.tau
