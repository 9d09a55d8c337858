"""
Free-packet validation: a Gaussian A/B ensemble evolved by the trajectory
engine against the Crank-Nicolson evolution of the matching packet and
the analytic spreading law.

The default run starts every trajectory at rest, the velocity field of a
real Gaussian packet, and leaves all spreading to friction, the Brownian
bath and the exchange. Whether that reproduces |psi|^2 is reported in
`reproduced`, not enforced. The `ballistic` start instead draws the
velocities with spread hbar / (2 m0 sigma0) under a negligible bath; that
free streaming matches the spreading law by construction and only
checks the pipeline.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from dynamics.engine import evolve
from dynamics.ensemble import BinGrid, EnsembleState
from dynamics.forces import sources_for
from dynamics.params import PhysParams
from lab_helpers import streams
from lab_helpers.exceptions import ConfigError
from .analysis import compare_density, histogram_on_grid
from .grid import Grid1D
from .propagator import evolve_schrodinger
from .resources import DensityValidationRow
from .wavefunction import (free_packet_variance, gaussian_packet,
                           position_variance)

logger = logging.getLogger(__name__)

NORM_DRIFT_TOLERANCE = 1e-9
ORACLE_VARIANCE_TOLERANCE = 0.005
ENSEMBLE_VARIANCE_TOLERANCE = 0.05

START_REST = 'rest'
START_BALLISTIC = 'ballistic'
STARTS = (START_REST, START_BALLISTIC)


def density_physics():
    return PhysParams(m0=1.0, tau=1.0, tau_coll=0.1)


def ballistic_physics():
    return PhysParams(m0=1.0, tau=1000.0, tau_coll=100.0)


@dataclass(frozen=True)
class DensityPlan:
    """
    Packet of width `sigma0` centred at 0 with zero mean velocity. The
    trajectories start with position spread sigma0 and, for the
    `ballistic` start, velocity spread hbar / (2 m0 sigma0); at `rest`
    otherwise. `bin_width` defaults to sigma0 / 5.
    """
    master_seed: int
    trajectories: int = 100000
    sigma0: float = 1.0
    t_final: float = 2.0
    dt: float = 0.01
    bin_width: float = None
    x_min: float = -12.0
    x_max: float = 12.0
    grid_points: int = 481
    oracle_dt: float = 0.01
    ks_threshold: float = 0.05
    start: str = START_REST
    physics: PhysParams = field(default_factory=density_physics)

    def __post_init__(self):
        if self.trajectories < 2:
            raise ConfigError('need at least two trajectories')
        if not self.sigma0 > 0:
            raise ConfigError('sigma0 must be positive')
        if not self.dt > 0 or self.t_final < self.dt:
            raise ConfigError('need 0 < dt <= t_final (dt=%r, t_final=%r)'
                              % (self.dt, self.t_final))
        if self.dt > self.physics.tau:
            raise ConfigError('dt must not exceed tau')
        if not self.oracle_dt > 0 or self.t_final < self.oracle_dt:
            raise ConfigError('need 0 < oracle_dt <= t_final')
        if self.start not in STARTS:
            raise ConfigError('unknown start %r' % (self.start,))
        if self.bin_width is None:
            object.__setattr__(self, 'bin_width', self.sigma0 / 5.0)
        elif not self.bin_width > 0:
            raise ConfigError('bin_width must be positive')
        Grid1D(self.x_min, self.x_max, self.grid_points)

    @property
    def grid(self):
        return Grid1D(self.x_min, self.x_max, self.grid_points)

    @property
    def steps(self):
        return int(round(self.t_final / self.dt))

    @property
    def sigma_v(self):
        if self.start == START_REST:
            return 0.0
        return self.physics.hbar / (2.0 * self.physics.m0 * self.sigma0)


@dataclass
class DensityValidation:
    row: DensityValidationRow
    binned: object
    psi: object
    norm_drift: float
    oracle_variance_error: float
    diagnostics: list = field(default_factory=list)

    @property
    def ok(self):
        """The oracle side: norm kept and analytic variance met."""
        return (self.norm_drift <= NORM_DRIFT_TOLERANCE and
                self.oracle_variance_error <= ORACLE_VARIANCE_TOLERANCE)


def initial_packet(plan):
    n = plan.trajectories
    keys = streams.split_keys(plan.master_seed, n)
    init_keys = streams.counter_hash(
        streams.domain_key(streams.as_key(plan.master_seed),
                           streams.SALT_INITIAL),
        np.arange(n, dtype=np.uint64))
    positions = np.zeros((n, 3))
    velocities = np.zeros((n, 3))
    positions[:, 0] = plan.sigma0 * streams.standard_normal(
        init_keys, np.uint64(0))
    velocities[:, 0] = plan.sigma_v * streams.standard_normal(
        init_keys, np.uint64(2))
    return EnsembleState(
        ids=np.arange(n), positions=positions, velocities=velocities,
        ensembles=np.arange(n) % 2, states=np.zeros(n),
        grid=BinGrid(plan.bin_width, dims=1), keys=keys)


def density_validation(plan, executor=None):
    state = initial_packet(plan)
    p = plan.physics
    sources = sources_for(state.keys, p, dims=1)
    result = evolve(state, sources, None, p, plan.steps, plan.dt,
                    executor=executor)
    positions = result.state.positions[:, 0]
    t = result.state.time

    grid = plan.grid
    run = evolve_schrodinger(gaussian_packet(grid, 0.0, plan.sigma0),
                             np.zeros(grid.n), p, t, plan.oracle_dt)
    binned = histogram_on_grid(positions, grid, drop_outside=True)
    comparison = compare_density(binned, run.final)

    analytic = free_packet_variance(plan.sigma0, t, p)
    ensemble_variance = float(np.var(positions))
    oracle_variance = position_variance(run.final)
    variance_error = abs(ensemble_variance - analytic) / analytic
    undersampled = comparison.ks_distance > plan.ks_threshold
    escaped = binned.outside / plan.trajectories
    reproduced = (not undersampled and not binned.outside and
                  variance_error <= ENSEMBLE_VARIANCE_TOLERANCE)
    if binned.outside:
        logger.warning('%d of %d trajectories left the grid [%r, %r]',
                       binned.outside, plan.trajectories, grid.x_min,
                       grid.x_max)
    if not reproduced:
        logger.warning('%s start: ensemble misses |psi|^2 (KS %.4f, '
                       'variance %.4f against %.4f)', plan.start,
                       comparison.ks_distance, ensemble_variance, analytic)
    row = DensityValidationRow(
        trajectories=plan.trajectories, t=t,
        ks_distance=comparison.ks_distance,
        l1_distance=comparison.l1_distance,
        ensemble_variance=ensemble_variance,
        oracle_variance=oracle_variance, analytic_variance=analytic,
        variance_rel_error=variance_error, undersampled=undersampled,
        start=plan.start, escaped=escaped, reproduced=reproduced)
    logger.info('density validation (%s start): KS %.4f, variance %.4f '
                '(analytic %.4f)', plan.start, comparison.ks_distance,
                ensemble_variance, analytic)
    return DensityValidation(
        row=row, binned=binned, psi=run.final,
        norm_drift=abs(run.final.norm() - 1.0),
        oracle_variance_error=abs(oracle_variance - analytic) / analytic,
        diagnostics=result.diagnostics)
