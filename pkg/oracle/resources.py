from dataclasses import dataclass

from lab_helpers.resources import (RowResource, bool_field, float_field,
                                   int_field, text_field)


@dataclass
class WaveSnapshotRow:
    t: float
    x: float
    re_psi: float
    im_psi: float
    density: float


def wave_rows(snapshots):
    for psi in snapshots:
        density = psi.density()
        for x, value, rho in zip(psi.grid.x, psi.values, density):
            yield WaveSnapshotRow(float(psi.time), float(x),
                                  float(value.real), float(value.imag),
                                  float(rho))


class WaveSnapshotResource(RowResource):
    t = float_field('t')
    x = float_field('x')
    re_psi = float_field('re_psi')
    im_psi = float_field('im_psi')
    density = float_field('density')


@dataclass
class DensityProfileRow:
    x: float
    ensemble_density: float
    oracle_density: float


def profile_rows(binned, psi):
    for x, rho, reference in zip(psi.grid.x, binned.rho, psi.density()):
        yield DensityProfileRow(float(x), float(rho), float(reference))


class DensityProfileResource(RowResource):
    x = float_field('x')
    ensemble_density = float_field('ensemble_density')
    oracle_density = float_field('oracle_density')


@dataclass
class DensityValidationRow:
    trajectories: int
    t: float
    ks_distance: float
    l1_distance: float
    ensemble_variance: float
    oracle_variance: float
    analytic_variance: float
    variance_rel_error: float
    undersampled: bool
    start: str = 'rest'
    escaped: float = 0.0
    reproduced: bool = False


class DensityValidationResource(RowResource):
    trajectories = int_field('trajectories')
    t = float_field('t')
    ks_distance = float_field('ks_distance')
    l1_distance = float_field('l1_distance')
    ensemble_variance = float_field('ensemble_variance')
    oracle_variance = float_field('oracle_variance')
    analytic_variance = float_field('analytic_variance')
    variance_rel_error = float_field('variance_rel_error')
    undersampled = bool_field('undersampled')
    start = text_field('start')
    escaped = float_field('escaped')
    reproduced = bool_field('reproduced')
