from dataclasses import dataclass

from lab_helpers.resources import (RowResource, float_field, int_field,
                                   text_field)
from .ensemble import ENSEMBLE_LABELS, SPIN_BY_CODE


@dataclass
class SnapshotRow:
    id: int
    x: float
    y: float
    z: float
    vx: float
    vy: float
    vz: float
    ensemble: str
    spin: str


def snapshot_rows(state):
    for i in range(len(state)):
        code = int(state.states[i])
        yield SnapshotRow(
            int(state.ids[i]), *(float(c) for c in state.positions[i]),
            *(float(c) for c in state.velocities[i]),
            ENSEMBLE_LABELS[state.ensembles[i]],
            SPIN_BY_CODE[code] if code < 2 else str(code))


class SnapshotResource(RowResource):
    id = int_field('id')
    x = float_field('x')
    y = float_field('y')
    z = float_field('z')
    vx = float_field('vx')
    vy = float_field('vy')
    vz = float_field('vz')
    ensemble = text_field('ensemble')
    spin = text_field('spin')


@dataclass
class DiagnosticsRow:
    step: int
    time: float
    mean_a_x: float
    mean_a_y: float
    mean_a_z: float
    mean_b_x: float
    mean_b_y: float
    mean_b_z: float
    delta_pre: float
    delta_post: float
    bin_delta_pre: float
    bin_delta_post: float
    swaps: int
    capped: int
    kinetic_energy: float


def diagnostics_rows(diagnostics):
    for d in diagnostics:
        yield DiagnosticsRow(
            d.step, d.time, *(float(c) for c in d.mean_a),
            *(float(c) for c in d.mean_b), d.delta_pre, d.delta_post,
            d.bin_delta_pre, d.bin_delta_post, d.swaps, d.capped,
            d.kinetic_energy)


class DiagnosticsResource(RowResource):
    step = int_field('step')
    time = float_field('time')
    mean_a_x = float_field('mean_a_x')
    mean_a_y = float_field('mean_a_y')
    mean_a_z = float_field('mean_a_z')
    mean_b_x = float_field('mean_b_x')
    mean_b_y = float_field('mean_b_y')
    mean_b_z = float_field('mean_b_z')
    delta_pre = float_field('delta_pre')
    delta_post = float_field('delta_post')
    bin_delta_pre = float_field('bin_delta_pre')
    bin_delta_post = float_field('bin_delta_post')
    swaps = int_field('swaps')
    capped = int_field('capped')
    kinetic_energy = float_field('kinetic_energy')
