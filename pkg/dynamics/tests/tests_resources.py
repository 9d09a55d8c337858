from django.test import SimpleTestCase

from lab_helpers.resources import render_csv
from ..engine import evolve
from ..params import PhysParams
from ..resources import (DiagnosticsResource, SnapshotResource,
                         diagnostics_rows, snapshot_rows)
from .helpers import bank_for, gaussian_state, line_state


class SnapshotExportTest(SimpleTestCase):
    def test_rows(self):
        state = line_state([1.0, -1.0], [0, 1], positions=[0.5, 0.0],
                           states=[0, 1])
        text = render_csv(SnapshotResource.to_dataset(snapshot_rows(state)))
        self.assertEqual(text,
                         'id,x,y,z,vx,vy,vz,ensemble,spin\n'
                         '0,0.5,0,0,1,0,0,A,up\n'
                         '1,0,0,0,-1,0,0,B,down\n')


class DiagnosticsExportTest(SimpleTestCase):
    def test_one_row_per_step(self):
        params = PhysParams(tau=1.0, tau_coll=0.5)
        state = gaussian_state(200, 1.0, 1.0, seed=3)
        sources = bank_for(state, 3, params.brownian_sigma)
        result = evolve(state, sources, None, params, 5, 0.05)
        lines = render_csv(DiagnosticsResource.to_dataset(
            diagnostics_rows(result.diagnostics))).splitlines()
        self.assertEqual(len(lines), 6)
        self.assertEqual(lines[0].split(','), [
            'step', 'time', 'mean_a_x', 'mean_a_y', 'mean_a_z', 'mean_b_x',
            'mean_b_y', 'mean_b_z', 'delta_pre', 'delta_post',
            'bin_delta_pre', 'bin_delta_post', 'swaps', 'capped',
            'kinetic_energy'])
        self.assertEqual([line.split(',')[0] for line in lines[1:]],
                         ['1', '2', '3', '4', '5'])
