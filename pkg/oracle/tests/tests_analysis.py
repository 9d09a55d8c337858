import numpy as np

from django.test import SimpleTestCase

from dynamics.params import PhysParams
from lab_helpers.exceptions import IncompatibleGridError, PreconditionError
from lab_helpers.resources import render_csv
from ..analysis import (
    BinnedDensity, compare_density, ehrenfest_check, histogram_on_grid)
from ..grid import Grid1D
from ..propagator import evolve_schrodinger
from ..resources import WaveSnapshotResource, wave_rows
from ..wavefunction import (
    WaveFunction, gaussian_packet, harmonic_potential, position_variance)


class CompareDensityTest(SimpleTestCase):
    def setUp(self):
        self.grid = Grid1D(-20.0, 20.0, 801)
        self.psi = gaussian_packet(self.grid, 0.0, 1.0)

    def test_identical_inputs(self):
        comparison = compare_density(
            BinnedDensity(self.grid, self.psi.density()), self.psi)
        self.assertEqual(comparison.l1_distance, 0.0)
        self.assertEqual(comparison.ks_distance, 0.0)

    def test_wider_packet_detected(self):
        wide = gaussian_packet(self.grid, 0.0, 2.0)
        comparison = compare_density(wide.density(), self.psi)
        self.assertGreater(comparison.ks_distance, 0.15)
        self.assertLessEqual(comparison.ks_distance, 1.0)
        self.assertLessEqual(comparison.l1_distance, 2.0)

    def test_sampled_histogram(self):
        rng = np.random.default_rng(3)
        binned = histogram_on_grid(rng.normal(0.0, 1.0, 100000), self.grid)
        self.assertEqual(binned.samples, 100000)
        self.assertAlmostEqual(binned.rho.sum() * self.grid.dx, 1.0)
        self.assertLess(compare_density(binned, self.psi).ks_distance, 0.05)

    def test_incompatible_grids(self):
        other = Grid1D(-20.0, 20.0, 401)
        with self.assertRaises(IncompatibleGridError):
            compare_density(BinnedDensity(other, np.zeros(401)), self.psi)
        with self.assertRaises(IncompatibleGridError):
            compare_density(np.zeros(401), self.psi)
        with self.assertRaises(IncompatibleGridError):
            histogram_on_grid([0.0, 25.0], self.grid)

    def test_dropped_positions_are_counted(self):
        binned = histogram_on_grid([0.0, 1.0, 25.0, -30.0], self.grid,
                                   drop_outside=True)
        self.assertEqual((binned.samples, binned.outside), (2, 2))
        self.assertAlmostEqual(binned.rho.sum() * self.grid.dx, 1.0)
        with self.assertRaises(PreconditionError):
            histogram_on_grid([25.0], self.grid, drop_outside=True)

    def test_unnormalized_histogram(self):
        with self.assertRaises(PreconditionError):
            compare_density(2 * self.psi.density(), self.psi)


class EhrenfestCheckTest(SimpleTestCase):
    def setUp(self):
        self.params = PhysParams()

    def test_free_particle(self):
        grid = Grid1D(-15.0, 15.0, 601)
        psi = gaussian_packet(grid, 0.0, 1.0, k0=0.7)
        V = np.zeros(grid.n)
        run = evolve_schrodinger(psi, V, self.params, 0.5, 0.01,
                                 snapshot_every=1)
        report = ehrenfest_check(run.snapshots, V, self.params)
        self.assertLess(report.max_residual, 1e-6)
        self.assertAlmostEqual(report.velocities[0], 0.7, delta=1e-3)

    def test_linear_potential(self):
        grid = Grid1D.with_spacing(-15.0, 15.0, 0.02)
        force = 0.1
        V = -force * grid.x
        psi = gaussian_packet(grid, 0.0, 1.0)
        run = evolve_schrodinger(psi, V, self.params, 1.0, 0.01,
                                 snapshot_every=1)
        report = ehrenfest_check(run.snapshots, V, self.params)
        self.assertLess(report.max_residual, 1e-4)
        self.assertAlmostEqual(report.velocities[-1], force * 1.0, places=3)

    def test_harmonic_coherent_state(self):
        grid = Grid1D.with_spacing(-10.0, 10.0, 0.01)
        V = harmonic_potential(grid, self.params, omega=1.0)
        psi = gaussian_packet(grid, 0.5, np.sqrt(0.5))
        run = evolve_schrodinger(psi, V, self.params, 0.5, 0.001,
                                 snapshot_every=1)
        report = ehrenfest_check(run.snapshots, V, self.params)
        self.assertLess(report.max_residual, 1e-4)

    def test_too_few_snapshots(self):
        grid = Grid1D(-5.0, 5.0, 64)
        psi = gaussian_packet(grid, 0.0, 0.8)
        with self.assertRaises(PreconditionError):
            ehrenfest_check([psi, psi], np.zeros(grid.n), self.params)


class WaveFunctionTest(SimpleTestCase):
    def test_norm_enforced(self):
        grid = Grid1D(-5.0, 5.0, 64)
        values = np.zeros(grid.n)
        values[5] = 1.0
        with self.assertRaises(ValueError):
            WaveFunction(grid, values)
        self.assertAlmostEqual(
            WaveFunction.normalized(grid, values).norm(), 1.0)

    def test_packet_variance(self):
        grid = Grid1D(-20.0, 20.0, 801)
        self.assertAlmostEqual(
            position_variance(gaussian_packet(grid, 1.0, 1.5)), 2.25)

    def test_snapshot_export(self):
        grid = Grid1D(-5.0, 5.0, 64)
        psi = gaussian_packet(grid, 0.0, 0.8)
        csv = render_csv(WaveSnapshotResource.to_dataset(wave_rows([psi])))
        lines = csv.split('\n')
        self.assertEqual(lines[0], 't,x,re_psi,im_psi,density')
        self.assertEqual(lines[1], '0,-5,0,0,0')
        self.assertEqual(len(lines), 66)
