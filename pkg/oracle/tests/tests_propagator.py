import numpy as np

from django.test import SimpleTestCase

from dynamics.params import PhysParams
from lab_helpers.exceptions import ConfigError, PreconditionError
from ..grid import Grid1D
from ..propagator import (
    CrankNicolsonPropagator, crank_nicolson_step, evolve_schrodinger)
from ..wavefunction import (
    box_eigenstate, free_packet_variance, gaussian_packet,
    harmonic_ground_state, harmonic_potential, position_variance)


class GridTest(SimpleTestCase):
    def test_spacing(self):
        grid = Grid1D.with_spacing(-20.0, 20.0, 0.05)
        self.assertEqual(grid.n, 801)
        self.assertAlmostEqual(grid.dx, 0.05)
        self.assertEqual(grid.x[0], -20.0)
        self.assertEqual(grid.x[-1], 20.0)

    def test_invalid_grids(self):
        with self.assertRaises(ConfigError):
            Grid1D(0.0, 1.0, 15)
        with self.assertRaises(ConfigError):
            Grid1D(1.0, 1.0, 64)
        with self.assertRaises(ConfigError):
            Grid1D.with_spacing(0.0, 1.0, 0.0)


class CrankNicolsonStepTest(SimpleTestCase):
    def setUp(self):
        self.params = PhysParams()

    def test_box_eigenstate_only_rotates_phase(self):
        grid = Grid1D(0.0, 1.0, 64)
        psi = box_eigenstate(grid, mode=3)
        run = evolve_schrodinger(psi, np.zeros(grid.n), self.params, 0.01,
                                 1e-4)
        self.assertGreater(np.max(np.abs(run.final.values - psi.values)),
                           1e-3)
        np.testing.assert_allclose(run.final.density(), psi.density(),
                                   rtol=0, atol=1e-9)

    def test_harmonic_ground_state_is_stationary(self):
        grid = Grid1D(-10.0, 10.0, 401)
        V = harmonic_potential(grid, self.params, omega=1.0)
        psi = harmonic_ground_state(grid, self.params, omega=1.0)
        run = evolve_schrodinger(psi, V, self.params, 10.0, 0.01)
        self.assertEqual(run.steps, 1000)
        np.testing.assert_allclose(run.final.density(), psi.density(),
                                   rtol=0, atol=1e-6)

    def test_norm_preserved_under_random_potentials(self):
        grid = Grid1D(-5.0, 5.0, 64)
        rng = np.random.default_rng(7)
        psi = gaussian_packet(grid, 0.0, 0.8, k0=2.0)
        single = crank_nicolson_step(psi, rng.uniform(0, 5, grid.n),
                                     self.params, 0.01)
        self.assertLessEqual(abs(single.norm() - 1.0), 1e-12)
        for _ in range(100):
            propagator = CrankNicolsonPropagator(
                grid, rng.uniform(0, 5, grid.n), self.params, 0.01)
            for _ in range(100):
                psi = propagator.step(psi)
        self.assertLessEqual(abs(psi.norm() - 1.0), 1e-9)

    def test_preconditions(self):
        grid = Grid1D(-5.0, 5.0, 64)
        psi = gaussian_packet(grid, 0.0, 0.8)
        V = np.zeros(grid.n)
        with self.assertRaises(PreconditionError):
            crank_nicolson_step(psi, V, self.params, 0.0)
        V[10] = np.inf
        with self.assertRaises(PreconditionError):
            crank_nicolson_step(psi, V, self.params, 0.01)


class EvolveSchrodingerTest(SimpleTestCase):
    def setUp(self):
        self.params = PhysParams()

    def _variance_error(self, n, dt):
        grid = Grid1D(-20.0, 20.0, n)
        psi = gaussian_packet(grid, 0.0, 1.0)
        run = evolve_schrodinger(psi, np.zeros(grid.n), self.params, 2.0,
                                 dt)
        expected = free_packet_variance(1.0, 2.0, self.params)
        return abs(position_variance(run.final) - expected) / expected

    def test_free_packet_variance_converges(self):
        coarse = self._variance_error(201, 0.02)
        fine = self._variance_error(401, 0.01)
        self.assertLess(fine, 0.005)
        self.assertGreaterEqual(coarse, 2 * fine)

    def test_single_step(self):
        grid = Grid1D(-5.0, 5.0, 64)
        psi = gaussian_packet(grid, 0.0, 0.8)
        V = np.zeros(grid.n)
        run = evolve_schrodinger(psi, V, self.params, 0.01, 0.01)
        self.assertEqual(run.steps, 1)
        np.testing.assert_array_equal(
            run.final.values,
            crank_nicolson_step(psi, V, self.params, 0.01).values)

    def test_time_reversal(self):
        grid = Grid1D(-15.0, 15.0, 601)
        V = harmonic_potential(grid, self.params, omega=0.5)
        psi = gaussian_packet(grid, 1.0, 0.7, k0=1.5)
        forward = evolve_schrodinger(psi, V, self.params, 0.5, 0.01).final
        back = evolve_schrodinger(forward.conjugate(), V, self.params, 0.5,
                                  0.01).final.conjugate()
        np.testing.assert_allclose(back.values, psi.values, rtol=0,
                                   atol=1e-6)

    def test_snapshots(self):
        grid = Grid1D(-5.0, 5.0, 64)
        psi = gaussian_packet(grid, 0.0, 0.8)
        run = evolve_schrodinger(psi, np.zeros(grid.n), self.params, 0.1,
                                 0.01, snapshot_every=2)
        self.assertEqual(len(run.snapshots), 6)
        self.assertIs(run.snapshots[0], psi)
        self.assertAlmostEqual(run.snapshots[-1].time, 0.1)

    def test_final_time_before_first_step(self):
        grid = Grid1D(-5.0, 5.0, 64)
        psi = gaussian_packet(grid, 0.0, 0.8)
        with self.assertRaises(PreconditionError):
            evolve_schrodinger(psi, np.zeros(grid.n), self.params, 0.005,
                               0.01)
