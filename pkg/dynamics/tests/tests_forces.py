import numpy as np

from django.test import SimpleTestCase

from lab_helpers import streams
from lab_helpers.exceptions import PreconditionError
from ..forces import BrownianSource, BrownianSourceBank, sample_brownian_force
from ..params import PhysParams


class BrownianForceTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.params = PhysParams(m0=1.0, tau=2.0, tau_coll=0.5)
        bank = BrownianSourceBank(streams.split_keys(77, 10 ** 6),
                                  cls.params.brownian_sigma)
        cls.forces = bank.forces(3)

    def test_zero_mean(self):
        sigma = self.params.brownian_sigma
        for component in range(3):
            self.assertLess(abs(self.forces[:, component].mean()),
                            4 * sigma / 1e3)

    def test_variance(self):
        expected = self.params.m0 * self.params.kB * \
            self.params.temperature / (2 * self.params.tau_coll ** 2)
        for component in range(3):
            self.assertAlmostEqual(self.forces[:, component].var() / expected,
                                   1.0, delta=0.01)

    def test_components_uncorrelated(self):
        r = np.corrcoef(self.forces.T)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            self.assertLess(abs(r[i, j]), 0.005)

    def test_single_stream_matches_bank(self):
        keys = streams.split_keys(5, 4)
        bank = BrownianSourceBank(keys, 1.5)
        source = BrownianSource(int(keys[2]), 1.5)
        for t in (0, 1, 17):
            np.testing.assert_array_equal(sample_brownian_force(source, t),
                                          bank.forces(t)[2])

    def test_stream_is_pure_function_of_seed_and_step(self):
        source = BrownianSource(2024, 1.0)
        later = sample_brownian_force(source, 9)
        for t in range(9):
            sample_brownian_force(source, t)
        np.testing.assert_array_equal(sample_brownian_force(source, 9),
                                      later)

    def test_inactive_components_are_zero(self):
        bank = BrownianSourceBank(streams.split_keys(1, 10), 1.0, dims=1)
        forces = bank.forces(0)
        self.assertTrue(np.all(forces[:, 1:] == 0.0))
        self.assertTrue(np.all(forces[:, 0] != 0.0))

    def test_negative_step_rejected(self):
        with self.assertRaises(PreconditionError):
            sample_brownian_force(BrownianSource(1, 1.0), -1)
