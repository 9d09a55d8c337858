import math

import numpy as np

from django.test import SimpleTestCase

from lab_helpers import streams
from lab_helpers.exceptions import ConfigError
from ..measurement import (
    AnalyticQuantumOracle, DetectionInput, IndependentBorn,
    SharedStreamThreshold, get_measurement_model, split_shared)


def detection_input(n, mu, nu, seed=1):
    spins1 = np.where(streams.uniform(streams.split_keys(seed, n), 0) < 0.5,
                      1, -1).astype(np.int8)
    shared = streams.uniform(streams.split_keys(seed + 1, n), 0)
    return DetectionInput(
        seed, np.arange(n), np.full(n, math.radians(mu)),
        np.full(n, math.radians(nu)), spins1, -spins1, shared, shared)


class SharedStreamThresholdTest(SimpleTestCase):
    def test_equal_axes_always_opposite(self):
        for angle in (0, 30, 90, 135, 270):
            out1, out2 = SharedStreamThreshold().detect(
                detection_input(2000, angle, angle))
            self.assertTrue(np.all(out1 == -out2))

    def test_marginals(self):
        out1, _ = SharedStreamThreshold().detect(
            detection_input(10000, 60, 0))
        self.assertLess(abs(np.mean(out1 > 0) - 0.5), 4 * 0.005)

    def test_aligned_marginal_ignores_spin(self):
        data = detection_input(40000, 0, 0)
        data.spins1[:] = 1
        data.spins2[:] = -1
        out1, out2 = SharedStreamThreshold().detect(data)
        self.assertTrue(np.all(out1 == -out2))
        self.assertLess(abs(np.mean(out1 > 0) - 0.5), 4 * 0.0025)

    def test_shared_sign_and_draw(self):
        sign, draw = split_shared(np.array([0.25, 0.5, 0.75, 1.0]))
        np.testing.assert_array_equal(sign, [1, 1, -1, -1])
        np.testing.assert_allclose(draw, [0.5, 1.0, 0.5, 1.0])

    def test_rule(self):
        shared = np.array([0.1, 0.45, 0.6, 0.95])
        spins = np.array([1, 1, 1, 1], dtype=np.int8)
        # draws 0.2, 0.9, 0.2, 0.9 against cos^2(45 deg) = 0.5
        out = SharedStreamThreshold().detect_wing(
            1, 0, np.arange(4), spins, np.full(4, math.pi / 2), shared)
        np.testing.assert_array_equal(out, [1, -1, -1, 1])


class IndependentBornTest(SimpleTestCase):
    def test_aligned_detector_reads_spin(self):
        data = detection_input(1000, 0, 180)
        out1, out2 = IndependentBorn().detect(data)
        np.testing.assert_array_equal(out1, data.spins1)
        np.testing.assert_array_equal(out2, data.spins1)

    def test_wing_outcome_ignores_remote_axis(self):
        first, _ = IndependentBorn().detect(detection_input(1000, 45, 0))
        second, _ = IndependentBorn().detect(detection_input(1000, 45, 120))
        np.testing.assert_array_equal(first, second)

    def test_born_frequency(self):
        data = detection_input(20000, 120, 0)
        data.spins1[:] = 1
        out1, _ = IndependentBorn().detect(data)
        # cos^2(60 deg)
        self.assertLess(abs(np.mean(out1 > 0) - 0.25),
                        4 * math.sqrt(0.25 * 0.75 / 20000))


class AnalyticQuantumOracleTest(SimpleTestCase):
    def test_correlation_at_sixty_degrees(self):
        n = 100000
        out1, out2 = AnalyticQuantumOracle().detect(
            detection_input(n, 0, 60))
        e_hat = float(np.mean(out1.astype(int) * out2))
        self.assertLess(abs(e_hat + 0.5), 4 * math.sqrt(0.75 / n))

    def test_equal_axes(self):
        out1, out2 = AnalyticQuantumOracle().detect(
            detection_input(5000, 45, 45))
        self.assertTrue(np.all(out1 == -out2))

    def test_model_registry(self):
        self.assertIsInstance(get_measurement_model('IndependentBorn'),
                              IndependentBorn)
        with self.assertRaises(ConfigError):
            get_measurement_model('Telepathy')
