import numpy as np

from django.test import SimpleTestCase

from lab_helpers.exceptions import ConfigError, PreconditionError
from ..config import DisturbanceSpec, PairConfig
from ..seeds import (
    assign_settings, generate_pair_seeds, prepare_wing, source_events)
from .helpers import pair_config


class PairSeedsTest(SimpleTestCase):
    def test_reproducible(self):
        np.testing.assert_array_equal(generate_pair_seeds(42, 100),
                                      generate_pair_seeds(42, 100))
        self.assertFalse(np.array_equal(generate_pair_seeds(42, 100),
                                        generate_pair_seeds(43, 100)))

    def test_single_pair(self):
        self.assertEqual(len(generate_pair_seeds(7, 1)), 1)

    def test_serial_correlation(self):
        seeds = generate_pair_seeds(2024, 10000).astype(np.float64) / 2 ** 64
        r = np.corrcoef(seeds[:-1], seeds[1:])[0, 1]
        self.assertLess(abs(r), 0.05)

    def test_no_pairs(self):
        with self.assertRaises(PreconditionError):
            generate_pair_seeds(1, 0)

    def test_setting_assignment(self):
        index = assign_settings(5, 6000, 6)
        np.testing.assert_array_equal(index, assign_settings(5, 6000, 6))
        counts = np.bincount(index, minlength=6)
        self.assertEqual(counts.sum(), 6000)
        self.assertTrue(np.all(np.abs(counts - 1000) < 4 * np.sqrt(1000)))


class SourcePreparationTest(SimpleTestCase):
    def test_wings_mirror_each_other(self):
        config = pair_config(200)
        keys = generate_pair_seeds(3, 200)
        first = prepare_wing(keys, config, 1)
        second = prepare_wing(keys, config, 2)
        for a, b in zip(first[:3], second[:3]):
            np.testing.assert_array_equal(a, b)
        self.assertTrue(np.all(first[3] != second[3]))
        np.testing.assert_array_equal(first[3], source_events(keys))

    def test_source_events_equiprobable(self):
        events = source_events(generate_pair_seeds(9, 10000))
        self.assertLess(abs(events.mean() - 0.5), 4 * 0.005)


class ConfigTest(SimpleTestCase):
    def test_inconsistent_config(self):
        with self.assertRaises(ConfigError):
            PairConfig(pairs=0, master_seed=1)
        with self.assertRaises(ConfigError):
            PairConfig(pairs=10, master_seed=1, dt=2.0, flight_time=1.0)
        with self.assertRaises(ConfigError):
            PairConfig(pairs=10, master_seed=1, measurement_model='Magic')

    def test_steps(self):
        self.assertEqual(PairConfig(pairs=1, master_seed=1).steps, 20)

    def test_disturbance_spec(self):
        with self.assertRaises(ConfigError):
            DisturbanceSpec(-0.1)
        with self.assertRaises(ConfigError):
            DisturbanceSpec(0.1, target_wing=3)
        with self.assertRaises(ConfigError):
            DisturbanceSpec(0.1, law='cauchy')
