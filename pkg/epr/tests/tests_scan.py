import math

import numpy as np

from django.test import SimpleTestCase

from lab_helpers.exceptions import ConfigError
from ..config import ANALYTIC_QUANTUM_ORACLE, INDEPENDENT_BORN
from ..scan import chsh_scan
from .helpers import pair_config

GRID_45 = np.arange(0, 360, 45)


class ChshScanTest(SimpleTestCase):
    def test_independent_born_respects_bound(self):
        config = pair_config(4000, master_seed=21,
                             measurement_model=INDEPENDENT_BORN)
        report = chsh_scan(config, GRID_45)
        self.assertLessEqual(report.max_value, 2 + 4 * report.max_stderr)
        angles = np.radians(GRID_45)
        expected = -np.outer(np.cos(angles), np.cos(angles))
        self.assertLess(np.max(np.abs(report.e_table - expected)), 0.08)

    def test_oracle_reaches_quantum_maximum(self):
        config = pair_config(20000, master_seed=22,
                             measurement_model=ANALYTIC_QUANTUM_ORACLE)
        report = chsh_scan(config, GRID_45)
        self.assertAlmostEqual(report.max_value, 2 * math.sqrt(2),
                               delta=0.06)
        self.assertEqual(report.e_table.shape, (8, 8))
        self.assertEqual(report.pairs, 20000)

    def test_needs_two_angles(self):
        with self.assertRaises(ConfigError):
            chsh_scan(pair_config(1000), [0])

    def test_needs_enough_pairs(self):
        with self.assertRaises(ConfigError):
            chsh_scan(pair_config(50), GRID_45)
