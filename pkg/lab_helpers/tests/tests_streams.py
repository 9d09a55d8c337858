import numpy as np

from django.test import SimpleTestCase

from .. import streams


class CounterStreamTest(SimpleTestCase):
    def test_draws_are_pure_functions_of_key_and_counter(self):
        key = streams.as_key(12345)
        counters = np.arange(1000, dtype=np.uint64)
        forward = streams.uniform(key, counters)
        backward = streams.uniform(key, counters[::-1])[::-1]
        np.testing.assert_array_equal(forward, backward)

    def test_uniform_range(self):
        draws = streams.uniform(streams.as_key(7),
                                np.arange(100000, dtype=np.uint64))
        self.assertGreater(draws.min(), 0.0)
        self.assertLessEqual(draws.max(), 1.0)
        self.assertAlmostEqual(draws.mean(), 0.5, delta=4 * 0.2887 / 316)

    def test_standard_normal_moments(self):
        draws = streams.standard_normal(
            streams.as_key(99), 2 * np.arange(200000, dtype=np.uint64))
        self.assertAlmostEqual(draws.mean(), 0.0, delta=4 / np.sqrt(2e5))
        self.assertAlmostEqual(draws.var(), 1.0, delta=0.02)

    def test_split_keys_deterministic_and_distinct(self):
        first = streams.split_keys(2024, 500)
        second = streams.split_keys(2024, 500)
        np.testing.assert_array_equal(first, second)
        self.assertEqual(len(np.unique(first)), 500)
        other = streams.split_keys(2025, 500)
        self.assertFalse(np.array_equal(first, other))

    def test_domain_keys_separate_streams(self):
        key = streams.as_key(1)
        a = streams.domain_key(key, streams.SALT_ORACLE)
        b = streams.domain_key(key, streams.SALT_DISTURBANCE)
        self.assertNotEqual(int(a), int(b))

    def test_as_key_wraps_negative_and_large_values(self):
        self.assertEqual(int(streams.as_key(-1)), 2 ** 64 - 1)
        self.assertEqual(int(streams.as_key(2 ** 64 + 3)), 3)
