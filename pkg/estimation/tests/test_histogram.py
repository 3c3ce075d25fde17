import csv
import os
import tempfile

import numpy as np
from django.test import SimpleTestCase

from estimation.histogram import histogram


class HistogramTests(SimpleTestCase):
    """100 bins over [-2, 2)."""

    def test_bins(self):
        hist = histogram([0.5, -2.0, 1.9999999999999998, 0.5])
        self.assertEqual(hist.bin_count, 100)
        self.assertEqual(hist.counts[62], 2)
        self.assertEqual(hist.counts[0], 1)
        self.assertEqual(hist.counts[99], 1)
        self.assertEqual(hist.mode_bin, 62)
        self.assertAlmostEqual(hist.mode_bin_center, 0.5)
        self.assertEqual(hist.peak_height, 2)

    def test_overflow(self):
        values = np.random.default_rng(0).normal(0, 2, 1000)
        hist = histogram(values)
        self.assertEqual(hist.total + hist.overflow, 1000)
        self.assertEqual(histogram([2.0, -2.5, float('nan')]).overflow, 3)

    def test_ties_take_lowest_bin(self):
        self.assertEqual(histogram([0.1, -0.1], 4, (-1, 1)).mode_bin, 1)

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            histogram([0.0], -1)
        with self.assertRaises(ValueError):
            histogram([0.5], bin_count=0)
        with self.assertRaises(ValueError):
            histogram([0.0], 10, (1, 1))

    def test_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'hist.csv')
            histogram([0.5], 4, (0, 1)).write_csv(path)
            with open(path, newline='', encoding='utf-8') as f:
                rows = list(csv.reader(f))
        self.assertEqual(rows[0], ['bin', 'lo', 'hi', 'count'])
        self.assertEqual(rows[3], ['2', '0.5', '0.75', '1'])
