"""Equal-width histograms of post-processed estimates."""
import csv
from dataclasses import dataclass

import numpy as np

from hybrid.conf import get_setting

DEFAULT_INTERVAL = (-2.0, 2.0)


@dataclass(frozen=True, eq=False)
class Histogram:
    """Half-open bins [lo + i*width, lo + (i+1)*width); out-of-interval values are overflow."""
    bin_count: int
    interval: tuple
    counts: np.ndarray
    overflow: int = 0

    @property
    def width(self):
        lo, hi = self.interval
        return (hi - lo) / self.bin_count

    @property
    def edges(self):
        return np.linspace(self.interval[0], self.interval[1], self.bin_count + 1)

    @property
    def total(self):
        return int(self.counts.sum())

    def bin_center(self, index):
        return self.interval[0] + (index + 0.5) * self.width

    @property
    def mode_bin(self):
        """Index of the fullest bin (lowest index on ties)."""
        return int(np.argmax(self.counts))

    @property
    def mode_bin_center(self):
        return self.bin_center(self.mode_bin)

    @property
    def peak_height(self):
        return int(self.counts[self.mode_bin])

    def rows(self):
        edges = self.edges
        for i, count in enumerate(self.counts):
            yield i, float(edges[i]), float(edges[i + 1]), int(count)

    def write_csv(self, path):
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f)
            writer.writerow(['bin', 'lo', 'hi', 'count'])
            writer.writerows(self.rows())


def histogram(values, bin_count=None, interval=DEFAULT_INTERVAL):
    if bin_count is None:
        bin_count = get_setting('HYBRIDSIM_HISTOGRAM_BINS')
    if bin_count < 1:
        raise ValueError("bin_count must be at least 1")
    lo, hi = (float(v) for v in interval)
    if not hi > lo:
        raise ValueError("empty histogram interval")
    values = np.asarray(values, dtype=float).reshape(-1)
    inside = (values >= lo) & (values < hi)
    width = (hi - lo) / bin_count
    index = np.floor((values[inside] - lo) / width).astype(int)
    # rounding can push a value just below hi into a phantom last-plus-one bin
    index = np.clip(index, 0, bin_count - 1)
    counts = np.bincount(index, minlength=bin_count)
    return Histogram(bin_count, (lo, hi), counts, int((~inside).sum()))
