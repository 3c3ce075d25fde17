import math

import numpy as np
from django.test import SimpleTestCase, override_settings, tag

from algorithms.rwpe import RwpeParams, build_rwpe, postprocess
from estimation.bayes import (
    LOG_FLOOR, EvidenceRecord, PosteriorGrid, _normalize, log_likelihood, mmse_estimate,
    normal_grid, posterior, refit, uniform_grid,
)
from hybrid.exceptions import DegeneratePosterior, RecordFormatError
from simulator.interpreter import ExecConfig, run_shots
from simulator.records import EvidenceEntry, ShotRecord


def brute_force_posterior(ev, nodes):
    weights = []
    for phi in nodes:
        w = 1.0
        for t, phi_inv, d in zip(ev.t, ev.phi_inv, ev.d):
            c = math.cos(t * (phi * math.pi - phi_inv) / 2) ** 2
            w *= c if d == 0 else 1 - c
        weights.append(w)
    weights = np.array(weights)
    return weights / weights.sum()


class EvidenceTests(SimpleTestCase):

    def test_validation(self):
        with self.assertRaises(ValueError):
            EvidenceRecord([1.0], [0.0, 0.1], [0])
        with self.assertRaises(ValueError):
            EvidenceRecord([0.0], [0.0], [0])
        with self.assertRaises(ValueError):
            EvidenceRecord([1.0], [0.0], [2])

    def test_from_entries(self):
        """Simulator entries carry phi_inv in units of pi."""
        ev = EvidenceRecord.from_entries([EvidenceEntry(0.5, 0.25, 1), EvidenceEntry(1.0, -0.5, 0)])
        np.testing.assert_allclose(ev.phi_inv, [math.pi / 4, -math.pi / 2])
        self.assertEqual(list(ev.d), [1, 0])
        self.assertEqual(len(ev + ev), 4)


class LikelihoodTests(SimpleTestCase):
    """Grid likelihood and posterior."""

    def setUp(self):
        rng = np.random.default_rng(12)
        self.ev = EvidenceRecord(rng.uniform(0.2, 3.0, 5), rng.uniform(-math.pi, math.pi, 5),
                                 rng.integers(0, 2, 5))
        self.grid = uniform_grid(101)

    def test_empty_evidence(self):
        self.assertEqual(log_likelihood(EvidenceRecord.empty(), 0.3), 0.0)
        np.testing.assert_array_equal(log_likelihood(EvidenceRecord.empty(), [0.1, 0.2]), [0, 0])
        post = posterior(EvidenceRecord.empty(), self.grid)
        np.testing.assert_allclose(post.weights, self.grid.weights)

    def test_floor(self):
        """An impossible outcome costs LOG_FLOOR instead of -inf."""
        ev = EvidenceRecord([1.0], [0.5 * math.pi], [1])
        self.assertEqual(log_likelihood(ev, 0.5), LOG_FLOOR)

    def test_matches_brute_force(self):
        post = posterior(self.ev, self.grid)
        np.testing.assert_allclose(post.weights, brute_force_posterior(self.ev, self.grid.nodes),
                                   atol=1e-10)
        self.assertAlmostEqual(post.weights.sum(), 1.0)

    def test_scalar_and_array(self):
        values = log_likelihood(self.ev, self.grid.nodes[:3])
        self.assertAlmostEqual(log_likelihood(self.ev, float(self.grid.nodes[1])), values[1])

    def test_sequential_updates(self):
        """Updating twice equals updating once with both halves."""
        first = EvidenceRecord(self.ev.t[:2], self.ev.phi_inv[:2], self.ev.d[:2])
        second = EvidenceRecord(self.ev.t[2:], self.ev.phi_inv[2:], self.ev.d[2:])
        both = posterior(first + second, self.grid)
        stepwise = posterior(second, posterior(first, self.grid))
        np.testing.assert_allclose(stepwise.weights, both.weights, atol=1e-12)

    def test_shift_covariance(self):
        """Moving every phi_inv and every node by the same amount leaves the weights alone."""
        delta = 0.125
        shifted_ev = EvidenceRecord(self.ev.t, self.ev.phi_inv + delta * math.pi, self.ev.d)
        shifted_grid = PosteriorGrid(self.grid.nodes + delta, self.grid.weights)
        np.testing.assert_allclose(posterior(shifted_ev, shifted_grid).weights,
                                   posterior(self.ev, self.grid).weights, atol=1e-12)

    def test_mmse(self):
        self.assertAlmostEqual(mmse_estimate(posterior(EvidenceRecord.empty(), self.grid)), 0.0)
        times = [1.0, 2.0, 4.0, 8.0, 16.0]
        ev = EvidenceRecord(times, [0.25 * math.pi] * 5, [0] * 5)
        post = posterior(ev, uniform_grid(2001))
        self.assertAlmostEqual(mmse_estimate(post), 0.25, delta=0.01)
        self.assertGreater(post.mass_within(0.25, 0.1), 0.9)

    def test_contradictory_evidence(self):
        """Outcomes that rule out every node still give a finite posterior."""
        ev = EvidenceRecord([1.0, 1.0], [0.0, 0.0], [0, 1]) + EvidenceRecord([1.0], [math.pi], [0])
        post = posterior(ev, self.grid)
        self.assertTrue(np.all(np.isfinite(post.weights)))
        self.assertAlmostEqual(post.weights.sum(), 1.0)

    def test_degenerate(self):
        with self.assertRaises(DegeneratePosterior):
            _normalize(np.full(3, -np.inf), np.array([0.0, 0.5, 1.0]))

    @override_settings(HYBRIDSIM_GRID_SIZE=11)
    def test_grid_size_setting(self):
        self.assertEqual(len(uniform_grid()), 11)
        with self.assertRaises(ValueError):
            uniform_grid(11, (1.0, 1.0))

    def test_grid_size_zero_is_rejected(self):
        """An explicit size of 0 or 1 is an error, not a request for the default."""
        for size in (0, 1):
            with self.assertRaises(ValueError):
                uniform_grid(size)
            with self.assertRaises(ValueError):
                normal_grid(0.0, 1.0, size)

    def test_normal_grid(self):
        """Gaussian weights peak at the mean and are normalized on the interval."""
        grid = normal_grid(0.7951, 0.6065, 2001)
        self.assertAlmostEqual(grid.weights.sum(), 1.0)
        self.assertAlmostEqual(grid.nodes[np.argmax(grid.weights)], 0.795, places=6)
        at_phase = grid.weights[np.argmin(abs(grid.nodes - 0.25))]
        at_alias = grid.weights[np.argmin(abs(grid.nodes + 0.75))]
        expected = (1.5451 ** 2 - 0.5451 ** 2) / (2 * 0.6065 ** 2)
        self.assertAlmostEqual(math.log(at_phase / at_alias), expected, places=6)
        with self.assertRaises(ValueError):
            normal_grid(0.0, 0.0)


class RefitTests(SimpleTestCase):
    """Refitting recorded RWPE shots."""

    def rwpe_records(self, shots, seed=0):
        return run_shots(build_rwpe(), ExecConfig(shots=shots, seed=seed))

    def test_errors(self):
        with self.assertRaises(RecordFormatError):
            refit([])
        with self.assertRaises(RecordFormatError):
            refit([ShotRecord(0, 1, 'real', outputs=(('mu', 0.2),))])

    def test_raw_optional(self):
        """Shots without the estimate output still refit."""
        record = ShotRecord(0, 1, 'real', evidence=(EvidenceEntry(1.0, 0.25, 0),))
        result = refit([record], grid_size=201)
        self.assertIsNone(result.rows[0].raw)
        self.assertIsNone(result.summary['mean_raw'])

    def test_summary(self):
        records = self.rwpe_records(10)
        result = refit(records, grid_size=501, true_phase=0.5)
        self.assertEqual(result.shots, 10)
        self.assertEqual(result.summary['grid_size'], 501)
        for row, record in zip(result.rows, records):
            self.assertAlmostEqual(row.raw, postprocess(record.output_real('mu')))
        self.assertAlmostEqual(result.pooled_estimate, 0.5, delta=0.01)

    def check_mse(self, shots, seed):
        """With the run's own Gaussian prior the refit beats the run-time estimate."""
        params = RwpeParams()
        result = refit(self.rwpe_records(shots, seed=seed), true_phase=0.5,
                       prior_normal=(params.mu0, params.sigma0))
        summary = result.summary
        self.assertEqual(summary['prior']['kind'], 'normal')
        self.assertLessEqual(summary['mse_refit'], summary['mse_raw'])
        self.assertLessEqual(summary['mse_pooled'], summary['mse_raw'])

    def test_refit_improves_mse(self):
        self.check_mse(300, seed=5)

    @tag('acceptance')
    def test_refit_improves_mse_full(self):
        self.check_mse(1000, seed=3)
