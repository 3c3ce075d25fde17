import math

import numpy as np
from django.test import SimpleTestCase

from algorithms.ipe import analytic_pr0, build_ipe_program, eigenphase
from simulator.interpreter import ExecConfig, run_shots

PHI = eigenphase() * math.pi


class IpeStepTests(SimpleTestCase):
    """One phase estimation step against cos^2(t (phi - phi_inv) / 2)."""

    def zero_rate(self, t, phi_inv, shots=2000, seed=0, mode='real', scale=1):
        records = run_shots(build_ipe_program(t, phi_inv, scale=scale),
                            ExecConfig(shots=shots, seed=seed, classical_mode=mode))
        return sum(1 - int(r.output('d')) for r in records) / shots

    def test_eigenphase(self):
        self.assertEqual(eigenphase(), 0.25)
        self.assertEqual(eigenphase(0.5), -0.25)

    def test_deterministic_outcomes(self):
        """phi_inv on the eigenphase always reads 0; half a turn away always reads 1."""
        self.assertEqual(self.zero_rate(0.5, 0.25, shots=200), 1.0)
        self.assertEqual(self.zero_rate(1.0, -0.75, shots=200), 0.0)
        self.assertAlmostEqual(analytic_pr0(PHI, -0.75 * math.pi, 1.0), 0.0)

    def test_half(self):
        rate = self.zero_rate(1.0, -0.25, shots=4000)
        self.assertAlmostEqual(analytic_pr0(PHI, -0.25 * math.pi, 1.0), 0.5)
        self.assertLess(abs(rate - 0.5), 5 * math.sqrt(0.25 / 4000))

    def test_random_settings(self):
        rng = np.random.default_rng(4)
        shots = 2000
        for seed in range(5):
            t = float(rng.uniform(0.1, 1.9))
            phi_inv = float(rng.uniform(-1, 1))
            p = analytic_pr0(PHI, phi_inv * math.pi, t)
            rate = self.zero_rate(t, phi_inv, shots=shots, seed=seed)
            self.assertLess(abs(rate - p), 5 * math.sqrt(p * (1 - p) / shots) + 1e-9)

    def test_scale_multiplies_time(self):
        """t = 0.5 with scale 2 behaves like t = 1, on both backends."""
        p = analytic_pr0(PHI, -0.25 * math.pi, 1.0)
        for mode in ('real', 'fixed'):
            rate = self.zero_rate(0.5, -0.25, shots=4000, seed=7, mode=mode, scale=2)
            self.assertLess(abs(rate - p), 5 * math.sqrt(p * (1 - p) / 4000))
