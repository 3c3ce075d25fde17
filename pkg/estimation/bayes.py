"""
Offline Bayesian refit of phase estimation evidence on a fixed grid.

Each measured iteration contributes the factor

    Pr(d | phi; phi_inv, t) = cos^2(t (phi - phi_inv) / 2)   for d = 0
                              sin^2(t (phi - phi_inv) / 2)   for d = 1

Grid nodes and estimates are in units of pi, like the registers; evidence is
held in radians. Everything is computed in log space.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy.special import logsumexp

from hybrid.conf import get_setting
from hybrid.exceptions import DegeneratePosterior, RecordFormatError

logger = logging.getLogger(__name__)

# Per-factor floor, close to where exp() underflows in double precision.
LOG_FLOOR = -745.0
DEFAULT_PRIOR_INTERVAL = (-1.0, 1.0)
WEIGHT_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class EvidenceRecord:
    """Evolution times, inversion angles (radians) and outcomes of one shot."""
    t: np.ndarray
    phi_inv: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float).reshape(-1)
        phi_inv = np.asarray(self.phi_inv, dtype=float).reshape(-1)
        d = np.asarray(self.d, dtype=int).reshape(-1)
        if not len(t) == len(phi_inv) == len(d):
            raise ValueError("t, phi_inv and d must have the same length")
        if np.any(t <= 0):
            raise ValueError("evolution times must be positive")
        if np.any((d != 0) & (d != 1)):
            raise ValueError("outcomes must be 0 or 1")
        object.__setattr__(self, 't', t)
        object.__setattr__(self, 'phi_inv', phi_inv)
        object.__setattr__(self, 'd', d)

    def __len__(self):
        return len(self.d)

    def __add__(self, other):
        return EvidenceRecord(np.concatenate([self.t, other.t]),
                              np.concatenate([self.phi_inv, other.phi_inv]),
                              np.concatenate([self.d, other.d]))

    @classmethod
    def empty(cls):
        return cls([], [], [])

    @classmethod
    def from_entries(cls, entries):
        """From simulator EvidenceEntry objects (phi_inv in units of pi)."""
        entries = list(entries)
        return cls([e.t for e in entries],
                   [e.phi_inv * math.pi for e in entries],
                   [e.d for e in entries])


@dataclass(frozen=True, eq=False)
class PosteriorGrid:
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or len(nodes) < 2:
            raise ValueError("a grid needs at least two nodes")
        if weights.shape != nodes.shape:
            raise ValueError("one weight per node")
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > WEIGHT_TOLERANCE:
            raise ValueError("weights must be nonnegative and sum to 1")
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'weights', weights)

    def __len__(self):
        return len(self.nodes)

    def mass_within(self, center, radius):
        return float(self.weights[np.abs(self.nodes - center) <= radius].sum())


def _grid_nodes(size, interval):
    if size is None:
        size = get_setting('HYBRIDSIM_GRID_SIZE')
    if size < 2:
        raise ValueError("a grid needs at least two nodes")
    lo, hi = interval
    if not hi > lo:
        raise ValueError("empty prior interval")
    return np.linspace(lo, hi, size)


def uniform_grid(size=None, interval=DEFAULT_PRIOR_INTERVAL):
    nodes = _grid_nodes(size, interval)
    return PosteriorGrid(nodes, np.full(len(nodes), 1.0 / len(nodes)))


def normal_grid(mean, std, size=None, interval=DEFAULT_PRIOR_INTERVAL):
    """Gaussian prior N(mean, std), units of pi, truncated to the grid interval."""
    if not std > 0:
        raise ValueError("prior standard deviation must be positive")
    nodes = _grid_nodes(size, interval)
    return _normalize(-0.5 * ((nodes - mean) / std) ** 2, nodes)


def log_likelihood(ev, phi):
    """Sum of floored log factors; phi in units of pi, scalar or array."""
    phi_rad = np.atleast_1d(np.asarray(phi, dtype=float)) * math.pi
    if len(ev) == 0:
        total = np.zeros_like(phi_rad)
    else:
        half = ev.t[:, None] * (phi_rad[None, :] - ev.phi_inv[:, None]) / 2
        factors = np.where(ev.d[:, None] == 0, np.cos(half) ** 2, np.sin(half) ** 2)
        with np.errstate(divide='ignore'):
            logs = np.log(factors)
        total = np.maximum(logs, LOG_FLOOR).sum(axis=0)
    if np.ndim(phi) == 0:
        return float(total[0])
    return total


def _normalize(log_weights, nodes):
    norm = logsumexp(log_weights)
    if not np.isfinite(norm):
        raise DegeneratePosterior("every grid weight underflowed")
    weights = np.exp(log_weights - norm)
    return PosteriorGrid(nodes, weights / weights.sum())


def _log_prior(grid):
    with np.errstate(divide='ignore'):
        return np.log(grid.weights)


def posterior(ev, grid):
    """Bayes update of grid by the evidence."""
    return _normalize(_log_prior(grid) + log_likelihood(ev, grid.nodes), grid.nodes)


def mmse_estimate(post):
    return float(np.dot(post.weights, post.nodes))


# --- Refit of recorded shots ---

@dataclass(frozen=True)
class RefitRow:
    shot: int
    raw: Optional[float]
    refit: float


@dataclass(frozen=True)
class RefitResult:
    """Per-shot and pooled estimates, all multiplied by `factor`."""
    rows: Tuple[RefitRow, ...]
    factor: float
    pooled_estimate: float
    true_phase: Optional[float] = None
    summary: dict = field(default_factory=dict)

    @property
    def shots(self):
        return len(self.rows)


def _mse(values, target):
    values = np.asarray(values, dtype=float)
    return float(np.mean((values - target) ** 2))


def refit(shots, grid_size=None, prior_interval=DEFAULT_PRIOR_INTERVAL, factor=2,
          true_phase=None, estimate_output='mu', prior_normal=None):
    """MMSE refit of every shot's evidence on a grid over `prior_interval`.

    The prior is uniform, or N(mean, std) when `prior_normal` is given. For RWPE
    records the run's own (mu0, sigma0) is the natural choice.
    `true_phase` is in post-processed units (compared against factor * estimate).
    The pooled estimate uses the evidence of all shots at once.
    """
    shots = list(shots)
    if not shots:
        raise RecordFormatError("no shot records to refit")
    if prior_normal is None:
        prior = uniform_grid(grid_size, prior_interval)
        prior_summary = {'kind': 'uniform', 'interval': [float(v) for v in prior_interval]}
    else:
        mean, std = prior_normal
        prior = normal_grid(mean, std, grid_size, prior_interval)
        prior_summary = {'kind': 'normal', 'mean': float(mean), 'std': float(std),
                         'interval': [float(v) for v in prior_interval]}
    log_prior = _log_prior(prior)
    pooled = np.zeros(len(prior))
    rows = []
    for record in shots:
        if not record.evidence:
            raise RecordFormatError("shot %d has no evidence" % record.shot)
        ll = log_likelihood(EvidenceRecord.from_entries(record.evidence), prior.nodes)
        pooled += ll
        estimate = mmse_estimate(_normalize(log_prior + ll, prior.nodes))
        try:
            raw = factor * record.output_real(estimate_output)
        except KeyError:
            raw = None
        rows.append(RefitRow(record.shot, raw, factor * estimate))
    pooled_estimate = factor * mmse_estimate(_normalize(log_prior + pooled, prior.nodes))

    refits = [r.refit for r in rows]
    raws = [r.raw for r in rows if r.raw is not None]
    summary = {
        'shots': len(rows),
        'factor': factor,
        'grid_size': len(prior),
        'prior': prior_summary,
        'mean_refit': float(np.mean(refits)),
        'mean_raw': float(np.mean(raws)) if raws else None,
        'pooled_estimate': pooled_estimate,
    }
    if true_phase is not None:
        summary['true_phase'] = true_phase
        summary['mse_refit'] = _mse(refits, true_phase)
        summary['mse_pooled'] = (pooled_estimate - true_phase) ** 2
        summary['mse_raw'] = _mse(raws, true_phase) if raws else None
    logger.info("refit %d shots on a %d-node %s grid", len(rows), len(prior), prior_summary['kind'])
    return RefitResult(tuple(rows), factor, pooled_estimate, true_phase, summary)
