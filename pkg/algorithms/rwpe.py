"""
Random walk phase estimation as a hybrid program.

Mean and deviation live in fixed registers, in units of pi. Each iteration
picks the inversion angle phi_inv = mu + (pi/2) sigma and evolution time
t = 1 / (pi sigma), runs one IPE step and moves mu by sigma * c_shift toward
the measured side, then shrinks sigma by c_shrink. For outcome d the IPE step
sees the phase (phi - mu) / sigma - pi/2, so Pr(d = 0) = (1 + sin z) / 2 and
the walk drifts toward the eigenphase.

On the fixed-point backend 1/(pi sigma) overflows Q2.16 once sigma is small,
so pi sigma is doubled into [1, 2) first and the doublings are kept in an
int18 scale that multiplies the rotation angles. Angles wrap mod 4 (4 pi
radians), which rz and crz don't see.

The program returns mu; the reported estimate is POSTPROCESS_FACTOR * mu.
"""
import math
from dataclasses import dataclass, replace

from hybrid import fixedpoint as fx
from hybrid.builder import ProcedureBuilder, build_program
from hybrid.exceptions import OutOfRange
from algorithms.ipe import (
    ANCILLA, DEFAULT_ORACLE_COEFF, EIGENSTATE, IPE_STEP, build_ipe_step, eigenphase,
)
from simulator.classical import ClassicalMode

POSTPROCESS_FACTOR = 2


@dataclass(frozen=True)
class RwpeConstants:
    c_shift: float = math.exp(-0.5)
    c_shrink: float = math.sqrt((math.e - 1) / math.e)
    half_pi: float = math.pi / 2


CONSTANTS = RwpeConstants()


@dataclass(frozen=True)
class RwpeParams:
    mu0: float = 0.7951
    sigma0: float = 0.6065
    n_iter: int = 24
    refresh_period: int = 2
    oracle_coeff: float = DEFAULT_ORACLE_COEFF

    def __post_init__(self):
        if self.n_iter < 1:
            raise ValueError("n_iter must be at least 1")
        if self.refresh_period < 1:
            raise ValueError("refresh_period must be at least 1")
        if self.n_iter > fx.RAW_MAX:
            raise OutOfRange("n_iter %d does not fit an int18 counter" % self.n_iter)
        if self.sigma0 <= 0:
            raise ValueError("sigma0 must be positive")
        for name in ('mu0', 'sigma0', 'oracle_coeff'):
            fx.fx_encode(getattr(self, name))
        # The first inversion angle and pi * sigma0 must fit a fixed register.
        fx.fx_encode(self.mu0 + CONSTANTS.half_pi * self.sigma0)
        fx.fx_encode(2 * CONSTANTS.half_pi * self.sigma0)

    @property
    def true_phase(self):
        """Eigenphase (units of pi) the walk converges to, before post-processing."""
        return eigenphase(self.oracle_coeff)


def build_rwpe(params=None, constants=CONSTANTS):
    """Build the RWPE program: entry procedure `rwpe` calling `ipe_step`.

    Outputs mu and sigma after n_iter iterations; every measured iteration is
    tagged as evidence (t, phi_inv, d).
    """
    params = params or RwpeParams()
    b = ProcedureBuilder('rwpe', 2)
    mu = b.var('fixed', 'mu', params.mu0)
    sigma = b.var('fixed', 'sigma', params.sigma0)
    c_shift = b.var('fixed', 'c_shift', constants.c_shift)
    c_shrink = b.var('fixed', 'c_shrink', constants.c_shrink)
    half_pi = b.var('fixed', 'half_pi', constants.half_pi)
    phi_inv = b.var('fixed', 'phi_inv')
    span = b.var('fixed', 'span')
    tau = b.var('fixed', 'tau')
    step = b.var('fixed', 'step')
    n_iter = b.var('int18', 'n_iter', params.n_iter)
    refresh_period = b.var('int18', 'refresh_period', params.refresh_period)
    iteration = b.var('int18', 'iteration', 0)
    phase = b.var('int18', 'phase', 0)
    scale = b.var('int18', 'scale')
    flag = b.var('bit', 'flag')
    d = b.var('bit', 'd')

    b.block('entry')
    b.br('head')

    b.block('head')
    b.cmp_lt(flag, iteration, n_iter)
    b.brif(flag, 'refresh_check', 'done')

    # --- Eigenstate refresh every refresh_period iterations ---
    b.block('refresh_check')
    b.cmp_eq(flag, phase, 0)
    b.brif(flag, 'refresh', 'prepare')

    b.block('refresh')
    b.reset(EIGENSTATE)
    b.x(EIGENSTATE)
    b.br('prepare')

    b.block('prepare')
    b.add(phase, phase, 1)
    b.cmp_eq(flag, phase, refresh_period)
    b.select(phase, flag, 0, phase)
    b.reset(ANCILLA)
    b.mul(span, sigma, half_pi)
    b.add(span, span, span)
    b.add(scale, 0, 1)
    # sigma can quantize to zero on the fixed-point backend
    b.cmp_eq(flag, span, 0.0)
    b.select(span, flag, 1.0, span)
    b.br('normalize')

    # --- t = tau * scale with tau = 1 / span, span in [1, 2) ---
    b.block('normalize')
    b.cmp_lt(flag, span, 1.0)
    b.brif(flag, 'double', 'invert')

    b.block('double')
    b.add(span, span, span)
    b.add(scale, scale, scale)
    b.br('normalize')

    b.block('invert')
    b.recip(tau, span)
    b.mul(phi_inv, sigma, half_pi)
    b.add(phi_inv, phi_inv, mu)
    b.call(IPE_STEP, (tau, scale, phi_inv), (d,))
    b.brif(d, 'down', 'up')

    # --- Walk ---
    b.block('up')
    b.mul(step, sigma, c_shift)
    b.add(mu, mu, step)
    b.br('shrink')

    b.block('down')
    b.mul(step, sigma, c_shift)
    b.sub(mu, mu, step)
    b.br('shrink')

    b.block('shrink')
    b.mul(sigma, sigma, c_shrink)
    b.add(iteration, iteration, 1)
    b.br('head')

    b.block('done')
    b.output(mu)
    b.output(sigma)
    b.ret()
    return build_program('rwpe', b.build(), build_ipe_step(params.oracle_coeff))


def postprocess(mu, factor=POSTPROCESS_FACTOR):
    return factor * mu


# --- Deviation schedule ---

def sigma_trajectory(params=None, mode=ClassicalMode.FIXED, constants=CONSTANTS):
    """sigma before each iteration and after the last, as floats (n_iter + 1 values).

    The schedule doesn't depend on measurement outcomes. In fixed mode every
    shrink is the same truncating fx_mul the program executes.
    """
    params = params or RwpeParams()
    if ClassicalMode(mode) is ClassicalMode.FIXED:
        sigma = fx.fx_encode(params.sigma0)
        c_shrink = fx.fx_encode(constants.c_shrink)
        values = [sigma]
        for _ in range(params.n_iter):
            sigma = fx.fx_mul(sigma, c_shrink)
            values.append(sigma)
        return [s.value for s in values]
    values = [float(params.sigma0)]
    for _ in range(params.n_iter):
        values.append(values[-1] * constants.c_shrink)
    return values


def sigma_stall_iteration(params=None, mode=ClassicalMode.FIXED, horizon=None,
                          constants=CONSTANTS):
    """First iteration k whose shrink leaves sigma unchanged, or None.

    Looks `horizon` iterations ahead (default: the run length).
    """
    params = params or RwpeParams()
    if horizon is not None:
        params = replace(params, n_iter=horizon)
    values = sigma_trajectory(params, mode, constants)
    for k in range(len(values) - 1):
        if values[k + 1] == values[k]:
            return k
    return None
