"""
Iterative phase estimation step.

The step runs on an ancilla (q0) and an eigenstate register (q1):

    h q0; rz(-phi_inv * t) q0; crz(-oracle_coeff * t) q0, q1; h q0; mz q0

Angles are in units of pi and are computed by classical instructions at run
time from the parameters t, scale and phi_inv, so the same procedure serves
every iteration of a phase estimation loop. With the eigenstate |1> and
oracle_coeff = -0.5 the ancilla picks up the eigenphase 0.25.
"""
import math

from hybrid.builder import ProcedureBuilder, build_program

ANCILLA = 0
EIGENSTATE = 1
IPE_STEP = 'ipe_step'
DEFAULT_ORACLE_COEFF = -0.5


def analytic_pr0(phi, phi_inv, t):
    """Pr(d = 0 | phi; phi_inv, t) = cos^2(t (phi - phi_inv) / 2), angles in radians."""
    return math.cos(t * (phi - phi_inv) / 2) ** 2


def eigenphase(oracle_coeff=DEFAULT_ORACLE_COEFF):
    """Phase (units of pi) the controlled oracle kicks back from the eigenstate |1>."""
    return -oracle_coeff / 2


def build_ipe_step(oracle_coeff=DEFAULT_ORACLE_COEFF, name=IPE_STEP):
    """Procedure `name(t, scale, phi_inv) -> d`.

    The effective evolution time is t * scale; scale is an int18 so callers
    can keep t inside the fixed-point range.
    """
    b = ProcedureBuilder(name, 2)
    t = b.param('fixed', 't')
    scale = b.param('int18', 'scale')
    phi_inv = b.param('fixed', 'phi_inv')
    angle = b.var('fixed', 'angle')
    kick = b.var('fixed', 'kick')
    d = b.var('bit', 'd')

    b.block('entry')
    b.mul(angle, phi_inv, t)
    b.mul(angle, angle, scale)
    b.neg(angle, angle)
    b.mul(kick, t, -oracle_coeff)
    b.mul(kick, kick, scale)
    b.h(ANCILLA)
    b.rz(angle, ANCILLA)
    b.crz(kick, ANCILLA, EIGENSTATE)
    b.h(ANCILLA)
    b.mz(ANCILLA, d, evidence=(t, phi_inv, scale))
    b.ret(d)
    return b.build()


def build_ipe_program(t, phi_inv, oracle_coeff=DEFAULT_ORACLE_COEFF, scale=1):
    """One standalone IPE step on the eigenstate |1>; outputs d."""
    step = build_ipe_step(oracle_coeff)
    b = ProcedureBuilder('main', 2)
    d = b.var('bit', 'd')
    b.block('entry')
    b.x(EIGENSTATE)
    b.call(IPE_STEP, (t, scale, phi_inv), (d,))
    b.output(d)
    b.ret()
    return build_program('main', b.build(), step)
