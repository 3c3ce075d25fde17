"""Lowering of convenience gates to a profile's native gate set.

Each rule maps one QuantumOp to a list of instructions that implement the same
unitary up to global phase. Angles stay in units of pi. A rule may emit gates
that need lowering themselves (crz emits cnot); lower_to_native keeps
expanding until everything is admitted by the profile.

  cnot c,t  ->  h t; eswap(0.5) c,t; rz(1) c; eswap(0.5) c,t;
                rz(0.5) c; rz(-0.5) t; h t

eswap(pi/2) is sqrt(SWAP) times e^{-i pi/4}, and
sqrt(SWAP) (Z x I) sqrt(SWAP) = diag(1, i, -i, -1), so (S x S^dag) after it
is CZ; the h pair on the target turns CZ into CNOT.

  crz(b) c,t  ->  cnot c,t; rz(-b/2) t; cnot c,t; rz(b/2) t
"""
import itertools
import logging
from dataclasses import replace

from hybrid.exceptions import UnloweredGate
from hybrid.profiles import validate
from hybrid.program import (
    BasicBlock, ClassicalOp, Const, Decl, QuantumOp, Ref, VarKind,
)

logger = logging.getLogger(__name__)

REQUIRED_NATIVE = frozenset(['h', 'sx', 'x', 'rz', 'eswap'])


class _Temps:
    """Fresh fixed temporaries for one procedure."""

    def __init__(self, proc):
        self.taken = {d.name for d in proc.declarations}
        self.counter = itertools.count()
        self.decls = []

    def new(self, stem):
        while True:
            name = "_lw%d_%s" % (next(self.counter), stem)
            if name not in self.taken:
                self.taken.add(name)
                self.decls.append(Decl(name, VarKind.FIXED))
                return name


def _lower_cnot(instr, temps):
    c, t = instr.qubits
    return [
        QuantumOp('h', (t,)),
        QuantumOp('eswap', (c, t), Const(0.5)),
        QuantumOp('rz', (c,), Const(1.0)),
        QuantumOp('eswap', (c, t), Const(0.5)),
        QuantumOp('rz', (c,), Const(0.5)),
        QuantumOp('rz', (t,), Const(-0.5)),
        QuantumOp('h', (t,)),
    ]


def _lower_crz(instr, temps):
    c, t = instr.qubits
    angle = instr.angle
    prefix = []
    if isinstance(angle, Const):
        half, minus_half = Const(angle.value / 2), Const(-angle.value / 2)
    else:
        # Affine in the run-time angle: both halves computed in registers.
        half_name, minus_name = temps.new('half'), temps.new('neg_half')
        prefix = [
            ClassicalOp('mul', half_name, (angle, Const(0.5))),
            ClassicalOp('neg', minus_name, (Ref(half_name),)),
        ]
        half, minus_half = Ref(half_name), Ref(minus_name)
    return prefix + [
        QuantumOp('cnot', (c, t)),
        QuantumOp('rz', (t,), minus_half),
        QuantumOp('cnot', (c, t)),
        QuantumOp('rz', (t,), half),
    ]


DECOMPOSITIONS = {
    'cnot': _lower_cnot,
    'crz': _lower_crz,
}


def _expand(instr, profile, temps, depth=0):
    if not isinstance(instr, QuantumOp) or profile.admits_gate(instr.gate):
        return [instr]
    rule = DECOMPOSITIONS.get(instr.gate)
    if rule is None or depth > 4:
        raise UnloweredGate("no decomposition of '%s' into profile '%s'"
                            % (instr.gate, profile.name))
    lowered = []
    for part in rule(instr, temps):
        lowered.extend(_expand(part, profile, temps, depth + 1))
    return lowered


def lower_to_native(program, profile):
    """Rewrite every gate the profile lacks into gates it has."""
    missing = REQUIRED_NATIVE - profile.gates
    if missing:
        raise UnloweredGate("profile '%s' lacks native gates %s"
                            % (profile.name, ", ".join(sorted(missing))))

    procedures = []
    for proc in program.procedures:
        temps = _Temps(proc)
        blocks = []
        for block in proc.blocks:
            instructions = []
            for instr in block.instructions:
                instructions.extend(_expand(instr, profile, temps))
            blocks.append(BasicBlock(block.label, tuple(instructions), block.terminator))
        procedures.append(replace(proc, local_vars=proc.local_vars + tuple(temps.decls),
                                  blocks=tuple(blocks)))
        if temps.decls:
            logger.debug("lowering %s added %d temporaries", proc.name, len(temps.decls))

    lowered = replace(program, procedures=tuple(procedures))
    leftover = [d for d in validate(lowered, profile) if d.code == 'gate-not-allowed']
    if leftover:
        raise UnloweredGate(str(leftover[0]))
    return lowered
