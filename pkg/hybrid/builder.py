"""Build programs in code instead of text.

    b = ProcedureBuilder('main', qubits=1)
    d = b.var('bit', 'd')
    b.h(0)
    b.mz(0, d)
    b.output(d)
    b.ret()
    program = build_program('main', b.build())
"""
import numbers

from hybrid.exceptions import SemanticError
from hybrid.kinds import check_const
from hybrid.parser import DEFAULT_ENTRY_LABEL, check_instruction, check_program
from hybrid.program import (
    BasicBlock, Call, ClassicalOp, CondJump, Const, Decl, HybridProgram, Jump,
    Output, Procedure, QuantumOp, Ref, Return, VarKind,
)


def literal(value):
    """Plain int or float for a literal; bools become 0/1, numpy scalars are unwrapped."""
    if isinstance(value, (bool, numbers.Integral)):
        return int(value)
    if isinstance(value, numbers.Real):
        return float(value)
    raise TypeError("can't use %r as a literal" % (value,))


def operand(value):
    if isinstance(value, (Ref, Const)):
        return value
    if isinstance(value, str):
        return Ref(value)
    if isinstance(value, numbers.Real):
        return Const(literal(value))
    raise TypeError("can't use %r as an operand" % (value,))


def _name(value):
    return value.name if isinstance(value, Ref) else value


class ProcedureBuilder:
    """Accumulates declarations and blocks; instructions are checked as they arrive."""

    def __init__(self, name, qubits):
        self.name = name
        self.qubits = qubits
        self.params = []
        self.local_vars = []
        self.kinds = {}
        self.blocks = []
        self.label = None
        self.instructions = []

    # --- Declarations ---

    def _declare(self, kind, name, init, bucket):
        kind = VarKind(kind)
        if name in self.kinds:
            raise SemanticError("variable '%s' declared twice" % name)
        if init is not None:
            init = literal(init)
            check_const(init, kind)
        self.kinds[name] = kind
        bucket.append(Decl(name, kind, init))
        return Ref(name)

    def param(self, kind, name):
        return self._declare(kind, name, None, self.params)

    def var(self, kind, name, init=None):
        return self._declare(kind, name, init, self.local_vars)

    # --- Blocks ---

    def block(self, label):
        if self.label is not None:
            raise SemanticError("block '%s' has no terminator" % self.label)
        if any(b.label == label for b in self.blocks):
            raise SemanticError("duplicate label '%s'" % label)
        self.label = label
        self.instructions = []
        return label

    def _emit(self, instr):
        if self.label is None and self.blocks:
            raise SemanticError("instruction after terminator; start a new block")
        check_instruction(instr, self.name, self.qubits, self.kinds.get)
        if self.label is None:
            self.label = DEFAULT_ENTRY_LABEL
        self.instructions.append(instr)

    def _terminate(self, term):
        if self.label is None and self.blocks:
            raise SemanticError("terminator outside a block")
        check_instruction(term, self.name, self.qubits, self.kinds.get)
        if self.label is None:
            self.label = DEFAULT_ENTRY_LABEL
        self.blocks.append(BasicBlock(self.label, tuple(self.instructions), term))
        self.label = None
        self.instructions = []

    # --- Quantum ---

    def gate(self, gate, *qubits, angle=None):
        self._emit(QuantumOp(gate, tuple(qubits), None if angle is None else operand(angle)))

    def h(self, q):
        self.gate('h', q)

    def x(self, q):
        self.gate('x', q)

    def sx(self, q):
        self.gate('sx', q)

    def rz(self, angle, q):
        self.gate('rz', q, angle=angle)

    def crz(self, angle, control, target):
        self.gate('crz', control, target, angle=angle)

    def eswap(self, angle, a, b):
        self.gate('eswap', a, b, angle=angle)

    def cnot(self, control, target):
        self.gate('cnot', control, target)

    def reset(self, q):
        self.gate('reset', q)

    def active_reset(self):
        self.gate('active_reset')

    def mz(self, q, target, evidence=None):
        if evidence is not None:
            evidence = tuple(_name(e) for e in evidence)
        self._emit(QuantumOp('mz', (q,), None, _name(target), evidence))

    # --- Classical ---

    def op(self, opcode, dest, *args):
        self._emit(ClassicalOp(opcode, _name(dest), tuple(operand(a) for a in args)))

    def add(self, dest, a, b):
        self.op('add', dest, a, b)

    def sub(self, dest, a, b):
        self.op('sub', dest, a, b)

    def mul(self, dest, a, b):
        self.op('mul', dest, a, b)

    def recip(self, dest, a):
        self.op('recip', dest, a)

    def neg(self, dest, a):
        self.op('neg', dest, a)

    def cmp_eq(self, dest, a, b):
        self.op('cmp_eq', dest, a, b)

    def cmp_lt(self, dest, a, b):
        self.op('cmp_lt', dest, a, b)

    def select(self, dest, cond, a, b):
        self.op('select', dest, cond, a, b)

    def output(self, name):
        self._emit(Output(_name(name)))

    def call(self, proc, args=(), results=()):
        self._emit(Call(proc, tuple(operand(a) for a in args),
                        tuple(_name(r) for r in results)))

    # --- Terminators ---

    def br(self, label):
        self._terminate(Jump(label))

    def brif(self, cond, then, otherwise):
        self._terminate(CondJump(_name(cond), then, otherwise))

    def ret(self, *values):
        self._terminate(Return(tuple(_name(v) for v in values)))

    def build(self):
        if self.label is not None:
            raise SemanticError("block '%s' has no terminator" % self.label)
        blocks = self.blocks or [BasicBlock(DEFAULT_ENTRY_LABEL, (), Return())]
        return Procedure(self.name, self.qubits, tuple(self.params),
                         tuple(self.local_vars), tuple(blocks))


def build_program(entry, *procedures):
    """Assemble procedures into a checked HybridProgram."""
    return check_program(HybridProgram(tuple(procedures), entry))
