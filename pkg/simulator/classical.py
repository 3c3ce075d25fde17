"""Classical register semantics for the two execution modes.

ExactReal keeps bits and int18 as Python ints and fixed values as floats.
FixedPoint stores Int18 and FixedQ216 values and defers every operation to
hybrid.fixedpoint, so overflow wraps exactly as on the hardware.
"""
import math
from enum import Enum

from hybrid import fixedpoint as fx
from hybrid.exceptions import DivideByZero
from hybrid.kinds import classical_operand_kinds
from hybrid.program import Const, VarKind

BIT, INT18, FIXED = VarKind.BIT, VarKind.INT18, VarKind.FIXED


class ClassicalMode(str, Enum):
    EXACT = 'real'
    FIXED = 'fixed'

    def __str__(self):
        return self.value


class ExactArithmetic:
    mode = ClassicalMode.EXACT

    def const(self, kind, value):
        if kind is FIXED:
            return float(value)
        return int(value)

    def zero(self, kind):
        return self.const(kind, 0)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def recip(self, a):
        if a == 0:
            raise DivideByZero("reciprocal of zero")
        return 1.0 / a

    def real(self, value):
        return float(value)

    def to_radians(self, value):
        return value * math.pi

    def raw(self, value):
        return None


class FixedArithmetic:
    mode = ClassicalMode.FIXED

    def const(self, kind, value):
        if kind is FIXED:
            return fx.fx_encode(value)
        if kind is INT18:
            return fx.int18_encode(value)
        return int(value)

    def zero(self, kind):
        return self.const(kind, 0)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        # fixed x int18 in either order is an exact integer scaling
        if isinstance(a, fx.Int18) and isinstance(b, fx.FixedQ216):
            a, b = b, a
        return a * b

    def recip(self, a):
        return fx.fx_recip(a)

    def real(self, value):
        return float(value.value) if hasattr(value, 'raw') else float(value)

    def to_radians(self, value):
        return fx.fx_to_radians(value)

    def raw(self, value):
        return getattr(value, 'raw', None)


ARITHMETIC = {
    ClassicalMode.EXACT: ExactArithmetic(),
    ClassicalMode.FIXED: FixedArithmetic(),
}


def arithmetic_for(mode):
    return ARITHMETIC[ClassicalMode(mode)]


class RegisterFile:
    """Variable values of one procedure activation. Kinds are fixed at declaration."""

    def __init__(self, procedure, arithmetic):
        self.procedure = procedure
        self.arithmetic = arithmetic
        self.values = {}
        for decl in procedure.declarations:
            init = 0 if decl.init is None else decl.init
            self.values[decl.name] = arithmetic.const(decl.kind, init)

    def kind_of(self, name):
        return self.procedure.kind_of(name)

    def __getitem__(self, name):
        return self.values[name]

    def __setitem__(self, name, value):
        if name not in self.values:
            raise KeyError("undeclared variable '%s'" % name)
        self.values[name] = value

    def read(self, operand, kind):
        if isinstance(operand, Const):
            return self.arithmetic.const(kind, operand.value)
        return self.values[operand.name]


def step_classical(op, regs, kinds=None):
    """Execute one classical instruction against regs; returns regs."""
    if kinds is None:
        kinds = classical_operand_kinds(op, regs.kind_of)
    ar = regs.arithmetic
    args = [regs.read(a, k) for a, k in zip(op.args, kinds)]
    name = op.op

    if name == 'add':
        result = ar.add(*args)
    elif name == 'sub':
        result = ar.sub(*args)
    elif name == 'mul':
        result = ar.mul(*args)
    elif name == 'neg':
        result = ar.neg(args[0])
    elif name == 'recip':
        result = ar.recip(args[0])
    elif name == 'cmp_eq':
        result = int(args[0] == args[1])
    elif name == 'cmp_lt':
        result = int(args[0] < args[1])
    elif name == 'select':
        result = args[1] if args[0] else args[2]
    else:
        raise ValueError("unknown classical op '%s'" % name)

    regs[op.dest] = result
    return regs
