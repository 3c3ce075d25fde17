"""Operand kind rules for classical and quantum instructions.

Literals take the kind their position demands, so `add mu, mu, 0.25` reads
0.25 as fixed and `add k, k, 1` reads 1 as int18.
"""
from hybrid.exceptions import SemanticError
from hybrid.program import Const, Ref, VarKind

BIT, INT18, FIXED = VarKind.BIT, VarKind.INT18, VarKind.FIXED


def _raw_kind(operand, kind_of):
    if isinstance(operand, Const):
        return None
    kind = kind_of(operand.name)
    if kind is None:
        raise SemanticError("undeclared variable '%s'" % operand.name)
    return kind


def check_const(value, kind):
    """Raise SemanticError if a literal can't stand for the given kind."""
    if kind is BIT:
        if isinstance(value, float) or value not in (0, 1):
            raise SemanticError("bit literal must be 0 or 1, got %r" % (value,))
    elif kind is INT18:
        if isinstance(value, float):
            raise SemanticError("int18 literal must be an integer, got %r" % (value,))


def _resolve(args, raw_kinds, wanted):
    kinds = []
    for arg, kind in zip(args, raw_kinds):
        if kind is None:
            check_const(arg.value, wanted)
            kind = wanted
        kinds.append(kind)
    return tuple(kinds)


def classical_operand_kinds(op, kind_of):
    """Kinds of op.args after literal resolution. Raises SemanticError on a mismatch."""
    dest = kind_of(op.dest)
    if dest is None:
        raise SemanticError("undeclared variable '%s'" % op.dest)
    raw = [_raw_kind(a, kind_of) for a in op.args]
    name = op.op

    if name in ('add', 'sub', 'neg'):
        if dest is BIT:
            raise SemanticError("%s can't write a bit" % name)
        if any(k not in (None, dest) for k in raw):
            raise SemanticError("%s operands must be %s" % (name, dest))
        return _resolve(op.args, raw, dest)

    if name == 'mul':
        if dest is FIXED:
            if any(k not in (None, FIXED, INT18) for k in raw):
                raise SemanticError("mul into fixed takes fixed or int18 operands")
            kinds = _resolve(op.args, raw, FIXED)
            if FIXED not in kinds:
                raise SemanticError("mul into fixed needs at least one fixed operand")
            return kinds
        if dest is INT18:
            if any(k not in (None, INT18) for k in raw):
                raise SemanticError("mul into int18 takes int18 operands")
            return _resolve(op.args, raw, INT18)
        raise SemanticError("mul can't write a bit")

    if name == 'recip':
        if dest is not FIXED or raw[0] not in (None, FIXED):
            raise SemanticError("recip works on fixed values only")
        return _resolve(op.args, raw, FIXED)

    if name in ('cmp_eq', 'cmp_lt'):
        if dest is not BIT:
            raise SemanticError("%s writes a bit" % name)
        known = {k for k in raw if k is not None}
        if len(known) != 1:
            raise SemanticError("%s operands must share one declared kind" % name)
        return _resolve(op.args, raw, known.pop())

    if name == 'select':
        if raw[0] not in (None, BIT):
            raise SemanticError("select condition must be a bit")
        if any(k not in (None, dest) for k in raw[1:]):
            raise SemanticError("select operands must be %s" % dest)
        return _resolve(op.args[:1], raw[:1], BIT) + _resolve(op.args[1:], raw[1:], dest)

    raise SemanticError("unknown classical op '%s'" % name)


def check_quantum(instr, kind_of):
    """Kind checks for angles, measurement targets and evidence tags."""
    if isinstance(instr.angle, Ref) and kind_of(instr.angle.name) is not FIXED:
        raise SemanticError("angle '%s' must be a declared fixed variable" % instr.angle.name)
    if instr.target is not None and kind_of(instr.target) is not BIT:
        raise SemanticError("measurement target '%s' must be a declared bit" % instr.target)
    if instr.evidence is not None:
        wanted = (FIXED, FIXED, INT18)
        if len(instr.evidence) not in (2, 3):
            raise SemanticError("evidence takes (t, phi_inv) or (t, phi_inv, scale)")
        for name, kind in zip(instr.evidence, wanted):
            if kind_of(name) is not kind:
                raise SemanticError("evidence variable '%s' must be %s" % (name, kind))
