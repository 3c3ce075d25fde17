"""Backend profiles and validation of programs against them."""
import json
from dataclasses import dataclass

from hybrid.exceptions import OutOfRange
from hybrid.fixedpoint import fx_encode, int18_encode
from hybrid.kinds import classical_operand_kinds
from hybrid.program import CLASSICAL_OPS, Call, ClassicalOp, Const, QuantumOp, VarKind

NATIVE_GATES = frozenset(['h', 'sx', 'x', 'rz', 'eswap', 'mz', 'reset', 'active_reset'])
ALL_KINDS = frozenset(VarKind)


@dataclass(frozen=True)
class Profile:
    name: str
    gates: frozenset
    classical_ops: frozenset = frozenset(CLASSICAL_OPS)
    max_qubits: int = 20
    static_qubits: bool = True
    kinds: frozenset = ALL_KINDS

    def __post_init__(self):
        if not self.gates:
            raise ValueError("profile '%s' has an empty gate set" % self.name)

    def admits_gate(self, gate):
        return gate in self.gates

    def widened(self, name, gates=(), classical_ops=(), max_qubits=None, kinds=()):
        """A larger profile; handy for building permissive variants."""
        return Profile(name,
                       self.gates | frozenset(gates),
                       self.classical_ops | frozenset(classical_ops),
                       max(self.max_qubits, max_qubits or 0),
                       self.static_qubits,
                       self.kinds | frozenset(kinds))


NATIVE = Profile('native', NATIVE_GATES)
PERMISSIVE = NATIVE.widened('permissive', gates=['crz', 'cnot'])

PROFILES = {p.name: p for p in (NATIVE, PERMISSIVE)}


def get_profile(name):
    try:
        return PROFILES[name]
    except KeyError:
        raise KeyError("unknown profile '%s' (choose from %s)" % (name, ", ".join(sorted(PROFILES))))


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    procedure: str = None
    block: str = None
    index: int = None

    @property
    def location(self):
        return {'procedure': self.procedure, 'block': self.block, 'index': self.index}

    def as_dict(self):
        return {'code': self.code, 'message': self.message, 'location': self.location}

    def __str__(self):
        where = self.procedure or '-'
        if self.block is not None:
            where += ":%s" % self.block
            if self.index is not None:
                where += "[%d]" % self.index
        return "%s: %s: %s" % (where, self.code, self.message)


def diagnostics_json(diagnostics):
    return json.dumps([d.as_dict() for d in diagnostics], indent=2)


def _literal_in_range(value, kind):
    try:
        if kind is VarKind.FIXED:
            fx_encode(value)
        elif kind is VarKind.INT18:
            int18_encode(value)
    except OutOfRange as e:
        return str(e)
    return None


def _has_lowering(gate):
    # Imported here; lowering depends on this module for profiles.
    from hybrid.lowering import DECOMPOSITIONS
    return gate in DECOMPOSITIONS


def validate(program, profile):
    """Everything in the program the profile doesn't admit, as Diagnostics."""
    found = []

    def report(code, message, proc, block=None, index=None):
        found.append(Diagnostic(code, message, proc.name, block, index))

    for proc in program.procedures:
        if proc.qubits > profile.max_qubits:
            report('too-many-qubits', "procedure declares %d qubits, profile allows %d"
                   % (proc.qubits, profile.max_qubits), proc)

        for decl in proc.declarations:
            if decl.kind not in profile.kinds:
                report('kind-not-allowed', "variable '%s' has kind %s" % (decl.name, decl.kind), proc)
            elif decl.init is not None:
                problem = _literal_in_range(decl.init, decl.kind)
                if problem:
                    report('literal-out-of-range', "initial value of '%s': %s"
                           % (decl.name, problem), proc)

        for label, index, instr in proc.iter_instructions():
            if isinstance(instr, QuantumOp):
                if not profile.admits_gate(instr.gate):
                    message = "gate '%s' is not in profile '%s'" % (instr.gate, profile.name)
                    if _has_lowering(instr.gate):
                        message += "; lowering required"
                    report('gate-not-allowed', message, proc, label, index)
                for q in instr.qubits:
                    if q >= profile.max_qubits:
                        report('qubit-out-of-range', "qubit q%d beyond profile limit %d"
                               % (q, profile.max_qubits), proc, label, index)
                if isinstance(instr.angle, Const):
                    problem = _literal_in_range(instr.angle.value, VarKind.FIXED)
                    if problem:
                        report('literal-out-of-range', problem, proc, label, index)

            elif isinstance(instr, ClassicalOp):
                if instr.op not in profile.classical_ops:
                    report('classical-op-not-allowed', "classical op '%s' is not in profile '%s'"
                           % (instr.op, profile.name), proc, label, index)
                kinds = classical_operand_kinds(instr, proc.kind_of)
                for arg, kind in zip(instr.args, kinds):
                    if isinstance(arg, Const):
                        problem = _literal_in_range(arg.value, kind)
                        if problem:
                            report('literal-out-of-range', problem, proc, label, index)

            elif isinstance(instr, Call):
                params = program.procedure(instr.proc).params
                for arg, param in zip(instr.args, params):
                    if isinstance(arg, Const):
                        problem = _literal_in_range(arg.value, param.kind)
                        if problem:
                            report('literal-out-of-range', problem, proc, label, index)
    return found
