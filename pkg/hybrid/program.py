"""Data model for hybrid programs.

A program is a set of procedures; each procedure is an ordered list of basic
blocks; each block holds quantum, classical and io instructions and ends in
exactly one terminator. Everything here is immutable, so programs can be
shared between threads and worker processes freely.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Union


class VarKind(str, Enum):
    BIT = 'bit'
    INT18 = 'int18'
    FIXED = 'fixed'

    def __str__(self):
        return self.value


# --- Instruction vocabularies ---

# gate name -> (qubit arity, takes an angle)
GATES = {
    'h': (1, False),
    'x': (1, False),
    'sx': (1, False),
    'rz': (1, True),
    'crz': (2, True),
    'eswap': (2, True),
    'cnot': (2, False),
    'mz': (1, False),
    'reset': (1, False),
    'active_reset': (0, False),
}

# opcode -> number of source operands
CLASSICAL_OPS = {
    'add': 2,
    'sub': 2,
    'mul': 2,
    'recip': 1,
    'neg': 1,
    'cmp_eq': 2,
    'cmp_lt': 2,
    'select': 3,
}

PULSE_GATES_1Q = frozenset(['h', 'x', 'sx'])
PULSE_GATES_2Q = frozenset(['crz', 'eswap', 'cnot'])


# --- Operands ---

@dataclass(frozen=True)
class Ref:
    """Operand naming a variable."""
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    """Literal operand. Floats are reals (units of pi for angles); ints are int18 or bits."""
    value: Union[int, float]

    def __str__(self):
        return repr(self.value)


Operand = Union[Ref, Const]


# --- Declarations ---

@dataclass(frozen=True)
class Decl:
    name: str
    kind: VarKind
    init: Optional[Union[int, float]] = None


# --- Instructions ---

@dataclass(frozen=True)
class QuantumOp:
    gate: str
    qubits: Tuple[int, ...]
    angle: Optional[Operand] = None
    # mz only
    target: Optional[str] = None
    evidence: Optional[Tuple[str, ...]] = None


@dataclass(frozen=True)
class ClassicalOp:
    op: str
    dest: str
    args: Tuple[Operand, ...]


@dataclass(frozen=True)
class Output:
    name: str


@dataclass(frozen=True)
class Call:
    proc: str
    args: Tuple[Operand, ...] = ()
    results: Tuple[str, ...] = ()


Instruction = Union[QuantumOp, ClassicalOp, Output, Call]


# --- Terminators ---

@dataclass(frozen=True)
class Jump:
    target: str


@dataclass(frozen=True)
class CondJump:
    cond: str
    then: str
    otherwise: str


@dataclass(frozen=True)
class Return:
    values: Tuple[str, ...] = ()


Terminator = Union[Jump, CondJump, Return]


def successors(term):
    """Labels a terminator can transfer control to, in order."""
    if isinstance(term, Jump):
        return (term.target,)
    if isinstance(term, CondJump):
        return (term.then, term.otherwise)
    return ()


# --- Blocks, procedures, programs ---

@dataclass(frozen=True)
class BasicBlock:
    label: str
    instructions: Tuple[Instruction, ...]
    terminator: Terminator


@dataclass(frozen=True)
class Procedure:
    name: str
    qubits: int
    params: Tuple[Decl, ...] = ()
    local_vars: Tuple[Decl, ...] = ()
    blocks: Tuple[BasicBlock, ...] = ()
    _block_index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _kinds: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, '_block_index', {b.label: b for b in self.blocks})
        object.__setattr__(self, '_kinds', {d.name: d.kind for d in self.params + self.local_vars})

    @property
    def entry_block(self):
        return self.blocks[0]

    def block(self, label):
        return self._block_index[label]

    def has_block(self, label):
        return label in self._block_index

    def kind_of(self, name):
        """Kind of a declared variable, or None."""
        return self._kinds.get(name)

    @property
    def declarations(self):
        return self.params + self.local_vars

    def iter_instructions(self):
        """Yield (block label, index, instruction) for every instruction."""
        for block in self.blocks:
            for index, instr in enumerate(block.instructions):
                yield block.label, index, instr


@dataclass(frozen=True)
class HybridProgram:
    procedures: Tuple[Procedure, ...]
    entry: str

    def procedure(self, name):
        for proc in self.procedures:
            if proc.name == name:
                return proc
        raise KeyError(name)

    @property
    def entry_procedure(self):
        return self.procedure(self.entry)

    @property
    def num_qubits(self):
        return max(p.qubits for p in self.procedures)

    def gate_names(self):
        return sorted({instr.gate
                       for proc in self.procedures
                       for _, _, instr in proc.iter_instructions()
                       if isinstance(instr, QuantumOp)})
