import numpy as np
from django.test import SimpleTestCase

from algorithms.builders import build_active_reset, build_teleport
from algorithms.rwpe import build_rwpe
from hybrid.builder import ProcedureBuilder, build_program
from hybrid.exceptions import ProgramSyntaxError, SemanticError
from hybrid.parser import emit, parse
from hybrid.program import CondJump, Const, QuantumOp, Ref, Return, VarKind

TELEPORT_TEXT = """\
# Teleport q0 to q2.
.entry teleport

.proc teleport qubits 3
.var bit m0
.var bit m1
entry:
    h q1
    cnot q1, q2
    cnot q0, q1
    h q0
    mz q0 -> m0
    mz q1 -> m1
    brif m1, fix_x, check_z
fix_x:
    x q2
    br check_z
check_z:
    brif m0, fix_z, done
fix_z:
    rz(1.0) q2
    br done
done:
    output m0
    output m1
    ret
.end
"""

CALL_TEXT = """\
.entry main

.proc main qubits 2
.var fixed t = 0.75
.var int18 k = 2
.var bit d
    x q1
    call step(t, k, -0.5) -> d
    output d
    ret
.end

.proc step qubits 2
.param fixed t
.param int18 scale
.param fixed phi_inv
.var fixed angle
.var bit d
    mul angle, phi_inv, t
    mul angle, angle, scale
    h q0
    rz(angle) q0
    h q0
    mz q0 -> d evidence(t, phi_inv, scale)
    ret d
.end
"""


def random_program(seed, block_count=6):
    """A checked program built from random instructions of every form."""
    rng = np.random.default_rng(seed)

    def pick(choices):
        return choices[int(rng.integers(len(choices)))]

    def real():
        return float(rng.uniform(-1.5, 1.5))

    helper = ProcedureBuilder('helper', 2)
    a = helper.param('fixed', 'a')
    n = helper.param('int18', 'n')
    c = helper.param('bit', 'c')
    r = helper.var('fixed', 'r')
    helper.mul(r, a, n)
    helper.rz(r, 1)
    helper.ret(r, c)

    b = ProcedureBuilder('main', 3)
    fixed = [b.var('fixed', 'f0', real()), b.var('fixed', 'f1', real()), b.var('fixed', 'f2')]
    ints = [b.var('int18', 'k0', int(rng.integers(-1000, 1000))), b.var('int18', 'k1')]
    bits = [b.var('bit', 'b0', bool(rng.integers(2))), b.var('bit', 'b1')]

    def qubit():
        return int(rng.integers(3))

    menu = [
        lambda: b.gate(pick(['h', 'x', 'sx']), qubit()),
        lambda: b.rz(pick([real(), pick(fixed)]), qubit()),
        lambda: b.crz(real(), 0, 2),
        lambda: b.eswap(pick(fixed), 1, 2),
        lambda: b.cnot(2, 0),
        lambda: b.reset(qubit()),
        lambda: b.active_reset(),
        lambda: b.mz(qubit(), pick(bits)),
        lambda: b.mz(qubit(), pick(bits), evidence=(pick(fixed), pick(fixed), pick(ints))),
        lambda: b.add(pick(fixed), pick(fixed), real()),
        lambda: b.sub(pick(ints), pick(ints), int(rng.integers(-50, 50))),
        lambda: b.mul(pick(fixed), pick(fixed), pick(ints)),
        lambda: b.neg(pick(fixed), pick(fixed)),
        lambda: b.recip(pick(fixed), pick(fixed)),
        lambda: b.cmp_lt(pick(bits), pick(ints), int(rng.integers(-5, 5))),
        lambda: b.cmp_eq(pick(bits), pick(fixed), real()),
        lambda: b.select(pick(ints), pick(bits), int(rng.integers(100)), pick(ints)),
        lambda: b.output(pick(fixed + ints + bits)),
        lambda: b.call('helper', (pick(fixed), pick([pick(ints), int(rng.integers(-9, 9))]), pick(bits)),
                       (pick(fixed), pick(bits))),
    ]

    labels = ['block%d' % i for i in range(block_count)]
    for i, label in enumerate(labels):
        b.block(label)
        for _ in range(int(rng.integers(0, 6))):
            pick(menu)()
        choice = 2 if i == block_count - 1 else int(rng.integers(3))
        if choice == 0:
            b.br(pick(labels))
        elif choice == 1:
            b.brif(pick(bits), pick(labels), pick(labels))
        else:
            b.ret()
    return build_program('main', b.build(), helper.build())


class ParserTests(SimpleTestCase):
    """Reading IR text."""

    def test_teleport_text(self):
        """Blocks, terminators and measurement targets come out as written."""
        program = parse(TELEPORT_TEXT)
        proc = program.entry_procedure
        self.assertEqual(program.entry, 'teleport')
        self.assertEqual(proc.qubits, 3)
        self.assertEqual([b.label for b in proc.blocks],
                         ['entry', 'fix_x', 'check_z', 'fix_z', 'done'])
        entry = proc.block('entry')
        self.assertEqual(entry.terminator, CondJump('m1', 'fix_x', 'check_z'))
        self.assertEqual(entry.instructions[4], QuantumOp('mz', (0,), target='m0'))
        self.assertEqual(proc.block('fix_z').instructions[0],
                         QuantumOp('rz', (2,), Const(1.0)))

    def test_empty_entry_procedure(self):
        """A procedure with no body gets a single returning block."""
        program = parse(".entry main\n.proc main qubits 1\n.end\n")
        blocks = program.entry_procedure.blocks
        self.assertEqual(len(blocks), 1)
        self.assertEqual(blocks[0].terminator, Return())

    def test_calls_params_and_evidence(self):
        """Literals take the kind of the parameter they are passed to."""
        program = parse(CALL_TEXT)
        step = program.procedure('step')
        self.assertEqual([p.kind for p in step.params],
                         [VarKind.FIXED, VarKind.INT18, VarKind.FIXED])
        mz = step.blocks[0].instructions[5]
        self.assertEqual(mz.evidence, ('t', 'phi_inv', 'scale'))
        call = program.entry_procedure.blocks[0].instructions[1]
        self.assertEqual(call.args, (Ref('t'), Ref('k'), Const(-0.5)))

    def test_unknown_label(self):
        """Branching to a label that doesn't exist is a semantic error."""
        text = ".entry main\n.proc main qubits 1\n    br nowhere\n.end\n"
        with self.assertRaises(SemanticError) as ctx:
            parse(text)
        self.assertEqual(ctx.exception.line, 3)

    def test_semantic_errors(self):
        """Undeclared variables, duplicate labels and kind mismatches."""
        bad = [
            ".entry main\n.proc main qubits 1\n    mz q0 -> d\n    ret\n.end\n",
            ".entry main\n.proc main qubits 1\na:\n    br a\na:\n    ret\n.end\n",
            ".entry main\n.proc main qubits 1\n.var bit b\n    add b, b, 1\n    ret\n.end\n",
            ".entry main\n.proc main qubits 1\n.var int18 k\n    rz(k) q0\n    ret\n.end\n",
            ".entry main\n.proc main qubits 1\n    h q1\n    ret\n.end\n",
            ".entry main\n.proc main qubits 2\n    cnot q0, q0\n    ret\n.end\n",
            ".entry other\n.proc main qubits 1\n.end\n",
        ]
        for text in bad:
            with self.assertRaises(SemanticError, msg=text):
                parse(text)

    def test_syntax_error_position(self):
        """Syntax errors carry line and column."""
        with self.assertRaises(ProgramSyntaxError) as ctx:
            parse(".entry main\n.proc main qubits 1\n    h q0 q0\n.end\n")
        self.assertEqual(ctx.exception.line, 3)
        self.assertEqual(ctx.exception.column, 10)

    def test_comments_and_blank_lines(self):
        """Comments and blank lines are ignored."""
        text = "# header\n\n.entry main  # the entry\n.proc main qubits 1\n\n    h q0 # gate\n    ret\n.end\n"
        proc = parse(text).entry_procedure
        self.assertEqual(proc.blocks[0].instructions, (QuantumOp('h', (0,)),))


class EmitTests(SimpleTestCase):
    """Writing IR text and reading it back."""

    def test_round_trip_rwpe(self):
        """parse(emit(p)) == p for the RWPE program."""
        program = build_rwpe()
        self.assertEqual(parse(emit(program)), program)

    def test_round_trip_other_programs(self):
        for program in (build_teleport(0.3, -0.7), build_active_reset(3, prepare_ones=(1,)),
                        parse(TELEPORT_TEXT), parse(CALL_TEXT)):
            self.assertEqual(parse(emit(program)), program)

    def test_round_trip_generated_programs(self):
        """parse(emit(p)) == p over randomly generated programs."""
        for seed in range(30):
            program = random_program(seed)
            self.assertEqual(parse(emit(program)), program, msg='seed %d' % seed)

    def test_emit_is_deterministic(self):
        program = build_rwpe()
        self.assertEqual(emit(program), emit(program))

    def test_single_gate_program(self):
        """One gate gives exactly one instruction line next to the terminator."""
        program = parse(".entry main\n.proc main qubits 1\n    h q0\n    ret\n.end\n")
        body = [line.strip() for line in emit(program).splitlines() if line.startswith('    ')]
        self.assertEqual(body, ['h q0', 'ret'])
