import numpy as np
from django.test import SimpleTestCase

from hybrid.builder import ProcedureBuilder, build_program
from hybrid.exceptions import SemanticError
from hybrid.parser import emit, parse
from hybrid.program import ClassicalOp, Const, Ref, Return


class ProcedureBuilderTests(SimpleTestCase):
    """Building programs in code."""

    def setUp(self):
        self.b = ProcedureBuilder('main', 2)

    def test_minimal_program(self):
        d = self.b.var('bit', 'd')
        self.b.h(0)
        self.b.mz(0, d)
        self.b.output(d)
        self.b.ret()
        program = build_program('main', self.b.build())
        block = program.entry_procedure.entry_block
        self.assertEqual(block.label, 'entry')
        self.assertEqual(len(block.instructions), 3)
        self.assertEqual(block.terminator, Return())

    def test_operands(self):
        """Python values become literals, names and Refs become variable operands."""
        k = self.b.var('int18', 'k', 3)
        self.b.add(k, 'k', 1)
        self.b.ret()
        instr = self.b.build().blocks[0].instructions[0]
        self.assertEqual(instr, ClassicalOp('add', 'k', (Ref('k'), Const(1))))

    def test_errors(self):
        """Mistakes are caught as instructions arrive."""
        self.b.var('fixed', 'a')
        with self.assertRaises(SemanticError):
            self.b.var('bit', 'a')
        with self.assertRaises(SemanticError):
            self.b.var('int18', 'k', 0.5)
        with self.assertRaises(SemanticError):
            self.b.h(2)
        with self.assertRaises(SemanticError):
            self.b.add('a', 'a', 'missing')
        self.b.block('first')
        with self.assertRaises(SemanticError):
            self.b.block('second')
        self.b.ret()
        with self.assertRaises(SemanticError):
            self.b.h(0)

    def test_unterminated_block(self):
        self.b.block('entry')
        self.b.h(0)
        with self.assertRaises(SemanticError):
            self.b.build()

    def test_empty_procedure(self):
        """No blocks at all gives one returning block."""
        proc = self.b.build()
        self.assertEqual(len(proc.blocks), 1)
        self.assertEqual(proc.blocks[0].terminator, Return())

    def test_program_checks(self):
        """Calls are checked against the callee when the program is assembled."""
        d = self.b.var('bit', 'd')
        self.b.call('missing', (), (d,))
        self.b.ret()
        with self.assertRaises(SemanticError):
            build_program('main', self.b.build())

    def test_bool_and_numpy_literals(self):
        """Bools and numpy scalars are stored as plain ints and floats, so the text form reads back."""
        x = self.b.var('bit', 'x', True)
        f = self.b.var('fixed', 'f', np.float64(0.25))
        self.b.add(f, f, np.float64(-0.5))
        self.b.select(x, x, False, x)
        self.b.ret()
        program = build_program('main', self.b.build())
        proc = program.entry_procedure
        self.assertIs(type(proc.local_vars[0].init), int)
        self.assertIs(type(proc.local_vars[1].init), float)
        text = emit(program)
        self.assertIn('.var bit x = 1', text)
        self.assertIn('add f, f, -0.5', text)
        self.assertIn('select x, x, 0, x', text)
        self.assertEqual(parse(text), program)
