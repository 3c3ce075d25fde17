from django.test import SimpleTestCase

from algorithms.builders import build_active_reset, build_teleport
from algorithms.rwpe import build_rwpe
from hybrid.cfg import cfg
from hybrid.parser import parse


class ControlFlowGraphTests(SimpleTestCase):
    """Block graphs of the shipped programs."""

    def test_straight_line_is_a_path(self):
        program = parse(".entry main\n.proc main qubits 1\na:\n    h q0\n    br b\n"
                        "b:\n    h q0\n    br c\nc:\n    ret\n.end\n")
        graph = cfg(program)
        self.assertTrue(graph.is_path())
        self.assertEqual(graph.edges, {('a', 'b'), ('b', 'c')})
        self.assertEqual(graph.exits(), ['c'])
        self.assertEqual(graph.back_edges(), [])

    def test_teleport_diamonds(self):
        """Each conditional correction is a diamond that rejoins."""
        graph = cfg(build_teleport())
        self.assertEqual(graph.entry, 'entry')
        self.assertEqual(graph.edges, {
            ('entry', 'fix_x'), ('entry', 'check_z'), ('fix_x', 'check_z'),
            ('check_z', 'fix_z'), ('check_z', 'done'), ('fix_z', 'done'),
        })
        self.assertEqual(sorted(graph.predecessors('check_z')), ['entry', 'fix_x'])
        self.assertEqual(sorted(graph.predecessors('done')), ['check_z', 'fix_z'])
        self.assertFalse(graph.is_path())
        self.assertEqual(graph.back_edges(), [])

    def test_rwpe_loop(self):
        """The walk update jumps back to the loop head; normalization is an inner loop."""
        graph = cfg(build_rwpe())
        back = set(graph.back_edges())
        self.assertIn(('shrink', 'head'), back)
        self.assertIn(('double', 'normalize'), back)
        self.assertEqual(len(back), 2)
        self.assertEqual(sorted(graph.successors('invert')), ['down', 'up'])
        self.assertEqual(graph.exits(), ['done'])
        self.assertEqual(graph.reachable(), set(graph.nodes))

    def test_callee_graph(self):
        graph = cfg(build_rwpe(), 'ipe_step')
        self.assertTrue(graph.is_path())
        self.assertEqual(graph.nodes, ['entry'])

    def test_active_reset_loops(self):
        """One measurement loop per qubit."""
        graph = cfg(build_active_reset(2))
        self.assertEqual(sorted(graph.back_edges()), [('q0_next', 'q0_head'), ('q1_next', 'q1_head')])

    def test_dot_export(self):
        dot = cfg(build_teleport()).to_dot()
        self.assertTrue(dot.startswith('digraph "teleport" {'))
        self.assertIn('"entry" -> "fix_x" [label="m1"];', dot)
        self.assertIn('"entry" -> "check_z" [label="!m1"];', dot)
        self.assertTrue(dot.rstrip().endswith('}'))
