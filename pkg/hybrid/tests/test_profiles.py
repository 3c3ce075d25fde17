import json

from django.test import SimpleTestCase

from algorithms.builders import build_active_reset
from algorithms.rwpe import build_rwpe
from hybrid.parser import parse
from hybrid.profiles import (
    NATIVE, PERMISSIVE, Profile, diagnostics_json, get_profile, validate,
)


class ValidateTests(SimpleTestCase):
    """Checking programs against backend profiles."""

    def setUp(self):
        self.rwpe = build_rwpe()

    def codes(self, program, profile):
        return [d.code for d in validate(program, profile)]

    def test_rwpe_needs_lowering_for_native(self):
        """crz in the IPE step is reported, with a hint that it can be lowered."""
        diagnostics = validate(self.rwpe, NATIVE)
        self.assertEqual([d.code for d in diagnostics], ['gate-not-allowed'])
        self.assertIn("'crz'", diagnostics[0].message)
        self.assertIn("lowering required", diagnostics[0].message)
        self.assertEqual(diagnostics[0].procedure, 'ipe_step')

    def test_rwpe_valid_for_permissive(self):
        self.assertEqual(validate(self.rwpe, PERMISSIVE), [])

    def test_native_program_is_clean(self):
        self.assertEqual(validate(build_active_reset(2), NATIVE), [])

    def test_literal_out_of_range(self):
        """A fixed literal of 3.0 can't be encoded."""
        program = parse(".entry main\n.proc main qubits 1\n.var fixed a\n"
                        "    add a, a, 3.0\n    rz(2.5) q0\n    ret\n.end\n")
        self.assertEqual(self.codes(program, NATIVE),
                         ['literal-out-of-range', 'literal-out-of-range'])
        program = parse(".entry main\n.proc main qubits 1\n.var int18 k = 200000\n.end\n")
        self.assertEqual(self.codes(program, NATIVE), ['literal-out-of-range'])

    def test_small_profile(self):
        """Qubit, kind and classical-op restrictions are reported separately."""
        tiny = Profile('tiny', frozenset(['h', 'mz']), classical_ops=frozenset(['add']),
                       max_qubits=1, kinds=frozenset(['bit', 'int18']))
        program = parse(".entry main\n.proc main qubits 2\n.var fixed a\n.var bit b\n"
                        "    h q1\n    neg a, a\n    mz q0 -> b\n    ret\n.end\n")
        self.assertEqual(sorted(self.codes(program, tiny)),
                         ['classical-op-not-allowed', 'kind-not-allowed',
                          'qubit-out-of-range', 'too-many-qubits'])

    def test_widening_never_adds_diagnostics(self):
        """Diagnostics against a larger profile are a subset."""
        for program in (self.rwpe, build_active_reset(3)):
            narrow = {str(d) for d in validate(program, NATIVE)}
            wide = {str(d) for d in validate(program, PERMISSIVE)}
            self.assertTrue(wide <= narrow)

    def test_json_output(self):
        """Diagnostics serialize as {code, message, location}."""
        data = json.loads(diagnostics_json(validate(self.rwpe, NATIVE)))
        self.assertEqual(data[0]['code'], 'gate-not-allowed')
        self.assertEqual(data[0]['location']['procedure'], 'ipe_step')
        self.assertEqual(data[0]['location']['block'], 'entry')

    def test_profiles(self):
        self.assertIs(get_profile('native'), NATIVE)
        self.assertTrue(PERMISSIVE.admits_gate('cnot'))
        self.assertFalse(NATIVE.admits_gate('crz'))
        with self.assertRaises(KeyError):
            get_profile('nonesuch')
        with self.assertRaises(ValueError):
            Profile('empty', frozenset())
