"""
Gate and readout noise, sampled per shot as Monte Carlo trajectories.

After a pulse gate the touched qubits suffer a uniformly random non-identity
Pauli with probability p_gate1 (one qubit) or p_gate2 (two qubits). rz is
virtual and never draws. Readout flips only the reported bit.
"""
from dataclasses import dataclass

from hybrid.conf import get_setting
from hybrid.gates import PAULIS
from hybrid.program import PULSE_GATES_1Q, PULSE_GATES_2Q

PAULI_LABELS = 'IXYZ'


@dataclass(frozen=True)
class NoiseModel:
    p_gate1: float = 0.0
    p_gate2: float = 0.0
    p_readout: float = 0.0
    p_rz: float = 0.0

    def __post_init__(self):
        for name in ('p_gate1', 'p_gate2', 'p_readout'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError("%s must be in [0, 1], got %r" % (name, value))
        if self.p_rz != 0.0:
            raise ValueError("rz is virtual; p_rz must be 0")

    @classmethod
    def default(cls):
        p1, p2, pr = get_setting('HYBRIDSIM_DEFAULT_NOISE')
        return cls(p1, p2, pr)

    @classmethod
    def from_flag(cls, text):
        """Parse --noise: 'none', 'default', or 'p1,p2,pr'. Returns None for no noise."""
        if text is None or text.strip().lower() in ('', 'none', 'off'):
            return None
        if text.strip().lower() == 'default':
            return cls.default()
        parts = [p.strip() for p in text.split(',')]
        if len(parts) != 3:
            raise ValueError("noise takes three probabilities p1,p2,pr; got %r" % text)
        try:
            return cls(*(float(p) for p in parts))
        except ValueError as e:
            raise ValueError("bad noise flag %r: %s" % (text, e))

    def as_flag(self):
        return "%r,%r,%r" % (self.p_gate1, self.p_gate2, self.p_readout)


def apply_noise(state, gate_class, qubits, rng, noise):
    """Depolarizing kick after a gate of the given class ('1q', '2q' or 'rz').

    Returns the applied Pauli string ('' when nothing happened); the state is
    updated in place.
    """
    if noise is None or gate_class == 'rz':
        return ''
    p = noise.p_gate1 if gate_class == '1q' else noise.p_gate2
    if rng.random() >= p:
        return ''
    k = len(qubits)
    choice = int(rng.integers(1, 4 ** k))
    labels = []
    for position, q in enumerate(qubits):
        pauli = (choice >> (2 * (k - 1 - position))) & 3
        labels.append(PAULI_LABELS[pauli])
        if pauli:
            state.apply_matrix(PAULIS[pauli], (q,))
    return ''.join(labels)


def classify_gate(gate):
    if gate in PULSE_GATES_1Q:
        return '1q'
    if gate in PULSE_GATES_2Q:
        return '2q'
    return 'rz'
