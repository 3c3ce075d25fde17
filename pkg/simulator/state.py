"""
Statevector engine: gates, mid-circuit measurement and reset.

Qubit 0 is the most significant index bit; the amplitude tensor is reshaped to
(2,)*n so axis q is qubit q. A state may carry extra trailing columns (a batch
of vectors), which is how program_unitary pushes a whole basis through a
program at once. Measurement needs a single vector.
"""
import numpy as np

from hybrid.exceptions import BadQubitIndex
from hybrid.gates import X, gate_matrix

NORM_TOLERANCE = 1e-10


class QuantumState:
    """Amplitudes of n qubits, updated in place."""

    def __init__(self, num_qubits, amplitudes=None):
        self.num_qubits = num_qubits
        if amplitudes is None:
            amplitudes = np.zeros(2 ** num_qubits, dtype=complex)
            amplitudes[0] = 1.0
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.shape[0] != 2 ** num_qubits:
            raise ValueError("expected %d amplitudes, got %d" % (2 ** num_qubits, amplitudes.shape[0]))
        self.amplitudes = amplitudes

    @classmethod
    def basis(cls, num_qubits, index=0):
        amplitudes = np.zeros(2 ** num_qubits, dtype=complex)
        amplitudes[index] = 1.0
        return cls(num_qubits, amplitudes)

    @classmethod
    def identity_batch(cls, num_qubits):
        """Every basis vector at once, one per column."""
        return cls(num_qubits, np.eye(2 ** num_qubits, dtype=complex))

    @property
    def is_batch(self):
        return self.amplitudes.ndim > 1

    def copy(self):
        return QuantumState(self.num_qubits, self.amplitudes.copy())

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2

    def _tensor(self):
        return self.amplitudes.reshape((2,) * self.num_qubits + self.amplitudes.shape[1:])

    def check_qubits(self, qubits):
        if len(set(qubits)) != len(qubits):
            raise BadQubitIndex("repeated qubit in %r" % (tuple(qubits),))
        for q in qubits:
            if not 0 <= q < self.num_qubits:
                raise BadQubitIndex("qubit %d outside a %d-qubit register" % (q, self.num_qubits))

    def probability_of_one(self, q):
        self.check_qubits([q])
        return float(np.sum(np.abs(self._tensor().take(1, axis=q)) ** 2))

    def reduced_density_matrix(self, qubits):
        """Density matrix of the listed qubits with the rest traced out."""
        self.check_qubits(qubits)
        n = self.num_qubits
        rest = [q for q in range(n) if q not in qubits]
        psi = np.transpose(self._tensor(), list(qubits) + rest)
        psi = psi.reshape(2 ** len(qubits), -1)
        return psi @ psi.conj().T

    def apply_matrix(self, matrix, qubits):
        """Apply a 2^k x 2^k unitary to the listed qubits."""
        self.check_qubits(qubits)
        k = len(qubits)
        gate = np.asarray(matrix, dtype=complex).reshape((2,) * (2 * k))
        psi = np.tensordot(gate, self._tensor(), axes=(list(range(k, 2 * k)), list(qubits)))
        psi = np.moveaxis(psi, list(range(k)), list(qubits))
        self.amplitudes = psi.reshape(self.amplitudes.shape)
        return self

    def collapse(self, q, bit):
        """Project qubit q onto |bit> and renormalize."""
        psi = self._tensor().copy()
        index = [slice(None)] * psi.ndim
        index[q] = 1 - bit
        psi[tuple(index)] = 0.0
        amplitudes = psi.reshape(self.amplitudes.shape)
        norm = np.linalg.norm(amplitudes)
        self.amplitudes = amplitudes / norm if norm > 0 else amplitudes
        return self


def apply_gate(state, gate, qubits, angle=0.0):
    """Apply a named gate; angle in radians for rz, crz and eswap."""
    return state.apply_matrix(gate_matrix(gate, angle), tuple(qubits))


def measure(state, q, rng, p_readout=None):
    """Projective Z measurement of qubit q; returns the reported bit.

    The state collapses onto the true outcome. With p_readout set, one extra
    draw decides whether the reported bit is flipped.
    """
    if state.is_batch:
        raise ValueError("can't measure a batch of states")
    p1 = state.probability_of_one(q)
    bit = 1 if rng.random() < p1 else 0
    state.collapse(q, bit)
    if p_readout is not None and rng.random() < p_readout:
        return 1 - bit
    return bit


def reset(state, q, rng):
    """Ideal reset: measure, then flip to |0> if the outcome was 1."""
    if measure(state, q, rng):
        state.apply_matrix(X, (q,))
    return state
