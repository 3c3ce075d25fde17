"""Unitary matrices for the gate set. Angles are in radians.

Two-qubit matrices use the basis |ab> with `a` the first listed qubit
(the control for crz and cnot).
"""
import numpy as np

SQRT1_2 = 1.0 / np.sqrt(2.0)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = SQRT1_2 * np.array([[1, 1], [1, -1]], dtype=complex)
SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)

PAULIS = (I2, X, Y, Z)

CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)

SWAP = np.array([[1, 0, 0, 0],
                 [0, 0, 1, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1]], dtype=complex)


def rz(theta):
    """RZ(theta) = diag(e^{-i theta/2}, e^{i theta/2})."""
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def crz(theta):
    return np.diag([1, 1, np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def eswap(theta):
    """Exponential SWAP, exp(-i theta/2 SWAP); ESWAP(pi) = -i SWAP."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    phase = np.exp(-0.5j * theta)
    return np.array([[phase, 0, 0, 0],
                     [0, c, -1j * s, 0],
                     [0, -1j * s, c, 0],
                     [0, 0, 0, phase]], dtype=complex)


FIXED_GATES = {'h': H, 'x': X, 'sx': SX, 'cnot': CNOT}
ROTATIONS = {'rz': rz, 'crz': crz, 'eswap': eswap}


def gate_matrix(gate, angle=0.0):
    if gate in FIXED_GATES:
        return FIXED_GATES[gate]
    if gate in ROTATIONS:
        return ROTATIONS[gate](angle)
    raise KeyError("no matrix for gate '%s'" % gate)


def equal_up_to_phase(a, b, atol=1e-10):
    """Frobenius distance between a and b after aligning their global phase."""
    overlap = np.vdot(a, b)
    if abs(overlap) < 1e-15:
        return False
    phase = overlap / abs(overlap)
    return np.linalg.norm(b - phase * a) <= atol
