"""Builders for the active reset and teleportation programs."""
from hybrid.builder import ProcedureBuilder, build_program

REQUIRED_SUCCESSES = 2
MAX_MEASUREMENTS = 5


def build_active_reset(num_qubits, prepare_ones=()):
    """Measure-and-flip reset of every qubit, as ordinary program logic.

    Each qubit is measured up to MAX_MEASUREMENTS times; a 1 is flipped with x
    and clears the success count, and two 0s in a row end the loop. Outputs
    `success` (1 when every qubit got its two 0s) and `measurements`.
    `prepare_ones` lists qubits flipped to |1> before the reset runs.
    """
    if num_qubits < 1:
        raise ValueError("num_qubits must be at least 1")
    b = ProcedureBuilder('active_reset', num_qubits)
    req_successes = b.var('int18', 'req_successes', REQUIRED_SUCCESSES)
    max_count = b.var('int18', 'max_count', MAX_MEASUREMENTS)
    successes = b.var('int18', 'num_successes')
    counter = b.var('int18', 'counter')
    measurements = b.var('int18', 'measurements', 0)
    value = b.var('bit', 'value')
    flag = b.var('bit', 'flag')
    done = b.var('bit', 'done')
    success = b.var('bit', 'success', 1)

    b.block('entry')
    for q in sorted(set(prepare_ones)):
        b.x(q)
    b.br('q0_init')

    for q in range(num_qubits):
        prefix = 'q%d_' % q
        following = 'q%d_init' % (q + 1) if q + 1 < num_qubits else 'finish'

        b.block(prefix + 'init')
        b.add(successes, 0, 0)
        b.add(counter, 0, 0)
        b.br(prefix + 'head')

        b.block(prefix + 'head')
        b.cmp_lt(flag, counter, max_count)
        b.brif(flag, prefix + 'measure', prefix + 'exit')

        b.block(prefix + 'measure')
        b.mz(q, value)
        b.add(measurements, measurements, 1)
        b.brif(value, prefix + 'flip', prefix + 'pass')

        b.block(prefix + 'flip')
        b.x(q)
        b.add(successes, 0, 0)
        b.br(prefix + 'next')

        b.block(prefix + 'pass')
        b.add(successes, successes, 1)
        b.br(prefix + 'next')

        b.block(prefix + 'next')
        b.add(counter, counter, 1)
        b.cmp_eq(done, successes, req_successes)
        b.brif(done, prefix + 'exit', prefix + 'head')

        b.block(prefix + 'exit')
        b.cmp_eq(done, successes, req_successes)
        b.select(success, done, success, 0)
        b.br(following)

    b.block('finish')
    b.output(success)
    b.output(measurements)
    b.ret()
    return build_program('active_reset', b.build())


def build_teleport(theta=None, phi=None):
    """Teleport q0 to q2 with two mid-circuit measurements and branched fixups.

    With theta/phi given (units of pi), q0 is first prepared as
    rz(phi) h rz(theta) h |0>. Outputs m0 and m1.
    """
    b = ProcedureBuilder('teleport', 3)
    m0 = b.var('bit', 'm0')
    m1 = b.var('bit', 'm1')

    b.block('entry')
    if theta is not None:
        b.h(0)
        b.rz(theta, 0)
        b.h(0)
    if phi is not None:
        b.rz(phi, 0)
    # Bell pair on q1, q2, then a Bell measurement of q0, q1.
    b.h(1)
    b.cnot(1, 2)
    b.cnot(0, 1)
    b.h(0)
    b.mz(0, m0)
    b.mz(1, m1)
    b.brif(m1, 'fix_x', 'check_z')

    b.block('fix_x')
    b.x(2)
    b.br('check_z')

    b.block('check_z')
    b.brif(m0, 'fix_z', 'done')

    b.block('fix_z')
    # Z up to global phase.
    b.rz(1.0, 2)
    b.br('done')

    b.block('done')
    b.output(m0)
    b.output(m1)
    b.ret()
    return build_program('teleport', b.build())
