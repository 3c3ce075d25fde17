"""
Shot executor: one statevector plus classical registers, run in program order.

Each shot gets its own numpy Generator seeded from (config.seed, shot index),
so results don't depend on which process ran a shot or in what order.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from itertools import repeat
from typing import Optional

import numpy as np

from hybrid.conf import get_setting
from hybrid.exceptions import ShotError, StepLimitExceeded
from hybrid.kinds import classical_operand_kinds
from hybrid.program import (
    Call, ClassicalOp, CondJump, Jump, Output, QuantumOp, Return, VarKind,
)
from simulator.classical import ClassicalMode, RegisterFile, arithmetic_for, step_classical
from simulator.noise import NoiseModel, apply_noise, classify_gate
from simulator.records import EvidenceEntry, ShotRecord
from simulator.state import QuantumState, apply_gate, measure, reset

logger = logging.getLogger(__name__)

SEED_MASK = (1 << 64) - 1

# Hardware active reset: stop after this many consecutive 0 readouts,
#  give up after ACTIVE_RESET_ATTEMPTS measurements.
ACTIVE_RESET_SUCCESSES = 2
ACTIVE_RESET_ATTEMPTS = 5


@dataclass(frozen=True)
class ExecConfig:
    classical_mode: ClassicalMode = ClassicalMode.EXACT
    noise: Optional[NoiseModel] = None
    seed: int = 0
    shots: int = 1
    step_limit: Optional[int] = None
    workers: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'classical_mode', ClassicalMode(self.classical_mode))
        if self.shots < 1:
            raise ValueError("shots must be at least 1")
        if not 0 <= self.seed <= SEED_MASK:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for name in ('step_limit', 'workers'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError("%s must be at least 1" % name)

    def resolved(self):
        """Copy with settings-backed defaults filled in."""
        return replace(
            self,
            step_limit=_or_setting(self.step_limit, 'HYBRIDSIM_STEP_LIMIT'),
            workers=_or_setting(self.workers, 'HYBRIDSIM_WORKERS'),
        )


def _or_setting(value, name):
    return get_setting(name) if value is None else value


def shot_seed(seed, shot_index):
    """64-bit seed of one shot, derived from the run seed and the shot index."""
    sequence = np.random.SeedSequence(seed, spawn_key=(shot_index,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


class _Frame:
    """One procedure activation."""
    __slots__ = ('proc', 'regs', 'block', 'index', 'results')

    def __init__(self, proc, regs, results=()):
        self.proc = proc
        self.regs = regs
        self.block = proc.entry_block
        self.index = 0
        self.results = results


class ShotInterpreter:
    """Runs one shot of a program. Not reusable across shots."""

    def __init__(self, program, config, rng=None, state=None):
        self.program = program
        self.config = config
        self.arithmetic = arithmetic_for(config.classical_mode)
        self.noise = config.noise
        self.rng = rng
        self.state = state if state is not None else QuantumState(program.num_qubits)
        self.step_limit = _or_setting(config.step_limit, 'HYBRIDSIM_STEP_LIMIT')
        self.steps = 0
        self.outputs = []
        self.evidence = []
        self._kinds = {}

    # --- Classical ---

    def _operand_kinds(self, proc, op):
        key = (proc.name, op)
        kinds = self._kinds.get(key)
        if kinds is None:
            kinds = self._kinds[key] = classical_operand_kinds(op, proc.kind_of)
        return kinds

    # --- Quantum ---

    def _measure(self, q):
        p_readout = self.noise.p_readout if self.noise is not None else None
        return measure(self.state, q, self.rng, p_readout)

    def _gate(self, gate, qubits, angle=0.0):
        apply_gate(self.state, gate, qubits, angle)
        if self.noise is not None:
            apply_noise(self.state, classify_gate(gate), qubits, self.rng, self.noise)

    def _active_reset(self):
        for q in range(self.state.num_qubits):
            successes = 0
            for _ in range(ACTIVE_RESET_ATTEMPTS):
                if self._measure(q):
                    self._gate('x', (q,))
                    successes = 0
                else:
                    successes += 1
                if successes == ACTIVE_RESET_SUCCESSES:
                    break
            else:
                logger.warning("active reset of q%d gave up after %d measurements",
                             q, ACTIVE_RESET_ATTEMPTS)

    def _quantum(self, instr, regs):
        gate = instr.gate
        if gate == 'mz':
            bit = self._measure(instr.qubits[0])
            regs[instr.target] = bit
            if instr.evidence is not None:
                self._record_evidence(instr.evidence, regs, bit)
        elif gate == 'reset':
            reset(self.state, instr.qubits[0], self.rng)
        elif gate == 'active_reset':
            self._active_reset()
        else:
            angle = 0.0
            if instr.angle is not None:
                angle = self.arithmetic.to_radians(regs.read(instr.angle, VarKind.FIXED))
            self._gate(gate, instr.qubits, angle)

    def _record_evidence(self, names, regs, bit):
        ar = self.arithmetic
        t, phi_inv = regs[names[0]], regs[names[1]]
        scale = regs[names[2]] if len(names) > 2 else None
        scale_value = 1 if scale is None else int(ar.real(scale))
        self.evidence.append(EvidenceEntry(
            t=ar.real(t) * scale_value,
            phi_inv=ar.real(phi_inv),
            d=int(bit),
            t_raw=ar.raw(t),
            t_scale=None if scale is None else scale_value,
            phi_inv_raw=ar.raw(phi_inv),
        ))

    # --- Control ---

    def _new_frame(self, proc, args=(), caller_regs=None, results=()):
        regs = RegisterFile(proc, self.arithmetic)
        for param, arg in zip(proc.params, args):
            regs[param.name] = caller_regs.read(arg, param.kind)
        return _Frame(proc, regs, results)

    def _tick(self):
        self.steps += 1
        if self.steps > self.step_limit:
            raise StepLimitExceeded("more than %d instructions in one shot" % self.step_limit)

    def run(self):
        """Execute from the entry procedure until it returns."""
        stack = [self._new_frame(self.program.entry_procedure)]
        while True:
            frame = stack[-1]
            block, regs = frame.block, frame.regs
            self._tick()

            if frame.index < len(block.instructions):
                instr = block.instructions[frame.index]
                frame.index += 1
                if isinstance(instr, ClassicalOp):
                    step_classical(instr, regs, self._operand_kinds(frame.proc, instr))
                elif isinstance(instr, QuantumOp):
                    self._quantum(instr, regs)
                elif isinstance(instr, Output):
                    self.outputs.append((instr.name, regs[instr.name]))
                elif isinstance(instr, Call):
                    callee = self.program.procedure(instr.proc)
                    stack.append(self._new_frame(callee, instr.args, regs, instr.results))
                continue

            term = block.terminator
            if isinstance(term, Jump):
                frame.block, frame.index = frame.proc.block(term.target), 0
            elif isinstance(term, CondJump):
                target = term.then if regs[term.cond] else term.otherwise
                frame.block, frame.index = frame.proc.block(target), 0
            elif isinstance(term, Return):
                values = [regs[name] for name in term.values]
                stack.pop()
                if not stack:
                    self.outputs.extend(zip(term.values, values))
                    return
                caller = stack[-1].regs
                for name, value in zip(frame.results, values):
                    caller[name] = value


def run_shot(program, config, shot_index=0, keep_state=False):
    """Run one shot; errors come back wrapped in ShotError with the shot index."""
    seed = shot_seed(config.seed, shot_index)
    interpreter = ShotInterpreter(program, config, rng=np.random.default_rng(seed))
    try:
        interpreter.run()
    except Exception as e:
        raise ShotError(shot_index, e)
    logger.debug("shot %d finished in %d steps", shot_index, interpreter.steps)
    return ShotRecord(
        shot=shot_index,
        seed=seed,
        mode=str(config.classical_mode),
        outputs=tuple(interpreter.outputs),
        evidence=tuple(interpreter.evidence),
        steps=interpreter.steps,
        final_state=interpreter.state if keep_state else None,
    )


def _run_indexed(program, config, shot_index):
    return run_shot(program, config, shot_index)


def run_shots(program, config):
    """All config.shots shots, in shot order, serially or on a process pool."""
    config = config.resolved()
    logger.info("running %d shots (%s mode, noise %s, seed %d, %d workers)",
                config.shots, config.classical_mode,
                config.noise.as_flag() if config.noise else 'off', config.seed, config.workers)
    indices = range(config.shots)
    if config.workers > 1 and config.shots > 1:
        chunksize = max(1, config.shots // (config.workers * 8))
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_run_indexed, repeat(program), repeat(config), indices,
                                    chunksize=chunksize))
    else:
        records = [run_shot(program, config, i) for i in indices]
    logger.info("finished %d shots", len(records))
    return records


def program_unitary(program, mode=ClassicalMode.EXACT):
    """Unitary of a measurement-free program, built by running every basis column.

    Branches follow the classical registers, which don't depend on the
    quantum state when nothing is measured.
    """
    for proc in program.procedures:
        for _, _, instr in proc.iter_instructions():
            if isinstance(instr, QuantumOp) and instr.gate in ('mz', 'reset', 'active_reset'):
                raise ValueError("program_unitary needs a program without measurement")
    state = QuantumState.identity_batch(program.num_qubits)
    interpreter = ShotInterpreter(program, ExecConfig(classical_mode=mode), state=state)
    interpreter.run()
    return interpreter.state.amplitudes
