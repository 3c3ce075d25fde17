"""Text form of hybrid programs: parse() and emit().

The grammar is documented in docs/GRAMMAR.md. It is line oriented: one
directive, label, instruction or terminator per line, `#` starts a comment.
"""
import re

from hybrid.exceptions import ProgramSyntaxError, SemanticError
from hybrid.kinds import check_const, check_quantum, classical_operand_kinds
from hybrid.program import (
    CLASSICAL_OPS, GATES, BasicBlock, Call, ClassicalOp, CondJump, Const, Decl,
    HybridProgram, Jump, Output, Procedure, QuantumOp, Ref, Return, VarKind,
    successors,
)

DEFAULT_ENTRY_LABEL = 'entry'

TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<number>[-+]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?)
  | (?P<directive>\.[A-Za-z_]+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),:=])
""", re.VERBOSE)

QUBIT_RE = re.compile(r'q(\d+)$')
INT_RE = re.compile(r'[-+]?\d+$')


class _Line:
    """Token cursor over one source line."""

    def __init__(self, text, number):
        self.line_no = number
        self.tokens = []
        pos = 0
        while pos < len(text):
            match = TOKEN_RE.match(text, pos)
            if match is None:
                raise ProgramSyntaxError("unexpected character %r" % text[pos], number, pos + 1)
            if match.lastgroup != 'ws':
                self.tokens.append((match.lastgroup, match.group(), pos + 1))
            pos = match.end()
        self.pos = 0

    def error(self, message):
        column = self.tokens[self.pos][2] if self.pos < len(self.tokens) else None
        if column is None:
            column = self.tokens[-1][2] + len(self.tokens[-1][1]) if self.tokens else 1
        return ProgramSyntaxError(message, self.line_no, column)

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return (None, None, None)

    def at_end(self):
        return self.pos >= len(self.tokens)

    def take(self, kind, text=None, what=None):
        tok_kind, tok_text, _ = self.peek()
        if tok_kind != kind or (text is not None and tok_text != text):
            raise self.error("expected %s" % (what or text or kind))
        self.pos += 1
        return tok_text

    def accept(self, kind, text=None):
        tok_kind, tok_text, _ = self.peek()
        if tok_kind == kind and (text is None or tok_text == text):
            self.pos += 1
            return True
        return False

    def name(self, what='name'):
        return self.take('name', what=what)

    def number(self):
        text = self.take('number', what='number')
        if INT_RE.match(text):
            return int(text)
        return float(text)

    def operand(self):
        kind, _, _ = self.peek()
        if kind == 'number':
            return Const(self.number())
        if kind == 'name':
            return Ref(self.name())
        raise self.error("expected variable or literal")

    def qubit(self):
        text = self.take('name', what='qubit (q0, q1, ...)')
        match = QUBIT_RE.match(text)
        if match is None:
            self.pos -= 1
            raise self.error("expected qubit (q0, q1, ...)")
        return int(match.group(1))

    def comma_list(self, item, closing=None):
        """Comma separated items, up to `closing` punctuation or end of line."""
        items = []
        if closing is not None and self.accept('punct', closing):
            return items
        if closing is None and self.at_end():
            return items
        items.append(item())
        while self.accept('punct', ','):
            items.append(item())
        if closing is not None:
            self.take('punct', closing)
        return items

    def finish(self):
        if not self.at_end():
            raise self.error("unexpected %r" % self.peek()[1])


class _ProcState:
    """A procedure while its lines are being read."""

    def __init__(self, name, qubits, line):
        self.name = name
        self.qubits = qubits
        self.line = line
        self.params = []
        self.local_vars = []
        self.kinds = {}
        self.blocks = []
        self.label = None
        self.label_line = None
        self.instructions = []
        self.lines = {}  # (label, index or 'term') -> source line

    def declare(self, decl, line, is_param):
        if decl.name in self.kinds:
            raise SemanticError("variable '%s' declared twice" % decl.name, line)
        self.kinds[decl.name] = decl.kind
        (self.params if is_param else self.local_vars).append(decl)

    def open_block(self, label, line):
        if self.label is not None:
            raise SemanticError("block '%s' has no terminator" % self.label, line)
        if any(b.label == label for b in self.blocks):
            raise SemanticError("duplicate label '%s'" % label, line)
        self.label = label
        self.label_line = line
        self.instructions = []

    def add(self, instr, line):
        if self.label is None:
            if self.blocks:
                raise SemanticError("instruction after terminator; start a new block", line)
            self.open_block(DEFAULT_ENTRY_LABEL, line)
        self.lines[(self.label, len(self.instructions))] = line
        self.instructions.append(instr)

    def terminate(self, term, line):
        if self.label is None:
            if self.blocks:
                raise SemanticError("terminator outside a block", line)
            self.open_block(DEFAULT_ENTRY_LABEL, line)
        self.lines[(self.label, 'term')] = line
        self.blocks.append(BasicBlock(self.label, tuple(self.instructions), term))
        self.label = None
        self.instructions = []

    def close(self, line):
        if self.label is not None:
            raise SemanticError("block '%s' has no terminator" % self.label, line)
        if not self.blocks:
            self.blocks.append(BasicBlock(DEFAULT_ENTRY_LABEL, (), Return()))
        return Procedure(self.name, self.qubits, tuple(self.params),
                         tuple(self.local_vars), tuple(self.blocks))


def _parse_decl(line):
    kind_text = line.name('variable kind')
    try:
        kind = VarKind(kind_text)
    except ValueError:
        line.pos -= 1
        raise line.error("unknown kind '%s' (bit, int18, fixed)" % kind_text)
    name = line.name('variable name')
    init = None
    if line.accept('punct', '='):
        init = line.number()
    line.finish()
    return Decl(name, kind, init)


def _parse_instruction(line):
    """Returns (instruction or terminator, is_terminator)."""
    mnemonic = line.name('instruction')

    if mnemonic == 'br':
        target = line.name('label')
        line.finish()
        return Jump(target), True
    if mnemonic == 'brif':
        cond = line.name('condition')
        line.take('punct', ',')
        then = line.name('label')
        line.take('punct', ',')
        otherwise = line.name('label')
        line.finish()
        return CondJump(cond, then, otherwise), True
    if mnemonic == 'ret':
        values = line.comma_list(line.name)
        line.finish()
        return Return(tuple(values)), True

    if mnemonic == 'output':
        name = line.name('variable')
        line.finish()
        return Output(name), False

    if mnemonic == 'call':
        callee = line.name('procedure')
        line.take('punct', '(')
        args = line.comma_list(line.operand, closing=')')
        results = []
        if line.accept('arrow'):
            results = line.comma_list(line.name)
        line.finish()
        return Call(callee, tuple(args), tuple(results)), False

    if mnemonic in CLASSICAL_OPS:
        dest = line.name('destination')
        args = []
        for _ in range(CLASSICAL_OPS[mnemonic]):
            line.take('punct', ',')
            args.append(line.operand())
        line.finish()
        return ClassicalOp(mnemonic, dest, tuple(args)), False

    if mnemonic in GATES:
        arity, takes_angle = GATES[mnemonic]
        angle = None
        if takes_angle:
            line.take('punct', '(')
            angle = line.operand()
            line.take('punct', ')')
        qubits = []
        for i in range(arity):
            if i:
                line.take('punct', ',')
            qubits.append(line.qubit())
        target = evidence = None
        if mnemonic == 'mz':
            line.take('arrow', what="'->'")
            target = line.name('bit variable')
            if line.accept('name', 'evidence'):
                line.take('punct', '(')
                evidence = tuple(line.comma_list(line.name, closing=')'))
        line.finish()
        return QuantumOp(mnemonic, tuple(qubits), angle, target, evidence), False

    line.pos = 0
    raise line.error("unknown instruction '%s'" % mnemonic)


def check_instruction(instr, proc_name, qubits, kind_of, line_no=None):
    """Kind, arity and qubit checks for one instruction or terminator."""
    try:
        if isinstance(instr, ClassicalOp):
            classical_operand_kinds(instr, kind_of)
        elif isinstance(instr, QuantumOp):
            if instr.gate not in GATES:
                raise SemanticError("unknown gate '%s'" % instr.gate)
            arity, takes_angle = GATES[instr.gate]
            if len(instr.qubits) != arity or (instr.angle is not None) != takes_angle:
                raise SemanticError("wrong operands for %s" % instr.gate)
            if (instr.target is not None) != (instr.gate == 'mz'):
                raise SemanticError("only mz writes a measurement target")
            if len(set(instr.qubits)) != len(instr.qubits):
                raise SemanticError("%s needs distinct qubits" % instr.gate)
            for q in instr.qubits:
                if q >= qubits:
                    raise SemanticError("qubit q%d outside procedure '%s' (%d qubits)"
                                        % (q, proc_name, qubits))
            if isinstance(instr.angle, Const):
                check_const(instr.angle.value, VarKind.FIXED)
            check_quantum(instr, kind_of)
        elif isinstance(instr, Output):
            if kind_of(instr.name) is None:
                raise SemanticError("undeclared variable '%s'" % instr.name)
        elif isinstance(instr, Call):
            for arg in instr.args:
                if isinstance(arg, Ref) and kind_of(arg.name) is None:
                    raise SemanticError("undeclared variable '%s'" % arg.name)
            for name in instr.results:
                if kind_of(name) is None:
                    raise SemanticError("undeclared variable '%s'" % name)
        elif isinstance(instr, CondJump):
            if kind_of(instr.cond) is not VarKind.BIT:
                raise SemanticError("branch condition '%s' must be a declared bit" % instr.cond)
        elif isinstance(instr, Return):
            for name in instr.values:
                if kind_of(name) is None:
                    raise SemanticError("undeclared variable '%s'" % name)
    except SemanticError as e:
        if e.line is None:
            raise SemanticError(str(e), line_no)
        raise


def _return_kinds(proc):
    """Kinds returned by a procedure; all its ret terminators must agree."""
    signatures = {tuple(proc.kind_of(v) for v in b.terminator.values)
                  for b in proc.blocks if isinstance(b.terminator, Return)}
    if len(signatures) > 1:
        raise SemanticError("procedure '%s' returns different kinds from different blocks"
                            % proc.name)
    return signatures.pop() if signatures else ()


def check_program(program, lines=None):
    """Whole-program checks: branch targets, call signatures, the entry procedure."""
    lines = lines or {}
    names = [p.name for p in program.procedures]
    if len(set(names)) != len(names):
        raise SemanticError("duplicate procedure name")
    if program.entry not in names:
        raise SemanticError("entry procedure '%s' is not defined" % program.entry)

    for proc in program.procedures:
        where = lines.get(proc.name, {})
        for block in proc.blocks:
            for target in successors(block.terminator):
                if not proc.has_block(target):
                    raise SemanticError("branch to unknown label '%s'" % target,
                                        where.get((block.label, 'term')))
        for label, index, instr in proc.iter_instructions():
            if not isinstance(instr, Call):
                continue
            line_no = where.get((label, index))
            if instr.proc not in names:
                raise SemanticError("call to unknown procedure '%s'" % instr.proc, line_no)
            callee = program.procedure(instr.proc)
            if callee.qubits > proc.qubits:
                raise SemanticError("callee '%s' uses more qubits than '%s'"
                                    % (callee.name, proc.name), line_no)
            if len(instr.args) != len(callee.params):
                raise SemanticError("'%s' takes %d arguments, got %d"
                                    % (callee.name, len(callee.params), len(instr.args)), line_no)
            for arg, param in zip(instr.args, callee.params):
                try:
                    if isinstance(arg, Const):
                        check_const(arg.value, param.kind)
                    elif proc.kind_of(arg.name) is not param.kind:
                        raise SemanticError("argument '%s' must be %s" % (arg.name, param.kind))
                except SemanticError as e:
                    raise SemanticError(str(e), line_no)
            returned = _return_kinds(callee)
            if tuple(proc.kind_of(r) for r in instr.results) != returned:
                raise SemanticError("results of '%s' don't match what it returns" % callee.name,
                                    line_no)
    return program


def parse(text):
    """Parse IR text into a HybridProgram."""
    entry = None
    procedures = []
    lines = {}
    proc = None

    for number, raw in enumerate(text.splitlines(), start=1):
        source = raw.split('#', 1)[0]
        if not source.strip():
            continue
        line = _Line(source, number)
        kind, word, _ = line.peek()

        if kind == 'directive':
            line.pos += 1
            if word == '.entry':
                if entry is not None:
                    raise SemanticError("more than one .entry", number)
                entry = line.name('procedure name')
                line.finish()
            elif word == '.proc':
                if proc is not None:
                    raise line.error("missing .end before .proc")
                name = line.name('procedure name')
                line.take('name', 'qubits')
                count = line.number()
                if not isinstance(count, int) or count < 0:
                    raise ProgramSyntaxError("qubit count must be a nonnegative integer", number)
                line.finish()
                proc = _ProcState(name, count, number)
            elif word in ('.param', '.var'):
                if proc is None:
                    raise line.error("%s outside a procedure" % word)
                if proc.label is not None or proc.blocks:
                    raise line.error("declarations must come before the first block")
                proc.declare(_parse_decl(line), number, word == '.param')
                decl = (proc.params if word == '.param' else proc.local_vars)[-1]
                if decl.init is not None:
                    if word == '.param':
                        raise SemanticError("parameters can't have initial values", number)
                    check_const(decl.init, decl.kind)
            elif word == '.end':
                if proc is None:
                    raise line.error(".end outside a procedure")
                line.finish()
                procedures.append(proc.close(number))
                lines[proc.name] = proc.lines
                proc = None
            else:
                line.pos -= 1
                raise line.error("unknown directive '%s'" % word)
            continue

        if proc is None:
            raise line.error("statement outside a procedure")

        if kind == 'name' and len(line.tokens) == 2 and line.tokens[1][1] == ':':
            proc.open_block(word, number)
            continue

        instr, is_terminator = _parse_instruction(line)
        check_instruction(instr, proc.name, proc.qubits, proc.kinds.get, number)
        if is_terminator:
            proc.terminate(instr, number)
        else:
            proc.add(instr, number)

    if proc is not None:
        raise SemanticError("procedure '%s' has no .end" % proc.name, proc.line)
    if entry is None:
        raise SemanticError("missing .entry directive")
    return check_program(HybridProgram(tuple(procedures), entry), lines)


# --- Emitting ---

def _operand(op):
    return str(op)


def _emit_decl(directive, decl):
    text = "%s %s %s" % (directive, decl.kind, decl.name)
    if decl.init is not None:
        text += " = %r" % (decl.init,)
    return text


def emit_instruction(instr):
    if isinstance(instr, QuantumOp):
        text = instr.gate
        if instr.angle is not None:
            text += "(%s)" % _operand(instr.angle)
        if instr.qubits:
            text += " " + ", ".join("q%d" % q for q in instr.qubits)
        if instr.target is not None:
            text += " -> %s" % instr.target
        if instr.evidence is not None:
            text += " evidence(%s)" % ", ".join(instr.evidence)
        return text
    if isinstance(instr, ClassicalOp):
        return "%s %s, %s" % (instr.op, instr.dest, ", ".join(_operand(a) for a in instr.args))
    if isinstance(instr, Output):
        return "output %s" % instr.name
    if isinstance(instr, Call):
        text = "call %s(%s)" % (instr.proc, ", ".join(_operand(a) for a in instr.args))
        if instr.results:
            text += " -> " + ", ".join(instr.results)
        return text
    if isinstance(instr, Jump):
        return "br %s" % instr.target
    if isinstance(instr, CondJump):
        return "brif %s, %s, %s" % (instr.cond, instr.then, instr.otherwise)
    if isinstance(instr, Return):
        return ("ret " + ", ".join(instr.values)) if instr.values else "ret"
    raise TypeError("not an instruction: %r" % (instr,))


def emit(program):
    """Canonical text for a program; parse(emit(p)) == p."""
    out = [".entry %s" % program.entry]
    for proc in program.procedures:
        out.append("")
        out.append(".proc %s qubits %d" % (proc.name, proc.qubits))
        out.extend(_emit_decl('.param', d) for d in proc.params)
        out.extend(_emit_decl('.var', d) for d in proc.local_vars)
        for block in proc.blocks:
            out.append("%s:" % block.label)
            for instr in block.instructions:
                out.append("    " + emit_instruction(instr))
            out.append("    " + emit_instruction(block.terminator))
        out.append(".end")
    return "\n".join(out) + "\n"
