"""Control flow graphs of procedures."""
from hybrid.program import CondJump, QuantumOp, successors


class ControlFlowGraph:
    """Blocks of one procedure as nodes, branch terminators as edges."""

    def __init__(self, procedure):
        self.procedure = procedure
        self.nodes = [b.label for b in procedure.blocks]
        self.entry = procedure.entry_block.label
        self.succs = {b.label: list(successors(b.terminator)) for b in procedure.blocks}
        self.preds = {label: [] for label in self.nodes}
        for label, targets in self.succs.items():
            for target in targets:
                if label not in self.preds[target]:
                    self.preds[target].append(label)

    @property
    def edges(self):
        return {(a, b) for a, targets in self.succs.items() for b in targets}

    def successors(self, label):
        return list(self.succs[label])

    def predecessors(self, label):
        return list(self.preds[label])

    def exits(self):
        return [label for label in self.nodes if not self.succs[label]]

    def reachable(self):
        seen, stack = set(), [self.entry]
        while stack:
            label = stack.pop()
            if label in seen:
                continue
            seen.add(label)
            stack.extend(self.succs[label])
        return seen

    def back_edges(self):
        """Edges into a block that is still on the DFS stack, i.e. loop edges."""
        found = []
        state = {}  # label -> 'open' | 'done'

        def visit(label):
            state[label] = 'open'
            for target in self.succs[label]:
                if state.get(target) == 'open':
                    found.append((label, target))
                elif target not in state:
                    visit(target)
            state[label] = 'done'

        visit(self.entry)
        return found

    def is_path(self):
        """True when the blocks form one straight line from the entry."""
        label, seen = self.entry, set()
        while True:
            seen.add(label)
            targets = self.succs[label]
            if not targets:
                return len(seen) == len(self.nodes)
            if len(targets) != 1 or targets[0] in seen:
                return False
            label = targets[0]

    def to_dot(self):
        lines = ['digraph "%s" {' % self.procedure.name, '  node [shape=box];']
        for block in self.procedure.blocks:
            quantum = sum(isinstance(i, QuantumOp) for i in block.instructions)
            classical = len(block.instructions) - quantum
            shape = ', peripheries=2' if block.label == self.entry else ''
            lines.append('  "%s" [label="%s\\n%dq %dc"%s];'
                         % (block.label, block.label, quantum, classical, shape))
        for block in self.procedure.blocks:
            term = block.terminator
            if isinstance(term, CondJump):
                lines.append('  "%s" -> "%s" [label="%s"];' % (block.label, term.then, term.cond))
                lines.append('  "%s" -> "%s" [label="!%s"];' % (block.label, term.otherwise, term.cond))
            else:
                for target in successors(term):
                    lines.append('  "%s" -> "%s";' % (block.label, target))
        lines.append('}')
        return "\n".join(lines) + "\n"


def cfg(program, procedure=None):
    """CFG of the named procedure, the entry procedure by default."""
    proc = program.procedure(procedure or program.entry)
    return ControlFlowGraph(proc)
