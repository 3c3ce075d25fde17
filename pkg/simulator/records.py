"""Shot records and their JSON-lines form.

One line per shot:

    {"shot": 0, "seed": 1234, "mode": "fixed", "steps": 812, "iterations": 24,
     "outputs": [{"name": "mu", "kind": "fixed", "value": 0.25, "raw": 16384}],
     "evidence": [{"t": {"value": 0.52, "raw": 34393, "scale": 1},
                   "phi_inv": {"value": 1.74, "raw": 114544}, "d": 0}, ...]}

Fixed-point values carry the 18-bit raw next to the decoded decimal.
"""
import json
from dataclasses import dataclass, field
from typing import Optional, Tuple

from hybrid.exceptions import RecordFormatError
from hybrid.fixedpoint import FixedQ216, Int18


@dataclass(frozen=True)
class EvidenceEntry:
    """One phase estimation iteration: evolution time, inversion angle, outcome."""
    t: float
    phi_inv: float
    d: int
    t_raw: Optional[int] = None
    t_scale: Optional[int] = None
    phi_inv_raw: Optional[int] = None

    def as_dict(self):
        t = {'value': self.t}
        if self.t_raw is not None:
            t['raw'] = self.t_raw
        if self.t_scale is not None:
            t['scale'] = self.t_scale
        phi_inv = {'value': self.phi_inv}
        if self.phi_inv_raw is not None:
            phi_inv['raw'] = self.phi_inv_raw
        return {'t': t, 'phi_inv': phi_inv, 'd': self.d}

    @classmethod
    def from_dict(cls, data):
        t, phi_inv = data['t'], data['phi_inv']
        return cls(float(t['value']), float(phi_inv['value']), int(data['d']),
                   t.get('raw'), t.get('scale'), phi_inv.get('raw'))


@dataclass(frozen=True)
class ShotRecord:
    shot: int
    seed: int
    mode: str
    outputs: Tuple[tuple, ...] = ()
    evidence: Tuple[EvidenceEntry, ...] = ()
    steps: int = 0
    final_state: object = field(default=None, compare=False, repr=False)

    @property
    def iteration_count(self):
        return len(self.evidence)

    def output(self, name):
        """Last value written to the named output."""
        for key, value in reversed(self.outputs):
            if key == name:
                return value
        raise KeyError(name)

    def output_real(self, name):
        value = self.output(name)
        return float(value.value) if hasattr(value, 'raw') else float(value)


# --- JSON encoding ---

def encode_value(name, value):
    if isinstance(value, FixedQ216):
        return {'name': name, 'kind': 'fixed', 'value': value.value, 'raw': value.raw}
    if isinstance(value, Int18):
        return {'name': name, 'kind': 'int18', 'value': value.raw}
    if isinstance(value, float):
        return {'name': name, 'kind': 'fixed', 'value': value}
    return {'name': name, 'kind': 'int', 'value': int(value)}


def decode_value(data):
    kind = data['kind']
    if kind == 'fixed':
        if 'raw' in data:
            return FixedQ216(int(data['raw']))
        return float(data['value'])
    if kind == 'int18':
        return Int18(int(data['value']))
    return int(data['value'])


def record_to_dict(record):
    return {
        'shot': record.shot,
        'seed': record.seed,
        'mode': record.mode,
        'steps': record.steps,
        'iterations': record.iteration_count,
        'outputs': [encode_value(name, value) for name, value in record.outputs],
        'evidence': [e.as_dict() for e in record.evidence],
    }


def record_from_dict(data):
    return ShotRecord(
        shot=int(data['shot']),
        seed=int(data['seed']),
        mode=str(data.get('mode', 'real')),
        outputs=tuple((o['name'], decode_value(o)) for o in data.get('outputs', [])),
        evidence=tuple(EvidenceEntry.from_dict(e) for e in data.get('evidence', [])),
        steps=int(data.get('steps', 0)),
    )


def dumps_record(record):
    return json.dumps(record_to_dict(record), separators=(', ', ': '))


def write_records(records, path):
    with open(path, 'w', encoding='utf-8') as f:
        for record in records:
            f.write(dumps_record(record))
            f.write('\n')


def parse_records(lines):
    records = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            records.append(record_from_dict(json.loads(line)))
        except (ValueError, KeyError, TypeError) as e:
            raise RecordFormatError("record line %d: %s" % (number, e))
    return records


def read_records(path):
    with open(path, encoding='utf-8') as f:
        return parse_records(f)
