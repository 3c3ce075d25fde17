import json
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from algorithms.rwpe import RwpeParams, build_rwpe
from simulator.interpreter import ExecConfig, run_shots
from simulator.records import write_records


class RefitCommandTests(SimpleTestCase):
    """refit on files written by the simulator."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.records_path = self.path('shots.jsonl')
        records = run_shots(build_rwpe(RwpeParams(n_iter=8)), ExecConfig(shots=12, seed=4))
        write_records(records, self.records_path)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def call(self, *args, **kwargs):
        call_command('refit', *args, stdout=StringIO(), stderr=StringIO(), **kwargs)

    def test_outputs(self):
        prefix = self.path('refit')
        self.call(self.records_path, grid=401, true_phase=0.5, out=prefix)
        with open(prefix + '.csv', encoding='utf-8') as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], 'shot,raw,refit')
        self.assertEqual(len(lines), 13)
        with open(prefix + '.json', encoding='utf-8') as f:
            summary = json.load(f)
        self.assertEqual(summary['shots'], 12)
        self.assertEqual(summary['grid_size'], 401)
        self.assertIn('mse_refit', summary)
        self.assertEqual(summary['prior']['kind'], 'normal')
        self.assertEqual(summary['prior']['mean'], RwpeParams().mu0)

    def test_prior_choice(self):
        """--uniform and --prior-normal pick the grid prior."""
        self.call(self.records_path, grid=201, uniform=True, out=self.path('u'))
        self.call(self.records_path, grid=201, prior_normal=[0.5, 0.25], out=self.path('n'))
        with open(self.path('u.json'), encoding='utf-8') as f:
            self.assertEqual(json.load(f)['prior']['kind'], 'uniform')
        with open(self.path('n.json'), encoding='utf-8') as f:
            prior = json.load(f)['prior']
        self.assertEqual((prior['mean'], prior['std']), (0.5, 0.25))

    def test_deterministic(self):
        for name in ('a', 'b'):
            self.call(self.records_path, grid=201, prior=[-0.5, 0.75], out=self.path(name))
        with open(self.path('a.csv'), 'rb') as a, open(self.path('b.csv'), 'rb') as b:
            self.assertEqual(a.read(), b.read())

    def test_bad_input(self):
        """Empty, missing and malformed files exit with 1."""
        empty = self.path('empty.jsonl')
        open(empty, 'w').close()
        broken = self.path('broken.jsonl')
        with open(broken, 'w', encoding='utf-8') as f:
            f.write('{"shot": 0}\n')
        for path in (empty, broken, self.path('absent.jsonl')):
            with self.assertRaises(CommandError) as ctx:
                self.call(path, out=self.path('x'))
            self.assertEqual(ctx.exception.returncode, 1)

    def test_bad_options(self):
        """A grid of 0 nodes or a zero-width prior exits with 1."""
        for options in ({'grid': 0}, {'prior_normal': [0.5, 0.0]}):
            with self.assertRaises(CommandError) as ctx:
                self.call(self.records_path, out=self.path('x'), **options)
            self.assertEqual(ctx.exception.returncode, 1)
