from django.core.management.base import BaseCommand

from algorithms.builders import build_teleport
from hybrid.cli import add_run_arguments, exec_config, run_or_fail
from simulator.records import write_records


class Command(BaseCommand):
    help = "Teleport a prepared qubit state and tally the Bell measurement outcomes."

    def add_arguments(self, parser):
        parser.add_argument('--theta', type=float, default=None, help="units of pi")
        parser.add_argument('--phi', type=float, default=None, help="units of pi")
        add_run_arguments(parser, shots=100)
        parser.add_argument('--out', help="records file")

    def handle(self, *args, **options):
        program = build_teleport(options['theta'], options['phi'])
        records = run_or_fail(program, exec_config(options))

        tally = {}
        for r in records:
            key = "%d%d" % (int(r.output('m0')), int(r.output('m1')))
            tally[key] = tally.get(key, 0) + 1
        if options['out']:
            write_records(records, options['out'])
        for key in sorted(tally):
            self.stdout.write("m0m1=%s: %d" % (key, tally[key]))
