from django.core.management.base import BaseCommand, CommandError

from algorithms.builders import build_active_reset
from hybrid.cli import EXIT_INVALID, add_run_arguments, exec_config, run_or_fail, write_json


class Command(BaseCommand):
    help = "Run the active reset program and report how often it succeeds."

    def add_arguments(self, parser):
        parser.add_argument('--qubits', type=int, default=1)
        parser.add_argument('--prepare-ones', action='store_true',
                            help="flip every qubit to |1> before the reset")
        add_run_arguments(parser, shots=1000)
        parser.add_argument('--out', help="summary JSON file")

    def handle(self, *args, **options):
        qubits = options['qubits']
        try:
            program = build_active_reset(qubits, range(qubits) if options['prepare_ones'] else ())
        except ValueError as e:
            raise CommandError(str(e), returncode=EXIT_INVALID)
        records = run_or_fail(program, exec_config(options))

        successes = sum(int(r.output('success')) for r in records)
        measurements = [int(r.output('measurements')) for r in records]
        summary = {
            'shots': len(records),
            'successes': successes,
            'success_rate': successes / len(records),
            'mean_measurements': sum(measurements) / len(records),
        }
        if options['out']:
            write_json(summary, options['out'])
        self.stdout.write("active reset succeeded in %d of %d shots" % (successes, len(records)))
