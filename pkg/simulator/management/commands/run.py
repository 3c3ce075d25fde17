import logging

from django.core.management.base import BaseCommand, CommandError

from hybrid.cli import (
    EXIT_INVALID, add_run_arguments, exec_config, profile_option, read_program, run_or_fail,
)
from hybrid.profiles import validate
from simulator.records import dumps_record, write_records

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Execute an IR program for a number of shots and write JSON-lines shot records."

    def add_arguments(self, parser):
        parser.add_argument('program')
        add_run_arguments(parser)
        parser.add_argument('--profile', default='permissive',
                            help="profile the program must validate against before running")
        parser.add_argument('--out', help="records file (default: stdout)")

    def handle(self, *args, **options):
        program = read_program(options['program'])
        diagnostics = validate(program, profile_option(options['profile']))
        if diagnostics:
            for diagnostic in diagnostics:
                self.stderr.write(str(diagnostic))
            raise CommandError("%s does not validate" % options['program'],
                               returncode=EXIT_INVALID)

        records = run_or_fail(program, exec_config(options))
        if options['out']:
            write_records(records, options['out'])
            logger.info("wrote %d records to %s", len(records), options['out'])
        else:
            for record in records:
                self.stdout.write(dumps_record(record))
