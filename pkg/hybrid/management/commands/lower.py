from django.core.management.base import BaseCommand, CommandError

from hybrid.cli import EXIT_INVALID, profile_option, read_program, write_program
from hybrid.exceptions import UnloweredGate
from hybrid.lowering import lower_to_native
from hybrid.parser import emit


class Command(BaseCommand):
    help = "Rewrite an IR program into the gates of a backend profile."

    def add_arguments(self, parser):
        parser.add_argument('program')
        parser.add_argument('--profile', default='native')
        parser.add_argument('--out', help="output file (default: stdout)")

    def handle(self, *args, **options):
        program = read_program(options['program'])
        profile = profile_option(options['profile'])
        try:
            lowered = lower_to_native(program, profile)
        except UnloweredGate as e:
            raise CommandError(str(e), returncode=EXIT_INVALID)

        if options['out']:
            write_program(lowered, options['out'])
        else:
            self.stdout.write(emit(lowered), ending='')
