from django.core.management.base import BaseCommand, CommandError

from hybrid.cli import EXIT_INVALID, profile_option, read_program
from hybrid.profiles import diagnostics_json, validate


class Command(BaseCommand):
    help = "Check an IR program against a backend profile. Exits 1 if anything is reported."

    def add_arguments(self, parser):
        parser.add_argument('program')
        parser.add_argument('--profile', default='native')
        parser.add_argument('--json', action='store_true', help="print diagnostics as JSON")

    def handle(self, *args, **options):
        program = read_program(options['program'])
        profile = profile_option(options['profile'])
        diagnostics = validate(program, profile)

        if options['json']:
            self.stdout.write(diagnostics_json(diagnostics))
        else:
            for diagnostic in diagnostics:
                self.stdout.write(str(diagnostic))

        if diagnostics:
            raise CommandError("%d diagnostics against profile '%s'"
                               % (len(diagnostics), profile.name), returncode=EXIT_INVALID)
        if not options['json']:
            self.stdout.write(self.style.SUCCESS("%s: valid for profile '%s'"
                                                 % (options['program'], profile.name)))
