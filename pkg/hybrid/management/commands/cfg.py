from django.core.management.base import BaseCommand, CommandError

from hybrid.cfg import cfg
from hybrid.cli import EXIT_INVALID, read_program


class Command(BaseCommand):
    help = "Print the control-flow graph of a procedure in DOT format."

    def add_arguments(self, parser):
        parser.add_argument('program')
        parser.add_argument('--procedure', help="procedure name (default: the entry procedure)")
        parser.add_argument('--out', help="output file (default: stdout)")

    def handle(self, *args, **options):
        program = read_program(options['program'])
        try:
            graph = cfg(program, options['procedure'])
        except KeyError:
            raise CommandError("no procedure '%s'" % options['procedure'], returncode=EXIT_INVALID)

        dot = graph.to_dot()
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8') as f:
                f.write(dot)
        else:
            self.stdout.write(dot, ending='')
