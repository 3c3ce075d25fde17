import csv

from django.core.management.base import BaseCommand, CommandError

from algorithms.rwpe import RwpeParams
from estimation.bayes import DEFAULT_PRIOR_INTERVAL, refit
from hybrid.cli import EXIT_INVALID, EXIT_RUNTIME, write_json
from hybrid.exceptions import DegeneratePosterior, RecordFormatError
from simulator.records import read_records

RWPE_DEFAULTS = RwpeParams()


class Command(BaseCommand):
    help = ("Refit phase estimates from recorded evidence on a Bayesian grid. "
            "Writes PREFIX.csv (per shot) and PREFIX.json (summary).")

    def add_arguments(self, parser):
        parser.add_argument('records', help="JSON-lines shot records")
        parser.add_argument('--grid', type=int, default=None,
                            help="grid nodes (default HYBRIDSIM_GRID_SIZE)")
        parser.add_argument('--prior', type=float, nargs=2, default=DEFAULT_PRIOR_INTERVAL,
                            metavar=('LO', 'HI'), help="grid interval, units of pi")
        parser.add_argument('--prior-normal', type=float, nargs=2,
                            default=(RWPE_DEFAULTS.mu0, RWPE_DEFAULTS.sigma0),
                            metavar=('MU', 'SIGMA'),
                            help="Gaussian prior on the grid, units of pi "
                                 "(default: the RWPE mu0 and sigma0)")
        parser.add_argument('--uniform', action='store_true',
                            help="uniform prior over the grid interval instead")
        parser.add_argument('--factor', type=float, default=2.0)
        parser.add_argument('--true-phase', type=float, default=None,
                            help="known phase after post-processing, for MSE")
        parser.add_argument('--out', default='refit', help="output file prefix")

    def handle(self, *args, **options):
        try:
            records = read_records(options['records'])
        except OSError as e:
            raise CommandError("can't read %s: %s" % (options['records'], e),
                               returncode=EXIT_INVALID)
        except RecordFormatError as e:
            raise CommandError(str(e), returncode=EXIT_INVALID)
        if not records:
            raise CommandError("%s holds no shot records" % options['records'],
                               returncode=EXIT_INVALID)

        prior_normal = None if options['uniform'] else tuple(options['prior_normal'])
        try:
            result = refit(records, options['grid'], tuple(options['prior']),
                           options['factor'], options['true_phase'],
                           prior_normal=prior_normal)
        except (RecordFormatError, ValueError) as e:
            raise CommandError(str(e), returncode=EXIT_INVALID)
        except DegeneratePosterior as e:
            raise CommandError(str(e), returncode=EXIT_RUNTIME)

        prefix = options['out']
        with open(prefix + '.csv', 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f)
            writer.writerow(['shot', 'raw', 'refit'])
            for row in result.rows:
                writer.writerow([row.shot, '' if row.raw is None else repr(row.raw),
                                 repr(row.refit)])
        write_json(result.summary, prefix + '.json')
        self.stdout.write("refit %d shots, pooled estimate %.6f"
                          % (result.shots, result.pooled_estimate))
