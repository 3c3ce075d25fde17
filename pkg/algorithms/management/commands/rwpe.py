import numpy as np
from django.core.management.base import BaseCommand, CommandError

from algorithms.rwpe import (
    POSTPROCESS_FACTOR, RwpeParams, build_rwpe, postprocess, sigma_stall_iteration,
)
from estimation.histogram import DEFAULT_INTERVAL, histogram
from hybrid.cli import (
    EXIT_INVALID, add_run_arguments, exec_config, run_or_fail, write_json, write_program,
)
from simulator.records import write_records

# How far ahead to look for the fixed-point sigma stall.
STALL_HORIZON = 256


class Command(BaseCommand):
    help = ("Build and run random walk phase estimation. Writes PREFIX.jsonl, "
            "PREFIX_histogram.csv and PREFIX_summary.json.")

    def add_arguments(self, parser):
        defaults = RwpeParams()
        parser.add_argument('--mu0', type=float, default=defaults.mu0)
        parser.add_argument('--sigma0', type=float, default=defaults.sigma0)
        parser.add_argument('--n-iter', type=int, default=defaults.n_iter)
        parser.add_argument('--refresh-period', type=int, default=defaults.refresh_period)
        parser.add_argument('--oracle-coeff', type=float, default=defaults.oracle_coeff)
        add_run_arguments(parser, shots=1000)
        parser.add_argument('--bins', type=int, default=None,
                            help="histogram bins (default HYBRIDSIM_HISTOGRAM_BINS)")
        parser.add_argument('--factor', type=float, default=POSTPROCESS_FACTOR,
                            help="post-processing factor applied to mu")
        parser.add_argument('--out', default='rwpe', help="output file prefix")
        parser.add_argument('--emit-ir', help="also write the program as IR text")

    def handle(self, *args, **options):
        try:
            params = RwpeParams(options['mu0'], options['sigma0'], options['n_iter'],
                                options['refresh_period'], options['oracle_coeff'])
        except ValueError as e:
            raise CommandError(str(e), returncode=EXIT_INVALID)
        if options['bins'] is not None and options['bins'] < 1:
            raise CommandError("--bins must be at least 1", returncode=EXIT_INVALID)
        program = build_rwpe(params)
        if options['emit_ir']:
            write_program(program, options['emit_ir'])

        config = exec_config(options)
        records = run_or_fail(program, config)
        estimates = [postprocess(r.output_real('mu'), options['factor']) for r in records]
        hist = histogram(estimates, options['bins'], DEFAULT_INTERVAL)

        prefix = options['out']
        write_records(records, prefix + '.jsonl')
        hist.write_csv(prefix + '_histogram.csv')
        summary = {
            'mode': str(config.classical_mode),
            'shots': len(records),
            'mode_bin_center': hist.mode_bin_center,
            'peak_height': hist.peak_height,
            'overflow': hist.overflow,
            'mean_estimate': float(np.mean(estimates)),
            'sigma_stall_iteration': sigma_stall_iteration(params, config.classical_mode,
                                                           horizon=STALL_HORIZON),
        }
        write_json(summary, prefix + '_summary.json')
        self.stdout.write("mode bin center %.4f, peak %d of %d shots"
                          % (summary['mode_bin_center'], summary['peak_height'], summary['shots']))
