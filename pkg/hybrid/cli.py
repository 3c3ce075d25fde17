"""Helper functions shared by the management commands."""
import json
import logging

from django.core.management.base import CommandError

from hybrid.exceptions import HybridError, ProgramSyntaxError, SemanticError
from hybrid.parser import emit, parse
from hybrid.profiles import get_profile

logger = logging.getLogger(__name__)

# Exit codes
EXIT_INVALID = 1
EXIT_RUNTIME = 2


def read_program(path):
    """Parse an IR file; syntax and semantic errors exit with EXIT_INVALID."""
    try:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise CommandError("can't read %s: %s" % (path, e), returncode=EXIT_INVALID)
    try:
        return parse(text)
    except (ProgramSyntaxError, SemanticError) as e:
        raise CommandError("%s: %s" % (path, e), returncode=EXIT_INVALID)


def write_program(program, path):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(emit(program))
    logger.info("wrote %s", path)


def write_json(data, path):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write('\n')
    logger.info("wrote %s", path)


def profile_option(name):
    try:
        return get_profile(name)
    except KeyError as e:
        raise CommandError(e.args[0], returncode=EXIT_INVALID)


def add_run_arguments(parser, shots=1):
    """--shots, --seed, --mode, --noise and --workers."""
    parser.add_argument('--shots', type=int, default=shots)
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--mode', choices=['real', 'fixed'], default='real',
                        help="classical arithmetic: exact reals or the Q2.16 backend model")
    parser.add_argument('--noise', default='none',
                        help="'none', 'default', or three probabilities p1,p2,pr")
    parser.add_argument('--workers', type=int, default=None,
                        help="worker processes for shots (default HYBRIDSIM_WORKERS)")


def exec_config(options):
    # Imported here; the hybrid app doesn't otherwise depend on the simulator.
    from simulator.interpreter import ExecConfig
    from simulator.noise import NoiseModel
    try:
        return ExecConfig(
            classical_mode=options['mode'],
            noise=NoiseModel.from_flag(options['noise']),
            seed=options['seed'],
            shots=options['shots'],
            workers=options['workers'],
        )
    except ValueError as e:
        raise CommandError(str(e), returncode=EXIT_INVALID)


def run_or_fail(program, config):
    """run_shots, with shot failures turned into EXIT_RUNTIME."""
    from simulator.interpreter import run_shots
    try:
        return run_shots(program, config)
    except HybridError as e:
        raise CommandError(str(e), returncode=EXIT_RUNTIME)
