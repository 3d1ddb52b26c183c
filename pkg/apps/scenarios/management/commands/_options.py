"""
Flags shared by the scenario, verify and export commands.
"""
from django.core.management.base import CommandError

from apps.scenarios.services.config import MODES, OMEGA_SQUARES, OUTPUTS

# Exit codes: 0 success, 1 verification failure, 2 configuration, parse or I/O error.
VERIFICATION_FAILED = 1
CONFIGURATION_ERROR = 2


def add_config_arguments(parser):
    parser.add_argument('--group', help='Group pack id, e.g. suq2 or u1')
    parser.add_argument('--calculus', help='Calculus pack id, e.g. 3d or 4d+')
    parser.add_argument('--bundle', help='Bundle pack id')
    parser.add_argument('--cap', type=int, help='Degree cap (at least 2)')
    parser.add_argument('--mode', choices=MODES, help='Quotient mode of the invariant forms')
    parser.add_argument('--t', help='Value of the connection parameter t, e.g. --t=-(1+mu)/(1-mu^3)')
    parser.add_argument('--lambda', dest='lam', help='Value of lambda for the line calculus')
    parser.add_argument('--mu-value', help='Rational mu for an independent spot check of every identity')
    parser.add_argument('--output', choices=OUTPUTS, default='text')
    parser.add_argument('--pack', help='Path of a user pack file')
    parser.add_argument('--omega-sq', choices=OMEGA_SQUARES, default='zero',
                        help='Base on which omega(zeta)^2 is zero or nonzero (line-bundle)')


def fail(command, message: str, returncode: int):
    command.stderr.write(command.style.ERROR(message))
    raise CommandError(message, returncode=returncode)
