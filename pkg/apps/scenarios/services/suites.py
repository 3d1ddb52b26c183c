"""
Verification suites.

Each suite runs the invariant batteries of one layer of the engine over the
built-in packs, or over the pack named in the configuration, and merges them
into one report in a fixed order.
"""
import logging

from apps.algebra.exceptions import CapExceededError, ParseError
from apps.algebra.services.hopf import load_group, load_restriction
from apps.algebra.services.reports import ValidationReport
from apps.bundles.services.connections import build_connection, connection_report, is_regular, trivial_bundle_report
from apps.bundles.services.gauge import gauge_field, gauge_report
from apps.bundles.services.loader import available_bundles, load_bundle
from apps.bundles.services.weil import invariant_space, weil_eval
from apps.calculus.services.focalc import available_calculi, load_calculus
from apps.calculus.services.grext import build_invariant_forms
from apps.scenarios.services.config import ScenarioConfig
from apps.scenarios.services.results import PROPERTY_CHECKS

logger = logging.getLogger(__name__)

# Word-length caps of the Hopf axiom sweeps when no group is named.
AXIOM_CAPS = {'suq2': None, 'u1': 5}


def _calculus_params(config: ScenarioConfig) -> dict | None:
    return {'lambda': config.lam} if config.lam else None


def axioms_suite(config: ScenarioConfig, report: ValidationReport):
    if config.group:
        caps = {config.group: config.cap}
    else:
        caps = {name: cap or config.hopf_cap for name, cap in AXIOM_CAPS.items()}
    for name, cap in caps.items():
        report.extend(load_group(name).validate_axioms(cap), f'{name}.')
    if not config.group:
        report.extend(load_restriction('suq2', 'u1').validate(config.hopf_cap), 'suq2->u1.')


def _calculi(config: ScenarioConfig) -> list:
    names = [config.calculus] if config.calculus else available_calculi()
    return [load_calculus(name, params=_calculus_params(config)) for name in names]


def calculus_suite(config: ScenarioConfig, report: ValidationReport):
    for calculus in _calculi(config):
        report.extend(calculus.validate(cap=2), f'{calculus.name}.')


def graded_suite(config: ScenarioConfig, report: ValidationReport):
    for calculus in _calculi(config):
        forms = build_invariant_forms(calculus, config.mode or 'envelope', config.cap)
        report.extend(forms.validate(), f'{calculus.name}.')


def _bundles(config: ScenarioConfig) -> list:
    if config.pack:
        return [load_bundle(pack_file=config.pack, cap=config.cap, mode=config.mode)]
    names = [config.bundle] if config.bundle else available_bundles()
    return [load_bundle(name, cap=config.cap, mode=config.mode) for name in names]


def bundle_suite(config: ScenarioConfig, report: ValidationReport):
    for bundle in _bundles(config):
        report.extend(bundle.validate(), f'{bundle.name}.')


def connection_suite(config: ScenarioConfig, report: ValidationReport):
    """Laws of every pack connection; regularity and multiplicativity are logged, not checked."""
    for bundle in _bundles(config):
        prefix = f'{bundle.name}.'
        omega = build_connection(bundle)
        battery = connection_report(omega)
        if omega.potential is not None:
            trivial_bundle_report(omega, battery)
        for check in battery.checks:
            if check.name in PROPERTY_CHECKS:
                if not check.passed:
                    logger.info(f'{bundle.name}: {check.name} fails at {check.witness}')
                continue
            report.record(f'{prefix}{check.name}', check.passed, check.witness, check.detail)
        fields = [gauge_field(bundle, {name: '1'}, name=f'zeta_{name}') for name in bundle.calculus.basis]
        report.extend(gauge_report(omega, fields), prefix)
        if not is_regular(omega):
            continue
        for theta in invariant_space(bundle.calculus, 1):
            try:
                _, weil = weil_eval(omega, theta)
            except CapExceededError:
                continue
            report.extend(weil, prefix)


SUITES = {
    'axioms': [axioms_suite],
    'calculus': [calculus_suite],
    'graded': [graded_suite],
    'bundle': [bundle_suite],
    'connection': [connection_suite],
    'all': [axioms_suite, calculus_suite, graded_suite, bundle_suite, connection_suite],
}


def run_suite(name: str, config: ScenarioConfig) -> ValidationReport:
    """
    Run one verification suite.

    Raises:
        ParseError: Unknown suite name
    """
    batteries = SUITES.get(name)
    if batteries is None:
        raise ParseError(f'unknown suite {name!r}; expected one of {", ".join(SUITES)}')
    report = ValidationReport(f'suite:{name}')
    for battery in batteries:
        logger.info(f'Suite {name}: {battery.__name__}')
        battery(config, report)
    logger.info(f'Suite {name}: {report.counts()}')
    return report
