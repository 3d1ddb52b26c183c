"""
Scenario registry.

Each scenario builds one bundle with its connections, records every computed
quantity next to its closed-form target and collects the law checks of the
engine into one report. run_scenario() looks scenarios up by id.
"""
import logging
from dataclasses import dataclass
from typing import Callable

from apps.algebra.exceptions import CapExceededError, UnknownScenarioError
from apps.algebra.services.linear import ZERO_COMBINATION, Combination
from apps.algebra.services.packs import require
from apps.algebra.services.reports import ValidationReport
from apps.algebra.services.scalars import parse_scalar
from apps.bundles.services.connections import (
    build_connection,
    connection_report,
    curvature,
    multiplicativity_witnesses,
    regularity_witnesses,
    trivial_bundle_report,
)
from apps.bundles.services.gauge import gauge_field, gauge_report
from apps.bundles.services.homogeneous import lp_relations
from apps.bundles.services.loader import load_bundle
from apps.bundles.services.weil import evaluate_tensor, transgress, weil_eval
from apps.scenarios.services.config import ScenarioConfig
from apps.scenarios.services.results import PROPERTY_CHECKS, ScenarioResult, yes_no

logger = logging.getLogger(__name__)

HOPF_3D_CURVATURE = 'mu*(1+mu^2)*em*ep'
HOPF_3D_RELATIONS = ('ep*ep = 0', 'ep*em = -mu^2*em*ep', 'em*em = 0')
FAMILY_COEFFICIENT = 'mu*t/(1-mu^2) + mu/((1-mu)*(1-mu^3))'
MULTIPLICATIVE_T = '-(1+mu)/(1-mu^3)'
TRANSGRESSION_RANK = 2

ZETA = Combination.monomial((0,))
ZETA_SQUARED = Combination.monomial((0, 0))


@dataclass(frozen=True)
class Scenario:
    id: str
    description: str
    runner: Callable[[ScenarioConfig], ScenarioResult]


SCENARIOS: dict[str, Scenario] = {}


def scenario(scenario_id: str, description: str):
    def register(runner):
        SCENARIOS[scenario_id] = Scenario(scenario_id, description, runner)
        return runner
    return register


def available_scenarios() -> list[dict]:
    return [{'id': entry.id, 'description': entry.description} for entry in SCENARIOS.values()]


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    """
    Run one scenario.

    Raises:
        UnknownScenarioError: No scenario has the configured id
    """
    entry = SCENARIOS.get(config.scenario)
    if entry is None:
        raise UnknownScenarioError(config.scenario)
    logger.info(f'Running scenario {entry.id} with cap {config.cap}')
    result = entry.runner(config)
    if config.mu_value:
        mu = parse_scalar(config.mu_value)
        for quantity in result.quantities:
            outcome = quantity.spot_check(mu)
            if outcome is not None:
                result.report.record('mu_spot_check', outcome, quantity.name, f'mu = {config.mu_value}')
    if result.passed:
        logger.info(f'Scenario {entry.id} passed: {result.report.counts()}')
    else:
        logger.warning(f'Scenario {entry.id} failed: {len(result.mismatches)} mismatches, '
                       f'{len(result.report.failures)} failed checks')
    return result


# Helpers

def _load(config: ScenarioConfig, pack_id: str, params: dict | None = None, base: str | None = None,
          min_cap: int = 2):
    cap = max(config.cap, min_cap)
    if cap > config.cap:
        logger.info(f'{pack_id}: raising the degree cap from {config.cap} to {cap}')
    return load_bundle(pack_id, params=params, cap=cap, mode=config.mode, pack_file=config.pack, base=base)


def _start(scenario_id: str, bundle) -> ScenarioResult:
    result = ScenarioResult(scenario_id, SCENARIOS[scenario_id].description, report=ValidationReport(scenario_id))
    result.report.extend(bundle.validate(), 'bundle.')
    return result


def _laws(report: ValidationReport, result: ScenarioResult, prefix: str):
    laws = ValidationReport(report.subject)
    laws.checks = [check for check in report.checks if check.name not in PROPERTY_CHECKS]
    result.report.extend(laws, prefix)


def _classify(result: ScenarioResult, omega, regular: str | None, multiplicative: str | None):
    """Record regularity and multiplicativity with their witnesses."""
    total = omega.bundle.total
    regular_witnesses = regularity_witnesses(omega)
    result.add('regular', yes_no(not regular_witnesses), regular)
    for witness, defect in regular_witnesses:
        result.add('regularity defect', f'{witness}: {total.render(defect)}')
    multiplicative_witnesses = multiplicativity_witnesses(omega)
    result.add('multiplicative', yes_no(not multiplicative_witnesses), multiplicative)
    for witness, defect in multiplicative_witnesses:
        result.add('multiplicativity defect', f'{witness}: {total.render(defect)}')


def _curvature(result: ScenarioResult, omega, name: str = 'curvature', expected: Combination | None = None,
               target: str | None = None) -> Combination:
    total = omega.bundle.total
    value = curvature(omega).images[0]
    if expected is not None:
        target = total.render(expected)
    result.add(name, total.render(value), target, value, expected)
    return value


def _lift(bundle, x: Combination) -> Combination:
    return bundle.total.embed_left(bundle.hor.embed_left(x))


# Scenarios

@scenario('hopf-3d', 'Hopf fibration with the 3D calculus: curvature, horizontal relations, Weil class.')
def hopf_3d(config: ScenarioConfig) -> ScenarioResult:
    bundle = _load(config, 'hopf-3d')
    result = _start('hopf-3d', bundle)
    omega = build_connection(bundle)
    value = _curvature(result, omega, 'R(zeta)', target=HOPF_3D_CURVATURE)
    rows = lp_relations(bundle)
    by_side = {row.split(' = ')[0]: row for row in rows}
    for expected in HOPF_3D_RELATIONS:
        side = expected.split(' = ')[0]
        result.add(f'relation {side}', by_side.get(side, 'missing'), expected)
    for row in rows:
        if row not in HOPF_3D_RELATIONS:
            result.add('relation', row)
    group = bundle.group
    from_d = bundle.curvature_from_D(group.element([('1', ['z']), ('-1', [])]))
    expected = bundle.curvature_table[0].scale(parse_scalar('1/(1+mu^2)'))
    result.add('curvature_from_D(z-1)', bundle.hor.render(from_d), bundle.hor.render(expected), from_d, expected)
    result.add('dim Omega_M^0', str(len(bundle.omega_M_basis(0))))
    _classify(result, omega, 'yes', 'yes')
    _laws(connection_report(omega), result, 'connection.')
    weil_value, weil_report = weil_eval(omega, ZETA)
    result.add('R(x)(zeta)', bundle.total.render(weil_value), HOPF_3D_CURVATURE, weil_value, value)
    result.report.extend(weil_report, 'weil.')
    result.report.extend(gauge_report(omega, [gauge_field(bundle, {'zeta': '1'})]), 'gauge.')
    return result


@scenario('hopf-4dplus', 'Hopf fibration with the 4D+ calculus: the connection family omega_t.')
def hopf_4dplus(config: ScenarioConfig) -> ScenarioResult:
    bundle = _load(config, 'hopf-4dplus')
    result = _start('hopf-4dplus', bundle)
    params = {'t': parse_scalar(config.t)} if config.t else None
    omega = build_connection(bundle, params=params)
    total = bundle.total
    tau, eta = bundle.space_form('tau'), bundle.space_form('eta')
    coefficient = parse_scalar(FAMILY_COEFFICIENT, params)
    _curvature(result, omega, expected=(total.mul(tau, eta) + total.mul(eta, tau)).scale(coefficient))
    special = config.t is not None and parse_scalar(config.t) == parse_scalar(MULTIPLICATIVE_T)
    _classify(result, omega, 'no', yes_no(special))
    _laws(connection_report(omega), result, 'connection.')
    return result


@scenario('hopf-classical', 'Hopf fibration with the classical calculus: a flat, regular, multiplicative connection.')
def hopf_classical(config: ScenarioConfig) -> ScenarioResult:
    bundle = _load(config, 'hopf-classical')
    result = _start('hopf-classical', bundle)
    omega = build_connection(bundle)
    total = bundle.total
    _curvature(result, omega, expected=ZERO_COMBINATION)
    form = omega.images[0]
    result.add('omega(zeta)^2', total.render(total.mul(form, form)), '0')
    result.add('d omega(zeta)', total.render(total.d(form)), '0')
    for label, phi in bundle.hor_generators():
        try:
            result.report.record('form_graded_commutes', not total.graded_commutator(form, phi), label)
        except CapExceededError:
            continue
    _classify(result, omega, 'yes', 'yes')
    _laws(connection_report(omega), result, 'connection.')
    return result


@scenario('trivial-default', 'Trivial bundle over the default base with the flat potential.')
def trivial_default(config: ScenarioConfig) -> ScenarioResult:
    params = {'lambda': config.lam} if config.lam else None
    bundle = _load(config, 'trivial-default', params)
    result = _start('trivial-default', bundle)
    omega = build_connection(bundle)
    _curvature(result, omega, expected=ZERO_COMBINATION)
    _classify(result, omega, 'yes', 'yes')
    _laws(connection_report(omega), result, 'connection.')
    _laws(trivial_bundle_report(omega), result, 'trivial.')
    return result


@scenario('line-bundle', 'Line bundle with A(zeta) = i e1: multiplicativity is omega(zeta)^2 = 0.')
def line_bundle(config: ScenarioConfig) -> ScenarioResult:
    params = {'lambda': config.lam} if config.lam else None
    base = 'free' if config.omega_sq == 'nonzero' else None
    bundle = _load(config, 'line-bundle', params, base)
    result = _start('line-bundle', bundle)
    omega = build_connection(bundle)
    total = bundle.total
    form = omega.images[0]
    result.add('omega(zeta)^2', total.render(total.mul(form, form)), '0')
    relations = bundle.forms.render_relations(2)
    degenerate = config.lam is not None and parse_scalar(config.lam) == parse_scalar('-1')
    result.add('envelope relations', '; '.join(relations), None if degenerate else 'zeta*zeta = 0')
    _curvature(result, omega)
    _classify(result, omega, None, 'yes')
    _laws(connection_report(omega), result, 'connection.')
    _laws(trivial_bundle_report(omega), result, 'trivial.')
    return result


@scenario('trivial-transgression', 'Transgression from the flat connection to A(zeta) = i e1 over the exact base.')
def trivial_transgression(config: ScenarioConfig) -> ScenarioResult:
    # R^(x)(zeta (x) zeta) and d of the integrated psi live in degree 4
    bundle = _load(config, 'trivial-transgression', min_cap=2 * TRANSGRESSION_RANK)
    result = _start('trivial-transgression', bundle)
    omega = build_connection(bundle)
    tau = build_connection(bundle, require(bundle.pack, 'second_connection', bundle.name))
    total, base = bundle.total, bundle.base
    outcome = transgress(omega, tau, ZETA_SQUARED)
    result.add('residual', total.render(outcome.residual), '0')
    integral = -_lift(bundle, base.mul(base.letter('e1'), base.letter('f')))
    result.add('integral of psi', total.render(outcome.integral), total.render(integral), outcome.integral, integral)
    f = _lift(bundle, base.letter('f'))
    value = evaluate_tensor(curvature(tau), ZETA_SQUARED)
    expected = -total.mul(f, f)
    result.add('R_tau(x)(zeta (x) zeta)', total.render(value), total.render(expected), value, expected)
    result.report.extend(outcome.report, 'transgression.')
    _classify(result, tau, 'yes', 'yes')
    _laws(trivial_bundle_report(tau), result, 'trivial.')
    fields = [gauge_field(bundle, {'zeta': '1'}), gauge_field(bundle, {'zeta': 'i'}, name='xi')]
    result.report.extend(gauge_report(omega, fields), 'gauge.')
    return result


@scenario('hopf-reconstruct', 'Reconstruction from hor = SU_mu(2) with D = 0, R = 0: the result is ver(P).')
def hopf_reconstruct(config: ScenarioConfig) -> ScenarioResult:
    bundle = _load(config, 'hopf-reconstruct')
    result = _start('hopf-reconstruct', bundle)
    omega = build_connection(bundle)
    total, vertical = bundle.total, bundle.vertical
    zeta = Combination.monomial(((), (0,)))
    for letter, name in enumerate(bundle.space.generators):
        x = Combination.monomial(((letter,), ()))
        result.report.record('vertical_product', total.mul(zeta, x) == vertical.mul(zeta, x), name)
        result.report.record('vertical_differential', total.d(x) == vertical.d(x), name)
    _curvature(result, omega, expected=ZERO_COMBINATION)
    _classify(result, omega, 'yes', 'yes')
    _laws(connection_report(omega), result, 'connection.')
    return result
