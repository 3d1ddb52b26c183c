"""
Infinitesimal gauge transformations.

A gauge field is a tensorial form map of degree zero. Each one acts on
Omega(P) by the contraction iota and the Lie derivative l = d iota + iota d;
on bundles in vh form there are also the right-leg operators ς* and ι*, and
their transports along m_omega for a regular connection omega.
"""
import logging
from itertools import product

from apps.algebra.exceptions import (
    CapExceededError,
    DomainMismatchError,
    NonRegularError,
    NonTensorialError,
    ParseError,
)
from apps.algebra.services.linear import ZERO_COMBINATION, Accumulator, Combination
from apps.algebra.services.reports import ValidationReport
from apps.algebra.services.scalars import ONE, parse_scalar
from apps.bundles.services.bundlecalc import BundleContext
from apps.bundles.services.connections import (
    Connection,
    FormMap,
    bracket,
    is_regular,
    m_omega,
    m_omega_inverse,
    regularity_defect,
)

logger = logging.getLogger(__name__)

GAUGE_KINDS = ('iota', 'lie', 'iota_star', 'contract_star', 'lie_star')


def _parity(degree: int):
    return -ONE if degree % 2 else ONE


def gauge_field(bundle: BundleContext, values: dict, params: dict | None = None, name: str = 'zeta') -> FormMap:
    """
    A constant gauge field theta -> c_theta 1.

    Args:
        bundle: The bundle
        values: Basis form name -> scalar text; missing forms map to zero
        params: Values for symbols in the scalars

    Raises:
        ParseError: An unknown basis form is named
        NonTensorialError: The field does not intertwine the coactions
    """
    calculus = bundle.calculus
    unit = Combination.monomial(bundle.total.unit_key)
    images = {}
    for form_name, value in values.items():
        if form_name not in calculus.index:
            raise ParseError(f'{bundle.name}: unknown structure form {form_name!r}')
        images[calculus.index[form_name]] = unit.scale(parse_scalar(value, params))
    field = FormMap(bundle, images, 0, name)
    if not field.is_tensorial():
        raise NonTensorialError(f'{name} on {bundle.name} is not tensorial')
    return field


def _require_vh(bundle: BundleContext):
    if bundle.kind == 'total':
        raise DomainMismatchError(f'{bundle.name} is not in vh form')


# Operators on Omega(P)

def contract(zeta: FormMap, w: Combination) -> Combination:
    """iota(w) = -(-1)^deg w sum_k u_k zeta(eta_k) over the first-order legs of hat(w)."""
    bundle = zeta.bundle
    total, forms, group = bundle.total, bundle.forms, bundle.group
    accumulator = Accumulator()
    for key, coeff in w.items():
        sign = -_parity(total.degree(key))
        for (inner, (word, form)), weight in bundle.hat_key(key).items():
            if forms.degree(form) != 1:
                continue
            counit = group.counit_word(word)
            if counit:
                accumulator.add(total.mul(Combination.monomial(inner), zeta.images[form[0]]),
                                coeff * weight * counit * sign)
    return accumulator.result()


def lie(zeta: FormMap, w: Combination) -> Combination:
    """l = d iota + iota d."""
    total = zeta.bundle.total
    return total.d(contract(zeta, w)) + contract(zeta, total.d(w))


# Right-leg operators on vh(P) = hor (x) Gamma_inv^

def _forms_word(bundle: BundleContext, word: tuple) -> Combination:
    return bundle.total.embed_right(bundle.forms.normal_word(word))


def contract_star_key(zeta: FormMap, key) -> Combination:
    """ς*(phi theta_1...theta_n) = sum_j (-1)^(deg phi + j) phi theta_1..zeta(theta_j)..theta_n."""
    bundle = zeta.bundle
    total = bundle.total
    hor_key, word = key
    head = Combination.monomial((hor_key, ()))
    degree = bundle.hor.degree(hor_key)
    accumulator = Accumulator()
    for position, letter in enumerate(word):
        term = total.mul(head, _forms_word(bundle, word[:position]), zeta.images[letter],
                         _forms_word(bundle, word[position + 1:]))
        accumulator.add(term, _parity(degree + position))
    return accumulator.result()


def _iota_star_word(zeta: FormMap, word: tuple) -> Combination:
    bundle = zeta.bundle
    total, forms, calculus = bundle.total, bundle.forms, bundle.calculus
    if not word:
        return ZERO_COMBINATION
    first, rest = word[0], word[1:]
    accumulator = Accumulator()
    accumulator.add(total.mul(_forms_word(bundle, (first,)), _iota_star_word(zeta, rest)), -ONE)
    for (normal, c), coeff in forms.coaction(forms.normal_word(rest)).items():
        accumulator.add(total.mul(total.embed_right(Combination.monomial(normal)),
                                  zeta(calculus.circ_word(first, c))), coeff)
    return accumulator.result()


def iota_star_key(zeta: FormMap, key) -> Combination:
    """
    ι*(phi eta) = (-1)^deg phi phi ι*(eta), where on invariant forms
    ι*(theta eta) = -theta ι*(eta) + sum_k eta_k zeta(theta o c_k).
    """
    bundle = zeta.bundle
    hor_key, word = key
    head = Combination.monomial((hor_key, ()))
    return bundle.total.mul(head, _iota_star_word(zeta, word)).scale(_parity(bundle.hor.degree(hor_key)))


def contract_star(zeta: FormMap, w: Combination) -> Combination:
    _require_vh(zeta.bundle)
    return w.linear_map(lambda key: contract_star_key(zeta, key))


def iota_star(zeta: FormMap, w: Combination) -> Combination:
    _require_vh(zeta.bundle)
    return w.linear_map(lambda key: iota_star_key(zeta, key))


def contract_omega(zeta: FormMap, omega: Connection, w: Combination) -> Combination:
    """ς(zeta, omega) = m_omega ς* m_omega^-1."""
    return m_omega(omega, contract_star(zeta, m_omega_inverse(omega, w)))


def lie_omega(zeta: FormMap, omega: Connection, w: Combination) -> Combination:
    """l(zeta, omega) = d ς(zeta, omega) + ς(zeta, omega) d."""
    total = omega.bundle.total
    return total.d(contract_omega(zeta, omega, w)) + contract_omega(zeta, omega, total.d(w))


def gauge_apply(kind: str, zeta: FormMap, w: Combination, omega: Connection | None = None) -> Combination:
    """
    Apply one gauge operator.

    Args:
        kind: One of GAUGE_KINDS
        zeta: Gauge field
        w: Form on the total space
        omega: Regular connection, required by contract_star and lie_star

    Raises:
        NonTensorialError: zeta is not tensorial
        DomainMismatchError: A starred operator on a bundle not in vh form
        NonRegularError: omega is missing or not regular
    """
    if not zeta.is_tensorial():
        raise NonTensorialError(f'{zeta.name} is not tensorial')
    if kind == 'iota':
        return contract(zeta, w)
    if kind == 'lie':
        return lie(zeta, w)
    if kind == 'iota_star':
        return iota_star(zeta, w)
    if kind not in GAUGE_KINDS:
        raise ParseError(f'unknown gauge operator {kind!r}')
    _require_vh(zeta.bundle)
    if omega is None or not is_regular(omega):
        raise NonRegularError(f'{kind} needs a regular connection')
    if kind == 'contract_star':
        return contract_omega(zeta, omega, w)
    return lie_omega(zeta, omega, w)


# Gauge algebra

def is_gauge_transformation(zeta: FormMap) -> bool:
    """zeta(theta) phi = sum_k phi_k zeta(theta o c_k) on the horizontal generators."""
    bundle = zeta.bundle
    for _, phi in bundle.hor_generators():
        for letter in range(bundle.calculus.dimension):
            try:
                if regularity_defect(zeta, letter, phi):
                    return False
            except CapExceededError:
                continue
    return True


def bracket_defect(zeta: FormMap, xi: FormMap, a: Combination) -> Combination:
    """zeta pi(a1) xi pi(a2) - xi pi(a1) zeta pi(a2) - [zeta, xi] pi(a)."""
    bundle = zeta.bundle
    total, calculus = bundle.total, bundle.calculus
    accumulator = Accumulator()
    for (left, right), coeff in calculus.group.coproduct(a).items():
        first, second = calculus.pi_word(left), calculus.pi_word(right)
        if first and second:
            accumulator.add(total.mul(zeta(first), xi(second)), coeff)
            accumulator.add(total.mul(xi(first), zeta(second)), -coeff)
    accumulator.add(bracket('comm', zeta, xi)(calculus.pi(a)), -ONE)
    return accumulator.result()


def gauge_report(omega: Connection, fields: list[FormMap], report: ValidationReport | None = None,
                 max_length: int = 2) -> ValidationReport:
    """
    Check the contraction and Lie derivative laws for each field, the
    conjugation by m_omega on bundles in vh form, and the Lie algebra laws
    on the fields that are gauge transformations.
    """
    bundle = omega.bundle
    total, calculus = bundle.total, bundle.calculus
    report = report or ValidationReport(f'gauge:{bundle.name}')
    generators = bundle.hor_generators()
    regular = bundle.kind != 'total' and is_regular(omega)
    samples = list(generators)
    samples += [(f'{label}*omega({name})', total.mul(phi, omega.images[letter]))
                for label, phi in generators for letter, name in enumerate(calculus.basis)]
    gauge = []
    for zeta in fields:
        report.record('tensorial', zeta.is_tensorial(), zeta.name)
        commutator = bracket('comm', omega, zeta)
        for letter, name in enumerate(calculus.basis):
            witness = f'{zeta.name}; {name}'
            value = omega.images[letter]
            report.record('iota_connection', contract(zeta, value) == zeta.images[letter], witness)
            try:
                expected = total.d(zeta.images[letter]) + commutator.images[letter]
                report.record('lie_connection', lie(zeta, value) == expected, witness)
            except CapExceededError:
                continue
        for label, phi in generators:
            witness = f'{zeta.name}; {label}'
            report.record('iota_horizontal', not contract(zeta, phi), witness)
            expected = Accumulator()
            for (key, word), coeff in bundle.horizontal_coaction(phi).items():
                germ = calculus.pi_word(word)
                if germ:
                    expected.add(total.mul(Combination.monomial(key), zeta(germ)), coeff)
            try:
                report.record('lie_horizontal', lie(zeta, phi) == expected.result(), witness)
            except CapExceededError:
                continue
        if regular:
            for label, w in samples:
                witness = f'{zeta.name}; {label}'
                try:
                    report.record('iota_conjugate', contract(zeta, w) ==
                                  m_omega(omega, iota_star(zeta, m_omega_inverse(omega, w))), witness)
                    report.record('contract_first_order', contract_omega(zeta, omega, w) ==
                                  contract(zeta, w), witness)
                except CapExceededError:
                    continue
        if is_gauge_transformation(zeta):
            gauge.append(zeta)
    report.record('gauge_fields', True, ', '.join(zeta.name for zeta in gauge) or 'none')
    monomials = [Combination.monomial(word) for word in calculus.group.monomials(max_length)]
    for zeta, xi in product(gauge, repeat=2):
        pair = f'{zeta.name}, {xi.name}'
        for a in monomials:
            try:
                report.record('lie_bracket', not bracket_defect(zeta, xi, a), f'{pair}; {calculus.group.render(a)}')
            except CapExceededError:
                continue
        for generator in calculus.ideal:
            report.record('bracket_ideal', not bracket_defect(zeta, xi, generator),
                          f'{pair}; {calculus.group.render(generator)}')
        if not regular:
            continue
        for label, w in samples:
            try:
                twice = contract_omega(zeta, omega, contract_omega(xi, omega, w)) + \
                    contract_omega(xi, omega, contract_omega(zeta, omega, w))
                report.record('contract_anticommute', not twice, f'{pair}; {label}')
            except CapExceededError:
                continue
    logger.info(f'Gauge checks on {bundle.name}: {report.counts()}')
    return report
