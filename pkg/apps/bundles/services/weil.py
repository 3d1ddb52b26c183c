"""
Characteristic classes of regular connections.

Invariant tensors theta in Gamma_inv^(x)k are evaluated on the curvature,
R^(x)(theta) = sum c R(theta_1)...R(theta_k), giving closed forms on the base.
Two regular connections are compared through the transgression form
psi_t along omega_t = omega + t(tau - omega).
"""
import logging
from dataclasses import dataclass, field
from itertools import product

from apps.algebra.exceptions import CapExceededError, NonInvariantError, NonRegularError, ParseError
from apps.algebra.services.linear import Accumulator, Combination, render_combination
from apps.algebra.services.reports import ValidationReport
from apps.algebra.services.scalars import T_SCALAR, parse_scalar
from apps.bundles.services.connections import Connection, FormMap, covariant_derivative, curvature, is_regular
from apps.calculus.services.focalc import CalculusSpec
from apps.calculus.services.linalg import kernel

logger = logging.getLogger(__name__)


def invariant_space(calculus: CalculusSpec, k: int) -> list[Combination]:
    """Basis of the varpi-invariant tensors of rank k, keyed by k-tuples of basis positions."""
    keys = list(product(range(calculus.dimension), repeat=k))
    return kernel(
        keys, lambda key: calculus.varpi_tensor_key(key) - Combination.monomial((key, ())),
        f'{calculus.name}:invariant[{k}]',
    )


def is_invariant(calculus: CalculusSpec, theta: Combination) -> bool:
    return theta.linear_map(calculus.varpi_tensor_key) == theta.map_keys(lambda key: (key, ()))


def parse_tensor(calculus: CalculusSpec, entries, params: dict | None = None) -> Combination:
    """
    Parse [[coeff, [form names]], ...] into a tensor.

    Raises:
        ParseError: Unknown form names or tensors of mixed rank
    """
    accumulator = Accumulator()
    ranks = set()
    for coeff, names in entries:
        unknown = [name for name in names if name not in calculus.index]
        if unknown:
            raise ParseError(f'{calculus.name}: unknown basis forms {unknown}')
        ranks.add(len(names))
        accumulator.add_term(tuple(calculus.index[name] for name in names), parse_scalar(coeff, params))
    if len(ranks) > 1:
        raise ParseError(f'{calculus.name}: tensor mixes ranks {sorted(ranks)}')
    return accumulator.result()


def render_tensor(calculus: CalculusSpec, theta: Combination) -> str:
    return render_combination(theta, lambda key: ' (x) '.join(calculus.basis[position] for position in key))


def evaluate_tensor(form_map: FormMap, theta: Combination) -> Combination:
    """sum c phi(theta_1)...phi(theta_k), products taken in Omega(P)."""
    total = form_map.bundle.total
    accumulator = Accumulator()
    for key, coeff in theta.items():
        accumulator.add(total.mul(*(form_map.images[position] for position in key)), coeff)
    return accumulator.result()


def _braided(calculus: CalculusSpec, theta: Combination, position: int) -> Combination:
    return theta.linear_map(lambda key: calculus.sigma_key(key, position))


def weil_eval(omega: Connection, theta: Combination,
              report: ValidationReport | None = None) -> tuple[Combination, ValidationReport]:
    """
    Evaluate an invariant tensor on the curvature of a regular connection.

    Returns:
        R^(x)(theta) and a report on membership in the base forms,
        closedness and invariance under the braid at each pair of legs

    Raises:
        NonInvariantError: theta is not varpi-invariant
        NonRegularError: omega is not regular
    """
    bundle = omega.bundle
    calculus, total = bundle.calculus, bundle.total
    if not is_invariant(calculus, theta):
        raise NonInvariantError(f'{render_tensor(calculus, theta)} is not invariant')
    if not is_regular(omega):
        raise NonRegularError(f'{omega.name} on {bundle.name} is not regular')
    report = report or ValidationReport(f'weil:{bundle.name}')
    witness = render_tensor(calculus, theta)
    curvature_map = curvature(omega)
    value = evaluate_tensor(curvature_map, theta)
    report.record('base_form', bundle.in_base(value), witness, total.render(value))
    try:
        report.record('closed', not total.d(value), witness)
    except CapExceededError:
        logger.warning(f'{bundle.name}: closedness of {witness} is beyond the cap')
    rank = len(next(iter(theta.keys()), ()))
    for position in range(rank - 1):
        braided = evaluate_tensor(curvature_map, _braided(calculus, theta, position))
        report.record('sigma_invariant', braided == value, f'{witness}; legs {position}, {position + 1}')
    return value, report


@dataclass
class Transgression:
    """Outcome of comparing two regular connections on an invariant tensor."""

    psi: Combination
    integral: Combination
    residual: Combination
    report: ValidationReport = field(repr=False)

    def to_dict(self, total) -> dict:
        return {
            'psi': total.render(self.psi),
            'integral': total.render(self.integral),
            'residual': total.render(self.residual),
            'report': self.report.to_dict(),
        }


def transgression_form(phi: FormMap, curvature_map: FormMap, theta: Combination) -> Combination:
    """psi(theta) = sum over legs j of R(theta_1)..phi(theta_j)..R(theta_k)."""
    total = phi.bundle.total
    accumulator = Accumulator()
    for key, coeff in theta.items():
        for position in range(len(key)):
            factors = [
                (phi if index == position else curvature_map).images[letter]
                for index, letter in enumerate(key)
            ]
            accumulator.add(total.mul(*factors), coeff)
    return accumulator.result()


def transgress(omega: Connection, tau: Connection, theta: Combination) -> Transgression:
    """
    Transgression between two regular connections.

    The residual R_tau^(x)(theta) - R_omega^(x)(theta) - d(int_0^1 psi_t dt)
    is zero for invariant theta; the report also compares d/dt R_t with
    D_t(tau - omega) coefficientwise in t.

    Raises:
        NonInvariantError: theta is not varpi-invariant
        NonRegularError: An endpoint is not regular
    """
    bundle = omega.bundle
    calculus, total = bundle.calculus, bundle.total
    if not is_invariant(calculus, theta):
        raise NonInvariantError(f'{render_tensor(calculus, theta)} is not invariant')
    for endpoint in (omega, tau):
        if not is_regular(endpoint):
            raise NonRegularError(f'{endpoint.name} on {bundle.name} is not regular')
    report = ValidationReport(f'transgression:{bundle.name}')
    witness = render_tensor(calculus, theta)
    phi = tau - omega
    path = omega + phi.scale(T_SCALAR)
    path_curvature = curvature(path)
    derivative = path_curvature.diff_t()
    expected = covariant_derivative(path, phi)
    for letter, name in enumerate(calculus.basis):
        report.record('curvature_derivative', derivative.images[letter] == expected.images[letter], name,
                      f'{total.render(derivative.images[letter])} vs {total.render(expected.images[letter])}')
    psi = transgression_form(phi, path_curvature, theta)
    report.record('psi_base_form', bundle.in_base(psi), witness)
    integral = psi.integrate_t()
    residual = evaluate_tensor(curvature(tau), theta) - evaluate_tensor(curvature(omega), theta) - total.d(integral)
    report.record('transgression', not residual, witness, total.render(residual))
    logger.info(f'Transgression on {bundle.name} for {witness}: residual {total.render(residual)}')
    return Transgression(psi, integral, residual, report)
