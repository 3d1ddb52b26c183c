"""
Base class for graded-differential *-algebras with a fixed basis.

Subclasses supply the basis, the degree of a basis key and the product of two
basis keys; linear extension, caching, the degree cap and the law checks live
here.
"""
import logging
from functools import reduce

from apps.algebra.exceptions import CapExceededError, DomainMismatchError
from apps.algebra.services.linear import ZERO_COMBINATION, Accumulator, Combination, render_combination
from apps.algebra.services.reports import ValidationReport
from apps.algebra.services.scalars import Scalar

logger = logging.getLogger(__name__)


def sign(*degrees: int) -> int:
    """(-1)^(product of degrees)."""
    return -1 if all(degree % 2 for degree in degrees) else 1


class GradedAlgebra:
    """
    Graded *-algebra whose elements are Combinations over basis keys.

    Attributes:
        name: Identifier used in logs and reports
        cap: Highest degree kept; None for algebras without a cap
        truncate: Products above the cap vanish instead of raising
        top: Known degree above which the algebra is zero, if any
    """

    name = 'algebra'
    unit_key = ()

    def __init__(self, cap: int | None = None, truncate: bool = False):
        self.cap = cap
        self.truncate = truncate
        self.top = None
        self._products = {}
        self._differentials = {}

    # Subclass interface

    def degree(self, key) -> int:
        raise NotImplementedError

    def _mul_keys(self, left, right) -> Combination:
        raise NotImplementedError

    def _d_key(self, key) -> Combination:
        return ZERO_COMBINATION

    def star_key(self, key) -> Combination:
        raise NotImplementedError

    def basis(self, degree: int) -> list:
        raise NotImplementedError

    def label(self, key) -> str:
        return str(key)

    # Elements

    def one(self) -> Combination:
        return Combination.monomial(self.unit_key)

    def scalar(self, value) -> Combination:
        return Combination.monomial(self.unit_key, Scalar.coerce(value))

    def basis_element(self, key) -> Combination:
        return Combination.monomial(key)

    def parts(self, x: Combination) -> dict:
        """Split an element into homogeneous components keyed by degree."""
        grouped = {}
        for key, coeff in x.items():
            grouped.setdefault(self.degree(key), {})[key] = coeff
        return {degree: Combination._raw(terms) for degree, terms in sorted(grouped.items())}

    def part(self, x: Combination, degree: int) -> Combination:
        return x.filter_keys(lambda key: self.degree(key) == degree)

    def degree_of(self, x: Combination) -> int:
        degrees = {self.degree(key) for key in x}
        if len(degrees) > 1:
            raise DomainMismatchError(f'{self.render(x)} is not homogeneous')
        return degrees.pop() if degrees else 0

    def render(self, x: Combination) -> str:
        return render_combination(x, self.label)

    # Operations

    def mul_keys(self, left, right) -> Combination:
        cached = self._products.get((left, right))
        if cached is not None:
            return cached
        total = self.degree(left) + self.degree(right)
        if self.top is not None and total > self.top:
            result = ZERO_COMBINATION
        elif self.cap is not None and total > self.cap:
            if not self.truncate:
                raise CapExceededError(total, self.cap)
            result = ZERO_COMBINATION
        elif left == self.unit_key:
            result = Combination.monomial(right)
        elif right == self.unit_key:
            result = Combination.monomial(left)
        else:
            result = self._mul_keys(left, right)
        self._products[(left, right)] = result
        return result

    def mul(self, *factors: Combination) -> Combination:
        if not factors:
            return self.one()
        return reduce(self._mul_pair, factors)

    def _mul_pair(self, x: Combination, y: Combination) -> Combination:
        accumulator = Accumulator()
        for left, left_coeff in x.items():
            for right, right_coeff in y.items():
                accumulator.add(self.mul_keys(left, right), left_coeff * right_coeff)
        return accumulator.result()

    def d_key(self, key) -> Combination:
        cached = self._differentials.get(key)
        if cached is None:
            cached = self._d_key(key)
            self._differentials[key] = cached
        return cached

    def d(self, x: Combination) -> Combination:
        return x.linear_map(self.d_key)

    def star(self, x: Combination) -> Combination:
        return x.antilinear_map(self.star_key)

    def graded_commutator(self, x: Combination, y: Combination) -> Combination:
        """xy - (-1)^(deg x deg y) yx for homogeneous x and y."""
        twist = sign(self.degree_of(x), self.degree_of(y))
        return self.mul(x, y) - self.mul(y, x).scale(twist)

    def power(self, x: Combination, exponent: int) -> Combination:
        return self.mul(*([x] * exponent)) if exponent else self.one()

    # Law checks

    def check_dga(self, keys: list, report: ValidationReport | None = None,
                  pairs: list | None = None) -> ValidationReport:
        """
        Check d^2=0, hermicity of d and the star involution on keys, and the
        graded Leibniz rule and antimultiplicativity of star on pairs.

        Args:
            keys: Basis keys to test one at a time
            report: Report to append to; a new one is created if omitted
            pairs: Pairs of basis keys; defaults to all pairs from keys

        Returns:
            The report
        """
        report = report or ValidationReport(self.name)
        for key in keys:
            element = self.basis_element(key)
            witness = self.label(key)
            report.record('star_involutive', self.star(self.star(element)) == element, witness)
            try:
                report.record('d_squared_zero', not self.d(self.d(element)), witness)
                report.record('d_hermitian', self.d(self.star(element)) == self.star(self.d(element)), witness)
            except CapExceededError:
                continue
        if pairs is None:
            pairs = [(left, right) for left in keys for right in keys]
        for left, right in pairs:
            x, y = self.basis_element(left), self.basis_element(right)
            witness = f'{self.label(left)}, {self.label(right)}'
            twist = sign(self.degree(left), self.degree(right))
            try:
                product = self.mul(x, y)
                expected = self.mul(self.d(x), y) + self.mul(x, self.d(y)).scale(sign(self.degree(left)))
                report.record('leibniz', self.d(product) == expected, witness)
                report.record(
                    'star_antimultiplicative',
                    self.star(product) == self.mul(self.star(y), self.star(x)).scale(twist),
                    witness,
                )
            except CapExceededError:
                continue
        return report
