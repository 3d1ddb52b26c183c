"""
Exact scalars: Gaussian rational functions in the formal symbols mu, lambda, t.

A Scalar is a pair (re, im) of elements of sympy's sparse fraction field
QQ(mu, lam, t). The fraction field cancels on construction, so two equal
values share one representation; conjugation negates the imaginary part and
fixes every symbol.
"""
import logging
import re
from fractions import Fraction
from tokenize import TokenError

from sympy import I, nan, oo, zoo
from sympy.core.basic import Basic
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.fields import field

from apps.algebra.exceptions import BundleCalcError, ParseError, PoleError, ScalarDivisionError

logger = logging.getLogger(__name__)

FIELD, MU, LAM, T = field('mu,lam,t', QQ)
_GAUSSIAN_FIELD = field('mu,lam,t,ii', QQ)[0]
_II = _GAUSSIAN_FIELD.symbols[3]

SYMBOLS = dict(zip(('mu', 'lam', 't'), FIELD.symbols))
DISPLAY_NAMES = ('mu', 'lambda', 't')
T_INDEX = 2

_LAMBDA = re.compile(r'\blambda\b')
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _symbol_name(name: str) -> str:
    return 'lam' if name == 'lambda' else name


class Scalar:
    """Element of Q(i)(mu, lambda, t)."""

    __slots__ = ('re', 'im')

    def __init__(self, re=None, im=None):
        self.re = FIELD.zero if re is None else FIELD(re)
        self.im = FIELD.zero if im is None else FIELD(im)

    # Construction

    @classmethod
    def coerce(cls, value) -> 'Scalar':
        if isinstance(value, Scalar):
            return value
        if isinstance(value, bool):
            raise ParseError(f'cannot use {value!r} as a scalar')
        if isinstance(value, int):
            return cls(FIELD(value))
        if isinstance(value, Fraction):
            return cls(FIELD(QQ(value.numerator, value.denominator)))
        if isinstance(value, str):
            return parse_scalar(value)
        if isinstance(value, Basic):
            return cls.from_sympy(value)
        raise ParseError(f'cannot use {value!r} as a scalar')

    @classmethod
    def rational(cls, numerator: int, denominator: int = 1) -> 'Scalar':
        if denominator == 0:
            raise ScalarDivisionError('zero denominator')
        return cls(FIELD(QQ(numerator, denominator)))

    @classmethod
    def fraction(cls, numerator, denominator) -> 'Scalar':
        """Normalize numerator/denominator; the zero denominator is rejected."""
        return cls.coerce(numerator) / cls.coerce(denominator)

    @classmethod
    def from_sympy(cls, expr) -> 'Scalar':
        if expr.has(zoo, nan, oo):
            raise ScalarDivisionError(f'{expr} has a zero denominator')
        try:
            value = _GAUSSIAN_FIELD.from_expr(expr.subs(I, _II))
        except ZeroDivisionError as exc:
            raise ScalarDivisionError(f'{expr} has a zero denominator') from exc
        except ValueError as exc:
            raise ParseError(f'{expr} is not a Gaussian rational function') from exc
        return _split_gaussian(value.numer) / _split_gaussian(value.denom)

    # Predicates

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_zero(self) -> bool:
        return not self

    @property
    def is_real(self) -> bool:
        return not self.im

    def depends_on(self, name: str) -> bool:
        index = ('mu', 'lam', 't').index(_symbol_name(name))
        return any(
            part.numer.degree(index) > 0 or part.denom.degree(index) > 0
            for part in (self.re, self.im)
        )

    # Arithmetic

    def __add__(self, other):
        other = _operand(other)
        if other is NotImplemented:
            return other
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        other = _operand(other)
        if other is NotImplemented:
            return other
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _operand(other)
        if other is NotImplemented:
            return other
        if not self.im and not other.im:
            return Scalar(self.re * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> 'Scalar':
        if not self:
            raise ScalarDivisionError('inverse of the zero scalar')
        if not self.im:
            return Scalar(1 / self.re)
        norm = self.re * self.re + self.im * self.im
        return Scalar(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        other = _operand(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self) -> 'Scalar':
        return Scalar(self.re, -self.im)

    def __eq__(self, other):
        other = _operand(other)
        if other is NotImplemented:
            return False
        if self.re == other.re and self.im == other.im:
            return True
        return not (self - other)

    def __hash__(self):
        return hash((self.re, self.im))

    # Canonical accessors

    def _common_form(self):
        denominator = self.re.denom.lcm(self.im.denom)
        real = self.re.numer * denominator.exquo(self.re.denom)
        imag = self.im.numer * denominator.exquo(self.im.denom)
        leading = denominator.LC
        return (
            real.quo_ground(leading), imag.quo_ground(leading), denominator.quo_ground(leading)
        )

    def numerator(self):
        """Numerator over the monic common denominator, as a sympy expression."""
        real, imag, _ = self._common_form()
        return real.as_expr() + I * imag.as_expr()

    def denominator(self):
        """Monic common denominator, as a sympy expression."""
        return self._common_form()[2].as_expr()

    # Symbols

    def to_sympy(self):
        return self.re.as_expr() + I * self.im.as_expr()

    def subs(self, name: str, value) -> 'Scalar':
        """Substitute one of mu, lambda, t by a scalar."""
        symbol = SYMBOLS[_symbol_name(name)]
        value = Scalar.coerce(value)
        expr = self.to_sympy().subs(symbol, value.to_sympy())
        if expr.has(zoo, nan, oo):
            for part in (self.re, self.im):
                if not part.denom.as_expr().subs(symbol, value.to_sympy()):
                    raise PoleError(_render_polynomial(part.denom), value.render())
            raise PoleError(self.render(), value.render())
        return Scalar.from_sympy(expr)

    def evaluate(self, mu) -> 'Scalar':
        """Exact evaluation at a rational mu; raises PoleError at a pole."""
        return self.subs('mu', mu)

    def diff_t(self) -> 'Scalar':
        return Scalar(self.re.diff(T), self.im.diff(T))

    def integrate_t(self) -> 'Scalar':
        """Exact integral over t from 0 to 1 of a scalar polynomial in t."""
        return Scalar(_integrate_unit_interval(self.re), _integrate_unit_interval(self.im))

    # Text

    def render(self) -> str:
        if not self.im:
            return _render_fraction(self.re)
        imag = _render_fraction(self.im)
        if imag == '1':
            imag_text = 'i'
        elif imag == '-1':
            imag_text = '-i'
        else:
            imag_text = f'{imag}*i'
        if not self.re:
            return imag_text
        return f'({_render_fraction(self.re)})+({imag})*i'

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f'Scalar({self.render()!r})'


def _operand(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Scalar.coerce(value)
    return NotImplemented


def _split_gaussian(poly) -> Scalar:
    real, imag = {}, {}
    for monom, coeff in poly.terms():
        power = monom[3] % 4
        target = real if power % 2 == 0 else imag
        if power >= 2:
            coeff = -coeff
        base = monom[:3]
        target[base] = target.get(base, QQ.zero) + coeff
    return Scalar(FIELD.new(FIELD.ring.from_dict(real)), FIELD.new(FIELD.ring.from_dict(imag)))


def _integrate_unit_interval(value):
    if not value:
        return value
    if value.denom.degree(T_INDEX) > 0:
        raise BundleCalcError('only polynomial dependence on t can be integrated')
    terms = {}
    for monom, coeff in value.numer.terms():
        base = (monom[0], monom[1], 0)
        terms[base] = terms.get(base, QQ.zero) + coeff / (monom[T_INDEX] + 1)
    return FIELD.new(FIELD.ring.from_dict(terms), value.denom)


def parse_scalar(text, params: dict | None = None) -> Scalar:
    """
    Parse the scalar grammar: integers, i, mu, lambda, t, ^, *, /, parentheses.

    Args:
        text: Source text, or an int/Fraction/Scalar passed through
        params: Optional substitutions such as {'lambda': Scalar}

    Returns:
        The canonical Scalar
    """
    if not isinstance(text, str):
        value = Scalar.coerce(text)
        return _apply_params(value, params)
    source = _LAMBDA.sub('lam', text.strip())
    if not source:
        raise ParseError('empty scalar')
    local_dict = {'mu': SYMBOLS['mu'], 'lam': SYMBOLS['lam'], 't': SYMBOLS['t'], 'i': I}
    try:
        expr = parse_expr(source, local_dict=local_dict, transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, SympifyError, TokenError, AttributeError) as exc:
        raise ParseError(f'cannot parse scalar {text!r}') from exc
    if not isinstance(expr, Basic):
        raise ParseError(f'cannot parse scalar {text!r}')
    unknown = expr.free_symbols - set(SYMBOLS.values())
    if unknown:
        names = ', '.join(sorted(str(symbol) for symbol in unknown))
        raise ParseError(f'unknown symbols in {text!r}: {names}')
    if params:
        expr = expr.subs({
            SYMBOLS[_symbol_name(name)]: Scalar.coerce(value).to_sympy()
            for name, value in params.items()
        })
    return Scalar.from_sympy(expr)


def _apply_params(value: Scalar, params: dict | None) -> Scalar:
    for name, replacement in (params or {}).items():
        value = value.subs(name, replacement)
    return value


# Rendering

def _render_rational(coeff) -> str:
    numerator, denominator = int(coeff.numerator), int(coeff.denominator)
    return str(numerator) if denominator == 1 else f'{numerator}/{denominator}'


def _render_monomial(monom) -> str:
    parts = []
    for name, power in zip(DISPLAY_NAMES, monom):
        if power == 1:
            parts.append(name)
        elif power > 1:
            parts.append(f'{name}^{power}')
    return '*'.join(parts)


def _render_terms(poly) -> tuple[str, int]:
    terms = sorted(poly.terms(), key=lambda term: (sum(term[0]), term[0]))
    pieces = []
    for monom, coeff in terms:
        variables = _render_monomial(monom)
        if not variables:
            piece = _render_rational(coeff)
        elif coeff == 1:
            piece = variables
        elif coeff == -1:
            piece = f'-{variables}'
        else:
            piece = f'{_render_rational(coeff)}*{variables}'
        if pieces and not piece.startswith('-'):
            piece = f'+{piece}'
        pieces.append(piece)
    return ''.join(pieces), len(terms)


def _render_polynomial(poly) -> str:
    text, count = _render_terms(poly)
    return text if count else '0'


def _render_factor(poly) -> tuple[str, bool]:
    constant = poly.coeff(1)
    flipped = bool(constant) and constant < 0
    if flipped:
        poly = -poly
    text, count = _render_terms(poly)
    return (f'({text})' if count > 1 else text), flipped


def _render_product(factors) -> tuple[list[str], int]:
    sign = 1
    rendered = []
    for poly, power in factors:
        text, flipped = _render_factor(poly)
        if flipped and power % 2:
            sign = -sign
        rendered.append((max(sum(monom) for monom in poly.monoms()), text, power))
    rendered.sort(key=lambda item: (item[0], item[1]))
    return [text if power == 1 else f'{text}^{power}' for _, text, power in rendered], sign


def _render_fraction(value) -> str:
    if not value:
        return '0'
    numerator_coeff, numerator_factors = value.numer.factor_list()
    denominator_coeff, denominator_factors = value.denom.factor_list()
    numerator_parts, numerator_sign = _render_product(numerator_factors)
    denominator_parts, denominator_sign = _render_product(denominator_factors)
    coeff = QQ.convert(numerator_coeff) / QQ.convert(denominator_coeff)
    sign = numerator_sign * denominator_sign
    if coeff < 0:
        sign, coeff = -sign, -coeff
    numerator, denominator = int(coeff.numerator), int(coeff.denominator)
    if numerator != 1 or not numerator_parts:
        numerator_parts.insert(0, str(numerator))
    if denominator != 1:
        denominator_parts.insert(0, str(denominator))
    text = '*'.join(numerator_parts)
    if len(numerator_parts) == 1 and not denominator_parts and sign > 0 and text.endswith(')'):
        # a lone sum needs no parentheses
        text = text[1:-1]
    if denominator_parts:
        if len(denominator_parts) == 1:
            text = f'{text}/{denominator_parts[0]}'
        else:
            text = f'{text}/({"*".join(denominator_parts)})'
    return f'-{text}' if sign < 0 else text


ZERO = Scalar()
ONE = Scalar(FIELD.one)
IMAGINARY_UNIT = Scalar(FIELD.zero, FIELD.one)
MU_SCALAR = Scalar(MU)
LAMBDA_SCALAR = Scalar(LAM)
T_SCALAR = Scalar(T)


def scalar_eval(value: Scalar, mu0) -> Scalar:
    """Evaluate at a rational mu; the result keeps lambda and t symbolic."""
    return Scalar.coerce(value).evaluate(mu0)
