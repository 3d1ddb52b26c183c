"""
Finite linear combinations over exact scalars.

Every algebra element, tensor and form in the engine is a Combination keyed
by the basis keys of its algebra: tuples of generator indices for words,
tuples of such tuples for tensors.
"""
from collections.abc import Callable, Iterable, Mapping

from apps.algebra.services.scalars import ONE, ZERO, Scalar


def _sort_key(key):
    if isinstance(key, tuple):
        return (len(key), tuple(_sort_key(part) for part in key))
    return (0, key)


class Combination(Mapping):
    """Immutable mapping from basis keys to nonzero Scalars."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Mapping | Iterable | None = None):
        cleaned = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                coeff = Scalar.coerce(coeff)
                if key in cleaned:
                    coeff = cleaned[key] + coeff
                if coeff:
                    cleaned[key] = coeff
                else:
                    cleaned.pop(key, None)
        self._terms = cleaned

    @classmethod
    def monomial(cls, key, coeff=ONE) -> 'Combination':
        return cls({key: coeff})

    @classmethod
    def _raw(cls, terms: dict) -> 'Combination':
        combination = cls.__new__(cls)
        combination._terms = terms
        return combination

    # Mapping protocol

    def __getitem__(self, key):
        return self._terms[key]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, key) -> Scalar:
        return self._terms.get(key, ZERO)

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda item: _sort_key(item[0]))

    # Vector space

    def __add__(self, other: 'Combination') -> 'Combination':
        if not other:
            return self
        if not self:
            return other
        accumulator = Accumulator(self)
        accumulator.add(other)
        return accumulator.result()

    def __neg__(self) -> 'Combination':
        return Combination._raw({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other: 'Combination') -> 'Combination':
        return self + (-other)

    def scale(self, factor) -> 'Combination':
        factor = Scalar.coerce(factor)
        if not factor:
            return ZERO_COMBINATION
        if factor == ONE:
            return self
        return Combination._raw({key: coeff * factor for key, coeff in self._terms.items()})

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Combination):
            return NotImplemented
        return not (self - other)._terms

    def __hash__(self):
        return hash(frozenset(self._terms))

    def conjugate(self) -> 'Combination':
        return Combination._raw({key: coeff.conjugate() for key, coeff in self._terms.items()})

    def linear_map(self, image: Callable) -> 'Combination':
        """Extend key -> Combination linearly."""
        accumulator = Accumulator()
        for key, coeff in self._terms.items():
            accumulator.add(image(key), coeff)
        return accumulator.result()

    def antilinear_map(self, image: Callable) -> 'Combination':
        accumulator = Accumulator()
        for key, coeff in self._terms.items():
            accumulator.add(image(key), coeff.conjugate())
        return accumulator.result()

    def map_keys(self, rename: Callable) -> 'Combination':
        return Combination((rename(key), coeff) for key, coeff in self._terms.items())

    def filter_keys(self, keep: Callable) -> 'Combination':
        return Combination._raw({key: c for key, c in self._terms.items() if keep(key)})

    def tensor(self, other: 'Combination', join: Callable = lambda a, b: (a, b)) -> 'Combination':
        accumulator = Accumulator()
        for left, left_coeff in self._terms.items():
            for right, right_coeff in other._terms.items():
                accumulator.add_term(join(left, right), left_coeff * right_coeff)
        return accumulator.result()

    def subs(self, name: str, value) -> 'Combination':
        return Combination((key, coeff.subs(name, value)) for key, coeff in self._terms.items())

    def diff_t(self) -> 'Combination':
        return Combination((key, coeff.diff_t()) for key, coeff in self._terms.items())

    def integrate_t(self) -> 'Combination':
        return Combination((key, coeff.integrate_t()) for key, coeff in self._terms.items())

    def __repr__(self):
        inner = ', '.join(f'{key!r}: {coeff.render()}' for key, coeff in self.sorted_items())
        return f'Combination({{{inner}}})'


ZERO_COMBINATION = Combination()


class Accumulator:
    """Mutable sum used while building a Combination."""

    __slots__ = ('_terms',)

    def __init__(self, initial: Combination | None = None):
        self._terms = dict(initial._terms) if initial else {}

    def add_term(self, key, coeff: Scalar):
        if key in self._terms:
            total = self._terms[key] + coeff
            if total:
                self._terms[key] = total
            else:
                del self._terms[key]
        elif coeff:
            self._terms[key] = coeff

    def add(self, combination: Combination, factor: Scalar = ONE):
        if factor == ONE:
            for key, coeff in combination._terms.items():
                self.add_term(key, coeff)
        elif factor:
            for key, coeff in combination._terms.items():
                self.add_term(key, coeff * factor)

    def result(self) -> Combination:
        return Combination._raw(self._terms)


def join_labels(parts: Iterable[str], separator: str = '*') -> str:
    """Join factor labels; a factor ending in '*' is parenthesized before a '*' separator."""
    parts = list(parts)
    if not separator.startswith('*'):
        return separator.join(parts)
    return separator.join(
        f'({part})' if part.endswith('*') and index < len(parts) - 1 else part for index, part in enumerate(parts)
    )


def render_combination(combination: Combination, name: Callable[[object], str]) -> str:
    """
    Render in the scalar grammar, e.g. "mu*(1+mu^2)*em*ep".

    Args:
        combination: The element to render
        name: Maps a basis key to its label; the unit key must render as "1"
    """
    if not combination:
        return '0'
    pieces = []
    for key, coeff in combination.sorted_items():
        label = name(key)
        text = coeff.render()
        negative = coeff.is_real and text.startswith('-')
        body = text[1:] if negative else text
        if not coeff.is_real:
            body = f'({body})'
        if label == '1':
            term = body
        elif body == '1':
            term = label
        else:
            term = f'{body}*{label}'
        if not pieces:
            pieces.append(f'-{term}' if negative else term)
        else:
            pieces.append(f' - {term}' if negative else f' + {term}')
    return ''.join(pieces)
