"""
Presented Hopf *-algebras.

An algebra is given by generators, oriented rewrite rules and the structure
maps on generators. Elements are Combinations over normal words (tuples of
generator indices); tensors of n legs are Combinations over n-tuples of normal
words. Rewriting always contracts the leftmost redex, and confluence of the
rules is checked when a presentation is built.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

from apps.algebra.exceptions import DomainMismatchError, NonConfluentError, ParseError
from apps.algebra.services.graded import GradedAlgebra
from apps.algebra.services.linear import Accumulator, Combination, render_combination
from apps.algebra.services.packs import load_pack, read_pack_file, require
from apps.algebra.services.reports import ValidationReport
from apps.algebra.services.scalars import ONE, ZERO, Scalar, parse_scalar

logger = logging.getLogger(__name__)

TENSOR_SEPARATOR = ' (x) '
GROUP_ALIASES = {'u1-line': 'u1'}


class HopfPresentation(GradedAlgebra):
    """Hopf *-algebra given by generators, rewrite rules and structure tables."""

    def __init__(self, name: str, generators: list[str], star: dict, rules: list,
                 coproduct: dict, counit: dict, antipode: dict):
        super().__init__()
        self.name = name
        self.generators = tuple(generators)
        self.index = {generator: position for position, generator in enumerate(self.generators)}
        self.star_letters = tuple(self.index[star[generator]] for generator in self.generators)
        self.rules = tuple(rules)
        self._rules_by_letter = {}
        for lhs, rhs in self.rules:
            self._rules_by_letter.setdefault(lhs[0], []).append((lhs, rhs))
        self._normal = {}
        self._coproducts = {}
        self._antipodes = {}
        self._counit_letters = tuple(Scalar.coerce(counit[g]) for g in self.generators)
        self._antipode_letters = tuple(self.normal(antipode[g]) for g in self.generators)
        self._coproduct_letters = tuple(self.tensor_normalize(coproduct[g]) for g in self.generators)
        self.check_confluence()

    def __repr__(self):
        return f'HopfPresentation({self.name!r})'

    # Words

    def degree(self, key) -> int:
        return 0

    def label(self, key) -> str:
        if not key:
            return '1'
        return '.'.join(self.generators[letter] for letter in key)

    def letters(self, *names: str) -> tuple:
        try:
            return tuple(self.index[name] for name in names)
        except KeyError as exc:
            raise ParseError(f'{self.name} has no generator {exc.args[0]!r}') from exc

    def el(self, *names: str) -> 'HopfElement':
        return HopfElement(self, self.word(*names))

    def word(self, *names: str) -> Combination:
        """Normal form of the product of the named generators."""
        return self.normal_word(self.letters(*names))

    def element(self, terms) -> Combination:
        """Build an element from [(coefficient, [generator names]), ...]."""
        accumulator = Accumulator()
        for coeff, names in terms:
            accumulator.add(self.word(*names), parse_scalar(coeff))
        return accumulator.result()

    def _find_redex(self, word: tuple):
        for start, letter in enumerate(word):
            for lhs, rhs in self._rules_by_letter.get(letter, ()):
                if word[start:start + len(lhs)] == lhs:
                    return start, lhs, rhs
        return None

    def is_normal(self, word: tuple) -> bool:
        return self._find_redex(word) is None

    def normal_word(self, word: tuple) -> Combination:
        cached = self._normal.get(word)
        if cached is not None:
            return cached
        redex = self._find_redex(word)
        if redex is None:
            result = Combination.monomial(word)
        else:
            start, lhs, rhs = redex
            result = self._rewrite_at(word, start, len(lhs), rhs)
        self._normal[word] = result
        return result

    def _rewrite_at(self, word: tuple, start: int, length: int, rhs: Combination) -> Combination:
        prefix, suffix = word[:start], word[start + length:]
        return rhs.linear_map(lambda middle: self.normal_word(prefix + middle + suffix))

    def normal(self, x: Combination) -> Combination:
        return x.linear_map(self.normal_word)

    def _mul_keys(self, left, right) -> Combination:
        return self.normal_word(left + right)

    def monomials(self, max_length: int) -> list:
        """All normal words of length at most max_length, shortest first."""
        words = [()]
        layer = [()]
        for _ in range(max_length):
            layer = [
                word + (letter,) for word in layer for letter in range(len(self.generators))
                if self.is_normal(word + (letter,))
            ]
            words.extend(layer)
        return words

    def check_confluence(self):
        """Resolve every critical overlap of the rules; raise on a mismatch."""
        for overlap, left, right in self.critical_pairs():
            if left != right:
                raise NonConfluentError(self.label(overlap), self.render(left), self.render(right))
        logger.debug(f'{self.name}: {len(self.rules)} rewrite rules are confluent')

    def critical_pairs(self):
        for first, (lhs, rhs) in enumerate(self.rules):
            for second, (other_lhs, other_rhs) in enumerate(self.rules):
                for size in range(1, min(len(lhs), len(other_lhs))):
                    if lhs[-size:] == other_lhs[:size]:
                        overlap = lhs + other_lhs[size:]
                        yield (
                            overlap,
                            self._rewrite_at(overlap, 0, len(lhs), rhs),
                            self._rewrite_at(overlap, len(lhs) - size, len(other_lhs), other_rhs),
                        )
                if first == second or len(other_lhs) > len(lhs):
                    continue
                for start in range(len(lhs) - len(other_lhs) + 1):
                    if lhs[start:start + len(other_lhs)] == other_lhs:
                        yield (
                            lhs,
                            self._rewrite_at(lhs, 0, len(lhs), rhs),
                            self._rewrite_at(lhs, start, len(other_lhs), other_rhs),
                        )

    # Structure maps

    def star_key(self, key) -> Combination:
        return self.normal_word(tuple(self.star_letters[letter] for letter in reversed(key)))

    def counit_word(self, word: tuple) -> Scalar:
        value = ONE
        for letter in word:
            value = value * self._counit_letters[letter]
            if not value:
                return ZERO
        return value

    def counit(self, x: Combination) -> Scalar:
        total = ZERO
        for word, coeff in x.items():
            total = total + coeff * self.counit_word(word)
        return total

    def antipode_word(self, word: tuple) -> Combination:
        cached = self._antipodes.get(word)
        if cached is None:
            if not word:
                cached = self.one()
            else:
                cached = self.mul(self._antipode_letters[word[-1]], self.antipode_word(word[:-1]))
            self._antipodes[word] = cached
        return cached

    def antipode(self, x: Combination) -> Combination:
        return x.linear_map(self.antipode_word)

    def coproduct_word(self, word: tuple) -> Combination:
        """Letterwise coproduct; the word need not be normal."""
        cached = self._coproducts.get(word)
        if cached is None:
            if not word:
                cached = Combination.monomial(((), ()))
            else:
                cached = self.tensor_mul(
                    self.coproduct_word(word[:-1]), self._coproduct_letters[word[-1]]
                )
            self._coproducts[word] = cached
        return cached

    def coproduct(self, x: Combination) -> Combination:
        return x.linear_map(self.coproduct_word)

    def comultiply(self, x: Combination, legs: int = 2) -> Combination:
        """(legs-1)-fold coproduct as a canonical tensor with `legs` legs."""
        if legs < 2:
            raise ValueError('comultiply needs at least two legs')
        result = self.coproduct(x)
        for count in range(2, legs):
            result = self.expand_leg(result, count - 1)
        return result

    def expand_leg(self, x: Combination, position: int) -> Combination:
        """Apply the coproduct to one leg of a tensor."""
        accumulator = Accumulator()
        for key, coeff in x.items():
            for (left, right), inner in self.coproduct_word(key[position]).items():
                accumulator.add_term(key[:position] + (left, right) + key[position + 1:], coeff * inner)
        return accumulator.result()

    def adjoint_ad(self, x: Combination) -> Combination:
        """ad(a) = a(2) (x) kappa(a(1)) a(3)."""
        accumulator = Accumulator()
        for (first, second, third), coeff in self.comultiply(x, 3).items():
            right = self.mul(self.antipode_word(first), Combination.monomial(third))
            accumulator.add(right.map_keys(lambda word: (second, word)), coeff)
        return accumulator.result()

    # Tensors

    def tensor_mul(self, x: Combination, y: Combination) -> Combination:
        accumulator = Accumulator()
        for left, left_coeff in x.items():
            for right, right_coeff in y.items():
                legs = Combination.monomial((), left_coeff * right_coeff)
                for leg_left, leg_right in zip(left, right):
                    legs = legs.tensor(self.normal_word(leg_left + leg_right), lambda a, b: a + (b,))
                accumulator.add(legs)
        return accumulator.result()

    def tensor_normalize(self, x: Combination) -> Combination:
        """Normalize every leg of a tensor whose legs may be arbitrary words."""
        accumulator = Accumulator()
        for key, coeff in x.items():
            legs = Combination.monomial((), coeff)
            for leg in key:
                legs = legs.tensor(self.normal_word(leg), lambda a, b: a + (b,))
            accumulator.add(legs)
        return accumulator.result()

    def tensor_expand(self, terms) -> Combination:
        """
        Expand weighted pure tensors into the canonical tensor basis.

        Args:
            terms: Iterable of (weight, [leg, ...]) where each leg is a
                Combination of this algebra

        Returns:
            Canonical tensor Combination
        """
        accumulator = Accumulator()
        for weight, legs in terms:
            product = Combination.monomial((), Scalar.coerce(weight))
            for leg in legs:
                product = product.tensor(self.normal(leg), lambda a, b: a + (b,))
            accumulator.add(product)
        return accumulator.result()

    def tensor_map(self, x: Combination, maps) -> Combination:
        """Apply one linear word map per leg."""
        accumulator = Accumulator()
        for key, coeff in x.items():
            product = Combination.monomial((), coeff)
            for leg, leg_map in zip(key, maps):
                image = leg_map(leg) if leg_map else Combination.monomial(leg)
                product = product.tensor(image, lambda a, b: a + (b,))
            accumulator.add(product)
        return accumulator.result()

    def tensor_label(self, key) -> str:
        return TENSOR_SEPARATOR.join(self.label(leg) for leg in key)

    def render_tensor(self, x: Combination) -> str:
        return render_combination(x, self.tensor_label)

    # Axioms

    def validate_axioms(self, cap: int = 3) -> ValidationReport:
        """
        Check the Hopf *-algebra axioms on all normal words of length <= cap and
        the compatibility of the structure maps with every rewrite rule.
        """
        report = ValidationReport(f'hopf:{self.name}')
        for lhs, rhs in self.rules:
            witness = f'{self.label(lhs)} -> {self.render(rhs)}'
            report.record('relation_coproduct', self.coproduct_word(lhs) == self.coproduct(rhs), witness)
            report.record('relation_counit', self.counit_word(lhs) == self.counit(rhs), witness)
            report.record('relation_antipode', self.antipode_word(lhs) == self.antipode(rhs), witness)
            report.record('relation_star', self.star_key(lhs) == self.star(rhs), witness)
        for word in self.monomials(cap):
            element = Combination.monomial(word)
            witness = self.label(word)
            delta = self.coproduct(element)
            report.record(
                'coassociativity', self.expand_leg(delta, 0) == self.expand_leg(delta, 1), witness
            )
            left_counit = Accumulator()
            right_counit = Accumulator()
            for (left, right), coeff in delta.items():
                left_counit.add_term(right, coeff * self.counit_word(left))
                right_counit.add_term(left, coeff * self.counit_word(right))
            report.record(
                'counit',
                left_counit.result() == element and right_counit.result() == element,
                witness,
            )
            unit = self.scalar(self.counit_word(word))
            left_antipode = Accumulator()
            right_antipode = Accumulator()
            for (left, right), coeff in delta.items():
                left_antipode.add(self.mul(self.antipode_word(left), Combination.monomial(right)), coeff)
                right_antipode.add(self.mul(Combination.monomial(left), self.antipode_word(right)), coeff)
            report.record(
                'antipode',
                left_antipode.result() == unit and right_antipode.result() == unit,
                witness,
            )
            starred = self.tensor_map(delta.conjugate(), [self.star_key, self.star_key])
            report.record('coproduct_star', self.coproduct(self.star(element)) == starred, witness)
            report.record(
                'antipode_star',
                self.antipode(self.star(self.antipode(self.star(element)))) == element,
                witness,
            )
        logger.info(f'{self.name}: axiom sweep at cap {cap}, {report.counts()}')
        return report


@dataclass(frozen=True)
class HopfElement:
    """Element bound to its presentation, so mixed products are refused."""

    algebra: HopfPresentation
    terms: Combination

    def _check(self, other: 'HopfElement'):
        if not isinstance(other, HopfElement) or other.algebra is not self.algebra:
            other_name = getattr(getattr(other, 'algebra', None), 'name', type(other).__name__)
            raise DomainMismatchError(f'cannot combine elements of {self.algebra.name} and {other_name}')

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return HopfElement(self.algebra, self.terms.scale(other))
        self._check(other)
        return HopfElement(self.algebra, self.algebra.mul(self.terms, other.terms))

    def __rmul__(self, other):
        return HopfElement(self.algebra, self.terms.scale(other))

    def __add__(self, other):
        self._check(other)
        return HopfElement(self.algebra, self.terms + other.terms)

    def __sub__(self, other):
        self._check(other)
        return HopfElement(self.algebra, self.terms - other.terms)

    def __neg__(self):
        return HopfElement(self.algebra, -self.terms)

    def __pow__(self, exponent: int):
        return HopfElement(self.algebra, self.algebra.power(self.terms, exponent))

    def __eq__(self, other):
        if isinstance(other, HopfElement):
            return other.algebra is self.algebra and other.terms == self.terms
        if isinstance(other, Combination):
            return other == self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra.name, self.terms))

    def __str__(self):
        return self.algebra.render(self.terms)


def multiply(a: HopfElement, b: HopfElement) -> HopfElement:
    return a * b


def structure_map(kind: str, a: HopfElement):
    """Counit (a Scalar), antipode or star of an element."""
    algebra = a.algebra
    if kind == 'counit':
        return algebra.counit(a.terms)
    if kind == 'antipode':
        return HopfElement(algebra, algebra.antipode(a.terms))
    if kind == 'star':
        return HopfElement(algebra, algebra.star(a.terms))
    raise ValueError(f'unknown structure map {kind!r}')


class HopfMorphism:
    """Hopf *-algebra morphism fixed by its values on generators."""

    def __init__(self, name: str, source: HopfPresentation, target: HopfPresentation, images: dict):
        self.name = name
        self.source = source
        self.target = target
        self._letters = tuple(target.normal(images[g]) for g in source.generators)
        self._words = {}

    def apply_word(self, word: tuple) -> Combination:
        cached = self._words.get(word)
        if cached is None:
            if not word:
                cached = self.target.one()
            else:
                cached = self.target.mul(self.apply_word(word[:-1]), self._letters[word[-1]])
            self._words[word] = cached
        return cached

    def __call__(self, x: Combination) -> Combination:
        return x.linear_map(self.apply_word)

    def apply_tensor(self, x: Combination) -> Combination:
        return self.target.tensor_map(x, [self.apply_word] * len(next(iter(x), ())))

    def validate(self, cap: int = 3) -> ValidationReport:
        """Check that the map respects relations and intertwines the structure maps."""
        source, target = self.source, self.target
        report = ValidationReport(f'morphism:{self.name}')
        for lhs, rhs in source.rules:
            witness = f'{source.label(lhs)} -> {source.render(rhs)}'
            report.record('relation', self.apply_word(lhs) == self(rhs), witness)
        for word in source.monomials(cap):
            element = Combination.monomial(word)
            image = self.apply_word(word)
            witness = source.label(word)
            report.record('counit', target.counit(image) == source.counit_word(word), witness)
            report.record(
                'coproduct',
                target.coproduct(image) == self.apply_tensor(source.coproduct_word(word)),
                witness,
            )
            report.record('antipode', target.antipode(image) == self(source.antipode_word(word)), witness)
            report.record('star', target.star(image) == self(source.star(element)), witness)
        return report


# Pack loading

def _parse_element(algebra: HopfPresentation, entries, pack: str) -> Combination:
    try:
        return algebra.element((entry[0], entry[1]) for entry in entries)
    except (TypeError, IndexError) as exc:
        raise ParseError(f'pack {pack}: malformed element {entries!r}') from exc


def _parse_words(index: dict, names, pack: str) -> tuple:
    try:
        return tuple(index[name] for name in names)
    except KeyError as exc:
        raise ParseError(f'pack {pack}: unknown generator {exc.args[0]!r}') from exc


def presentation_from_pack(data: dict) -> HopfPresentation:
    """Build and check a presentation from parsed group pack data."""
    pack = data.get('name', '<group>')
    generators = list(require(data, 'generators', pack))
    index = {name: position for position, name in enumerate(generators)}
    star = require(data, 'star', pack)
    missing = [g for g in generators if g not in star or star[g] not in index]
    if missing:
        raise ParseError(f'pack {pack}: star partner missing for {", ".join(missing)}')

    def terms(entries, legs):
        result = {}
        for entry in entries:
            if len(entry) != legs + 1:
                raise ParseError(f'pack {pack}: expected {legs} legs in {entry!r}')
            key = tuple(_parse_words(index, names, pack) for names in entry[1:])
            key = key[0] if legs == 1 else key
            result[key] = result.get(key, ZERO) + parse_scalar(entry[0])
        return Combination(result)

    rules = []
    for relation in require(data, 'relations', pack):
        lhs = _parse_words(index, relation['lhs'], pack)
        if not lhs:
            raise ParseError(f'pack {pack}: empty left-hand side')
        rules.append((lhs, terms(relation.get('rhs', []), 1)))
    coproduct = {g: terms(entries, 2) for g, entries in require(data, 'coproduct', pack).items()}
    antipode = {g: terms(entries, 1) for g, entries in require(data, 'antipode', pack).items()}
    counit = {g: parse_scalar(value) for g, value in require(data, 'counit', pack).items()}
    for table_name, table in (('coproduct', coproduct), ('antipode', antipode), ('counit', counit)):
        absent = [g for g in generators if g not in table]
        if absent:
            raise ParseError(f'pack {pack}: {table_name} missing for {", ".join(absent)}')
    presentation = HopfPresentation(pack, generators, star, rules, coproduct, counit, antipode)
    logger.info(f'Loaded group {pack} with {len(generators)} generators and {len(rules)} rules')
    return presentation


@lru_cache(maxsize=None)
def _load_builtin_group(pack_id: str) -> HopfPresentation:
    return presentation_from_pack(load_pack('algebra', pack_id, kind='group'))


def load_group(pack_id: str = 'suq2', pack_file: str | None = None) -> HopfPresentation:
    """
    Load a group pack by id (built-ins: suq2, u1, u1-line) or from a file.
    """
    if pack_file:
        return presentation_from_pack(read_pack_file(pack_file))
    return _load_builtin_group(GROUP_ALIASES.get(pack_id, pack_id))


@lru_cache(maxsize=None)
def load_restriction(source_id: str = 'suq2', target_id: str = 'u1') -> HopfMorphism:
    """Restriction morphism declared in the source pack, e.g. j: suq2 -> u1."""
    source = load_group(source_id)
    target = load_group(target_id)
    data = load_pack('algebra', GROUP_ALIASES.get(source_id, source_id), kind='group')
    restrictions = data.get('restrictions', {})
    table = restrictions.get(target.name)
    if table is None:
        raise ParseError(f'pack {source.name} declares no restriction to {target.name}')
    images = {}
    for generator in source.generators:
        if generator not in table:
            raise ParseError(f'restriction {source.name}->{target.name} misses {generator}')
        images[generator] = _parse_element(target, table[generator], source.name)
    return HopfMorphism(f'{source.name}->{target.name}', source, target, images)


def restrict_j(b: Combination) -> Combination:
    """The restriction j from SU_mu(2) to U(1)."""
    return load_restriction('suq2', 'u1')(b)


def same_algebra(left: GradedAlgebra, right: GradedAlgebra):
    if left is not right:
        raise DomainMismatchError(f'{left.name} and {right.name} are different algebras')
