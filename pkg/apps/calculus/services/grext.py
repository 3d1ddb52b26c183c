"""
Graded quotients of tensor algebras.

A GradedQuotient is the free algebra on a finite set of graded letters modulo
a two-sided ideal that is materialized degree by degree as an EchelonSpace.
Normal words are the words that are not pivots of the ideal rows, so equality
of elements is equality of reduced Combinations.

InvariantForms specializes this to the invariant forms of a calculus, with
the ideal either generated by the degree-two germs of the calculus ideal
(universal envelope) or given by the kernels of the braided antisymmetrizers
(exterior algebra).
"""
import logging
from functools import lru_cache
from itertools import permutations

from apps.algebra.exceptions import CapExceededError, DomainMismatchError, ParseError
from apps.algebra.services.graded import GradedAlgebra, sign
from apps.algebra.services.hopf import HopfPresentation
from apps.algebra.services.linear import (
    ZERO_COMBINATION,
    Accumulator,
    Combination,
    _sort_key,
    join_labels,
    render_combination,
)
from apps.algebra.services.reports import ValidationReport
from apps.algebra.services.scalars import ONE
from apps.calculus.services.focalc import CalculusSpec
from apps.calculus.services.linalg import EchelonSpace, kernel

logger = logging.getLogger(__name__)

QUOTIENT_MODES = ('envelope', 'exterior')


class GradedQuotient(GradedAlgebra):
    """
    Free graded algebra on letters modulo a degree-wise two-sided ideal.

    Attributes:
        letters: Letter names; keys are tuples of letter indices
        letter_degrees: Degree of each letter
        relations: Ideal generators by degree
        hopf: Hopf algebra acting on the right through letter_circ, if any
        cohopf: Hopf algebra coacting through letter_coaction; defaults to hopf
    """

    def __init__(self, name: str, letters: list[str], letter_degrees: list[int] | None = None,
                 relations: dict | None = None, cap: int = 4, truncate: bool = False,
                 letter_d=None, letter_star=None, hopf: HopfPresentation | None = None,
                 letter_circ=None, letter_coaction=None, separator: str = '*',
                 cohopf: HopfPresentation | None = None):
        super().__init__(cap=cap, truncate=truncate)
        self.name = name
        self.letters = tuple(letters)
        self.index = {letter: position for position, letter in enumerate(self.letters)}
        self.letter_degrees = tuple(letter_degrees or [1] * len(self.letters))
        self.relations = {degree: list(vectors) for degree, vectors in (relations or {}).items()}
        self.hopf = hopf
        self.cohopf = cohopf or hopf
        self.separator = separator
        self._letter_d = letter_d
        self._letter_star = letter_star
        self._letter_circ = letter_circ
        self._letter_coaction = letter_coaction
        self._spaces = {}
        self._words = {}
        self._normal = {}
        self._circ = {}
        self._coactions = {}

    def __repr__(self):
        return f'{type(self).__name__}({self.name!r}, cap={self.cap})'

    # Words

    def degree(self, key) -> int:
        return sum(self.letter_degrees[letter] for letter in key)

    def label(self, key) -> str:
        if not key:
            return '1'
        return join_labels((self.letters[letter] for letter in key), self.separator)

    def letter(self, name: str) -> Combination:
        try:
            return Combination.monomial((self.index[name],))
        except KeyError as exc:
            raise ParseError(f'{self.name} has no letter {name!r}') from exc

    def word(self, *names: str) -> Combination:
        return self.normal_word(tuple(self.index[name] for name in names))

    def words(self, degree: int) -> list[tuple]:
        """All words of the given total degree, in basis order."""
        cached = self._words.get(degree)
        if cached is None:
            if degree == 0:
                cached = [()]
            else:
                cached = []
                for letter, letter_degree in enumerate(self.letter_degrees):
                    if letter_degree <= degree:
                        cached.extend(word + (letter,) for word in self.words(degree - letter_degree))
                cached.sort(key=_sort_key)
            self._words[degree] = cached
        return cached

    # Ideal

    def ideal_space(self, degree: int) -> EchelonSpace:
        space = self._spaces.get(degree)
        if space is None:
            if self.cap is not None and degree > self.cap:
                raise CapExceededError(degree, self.cap)
            space = self._build_ideal(degree)
            self._spaces[degree] = space
            if degree > 0 and all(d == 1 for d in self.letter_degrees) and \
                    space.dimension == len(self.words(degree)):
                if self.top is None or self.top > degree - 1:
                    self.top = degree - 1
                    logger.debug(f'{self.name}: zero from degree {degree} on')
            logger.debug(f'{self.name}: degree {degree} ideal of dimension {space.dimension}')
        return space

    def _build_ideal(self, degree: int) -> EchelonSpace:
        space = EchelonSpace(f'{self.name}[{degree}]')
        space.extend(self.relations.get(degree, ()))
        for letter, letter_degree in enumerate(self.letter_degrees):
            lower = degree - letter_degree
            if lower < 1 or not self._has_relations_below(lower):
                continue
            for row in self.ideal_space(lower).basis():
                space.add(row.map_keys(lambda word, letter=letter: (letter,) + word))
                space.add(row.map_keys(lambda word, letter=letter: word + (letter,)))
        return space

    def _has_relations_below(self, degree: int) -> bool:
        return any(d <= degree and vectors for d, vectors in self.relations.items())

    def ideal_basis(self, degree: int) -> list[Combination]:
        return self.ideal_space(degree).basis()

    def basis(self, degree: int) -> list:
        if self.top is not None and degree > self.top:
            return []
        if degree == 0:
            return [()]
        return self.ideal_space(degree).complement(self.words(degree))

    def dimensions(self, up_to: int | None = None) -> list[int]:
        up_to = self.cap if up_to is None else up_to
        return [len(self.basis(degree)) for degree in range(up_to + 1)]

    def relation_rows(self, degree: int) -> list[tuple]:
        """Ideal rows as (pivot word, value of the pivot in normal words)."""
        rows = []
        space = self.ideal_space(degree)
        for pivot in space.pivots:
            rest = space.row(pivot) - Combination.monomial(pivot)
            rows.append((pivot, -rest))
        return rows

    def render_relations(self, degree: int) -> list[str]:
        return [f'{self.label(pivot)} = {self.render(value)}' for pivot, value in self.relation_rows(degree)]

    # Normal forms

    def normal_word(self, word: tuple) -> Combination:
        cached = self._normal.get(word)
        if cached is not None:
            return cached
        degree = self.degree(word)
        if self.top is not None and degree > self.top:
            result = ZERO_COMBINATION
        elif self.cap is not None and degree > self.cap:
            self._scan_top()
            if self.top is not None and degree > self.top:
                result = ZERO_COMBINATION
            elif self.truncate:
                result = ZERO_COMBINATION
            else:
                raise CapExceededError(degree, self.cap)
        else:
            result = self.ideal_space(degree).reduce(Combination.monomial(word))
        self._normal[word] = result
        return result

    def _scan_top(self):
        if self.top is None and self.cap is not None:
            for degree in range(1, self.cap + 1):
                self.ideal_space(degree)
                if self.top is not None:
                    break

    def normal(self, x: Combination) -> Combination:
        return x.linear_map(self.normal_word)

    def mul_keys(self, left, right) -> Combination:
        if self.cap is not None and self.top is None and self.degree(left) + self.degree(right) > self.cap:
            self._scan_top()
        return super().mul_keys(left, right)

    def _mul_keys(self, left, right) -> Combination:
        return self.normal_word(left + right)

    # Differential and star

    def _d_key(self, key) -> Combination:
        if self._letter_d is None or not key:
            return ZERO_COMBINATION
        accumulator = Accumulator()
        prefix_degree = 0
        for position, letter in enumerate(key):
            image = self._letter_d(letter)
            if image:
                prefix, suffix = key[:position], key[position + 1:]
                accumulator.add(
                    image.linear_map(lambda word, p=prefix, s=suffix: self.normal_word(p + word + s)),
                    ONE if sign(prefix_degree) > 0 else -ONE,
                )
            prefix_degree += self.letter_degrees[letter]
        return accumulator.result()

    def star_key(self, key) -> Combination:
        if self._letter_star is None:
            raise DomainMismatchError(f'{self.name} has no star structure')
        twist = 1
        for first in range(len(key)):
            for second in range(first + 1, len(key)):
                twist *= sign(self.letter_degrees[key[first]], self.letter_degrees[key[second]])
        result = Combination.monomial((), ONE if twist > 0 else -ONE)
        for letter in reversed(key):
            result = result.tensor(self._letter_star(letter), lambda a, b: a + b)
        return self.normal(result)

    # Right action and coaction of the Hopf algebra

    def _letter_circ_word(self, letter: int, word: tuple) -> Combination:
        result = Combination.monomial((letter,))
        for hopf_letter in word:
            result = result.linear_map(lambda key, g=hopf_letter: self._letter_circ(key[0], g))
        return result

    def circ_key(self, key: tuple, hopf_letter: int) -> Combination:
        """Normal form of key o g, through the iterated coproduct of g."""
        cached = self._circ.get((key, hopf_letter))
        if cached is not None:
            return cached
        hopf = self.hopf
        if not key:
            result = Combination.monomial((), hopf.counit_word((hopf_letter,)))
        elif len(key) == 1:
            result = self._letter_circ(key[0], hopf_letter)
        else:
            accumulator = Accumulator()
            for legs, coeff in hopf.comultiply(Combination.monomial((hopf_letter,)), len(key)).items():
                product = Combination.monomial((), coeff)
                for letter, leg in zip(key, legs):
                    product = product.tensor(self._letter_circ_word(letter, leg), lambda a, b: a + b)
                    if not product:
                        break
                accumulator.add(product)
            result = self.normal(accumulator.result())
        self._circ[(key, hopf_letter)] = result
        return result

    def circ_word(self, key: tuple, word: tuple) -> Combination:
        result = Combination.monomial(key)
        for hopf_letter in word:
            result = result.linear_map(lambda k, g=hopf_letter: self.circ_key(k, g))
        return result

    def circ(self, x: Combination, a: Combination) -> Combination:
        accumulator = Accumulator()
        for key, coeff in x.items():
            for word, weight in a.items():
                accumulator.add(self.circ_word(key, word), coeff * weight)
        return accumulator.result()

    def coaction_key(self, key: tuple) -> Combination:
        """Product of the letter coactions, keyed by (normal word, Hopf word)."""
        cached = self._coactions.get(key)
        if cached is not None:
            return cached
        hopf = self.cohopf
        result = Combination.monomial(((), ()))
        for letter in key:
            accumulator = Accumulator()
            for (left, word), coeff in result.items():
                for (form, other), weight in self._letter_coaction(letter).items():
                    accumulator.add(
                        hopf.normal_word(word + other).map_keys(
                            lambda normal, left=left, form=form: (left + form, normal)
                        ),
                        coeff * weight,
                    )
            result = accumulator.result()
        normalized = Accumulator()
        for (word, hopf_word), coeff in result.items():
            for normal, weight in self.normal_word(word).items():
                normalized.add_term((normal, hopf_word), coeff * weight)
        result = normalized.result()
        self._coactions[key] = result
        return result

    def coaction(self, x: Combination) -> Combination:
        return x.linear_map(self.coaction_key)

    def render_coaction(self, x: Combination) -> str:
        return render_combination(
            x, lambda key: f'{self.label(key[0])} (x) {self.cohopf.label(key[1])}'
        )

    # Checks

    def check_ideal(self, report: ValidationReport | None = None) -> ValidationReport:
        """Two-sided closure and d-stability of the ideal rows up to the cap."""
        report = report or ValidationReport(f'quotient:{self.name}')
        top = self.cap if self.top is None else min(self.cap, self.top + 1)
        for degree in range(1, top):
            for row in self.ideal_basis(degree):
                witness = self.render(row)
                for letter in range(len(self.letters)):
                    if degree + self.letter_degrees[letter] > self.cap:
                        continue
                    left = self.normal(row.map_keys(lambda word, l=letter: (l,) + word))
                    right = self.normal(row.map_keys(lambda word, l=letter: word + (l,)))
                    report.record('ideal_two_sided', not left and not right, f'{self.letters[letter]}; {witness}')
                if self._letter_d is not None and degree + 1 <= self.cap:
                    report.record('ideal_d_stable', not row.linear_map(self._d_key), witness)
        return report


class InvariantForms(GradedQuotient):
    """Envelope or exterior algebra of the invariant forms of a calculus."""

    def __init__(self, calculus: CalculusSpec, mode: str = 'envelope', cap: int = 4, truncate: bool = False):
        if mode not in QUOTIENT_MODES:
            raise ParseError(f'unknown quotient mode {mode!r}')
        self.calculus = calculus
        self.mode = mode
        relations = {2: envelope_generators(calculus)} if mode == 'envelope' else {}
        super().__init__(
            f'{calculus.name}:{mode}', list(calculus.basis), relations=relations, cap=cap, truncate=truncate,
            letter_d=lambda letter: calculus.delta_preimage_key((letter,)),
            letter_star=lambda letter: calculus.star_key((letter,)),
            hopf=calculus.group,
            letter_circ=lambda letter, g: calculus.circ_word(letter, (g,)),
            letter_coaction=lambda letter: calculus.varpi_key((letter,)),
        )
        self._antisymmetrized = {}

    def _build_ideal(self, degree: int) -> EchelonSpace:
        if self.mode == 'envelope':
            return super()._build_ideal(degree)
        space = EchelonSpace(f'{self.name}[{degree}]')
        if degree >= 2:
            space.extend(kernel(
                self.calculus.tensor_keys(degree), self.antisymmetrized_key, f'ker A_{degree}'
            ))
        return space

    def antisymmetrized_key(self, key: tuple) -> Combination:
        """A_n on a basis tensor via A_n = (A_(n-1) (x) id) A_(n-1),1."""
        cached = self._antisymmetrized.get(key)
        if cached is None:
            if len(key) <= 1:
                cached = Combination.monomial(key)
            else:
                shuffled = shuffle_antisymmetrizer(self.calculus, Combination.monomial(key), len(key) - 1, 1)
                accumulator = Accumulator()
                for term, coeff in shuffled.items():
                    head = self.antisymmetrized_key(term[:-1])
                    accumulator.add(head.map_keys(lambda k, last=term[-1:]: k + last), coeff)
                cached = accumulator.result()
            self._antisymmetrized[key] = cached
        return cached

    def delta_key(self, key: tuple) -> Combination:
        """Embedded differential of a basis form as a tensor of degree two."""
        if self.calculus.delta_mode == 'section':
            return self.d_key(key)
        return self.calculus.delta_preimage_key(key)

    def delta(self, x: Combination) -> Combination:
        return x.linear_map(self.delta_key)

    def flip_star(self, x: Combination) -> Combination:
        """x1 (x) x2 -> x2* (x) x1*, legwise star without sign."""
        calculus = self.calculus
        accumulator = Accumulator()
        for key, coeff in x.items():
            product = Combination.monomial((), coeff.conjugate())
            for letter in reversed(key):
                product = product.tensor(calculus.star_key((letter,)), lambda a, b: a + b)
            accumulator.add(product)
        return accumulator.result()

    def validate(self) -> ValidationReport:
        """
        Check the graded extension: dga laws on all normal words up to the
        cap, the ideal closure, the embedded differential, the compatibility
        of d with the right action and, for bicovariant calculi, the
        antisymmetrizer identities.
        """
        calculus = self.calculus
        report = ValidationReport(f'graded:{self.name}')
        keys = [key for degree in range(1, self.cap + 1) for key in self.basis(degree)]
        low = [key for key in keys if self.degree(key) <= max(self.cap - 2, 1)]
        self.check_dga(low, report, pairs=[
            (left, right) for left in low for right in low
            if self.degree(left) + self.degree(right) <= self.cap - 1
        ])
        self.check_ideal(report)
        group = calculus.group
        for position in range(calculus.dimension):
            key = (position,)
            witness = calculus.basis[position]
            delta = self.delta_key(key)
            report.record('delta_product', self.normal(delta) == self.d_key(key), witness)
            starred = -self.delta(calculus.star_key(key))
            flipped = self.flip_star(delta)
            if calculus.delta_mode == 'section':
                starred, flipped = self.normal(starred), self.normal(flipped)
            report.record('delta_hermitian', starred == flipped, witness)
            if self.cap >= 2:
                for letter, name in enumerate(group.generators):
                    report.record(
                        'd_circ', self._d_circ_holds(key, letter), f'{witness} o {name}'
                    )
            if calculus.bicovariant:
                left = Accumulator()
                for term, coeff in delta.items():
                    left.add(calculus.varpi_tensor_key(term), coeff)
                right = Accumulator()
                for (form, word), coeff in calculus.varpi_key(key).items():
                    right.add(self.delta_key(form).map_keys(lambda k, w=word: (k, w)), coeff)
                difference = left.result() - right.result()
                if calculus.delta_mode == 'section':
                    difference = self._reduce_first_leg(difference)
                report.record('delta_equivariant', not difference, witness)
        if calculus.bicovariant:
            self._validate_antisymmetrizers(report)
        logger.info(f'{self.name}: dimensions {self.dimensions()}, {report.counts()}')
        return report

    def _reduce_first_leg(self, x: Combination) -> Combination:
        accumulator = Accumulator()
        for (word, hopf_word), coeff in x.items():
            for normal, weight in self.normal_word(word).items():
                accumulator.add_term((normal, hopf_word), coeff * weight)
        return accumulator.result()

    def _d_circ_holds(self, key: tuple, letter: int) -> bool:
        """d(theta o a) = d(theta) o a - pi(a(1))(theta o a(2)) - (theta o a(1)) pi(a(2)) for a 1-form theta."""
        calculus = self.calculus
        group = calculus.group
        element = Combination.monomial((letter,))
        theta = Combination.monomial(key)
        left = self.d(self.circ(theta, element))
        right = Accumulator(self.circ(self.d(theta), element))
        for (first, second), coeff in group.coproduct(element).items():
            right.add(self.mul(calculus.pi_word(first), self.circ(theta, Combination.monomial(second))), -coeff)
            right.add(self.mul(self.circ(theta, Combination.monomial(first)), calculus.pi_word(second)), -coeff)
        return left == right.result()

    def _validate_antisymmetrizers(self, report: ValidationReport):
        calculus = self.calculus
        for generator in envelope_generators(calculus):
            report.record(
                'envelope_in_ker_A2',
                not (generator - calculus.sigma(generator)),
                calculus.render_tensor(generator),
            )
        for key in calculus.tensor_keys(3):
            element = Combination.monomial(key)
            words = [(0, 1, 0), (1, 0, 1)]
            images = [apply_sigma_word(calculus, element, word) for word in words]
            report.record('reduced_word_independence', images[0] == images[1], calculus.tensor_label(key))
        for total in range(2, min(self.cap, 4) + 1):
            for first in range(1, total):
                for key in _sample_keys(calculus, total):
                    element = Combination.monomial(key)
                    report.record(
                        'antisymmetrizer_factorization',
                        antisymmetrizer(calculus, element, total)
                        == antisymmetrizer_factorized(calculus, element, first, total - first),
                        f'k={first}, l={total - first}; {calculus.tensor_label(key)}',
                    )


def _sample_keys(calculus: CalculusSpec, degree: int, limit: int = 81) -> list[tuple]:
    keys = calculus.tensor_keys(degree)
    if len(keys) <= limit:
        return keys
    stride = len(keys) // 16 + 1
    return keys[::stride]


# Envelope ideal

def envelope_generators(calculus: CalculusSpec) -> list[Combination]:
    """
    Degree-two generators of the envelope ideal: the germs
    pi(r(1)) (x) pi(r(2)) of the listed ideal generators, closed under the
    right action. For r in the ideal the germ of r*b is the germ of r acted
    on by b, so this closure spans the whole degree-two part.
    """
    space = EchelonSpace(f'{calculus.name}-envelope')
    queue = []
    for generator in calculus.ideal:
        germ = calculus.germ_square(generator)
        if space.add(germ):
            queue.append(germ)
    while queue:
        vector = queue.pop()
        for letter in range(len(calculus.group.generators)):
            image = calculus.circ_tensor_word(vector, (letter,))
            if space.add(image):
                queue.append(image)
    return space.basis()


def envelope_ideal_basis(calculus: CalculusSpec, degree: int, cap: int = 4) -> list[Combination]:
    return build_invariant_forms(calculus, 'envelope', max(cap, degree)).ideal_basis(degree)


def exterior_ideal_basis(calculus: CalculusSpec, degree: int, cap: int = 4) -> list[Combination]:
    return build_invariant_forms(calculus, 'exterior', max(cap, degree)).ideal_basis(degree)


@lru_cache(maxsize=None)
def build_invariant_forms(calculus: CalculusSpec, mode: str = 'envelope', cap: int = 4,
                          truncate: bool = False) -> InvariantForms:
    logger.info(f'Building the {mode} algebra of {calculus.name} up to degree {cap}')
    return InvariantForms(calculus, mode, cap, truncate)


# Braided antisymmetrizers

def reduced_word(permutation: tuple) -> tuple:
    """
    A reduced word (i1, ..., im) with permutation = s_i1 o ... o s_im, where
    s_i swaps the values i and i+1.
    """
    word = []
    current = list(permutation)
    while True:
        position = {value: place for place, value in enumerate(current)}
        for value in range(len(current) - 1):
            if position[value + 1] < position[value]:
                current[position[value]], current[position[value + 1]] = value + 1, value
                word.append(value)
                break
        else:
            return tuple(word)


def permutation_sign(permutation: tuple) -> int:
    return -1 if len(reduced_word(permutation)) % 2 else 1


def apply_sigma_word(calculus: CalculusSpec, x: Combination, word: tuple, offset: int = 0) -> Combination:
    """sigma_i1 o ... o sigma_im applied to x, the last letter first."""
    for position in reversed(word):
        x = x.linear_map(lambda key, p=position + offset: calculus.sigma_key(key, p))
    return x


def antisymmetrizer(calculus: CalculusSpec, x: Combination, degree: int, offset: int = 0) -> Combination:
    """A_n as the signed sum of sigma lifts of all permutations of n legs."""
    accumulator = Accumulator()
    for permutation in permutations(range(degree)):
        word = reduced_word(permutation)
        accumulator.add(apply_sigma_word(calculus, x, word, offset), -ONE if len(word) % 2 else ONE)
    return accumulator.result()


def minimal_shuffles(first: int, second: int) -> list[tuple]:
    """Minimal coset representatives: both blocks of values keep their order."""
    total = first + second
    shuffles = []
    for permutation in permutations(range(total)):
        position = {value: place for place, value in enumerate(permutation)}
        if all(position[v] < position[v + 1] for v in range(total - 1) if v != first - 1):
            shuffles.append(permutation)
    return shuffles


def shuffle_antisymmetrizer(calculus: CalculusSpec, x: Combination, first: int, second: int) -> Combination:
    """A_kl, the signed sum over minimal shuffles."""
    accumulator = Accumulator()
    for permutation in minimal_shuffles(first, second):
        word = reduced_word(permutation)
        accumulator.add(apply_sigma_word(calculus, x, word), -ONE if len(word) % 2 else ONE)
    return accumulator.result()


def antisymmetrizer_factorized(calculus: CalculusSpec, x: Combination, first: int, second: int) -> Combination:
    """(A_k (x) A_l) A_kl."""
    shuffled = shuffle_antisymmetrizer(calculus, x, first, second)
    return antisymmetrizer(calculus, antisymmetrizer(calculus, shuffled, first), second, offset=first)
