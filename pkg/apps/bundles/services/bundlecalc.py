"""
Quantum principal bundles and their differential calculus.

A bundle is carried by its forms on the total space Omega(P) and the extended
coaction hat: Omega(P) -> Omega(P) (x) Gamma^ where Gamma^ is the full calculus
of the structure group. Three constructions share the BundleContext surface:

- vh bundles, where Omega(P) = hor (x) Gamma_inv^ is rebuilt from horizontal
  data (F*, D, R) by omega_build: trivial bundles, homogeneous bundles and
  explicit reconstruction inputs;
- total-space bundles, where Omega(P) is the crossed product of the total
  space with the exterior algebra of a calculus on it and hat comes from the
  restriction j.
"""
import logging

from apps.algebra.exceptions import (
    CapExceededError,
    DomainMismatchError,
    ParseError,
    ReconstructionPreconditionError,
    TranslationError,
)
from apps.algebra.services.graded import GradedAlgebra
from apps.algebra.services.hopf import HopfMorphism, HopfPresentation
from apps.algebra.services.linear import ZERO_COMBINATION, Accumulator, Combination
from apps.algebra.services.reports import ValidationReport
from apps.algebra.services.scalars import ONE, parse_scalar
from apps.bundles.services.crossed import CrossedProduct, GradedTensorProduct
from apps.calculus.services.focalc import CalculusSpec
from apps.calculus.services.grext import GradedQuotient, InvariantForms
from apps.calculus.services.linalg import kernel

logger = logging.getLogger(__name__)

BUNDLE_KINDS = ('trivial', 'homogeneous', 'reconstructed', 'total')


class RestrictedCoaction:
    """
    F = (id (x) j) Delta on words of the total-space algebra, keyed (word, group word).

    With no restriction the total-space algebra is the group itself and F is
    its coproduct.
    """

    def __init__(self, space: HopfPresentation, restriction: HopfMorphism | None = None):
        self.space = space
        self.restriction = restriction
        self._cache = {}

    def restrict_word(self, word: tuple) -> Combination:
        if self.restriction is None:
            return Combination.monomial(word)
        return self.restriction.apply_word(word)

    def __call__(self, word: tuple) -> Combination:
        cached = self._cache.get(word)
        if cached is None:
            accumulator = Accumulator()
            for (left, right), coeff in self.space.coproduct_word(word).items():
                accumulator.add(self.restrict_word(right).map_keys(lambda g, left=left: (left, g)), coeff)
            cached = accumulator.result()
            self._cache[word] = cached
        return cached


class BundleContext:
    """
    A quantum principal bundle with its forms and extended coaction.

    Attributes:
        name: Bundle name, e.g. 'hopf-3d'
        kind: One of BUNDLE_KINDS
        calculus: Calculus on the structure group
        group: Structure group
        forms: Invariant forms of the structure group
        space: Hopf algebra whose words span the total-space algebra
        total: Omega(P)
        full: Full calculus of the structure group, group x| forms
        target: Omega(P) (x) full, where hat takes its values
        vertical: ver(P) = space x| forms
    """

    kind = 'total'

    def __init__(self, name: str, calculus: CalculusSpec, forms: InvariantForms, space: HopfPresentation,
                 total: GradedAlgebra, restriction: HopfMorphism | None = None, lifts: dict | None = None,
                 base_generators: list | None = None, cap: int = 4):
        self.name = name
        self.calculus = calculus
        self.group = calculus.group
        self.forms = forms
        self.space = space
        self.total = total
        self.restriction = restriction
        self.cap = cap
        self.lifts = dict(lifts or {})
        self.base_generators = list(base_generators or [])
        self.space_coaction = RestrictedCoaction(space, restriction)
        self.full = CrossedProduct(
            f'{calculus.name}:full', self.group, forms, self.group,
            twist=self.group.coproduct_word, germs=calculus.pi_word, cap=forms.cap, separator='*',
        )
        self.target = GradedTensorProduct(f'{name}:target', total, self.full)
        self.vertical = CrossedProduct(
            f'{name}:ver', space, forms, self.group,
            twist=self.space_coaction, germs=calculus.pi_word, cap=cap, separator='*',
        )
        self._letter_images = {}
        self._hats = {}

    def __repr__(self):
        return f'{type(self).__name__}({self.name!r})'

    # Total-space algebra and F

    def restrict_word(self, word: tuple) -> Combination:
        return self.space_coaction.restrict_word(word)

    def space_key(self, word: tuple):
        """Omega(P) key of a word of the total-space algebra."""
        raise NotImplementedError

    def embed_space(self, x: Combination) -> Combination:
        return x.map_keys(self.space_key)

    def lift(self, a: Combination) -> Combination:
        """A preimage of a group element under the restriction, letter by letter."""
        if self.restriction is None:
            return a
        accumulator = Accumulator()
        for word, coeff in a.items():
            factors = []
            for letter in word:
                if letter not in self.lifts:
                    raise TranslationError(f'{self.name}: no lift for {self.group.generators[letter]}')
                factors.append(self.lifts[letter])
            accumulator.add(self.space.mul(*factors), coeff)
        return accumulator.result()

    def translation(self, a: Combination) -> list[tuple[Combination, Combination]]:
        """
        Pairs (q_k, b_k) of the total-space algebra with sum_k q_k F(b_k) = 1 (x) a.

        Raises:
            TranslationError: The lift of a does not produce such pairs
        """
        space = self.space
        pairs = [
            (space.antipode_word(left).scale(coeff), Combination.monomial(right))
            for (left, right), coeff in space.coproduct(self.lift(a)).items()
        ]
        accumulator = Accumulator()
        for q, b in pairs:
            for (word, g), coeff in b.linear_map(self.space_coaction).items():
                accumulator.add(space.mul(q, Combination.monomial(word)).map_keys(lambda w, g=g: (w, g)), coeff)
        if accumulator.result() != a.map_keys(lambda g: ((), g)):
            raise TranslationError(f'{self.name}: translation of {self.group.render(a)} fails')
        return pairs

    # Extended coaction

    def left_coaction(self, left_key) -> Combination:
        raise NotImplementedError

    def letter_coaction(self, letter: int) -> Combination:
        raise NotImplementedError

    def letter_image(self, letter: int) -> Combination:
        cached = self._letter_images.get(letter)
        if cached is None:
            cached = self.letter_coaction(letter)
            self._letter_images[letter] = cached
        return cached

    def hat_key(self, key) -> Combination:
        cached = self._hats.get(key)
        if cached is None:
            left_key, word = key
            cached = self.left_coaction(left_key)
            for letter in word:
                cached = self.target.mul(cached, self.letter_image(letter))
            self._hats[key] = cached
        return cached

    def hat(self, x: Combination) -> Combination:
        return x.linear_map(self.hat_key)

    def tensor_one(self, x: Combination) -> Combination:
        unit = self.full.unit_key
        return x.map_keys(lambda key: (key, unit))

    def is_horizontal(self, x: Combination) -> bool:
        return all(not full_key[1] for _, full_key in self.hat(x))

    def horizontal_coaction(self, x: Combination) -> Combination:
        """F^ of a horizontal form, keyed (Omega(P) key, group word)."""
        image = self.hat(x)
        if any(full_key[1] for _, full_key in image):
            raise DomainMismatchError(f'{self.total.render(x)} is not horizontal')
        return image.map_keys(lambda key: (key[0], key[1][0]))

    def in_base(self, x: Combination) -> bool:
        return self.hat(x) == self.tensor_one(x)

    # Elements

    def form(self, name: str) -> Combination:
        """1 (x) theta for a basis form of the structure group."""
        return Combination.monomial((self.total.unit_key[0], (self.calculus.index[name],)))

    def vertical_projection(self, x: Combination) -> Combination:
        raise NotImplementedError

    def hor_generators(self) -> list[tuple[str, Combination]]:
        raise NotImplementedError

    def form_generators(self) -> list[tuple[str, Combination]]:
        return [(name, self.form(name)) for name in self.calculus.basis]

    def left_keys(self, degree: int, max_length: int) -> list:
        raise NotImplementedError

    def keys(self, degree: int, max_length: int = 2) -> list:
        """Omega(P) keys of one degree whose total-space words have bounded length."""
        left = [key for lower in range(degree + 1) for key in self.left_keys(lower, max_length)]
        return self.total.keys(degree, left)

    def omega_M_basis(self, degree: int, max_length: int = 2) -> list[Combination]:
        """
        Basis of the forms on the base of one degree: the kernel of hat - (x) 1
        on Omega(P) spanned by words of length at most max_length.

        Returns:
            Basis vectors, empty when the degree exceeds the cap
        """
        if degree > self.cap:
            logger.warning(f'{self.name}: degree {degree} exceeds the cap {self.cap}')
            return []
        keys = self.keys(degree, max_length)
        return kernel(
            keys, lambda key: self.hat_key(key) - self.tensor_one(Combination.monomial(key)),
            f'{self.name}:omegaM[{degree}]',
        )

    # Validation

    def validate(self, report: ValidationReport | None = None) -> ValidationReport:
        """
        Check qpb1 on the base generators, qpb2 on the generators of the
        total-space algebra, qpb4 on the group generators, the dga laws of
        ver(P) and Omega(P) on generators, and that hat is a differential
        *-morphism on generator pairs.
        """
        report = report or ValidationReport(f'bundle:{self.name}')
        space, group = self.space, self.group
        for label, element in self.base_generators:
            report.record('qpb1', self.in_base(element), label)
        for letter, name in enumerate(space.generators):
            image = self.space_coaction((letter,))
            counit = Accumulator()
            for (word, g), coeff in image.items():
                counit.add_term(word, coeff * group.counit_word(g))
            report.record('qpb2_counit', counit.result() == Combination.monomial((letter,)), name)
            left = Accumulator()
            right = Accumulator()
            for (word, g), coeff in image.items():
                left.add(group.coproduct_word(g).map_keys(lambda pair, word=word: (word,) + pair), coeff)
                right.add(self.space_coaction(word).map_keys(lambda pair, g=g: pair + (g,)), coeff)
            report.record('qpb2_coassociative', left.result() == right.result(), name)
        for letter, name in enumerate(group.generators):
            try:
                self.translation(Combination.monomial((letter,)))
                report.record('qpb4', True, name)
            except TranslationError as exc:
                report.record('qpb4', False, name, str(exc))
        vertical_keys = [((letter,), ()) for letter in range(len(space.generators))]
        vertical_keys += [((), (position,)) for position in range(self.calculus.dimension)]
        self.vertical.check_dga(vertical_keys, report)
        generators = self.hor_generators() + self.form_generators()
        for label, element in generators:
            try:
                report.record('d_squared_zero', not self.total.d(self.total.d(element)), label)
                report.record('d_hermitian', self.total.d(self.total.star(element)) ==
                              self.total.star(self.total.d(element)), label)
                report.record('hat_differential', self.hat(self.total.d(element)) ==
                              self.target.d(self.hat(element)), label)
            except CapExceededError:
                continue
        for first_label, first in generators:
            for second_label, second in generators:
                witness = f'{first_label}, {second_label}'
                try:
                    product = self.total.mul(first, second)
                    report.record('hat_multiplicative', self.hat(product) ==
                                  self.target.mul(self.hat(first), self.hat(second)), witness)
                except CapExceededError:
                    continue
        logger.info(f'Bundle {self.name}: validation {report.counts()}')
        return report


class VhBundle(BundleContext):
    """
    Bundle whose forms are rebuilt as hor (x) Gamma_inv^.

    Attributes:
        hor: Horizontal forms
        twist: F* on horizontal keys, keyed (hor key, group word)
        curvature_table: Group letter -> R(letter) in hor, or None when flat
    """

    kind = 'vh'

    def __init__(self, name: str, kind: str, calculus: CalculusSpec, forms: InvariantForms,
                 space: HopfPresentation, hor: GradedAlgebra, total: CrossedProduct, space_to_hor,
                 hor_to_space, restriction: HopfMorphism | None = None, lifts: dict | None = None,
                 base_generators: list | None = None, generators: list | None = None,
                 curvature_table: dict | None = None, cap: int = 4):
        self.kind = kind
        self.hor = hor
        self.curvature_table = curvature_table
        self._space_to_hor = space_to_hor
        self._hor_to_space = hor_to_space
        self._generators = list(generators or [])
        super().__init__(name, calculus, forms, space, total, restriction, lifts, base_generators, cap)

    def space_key(self, word: tuple):
        return (self._space_to_hor(word), ())

    def embed_hor(self, x: Combination) -> Combination:
        return self.total.embed_left(x)

    def hor_of_space(self, x: Combination) -> Combination:
        return x.map_keys(self._space_to_hor)

    def left_coaction(self, left_key) -> Combination:
        return self.total.twist(left_key).map_keys(lambda key: ((key[0], ()), (key[1], ())))

    def letter_coaction(self, letter: int) -> Combination:
        unit = self.hor.unit_key
        accumulator = Accumulator()
        accumulator.add_term((self.total.unit_key, ((), (letter,))), ONE)
        for (form, word), coeff in self.calculus.varpi_key((letter,)).items():
            accumulator.add_term(((unit, form), (word, ())), coeff)
        return accumulator.result()

    def vertical_projection(self, x: Combination) -> Combination:
        """pi_v: keep the terms whose horizontal factor has degree zero."""
        hor = self.hor
        accumulator = Accumulator()
        for (hor_key, word), coeff in x.items():
            if hor.degree(hor_key) == 0:
                accumulator.add_term((self._hor_to_space(hor_key), word), coeff)
        return accumulator.result()

    def hor_generators(self) -> list[tuple[str, Combination]]:
        return list(self._generators)

    def left_keys(self, degree: int, max_length: int) -> list:
        hor = self.hor
        words = self.space.monomials(max_length)
        if isinstance(hor, HopfPresentation):
            return words if degree == 0 else []
        if isinstance(hor, GradedTensorProduct):
            return hor.keys(degree, right_keys=words)
        return hor.keys(degree, words)

    def curvature_of(self, x: Combination) -> Combination:
        """R extended linearly to a combination of group basis forms, in hor."""
        if self.curvature_table is None:
            return ZERO_COMBINATION
        accumulator = Accumulator()
        for (letter,), coeff in x.items():
            accumulator.add(self.curvature_table[letter], coeff)
        return accumulator.result()

    def curvature_from_D(self, a: Combination) -> Combination:
        """-sum_k q_k D^2(b_k) for the translation pairs of a, in hor."""
        hor = self.hor
        accumulator = Accumulator()
        for q, b in self.translation(a):
            lifted = self.hor_of_space(b)
            accumulator.add(hor.mul(self.hor_of_space(q), hor.d(hor.d(lifted))), -ONE)
        return accumulator.result()


def check_horizontal_data(name: str, hor: GradedAlgebra, calculus: CalculusSpec, twist, curvature,
                          generators: list, report: ValidationReport | None = None) -> ValidationReport:
    """
    Check that (F*, D, R) on hor can be extended to a calculus on hor (x) Gamma_inv^.

    D is the differential of hor and R maps a group letter to a horizontal
    form of degree two, or is None for R = 0.
    """
    report = report or ValidationReport(f'hor:{name}')
    letters = range(calculus.dimension)

    def coaction(x):
        return x.linear_map(twist)

    def curvature_of(x):
        if curvature is None:
            return ZERO_COMBINATION
        accumulator = Accumulator()
        for (letter,), coeff in x.items():
            accumulator.add(curvature(letter), coeff)
        return accumulator.result()

    for label, element in generators:
        try:
            d_element = hor.d(element)
            report.record('D_hermitian', hor.d(hor.star(element)) == hor.star(d_element), label)
            lhs = coaction(d_element)
            rhs = Accumulator()
            for (key, word), coeff in coaction(element).items():
                rhs.add(hor.d_key(key).map_keys(lambda k, word=word: (k, word)), coeff)
            report.record('D_covariant', lhs == rhs.result(), label)
            expected = Accumulator()
            for (key, word), coeff in coaction(element).items():
                expected.add(hor.mul(Combination.monomial(key), curvature_of(calculus.pi_word(word))), -coeff)
            report.record('D_squared', hor.d(d_element) == expected.result(), label)
        except CapExceededError:
            continue
    if curvature is None:
        return report
    for letter in letters:
        witness = calculus.basis[letter]
        value = curvature(letter)
        expected = Accumulator()
        for ((inner,), word), coeff in calculus.varpi_key((letter,)).items():
            expected.add(curvature(inner).map_keys(lambda k, word=word: (k, word)), coeff)
        report.record('R_covariant', coaction(value) == expected.result(), witness)
        try:
            report.record('DR_zero', not hor.d(value), witness)
        except CapExceededError:
            pass
        report.record('R_hermitian', hor.star(value) == curvature_of(calculus.star_key((letter,))), witness)
        for label, element in generators:
            try:
                lhs = hor.mul(value, element)
                rhs = Accumulator()
                for (key, word), coeff in coaction(element).items():
                    rhs.add(hor.mul(Combination.monomial(key), curvature_of(calculus.circ_word(letter, word))), coeff)
                report.record('R_commutation', lhs == rhs.result(), f'{witness}; {label}')
            except CapExceededError:
                continue
    return report


def omega_build(name: str, hor: GradedAlgebra, forms: InvariantForms, twist, curvature=None,
                generators: list | None = None, cap: int = 4, left_d=None) -> CrossedProduct:
    """
    Rebuild the forms on the total space from horizontal data.

    Args:
        name: Bundle name
        hor: Horizontal forms with D as their differential
        forms: Invariant forms of the structure group
        twist: F* on horizontal keys, keyed (hor key, group word)
        curvature: Group letter -> R(letter) in hor; None for R = 0
        generators: Labelled horizontal generators the conditions are checked on
        cap: Degree cap of the result
        left_d: Differential of hor; defaults to hor.d_key

    Returns:
        Omega(P) = hor (x) Gamma_inv^ with d(1 (x) theta) = R(theta) + d(theta)

    Raises:
        ReconstructionPreconditionError: A condition on (F*, D, R) fails
    """
    calculus = forms.calculus
    report = check_horizontal_data(name, hor, calculus, twist, curvature, generators or [])
    if not report.passed:
        failure = report.failures[0]
        raise ReconstructionPreconditionError(failure.name, failure.witness)
    logger.info(f'Reconstruction {name}: horizontal data passes {report.counts()["total"]} checks')
    return CrossedProduct(
        f'{name}:omega', hor, forms, calculus.group, twist=twist, germs=calculus.pi_word,
        left_d=left_d or hor.d_key, curvature=curvature, cap=cap, separator='*',
    )


def make_trivial_bundle(base: GradedQuotient, calculus: CalculusSpec, forms: InvariantForms,
                        name: str = 'trivial', cap: int = 4) -> VhBundle:
    """
    The trivial bundle with base forms `base` and structure group calculus.

    hor = base (x) A with F* = id (x) phi, and Omega(P) = hor (x) Gamma_inv^
    carries no curvature term.
    """
    group = calculus.group
    hor = GradedTensorProduct(f'{name}:hor', base, group, cap=cap)
    base_unit = base.unit_key

    def twist(key):
        form, word = key
        return group.coproduct_word(word).map_keys(lambda pair: ((form, pair[0]), pair[1]))

    generators = [(base.letters[letter], Combination.monomial(((letter,), ())))
                  for letter in range(len(base.letters))]
    generators += [(g, Combination.monomial((base_unit, (letter,))))
                   for letter, g in enumerate(group.generators)]
    total = omega_build(name, hor, forms, twist, None, generators, cap)
    bundle = VhBundle(
        name, 'trivial', calculus, forms, group, hor, total,
        space_to_hor=lambda word: (base_unit, word), hor_to_space=lambda key: key[1],
        base_generators=[(label, total.embed_left(x)) for label, x in generators[:len(base.letters)]],
        generators=[(label, total.embed_left(x)) for label, x in generators], cap=cap,
    )
    bundle.base = base
    logger.info(f'Built trivial bundle {name} over {base.name} with group {group.name}')
    return bundle


def make_reconstructed_bundle(space: HopfPresentation, calculus: CalculusSpec, forms: InvariantForms,
                              restriction: HopfMorphism, lifts: dict, name: str = 'reconstructed',
                              base_generators: list | None = None, cap: int = 4) -> VhBundle:
    """
    The degenerate reconstruction input hor = B with D = 0 and R = 0.

    The result coincides with ver(P).
    """
    twist = RestrictedCoaction(space, restriction)
    generators = [(g, Combination.monomial((letter,))) for letter, g in enumerate(space.generators)]
    total = omega_build(name, space, forms, twist, None, generators, cap)
    bundle = VhBundle(
        name, 'reconstructed', calculus, forms, space, space, total,
        space_to_hor=lambda word: word, hor_to_space=lambda key: key, restriction=restriction, lifts=lifts,
        base_generators=[(label, total.embed_left(x)) for label, x in base_generators or []],
        generators=[(label, total.embed_left(x)) for label, x in generators], cap=cap,
    )
    logger.info(f'Reconstructed {name} from the degenerate horizontal data')
    return bundle


class TotalSpaceBundle(BundleContext):
    """
    Bundle whose forms are the crossed product of the total space with the
    exterior algebra of a calculus on it.

    hat(theta) = 1 (x) rho(theta) + (id (x) j) varpi(theta) on invariant forms of
    the total-space calculus, where rho(theta) = pi(j(a_theta)).
    """

    kind = 'total'

    def __init__(self, name: str, space_calculus: CalculusSpec, space_forms: InvariantForms,
                 calculus: CalculusSpec, forms: InvariantForms, restriction: HopfMorphism,
                 lifts: dict | None = None, base_generators: list | None = None,
                 horizontal_forms: dict | None = None, cap: int = 4):
        self.space_calculus = space_calculus
        self.space_forms = space_forms
        space = space_calculus.group
        total = CrossedProduct(
            f'{name}:omega', space, space_forms, space, twist=space.coproduct_word,
            germs=space_calculus.pi_word, cap=cap, separator='*',
        )
        self.horizontal_forms = dict(horizontal_forms or {})
        self._rho = {}
        super().__init__(name, calculus, forms, space, total, restriction, lifts, base_generators, cap)

    def space_key(self, word: tuple):
        return (word, ())

    def rho_key(self, letter: int) -> Combination:
        """rho(theta) = pi(j(a_theta)) as a combination of group basis forms."""
        cached = self._rho.get(letter)
        if cached is None:
            preimage = self.space_calculus.preimages[letter]
            cached = self.calculus.pi(self.restriction(preimage))
            self._rho[letter] = cached
        return cached

    def space_form(self, name: str) -> Combination:
        return Combination.monomial(((), (self.space_calculus.index[name],)))

    def left_coaction(self, left_key) -> Combination:
        return self.space_coaction(left_key).map_keys(lambda key: ((key[0], ()), (key[1], ())))

    def letter_coaction(self, letter: int) -> Combination:
        accumulator = Accumulator()
        for form, coeff in self.rho_key(letter).items():
            accumulator.add_term(((( ), ()), ((), form)), coeff)
        for (form, word), coeff in self.space_calculus.varpi_key((letter,)).items():
            for g, weight in self.restrict_word(word).items():
                accumulator.add_term((((), form), (g, ())), coeff * weight)
        return accumulator.result()

    def vertical_projection(self, x: Combination) -> Combination:
        """pi_v(b (x) w) = b (x) j(w), with j sending theta to rho(theta)."""
        forms = self.forms
        accumulator = Accumulator()
        for (word, form_word), coeff in x.items():
            image = forms.mul(*(self.rho_key(letter) for letter in form_word))
            accumulator.add(image.map_keys(lambda key, word=word: (word, key)), coeff)
        return accumulator.result()

    def form(self, name: str) -> Combination:
        raise DomainMismatchError(f'{self.name}: vertical forms are images of {self.space_calculus.name} forms')

    def form_generators(self) -> list[tuple[str, Combination]]:
        return [(name, self.space_form(name)) for name in self.space_calculus.basis]

    def hor_generators(self) -> list[tuple[str, Combination]]:
        generators = [(g, Combination.monomial(((letter,), ())))
                      for letter, g in enumerate(self.space.generators)]
        generators += list(self.horizontal_forms.items())
        return generators

    def left_keys(self, degree: int, max_length: int) -> list:
        return self.space.monomials(max_length) if degree == 0 else []

    def validate(self, report: ValidationReport | None = None) -> ValidationReport:
        report = report or ValidationReport(f'bundle:{self.name}')
        for label, element in self.horizontal_forms.items():
            report.record('horizontal_form', self.is_horizontal(element), label)
        for letter, name in enumerate(self.space_calculus.basis):
            report.record('rho_preimage', bool(self.rho_key(letter)) or
                          self.is_horizontal(self.space_form(name)), name)
        return super().validate(report)


# Pack parsing shared by the bundle loaders

def parse_space_element(space: HopfPresentation, entries, where: str) -> Combination:
    try:
        return space.element((entry[0], entry[1]) for entry in entries)
    except (TypeError, IndexError) as exc:
        raise ParseError(f'{where}: malformed element {entries!r}') from exc


def parse_lifts(space: HopfPresentation, group: HopfPresentation, table: dict, where: str) -> dict:
    lifts = {}
    for name, entries in table.items():
        if name not in group.index:
            raise ParseError(f'{where}: unknown group generator {name!r}')
        lifts[group.index[name]] = parse_space_element(space, entries, f'{where} lift of {name}')
    return lifts


def parse_base_generators(space: HopfPresentation, entries, where: str) -> list:
    generators = []
    for entry in entries:
        element = parse_space_element(space, entry, f'{where} base generator')
        generators.append((space.render(element), element))
    return generators


def parse_form_combination(calculus: CalculusSpec, entries, where: str, params: dict | None = None) -> Combination:
    accumulator = Accumulator()
    for entry in entries:
        try:
            coeff, name = entry
        except (TypeError, ValueError) as exc:
            raise ParseError(f'{where}: malformed entry {entry!r}') from exc
        if name not in calculus.index:
            raise ParseError(f'{where}: unknown basis form {name!r}')
        accumulator.add_term((calculus.index[name],), parse_scalar(coeff, params))
    return accumulator.result()
