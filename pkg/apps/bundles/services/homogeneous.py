"""
Homogeneous bundles B -> B/H with a right-covariant calculus on B.

The invariant forms of the total-space calculus split into vertical ones,
the image of a splitting omega of rho(theta) = pi(j(a_theta)), and horizontal
letters spanning ker rho. The horizontal letters generate L*, and the
horizontal forms are hor = B (x) L* with D(b) = sum b(1) (x) kappa(b(2)),
where kappa is the horizontal germ map.
"""
import logging

from apps.algebra.exceptions import BundleCalcError, DomainMismatchError, InvalidSplittingError, ParseError
from apps.algebra.services.hopf import HopfMorphism, load_restriction
from apps.algebra.services.linear import Accumulator, Combination
from apps.algebra.services.packs import require
from apps.algebra.services.scalars import ONE
from apps.bundles.services.bundlecalc import (
    RestrictedCoaction,
    VhBundle,
    omega_build,
    parse_base_generators,
    parse_form_combination,
    parse_lifts,
)
from apps.bundles.services.crossed import CrossedProduct
from apps.calculus.services.focalc import CalculusSpec, load_calculus
from apps.calculus.services.grext import GradedQuotient, InvariantForms
from apps.calculus.services.linalg import EchelonSpace

logger = logging.getLogger(__name__)


def _join(a: tuple, b: tuple) -> tuple:
    return a + b


class HomogeneousSplitting:
    """
    Splitting of the total-space calculus into vertical and horizontal letters.

    Attributes:
        space_calculus: Right-covariant calculus on B
        calculus: Calculus on the structure group
        restriction: j: B -> A
        letters: Names of the horizontal letters
        positions: Basis positions of the horizontal letters in space_calculus
        splitting: Group letter -> omega(letter) as a space_calculus form
    """

    def __init__(self, name: str, space_calculus: CalculusSpec, calculus: CalculusSpec,
                 restriction: HopfMorphism, letters: list[str], splitting: dict):
        self.name = name
        self.space_calculus = space_calculus
        self.calculus = calculus
        self.restriction = restriction
        self.space = space_calculus.group
        try:
            self.positions = [space_calculus.index[letter] for letter in letters]
        except KeyError as exc:
            raise ParseError(f'{name}: unknown horizontal letter {exc.args[0]!r}') from exc
        self.letters = list(letters)
        self.splitting = dict(splitting)
        self._coordinates = EchelonSpace(f'{name}:letters', track_origins=True)
        for letter, position in enumerate(self.positions):
            self._coordinates.add(Combination.monomial((position,)), Combination.monomial((letter,)))
        self._rho = {}
        self._kappa = {}
        self._chi = {}
        self._circ = {}

    # Maps on space_calculus forms

    def rho_key(self, key: tuple) -> Combination:
        cached = self._rho.get(key)
        if cached is None:
            preimage = self.space_calculus.preimages[key[0]]
            cached = self.calculus.pi(self.restriction(preimage))
            self._rho[key] = cached
        return cached

    def rho(self, x: Combination) -> Combination:
        return x.linear_map(self.rho_key)

    def omega(self, x: Combination) -> Combination:
        return x.linear_map(lambda key: self.splitting[key[0]])

    def perp(self, x: Combination) -> Combination:
        """Horizontal part theta - omega(rho(theta))."""
        return x - self.omega(self.rho(x))

    def to_letters(self, x: Combination) -> Combination:
        """
        Coordinates of a horizontal form in the letters.

        Raises:
            InvalidSplittingError: The form is not in the span of the letters
        """
        try:
            return self._coordinates.express(x)
        except BundleCalcError as exc:
            raise InvalidSplittingError(
                f'{self.name}: {self.space_calculus.render(x)} is not horizontal'
            ) from exc

    def kappa_word(self, word: tuple) -> Combination:
        """Horizontal germ of a word of B, in letter coordinates."""
        cached = self._kappa.get(word)
        if cached is None:
            cached = self.to_letters(self.perp(self.space_calculus.pi_word(word)))
            self._kappa[word] = cached
        return cached

    def kappa(self, x: Combination) -> Combination:
        return x.linear_map(self.kappa_word)

    def kappa_square(self, b: Combination) -> Combination:
        """sum kappa(b(1)) (x) kappa(b(2)) as a combination of letter pairs."""
        accumulator = Accumulator()
        for (left, right), coeff in self.space.coproduct(b).items():
            first = self.kappa_word(left)
            if not first:
                continue
            accumulator.add(first.tensor(self.kappa_word(right), _join), coeff)
        return accumulator.result()

    def letter_circ(self, letter: int, generator: int) -> Combination:
        cached = self._circ.get((letter, generator))
        if cached is None:
            image = self.space_calculus.circ_word(self.positions[letter], (generator,))
            cached = self.to_letters(image)
            self._circ[(letter, generator)] = cached
        return cached

    def letter_circ_word(self, letter: int, word: tuple) -> Combination:
        result = Combination.monomial((letter,))
        for generator in word:
            result = result.linear_map(lambda key, g=generator: self.letter_circ(key[0], g))
        return result

    def circ_tensor(self, x: Combination, generator: int) -> Combination:
        """Right action of one generator on letter tensors through its coproduct."""
        accumulator = Accumulator()
        single = Combination.monomial((generator,))
        for key, coeff in x.items():
            for legs, weight in self.space.comultiply(single, len(key)).items():
                product = Combination.monomial((), coeff * weight)
                for letter, leg in zip(key, legs):
                    product = product.tensor(self.letter_circ_word(letter, leg), _join)
                    if not product:
                        break
                accumulator.add(product)
        return accumulator.result()

    def letter_coaction(self, letter: int) -> Combination:
        """chi(letter) = (kappa (x) j) ad(a_letter), keyed ((letter,), group word)."""
        cached = self._chi.get(letter)
        if cached is None:
            preimage = self.space_calculus.preimages[self.positions[letter]]
            accumulator = Accumulator()
            for (middle, right), coeff in self.space.adjoint_ad(preimage).items():
                germ = self.kappa_word(middle)
                if not germ:
                    continue
                for word, weight in self.restriction.apply_word(right).items():
                    accumulator.add(germ.map_keys(lambda key, word=word: (key, word)), coeff * weight)
            cached = accumulator.result()
            self._chi[letter] = cached
        return cached

    def letter_star(self, letter: int) -> Combination:
        return self.to_letters(self.space_calculus.star_key((self.positions[letter],)))

    def letter_d(self, letter: int) -> Combination:
        preimage = self.space_calculus.preimages[self.positions[letter]]
        return self.kappa_square(preimage).scale(-ONE)

    def curvature_words(self, group_letter: int) -> Combination:
        """-sum kappa(q(1)) kappa(q(2)) for a preimage q of omega(group letter)."""
        accumulator = Accumulator()
        for (position,), coeff in self.splitting[group_letter].items():
            accumulator.add(self.space_calculus.preimages[position], coeff)
        return self.kappa_square(accumulator.result()).scale(-ONE)

    # Relations of L*

    def quadratic_relations(self) -> list[Combination]:
        """Horizontal germs of the ideal, closed under the right action."""
        space = EchelonSpace(f'{self.name}:quadratic')
        queue = []
        for generator in self.space_calculus.ideal:
            germ = self.kappa_square(generator)
            if germ and space.add(germ):
                queue.append(germ)
        while queue:
            vector = queue.pop()
            for generator in range(len(self.space.generators)):
                image = self.circ_tensor(vector, generator)
                if image and space.add(image):
                    queue.append(image)
        return space.basis()

    def cubic_relations(self) -> list[Combination]:
        """R(theta) l - sum_k l_k R(theta o c_k) for group letters theta and letters l."""
        calculus = self.calculus
        relations = []
        for group_letter in range(calculus.dimension):
            curvature = self.curvature_words(group_letter)
            for letter in range(len(self.letters)):
                accumulator = Accumulator()
                accumulator.add(curvature.map_keys(lambda key, letter=letter: key + (letter,)))
                for ((moved,), word), coeff in self.letter_coaction(letter).items():
                    acted = calculus.circ_word(group_letter, word)
                    for (inner,), weight in acted.items():
                        accumulator.add(
                            self.curvature_words(inner).map_keys(lambda key, moved=moved: (moved,) + key),
                            -coeff * weight,
                        )
                relation = accumulator.result()
                if relation:
                    relations.append(relation)
        return relations

    def validate(self):
        """
        Raises:
            InvalidSplittingError: j maps the ideal of the space calculus outside
                the ideal of the group calculus, rho does not vanish on a letter,
                omega is not a section of rho, the letters and the image of omega
                do not span, or the letters are not stable under the right action
        """
        space_calculus, calculus = self.space_calculus, self.calculus
        for generator in space_calculus.ideal:
            restricted = self.restriction(generator)
            if calculus.pi(restricted):
                raise InvalidSplittingError(
                    f'{self.name}: j(R) is not contained in the ideal of {calculus.name}: '
                    f'{self.space.render(generator)} maps to {calculus.group.render(restricted)}'
                )
        for letter, position in zip(self.letters, self.positions):
            if self.rho_key((position,)):
                raise InvalidSplittingError(f'{self.name}: rho({letter}) is not zero')
        span = EchelonSpace(f'{self.name}:span')
        span.extend(Combination.monomial((position,)) for position in self.positions)
        for group_letter in range(calculus.dimension):
            image = self.splitting.get(group_letter)
            if image is None:
                raise InvalidSplittingError(f'{self.name}: no splitting for {calculus.basis[group_letter]}')
            if self.rho(image) != Combination.monomial((group_letter,)):
                raise InvalidSplittingError(
                    f'{self.name}: rho(omega({calculus.basis[group_letter]})) = {calculus.render(self.rho(image))}'
                )
            span.add(image)
        if span.dimension != space_calculus.dimension:
            raise InvalidSplittingError(
                f'{self.name}: letters and splitting span {span.dimension} of {space_calculus.dimension} forms'
            )
        for letter in range(len(self.letters)):
            for generator in range(len(self.space.generators)):
                self.letter_circ(letter, generator)
            self.letter_coaction(letter)
        logger.debug(f'Splitting {self.name}: {len(self.letters)} horizontal letters')


def make_horizontal_algebra(splitting: HomogeneousSplitting, cap: int = 4) -> GradedQuotient:
    """L*: letters modulo the horizontal germs of the ideal and the curvature relations."""
    relations = {2: splitting.quadratic_relations()}
    cubic = splitting.cubic_relations()
    if cubic:
        relations[3] = cubic
    return GradedQuotient(
        f'{splitting.name}:L', splitting.letters, relations=relations, cap=cap,
        letter_d=splitting.letter_d, letter_star=splitting.letter_star, hopf=splitting.space,
        letter_circ=splitting.letter_circ, letter_coaction=splitting.letter_coaction,
        cohopf=splitting.calculus.group,
    )


def make_homogeneous_bundle(name: str, space_calculus: CalculusSpec, calculus: CalculusSpec,
                            forms: InvariantForms, letters: list[str], splitting_table: dict,
                            restriction: HopfMorphism | None = None, lifts: dict | None = None,
                            base_generators: list | None = None, cap: int = 4) -> VhBundle:
    """
    Build the vh form of a homogeneous bundle.

    Args:
        name: Bundle name
        space_calculus: Calculus on the total space B
        calculus: Calculus on the structure group
        forms: Invariant forms of the structure group
        letters: Horizontal basis forms of space_calculus
        splitting_table: Group letter -> omega(letter) in space_calculus
        restriction: j: B -> A; defaults to the declared restriction
        lifts: Group letter -> preimage in B under j
        base_generators: Labelled elements of B that generate the base
        cap: Degree cap

    Raises:
        InvalidSplittingError: The splitting is not admissible
        ReconstructionPreconditionError: (F*, D, R) fails a condition
    """
    space = space_calculus.group
    group = calculus.group
    restriction = restriction or load_restriction(space.name, group.name)
    splitting = HomogeneousSplitting(name, space_calculus, calculus, restriction, letters, splitting_table)
    splitting.validate()
    lstar = make_horizontal_algebra(splitting, cap)
    hor = CrossedProduct(
        f'{name}:hor', space, lstar, space, twist=space.coproduct_word, germs=splitting.kappa_word,
        cap=cap, separator=' (x) ',
    )
    space_coaction = RestrictedCoaction(space, restriction)

    def twist(key):
        word, letter_word = key
        accumulator = Accumulator()
        for (moved, g), coeff in space_coaction(word).items():
            for (normal, h), weight in lstar.coaction_key(letter_word).items():
                head = (moved, normal)
                accumulator.add(
                    group.normal_word(g + h).map_keys(lambda product, head=head: (head, product)), coeff * weight,
                )
        return accumulator.result()

    curvature_table = {
        group_letter: hor.embed_right(lstar.normal(splitting.curvature_words(group_letter)))
        for group_letter in range(calculus.dimension)
    }
    generators = [(g, Combination.monomial(((letter,), ()))) for letter, g in enumerate(space.generators)]
    generators += [(letter, hor.embed_right(lstar.letter(letter))) for letter in lstar.letters]
    total = omega_build(name, hor, forms, twist, curvature_table.get, generators, cap)
    bundle = VhBundle(
        name, 'homogeneous', calculus, forms, space, hor, total,
        space_to_hor=lambda word: (word, ()), hor_to_space=lambda key: key[0],
        restriction=restriction, lifts=lifts,
        base_generators=[(label, total.embed_left(hor.embed_left(x))) for label, x in base_generators or []],
        generators=[(label, total.embed_left(x)) for label, x in generators],
        curvature_table=curvature_table, cap=cap,
    )
    bundle.splitting = splitting
    bundle.lstar = lstar
    logger.info(f'Built homogeneous bundle {name}: L* dimensions {lstar.dimensions()}')
    return bundle


def lp_relations(bundle: VhBundle) -> list[str]:
    """
    Relations of l(P) = L* (x) Gamma_inv^ in degree two: the L* rows, the rows
    of the invariant forms and theta l = -sum_k l_k (theta o c_k) for every
    basis form theta and horizontal letter l.

    Raises:
        DomainMismatchError: The bundle has no horizontal letters
    """
    lstar = getattr(bundle, 'lstar', None)
    if lstar is None:
        raise DomainMismatchError(f'{bundle.name} is not a homogeneous bundle')
    total, hor, forms = bundle.total, bundle.hor, bundle.forms
    rows = lstar.render_relations(2) + forms.render_relations(2)
    for name in bundle.calculus.basis:
        for letter in lstar.letters:
            product = total.mul(bundle.form(name), total.embed_left(hor.embed_right(lstar.letter(letter))))
            rows.append(f'{name}*{letter} = {total.render(product)}')
    return rows


def homogeneous_from_pack(data: dict, calculus: CalculusSpec, forms: InvariantForms, cap: int = 4) -> VhBundle:
    """Build a homogeneous bundle from its pack data and the structure group calculus."""
    pack = data.get('name', '<bundle>')
    space_calculus = load_calculus(require(data, 'space_calculus', pack))
    splitting_table = {}
    for name, entries in require(data, 'splitting', pack).items():
        if name not in calculus.index:
            raise ParseError(f'{pack}: unknown structure form {name!r}')
        splitting_table[calculus.index[name]] = parse_form_combination(space_calculus, entries, f'{pack} splitting')
    space = space_calculus.group
    return make_homogeneous_bundle(
        pack, space_calculus, calculus, forms, list(data.get('horizontal', [])), splitting_table,
        lifts=parse_lifts(space, calculus.group, data.get('lifts', {}), pack),
        base_generators=parse_base_generators(space, data.get('base_generators', []), pack), cap=cap,
    )
