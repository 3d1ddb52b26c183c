"""
First-order covariant *-calculi over presented Hopf algebras.

A calculus is loaded from a pack that fixes the left-invariant forms: the
germs map on generators, the right action of generators on the basis,
canonical preimages and the generators of the right ideal the germs map
kills. Everything else (germs of arbitrary words, the adjoint coaction, the
braid, the transposed commutator, the star) is derived here.

Invariant forms of degree n are Combinations over n-tuples of basis indices,
so a degree-one form is keyed by one-element tuples.
"""
import logging
from functools import lru_cache

from apps.algebra.exceptions import ParseError, SpecIncompleteError
from apps.algebra.services.hopf import HopfPresentation, load_group
from apps.algebra.services.linear import ZERO_COMBINATION, Accumulator, Combination, join_labels, render_combination
from apps.algebra.services.packs import available_packs, load_pack, read_pack_file, require
from apps.algebra.services.reports import ValidationReport
from apps.algebra.services.scalars import ZERO, parse_scalar

logger = logging.getLogger(__name__)

DELTA_MODES = ('preimage', 'section')


class CalculusSpec:
    """
    Left-covariant first-order *-calculus given by finite tables.

    Attributes:
        name: Pack name, e.g. '3d'
        group: The Hopf algebra the calculus lives over
        basis: Names of the invariant basis forms
        bicovariant: Whether the adjoint coaction is well defined
        delta_mode: 'preimage' or 'section', see GradedQuotient.delta
        ideal: Listed generators of the right ideal
    """

    def __init__(self, name: str, group: HopfPresentation, basis: list[str], pi_letters: dict,
                 circ_letters: dict, preimages: dict, ideal: list, bicovariant: bool = False,
                 delta_mode: str = 'preimage', parameters: dict | None = None, description: str = ''):
        self.name = name
        self.group = group
        self.basis = tuple(basis)
        self.index = {label: position for position, label in enumerate(self.basis)}
        self.bicovariant = bicovariant
        if delta_mode not in DELTA_MODES:
            raise ParseError(f'calculus {name}: unknown delta mode {delta_mode!r}')
        self.delta_mode = delta_mode
        self.parameters = dict(parameters or {})
        self.description = description
        self.ideal = tuple(group.normal(r) for r in ideal)
        self._pi_letters = tuple(pi_letters[g] for g in group.generators)
        self._circ_letters = {
            (position, letter): circ_letters[(position, letter)]
            for position in range(len(self.basis)) for letter in range(len(group.generators))
        }
        self.preimages = tuple(group.normal(preimages[label]) for label in self.basis)
        self._pi_words = {}
        self._circ_words = {}
        self._circ_tensor = {}
        self._varpi = {}
        self._stars = {}
        self._warned = set()

    def __repr__(self):
        return f'CalculusSpec({self.name!r})'

    @property
    def dimension(self) -> int:
        return len(self.basis)

    # Labels and elements

    def label(self, key) -> str:
        if not key:
            return '1'
        return join_labels(self.basis[position] for position in key)

    def tensor_label(self, key) -> str:
        if not key:
            return '1'
        return ' (x) '.join(self.basis[position] for position in key)

    def render(self, x: Combination) -> str:
        return render_combination(x, self.label)

    def render_tensor(self, x: Combination) -> str:
        return render_combination(x, self.tensor_label)

    def form(self, name: str) -> Combination:
        try:
            return Combination.monomial((self.index[name],))
        except KeyError as exc:
            raise ParseError(f'calculus {self.name} has no basis form {name!r}') from exc

    def forms(self, terms) -> Combination:
        """Build a 1-form from [(coefficient, name), ...]."""
        accumulator = Accumulator()
        for coeff, name in terms:
            accumulator.add(self.form(name), parse_scalar(coeff, self.parameters))
        return accumulator.result()

    def tensor_keys(self, degree: int) -> list[tuple]:
        keys = [()]
        for _ in range(degree):
            keys = [key + (position,) for key in keys for position in range(self.dimension)]
        return keys

    def _require_bicovariant(self, operation: str):
        if not self.bicovariant and operation not in self._warned:
            self._warned.add(operation)
            logger.warning(f'{operation} requested on {self.name}, which is not declared bicovariant')

    # Right action

    def circ_word(self, position: int, word: tuple) -> Combination:
        """Basis form at position acted on by a word, letter by letter."""
        cached = self._circ_words.get((position, word))
        if cached is not None:
            return cached
        if not word:
            result = Combination.monomial((position,))
        else:
            head = self.circ_word(position, word[:-1])
            result = head.linear_map(lambda key: self._circ_letters[(key[0], word[-1])])
        self._circ_words[(position, word)] = result
        return result

    def circ(self, x: Combination, a: Combination) -> Combination:
        """theta o a for a 1-form theta and an algebra element a."""
        accumulator = Accumulator()
        for key, coeff in x.items():
            for word, weight in a.items():
                accumulator.add(self.circ_word(key[0], word), coeff * weight)
        return accumulator.result()

    def circ_tensor_key(self, key: tuple, letter: int) -> Combination:
        """(x1 (x) ... (x) xn) o g through the iterated coproduct of g."""
        cached = self._circ_tensor.get((key, letter))
        if cached is not None:
            return cached
        group = self.group
        if not key:
            result = Combination.monomial((), group.counit_word((letter,)))
        elif len(key) == 1:
            result = self._circ_letters[(key[0], letter)]
        else:
            legs = group.comultiply(Combination.monomial((letter,)), len(key))
            accumulator = Accumulator()
            for words, coeff in legs.items():
                product = Combination.monomial((), coeff)
                for position, word in zip(key, words):
                    product = product.tensor(self.circ_word(position, word), lambda a, b: a + b)
                    if not product:
                        break
                accumulator.add(product)
            result = accumulator.result()
        self._circ_tensor[(key, letter)] = result
        return result

    def circ_tensor_word(self, x: Combination, word: tuple) -> Combination:
        for letter in word:
            x = x.linear_map(lambda key, letter=letter: self.circ_tensor_key(key, letter))
        return x

    def circ_tensor(self, x: Combination, a: Combination) -> Combination:
        """Right action on tensors of any degree, including scalars."""
        accumulator = Accumulator()
        for word, weight in a.items():
            accumulator.add(self.circ_tensor_word(x, word), weight)
        return accumulator.result()

    # Germs map

    def pi_word(self, word: tuple) -> Combination:
        """pi(g w) = pi(g) o w + eps(g) pi(w); the word need not be normal."""
        cached = self._pi_words.get(word)
        if cached is not None:
            return cached
        if not word:
            result = ZERO_COMBINATION
        else:
            head, tail = word[0], word[1:]
            accumulator = Accumulator()
            for key, coeff in self._pi_letters[head].items():
                accumulator.add(self.circ_word(key[0], tail), coeff)
            counit = self.group.counit_word((head,))
            if counit:
                accumulator.add(self.pi_word(tail), counit)
            result = accumulator.result()
        self._pi_words[word] = result
        return result

    def pi(self, a: Combination) -> Combination:
        return a.linear_map(self.pi_word)

    # Adjoint coaction, braid, transposed commutator

    def varpi_key(self, key: tuple) -> Combination:
        """varpi(theta) = (pi (x) id) ad(a_theta), keyed by (form key, word)."""
        cached = self._varpi.get(key)
        if cached is not None:
            return cached
        accumulator = Accumulator()
        for (middle, right), coeff in self.group.adjoint_ad(self.preimages[key[0]]).items():
            for form, weight in self.pi_word(middle).items():
                accumulator.add_term((form, right), coeff * weight)
        result = accumulator.result()
        self._varpi[key] = result
        return result

    def varpi(self, x: Combination) -> Combination:
        self._require_bicovariant('varpi')
        return x.linear_map(self.varpi_tensor_key)

    def varpi_tensor_key(self, key: tuple) -> Combination:
        """varpi on tensors: the product of the coactions of the legs."""
        result = Combination.monomial(((), ()))
        for position in key:
            accumulator = Accumulator()
            for (left, word), coeff in result.items():
                for (form, other), weight in self.varpi_key((position,)).items():
                    accumulator.add(
                        self.group.normal_word(word + other).map_keys(
                            lambda normal, left=left, form=form: (left + form, normal)
                        ),
                        coeff * weight,
                    )
            result = accumulator.result()
        return result

    def sigma_key(self, key: tuple, position: int = 0) -> Combination:
        """Braid at legs (position, position+1): eta (x) theta -> sum theta_k (x) eta o c_k."""
        prefix, (eta, theta), suffix = key[:position], key[position:position + 2], key[position + 2:]
        accumulator = Accumulator()
        for (form, word), coeff in self.varpi_key((theta,)).items():
            for moved, weight in self.circ_word(eta, word).items():
                accumulator.add_term(prefix + form + moved + suffix, coeff * weight)
        return accumulator.result()

    def sigma(self, x: Combination, position: int = 0) -> Combination:
        self._require_bicovariant('sigma')
        return x.linear_map(lambda key: self.sigma_key(key, position))

    def ctop_key(self, key: tuple) -> Combination:
        """c^T(theta) = (id (x) pi) varpi(theta)."""
        accumulator = Accumulator()
        for (form, word), coeff in self.varpi_key(key).items():
            accumulator.add(self.pi_word(word).map_keys(lambda germ, form=form: form + germ), coeff)
        return accumulator.result()

    def ctop(self, x: Combination) -> Combination:
        self._require_bicovariant('c^T')
        return x.linear_map(self.ctop_key)

    # Star and embedded differential

    def star_key(self, key: tuple) -> Combination:
        """theta* = -pi(kappa(a_theta)*) on a basis form."""
        cached = self._stars.get(key)
        if cached is None:
            group = self.group
            cached = -self.pi(group.star(group.antipode(self.preimages[key[0]])))
            self._stars[key] = cached
        return cached

    def star(self, x: Combination) -> Combination:
        return x.antilinear_map(self.star_key)

    def delta_preimage_key(self, key: tuple) -> Combination:
        """-pi(a(1)) (x) pi(a(2)) for the canonical preimage a of a basis form."""
        accumulator = Accumulator()
        for (left, right), coeff in self.group.coproduct(self.preimages[key[0]]).items():
            accumulator.add(self.pi_word(left).tensor(self.pi_word(right), lambda a, b: a + b), -coeff)
        return accumulator.result()

    def germ_square(self, a: Combination) -> Combination:
        """pi(a(1)) (x) pi(a(2)), the degree-two germ of an element."""
        accumulator = Accumulator()
        for (left, right), coeff in self.group.coproduct(a).items():
            accumulator.add(self.pi_word(left).tensor(self.pi_word(right), lambda x, y: x + y), coeff)
        return accumulator.result()

    # Validation

    def validate(self, cap: int = 2) -> ValidationReport:
        """
        Check the calculus tables against the Hopf algebra.

        Module law and germs recursion on pairs of normal words of total length
        at most cap, the germs of the listed ideal generators times words of
        length below cap, the star laws, and for bicovariant calculi the
        coaction laws, well-definedness of varpi and the braid equation.
        """
        group = self.group
        report = ValidationReport(f'calculus:{self.name}')
        words = group.monomials(cap)
        basis_keys = [(position,) for position in range(self.dimension)]
        for lhs, rhs in group.rules:
            for (position,) in basis_keys:
                report.record(
                    'relation_circ',
                    self.circ_word(position, lhs) == self.circ(Combination.monomial((position,)), rhs),
                    f'{self.basis[position]} o {group.label(lhs)}',
                )
            report.record('relation_pi', self.pi_word(lhs) == self.pi(rhs), group.label(lhs))
        for first in words:
            for second in words:
                if len(first) + len(second) > cap:
                    continue
                product = group.normal_word(first + second)
                witness = f'{group.label(first)}, {group.label(second)}'
                for (position,) in basis_keys:
                    staged = self.circ(self.circ_word(position, first), Combination.monomial(second))
                    report.record(
                        'module_law',
                        staged == self.circ(Combination.monomial((position,)), product),
                        f'{self.basis[position]}; {witness}',
                    )
                recursion = self.circ(self.pi_word(first), Combination.monomial(second)) + \
                    self.pi_word(second).scale(group.counit_word(first))
                report.record('pi_recursion', self.pi(product) == recursion, witness)
        for generator_index, generator in enumerate(self.ideal):
            for word in group.monomials(max(cap - 1, 0)):
                multiple = group.mul(generator, Combination.monomial(word))
                report.record(
                    'pi_kills_ideal', not self.pi(multiple),
                    f'r{generator_index + 1}*{group.label(word)}', self.render(self.pi(multiple)),
                )
        for letter, name in enumerate(group.generators):
            element = Combination.monomial((letter,))
            expected = -self.pi(group.star(group.antipode(element)))
            report.record('star_law', self.star(self.pi(element)) == expected, name)
        for key in basis_keys:
            report.record('star_involutive', self.star(self.star_key(key)) == Combination.monomial(key),
                          self.label(key))
            for word in group.monomials(max(cap - 1, 1)):
                element = Combination.monomial(word)
                left = self.star(self.circ_word(key[0], word))
                right = self.circ(self.star_key(key), group.star(group.antipode(element)))
                report.record('circ_star', left == right, f'{self.label(key)} o {group.label(word)}')
            counit = Accumulator()
            for (form, word), coeff in self.varpi_key(key).items():
                counit.add_term(form, coeff * group.counit_word(word))
            report.record('varpi_counit', counit.result() == Combination.monomial(key), self.label(key))
        if self.bicovariant:
            self._validate_bicovariant(report, cap)
        logger.info(f'Calculus {self.name}: validation at cap {cap}, {report.counts()}')
        return report

    def _validate_bicovariant(self, report: ValidationReport, cap: int):
        group = self.group
        for key in [(position,) for position in range(self.dimension)]:
            coaction = self.varpi_key(key)
            twice = Accumulator()
            for (form, word), coeff in coaction.items():
                for (inner, other), weight in self.varpi_key(form).items():
                    twice.add_term((inner, other, word), coeff * weight)
            expanded = Accumulator()
            for (form, word), coeff in coaction.items():
                for (left, right), weight in group.coproduct_word(word).items():
                    expanded.add_term((form, left, right), coeff * weight)
            report.record('varpi_coassociative', twice.result() == expanded.result(), self.label(key))
        for generator_index, generator in enumerate(self.ideal):
            for word in group.monomials(max(cap - 1, 0)):
                multiple = group.mul(generator, Combination.monomial(word))
                leaked = Accumulator()
                for (middle, right), coeff in group.adjoint_ad(multiple).items():
                    for form, weight in self.pi_word(middle).items():
                        leaked.add_term((form, right), coeff * weight)
                report.record('varpi_well_defined', not leaked.result(),
                              f'r{generator_index + 1}*{group.label(word)}')
        for key in self.tensor_keys(3):
            element = Combination.monomial(key)
            left = self.sigma(self.sigma(self.sigma(element, 0), 1), 0)
            right = self.sigma(self.sigma(self.sigma(element, 1), 0), 1)
            report.record('braid_equation', left == right, self.tensor_label(key))


# Pack loading

def _parse_forms(basis_index: dict, entries, params: dict, where: str) -> Combination:
    accumulator = Accumulator()
    for entry in entries:
        try:
            coeff, name = entry
        except (TypeError, ValueError) as exc:
            raise ParseError(f'{where}: malformed entry {entry!r}') from exc
        if name not in basis_index:
            raise ParseError(f'{where}: unknown basis form {name!r}')
        accumulator.add_term((basis_index[name],), parse_scalar(coeff, params))
    return accumulator.result()


def _parse_group_element(group: HopfPresentation, entries, params: dict, where: str) -> Combination:
    accumulator = Accumulator()
    for entry in entries:
        try:
            coeff, names = entry
        except (TypeError, ValueError) as exc:
            raise ParseError(f'{where}: malformed entry {entry!r}') from exc
        accumulator.add(group.word(*names), parse_scalar(coeff, params))
    return accumulator.result()


def _parse_ideal_entry(group: HopfPresentation, entry, params: dict, pack: str) -> Combination:
    if isinstance(entry, dict):
        factors = entry.get('product')
        if not factors:
            raise ParseError(f'{pack} ideal: expected a product of elements, got {entry!r}')
        return group.mul(*(_parse_group_element(group, factor, params, f'{pack} ideal') for factor in factors))
    return _parse_group_element(group, entry, params, f'{pack} ideal')


def calculus_from_pack(data: dict, params: dict | None = None) -> CalculusSpec:
    """
    Build a calculus from parsed pack data.

    Args:
        data: Pack contents
        params: Values for the pack's free parameters, e.g. {'lambda': '2'};
            they override the pack's own parameter defaults

    Returns:
        The calculus; tables are not validated here
    """
    pack = data.get('name', '<calculus>')
    group = load_group(require(data, 'group', pack))
    values = {name: parse_scalar(value) for name, value in data.get('parameters', {}).items()}
    values.update({name: parse_scalar(value) for name, value in (params or {}).items()})
    values = {name: value for name, value in values.items() if value.render() != name}
    basis = list(require(data, 'basis', pack))
    basis_index = {name: position for position, name in enumerate(basis)}

    pi_table = require(data, 'pi', pack)
    pi_letters = {}
    for generator in group.generators:
        if generator not in pi_table:
            raise SpecIncompleteError(f'calculus {pack}: pi of {generator} is missing')
        pi_letters[generator] = _parse_forms(basis_index, pi_table[generator], values, f'{pack} pi')

    circ_table = require(data, 'circ', pack)
    circ_letters = {}
    for position, name in enumerate(basis):
        row = circ_table.get(name)
        if row is None:
            raise SpecIncompleteError(f'calculus {pack}: circ row of {name} is missing')
        for letter, generator in enumerate(group.generators):
            if generator not in row:
                raise SpecIncompleteError(f'calculus {pack}: {name} o {generator} is missing')
            circ_letters[(position, letter)] = _parse_forms(
                basis_index, row[generator], values, f'{pack} circ {name}'
            )

    preimage_table = require(data, 'preimages', pack)
    preimages = {}
    for name in basis:
        if name not in preimage_table:
            raise SpecIncompleteError(f'calculus {pack}: preimage of {name} is missing')
        preimages[name] = _parse_group_element(group, preimage_table[name], values, f'{pack} preimage')

    ideal = [_parse_ideal_entry(group, entry, values, pack) for entry in data.get('ideal', [])]
    calculus = CalculusSpec(
        pack, group, basis, pi_letters, circ_letters, preimages, ideal,
        bicovariant=bool(data.get('bicovariant', False)),
        delta_mode=data.get('delta', 'preimage'),
        parameters=values,
        description=data.get('description', ''),
    )
    for name in basis:
        if calculus.pi(preimages[name]) != calculus.form(name):
            raise SpecIncompleteError(f'calculus {pack}: preimage of {name} does not map to {name}')
        if group.counit(preimages[name]) != ZERO:
            raise SpecIncompleteError(f'calculus {pack}: preimage of {name} is not in ker(eps)')
    logger.info(f'Loaded calculus {pack} over {group.name} with basis {", ".join(basis)}')
    return calculus


@lru_cache(maxsize=None)
def _load_builtin_calculus(pack_id: str, params: tuple) -> CalculusSpec:
    return calculus_from_pack(load_pack('calculus', pack_id, kind='calculus'), dict(params))


def load_calculus(pack_id: str = '3d', params: dict | None = None,
                  pack_file: str | None = None) -> CalculusSpec:
    """
    Load a calculus pack by id or from a file.

    Built-ins: 3d, 4d+, classical, u1-from-3d, u1-from-4d+, u1-classical,
    u1-line (lambda symbolic unless given in params).
    """
    if pack_file:
        return calculus_from_pack(read_pack_file(pack_file), params)
    frozen = tuple(sorted((name, str(value)) for name, value in (params or {}).items()))
    return _load_builtin_calculus(pack_id, frozen)


def available_calculi() -> list[str]:
    return available_packs('calculus')
