"""
Twisted and graded tensor products of graded *-algebras.

Every algebra of forms on a bundle is assembled from these two products: the
verticalized algebra, the horizontal algebra of a homogeneous bundle, the
reconstructed forms on the total space and the full calculus of the structure
group are crossed products; trivial bundles and the targets of the extended
coaction are graded tensor products.
"""
import logging

from apps.algebra.exceptions import CapExceededError
from apps.algebra.services.graded import GradedAlgebra, sign
from apps.algebra.services.linear import ZERO_COMBINATION, Accumulator, Combination, join_labels
from apps.algebra.services.scalars import ONE

logger = logging.getLogger(__name__)


def _parity(degree: int):
    return -ONE if degree % 2 else ONE


class CrossedProduct(GradedAlgebra):
    """
    left (x) right with the right factor moved past the left one through a twist.

    The twist sends a left key to sum_k (phi_k, c_k) with c_k a word of the
    Hopf algebra acting on the right factor, and

        (psi (x) eta)(phi (x) theta) = (-1)^(deg phi deg eta) sum_k psi phi_k (x) (eta o c_k) theta
        (phi (x) theta)* = sum_k phi_k* (x) (theta* o c_k*)
        d(phi (x) theta) = D(phi) (x) theta + (-1)^(deg phi) sum_k phi_k (x) germ(c_k) theta
                           + (-1)^(deg phi) (phi (x) 1) d(1 (x) theta)

    where d(1 (x) theta) is the right differential, extended letterwise by the
    curvature when one is given.

    Attributes:
        left: Left factor
        right: Right factor, a GradedQuotient with a right action of hopf
        hopf: Hopf algebra of the twist words
    """

    def __init__(self, name: str, left: GradedAlgebra, right: GradedAlgebra, hopf, twist, germs,
                 left_d=None, curvature=None, cap: int | None = None, truncate: bool = False,
                 separator: str = ' (x) '):
        super().__init__(cap=cap, truncate=truncate)
        self.name = name
        self.left = left
        self.right = right
        self.hopf = hopf
        self.separator = separator
        self.unit_key = (left.unit_key, right.unit_key)
        self._twist = twist
        self._germs = germs
        self._left_d = left_d
        self._curvature = curvature
        self._twists = {}
        self._germ_cache = {}
        self._right_differentials = {}

    def __repr__(self):
        return f'CrossedProduct({self.name!r})'

    # Keys and elements

    def degree(self, key) -> int:
        return self.left.degree(key[0]) + self.right.degree(key[1])

    def label(self, key) -> str:
        left_key, right_key = key
        parts = []
        if left_key != self.left.unit_key:
            parts.append(self.left.label(left_key))
        if right_key != self.right.unit_key:
            parts.append(self.right.label(right_key))
        return join_labels(parts, self.separator) if parts else '1'

    def keys(self, degree: int, left_keys: list) -> list:
        """Basis keys of the given degree whose left part is among left_keys."""
        found = []
        for left_key in left_keys:
            rest = degree - self.left.degree(left_key)
            if rest < 0:
                continue
            try:
                right_keys = self.right.basis(rest)
            except CapExceededError:
                continue
            found.extend((left_key, right_key) for right_key in right_keys)
        return found

    def embed_left(self, x: Combination) -> Combination:
        unit = self.right.unit_key
        return x.map_keys(lambda key: (key, unit))

    def embed_right(self, x: Combination) -> Combination:
        unit = self.left.unit_key
        return x.map_keys(lambda key: (unit, key))

    def pair(self, x: Combination, y: Combination) -> Combination:
        """x (x) y for a left element x and a right element y."""
        return x.tensor(y)

    def left_part(self, x: Combination) -> Combination:
        """Terms whose right factor is the unit, as a left element."""
        unit = self.right.unit_key
        return Combination._raw({key[0]: coeff for key, coeff in x.items() if key[1] == unit})

    def right_degree_part(self, x: Combination, degree: int) -> Combination:
        return x.filter_keys(lambda key: self.right.degree(key[1]) == degree)

    def twist(self, left_key) -> Combination:
        cached = self._twists.get(left_key)
        if cached is None:
            if left_key == self.left.unit_key:
                cached = Combination.monomial((left_key, ()))
            else:
                cached = self._twist(left_key)
            self._twists[left_key] = cached
        return cached

    def germ(self, word: tuple) -> Combination:
        cached = self._germ_cache.get(word)
        if cached is None:
            cached = self._germs(word)
            self._germ_cache[word] = cached
        return cached

    # Structure

    def _mul_keys(self, left_key, right_key) -> Combination:
        left, right = self.left, self.right
        first, acting = left_key
        second, tail = right_key
        if acting == right.unit_key:
            return left.mul_keys(first, second).map_keys(lambda key: (key, tail))
        parity = _parity(left.degree(second) * right.degree(acting))
        accumulator = Accumulator()
        for (moved, word), coeff in self.twist(second).items():
            head = left.mul_keys(first, moved)
            if not head:
                continue
            acted = right.circ_word(acting, word)
            if not acted:
                continue
            accumulator.add(head.tensor(right.mul(acted, Combination.monomial(tail))), coeff * parity)
        return accumulator.result()

    def _d_key(self, key) -> Combination:
        left, right = self.left, self.right
        left_key, right_key = key
        accumulator = Accumulator()
        if self._left_d is not None:
            accumulator.add(self._left_d(left_key).map_keys(lambda k: (k, right_key)))
        parity = _parity(left.degree(left_key))
        tail = Combination.monomial(right_key)
        for (moved, word), coeff in self.twist(left_key).items():
            germ = self.germ(word)
            if germ:
                accumulator.add(Combination.monomial(moved).tensor(right.mul(germ, tail)), coeff * parity)
        if right_key != right.unit_key:
            head = Combination.monomial((left_key, right.unit_key))
            accumulator.add(self.mul(head, self.right_differential(right_key)), parity)
        return accumulator.result()

    def right_differential(self, right_key) -> Combination:
        """d(1 (x) theta) for a right basis key."""
        cached = self._right_differentials.get(right_key)
        if cached is not None:
            return cached
        right = self.right
        if self._curvature is None:
            result = self.embed_right(right.d_key(right_key))
        else:
            accumulator = Accumulator()
            prefix_degree = 0
            for position, letter in enumerate(right_key):
                image = self.embed_left(self._curvature(letter)) + self.embed_right(right.d_key((letter,)))
                if image:
                    prefix = self.embed_right(right.normal_word(right_key[:position]))
                    suffix = self.embed_right(right.normal_word(right_key[position + 1:]))
                    accumulator.add(self.mul(prefix, image, suffix), _parity(prefix_degree))
                prefix_degree += right.letter_degrees[letter]
            result = accumulator.result()
        self._right_differentials[right_key] = result
        return result

    def star_key(self, key) -> Combination:
        left, right, hopf = self.left, self.right, self.hopf
        left_key, right_key = key
        starred = right.star_key(right_key)
        accumulator = Accumulator()
        for (moved, word), coeff in self.twist(left_key).items():
            acted = right.circ(starred, hopf.star(Combination.monomial(word)))
            if acted:
                accumulator.add(left.star_key(moved).tensor(acted), coeff.conjugate())
        return accumulator.result()


class GradedTensorProduct(GradedAlgebra):
    """
    Graded tensor product with (x (x) y)(x' (x) y') = (-1)^(deg y deg x') xx' (x) yy'.

    The differential is the graded sum of the factor differentials and the
    star acts factorwise.
    """

    def __init__(self, name: str, left: GradedAlgebra, right: GradedAlgebra, cap: int | None = None,
                 truncate: bool = False, separator: str = ' (x) '):
        super().__init__(cap=cap, truncate=truncate)
        self.name = name
        self.left = left
        self.right = right
        self.separator = separator
        self.unit_key = (left.unit_key, right.unit_key)

    def __repr__(self):
        return f'GradedTensorProduct({self.name!r})'

    def degree(self, key) -> int:
        return self.left.degree(key[0]) + self.right.degree(key[1])

    def label(self, key) -> str:
        left_key, right_key = key
        parts = []
        if left_key != self.left.unit_key:
            parts.append(self.left.label(left_key))
        if right_key != self.right.unit_key:
            parts.append(self.right.label(right_key))
        return join_labels(parts, self.separator) if parts else '1'

    def keys(self, degree: int, left_keys: list | None = None, right_keys: list | None = None) -> list:
        """
        Basis keys of one degree. Omitted key lists default to the factor's
        basis in every degree up to the requested one.
        """
        found = []
        for left_degree in range(degree + 1):
            try:
                lefts = self.left.basis(left_degree) if left_keys is None else [
                    key for key in left_keys if self.left.degree(key) == left_degree
                ]
                rights = self.right.basis(degree - left_degree) if right_keys is None else [
                    key for key in right_keys if self.right.degree(key) == degree - left_degree
                ]
            except CapExceededError:
                continue
            found.extend((left, right) for left in lefts for right in rights)
        return found

    def embed_left(self, x: Combination) -> Combination:
        unit = self.right.unit_key
        return x.map_keys(lambda key: (key, unit))

    def embed_right(self, x: Combination) -> Combination:
        unit = self.left.unit_key
        return x.map_keys(lambda key: (unit, key))

    def _mul_keys(self, left_key, right_key) -> Combination:
        first, second = left_key
        third, fourth = right_key
        head = self.left.mul_keys(first, third)
        if not head:
            return ZERO_COMBINATION
        tail = self.right.mul_keys(second, fourth)
        if not tail:
            return ZERO_COMBINATION
        return head.tensor(tail).scale(sign(self.right.degree(second), self.left.degree(third)))

    def _d_key(self, key) -> Combination:
        left_key, right_key = key
        result = self.left.d_key(left_key).map_keys(lambda k: (k, right_key))
        tail = self.right.d_key(right_key)
        if tail:
            result = result + Combination.monomial(left_key).tensor(tail).scale(
                _parity(self.left.degree(left_key))
            )
        return result

    def star_key(self, key) -> Combination:
        return self.left.star_key(key[0]).tensor(self.right.star_key(key[1]))
