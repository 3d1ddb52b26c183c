"""
Exact sparse row reduction.

An EchelonSpace keeps a subspace of a space of Combinations in fully reduced
row echelon form: every row has a pivot key with coefficient one, and no row
mentions another row's pivot. The pivot of a new row is its smallest key in
the basis order, so the keys that survive as normal words are the larger ones.
Rows may carry an origin, the combination of added vectors they came from,
which is what kernels and coordinate solves are read off.
"""
import logging
from collections.abc import Callable, Iterable

from apps.algebra.exceptions import BundleCalcError
from apps.algebra.services.linear import ZERO_COMBINATION, Accumulator, Combination, _sort_key
from apps.algebra.services.scalars import ONE

logger = logging.getLogger(__name__)


class EchelonSpace:
    """Subspace spanned by Combinations, kept in reduced echelon form."""

    def __init__(self, name: str = 'span', track_origins: bool = False):
        self.name = name
        self.track_origins = track_origins
        self._rows = {}
        self._columns = {}

    def __len__(self):
        return len(self._rows)

    def __contains__(self, vector: Combination) -> bool:
        return self.contains(vector)

    @property
    def dimension(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows, key=_sort_key)

    def basis(self) -> list[Combination]:
        return [self._rows[pivot][0] for pivot in self.pivots]

    def row(self, pivot) -> Combination:
        return self._rows[pivot][0]

    def origin(self, pivot) -> Combination:
        return self._rows[pivot][1]

    def reduce_with_origin(self, vector: Combination, origin: Combination = ZERO_COMBINATION):
        """
        Reduce a vector against the rows.

        Rows never mention foreign pivots, so a single pass with the vector's
        own coefficients clears every pivot.

        Returns:
            (remainder, origin of the remainder)
        """
        remainder = Accumulator(vector)
        source = Accumulator(origin) if self.track_origins else None
        for key, coeff in vector.items():
            entry = self._rows.get(key)
            if entry is None:
                continue
            remainder.add(entry[0], -coeff)
            if source is not None:
                source.add(entry[1], -coeff)
        return remainder.result(), (source.result() if source is not None else ZERO_COMBINATION)

    def reduce(self, vector: Combination) -> Combination:
        return self.reduce_with_origin(vector)[0]

    def contains(self, vector: Combination) -> bool:
        return not self.reduce(vector)

    def add(self, vector: Combination, origin: Combination = ZERO_COMBINATION) -> bool:
        """Add a vector; returns False if it was already in the span."""
        remainder, source = self.reduce_with_origin(vector, origin)
        if not remainder:
            return False
        self._insert(remainder, source)
        return True

    def extend(self, vectors: Iterable[Combination]) -> int:
        return sum(1 for vector in vectors if self.add(vector))

    def _insert(self, remainder: Combination, source: Combination):
        pivot = min(remainder, key=_sort_key)
        factor = remainder[pivot].inverse()
        row = remainder.scale(factor)
        source = source.scale(factor) if self.track_origins else ZERO_COMBINATION
        for other in list(self._columns.pop(pivot, ())):
            other_row, other_source = self._rows[other]
            coeff = other_row[pivot]
            updated = other_row - row.scale(coeff)
            self._unindex(other, other_row)
            self._rows[other] = (
                updated,
                other_source - source.scale(coeff) if self.track_origins else ZERO_COMBINATION,
            )
            self._index(other, updated)
        self._rows[pivot] = (row, source)
        self._index(pivot, row)

    def _index(self, pivot, row: Combination):
        for key in row:
            if key != pivot:
                self._columns.setdefault(key, set()).add(pivot)

    def _unindex(self, pivot, row: Combination):
        for key in row:
            if key != pivot:
                holders = self._columns.get(key)
                if holders is not None:
                    holders.discard(pivot)
                    if not holders:
                        del self._columns[key]

    def complement(self, keys: Iterable) -> list:
        """Keys of a spanning set that are not pivots, in basis order."""
        return sorted((key for key in keys if key not in self._rows), key=_sort_key)

    def express(self, vector: Combination) -> Combination:
        """
        Coordinates of a vector in terms of the origins of the added vectors.

        Raises:
            BundleCalcError: If the vector is outside the span
        """
        if not self.track_origins:
            raise BundleCalcError(f'{self.name} does not track origins')
        remainder, source = self.reduce_with_origin(vector)
        if remainder:
            raise BundleCalcError(f'vector is not in {self.name}')
        return -source


def kernel(keys: Iterable, image: Callable[[object], Combination], name: str = 'kernel') -> list[Combination]:
    """
    Kernel of the linear map fixed by its values on basis keys.

    Args:
        keys: Basis keys of the source, processed in the given order
        image: Maps a key to its image Combination

    Returns:
        Kernel vectors over the source keys, one per dependent key
    """
    images = EchelonSpace(f'{name}-image', track_origins=True)
    found = []
    for key in keys:
        remainder, source = images.reduce_with_origin(image(key), Combination.monomial(key, ONE))
        if remainder:
            images._insert(remainder, source)
        else:
            found.append(source)
    logger.debug(f'{name}: {len(found)} kernel vectors, image rank {images.dimension}')
    return found


def span(vectors: Iterable[Combination], name: str = 'span') -> EchelonSpace:
    space = EchelonSpace(name)
    space.extend(vectors)
    return space
