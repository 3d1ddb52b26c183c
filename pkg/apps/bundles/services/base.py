"""
Base differential algebras for trivial bundles.

A base is a finitely presented graded-differential *-algebra: graded letters,
homogeneous relations, the differential on letters and hermitian letters.
The built-in presets are stored in the same data format a bundle pack may
use for its own base.
"""
import logging

from apps.algebra.exceptions import CapExceededError, InvalidBaseError, ParseError
from apps.algebra.services.linear import Accumulator, Combination
from apps.algebra.services.scalars import parse_scalar
from apps.calculus.services.grext import GradedQuotient

logger = logging.getLogger(__name__)

BASE_PRESETS = {
    'default': {
        'description': 'Graded-commutative algebra on two degree-one generators with zero differential.',
        'letters': ['e1', 'e2'],
        'relations': [
            [['1', ['e1', 'e1']]],
            [['1', ['e2', 'e2']]],
            [['1', ['e1', 'e2']], ['1', ['e2', 'e1']]],
        ],
    },
    'free': {
        'description': 'Free algebra on e1, e2 truncated above the degree cap, zero differential.',
        'letters': ['e1', 'e2'],
        'truncate': True,
    },
    'exact': {
        'description': 'Graded-commutative algebra on e1 of degree one and f of degree two with d e1 = f.',
        'letters': ['e1', 'f'],
        'degrees': {'f': 2},
        'relations': [
            [['1', ['e1', 'e1']]],
            [['1', ['e1', 'f']], ['-1', ['f', 'e1']]],
        ],
        'd': {'e1': [['1', ['f']]]},
    },
}


def _parse_word_combination(index: dict, entries, where: str) -> Combination:
    accumulator = Accumulator()
    for entry in entries:
        try:
            coeff, names = entry
            word = tuple(index[name] for name in names)
        except KeyError as exc:
            raise ParseError(f'{where}: unknown letter {exc.args[0]!r}') from exc
        except (TypeError, ValueError) as exc:
            raise ParseError(f'{where}: malformed entry {entry!r}') from exc
        accumulator.add_term(word, parse_scalar(coeff))
    return accumulator.result()


def base_from_data(name: str, data: dict, cap: int = 4) -> GradedQuotient:
    """
    Build a base algebra from its data description.

    Args:
        name: Name used in logs and reports
        data: Mapping with 'letters' and optional 'degrees', 'relations', 'd'
            and 'truncate'
        cap: Degree cap

    Returns:
        The base algebra; it is validated by make_base_dga
    """
    letters = list(data.get('letters') or [])
    if not letters:
        raise ParseError(f'base {name} has no letters')
    index = {letter: position for position, letter in enumerate(letters)}
    degrees_table = data.get('degrees', {})
    degrees = [int(degrees_table.get(letter, 1)) for letter in letters]
    relations = {}
    for entries in data.get('relations', []):
        relation = _parse_word_combination(index, entries, f'base {name} relation')
        relation_degrees = {sum(degrees[letter] for letter in word) for word in relation}
        if len(relation_degrees) != 1:
            raise ParseError(f'base {name}: relation {entries!r} is not homogeneous')
        relations.setdefault(relation_degrees.pop(), []).append(relation)
    d_table = {
        index[letter]: _parse_word_combination(index, entries, f'base {name} d({letter})')
        for letter, entries in data.get('d', {}).items()
    }
    return GradedQuotient(
        name, letters, letter_degrees=degrees, relations=relations, cap=cap,
        truncate=bool(data.get('truncate', False)),
        letter_d=(lambda letter: d_table.get(letter, Combination())) if d_table else None,
        letter_star=lambda letter: Combination.monomial((letter,)),
    )


def make_base_dga(preset: str | dict = 'default', cap: int = 4) -> GradedQuotient:
    """
    Build and validate a base algebra.

    Args:
        preset: Preset name (default, free, exact) or a data mapping
        cap: Degree cap

    Returns:
        The validated base

    Raises:
        InvalidBaseError: d^2 = 0, hermicity of d, the star laws or the
            ideal closure fail
    """
    if isinstance(preset, dict):
        name, data = preset.get('name', 'custom'), preset
    elif preset in BASE_PRESETS:
        name, data = preset, BASE_PRESETS[preset]
    else:
        raise ParseError(f'unknown base preset {preset!r}')
    base = base_from_data(name, data, cap)
    keys = [key for degree in range(1, cap) for key in base.basis(degree)]
    try:
        report = base.check_dga(keys, pairs=[
            (left, right) for left in keys for right in keys
            if base.degree(left) + base.degree(right) < cap
        ])
        base.check_ideal(report)
    except CapExceededError as exc:
        raise InvalidBaseError(f'base {name}: {exc}') from exc
    if not report.passed:
        failure = report.failures[0]
        raise InvalidBaseError(f'base {name}: {failure.name} fails at {failure.witness}')
    logger.info(f'Base {name}: dimensions {base.dimensions()}')
    return base
