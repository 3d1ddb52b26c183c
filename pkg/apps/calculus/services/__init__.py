from .focalc import CalculusSpec, calculus_from_pack, load_calculus
from .grext import (
    GradedQuotient,
    InvariantForms,
    antisymmetrizer,
    antisymmetrizer_factorized,
    build_invariant_forms,
    envelope_generators,
)
from .linalg import EchelonSpace, kernel, span

__all__ = [
    'CalculusSpec', 'EchelonSpace', 'GradedQuotient', 'InvariantForms', 'antisymmetrizer',
    'antisymmetrizer_factorized', 'build_invariant_forms', 'calculus_from_pack',
    'envelope_generators', 'kernel', 'load_calculus', 'span',
]
