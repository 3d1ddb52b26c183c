from .hopf import HopfElement, HopfMorphism, HopfPresentation, load_group, load_restriction, restrict_j
from .linear import Combination, render_combination
from .reports import ValidationReport
from .scalars import Scalar, parse_scalar, scalar_eval

__all__ = [
    'Combination', 'HopfElement', 'HopfMorphism', 'HopfPresentation', 'Scalar',
    'ValidationReport', 'load_group', 'load_restriction', 'parse_scalar',
    'render_combination', 'restrict_j', 'scalar_eval',
]
