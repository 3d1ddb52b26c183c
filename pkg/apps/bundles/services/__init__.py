from .base import BASE_PRESETS, make_base_dga
from .bundlecalc import BundleContext, TotalSpaceBundle, VhBundle, check_horizontal_data, omega_build
from .connections import (
    Connection,
    FormMap,
    bianchi_residual,
    bracket,
    build_connection,
    connection_report,
    covariant_derivative,
    curvature,
    horizontal_project,
    multiplicativity_defect,
    regularity_defect,
)
from .crossed import CrossedProduct, GradedTensorProduct
from .gauge import gauge_apply, gauge_field, gauge_report
from .homogeneous import HomogeneousSplitting, lp_relations, make_homogeneous_bundle
from .loader import available_bundles, bundle_from_pack, load_bundle
from .weil import invariant_space, transgress, weil_eval

__all__ = [
    'BASE_PRESETS', 'BundleContext', 'Connection', 'CrossedProduct', 'FormMap', 'GradedTensorProduct',
    'HomogeneousSplitting', 'TotalSpaceBundle', 'VhBundle', 'available_bundles', 'bianchi_residual',
    'bracket', 'build_connection', 'bundle_from_pack', 'check_horizontal_data', 'connection_report',
    'covariant_derivative', 'curvature', 'gauge_apply', 'gauge_field', 'gauge_report',
    'horizontal_project', 'invariant_space', 'load_bundle', 'lp_relations', 'make_base_dga', 'make_homogeneous_bundle',
    'multiplicativity_defect', 'omega_build', 'regularity_defect', 'transgress', 'weil_eval',
]
