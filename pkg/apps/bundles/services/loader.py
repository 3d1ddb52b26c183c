"""
Bundle packs.

A bundle pack names the structure group calculus and the data of one of the
bundle constructions:

    trivial        base (preset name or data), optional potential
    homogeneous    space_calculus, horizontal letters, splitting, lifts
    reconstructed  space group, lifts
    total          space_calculus, horizontal_forms, lifts, connection
"""
import logging

from apps.algebra.exceptions import ParseError
from apps.algebra.services.hopf import load_group, load_restriction
from apps.algebra.services.packs import available_packs, load_pack, read_pack_file, require
from apps.bundles.services.base import make_base_dga
from apps.bundles.services.bundlecalc import (
    BUNDLE_KINDS,
    BundleContext,
    TotalSpaceBundle,
    make_reconstructed_bundle,
    make_trivial_bundle,
    parse_base_generators,
    parse_form_combination,
    parse_lifts,
)
from apps.bundles.services.homogeneous import homogeneous_from_pack
from apps.calculus.services.focalc import load_calculus
from apps.calculus.services.grext import build_invariant_forms

logger = logging.getLogger(__name__)


def bundle_from_pack(data: dict, params: dict | None = None, cap: int = 4, mode: str | None = None,
                     base: str | dict | None = None) -> BundleContext:
    """
    Build a bundle from parsed pack data.

    Args:
        data: Pack contents
        params: Calculus parameter values, e.g. {'lambda': '2'}
        cap: Degree cap of every form algebra
        mode: 'envelope' or 'exterior' for the structure group forms;
            defaults to the pack's mode
        base: Base preset or data overriding the pack's base (trivial bundles)

    Returns:
        The bundle; its pack data is kept as bundle.pack
    """
    pack = data.get('name', '<bundle>')
    kind = require(data, 'type', pack)
    if kind not in BUNDLE_KINDS:
        raise ParseError(f'bundle {pack}: unknown type {kind!r}')
    values = dict(data.get('parameters', {}))
    values.update(params or {})
    calculus = load_calculus(require(data, 'calculus', pack), params=values or None)
    forms = build_invariant_forms(calculus, mode or data.get('mode', 'envelope'), cap)
    if kind == 'trivial':
        bundle = make_trivial_bundle(
            make_base_dga(base or data.get('base', 'default'), cap), calculus, forms, pack, cap,
        )
    elif kind == 'homogeneous':
        bundle = homogeneous_from_pack(data, calculus, forms, cap)
    elif kind == 'reconstructed':
        space = load_group(require(data, 'space', pack))
        bundle = make_reconstructed_bundle(
            space, calculus, forms, load_restriction(space.name, calculus.group.name),
            parse_lifts(space, calculus.group, data.get('lifts', {}), pack), pack,
            parse_base_generators(space, data.get('base_generators', []), pack), cap,
        )
    else:
        space_calculus = load_calculus(require(data, 'space_calculus', pack))
        space = space_calculus.group
        space_forms = build_invariant_forms(space_calculus, data.get('space_mode', 'exterior'), cap)
        horizontal = {
            name: parse_form_combination(space_calculus, entries, f'{pack} horizontal {name}', values)
            .map_keys(lambda key: ((), key))
            for name, entries in data.get('horizontal_forms', {}).items()
        }
        bundle = TotalSpaceBundle(
            pack, space_calculus, space_forms, calculus, forms,
            load_restriction(space.name, calculus.group.name),
            lifts=parse_lifts(space, calculus.group, data.get('lifts', {}), pack),
            base_generators=[
                (label, x.map_keys(lambda word: (word, ())))
                for label, x in parse_base_generators(space, data.get('base_generators', []), pack)
            ],
            horizontal_forms=horizontal, cap=cap,
        )
    bundle.pack = data
    bundle.parameters = values
    return bundle


def load_bundle(pack_id: str = 'hopf-3d', params: dict | None = None, cap: int = 4, mode: str | None = None,
                pack_file: str | None = None, base: str | dict | None = None) -> BundleContext:
    """
    Load a bundle pack by id or from a file.

    Built-ins: hopf-3d, hopf-4dplus, hopf-classical, hopf-reconstruct,
    trivial-default, line-bundle, trivial-transgression.
    """
    data = read_pack_file(pack_file) if pack_file else load_pack('bundles', pack_id, kind='bundle')
    logger.info(f'Loading bundle {data.get("name", pack_id)} with cap {cap}')
    return bundle_from_pack(data, params, cap, mode, base)


def available_bundles() -> list[str]:
    return available_packs('bundles')
