"""
JSON exports of computed structures: relation tables, base forms and curvature.
"""
import logging
from pathlib import Path

from django.conf import settings

from apps.algebra.exceptions import ParseError
from apps.algebra.services.scalars import parse_scalar
from apps.bundles.services.connections import build_connection, curvature
from apps.bundles.services.homogeneous import lp_relations
from apps.bundles.services.loader import load_bundle
from apps.scenarios.services.config import ScenarioConfig
from apps.scenarios.services.reporter import dump_json

logger = logging.getLogger(__name__)

EXPORT_KINDS = ('relations', 'omegaM', 'curvature')


def _relations(bundle) -> dict:
    lstar = getattr(bundle, 'lstar', None)
    if lstar is None:
        return {'lstar': [], 'lp': bundle.forms.render_relations(2)}
    rows = lstar.render_relations(2)
    return {'lstar': rows, 'lp': lp_relations(bundle)[len(rows):]}


def export_data(kind: str, config: ScenarioConfig) -> dict:
    """
    Compute one export for the bundle of a scenario (or --bundle).

    Raises:
        ParseError: Unknown export kind
    """
    if kind not in EXPORT_KINDS:
        raise ParseError(f'unknown export kind {kind!r}; expected one of {", ".join(EXPORT_KINDS)}')
    params = {'lambda': config.lam} if config.lam else None
    bundle = load_bundle(config.bundle or config.scenario, params=params, cap=config.cap, mode=config.mode,
                         pack_file=config.pack)
    data = {'kind': kind, 'bundle': bundle.name, 'cap': config.cap}
    if kind == 'relations':
        data.update(_relations(bundle))
    elif kind == 'omegaM':
        basis = bundle.omega_M_basis(config.degree)
        data.update({'degree': config.degree, 'basis': [bundle.total.render(x) for x in basis]})
    else:
        values = {'t': parse_scalar(config.t)} if config.t else None
        omega = build_connection(bundle, params=values)
        data.update({'connection': omega.render(), 'curvature': curvature(omega).render()})
    return data


def default_export_path(kind: str, config: ScenarioConfig) -> Path:
    return Path(settings.BUNDLECALC_EXPORT_DIR) / f'{config.bundle or config.scenario}-{kind}.json'


def write_export(kind: str, config: ScenarioConfig, path=None) -> Path:
    """
    Write an export as canonical JSON.

    Raises:
        OSError: The file cannot be written
    """
    path = Path(path) if path else default_export_path(kind, config)
    text = dump_json(export_data(kind, config))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')
    logger.info(f'Wrote {kind} export to {path}')
    return path
