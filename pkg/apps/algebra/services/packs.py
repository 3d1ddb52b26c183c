"""
Data pack lookup.

Packs are JSON files shipped in each app's packs/ directory. Extra directories
from BUNDLECALC_PACK_DIRS are searched first, and an explicit file path always
wins.
"""
import json
import logging
from pathlib import Path

from django.conf import settings

from apps.algebra.exceptions import PackNotFoundError, ParseError

logger = logging.getLogger(__name__)

APPS_DIR = Path(__file__).resolve().parents[2]


def pack_directories(app: str) -> list[Path]:
    extra = [Path(directory) for directory in getattr(settings, 'BUNDLECALC_PACK_DIRS', [])]
    return extra + [APPS_DIR / app / 'packs']


def available_packs(app: str) -> list[str]:
    names = set()
    for directory in pack_directories(app):
        if directory.is_dir():
            names.update(path.stem for path in directory.glob('*.json'))
    return sorted(names)


def read_pack_file(path) -> dict:
    path = Path(path)
    try:
        with path.open(encoding='utf-8') as handle:
            data = json.load(handle)
    except FileNotFoundError as exc:
        raise PackNotFoundError(f'pack file {path} does not exist') from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f'pack file {path} is not valid JSON: {exc}') from exc
    if not isinstance(data, dict):
        raise ParseError(f'pack file {path} must contain a JSON object')
    return data


def load_pack(app: str, pack_id: str, kind: str | None = None) -> dict:
    """
    Load a pack by id from the app's pack directories.

    Args:
        app: App directory name, e.g. 'calculus'
        pack_id: Pack id, which is the file stem
        kind: Optional value the pack's "kind" field must have

    Returns:
        Parsed pack data
    """
    for directory in pack_directories(app):
        path = directory / f'{pack_id}.json'
        if path.is_file():
            logger.debug(f'Loading {app} pack {pack_id} from {path}')
            data = read_pack_file(path)
            if kind and data.get('kind', kind) != kind:
                raise ParseError(f'pack {pack_id} is a {data.get("kind")} pack, expected {kind}')
            return data
    raise PackNotFoundError(f'no {app} pack named {pack_id!r}')


def require(data: dict, field: str, pack: str):
    if field not in data:
        raise ParseError(f'pack {pack} is missing the field {field!r}')
    return data[field]
