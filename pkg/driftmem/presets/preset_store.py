import json
import os
from typing import Any, Dict, List

from driftmem.errors import UnknownPresetError

BASE_DIR = os.path.dirname(__file__)
PACK_PATH = os.path.join(BASE_DIR, "packs", "stream_presets.json")

with open(PACK_PATH, "r", encoding="utf-8") as f:
    _PACK: Dict[str, Any] = json.load(f)

PRESET_PACK_VERSION: str = _PACK["preset_pack_version"]
_PRESETS: Dict[str, Dict[str, Any]] = _PACK["presets"]


def normalize_name(name: str) -> str:
    """Case-insensitive, underscore-blind lookup key: SEA_S, sea_s and SeaS all match."""
    return name.replace("_", "").replace("-", "").lower()


_BY_KEY = {normalize_name(name): name for name in _PRESETS}


def preset_names() -> List[str]:
    return list(_PRESETS)


def is_preset(name: str) -> bool:
    return normalize_name(name) in _BY_KEY


def canonical_name(name: str) -> str:
    try:
        return _BY_KEY[normalize_name(name)]
    except KeyError:
        known = ", ".join(preset_names())
        raise UnknownPresetError(f"unknown preset {name!r} (known: {known})") from None


def get_preset(name: str) -> Dict[str, Any]:
    return dict(_PRESETS[canonical_name(name)])
