from typing import Any, Dict, Optional

import numpy
import sklearn

from driftmem import __version__
from driftmem.config import DRIFTMEM_PROJECT
from driftmem.presets.preset_store import PRESET_PACK_VERSION


# Single place for the tags/metadata stamped into every run summary
def run_metadata(model: str, dataset: str, seed: int, config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    return {
        "project_name": DRIFTMEM_PROJECT,
        "run_name": f"{model}:{dataset}:seed{seed}",
        "tags": ["stream", "imbalance", f"model:{model}", f"dataset:{dataset}"],
        "metadata": {
            "driftmem_version": __version__,
            "preset_pack_version": PRESET_PACK_VERSION,
            "numpy_version": numpy.__version__,
            "sklearn_version": sklearn.__version__,
            "config": config or {},
        },
    }
