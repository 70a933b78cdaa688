import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv, find_dotenv

from driftmem.errors import ConfigError

# Load .env from repo root (works from the CLI, notebooks and tests)
env_path = find_dotenv(usecwd=True)
if not env_path:
    env_path = str(Path(__file__).resolve().parents[1] / ".env")
load_dotenv(env_path, override=False)

REPO_ROOT = Path(__file__).resolve().parents[1]

DRIFTMEM_THREADS = os.getenv("DRIFTMEM_THREADS")
DRIFTMEM_LOG_LEVEL = os.getenv("DRIFTMEM_LOG_LEVEL", "INFO")
DRIFTMEM_PROJECT = os.getenv("DRIFTMEM_PROJECT", "driftmem")
DRIFTMEM_DATA_DIR = Path(os.getenv("DRIFTMEM_DATA_DIR", str(REPO_ROOT / "data" / "datasets")))


def worker_cap(requested: Optional[int] = None) -> int:
    """Size of the seed worker pool: the request (or CPU count), capped by DRIFTMEM_THREADS."""
    size = requested or os.cpu_count() or 1
    if DRIFTMEM_THREADS:
        try:
            cap = int(DRIFTMEM_THREADS)
        except ValueError:
            raise ConfigError(
                f"DRIFTMEM_THREADS must be a positive integer, got {DRIFTMEM_THREADS!r}."
            )
        if cap < 1:
            raise ConfigError(f"DRIFTMEM_THREADS must be a positive integer, got {cap}.")
        size = min(size, cap)
    return max(size, 1)


def require_data_dir() -> Path:
    if not DRIFTMEM_DATA_DIR.is_dir():
        raise ConfigError(
            f"Dataset directory {DRIFTMEM_DATA_DIR} does not exist. "
            "Set DRIFTMEM_DATA_DIR in .env or export it in the shell."
        )
    return DRIFTMEM_DATA_DIR
