from driftmem.models.base import MemoryModel
from driftmem.models.dam3 import Dam3Model
from driftmem.models.diagnostics import DIAGNOSTIC_COLUMNS, StepDiagnostics, TransferLog
from driftmem.models.samknn import SamKnnBaseline

__all__ = [
    "DIAGNOSTIC_COLUMNS",
    "Dam3Model",
    "MemoryModel",
    "SamKnnBaseline",
    "StepDiagnostics",
    "TransferLog",
]
