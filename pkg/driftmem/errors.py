from typing import Optional


class DriftmemError(Exception):
    """Base class for every error raised by driftmem."""


class ContractViolation(DriftmemError, ValueError):
    """A caller broke an operation's precondition (dimension mismatch, downdate below zero...)."""


class EmptyMemoryError(DriftmemError):
    """A neighbor query or prediction was attempted on an empty memory."""


class DatasetParseError(DriftmemError):
    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column!r}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.row = row
        self.column = column


class GeneratorStarvationError(DriftmemError):
    """The raw generator could not supply the requested class within its draw budget."""


class UnknownPresetError(DriftmemError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown preset"


class ConfigError(DriftmemError):
    """Invalid experiment configuration, override or environment setting."""
