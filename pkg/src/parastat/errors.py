"""Shared exception types. CLI exit codes map onto these."""


class ParastatError(Exception):
    """Base class for all workbench errors."""


class ArgumentError(ParastatError, ValueError):
    """Invalid argument or parameter combination (CLI exit code 2)."""


class ShapeError(ParastatError, ValueError):
    """Matrix dimension mismatch."""


class SizingError(ParastatError, RuntimeError):
    """Requested build exceeds the configured dimension budget (CLI exit code 3)."""


class HermiticityError(ParastatError, ValueError):
    """Operator fails a hermiticity precondition; carries the violation magnitude."""

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class StructureError(ParastatError, RuntimeError):
    """A constructed representation violates a structural expectation
    (e.g. non-integer number-operator spectrum, signalling a wrong braiding choice)."""
