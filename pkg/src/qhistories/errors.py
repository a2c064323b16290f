"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class QHistoriesError(Exception):
    """Base class for errors raised by this package."""


class NotHermitianError(QHistoriesError, ValueError):
    """Input matrix is not Hermitian within tolerance.

    Carries the maximum asymmetry max|H - H^dagger| actually measured.
    """

    def __init__(self, message: str, max_asymmetry: float):
        super().__init__(message)
        self.max_asymmetry = float(max_asymmetry)


class EigensolverError(QHistoriesError, RuntimeError):
    """The underlying eigensolver failed to converge."""


class DimensionCapError(QHistoriesError, ValueError):
    """A constructed object would exceed the configured dimension cap."""


class BudgetExceededError(QHistoriesError, ValueError):
    """An enumeration or evaluation would exceed its work budget.

    ``required`` is the amount of work requested, ``budget`` the cap it
    ran into.
    """

    def __init__(self, message: str, required: int, budget: int):
        super().__init__(message)
        self.required = int(required)
        self.budget = int(budget)


class PostSelectionError(QHistoriesError, ValueError):
    """Pre- and post-selected states are (numerically) orthogonal."""


@dataclass(frozen=True)
class Diagnostic:
    """One structured validation finding: which field, where, what rule."""

    field: str
    index: int | None
    rule: str
    message: str

    def __str__(self) -> str:
        loc = self.field if self.index is None else f"{self.field}[{self.index}]"
        return f"{loc}: {self.message} (rule: {self.rule})"


class ScenarioValidationError(QHistoriesError, ValueError):
    """A scenario failed validation; carries all diagnostics, not just the first."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class SchemaError(QHistoriesError, ValueError):
    """A scenario document violates the file schema.

    ``location`` is a path such as ``measurements[2].matrix``.
    """

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")
