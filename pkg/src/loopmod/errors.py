"""Typed errors shared across the engine.

Every error carries a structured ``data`` payload so the CLI can emit it as a
machine-readable diagnostic.
"""

from __future__ import annotations


class EngineError(Exception):
    def __init__(self, message: str, **data):
        super().__init__(message)
        self.data = data


class InputError(EngineError):
    """Malformed or invalid input (files, parameters, schema)."""


class OrderMismatchError(EngineError):
    """Arithmetic mixing scalars of different cyclotomic order."""


class TrivialModuleError(EngineError):
    """All weights in the table are zero; no nontrivial module exists."""


class NoPeriodWithinBoundError(EngineError):
    """No axis period found within the search bound."""


class SupportNotSubgroupError(EngineError):
    """The nonvanishing degree set failed the subgroup closure audit."""


class StructureViolationError(EngineError):
    """Input violates the block/divisibility structure of classified modules."""


class ImageMismatchError(EngineError):
    """Twisted classification requested on data whose restricted image is smaller."""


class InfiniteIndexError(EngineError):
    """Operation requires a finite-index (full-rank) lattice."""


class CapExceededError(EngineError):
    """Realizer dimension cap exceeded."""


class RealizationMismatchError(EngineError):
    """Realized graded components failed a decomposition consistency check."""


class UnsupportedError(EngineError):
    """Requested a combination outside the supported tables."""
