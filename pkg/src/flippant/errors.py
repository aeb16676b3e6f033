"""Exception hierarchy shared across the package.

Every validation failure carries a short machine-readable ``code`` so the
CLI can emit a JSON diagnostic and a stable exit status.
"""
from __future__ import annotations


class FlippantError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class ValidationError(FlippantError):
    """Malformed or inconsistent input data."""

    code = "invalid"


class TriangulationError(ValidationError):
    """A candidate triangulation violates one of the vertex invariants."""

    code = "invalid-triangulation"


class RegionError(ValidationError):
    """A region does not enclose the data an operation needs."""

    code = "region-too-small"


class PartitionError(ValidationError):
    """A breakpoint sequence is not a standard dyadic partition."""

    code = "invalid-partition"


class WordError(ValidationError):
    """A generator word contains letters outside a, A, b, B."""

    code = "invalid-word"


class LinkIsoError(ValidationError):
    """An arc correspondence is not a link isomorphism."""

    code = "invalid-link-iso"
