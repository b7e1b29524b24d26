"""Hierarki error untuk seluruh toolkit.

Setiap error membawa ``locus`` (facet, ridge, vertex, word, ...) supaya report dan CLI
bisa menunjuk lokasi masalah. Tiga cabang utama dipetakan ke exit code CLI:

- ``InputError``        -> 2 (parse / validasi)
- ``PreconditionError`` -> 3 (penolakan karena prasyarat)
- ``IntegrityError``    -> 4 (abort integritas numerik)

Usage:
    from utils.errors import NotCoxeter
    raise NotCoxeter("ridge 1-2 fails (D)", locus={"ridge": ["1", "2"]})
"""

from typing import Any, ClassVar


class CvkError(Exception):
    exit_code: ClassVar[int] = 1

    def __init__(self, message: str, *, locus: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.locus: dict[str, Any] = dict(locus or {})

    def to_dict(self) -> dict[str, Any]:
        """Serialize the error for JSON reports."""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "locus": self.locus,
        }


# --- Input: exit 2 ---
class InputError(CvkError):
    exit_code: ClassVar[int] = 2


class ParseError(InputError):
    pass


class ValidationError(InputError):
    pass


class ConfigError(ValidationError):
    pass


class NonSymmetric(ValidationError):
    pass


class BadDiagonal(ValidationError):
    pass


class BadLabel(ValidationError):
    pass


class AsymmetricZeroPattern(ValidationError):
    pass


class PositiveOffDiagonal(ValidationError):
    pass


class NormalizationError(ValidationError):
    pass


class EmptyInterior(ValidationError):
    pass


class NotProperlyConvex(ValidationError):
    pass


class RedundantFacet(ValidationError):
    pass


class DegenerateLattice(ValidationError):
    pass


class NotAVertex(ValidationError):
    pass


class NotIrreducible(ValidationError):
    pass


class BadPeripheral(ValidationError):
    pass


class ConditionCViolated(ValidationError):
    pass


class AngleNotSubmultiple(ValidationError):
    pass


class NotCoxeter(ValidationError):
    pass


class PointOutside(ValidationError):
    pass


class DegenerateChord(ValidationError):
    pass


# --- Precondition: exit 3 ---
class PreconditionError(CvkError):
    exit_code: ClassVar[int] = 3


class PreconditionUnmet(PreconditionError):
    pass


class NotNegativeType(PreconditionError):
    pass


class NotSimple(PreconditionError):
    pass


class NotLoxodromic(PreconditionError):
    pass


class LinkNotPerfect(PreconditionError):
    pass


class ConeException(PreconditionError):
    pass


class NotTruncable(PreconditionError):
    pass


class CapExceeded(PreconditionError):
    pass


class NoProximalFound(PreconditionError):
    pass


# --- Integrity: exit 4 ---
class IntegrityError(CvkError):
    exit_code: ClassVar[int] = 4


class EigenFailure(IntegrityError):
    pass


class DedupAmbiguity(IntegrityError):
    pass


class OverlapDetected(IntegrityError):
    pass


class FacetsCollide(IntegrityError):
    pass


class PostconditionFailed(IntegrityError):
    pass


class ClassificationMismatch(IntegrityError):
    pass
