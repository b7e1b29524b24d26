"""Konfigurasi run: toleransi numerik dan parameter CLI.

Usage:
    from config import RunConfig, Tolerance
    cfg = RunConfig(tol=Tolerance(eps=1e-10), max_word_length=6, seed=7)
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from utils.errors import ConfigError

MAX_WORD_LENGTH_CAP = 14
MAX_SUBSYSTEM_RANK = 12

OutputFormat = Literal["json", "svg", "ply", "csv"]


@dataclass(frozen=True)
class Tolerance:
    """Numeric tolerances shared by every decision procedure.

    Attributes:
        eps: Definiteness, normalization and rank threshold.
        delta: Angle tolerance when recognizing pi/m dihedral angles.
        grid: Dedup radius for group elements.
        audit: Exact-distance band below which two matrices are the same element.
        gap: Relative eigen-gap for bi-proximal elements.
        vertex: Active-constraint tolerance in the face lattice.
        overlap: Interior test margin for tiling disjointness.
    """

    eps: float = 1e-9
    delta: float = 1e-6
    grid: float = 1e-6
    audit: float = 1e-9
    gap: float = 1e-6
    vertex: float = 1e-8
    overlap: float = 1e-7

    def __post_init__(self) -> None:
        if not 0 < self.eps < self.delta < 1:
            raise ConfigError(
                f"need 0 < eps < delta < 1, got eps={self.eps}, delta={self.delta}",
                locus={"eps": self.eps, "delta": self.delta},
            )
        if not 0 < self.audit <= self.grid:
            raise ConfigError(
                f"need 0 < audit <= grid, got audit={self.audit}, grid={self.grid}"
            )


DEFAULT_TOLERANCE = Tolerance()


@dataclass
class RunConfig:
    tol: Tolerance = field(default_factory=Tolerance)
    max_word_length: int = 8
    seed: int = 0
    out: Path | None = None
    output_format: OutputFormat = "json"
    n_words: int = 400
    word_length_range: tuple[int, int] = (10, 20)

    def __post_init__(self) -> None:
        if not 0 <= self.max_word_length <= MAX_WORD_LENGTH_CAP:
            raise ConfigError(
                f"max word length {self.max_word_length} outside [0, {MAX_WORD_LENGTH_CAP}]",
                locus={"max_word_length": self.max_word_length},
            )
        low, high = self.word_length_range
        if not 1 <= low <= high:
            raise ConfigError(f"bad word length range {self.word_length_range}")
        if self.n_words < 1:
            raise ConfigError(f"n_words must be positive, got {self.n_words}")
