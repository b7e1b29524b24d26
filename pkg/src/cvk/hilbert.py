"""Metrik Hilbert dan norm Finsler di affine chart.

Setiap domain Omega diwakili oleh *boundary oracle*: diberikan titik interior
``x`` dan arah ``v``, oracle mengembalikan ``(t_minus, t_plus)`` dengan
``x + t v`` di boundary, ``t_minus < 0 < t_plus``. ``inf`` dipakai kalau garis
tidak keluar dari Omega di sisi itu.

Usage:
    import numpy as np
    from cvk.hilbert import EllipsoidOracle, hilbert_distance

    disk = EllipsoidOracle(np.zeros(2), np.eye(2))
    hilbert_distance(disk, np.zeros(2), np.array([0.5, 0.0]))  # 0.5 * ln 3
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space
from scipy.spatial import ConvexHull

from cvk.polytope import MirrorPolytope
from utils.errors import DegenerateChord, PointOutside
from utils.mlogger import logger

log = logger.bind(module="hilbert")

_INSIDE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class AffineChart:
    """Chart ``{phi = -1}`` of the half-sphere ``{phi < 0}``, coordinates in ``phi^perp``."""

    covector: np.ndarray
    origin: np.ndarray = field(init=False)
    basis: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        phi = np.asarray(self.covector, dtype=float)
        object.__setattr__(self, "covector", phi)
        object.__setattr__(self, "origin", -phi / float(phi @ phi))
        object.__setattr__(self, "basis", null_space(phi[None, :]))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def to_affine(self, points: np.ndarray) -> np.ndarray:
        """Affine coordinates of projective points (rows); they must satisfy ``phi < 0``.

        Raises:
            PointOutside: a point is not in the chart.
        """
        x = np.atleast_2d(np.asarray(points, dtype=float))
        values = x @ self.covector
        if values.max() >= 0:
            raise PointOutside("point is not in the affine chart", locus={"value": float(values.max())})
        lifted = x / (-values)[:, None]
        y = lifted @ self.basis
        return y[0] if np.ndim(points) == 1 else y

    def lift(self, y: np.ndarray) -> np.ndarray:
        return self.origin + np.asarray(y, dtype=float) @ self.basis.T


class BoundaryOracle(ABC):
    @abstractmethod
    def contains(self, x: np.ndarray) -> bool: ...

    @abstractmethod
    def _chord(self, x: np.ndarray, v: np.ndarray) -> tuple[float, float]: ...

    def chord(self, x: np.ndarray, v: np.ndarray) -> tuple[float, float]:
        """Parameters of the two boundary points of the line ``x + t v``.

        Raises:
            PointOutside: ``x`` is not interior.
            DegenerateChord: the line never leaves Omega.
        """
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        if not self.contains(x):
            raise PointOutside("point is not interior", locus={"point": x.tolist()})
        t_minus, t_plus = self._chord(x, v)
        if math.isinf(t_minus) and math.isinf(t_plus):
            raise DegenerateChord(
                "line does not meet the boundary", locus={"point": x.tolist(), "direction": v.tolist()}
            )
        return t_minus, t_plus


def _quadratic_roots(a: float, b: float, c: float) -> tuple[float, float]:
    """Roots around 0 of ``a t^2 + b t + c`` with ``c < 0``."""
    if abs(a) <= _INSIDE_TOL * max(1.0, abs(b), abs(c)):
        if abs(b) <= _INSIDE_TOL:
            return -math.inf, math.inf
        root = -c / b
        return (root, math.inf) if root < 0 else (-math.inf, root)
    disc = b * b - 4 * a * c
    if disc < 0:
        return -math.inf, math.inf
    sq = math.sqrt(disc)
    # bentuk stabil untuk akar kecil
    q = -0.5 * (b + math.copysign(sq, b))
    roots = sorted([q / a, c / q] if q != 0 else [-sq / (2 * a), sq / (2 * a)])
    if a > 0:
        return roots[0], roots[1]
    # a < 0: Omega tidak terbatas sepanjang garis ini
    neg = [r for r in roots if r < 0]
    pos = [r for r in roots if r > 0]
    return (max(neg) if neg else -math.inf), (min(pos) if pos else math.inf)


@dataclass(frozen=True, eq=False)
class PolytopeOracle(BoundaryOracle):
    """``{y : a y <= b}``."""

    a: np.ndarray
    b: np.ndarray

    @classmethod
    def from_polytope(cls, poly: MirrorPolytope, chart: AffineChart) -> "PolytopeOracle":
        rows = poly.alphas @ chart.basis
        return cls(rows, -(poly.alphas @ chart.origin))

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(self.a @ x < self.b - _INSIDE_TOL))

    def _chord(self, x: np.ndarray, v: np.ndarray) -> tuple[float, float]:
        slack = self.b - self.a @ x
        rate = self.a @ v
        t_plus = min((s / r for s, r in zip(slack, rate, strict=True) if r > 0), default=math.inf)
        t_minus = max((s / r for s, r in zip(slack, rate, strict=True) if r < 0), default=-math.inf)
        return float(t_minus), float(t_plus)


class HullOracle(PolytopeOracle):
    """Convex hull of a point cloud, through ``scipy.spatial.ConvexHull`` facets."""

    def __init__(self, points: np.ndarray) -> None:
        hull = ConvexHull(np.asarray(points, dtype=float))
        super().__init__(hull.equations[:, :-1], -hull.equations[:, -1])
        log.debug(f"hull oracle: {len(hull.vertices)} vertices, {len(hull.equations)} facets")


@dataclass(frozen=True, eq=False)
class EllipsoidOracle(BoundaryOracle):
    """``{y : (y - c)^T M (y - c) < 1}`` with ``M`` positive definite."""

    center: np.ndarray
    shape: np.ndarray

    def contains(self, x: np.ndarray) -> bool:
        w = x - self.center
        return float(w @ self.shape @ w) < 1.0 - _INSIDE_TOL

    def _chord(self, x: np.ndarray, v: np.ndarray) -> tuple[float, float]:
        w = x - self.center
        return _quadratic_roots(float(v @ self.shape @ v), 2.0 * float(w @ self.shape @ v), float(w @ self.shape @ w) - 1.0)


@dataclass(frozen=True, eq=False)
class QuadricOracle(BoundaryOracle):
    """Projective ellipsoid ``{Q < 0}`` of a Lorentzian form, read in ``chart``."""

    form: np.ndarray
    chart: AffineChart

    def _value(self, y: np.ndarray) -> float:
        point = self.chart.lift(y)
        return float(point @ self.form @ point)

    def contains(self, x: np.ndarray) -> bool:
        return self._value(x) < -_INSIDE_TOL * float(np.abs(self.form).max())

    def _chord(self, x: np.ndarray, v: np.ndarray) -> tuple[float, float]:
        point = self.chart.lift(x)
        direction = self.chart.basis @ v
        return _quadratic_roots(
            float(direction @ self.form @ direction),
            2.0 * float(point @ self.form @ direction),
            float(point @ self.form @ point),
        )


def hilbert_distance(oracle: BoundaryOracle, x: np.ndarray, y: np.ndarray) -> float:
    """``d(x, y) = 1/2 ln [p : x : y : q]`` on the chord through ``x`` and ``y``.

    Raises:
        PointOutside: ``x`` or ``y`` is not interior.
        DegenerateChord: the chord does not meet the boundary.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    v = y - x
    if not oracle.contains(y):
        raise PointOutside("point is not interior", locus={"point": y.tolist()})
    if np.linalg.norm(v) == 0:
        return 0.0
    t_minus, t_plus = oracle.chord(x, v)
    # y ada di t = 1
    near = 1.0 if math.isinf(t_plus) else t_plus / (t_plus - 1.0)
    far = 1.0 if math.isinf(t_minus) else (1.0 - t_minus) / (-t_minus)
    return 0.5 * math.log(near * far)


def finsler_norm(oracle: BoundaryOracle, x: np.ndarray, v: np.ndarray) -> float:
    """``|v|/2 (1/|x p^-| + 1/|x p^+|)``."""
    v = np.asarray(v, dtype=float)
    if np.linalg.norm(v) == 0:
        return 0.0
    t_minus, t_plus = oracle.chord(x, v)
    return 0.5 * ((0.0 if math.isinf(t_plus) else 1.0 / t_plus) + (0.0 if math.isinf(t_minus) else 1.0 / -t_minus))


@dataclass(frozen=True)
class FinslerCheck:
    norm: float
    quotient: float
    ok: bool


def finsler_consistency(
    oracle: BoundaryOracle, x: np.ndarray, v: np.ndarray, h: float = 1e-5, rtol: float = 1e-4
) -> FinslerCheck:
    """Compare ``F(x, v)`` with ``d(x, x + h v) / h``."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    norm = finsler_norm(oracle, x, v)
    quotient = hilbert_distance(oracle, x, x + h * v) / h
    return FinslerCheck(norm, quotient, abs(norm - quotient) <= rtol * max(1.0, norm))


__all__ = [
    "AffineChart",
    "BoundaryOracle",
    "EllipsoidOracle",
    "FinslerCheck",
    "HullOracle",
    "PolytopeOracle",
    "QuadricOracle",
    "finsler_consistency",
    "finsler_norm",
    "hilbert_distance",
]
