"""Mirror polytope di sphere proyektif S^d.

Polytope disimpan sebagai pasangan (alpha_s, v_s) per facet, dengan
``alpha_s(v_s) = 2``. Region ``P = {x : alpha_s(x) <= 0}``; refleksi
``sigma_s = Id - alpha_s (x) v_s``. Pasangan tidak pernah dinormalisasi ulang,
jadi report hanya memakai besaran yang invariant (produk ``p_st``, polar).

Usage:
    from cvk.coxsys import spherical_diagram
    from cvk.polytope import tits_simplex, check_conditions_CD

    p = tits_simplex(spherical_diagram("A", 3))
    check_conditions_CD(p).is_coxeter  # True
"""

import itertools
import math
import threading
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any, TypeVar

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog

from config import DEFAULT_TOLERANCE, Tolerance
from cvk.cartan import CartanMatrix, MatrixType, cartan_type, components, perron_pair, validate_cartan
from cvk.coxsys import INF, CoxeterSystem, Label, build_system, gram_matrix
from utils.errors import (
    AngleNotSubmultiple,
    ConditionCViolated,
    CvkError,
    EmptyInterior,
    NormalizationError,
    NotCoxeter,
    NotNegativeType,
    NotProperlyConvex,
    RedundantFacet,
    ValidationError,
)
from utils.mlogger import logger

log = logger.bind(module="polytope")

T = TypeVar("T")


@dataclass(frozen=True, eq=False)
class MirrorPolytope:
    dim: int
    alphas: np.ndarray
    vectors: np.ndarray
    names: tuple[str, ...]
    interior: np.ndarray
    _memo: dict[str, Any] = field(default_factory=dict, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    @property
    def n_facets(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"unknown facet {name!r}", locus={"facet": name}) from None

    def reflection(self, s: int) -> np.ndarray:
        return reflection_matrix(self.alphas[s], self.vectors[s])

    def reflections(self) -> list[np.ndarray]:
        return [self.reflection(s) for s in range(self.n_facets)]

    def memo(self, key: str, factory: Callable[[], T]) -> T:
        """Compute ``factory()`` once per polytope, thread-safe."""
        with self._lock:
            if key not in self._memo:
                self._memo[key] = factory()
            return self._memo[key]


def reflection_matrix(alpha: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.eye(len(alpha)) - np.outer(v, alpha)


def _unit_rows(m: np.ndarray) -> np.ndarray:
    return m / np.linalg.norm(m, axis=1, keepdims=True)


def _max_slack(
    a_ub: np.ndarray, a_eq: np.ndarray | None = None
) -> tuple[float, np.ndarray | None]:
    """Maximize ``t`` with ``a_ub x + t <= 0`` (and ``a_eq x = 0``) over a box."""
    n = a_ub.shape[1] if a_ub.size else a_eq.shape[1]  # type: ignore[union-attr]
    c = np.zeros(n + 1)
    c[-1] = -1.0
    ub = np.hstack([a_ub, np.ones((a_ub.shape[0], 1))]) if a_ub.size else None
    eq = np.hstack([a_eq, np.zeros((a_eq.shape[0], 1))]) if a_eq is not None else None
    res = linprog(
        c,
        A_ub=ub,
        b_ub=np.zeros(ub.shape[0]) if ub is not None else None,
        A_eq=eq,
        b_eq=np.zeros(eq.shape[0]) if eq is not None else None,
        bounds=[(-1.0, 1.0)] * n + [(0.0, 1.0)],
        method="highs",
    )
    if res.status != 0:
        return 0.0, None
    return float(res.x[-1]), res.x[:-1]


def build_mirror_polytope(
    dim: int,
    facets: Sequence[tuple[Sequence[float], Sequence[float]]],
    *,
    names: Sequence[str] | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> MirrorPolytope:
    """Validate facet pairs and build the polytope.

    Args:
        dim: Dimension ``d`` of the sphere ``S^d``.
        facets: ``(alpha_s, v_s)`` pairs of length ``d + 1``.
        names: Facet names, ``"1".."n"`` by default.
        tol: Tolerances.

    Returns:
        MirrorPolytope: The validated polytope, pairs stored as given.

    Raises:
        NormalizationError: ``alpha_s(v_s) != 2``.
        EmptyInterior: the region has no interior.
        NotProperlyConvex: the cone is not pointed.
        RedundantFacet: a facet hyperplane does not support a facet.
    """
    if dim < 0 or not facets:
        raise ValidationError(f"need dim >= 0 and at least one facet, got dim={dim}")
    alphas = np.array([f[0] for f in facets], dtype=float)
    vectors = np.array([f[1] for f in facets], dtype=float)
    if alphas.shape != (len(facets), dim + 1) or vectors.shape != alphas.shape:
        raise ValidationError(
            f"facet arrays must have length {dim + 1}",
            locus={"shape": list(alphas.shape)},
        )
    labels = tuple(str(n) for n in names) if names is not None else tuple(
        str(k + 1) for k in range(len(facets))
    )
    if len(labels) != len(facets) or len(set(labels)) != len(labels):
        raise ValidationError(f"facet names must be unique, got {labels}")

    for s, name in enumerate(labels):
        value = float(alphas[s] @ vectors[s])
        if abs(value - 2.0) > tol.eps * max(1.0, np.linalg.norm(alphas[s]) * np.linalg.norm(vectors[s])):
            raise NormalizationError(
                f"alpha_{name}(v_{name}) = {value!r}, expected 2",
                locus={"facet": name, "value": value},
            )

    unit = _unit_rows(alphas)
    slack, point = _max_slack(unit)
    if point is None or slack <= tol.vertex:
        raise EmptyInterior("the facet inequalities have empty interior", locus={"slack": slack})
    if np.linalg.matrix_rank(alphas, tol=tol.eps * np.abs(alphas).max()) != dim + 1:
        raise NotProperlyConvex(
            "the cone is not pointed (covectors do not span the dual space)",
            locus={"rank": int(np.linalg.matrix_rank(alphas))},
        )
    if dim >= 1:
        for s, name in enumerate(labels):
            others = np.delete(unit, s, axis=0)
            face_slack, _ = _max_slack(others, unit[s : s + 1])
            if face_slack <= tol.vertex:
                raise RedundantFacet(
                    f"facet {name} does not support a codimension-one face",
                    locus={"facet": name},
                )

    poly = MirrorPolytope(
        dim=dim,
        alphas=alphas,
        vectors=vectors,
        names=labels,
        interior=point / np.linalg.norm(point),
    )
    log.debug(f"mirror polytope dim={dim} facets={labels}")
    return poly


# --- Conditions (C) and (D) ---
@dataclass(frozen=True)
class RidgeAngleInfo:
    facets: tuple[str, str]
    a_st: float
    a_ts: float
    product: float
    label: Label | None
    angle: float | None
    failure: CvkError | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    @property
    def zero_angle(self) -> bool:
        return self.label is INF

    def to_dict(self) -> dict[str, Any]:
        return {
            "ridge": list(self.facets),
            "product": self.product,
            "label": None if self.label is None else ("inf" if self.label is INF else self.label),
            "angle": self.angle,
            "failure": None if self.failure is None else self.failure.to_dict(),
        }


@dataclass(frozen=True)
class ConditionsReport:
    ridges: tuple[RidgeAngleInfo, ...]

    @property
    def is_coxeter(self) -> bool:
        return all(r.ok for r in self.ridges)

    @property
    def failures(self) -> list[CvkError]:
        return [r.failure for r in self.ridges if r.failure is not None]

    def raise_first(self) -> None:
        if self.failures:
            raise self.failures[0]


def _ridge_info(
    names: tuple[str, str], a: float, b: float, tol: Tolerance
) -> RidgeAngleInfo:
    locus = {"ridge": list(names), "a_st": a, "a_ts": b}
    scale = max(1.0, abs(a), abs(b))
    zero_a, zero_b = abs(a) <= tol.eps * scale, abs(b) <= tol.eps * scale
    product = a * b
    if a > tol.eps * scale or b > tol.eps * scale:
        failure = ConditionCViolated(f"ridge {names}: positive entry", locus=locus)
        return RidgeAngleInfo(names, a, b, product, None, None, failure)
    if zero_a != zero_b:
        failure = ConditionCViolated(f"ridge {names}: zero pattern differs", locus=locus)
        return RidgeAngleInfo(names, a, b, product, None, None, failure)
    if zero_a:
        return RidgeAngleInfo(names, a, b, 0.0, 2, math.pi / 2)
    if product >= 4.0 - tol.eps:
        return RidgeAngleInfo(names, a, b, product, INF, 0.0)
    theta = math.acos(min(1.0, math.sqrt(max(product, 0.0)) / 2.0))
    m = round(math.pi / theta)
    if m >= 2 and abs(theta - math.pi / m) <= tol.delta:
        return RidgeAngleInfo(names, a, b, product, m, theta)
    failure = AngleNotSubmultiple(
        f"ridge {names}: angle {theta:.9f} is not pi/m", locus=locus | {"theta": theta}
    )
    return RidgeAngleInfo(names, a, b, product, None, theta, failure)


def check_conditions_CD(  # noqa: N802
    poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE
) -> ConditionsReport:
    """Check (C1), (C2) and (D) on every ridge of the polytope."""
    from cvk.faces import face_lattice

    lattice = face_lattice(poly, tol=tol)
    a = poly.alphas @ poly.vectors.T
    infos = tuple(
        _ridge_info((poly.names[i], poly.names[j]), float(a[i, j]), float(a[j, i]), tol)
        for i, j in lattice.adjacent_pairs
    )
    report = ConditionsReport(ridges=infos)
    if not report.is_coxeter:
        log.warning(f"conditions (C)/(D) fail: {[f.message for f in report.failures]}")
    return report


def coxeter_system_of(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> CoxeterSystem:
    """Labels ``m_st`` on finite-angle ridges, ``INF`` everywhere else.

    Raises:
        NotCoxeter: some ridge fails (C) or (D).
    """
    return poly.memo(f"coxeter:{tol}", lambda: _coxeter_system_of(poly, tol))


def _coxeter_system_of(poly: MirrorPolytope, tol: Tolerance) -> CoxeterSystem:
    report = check_conditions_CD(poly, tol=tol)
    if not report.is_coxeter:
        first = report.failures[0]
        raise NotCoxeter(f"not a Coxeter polytope: {first.message}", locus=first.locus)
    n = poly.n_facets
    labels: list[list[Label]] = [[1 if i == j else INF for j in range(n)] for i in range(n)]
    for info in report.ridges:
        i, j = poly.index(info.facets[0]), poly.index(info.facets[1])
        labels[i][j] = labels[j][i] = info.label  # type: ignore[assignment]
    return build_system(poly.names, labels)


def cartan_matrix_of(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> CartanMatrix:
    """``A_ij = alpha_i(v_j)``."""
    return validate_cartan(poly.alphas @ poly.vectors.T, tol=tol)


# --- Constructions ---
def cartan_simplex(
    cartan: np.ndarray | CartanMatrix,
    *,
    names: Sequence[str] | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> MirrorPolytope:
    """Simplex with ``alpha_s = e_s`` and ``v_s`` the column ``s`` of the Cartan matrix."""
    a = cartan.entries if isinstance(cartan, CartanMatrix) else np.asarray(cartan, dtype=float)
    r = a.shape[0]
    facets = [(np.eye(r)[s], a[:, s]) for s in range(r)]
    return build_mirror_polytope(r - 1, facets, names=names, tol=tol)


def tits_simplex(w: CoxeterSystem, *, tol: Tolerance = DEFAULT_TOLERANCE) -> MirrorPolytope:
    """Tits simplex of ``W`` in the dual of ``R^S``; its Cartan matrix is the Gram matrix."""
    return cartan_simplex(gram_matrix(w), names=w.generators, tol=tol)


def point_polytope(name: str = "inf") -> MirrorPolytope:
    """The dimension-0 Coxeter polytope ``{z >= 0}`` in ``S^0``."""
    return build_mirror_polytope(0, [([-1.0], [-2.0])], names=[name])


def product(p: MirrorPolytope, q: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> MirrorPolytope:
    """``P (x) Q`` on the direct sum, each pair extended by zero."""
    n_p, n_q = p.dim + 1, q.dim + 1
    facets = [(np.concatenate([a, np.zeros(n_q)]), np.concatenate([v, np.zeros(n_q)]))
              for a, v in zip(p.alphas, p.vectors, strict=True)]
    facets += [(np.concatenate([np.zeros(n_p), a]), np.concatenate([np.zeros(n_p), v]))
               for a, v in zip(q.alphas, q.vectors, strict=True)]
    names = list(p.names) + list(q.names)
    if len(set(names)) != len(names):
        names = [f"{n}@1" for n in p.names] + [f"{n}@2" for n in q.names]
    return build_mirror_polytope(p.dim + q.dim + 1, facets, names=names, tol=tol)


def cone_over(p: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> MirrorPolytope:
    """Coxeter cone ``P (x) .``; the extra facet is named ``inf``."""
    name = "inf" if "inf" not in p.names else "inf'"
    return product(p, point_polytope(name), tol=tol)


def restrict_to_subspace(
    poly: MirrorPolytope,
    facets: Sequence[int],
    basis: np.ndarray,
    *,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> MirrorPolytope:
    """Polytope cut out by ``facets`` on the subspace spanned by the orthonormal ``basis``."""
    idx = list(facets)
    pairs = [(poly.alphas[s] @ basis, poly.vectors[s] @ basis) for s in idx]
    return build_mirror_polytope(
        basis.shape[1] - 1, pairs, names=[poly.names[s] for s in idx], tol=tol
    )


def decompose(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> list[MirrorPolytope]:
    """Finest splitting ``P = P_1 (x) ... (x) P_k``.

    A group of facets ``G`` splits off when it is a union of components of ``A_P``
    and ``rank(alpha_G) + rank(alpha_rest) = d + 1``.
    """
    a = CartanMatrix(poly.alphas @ poly.vectors.T)
    comps = components(a, tol=tol)
    if len(comps) == 1:
        return [poly]

    def rank(idx: Sequence[int]) -> int:
        return int(np.linalg.matrix_rank(poly.alphas[list(idx)], tol=1e3 * tol.eps))

    for k in range(1, len(comps)):
        for chosen in itertools.combinations(comps, k):
            group = sorted(i for c in chosen for i in c)
            rest = sorted(set(range(poly.n_facets)) - set(group))
            if rank(group) + rank(rest) != poly.dim + 1:
                continue
            own = restrict_to_subspace(poly, group, null_space(poly.alphas[rest]), tol=tol)
            other = restrict_to_subspace(poly, rest, null_space(poly.alphas[group]), tol=tol)
            return [own, *decompose(other, tol=tol)]
    return [poly]


def containing_affine_chart(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Covector ``alpha = sum mu_s alpha_s`` negative on P and on every polar.

    Raises:
        NotNegativeType: ``A_P`` is not of negative type.
    """
    a = cartan_matrix_of(poly, tol=tol)
    kind = cartan_type(a, tol=tol)
    if kind.aggregate is not MatrixType.NEGATIVE:
        raise NotNegativeType(
            f"A_P has type {kind.aggregate}", locus={"type": str(kind.aggregate)}
        )
    mu = np.zeros(poly.n_facets)
    for comp in components(a, tol=tol):
        mu[list(comp)] = perron_pair(a, comp, left=True, tol=tol).vector
    covector = mu @ poly.alphas
    values = poly.vectors @ covector
    if values.max() >= 0:
        raise NotNegativeType(
            "chart covector is not negative on every polar",
            locus={"values": values.tolist()},
        )
    return covector / np.linalg.norm(covector)


def facet_polytope(poly: MirrorPolytope, s: int, *, tol: Tolerance = DEFAULT_TOLERANCE) -> MirrorPolytope:
    """Facet ``s`` as a Coxeter polytope; needs every neighbour orthogonal to ``s``."""
    from cvk.faces import face_lattice

    lattice = face_lattice(poly, tol=tol)
    neighbours = sorted({t for pair in lattice.adjacent_pairs if s in pair for t in pair} - {s})
    a = poly.alphas @ poly.vectors.T
    for t in neighbours:
        if abs(a[s, t]) > tol.delta or abs(a[t, s]) > tol.delta:
            raise ValidationError(
                f"facet {poly.names[t]} is not orthogonal to {poly.names[s]}",
                locus={"ridge": [poly.names[s], poly.names[t]]},
            )
    return restrict_to_subspace(poly, neighbours, null_space(poly.alphas[s : s + 1]), tol=tol)


def interior_samples(poly: MirrorPolytope, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` interior points: the LP point plus random positive mixtures with vertices."""
    from cvk.faces import face_lattice

    verts = face_lattice(poly).vertices
    points = [poly.interior]
    for _ in range(max(0, n - 1)):
        if len(verts) == 0:
            points.append(poly.interior)
            continue
        weights = rng.dirichlet(np.ones(len(verts) + 1))
        x = weights[0] * poly.interior + weights[1:] @ verts
        points.append(x / np.linalg.norm(x))
    return np.array(points)


__all__ = [
    "ConditionsReport",
    "MirrorPolytope",
    "RidgeAngleInfo",
    "build_mirror_polytope",
    "cartan_matrix_of",
    "cartan_simplex",
    "check_conditions_CD",
    "cone_over",
    "containing_affine_chart",
    "coxeter_system_of",
    "decompose",
    "facet_polytope",
    "interior_samples",
    "point_polytope",
    "product",
    "reflection_matrix",
    "restrict_to_subspace",
    "tits_simplex",
]
