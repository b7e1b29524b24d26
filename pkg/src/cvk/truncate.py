"""Truncation vertex loxodromic yang simple dan perfect.

Hyperplane ``Pi_p`` direntang oleh polar ``[v_s]`` untuk ``s`` di ``S_p``.
Facet baru punya support ``Pi_p`` dan polar ``p``; pasangan facet lama tidak
diubah, jadi ``A_P`` tetap menjadi blok dari ``A_{P-dagger}``.

Usage:
    from cvk.catalog import fixture
    from cvk.truncate import truncate_all

    pentagon = truncate_all(fixture("quadrilateral-lox"))
"""

from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.linalg import null_space

from config import DEFAULT_TOLERANCE, Tolerance
from cvk.classify import VertexKind, classify_vertex, cone_apex, perfection, vertex_classes
from cvk.faces import face_lattice, link_at_vertex
from cvk.polytope import (
    MirrorPolytope,
    _max_slack,
    build_mirror_polytope,
    cartan_matrix_of,
    check_conditions_CD,
    facet_polytope,
)
from utils.errors import (
    ConeException,
    CvkError,
    FacetsCollide,
    LinkNotPerfect,
    NotLoxodromic,
    NotSimple,
    NotTruncable,
    PostconditionFailed,
)
from utils.mlogger import LoggerManager, logger

log = logger.bind(module="truncate")


@dataclass(frozen=True, eq=False)
class TruncationPlan:
    """Hyperplane ``Pi_p = {beta = 0}`` with ``beta(p) > 0``; ``Pi_p^-`` is the side of ``p``."""

    vertex: int
    point: np.ndarray
    facets: tuple[int, ...]
    beta: np.ndarray
    residual: float
    interior_slack: float

    @property
    def new_pair(self) -> tuple[np.ndarray, np.ndarray]:
        """``(alpha_new, v_new)`` scaled so that ``alpha_new(p) = 2``."""
        return 2.0 * self.beta / float(self.beta @ self.point), self.point.copy()

    def side(self, x: np.ndarray) -> float:
        """Negative on ``Pi_p^+`` (the kept side), positive on ``Pi_p^-``."""
        return float(self.beta @ x)

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertex": self.vertex,
            "point": self.point.tolist(),
            "facets": list(self.facets),
            "hyperplane": self.beta.tolist(),
            "residual": self.residual,
            "interior_slack": self.interior_slack,
        }


def is_simple_vertex(poly: MirrorPolytope, p: int | np.ndarray, *, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """``|S_p| = d`` and the link is a ``(d-1)``-simplex.

    Raises:
        NotAVertex: ``p`` is not a vertex.
    """
    link = link_at_vertex(poly, p, tol=tol)
    return len(link.facets) == poly.dim and link.polytope.n_facets == link.polytope.dim + 1


def truncability(poly: MirrorPolytope, p: int | np.ndarray, *, tol: Tolerance = DEFAULT_TOLERANCE) -> TruncationPlan:
    """Plan the truncation at ``p`` or refuse.

    Refusals are checked in order: simple, loxodromic, perfect link, cone
    exception, then the hyperplane clauses.

    Raises:
        NotSimple: ``p`` is not simple.
        NotLoxodromic: ``p`` is not loxodromic.
        LinkNotPerfect: the link ``P_p`` is not perfect.
        ConeException: ``P`` is ``P_p (x) .`` with apex ``p``.
        NotTruncable: a hyperplane clause fails.
    """
    lattice = face_lattice(poly, tol=tol)
    k = lattice.vertex_index(p, tol=tol)
    locus = {"vertex": k}
    if not is_simple_vertex(poly, k, tol=tol):
        raise NotSimple(f"vertex {k} is not simple", locus=locus)
    vc = classify_vertex(poly, k, tol=tol)
    if vc.kind is not VertexKind.LOXODROMIC:
        raise NotLoxodromic(f"vertex {k} is {vc.kind}", locus=locus | {"class": str(vc.kind)})
    if not vc.link_perfect:
        raise LinkNotPerfect(f"link at vertex {k} is not perfect", locus=locus)
    apex = cone_apex(poly, tol=tol)
    if apex is not None and apex[1] == k:
        raise ConeException(
            f"P is a cone over its link at vertex {k}",
            locus=locus | {"facet": poly.names[apex[0]]},
        )

    point = lattice.vertices[k]
    facets = tuple(sorted(lattice.vertex_sets[k]))
    polars = poly.vectors[list(facets)]
    kernel = null_space(polars, rcond=tol.eps)
    if kernel.shape[1] != 1:
        raise NotTruncable(
            "polars do not span a hyperplane",
            locus=locus | {"kernel_dim": int(kernel.shape[1])},
        )
    beta = kernel[:, 0]
    residual = float(np.abs(polars @ beta).max() / np.abs(polars).max())
    if residual > tol.eps:
        raise NotTruncable("hyperplane fit residual too large", locus=locus | {"residual": residual})

    at_p = float(beta @ point)
    if abs(at_p) <= tol.delta:
        raise NotTruncable("Pi_p passes through p", locus=locus | {"value": at_p})
    if at_p < 0:
        beta = -beta

    unit = poly.alphas / np.linalg.norm(poly.alphas, axis=1, keepdims=True)
    slack, _ = _max_slack(unit, beta[None, :])
    if slack <= tol.vertex:
        raise NotTruncable("Pi_p misses the interior of P", locus=locus | {"slack": slack})

    # Pi_p memisahkan p dari semua vertex lain; ini klausa ridge
    others = [j for j in range(len(lattice.vertices)) if j != k]
    values = lattice.vertices[others] @ beta
    if values.size and values.max() >= -tol.vertex:
        bad = others[int(np.argmax(values))]
        raise NotTruncable(
            "Pi_p meets a ridge away from p",
            locus=locus | {"other_vertex": bad, "value": float(values.max())},
        )
    log.debug(f"vertex {k} truncable, residual {residual:.2e}")
    return TruncationPlan(k, point, facets, beta, residual, slack)


def _new_name(poly: MirrorPolytope, k: int) -> str:
    name = f"t{k}"
    while name in poly.names:
        name += "'"
    return name


def _check_new_facet(
    result: MirrorPolytope, source: MirrorPolytope, plan: TruncationPlan, name: str, tol: Tolerance
) -> None:
    a = result.alphas @ result.vectors.T
    new = result.index(name)
    for s in plan.facets:
        product = float(a[new, s] * a[s, new])
        if abs(a[new, s]) > tol.delta or abs(a[s, new]) > tol.delta:
            raise PostconditionFailed(
                f"new ridge ({name}, {result.names[s]}) is not right-angled",
                locus={"ridge": [name, result.names[s]], "product": product},
            )
    section = facet_polytope(result, new, tol=tol)
    link = link_at_vertex(source, plan.vertex, tol=tol).polytope
    if section.names != link.names:
        raise PostconditionFailed(
            f"new facet {name} meets {section.names}, expected {link.names}",
            locus={"facet": name},
        )
    got = cartan_matrix_of(section, tol=tol).entries
    want = cartan_matrix_of(link, tol=tol).entries
    if np.abs(got - want).max() > tol.delta:
        raise PostconditionFailed(
            f"new facet {name} is not isomorphic to the link at vertex {plan.vertex}",
            locus={"facet": name},
        )


def truncate_vertex(
    poly: MirrorPolytope, plan: TruncationPlan, *, tol: Tolerance = DEFAULT_TOLERANCE
) -> MirrorPolytope:
    """``P^{dagger p}``: old facets unchanged plus the new facet with polar ``p``.

    Raises:
        PostconditionFailed: a new ridge is not right-angled, or the new facet
            is not isomorphic to the link.
    """
    name = _new_name(poly, plan.vertex)
    alpha, v = plan.new_pair
    pairs = list(zip(poly.alphas, poly.vectors, strict=True)) + [(alpha, v)]
    result = build_mirror_polytope(poly.dim, pairs, names=[*poly.names, name], tol=tol)
    _check_new_facet(result, poly, plan, name, tol)
    report = check_conditions_CD(result, tol=tol)
    if not report.is_coxeter:
        raise PostconditionFailed(
            "truncated polytope fails (C)/(D)", locus=report.failures[0].locus
        )
    log.info(f"truncated vertex {plan.vertex} -> facet {name}")
    return result


@LoggerManager.timer("truncate all")
def truncate_all(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> MirrorPolytope:
    """``P-dagger``: truncate every loxodromic vertex at once.

    Raises:
        FacetsCollide: two new facets share a vertex.
        PostconditionFailed: the result is not quasi-perfect.
        PreconditionError: a loxodromic vertex is not truncable (see ``truncability``).
    """
    lox = [v.index for v in vertex_classes(poly, tol=tol) if v.kind is VertexKind.LOXODROMIC]
    if not lox:
        log.info("no loxodromic vertex, P unchanged")
        return poly

    plans = [truncability(poly, k, tol=tol) for k in lox]
    names: list[str] = []
    pairs = list(zip(poly.alphas, poly.vectors, strict=True))
    for plan in plans:
        names.append(_new_name(poly, plan.vertex))
        pairs.append(plan.new_pair)
    result = build_mirror_polytope(poly.dim, pairs, names=[*poly.names, *names], tol=tol)

    new_idx = {result.index(n) for n in names}
    for k, sp in enumerate(face_lattice(result, tol=tol).vertex_sets):
        hit = sorted(sp & new_idx)
        if len(hit) > 1:
            raise FacetsCollide(
                "new facets meet",
                locus={"vertex": k, "facets": [result.names[s] for s in hit]},
            )
    for plan, name in zip(plans, names, strict=True):
        _check_new_facet(result, poly, plan, name, tol)
    if result.names[: poly.n_facets] != poly.names:
        raise PostconditionFailed("old generators are not kept")

    try:
        level = perfection(result, tol=tol).level
    except CvkError as e:
        raise PostconditionFailed(f"cannot classify P-dagger: {e.message}", locus=e.locus) from e
    if not level.is_quasi_perfect:
        raise PostconditionFailed(f"P-dagger is {level}, expected quasi-perfect")
    log.info(f"truncated {len(plans)} vertices, P-dagger is {level}")
    return result


__all__ = [
    "TruncationPlan",
    "is_simple_vertex",
    "truncability",
    "truncate_all",
    "truncate_vertex",
]
