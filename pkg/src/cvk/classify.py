"""Prosedur keputusan untuk polytope Coxeter.

Isi modul:
- kelas vertex (elliptic / parabolic / loxodromic / imperfect) dari link
- hierarki perfect / quasi-perfect / 2-perfect (dua metode yang harus sepakat)
- kelas polytope, proposisi lima kasus, dekomposisi ``Q (x) .``
- verdict aksi (cocompact, finite covolume, convex-cocompact, geometrically finite)
- closure Zariski lewat pencarian bentuk kuadratik invariant
- strict convexity dan eksistensi set strictly convex invariant
- fakta set konveks invariant terbesar / terkecil

Setiap verdict membawa tag teorema (``theorem``) supaya report bisa ditelusuri.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np
from scipy.linalg import null_space

from config import DEFAULT_TOLERANCE, Tolerance
from cvk.cartan import CartanMatrix, MatrixType, cartan_type, components, numerical_rank
from cvk.coxsys import (
    CoxeterSystem,
    DiagramKind,
    RelHypReport,
    Subsystem,
    classify_irreducible,
    relative_hyperbolicity_check,
    subsystem,
)
from cvk.faces import face_lattice, link_at_vertex
from cvk.polytope import (
    MirrorPolytope,
    cartan_matrix_of,
    coxeter_system_of,
    decompose,
)
from utils.errors import ClassificationMismatch, CvkError, PreconditionUnmet
from utils.mlogger import logger

log = logger.bind(module="classify")


class Tri(StrEnum):
    TRUE = "true"
    FALSE = "false"
    NOT_APPLICABLE = "not-applicable"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Tri":
        return cls.TRUE if value else cls.FALSE


@dataclass(frozen=True)
class Verdict:
    value: Tri
    theorem: str
    reason: str = ""
    witness: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": str(self.value),
            "theorem": self.theorem,
            "reason": self.reason,
            "witnesses": self.witness,
        }


def _positive(a: np.ndarray, tol: Tolerance) -> bool:
    if a.size == 0:
        return True
    return cartan_type(CartanMatrix(a), tol=tol).aggregate is MatrixType.POSITIVE


# --- Vertices ---
class VertexKind(StrEnum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"
    IMPERFECT = "imperfect"


@dataclass(frozen=True, eq=False)
class VertexClass:
    index: int
    point: np.ndarray
    facets: tuple[str, ...]
    kind: VertexKind
    link_type: MatrixType
    link_rank: int
    link_perfect: bool
    witness_edge: tuple[str, ...] | None = None

    @property
    def is_simple(self) -> bool:
        return len(self.facets) == len(self.point) - 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertex": self.index,
            "point": self.point.tolist(),
            "facets": list(self.facets),
            "class": str(self.kind),
            "link_type": str(self.link_type),
            "link_rank": self.link_rank,
            "link_perfect": self.link_perfect,
            "witness_edge": None if self.witness_edge is None else list(self.witness_edge),
        }


def _infinite_edges(poly: MirrorPolytope, tol: Tolerance, through: int | None = None) -> list[tuple[int, ...]]:
    lattice = face_lattice(poly, tol=tol)
    a = poly.alphas @ poly.vectors.T
    out = []
    for edge in lattice.edges:
        if through is not None and through not in edge.vertices:
            continue
        idx = sorted(edge.active)
        if not _positive(a[np.ix_(idx, idx)], tol):
            out.append(tuple(idx))
    return out


def classify_vertex(
    poly: MirrorPolytope, p: int | np.ndarray, *, tol: Tolerance = DEFAULT_TOLERANCE
) -> VertexClass:
    """Class of a vertex from the type and rank of its link's Cartan matrix.

    Raises:
        NotAVertex: ``p`` is not a vertex.
    """
    link = link_at_vertex(poly, p, tol=tol)
    a = cartan_matrix_of(link.polytope, tol=tol)
    kind_of_link = cartan_type(a, tol=tol).aggregate
    rank = numerical_rank(a, tol=tol)
    link_dim = poly.dim - 1

    if kind_of_link is MatrixType.POSITIVE:
        kind = VertexKind.ELLIPTIC
    elif kind_of_link is MatrixType.ZERO and rank == link_dim:
        kind = VertexKind.PARABOLIC
    elif kind_of_link is MatrixType.NEGATIVE and rank == link_dim + 1:
        kind = VertexKind.LOXODROMIC
    else:
        kind = VertexKind.IMPERFECT

    # link perfect: setiap vertex dari link punya Cartan positif
    link_lattice = face_lattice(link.polytope, tol=tol)
    link_perfect = all(
        _positive(a.block(sorted(sq)), tol) for sq in link_lattice.vertex_sets
    )
    witness = None
    if not link_perfect or kind is VertexKind.IMPERFECT:
        bad = _infinite_edges(poly, tol, through=link.vertex)
        if bad:
            witness = tuple(poly.names[s] for s in bad[0])

    return VertexClass(
        index=link.vertex,
        point=link.point,
        facets=tuple(poly.names[s] for s in link.facets),
        kind=kind,
        link_type=kind_of_link,
        link_rank=rank,
        link_perfect=link_perfect,
        witness_edge=witness,
    )


def vertex_classes(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> list[VertexClass]:
    lattice = face_lattice(poly, tol=tol)
    return poly.memo(
        f"vertex-classes:{tol}",
        lambda: [classify_vertex(poly, k, tol=tol) for k in range(len(lattice.vertices))],
    )


# --- Perfection ---
class Perfection(StrEnum):
    PERFECT = "perfect"
    QUASI_PERFECT = "quasi-perfect"
    TWO_PERFECT = "2-perfect"
    NOT_TWO_PERFECT = "not-2-perfect"

    @property
    def is_two_perfect(self) -> bool:
        return self is not Perfection.NOT_TWO_PERFECT

    @property
    def is_quasi_perfect(self) -> bool:
        return self in (Perfection.PERFECT, Perfection.QUASI_PERFECT)


@dataclass(frozen=True)
class PerfectionClass:
    level: Perfection
    vertices: tuple[VertexClass, ...]
    infinite_edges: tuple[tuple[str, ...], ...]

    def of_kind(self, kind: VertexKind) -> list[VertexClass]:
        return [v for v in self.vertices if v.kind is kind]

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": str(self.level),
            "theorem": "2-perfect-iff-finite-edge-groups",
            "vertices": [v.to_dict() for v in self.vertices],
            "infinite_edges": [list(e) for e in self.infinite_edges],
        }


def perfection(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> PerfectionClass:
    """Perfection level; 2-perfectness is checked through links and through edges.

    Raises:
        ClassificationMismatch: the two 2-perfectness checks disagree.
    """
    classes = tuple(vertex_classes(poly, tol=tol))
    by_links = all(v.link_perfect for v in classes)
    bad_edges = _infinite_edges(poly, tol)
    by_edges = not bad_edges
    if by_links != by_edges:
        raise ClassificationMismatch(
            "link and edge criteria for 2-perfectness disagree",
            locus={"by_links": by_links, "infinite_edges": [list(e) for e in bad_edges]},
        )

    kinds = {v.kind for v in classes}
    if kinds <= {VertexKind.ELLIPTIC}:
        level = Perfection.PERFECT
    elif not by_links:
        level = Perfection.NOT_TWO_PERFECT
    elif kinds <= {VertexKind.ELLIPTIC, VertexKind.PARABOLIC}:
        level = Perfection.QUASI_PERFECT
    else:
        level = Perfection.TWO_PERFECT
    log.debug(f"perfection: {level}")
    return PerfectionClass(
        level=level,
        vertices=classes,
        infinite_edges=tuple(tuple(poly.names[s] for s in e) for e in bad_edges),
    )


# --- Polytope class ---
class PolytopeKind(StrEnum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"
    DECOMPOSABLE = "decomposable"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PolytopeClass:
    kind: PolytopeKind
    cartan_type: MatrixType
    rank: int
    dim: int
    irreducible_w: bool
    five_case: int | None
    diagram: str | None
    factors: tuple[tuple[int, str], ...]
    shape: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": str(self.kind),
            "theorem": "five-case-proposition",
            "cartan_type": str(self.cartan_type),
            "rank": self.rank,
            "dim": self.dim,
            "irreducible_w": self.irreducible_w,
            "five_case": self.five_case,
            "diagram": self.diagram,
            "factors": [{"dim": d, "class": k} for d, k in self.factors],
            "shape": self.shape,
        }


def _basic_kind(kind: MatrixType, rank: int, dim: int) -> PolytopeKind | None:
    if kind is MatrixType.POSITIVE:
        return PolytopeKind.ELLIPTIC
    if kind is MatrixType.ZERO and rank == dim:
        return PolytopeKind.PARABOLIC
    if kind is MatrixType.NEGATIVE and rank == dim + 1:
        return PolytopeKind.LOXODROMIC
    return None


def polytope_class(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> PolytopeClass:
    """Elliptic / parabolic / loxodromic / decomposable, plus the five-case number."""
    a = cartan_matrix_of(poly, tol=tol)
    kind_of_a = cartan_type(a, tol=tol).aggregate
    rank = numerical_rank(a, tol=tol)
    irreducible_w = len(components(a, tol=tol)) == 1

    five_case = None
    diagram = None
    if irreducible_w:
        dc = classify_irreducible(coxeter_system_of(poly, tol=tol), tol=tol)
        diagram = dc.name
        if dc.kind is DiagramKind.SPHERICAL:
            five_case = 1
        elif dc.kind is DiagramKind.LARGE:
            five_case = 5
        elif dc.name is not None and dc.name.startswith("A~"):
            five_case = 3 if kind_of_a is MatrixType.ZERO else 4
        else:
            five_case = 2

    factors = decompose(poly, tol=tol)
    factor_kinds = []
    for f in factors:
        fa = cartan_matrix_of(f, tol=tol)
        fk = _basic_kind(cartan_type(fa, tol=tol).aggregate, numerical_rank(fa, tol=tol), f.dim)
        factor_kinds.append((f.dim, str(fk or PolytopeKind.DEGENERATE)))

    kind = _basic_kind(kind_of_a, rank, poly.dim)
    if kind is None:
        kind = PolytopeKind.DECOMPOSABLE if len(factors) > 1 else PolytopeKind.DEGENERATE

    if len(factors) == 1:
        shape = "P"
    elif len(factors) == 2 and factors[1].dim == 0:
        shape = f"P = Q (x) . with Q {factor_kinds[0][1]}"
    else:
        shape = "P = " + " (x) ".join(f"P{k + 1}" for k in range(len(factors)))
    return PolytopeClass(
        kind=kind,
        cartan_type=kind_of_a,
        rank=rank,
        dim=poly.dim,
        irreducible_w=irreducible_w,
        five_case=five_case,
        diagram=diagram,
        factors=tuple(factor_kinds),
        shape=shape,
    )


@dataclass(frozen=True)
class Irreducibility:
    irreducible: bool
    strongly_irreducible: bool
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.irreducible,
            "strongly_irreducible": self.strongly_irreducible,
            "theorem": "irreducible-iff-w-irreducible-and-full-rank",
            "reason": self.reason,
        }


def irreducibility(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> Irreducibility:
    a = cartan_matrix_of(poly, tol=tol)
    n_comp = len(components(a, tol=tol))
    rank = numerical_rank(a, tol=tol)
    if n_comp != 1:
        return Irreducibility(False, False, f"W_P has {n_comp} components")
    if rank != poly.dim + 1:
        return Irreducibility(False, False, f"rank(A_P) = {rank} < {poly.dim + 1}")
    large = classify_irreducible(coxeter_system_of(poly, tol=tol), tol=tol).kind is DiagramKind.LARGE
    reason = "W_P large" if large else "W_P not large, strong irreducibility not inferred"
    return Irreducibility(True, large, reason)


def is_irreducible_rep(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    return irreducibility(poly, tol=tol).irreducible


# --- Degenerate polytopes ---
def cone_apex(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[int, int] | None:
    """``(facet, vertex)`` when P is ``Q (x) .``: a facet orthogonal to all others whose polar is a vertex."""
    a = poly.alphas @ poly.vectors.T
    lattice = face_lattice(poly, tol=tol)
    for f in range(poly.n_facets):
        others = [t for t in range(poly.n_facets) if t != f]
        if np.abs(a[f, others]).max(initial=0.0) > tol.eps or np.abs(a[others, f]).max(initial=0.0) > tol.eps:
            continue
        polar = poly.vectors[f] / np.linalg.norm(poly.vectors[f])
        for candidate in (polar, -polar):
            hits = np.flatnonzero(np.linalg.norm(lattice.vertices - candidate, axis=1) <= 10 * tol.vertex)
            if hits.size:
                return f, int(hits[0])
    return None


@dataclass(frozen=True)
class DegenerateClass:
    case: int | None
    description: str
    apex: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.case,
            "theorem": "degenerate-2-perfect-classification",
            "description": self.description,
            "apex": self.apex,
        }


def degenerate_classification(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> DegenerateClass:
    """Four-case description of a 2-perfect polytope.

    Raises:
        PreconditionUnmet: P is not 2-perfect.
    """
    perf = perfection(poly, tol=tol)
    if not perf.level.is_two_perfect:
        raise PreconditionUnmet("P is not 2-perfect", locus={"perfection": str(perf.level)})
    cls = polytope_class(poly, tol=tol)
    if cls.kind is PolytopeKind.ELLIPTIC:
        return DegenerateClass(1, "P elliptic")
    if cls.kind is PolytopeKind.PARABOLIC:
        return DegenerateClass(2, "P parabolic")
    if cls.kind is PolytopeKind.LOXODROMIC and is_irreducible_rep(poly, tol=tol):
        return DegenerateClass(3, "P loxodromic, Gamma_P irreducible")
    apex = cone_apex(poly, tol=tol)
    if apex is not None:
        q = link_at_vertex(poly, apex[1], tol=tol).polytope
        q_kind = polytope_class(q, tol=tol).kind
        if q_kind is PolytopeKind.PARABOLIC:
            return DegenerateClass(4, "P = Q (x) . with Q parabolic", apex=apex[1])
        if q_kind is PolytopeKind.LOXODROMIC and perfection(q, tol=tol).level is Perfection.PERFECT:
            return DegenerateClass(4, "P = Q (x) . with Q loxodromic perfect", apex=apex[1])
    return DegenerateClass(None, f"no case applies ({cls.shape})")


# --- Action on Omega_P ---
@dataclass(frozen=True)
class ActionReport:
    cocompact: Verdict
    finite_covolume: Verdict
    convex_cocompact: Verdict
    geometrically_finite: Verdict
    polytope_kind: PolytopeKind
    irreducibility: Irreducibility
    perfection: Perfection
    convex_cocompact_via_truncation: Verdict

    def check_chain(self) -> None:
        """Cocompact implies convex-cocompact and finite covolume, each implies geometrically finite.

        Raises:
            ClassificationMismatch: the chain is broken.
        """
        def implies(p: Verdict, q: Verdict) -> bool:
            return not (p.value is Tri.TRUE and q.value is Tri.FALSE)

        pairs = [
            (self.cocompact, self.convex_cocompact),
            (self.cocompact, self.finite_covolume),
            (self.convex_cocompact, self.geometrically_finite),
            (self.finite_covolume, self.geometrically_finite),
        ]
        for p, q in pairs:
            if not implies(p, q):
                raise ClassificationMismatch(f"{p.theorem} contradicts {q.theorem}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "cocompact": self.cocompact.to_dict(),
            "finite_covolume": self.finite_covolume.to_dict(),
            "convex_cocompact": self.convex_cocompact.to_dict(),
            "geometrically_finite": self.geometrically_finite.to_dict(),
            "convex_cocompact_via_truncation": self.convex_cocompact_via_truncation.to_dict(),
            "polytope_class": str(self.polytope_kind),
            "perfection": str(self.perfection),
            "irreducibility": self.irreducibility.to_dict(),
        }


def _via_truncation(poly: MirrorPolytope, perf: PerfectionClass, tol: Tolerance) -> Verdict:
    from cvk.truncate import truncate_all

    theorem = "convex-cocompact-iff-truncation-perfect"
    if any(not v.is_simple for v in perf.of_kind(VertexKind.LOXODROMIC)):
        return Verdict(Tri.UNKNOWN, theorem, "a loxodromic vertex is not simple")
    try:
        truncated = truncate_all(poly, tol=tol)
    except CvkError as e:
        return Verdict(Tri.UNKNOWN, theorem, f"truncation refused: {e.message}")
    level = perfection(truncated, tol=tol).level
    return Verdict(Tri.of(level is Perfection.PERFECT), theorem, f"P-dagger is {level}")


def action_classification(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> ActionReport:
    """Verdicts on the action of Gamma_P on Omega_P.

    The finite-volume and convex-cocompact statements need P loxodromic and
    2-perfect; otherwise every flag is not-applicable with the reason.
    """
    cls = polytope_class(poly, tol=tol)
    perf = perfection(poly, tol=tol)
    irr = irreducibility(poly, tol=tol)

    if cls.kind is not PolytopeKind.LOXODROMIC or not perf.level.is_two_perfect:
        reason = f"needs a loxodromic 2-perfect polytope, got {cls.kind} {perf.level}"
        na = Tri.NOT_APPLICABLE
        report = ActionReport(
            cocompact=Verdict(na, "cocompact-iff-perfect", reason),
            finite_covolume=Verdict(na, "finite-covolume-iff-no-loxodromic-vertex", reason),
            convex_cocompact=Verdict(na, "convex-cocompact-iff-no-parabolic-vertex", reason),
            geometrically_finite=Verdict(na, "always-geometrically-finite", reason),
            polytope_kind=cls.kind,
            irreducibility=irr,
            perfection=perf.level,
            convex_cocompact_via_truncation=Verdict(na, "convex-cocompact-iff-truncation-perfect", reason),
        )
        log.info(f"action verdicts not applicable: {reason}")
        return report

    lox = [list(v.facets) for v in perf.of_kind(VertexKind.LOXODROMIC)]
    par = [list(v.facets) for v in perf.of_kind(VertexKind.PARABOLIC)]
    report = ActionReport(
        cocompact=Verdict(Tri.of(perf.level is Perfection.PERFECT), "cocompact-iff-perfect",
                          f"P is {perf.level}"),
        finite_covolume=Verdict(Tri.of(not lox), "finite-covolume-iff-no-loxodromic-vertex",
                                witness={"loxodromic_vertices": lox}),
        convex_cocompact=Verdict(Tri.of(not par), "convex-cocompact-iff-no-parabolic-vertex",
                                 witness={"parabolic_vertices": par}),
        geometrically_finite=Verdict(Tri.TRUE, "always-geometrically-finite"),
        polytope_kind=cls.kind,
        irreducibility=irr,
        perfection=perf.level,
        convex_cocompact_via_truncation=_via_truncation(poly, perf, tol),
    )
    report.check_chain()
    log.info(
        f"action: cocompact={report.cocompact.value} covolume={report.finite_covolume.value} "
        f"convex-cocompact={report.convex_cocompact.value}"
    )
    return report


# --- Invariant forms and Zariski closure ---
def _symmetric_basis(n: int) -> list[np.ndarray]:
    basis = []
    for i in range(n):
        for j in range(i, n):
            e = np.zeros((n, n))
            if i == j:
                e[i, i] = 1.0
            else:
                e[i, j] = e[j, i] = 1.0 / np.sqrt(2.0)
            basis.append(e)
    return basis


def invariant_quadratic_forms(
    generators: Sequence[np.ndarray], *, tol: Tolerance = DEFAULT_TOLERANCE
) -> list[np.ndarray]:
    """Basis (Frobenius-orthonormal) of symmetric ``B`` with ``g^T B g = B`` for all generators."""
    n = generators[0].shape[0]
    basis = _symmetric_basis(n)
    operator = np.vstack([
        np.column_stack([(g.T @ e @ g - e).ravel() for e in basis]) for g in generators
    ])
    kernel = null_space(operator, rcond=max(tol.eps, 1e-12))
    forms = [sum(c * e for c, e in zip(col, basis, strict=True)) for col in kernel.T]
    log.debug(f"invariant forms: dimension {len(forms)}")
    return forms


def signature(form: np.ndarray, *, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[int, int, int]:
    """``(positive, negative, null)`` eigenvalue counts, relative tolerance."""
    eig = np.linalg.eigvalsh((form + form.T) / 2)
    cut = tol.eps * max(1.0, float(np.abs(eig).max()))
    return int(np.sum(eig > cut)), int(np.sum(eig < -cut)), int(np.sum(np.abs(eig) <= cut))


class ZariskiKind(StrEnum):
    CONJUGATE_SO = "conjugate-SO"
    FULL_SL = "full-SL"
    DEGENERATE = "degenerate"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, eq=False)
class ZariskiVerdict:
    kind: ZariskiKind
    group: str
    form: np.ndarray | None = None
    residual: float | None = None
    form_space_dim: int | None = None
    description: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": str(self.kind),
            "group": self.group,
            "theorem": "zariski-closure-so-or-sl",
            "residual": self.residual,
            "form_space_dim": self.form_space_dim,
            "witnesses": {"form": None if self.form is None else self.form.tolist()},
            "description": self.description,
        }


def invariance_residual(form: np.ndarray, generators: Iterable[np.ndarray]) -> float:
    return max(float(np.abs(g.T @ form @ g - form).max()) for g in generators)


def lorentzian_form(
    forms: Sequence[np.ndarray], probe: np.ndarray | None = None, *, tol: Tolerance = DEFAULT_TOLERANCE, seed: int = 0
) -> np.ndarray | None:
    """A member of signature ``(n-1, 1)``, oriented negative on ``probe`` when given."""
    if not forms:
        return None
    n = forms[0].shape[0]
    rng = np.random.default_rng(seed)
    candidates = list(forms)
    if len(forms) > 1:
        candidates += [sum(c * f for c, f in zip(rng.normal(size=len(forms)), forms, strict=True))
                       for _ in range(64)]
    for b in candidates:
        for signed in (b, -b):
            pos, neg, null = signature(signed, tol=tol)
            if (pos, neg, null) == (n - 1, 1, 0):
                form = signed / np.linalg.norm(signed)
                if probe is not None and probe @ form @ probe > 0:
                    continue
                return form
    return None


def zariski_closure(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> ZariskiVerdict:
    """Zariski closure of Gamma_P: SO(d,1) iff a Lorentzian invariant form exists, else SL(d+1).

    Raises:
        PreconditionUnmet: P is not 2-perfect, or not loxodromic with an irreducible
            representation and not a cone over a parabolic / perfect loxodromic polytope.
    """
    d = poly.dim
    perf = perfection(poly, tol=tol)
    if not perf.level.is_two_perfect:
        raise PreconditionUnmet("Zariski closure needs a 2-perfect polytope",
                                locus={"perfection": str(perf.level)})
    cls = polytope_class(poly, tol=tol)

    if cls.kind is not PolytopeKind.LOXODROMIC:
        apex = cone_apex(poly, tol=tol)
        if apex is None:
            raise PreconditionUnmet(f"P is {cls.kind}", locus={"class": str(cls.kind)})
        q = link_at_vertex(poly, apex[1], tol=tol).polytope
        q_kind = polytope_class(q, tol=tol).kind
        if q_kind is PolytopeKind.PARABOLIC:
            return ZariskiVerdict(ZariskiKind.DEGENERATE, f"Trans_{d - 1}",
                                  description="cone over a parabolic polytope")
        if q_kind is PolytopeKind.LOXODROMIC:
            inner = zariski_closure(q, tol=tol)
            return ZariskiVerdict(ZariskiKind.DEGENERATE, inner.group, inner.form, inner.residual,
                                  inner.form_space_dim, f"cone over a loxodromic polytope ({inner.kind})")
        raise PreconditionUnmet(f"cone over a {q_kind} polytope")

    if cls.five_case == 4:
        return ZariskiVerdict(ZariskiKind.DEGENERATE, f"Diag_{d}",
                              description="W_P of type A~, Omega_P is a simplex")
    if not is_irreducible_rep(poly, tol=tol):
        raise PreconditionUnmet("Gamma_P is not irreducible")

    gens = poly.reflections()
    forms = invariant_quadratic_forms(gens, tol=tol)
    form = lorentzian_form(forms, poly.interior, tol=tol)
    if form is not None:
        residual = invariance_residual(form, gens)
        verdict = ZariskiVerdict(ZariskiKind.CONJUGATE_SO, f"SO({d},1)", form, residual, len(forms),
                                 "Gamma_P preserves an ellipsoid")
    elif not forms:
        verdict = ZariskiVerdict(ZariskiKind.FULL_SL, f"SL({d + 1})", form_space_dim=0,
                                 description="no invariant quadratic form")
    else:
        verdict = ZariskiVerdict(ZariskiKind.INCONCLUSIVE, "?", form_space_dim=len(forms),
                                 description="invariant forms exist but none is Lorentzian")
        log.warning(f"zariski inconclusive: {len(forms)} invariant forms, none Lorentzian")
    log.info(f"zariski closure: {verdict.group}")
    return verdict


# --- Strict convexity ---
@dataclass(frozen=True)
class StrictConvexity:
    strictly_convex: Verdict
    c1_boundary: Tri
    gromov_hyperbolic: Tri
    finite_covolume: Tri
    relative_hyperbolicity: RelHypReport | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            **self.strictly_convex.to_dict(),
            "c1_boundary": str(self.c1_boundary),
            "gromov_hyperbolic": str(self.gromov_hyperbolic),
            "finite_covolume": str(self.finite_covolume),
            "relative_hyperbolicity": None if self.relative_hyperbolicity is None
            else self.relative_hyperbolicity.to_dict(),
        }


def strict_convexity_verdict(
    level: Perfection,
    system: CoxeterSystem,
    parabolic_sets: Sequence[Iterable[str]],
    *,
    infinite_edges: Sequence[Sequence[str]] = (),
    loxodromic_vertices: Sequence[Sequence[str]] = (),
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> StrictConvexity:
    """Strict convexity from the perfection level and the peripheral structure."""
    theorem = "strictly-convex-iff-quasi-perfect-and-relatively-hyperbolic"
    if not level.is_two_perfect:
        edge = list(infinite_edges[0]) if infinite_edges else []
        return StrictConvexity(
            Verdict(Tri.FALSE, theorem, "an edge with infinite W_e lies in the boundary",
                    {"edge": edge}),
            Tri.UNKNOWN, Tri.FALSE, Tri.UNKNOWN,
        )
    if not level.is_quasi_perfect:
        vertex = list(loxodromic_vertices[0]) if loxodromic_vertices else []
        return StrictConvexity(
            Verdict(Tri.FALSE, theorem, "a loxodromic vertex makes P not quasi-perfect",
                    {"loxodromic_vertex": vertex}),
            Tri.FALSE, Tri.FALSE, Tri.FALSE,
        )
    peripherals: list[Subsystem] = []
    for members in parabolic_sets:
        sub = subsystem(system, members)
        if sub not in peripherals:
            peripherals.append(sub)
    rel = relative_hyperbolicity_check(system, peripherals, tol=tol)
    witness = {} if rel.witness is None else rel.witness.to_dict()
    value = Tri.of(rel.holds)
    log.info(f"strict convexity: {value}")
    return StrictConvexity(
        Verdict(value, theorem, "quasi-perfect; relative hyperbolicity decides", witness),
        value, value, Tri.TRUE, rel,
    )


def strict_convexity(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> StrictConvexity:
    cls = polytope_class(poly, tol=tol)
    if cls.kind is not PolytopeKind.LOXODROMIC:
        na = Tri.NOT_APPLICABLE
        return StrictConvexity(
            Verdict(na, "strictly-convex-iff-quasi-perfect-and-relatively-hyperbolic",
                    f"P is {cls.kind}"), na, na, na,
        )
    perf = perfection(poly, tol=tol)
    return strict_convexity_verdict(
        perf.level,
        coxeter_system_of(poly, tol=tol),
        [v.facets for v in perf.of_kind(VertexKind.PARABOLIC)],
        infinite_edges=perf.infinite_edges,
        loxodromic_vertices=[v.facets for v in perf.of_kind(VertexKind.LOXODROMIC)],
        tol=tol,
    )


def strictly_convex_invariant_set(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> Verdict:
    """Whether Gamma_P preserves some strictly convex open set.

    Only decided when every loxodromic vertex is simple; ``UNKNOWN`` otherwise.
    """
    theorem = "strictly-convex-invariant-set-iff-relatively-hyperbolic"
    cls = polytope_class(poly, tol=tol)
    perf = perfection(poly, tol=tol)
    if cls.kind is not PolytopeKind.LOXODROMIC or not perf.level.is_two_perfect:
        return Verdict(Tri.NOT_APPLICABLE, theorem, f"P is {cls.kind} {perf.level}")
    lox = perf.of_kind(VertexKind.LOXODROMIC)
    if any(not v.is_simple for v in lox):
        return Verdict(Tri.UNKNOWN, theorem, "a loxodromic vertex is not simple")
    system = coxeter_system_of(poly, tol=tol)
    peripherals = []
    for v in perf.of_kind(VertexKind.PARABOLIC):
        sub = subsystem(system, v.facets)
        if sub not in peripherals:
            peripherals.append(sub)
    rel = relative_hyperbolicity_check(system, peripherals, tol=tol)
    witness = {} if rel.witness is None else rel.witness.to_dict()
    return Verdict(Tri.of(rel.holds), theorem, "relative to geometric parabolic subgroups", witness)


@dataclass(frozen=True)
class ConvexExtremes:
    largest: Verdict
    smallest: Verdict
    unique: Verdict

    def to_dict(self) -> dict[str, Any]:
        return {
            "largest": self.largest.to_dict(),
            "smallest": self.smallest.to_dict(),
            "unique": self.unique.to_dict(),
        }


def invariant_convex_extremes(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> ConvexExtremes:
    """Omega_P is the largest invariant convex set; it is the smallest iff finite covolume.

    Raises:
        PreconditionUnmet: P is not loxodromic and 2-perfect.
    """
    cls = polytope_class(poly, tol=tol)
    perf = perfection(poly, tol=tol)
    if cls.kind is not PolytopeKind.LOXODROMIC or not perf.level.is_two_perfect:
        raise PreconditionUnmet(
            "invariant convex extremes need a loxodromic 2-perfect polytope",
            locus={"class": str(cls.kind), "perfection": str(perf.level)},
        )
    lox = perf.of_kind(VertexKind.LOXODROMIC)
    witness = {"loxodromic_vertices": [{"facets": list(v.facets), "point": v.point.tolist()} for v in lox]}
    smallest = Tri.of(not lox)
    reason = ("no loxodromic vertex" if not lox
              else "precisely invariant cones at loxodromic vertices lie outside Omega_min")
    return ConvexExtremes(
        largest=Verdict(Tri.TRUE, "largest-invariant-convex-set"),
        smallest=Verdict(smallest, "smallest-invariant-convex-set-iff-finite-covolume", reason, witness),
        unique=Verdict(smallest, "unique-invariant-convex-set-iff-finite-covolume", reason, witness),
    )


__all__ = [
    "ActionReport",
    "ConvexExtremes",
    "DegenerateClass",
    "Irreducibility",
    "Perfection",
    "PerfectionClass",
    "PolytopeClass",
    "PolytopeKind",
    "StrictConvexity",
    "Tri",
    "Verdict",
    "VertexClass",
    "VertexKind",
    "ZariskiKind",
    "ZariskiVerdict",
    "action_classification",
    "classify_vertex",
    "cone_apex",
    "degenerate_classification",
    "invariance_residual",
    "invariant_convex_extremes",
    "invariant_quadratic_forms",
    "irreducibility",
    "is_irreducible_rep",
    "lorentzian_form",
    "perfection",
    "polytope_class",
    "signature",
    "strict_convexity",
    "strict_convexity_verdict",
    "strictly_convex_invariant_set",
    "vertex_classes",
    "zariski_closure",
]
