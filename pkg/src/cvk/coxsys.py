"""Sistem Coxeter kombinatorial.

Berisi tipe ``CoxeterSystem`` (generator + matriks label dengan sentinel ``INF``),
matriks Gram, komponen irreducible, klasifikasi spherical/affine/large dengan
katalog nama diagram, subsystem, orthogonal complement, subsystem just-infinite
dan checker relatif hiperbolik (kriteria Caprace) secara kombinatorial.

Usage:
    from cvk.coxsys import INF, build_system, classify_irreducible
    w = build_system(["a", "b"], [[1, INF], [INF, 1]])
    classify_irreducible(w).name  # "A~1"
"""

import functools
import itertools
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, Final

import networkx as nx
import numpy as np

from config import DEFAULT_TOLERANCE, MAX_SUBSYSTEM_RANK, Tolerance
from utils.errors import (
    BadDiagonal,
    BadLabel,
    BadPeripheral,
    CapExceeded,
    NonSymmetric,
    NotIrreducible,
    ValidationError,
)
from utils.mlogger import logger

log = logger.bind(module="coxsys")


class _Infinity:
    """Label sentinel for M_st = infinity."""

    _instance: "_Infinity | None" = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self) -> str:
        return "INF"


INF: Final = _Infinity()
Label = int | _Infinity


def label_to_json(m: Label) -> int | str:
    return "inf" if m is INF else int(m)


def label_from_json(raw: Any) -> Label:
    """Parse a JSON label: an int or the string ``"inf"``."""
    if isinstance(raw, str) and raw.strip().lower() in {"inf", "infinity", "∞"}:
        return INF
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise BadLabel(f"label must be an integer or 'inf', got {raw!r}")
    return raw


# --- Types ---
@dataclass(frozen=True)
class CoxeterSystem:
    generators: tuple[str, ...]
    labels: tuple[tuple[Label, ...], ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {g: i for i, g in enumerate(self.generators)}
        )

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, generator: str) -> int:
        try:
            return self._index[generator]
        except KeyError:
            raise ValidationError(
                f"unknown generator {generator!r}", locus={"generator": generator}
            ) from None

    def label(self, s: str, t: str) -> Label:
        return self.labels[self.index(s)][self.index(t)]

    def ordered(self, members: Iterable[str]) -> tuple[str, ...]:
        wanted = set(members)
        return tuple(g for g in self.generators if g in wanted)

    def restrict(self, members: Iterable[str]) -> "CoxeterSystem":
        """Label matrix restricted to ``members`` (kept in generator order)."""
        names = self.ordered(members)
        idx = [self.index(g) for g in names]
        return CoxeterSystem(
            generators=names,
            labels=tuple(tuple(self.labels[i][j] for j in idx) for i in idx),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "generators": list(self.generators),
            "labels": [[label_to_json(m) for m in row] for row in self.labels],
        }


@dataclass(frozen=True)
class Subsystem:
    parent: CoxeterSystem
    members: frozenset[str]

    @property
    def rank(self) -> int:
        return len(self.members)

    @property
    def ordered(self) -> tuple[str, ...]:
        return self.parent.ordered(self.members)

    def system(self) -> CoxeterSystem:
        return self.parent.restrict(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(self.ordered) + "}"


def subsystem(parent: CoxeterSystem, members: Iterable[str]) -> Subsystem:
    """Build a ``Subsystem``, rejecting names outside the parent."""
    chosen = frozenset(members)
    unknown = chosen.difference(parent.generators)
    if unknown:
        raise BadPeripheral(
            f"generators {sorted(unknown)} are not in the system",
            locus={"unknown": sorted(unknown)},
        )
    return Subsystem(parent=parent, members=chosen)


class DiagramKind(StrEnum):
    SPHERICAL = "spherical"
    AFFINE = "affine"
    LARGE = "large"


@dataclass(frozen=True)
class DiagramClass:
    kind: DiagramKind
    name: str | None
    min_eigenvalue: float


# --- Construction ---
def build_system(
    generators: Sequence[str], labels: Sequence[Sequence[Label]]
) -> CoxeterSystem:
    """Validate a generator list and label matrix.

    Args:
        generators: Ordered generator names.
        labels: Square matrix of labels, ``INF`` for infinity.

    Returns:
        CoxeterSystem: The validated system.

    Raises:
        BadDiagonal: ``M_ss != 1``.
        BadLabel: an off-diagonal label below 2 or not an integer.
        NonSymmetric: ``M_st != M_ts``.
    """
    names = tuple(str(g) for g in generators)
    rank = len(names)
    if rank < 1:
        raise ValidationError("a Coxeter system needs at least one generator")
    if len(set(names)) != rank:
        raise ValidationError(f"duplicate generator names in {names}")
    if len(labels) != rank or any(len(row) != rank for row in labels):
        raise ValidationError(
            f"label matrix must be {rank}x{rank}", locus={"generators": list(names)}
        )

    for i, j in itertools.product(range(rank), repeat=2):
        m = labels[i][j]
        where = {"pair": [names[i], names[j]], "label": repr(m)}
        if i == j:
            if m is INF or m != 1:
                raise BadDiagonal(f"M_{names[i]}{names[i]} must be 1", locus=where)
            continue
        if m is not INF and (isinstance(m, bool) or not isinstance(m, int) or m < 2):
            raise BadLabel(
                f"M_{names[i]}{names[j]} = {m!r} is not in {{2, 3, ..., inf}}",
                locus=where,
            )
    for i, j in itertools.combinations(range(rank), 2):
        if labels[i][j] is not labels[j][i] and labels[i][j] != labels[j][i]:
            raise NonSymmetric(
                f"M_{names[i]}{names[j]} != M_{names[j]}{names[i]}",
                locus={"pair": [names[i], names[j]]},
            )
    return CoxeterSystem(
        generators=names, labels=tuple(tuple(row) for row in labels)
    )


def gram_entry(m: Label) -> float:
    if m is INF:
        return -2.0
    if m == 2:
        return 0.0
    return -2.0 * math.cos(math.pi / m)


def gram_matrix(sys: CoxeterSystem | Subsystem) -> np.ndarray:
    """Gram matrix ``-2 cos(pi / M_st)``, with ``INF`` mapped to ``-2``."""
    w = sys.system() if isinstance(sys, Subsystem) else sys
    return np.array([[gram_entry(m) for m in row] for row in w.labels], dtype=float)


def coxeter_graph(sys: CoxeterSystem) -> nx.Graph:
    """Graph with an edge ``s - t`` whenever ``M_st != 2``, labelled by ``m``."""
    graph = nx.Graph()
    graph.add_nodes_from(sys.generators)
    for i, j in itertools.combinations(range(sys.rank), 2):
        m = sys.labels[i][j]
        if m is INF or m != 2:
            graph.add_edge(sys.generators[i], sys.generators[j], m=label_to_json(m))
    return graph


def irreducible_components(sys: CoxeterSystem | Subsystem) -> list[Subsystem]:
    parent = sys.parent if isinstance(sys, Subsystem) else sys
    members = sys.members if isinstance(sys, Subsystem) else frozenset(sys.generators)
    return [
        Subsystem(parent=parent, members=comp)
        for comp in _components(parent, members)
    ]


@functools.lru_cache(maxsize=65536)
def _components(parent: CoxeterSystem, members: frozenset[str]) -> tuple[frozenset[str], ...]:
    graph = coxeter_graph(parent).subgraph(members)
    comps = [frozenset(c) for c in nx.connected_components(graph)]
    comps.sort(key=lambda c: min(parent.index(g) for g in c))
    return tuple(comps)


# --- Catalog ---
def _from_edges(rank: int, edges: dict[tuple[int, int], Label]) -> CoxeterSystem:
    labels: list[list[Label]] = [
        [1 if i == j else 2 for j in range(rank)] for i in range(rank)
    ]
    for (i, j), m in edges.items():
        labels[i][j] = labels[j][i] = m
    return build_system([str(k + 1) for k in range(rank)], labels)


def _path(n: int) -> dict[tuple[int, int], Label]:
    return {(k, k + 1): 3 for k in range(n - 1)}


def spherical_diagram(family: str, n: int) -> CoxeterSystem:
    """Irreducible spherical diagram ``family_n`` (``I2`` takes ``n`` as the label)."""
    match family:
        case "A" if n >= 1:
            return _from_edges(n, _path(n))
        case "B" if n >= 2:
            return _from_edges(n, _path(n) | {(0, 1): 4})
        case "D" if n >= 4:
            return _from_edges(n, _path(n - 1) | {(n - 3, n - 1): 3})
        case "E" if n in (6, 7, 8):
            return _from_edges(n, _path(n - 1) | {(2, n - 1): 3})
        case "F" if n == 4:
            return _from_edges(4, _path(4) | {(1, 2): 4})
        case "H" if n in (3, 4):
            return _from_edges(n, _path(n) | {(0, 1): 5})
        case "I2" if n >= 3:
            return _from_edges(2, {(0, 1): n})
    raise ValidationError(f"no spherical diagram {family}{n}")


def affine_diagram(family: str, n: int) -> CoxeterSystem:
    """Irreducible affine diagram ``family~n`` of rank ``n + 1``."""
    match family:
        case "A" if n == 1:
            return _from_edges(2, {(0, 1): INF})
        case "A" if n >= 2:
            return _from_edges(n + 1, _path(n + 1) | {(0, n): 3})
        case "B" if n == 2:
            return _from_edges(3, {(0, 1): 4, (1, 2): 4})
        case "B" if n >= 3:
            edges = {(k, k + 1): 3 for k in range(2, n)}
            return _from_edges(n + 1, edges | {(0, 2): 3, (1, 2): 3, (n - 1, n): 4})
        case "C" if n >= 3:
            return _from_edges(n + 1, _path(n + 1) | {(0, 1): 4, (n - 1, n): 4})
        case "D" if n >= 4:
            edges = {(k, k + 1): 3 for k in range(2, n - 2)}
            edges |= {(0, 2): 3, (1, 2): 3, (n - 2, n - 1): 3, (n - 2, n): 3}
            return _from_edges(n + 1, edges)
        case "E" if n == 6:
            return _from_edges(7, _path(5) | {(2, 5): 3, (5, 6): 3})
        case "E" if n == 7:
            return _from_edges(8, _path(7) | {(3, 7): 3})
        case "E" if n == 8:
            return _from_edges(9, _path(8) | {(2, 8): 3})
        case "F" if n == 4:
            return _from_edges(5, _path(5) | {(2, 3): 4})
        case "G" if n == 2:
            return _from_edges(3, {(0, 1): 6, (1, 2): 3})
    raise ValidationError(f"no affine diagram {family}~{n}")


def catalog(max_rank: int = 9) -> list[tuple[str, DiagramKind, CoxeterSystem]]:
    """All named spherical and affine diagrams up to ``max_rank``."""
    entries: list[tuple[str, DiagramKind, CoxeterSystem]] = []
    spherical = [("A", n) for n in range(1, max_rank + 1)]
    spherical += [("B", n) for n in range(2, max_rank + 1)]
    spherical += [("D", n) for n in range(4, max_rank + 1)]
    spherical += [("E", n) for n in (6, 7, 8)] + [("F", 4), ("H", 3), ("H", 4)]
    for family, n in spherical:
        if n <= max_rank:
            entries.append((f"{family}{n}", DiagramKind.SPHERICAL, spherical_diagram(family, n)))
    if max_rank >= 2:
        entries.extend(
            (f"I2({p})", DiagramKind.SPHERICAL, spherical_diagram("I2", p))
            for p in range(5, 13)
        )

    affine = [("A", n) for n in range(1, max_rank)]
    affine += [("B", n) for n in range(2, max_rank)]
    affine += [("C", n) for n in range(3, max_rank)]
    affine += [("D", n) for n in range(4, max_rank)]
    affine += [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
    for family, n in affine:
        if n + 1 <= max_rank:
            entries.append((f"{family}~{n}", DiagramKind.AFFINE, affine_diagram(family, n)))
    return entries


@functools.lru_cache(maxsize=64)
def _catalog_by_rank(rank: int) -> tuple[tuple[str, DiagramKind, nx.Graph], ...]:
    return tuple(
        (name, kind, coxeter_graph(w))
        for name, kind, w in catalog(max_rank=rank)
        if w.rank == rank
    )


def _edge_match(a: dict[str, Any], b: dict[str, Any]) -> bool:
    return a["m"] == b["m"]


def catalog_name(sys: CoxeterSystem, kind: DiagramKind) -> str | None:
    """Name of an irreducible diagram in the catalog, or ``None``."""
    if kind is DiagramKind.LARGE:
        return None
    if sys.rank == 1:
        return "A1"
    if sys.rank == 2:
        m = sys.labels[0][1]
        if m is INF:
            return "A~1"
        return {3: "A2", 4: "B2"}.get(m, f"I2({m})")
    graph = coxeter_graph(sys)
    for name, entry_kind, entry_graph in _catalog_by_rank(sys.rank):
        if entry_kind is kind and nx.is_isomorphic(
            graph, entry_graph, edge_match=_edge_match
        ):
            return name
    return None


# --- Classification ---
def _kind_of(min_eig: float, eps: float) -> DiagramKind:
    if min_eig > eps:
        return DiagramKind.SPHERICAL
    if min_eig >= -eps:
        return DiagramKind.AFFINE
    return DiagramKind.LARGE


@functools.lru_cache(maxsize=65536)
def _component_kind(parent: CoxeterSystem, comp: frozenset[str], eps: float) -> tuple[DiagramKind, float]:
    gram = gram_matrix(Subsystem(parent=parent, members=comp))
    min_eig = float(np.linalg.eigvalsh(gram).min())
    return _kind_of(min_eig, eps), min_eig


def classify_irreducible(
    sys: CoxeterSystem | Subsystem, *, tol: Tolerance = DEFAULT_TOLERANCE
) -> DiagramClass:
    """Spherical/affine/large verdict of an irreducible system, with catalog name.

    Raises:
        NotIrreducible: the Coxeter graph is disconnected.
    """
    comps = irreducible_components(sys)
    if len(comps) != 1:
        raise NotIrreducible(
            f"system has {len(comps)} irreducible components",
            locus={"components": [str(c) for c in comps]},
        )
    comp = comps[0]
    kind, min_eig = _component_kind(comp.parent, comp.members, tol.eps)
    return DiagramClass(
        kind=kind, name=catalog_name(comp.system(), kind), min_eigenvalue=min_eig
    )


def _kinds(sys: CoxeterSystem | Subsystem, eps: float) -> list[DiagramKind]:
    return [
        _component_kind(c.parent, c.members, eps)[0] for c in irreducible_components(sys)
    ]


def is_spherical(sys: CoxeterSystem | Subsystem, *, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    return all(k is DiagramKind.SPHERICAL for k in _kinds(sys, tol.eps))


def is_affine(sys: CoxeterSystem | Subsystem, *, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    kinds = _kinds(sys, tol.eps)
    return bool(kinds) and all(k is DiagramKind.AFFINE for k in kinds)


def is_euclidean(sys: CoxeterSystem | Subsystem, *, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    return all(k is not DiagramKind.LARGE for k in _kinds(sys, tol.eps))


def is_lanner(sys: CoxeterSystem, *, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Irreducible large system whose maximal proper subsystems are all spherical."""
    if len(irreducible_components(sys)) != 1 or is_euclidean(sys, tol=tol):
        return False
    whole = frozenset(sys.generators)
    return all(
        is_spherical(Subsystem(sys, whole - {s}), tol=tol) for s in sys.generators
    )


def is_quasi_lanner(sys: CoxeterSystem, *, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Irreducible large system whose maximal proper subsystems are spherical or irreducible affine."""
    if len(irreducible_components(sys)) != 1 or is_euclidean(sys, tol=tol):
        return False
    whole = frozenset(sys.generators)
    for s in sys.generators:
        sub = Subsystem(sys, whole - {s})
        if is_spherical(sub, tol=tol):
            continue
        if len(irreducible_components(sub)) == 1 and is_affine(sub, tol=tol):
            continue
        return False
    return True


def is_lorentzian(sys: CoxeterSystem, *, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Gram signature ``(rank - 1, 1)``."""
    eig = np.linalg.eigvalsh(gram_matrix(sys))
    return int(np.sum(eig < -tol.eps)) == 1 and int(np.sum(eig > tol.eps)) == sys.rank - 1


# --- Subsystems ---
def _check_scan_rank(sys: CoxeterSystem) -> None:
    if sys.rank > MAX_SUBSYSTEM_RANK:
        raise CapExceeded(
            f"subsystem scans are exhaustive and capped at rank {MAX_SUBSYSTEM_RANK}",
            locus={"rank": sys.rank},
        )


def subsystem_rank_scan(
    sys: CoxeterSystem, min_rank: int = 1, max_rank: int | None = None
) -> Iterator[Subsystem]:
    """All subsystems with rank in ``[min_rank, max_rank]``, by size then generator order."""
    _check_scan_rank(sys)
    top = sys.rank if max_rank is None else min(max_rank, sys.rank)
    for k in range(max(min_rank, 0), top + 1):
        for combo in itertools.combinations(sys.generators, k):
            yield Subsystem(parent=sys, members=frozenset(combo))


def orthogonal_complement(sys: CoxeterSystem, t: Subsystem) -> Subsystem:
    """``T^perp``: generators outside T commuting with every member of T."""
    if t.parent != sys:
        raise BadPeripheral(f"{t} is not a subsystem of this system")
    rest = [
        s
        for s in sys.generators
        if s not in t.members and all(sys.label(s, u) == 2 for u in t.members)
    ]
    return Subsystem(parent=sys, members=frozenset(rest))


def just_infinite_subsystems(
    sys: CoxeterSystem, *, tol: Tolerance = DEFAULT_TOLERANCE
) -> list[Subsystem]:
    """Infinite subsystems whose maximal proper subsystems are all spherical.

    The scan goes level by level and only visits sets whose every co-rank-1 subset
    is spherical, so the cost is bounded by the number of spherical subsets.
    """
    _check_scan_rank(sys)
    found: list[Subsystem] = []
    spherical_prev = {frozenset([s]) for s in sys.generators}
    for k in range(2, sys.rank + 1):
        spherical_next: set[frozenset[str]] = set()
        for combo in itertools.combinations(sys.generators, k):
            members = frozenset(combo)
            if not all(members - {u} in spherical_prev for u in members):
                continue
            sub = Subsystem(parent=sys, members=members)
            if is_spherical(sub, tol=tol):
                spherical_next.add(members)
            else:
                found.append(sub)
        spherical_prev = spherical_next
    log.debug(f"just-infinite subsystems: {[str(u) for u in found]}")
    return found


# --- Relative hyperbolicity ---
@dataclass(frozen=True)
class CapraceFailure:
    condition: int
    witness: tuple[Subsystem, ...]
    detail: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "condition": self.condition,
            "witness": [list(w.ordered) for w in self.witness],
            "detail": self.detail,
        }


@dataclass(frozen=True)
class RelHypReport:
    holds: bool
    failures: tuple[CapraceFailure, ...]
    peripherals: tuple[Subsystem, ...]

    @property
    def witness(self) -> CapraceFailure | None:
        return self.failures[0] if self.failures else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.holds,
            "theorem": "relative-hyperbolicity-criterion",
            "peripherals": [list(p.ordered) for p in self.peripherals],
            "witnesses": [f.to_dict() for f in self.failures],
        }


def _irreducible_infinite(sys: CoxeterSystem, eps: float) -> list[Subsystem]:
    out = []
    for sub in subsystem_rank_scan(sys, min_rank=1):
        comps = _components(sys, sub.members)
        if len(comps) == 1 and _component_kind(sys, sub.members, eps)[0] is not DiagramKind.SPHERICAL:
            out.append(sub)
    return out


def _orthogonal(sys: CoxeterSystem, a: frozenset[str], b: frozenset[str]) -> bool:
    return a.isdisjoint(b) and all(sys.label(s, t) == 2 for s in a for t in b)


def relative_hyperbolicity_check(
    sys: CoxeterSystem,
    peripherals: Sequence[Subsystem],
    *,
    tol: Tolerance = DEFAULT_TOLERANCE,
    exhaustive: bool = False,
) -> RelHypReport:
    """Caprace's combinatorial criterion for W relative to the given peripherals.

    Conditions checked, in this order:

    1. every affine subsystem of rank >= 3 lies in some peripheral, and every
       orthogonal pair of irreducible infinite subsystems lies jointly in one;
    2. pairwise intersections of peripherals are spherical;
    3. for each peripheral T and irreducible infinite U in T, ``U^perp`` is in T.

    Args:
        sys: The Coxeter system.
        peripherals: Candidate peripheral subsystems.
        tol: Tolerances.
        exhaustive: Collect every failure instead of stopping at the first.

    Returns:
        RelHypReport: verdict plus the failing conditions with witnesses.

    Raises:
        BadPeripheral: a peripheral belongs to another system.
    """
    for t in peripherals:
        if t.parent != sys:
            raise BadPeripheral(f"{t} is not a subsystem", locus={"peripheral": sorted(t.members)})
    _check_scan_rank(sys)
    eps = tol.eps
    failures: list[CapraceFailure] = []

    def covered(members: frozenset[str]) -> bool:
        return any(members <= t.members for t in peripherals)

    def record(failure: CapraceFailure) -> bool:
        failures.append(failure)
        return not exhaustive

    irr_inf = _irreducible_infinite(sys, eps)

    # (1a) affine subsystems of rank >= 3
    for sub in subsystem_rank_scan(sys, min_rank=3):
        if is_affine(sub, tol=tol) and not covered(sub.members):
            if record(CapraceFailure(1, (sub,), f"affine subsystem {sub} is in no peripheral")):
                return RelHypReport(False, tuple(failures), tuple(peripherals))

    # (1b) orthogonal pairs of irreducible infinite subsystems
    for a, b in itertools.combinations(irr_inf, 2):
        if _orthogonal(sys, a.members, b.members) and not covered(a.members | b.members):
            if record(CapraceFailure(1, (a, b), f"orthogonal infinite pair {a}, {b} is in no peripheral")):
                return RelHypReport(False, tuple(failures), tuple(peripherals))

    # (2) intersections spherical
    for t1, t2 in itertools.combinations(peripherals, 2):
        inter = Subsystem(sys, t1.members & t2.members)
        if not is_spherical(inter, tol=tol):
            if record(CapraceFailure(2, (t1, t2), f"{t1} and {t2} meet in non-spherical {inter}")):
                return RelHypReport(False, tuple(failures), tuple(peripherals))

    # (3) orthogonal complements of infinite pieces stay inside
    for t in peripherals:
        for u in irr_inf:
            if u.members <= t.members:
                perp = orthogonal_complement(sys, u)
                if not perp.members <= t.members:
                    if record(CapraceFailure(3, (t, u, perp), f"{u}^perp = {perp} leaves {t}")):
                        return RelHypReport(False, tuple(failures), tuple(peripherals))

    holds = not failures
    log.info(
        f"relative hyperbolicity w.r.t. {[str(t) for t in peripherals]}: {holds}"
    )
    return RelHypReport(holds, tuple(failures), tuple(peripherals))


__all__ = [
    "INF",
    "CapraceFailure",
    "CoxeterSystem",
    "DiagramClass",
    "DiagramKind",
    "Label",
    "RelHypReport",
    "Subsystem",
    "affine_diagram",
    "build_system",
    "catalog",
    "catalog_name",
    "classify_irreducible",
    "coxeter_graph",
    "gram_matrix",
    "irreducible_components",
    "is_affine",
    "is_euclidean",
    "is_lanner",
    "is_lorentzian",
    "is_quasi_lanner",
    "is_spherical",
    "just_infinite_subsystems",
    "label_from_json",
    "label_to_json",
    "orthogonal_complement",
    "relative_hyperbolicity_check",
    "spherical_diagram",
    "subsystem",
    "subsystem_rank_scan",
]
