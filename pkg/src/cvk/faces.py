"""Face lattice dan link vertex dari mirror polytope.

Vertex dihitung brute force atas semua subset d facet (skala meja: d <= 4,
maksimal 12 facet). Face diidentifikasi lewat himpunan facet aktif; himpunan
ini adalah irisan dari ``S_p`` vertex-vertexnya, jadi lattice didapat dengan
menutup keluarga ``{S_p}`` terhadap irisan.
"""

import itertools
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space

from config import DEFAULT_TOLERANCE, Tolerance
from cvk.polytope import MirrorPolytope, build_mirror_polytope
from utils.errors import DegenerateLattice, NotAVertex
from utils.mlogger import LoggerManager, logger

log = logger.bind(module="faces")

# nilai aktif di antara tol.vertex dan batas ini dianggap ambigu
_AMBIGUITY_FACTOR = 1e3


@dataclass(frozen=True)
class Face:
    active: frozenset[int]
    dim: int
    vertices: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FaceLattice:
    dim: int
    vertices: np.ndarray
    vertex_sets: tuple[frozenset[int], ...]
    faces: dict[frozenset[int], Face]

    def faces_of_dim(self, k: int) -> list[Face]:
        return sorted(
            (f for f in self.faces.values() if f.dim == k),
            key=lambda f: sorted(f.active),
        )

    @property
    def facets(self) -> list[Face]:
        return self.faces_of_dim(self.dim - 1)

    @property
    def ridges(self) -> list[Face]:
        return self.faces_of_dim(self.dim - 2) if self.dim >= 2 else []

    @property
    def edges(self) -> list[Face]:
        return self.faces_of_dim(1)

    @property
    def adjacent_pairs(self) -> list[tuple[int, int]]:
        """Facet pairs meeting in a ridge; in d = 1 the two endpoints of the segment."""
        if self.dim == 1:
            ends = sorted(i for f in self.facets for i in f.active)
            return [(ends[0], ends[1])] if len(ends) == 2 else []
        pairs = {
            pair
            for ridge in self.ridges
            for pair in itertools.combinations(sorted(ridge.active), 2)
        }
        return sorted(pairs)

    def face_of(self, active: frozenset[int]) -> Face:
        return self.faces[active]

    def vertex_index(self, point: int | np.ndarray, *, tol: Tolerance = DEFAULT_TOLERANCE) -> int:
        """Resolve a vertex given as an index or as coordinates."""
        if isinstance(point, int | np.integer):
            if 0 <= int(point) < len(self.vertices):
                return int(point)
            raise NotAVertex(f"no vertex #{point}", locus={"vertex": int(point)})
        x = np.asarray(point, dtype=float)
        x = x / np.linalg.norm(x)
        for k, v in enumerate(self.vertices):
            if np.linalg.norm(v - x) <= 10 * tol.vertex:
                return k
        raise NotAVertex("point is not a vertex", locus={"point": x.tolist()})


def _candidate_vertex(
    unit: np.ndarray, combo: Sequence[int], tol: Tolerance
) -> np.ndarray | None:
    rows = unit[list(combo)]
    _, sing, vt = np.linalg.svd(rows)
    if sing[-1] <= tol.eps * sing[0] * 1e3:
        return None
    x = vt[-1]
    values = unit @ x
    for sign in (1.0, -1.0):
        worst = float((sign * values).max())
        if worst <= tol.vertex:
            return sign * x
        if worst <= _AMBIGUITY_FACTOR * tol.vertex:
            raise DegenerateLattice(
                "vertex candidate violates an inequality by a numerically ambiguous amount",
                locus={"facets": list(combo), "violation": worst},
            )
    return None


@LoggerManager.timer("face lattice")
def _compute(poly: MirrorPolytope, tol: Tolerance) -> FaceLattice:
    d = poly.dim
    if d == 0:
        return FaceLattice(0, np.zeros((0, 1)), (), {frozenset(): Face(frozenset(), 0, ())})

    unit = poly.alphas / np.linalg.norm(poly.alphas, axis=1, keepdims=True)
    points: list[np.ndarray] = []
    for combo in itertools.combinations(range(poly.n_facets), d):
        x = _candidate_vertex(unit, combo, tol)
        if x is None:
            continue
        if not any(np.linalg.norm(x - y) <= 10 * tol.vertex for y in points):
            points.append(x)

    vertices = np.array(points)
    values = vertices @ unit.T
    ambiguous = (np.abs(values) > tol.vertex) & (np.abs(values) <= _AMBIGUITY_FACTOR * tol.vertex)
    if ambiguous.any():
        k, s = np.argwhere(ambiguous)[0]
        raise DegenerateLattice(
            "a facet is neither active nor inactive at a vertex",
            locus={"vertex": int(k), "facet": poly.names[int(s)], "value": float(values[k, s])},
        )
    vertex_sets = tuple(
        frozenset(int(s) for s in np.flatnonzero(np.abs(row) <= tol.vertex)) for row in values
    )

    # irisan tertutup dari {S_p}
    family: set[frozenset[int]] = set(vertex_sets) | {frozenset()}
    queue = deque(family)
    while queue:
        current = queue.popleft()
        for sp in vertex_sets:
            meet = current & sp
            if meet not in family:
                family.add(meet)
                queue.append(meet)

    faces: dict[frozenset[int], Face] = {}
    for active in family:
        members = tuple(k for k, sp in enumerate(vertex_sets) if active <= sp)
        rank = int(np.linalg.matrix_rank(vertices[list(members)], tol=1e3 * tol.vertex))
        faces[active] = Face(active=active, dim=rank - 1, vertices=members)

    log.debug(f"lattice: {len(vertices)} vertices, {len(faces)} faces (dim {d})")
    return FaceLattice(dim=d, vertices=vertices, vertex_sets=vertex_sets, faces=faces)


def face_lattice(poly: MirrorPolytope, *, tol: Tolerance = DEFAULT_TOLERANCE) -> FaceLattice:
    """Memoized face lattice.

    Raises:
        DegenerateLattice: a vertex is numerically ambiguous.
    """
    return poly.memo(f"lattice:{tol}", lambda: _compute(poly, tol))


@dataclass(frozen=True, eq=False)
class VertexLink:
    vertex: int
    point: np.ndarray
    facets: tuple[int, ...]
    polytope: MirrorPolytope


def link_at_vertex(
    poly: MirrorPolytope, p: int | np.ndarray, *, tol: Tolerance = DEFAULT_TOLERANCE
) -> VertexLink:
    """Link ``P_p`` in ``S(R^{d+1} / <p>)``, using ``p^perp`` as the complement.

    Raises:
        NotAVertex: ``p`` is not a vertex of the lattice.
    """
    lattice = face_lattice(poly, tol=tol)
    k = lattice.vertex_index(p, tol=tol)

    def build() -> VertexLink:
        point = lattice.vertices[k]
        facets = tuple(sorted(lattice.vertex_sets[k]))
        basis = null_space(point[None, :])
        pairs = [(poly.alphas[s] @ basis, poly.vectors[s] @ basis) for s in facets]
        link = build_mirror_polytope(
            poly.dim - 1, pairs, names=[poly.names[s] for s in facets], tol=tol
        )
        return VertexLink(vertex=k, point=point, facets=facets, polytope=link)

    return poly.memo(f"link:{k}:{tol}", build)


__all__ = [
    "Face",
    "FaceLattice",
    "VertexLink",
    "face_lattice",
    "link_at_vertex",
]
