"""Grup dan geometri skala meja: enumerasi Gamma_P, tiling, limit set, Omega_max.

Enumerasi adalah BFS atas word (huruf ditambahkan di kanan). Dedup memakai
``cKDTree`` atas matriks yang di-flatten: jarak relatif <= ``tol.audit``
berarti elemen yang sama, jarak di ``(audit, grid]`` berarti ambigu dan
enumerasi dihentikan (``DedupAmbiguity``), tidak pernah digabung diam-diam.

Usage:
    from cvk.catalog import fixture
    from cvk.orbit import enumerate_group, growth_counts

    elements = enumerate_group(fixture("triangle-237"), 8)
    growth_counts(elements)
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
import pandas as pd
from scipy.spatial import cKDTree

from config import DEFAULT_TOLERANCE, MAX_WORD_LENGTH_CAP, Tolerance
from cvk.classify import VertexKind, vertex_classes
from cvk.faces import face_lattice
from cvk.polytope import MirrorPolytope, containing_affine_chart, interior_samples
from utils.errors import CapExceeded, CvkError, DedupAmbiguity, NoProximalFound, OverlapDetected
from utils.mlogger import LoggerManager, logger

log = logger.bind(module="orbit")


@dataclass(frozen=True, eq=False)
class GroupElement:
    matrix: np.ndarray
    word: tuple[str, ...]
    indices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.indices)

    def inverse(self) -> "GroupElement":
        # generator adalah involusi: kebalikan word = word dibalik
        return GroupElement(np.linalg.inv(self.matrix), self.word[::-1], self.indices[::-1])

    def to_dict(self) -> dict[str, Any]:
        return {"word": list(self.word), "length": self.length, "matrix": self.matrix.tolist()}


@dataclass(frozen=True)
class GroupEnumeration:
    elements: tuple[GroupElement, ...]
    max_len: int
    closed: bool

    @property
    def counts(self) -> list[int]:
        return growth_counts(self.elements, self.max_len)


def growth_counts(elements: Sequence[GroupElement], max_len: int | None = None) -> list[int]:
    top = max((e.length for e in elements), default=0) if max_len is None else max_len
    counts = [0] * (top + 1)
    for e in elements:
        counts[e.length] += 1
    return counts


def word_matrix(poly: MirrorPolytope, indices: Sequence[int]) -> np.ndarray:
    """Ordered product ``sigma_{s1} ... sigma_{sk}``."""
    m = np.eye(poly.dim + 1)
    for s in indices:
        m = m @ poly.reflection(s)
    return m


def _scale(x: np.ndarray, y: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(x)), float(np.linalg.norm(y)))


def _same(x: np.ndarray, y: np.ndarray, tol: Tolerance, word: tuple[str, ...]) -> bool:
    dist = float(np.linalg.norm(x - y))
    scale = _scale(x, y)
    if dist <= tol.audit * scale:
        return True
    if dist <= tol.grid * scale:
        raise DedupAmbiguity(
            "two group elements are numerically ambiguous",
            locus={"word": list(word), "distance": dist, "scale": scale},
        )
    return False


@LoggerManager.timer("group enumeration")
def group_enumeration(
    poly: MirrorPolytope, max_len: int, *, tol: Tolerance = DEFAULT_TOLERANCE
) -> GroupEnumeration:
    """Elements of Gamma_P of word length ``<= max_len``, one representative each.

    Results are sorted by length, then by generator-index word.

    Raises:
        CapExceeded: ``max_len`` above the hard cap.
        DedupAmbiguity: two matrices fall in the audit band.
    """
    if max_len > MAX_WORD_LENGTH_CAP:
        raise CapExceeded(
            f"max word length {max_len} exceeds the cap {MAX_WORD_LENGTH_CAP}",
            locus={"max_len": max_len},
        )
    n = poly.dim + 1
    gens = poly.reflections()
    identity = GroupElement(np.eye(n), (), ())
    elements = [identity]
    frontier = [identity]
    closed = False

    for length in range(1, max_len + 1):
        known = np.array([e.matrix.ravel() for e in elements])
        tree = cKDTree(known)
        candidates = sorted(
            (
                (e.indices + (s,), e.matrix @ gens[s])
                for e in frontier
                for s in range(poly.n_facets)
                if not e.indices or e.indices[-1] != s
            ),
            key=lambda c: c[0],
        )
        fresh: list[tuple[tuple[int, ...], np.ndarray]] = []
        for indices, m in candidates:
            x = m.ravel()
            _, k = tree.query(x)
            word = tuple(poly.names[s] for s in indices)
            if not _same(x, known[k], tol, word):
                fresh.append((indices, m))

        # dedup di dalam satu level
        kept: list[tuple[tuple[int, ...], np.ndarray]] = []
        if fresh:
            flat = np.array([m.ravel() for _, m in fresh])
            radius = tol.grid * max(1.0, float(np.linalg.norm(flat, axis=1).max()))
            dropped: set[int] = set()
            for i, j in sorted(cKDTree(flat).query_pairs(radius)):
                if i in dropped:
                    continue
                word = tuple(poly.names[s] for s in fresh[j][0])
                if _same(flat[i], flat[j], tol, word):
                    dropped.add(j)
            kept = [c for k, c in enumerate(fresh) if k not in dropped]

        frontier = [
            GroupElement(m, tuple(poly.names[s] for s in indices), indices) for indices, m in kept
        ]
        if not frontier:
            closed = True
            log.debug(f"group closed at length {length - 1}, order {len(elements)}")
            break
        elements.extend(frontier)
        log.debug(f"length {length}: {len(frontier)} elements")
    return GroupEnumeration(tuple(elements), max_len, closed)


def enumerate_group(
    poly: MirrorPolytope, max_len: int, *, tol: Tolerance = DEFAULT_TOLERANCE
) -> list[GroupElement]:
    return list(group_enumeration(poly, max_len, tol=tol).elements)


# --- Tiling ---
@dataclass(frozen=True, eq=False)
class TilingSnapshot:
    tiles: tuple[tuple[GroupElement, np.ndarray], ...]
    hull_sample: np.ndarray
    depth: int
    closed: bool
    overlaps: int
    polytope: MirrorPolytope

    @property
    def counts(self) -> list[int]:
        return growth_counts([g for g, _ in self.tiles], self.depth)

    def stats(self) -> dict[str, Any]:
        return {
            "depth": self.depth,
            "tiles": len(self.tiles),
            "counts_per_length": self.counts,
            "closed": self.closed,
            "overlap_check": "ok" if self.overlaps == 0 else f"{self.overlaps} overlaps",
        }


def _normalize(points: np.ndarray) -> np.ndarray:
    return points / np.linalg.norm(points, axis=-1, keepdims=True)


def _tile_covectors(poly: MirrorPolytope, g: GroupElement) -> np.ndarray:
    """Rows ``alpha_s o g^{-1}`` (unit) cutting out ``g(P)``."""
    rows = poly.alphas @ np.linalg.inv(g.matrix)
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


@LoggerManager.timer("orbit tiles")
def orbit_tiles(
    poly: MirrorPolytope,
    max_len: int,
    *,
    tol: Tolerance = DEFAULT_TOLERANCE,
    n_samples: int = 6,
    seed: int = 0,
) -> TilingSnapshot:
    """Tiles ``g(P)`` for ``|g| <= max_len`` with an interior-disjointness check.

    Raises:
        OverlapDetected: a sampled interior point of one tile lies inside another.
    """
    enum = group_enumeration(poly, max_len, tol=tol)
    lattice = face_lattice(poly, tol=tol)
    samples = interior_samples(poly, n_samples, np.random.default_rng(seed))

    tiles = tuple((g, _normalize((g.matrix @ lattice.vertices.T).T)) for g in enum.elements)
    images = np.stack([_normalize((g.matrix @ samples.T).T) for g, _ in tiles])
    flat = images.reshape(-1, poly.dim + 1)
    owner = np.repeat(np.arange(len(tiles)), len(samples))

    overlaps = 0
    for a, (g, _) in enumerate(tiles):
        values = flat @ _tile_covectors(poly, g).T
        inside = np.all(values < -tol.overlap, axis=1) & (owner != a)
        if inside.any():
            overlaps += int(inside.sum())
            b = int(owner[np.argmax(inside)])
            log.error(f"tiles {g.word} and {tiles[b][0].word} overlap")
            raise OverlapDetected(
                "tile interiors overlap",
                locus={"tile": list(g.word), "other": list(tiles[b][0].word)},
            )

    elliptic = [v.index for v in vertex_classes(poly, tol=tol) if v.kind is VertexKind.ELLIPTIC]
    hull = [verts[elliptic] for _, verts in tiles if elliptic] + [flat]
    snapshot = TilingSnapshot(tiles, np.vstack(hull), max_len, enum.closed, overlaps, poly)
    log.info(f"tiling depth {max_len}: {len(tiles)} tiles, closed={enum.closed}")
    return snapshot


def sphere_coverage(
    snapshot: TilingSnapshot, n_points: int = 100, *, seed: int = 0, tol: Tolerance = DEFAULT_TOLERANCE
) -> float:
    """Fraction of random points of ``S^d`` lying in some (closed) tile."""
    rng = np.random.default_rng(seed)
    points = _normalize(rng.normal(size=(n_points, snapshot.polytope.dim + 1)))
    covered = np.zeros(n_points, dtype=bool)
    for g, _ in snapshot.tiles:
        values = points @ _tile_covectors(snapshot.polytope, g).T
        covered |= np.all(values <= tol.overlap, axis=1)
    return float(covered.mean())


def approach_to_quadric(snapshot: TilingSnapshot, form: np.ndarray) -> list[float]:
    """Cumulative minimum, per word length, of ``|Q(x)|`` over unit tile vertices."""
    q = form / np.linalg.norm(form)
    best = np.inf
    out = []
    for length in range(snapshot.depth + 1):
        for g, verts in snapshot.tiles:
            if g.length == length:
                best = min(best, float(np.abs(np.einsum("ij,jk,ik->i", verts, q, verts)).min()))
        out.append(best)
    return out


# --- Limit set ---
@dataclass(frozen=True)
class HalfSpace:
    """``{x : covector(x) >= 0}``; boundary is the hyperplane ``H_g``."""

    covector: np.ndarray
    word: tuple[str, ...]

    def contains(self, points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
        unit = self.covector / np.linalg.norm(self.covector)
        return _normalize(np.atleast_2d(points)) @ unit >= -tol


@dataclass(frozen=True, eq=False)
class LimitSetSample:
    points: np.ndarray
    words: tuple[tuple[str, ...], ...]
    gaps: np.ndarray
    hyperplanes: np.ndarray
    attempts: int

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.points, columns=[f"x{k}" for k in range(self.points.shape[1])])
        frame["word"] = [" ".join(w) for w in self.words]
        frame["gap"] = self.gaps
        return frame


def _dominant(m: np.ndarray) -> tuple[float, float, np.ndarray, np.ndarray] | None:
    """``(lambda_1, relative gap, right vector, left vector)`` if the top modulus is simple and real."""
    values, right = np.linalg.eig(m)
    order = np.argsort(-np.abs(values))
    top, second = values[order[0]], values[order[1]]
    if abs(top.imag) > 1e-12 * abs(top):
        return None
    gap = (abs(top) - abs(second)) / abs(top)
    lvalues, left = np.linalg.eig(m.T)
    k = int(np.argmin(np.abs(lvalues - top)))
    x = right[:, order[0]].real
    ell = left[:, k].real
    return float(top.real), float(gap), x / np.linalg.norm(x), ell / np.linalg.norm(ell)


def _random_word(rng: np.random.Generator, n_gen: int, length: int) -> list[int]:
    word = [int(rng.integers(n_gen))]
    while len(word) < length:
        s = int(rng.integers(n_gen - 1))
        word.append(s if s < word[-1] else s + 1)
    return word


@LoggerManager.timer("limit set")
def limit_set_approx(
    poly: MirrorPolytope,
    n_words: int = 400,
    length_range: tuple[int, int] = (10, 20),
    *,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> LimitSetSample:
    """Attracting points of bi-proximal elements, lifted to the cone over Omega_P.

    The lift is the sign that ``g^n`` pushes the interior point toward; the
    chart covector breaks ties.

    Raises:
        NoProximalFound: no sampled word was bi-proximal.
    """
    rng = np.random.default_rng(seed)
    x0 = poly.interior
    try:
        chart = containing_affine_chart(poly, tol=tol)
    except CvkError:
        chart = None
    gens = poly.reflections()
    lo, hi = length_range

    points, words, gaps, planes = [], [], [], []
    for _ in range(n_words):
        indices = _random_word(rng, poly.n_facets, int(rng.integers(lo, hi + 1)))
        m = np.eye(poly.dim + 1)
        for s in indices:
            m = m @ gens[s]
        forward, backward = _dominant(m), _dominant(np.linalg.inv(m))
        if forward is None or backward is None:
            continue
        _, gap, x, ell = forward
        if gap <= tol.gap or backward[1] <= tol.gap:
            continue
        weight = float(ell @ x0) * float(ell @ x)
        if abs(weight) > tol.eps:
            sign = np.sign(weight)
        elif chart is not None:
            sign = -np.sign(chart @ x) or 1.0
        else:
            sign = 1.0
        points.append(sign * x)
        plane = ell if ell @ x0 > 0 else -ell
        planes.append(plane)
        words.append(tuple(poly.names[s] for s in indices))
        gaps.append(gap)

    if not points:
        log.warning(f"no bi-proximal element among {n_words} words")
        raise NoProximalFound(
            "no bi-proximal element found",
            locus={"attempts": n_words, "length_range": [lo, hi]},
        )
    log.info(f"limit set: {len(points)} bi-proximal of {n_words} words")
    return LimitSetSample(np.array(points), tuple(words), np.array(gaps), np.array(planes), n_words)


def omega_max_approx(sample: LimitSetSample) -> list[HalfSpace]:
    """Half-spaces ``H_g^+`` whose intersection approximates Omega_max from outside."""
    return [HalfSpace(c, w) for c, w in zip(sample.hyperplanes, sample.words, strict=True)]


def in_omega_max(halfspaces: Sequence[HalfSpace], points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    mask = np.ones(len(np.atleast_2d(points)), dtype=bool)
    for h in halfspaces:
        mask &= h.contains(points, tol)
    return mask


def quadric_residuals(sample: LimitSetSample, form: np.ndarray) -> np.ndarray:
    """``|Q(x)|`` for unit ``x`` and Frobenius-unit ``Q``."""
    q = form / np.linalg.norm(form)
    pts = _normalize(sample.points)
    return np.abs(np.einsum("ij,jk,ik->i", pts, q, pts))


__all__ = [
    "GroupElement",
    "GroupEnumeration",
    "HalfSpace",
    "LimitSetSample",
    "TilingSnapshot",
    "approach_to_quadric",
    "enumerate_group",
    "group_enumeration",
    "growth_counts",
    "in_omega_max",
    "limit_set_approx",
    "omega_max_approx",
    "orbit_tiles",
    "quadric_residuals",
    "sphere_coverage",
    "word_matrix",
]
