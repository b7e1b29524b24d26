"""Katalog fixture bernama: sistem Coxeter dan polytope contoh.

Nama fixture dipakai oleh CLI (``--input fixture:<name>``) dan oleh test.
Diagram spherical/affine dari katalog ``coxsys`` bisa dipanggil lewat
``diagram:<name>`` (misalnya ``diagram:B~3``) dan dibangun sebagai Tits simplex.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from cvk.coxsys import INF, CoxeterSystem, Label, build_system, catalog
from cvk.polytope import (
    MirrorPolytope,
    build_mirror_polytope,
    cartan_simplex,
    cone_over,
    product,
    tits_simplex,
)
from utils.errors import ValidationError

Built = MirrorPolytope | CoxeterSystem


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    build: Callable[[], Built]
    peripherals: tuple[str, ...] | None = None


def triangle_system(a: Label, b: Label, c: Label) -> CoxeterSystem:
    """Rank-3 system with ``M_12 = a``, ``M_13 = b``, ``M_23 = c``."""
    return build_system(
        ["1", "2", "3"],
        [[1, a, b], [a, 1, c], [b, c, 1]],
    )


def triangle(a: Label, b: Label, c: Label) -> MirrorPolytope:
    return tits_simplex(triangle_system(a, b, c))


def segment(name_a: str = "a", name_b: str = "b") -> MirrorPolytope:
    """Right-angled segment in ``S^1``."""
    return build_mirror_polytope(
        1, [([-1.0, 0.0], [-2.0, 0.0]), ([0.0, -1.0], [0.0, -2.0])], names=[name_a, name_b]
    )


def quadrilateral_lox() -> MirrorPolytope:
    """Hyperbolic quadrilateral with three right angles and one ultra-ideal vertex.

    Facets are mirrors of ``B = diag(1, 1, -1)``: ``alpha = 2 B e / B(e, e)``,
    ``v = e``. The vertex ``(-1/2, 5/4, 1)`` (facets 4 and 1) lies outside the
    disk, so it is loxodromic.
    """
    form = np.diag([1.0, 1.0, -1.0])
    normals = [
        np.array([-1.0, 0.0, 0.5]),
        np.array([0.0, -1.0, 0.0]),
        np.array([1.0, 0.0, 0.5]),
        np.array([1.0, 2.0, 2.0]),
    ]
    facets = [(2.0 * form @ e / float(e @ form @ e), e) for e in normals]
    return build_mirror_polytope(2, facets)


def pentagon_right() -> MirrorPolytope:
    """Right-angled hyperbolic pentagon, the truncation of ``quadrilateral_lox``."""
    from cvk.truncate import truncate_all

    return truncate_all(quadrilateral_lox())


def kv_triangle() -> MirrorPolytope:
    """Non-symmetrizable Cartan triangle with labels (3, 4, 3)."""
    r = math.sqrt(2.0)
    return cartan_simplex(np.array([[2.0, -2.0, -r], [-0.5, 2.0, -1.0], [-r, -1.0, 2.0]]))


def prism_system() -> CoxeterSystem:
    """Five-facet prism: triangles ``{1,2,3}`` and ``{1,3,5}`` are ``A~2``, ``4`` and ``5`` never meet."""
    m = {
        ("1", "2"): 3, ("1", "3"): 3, ("2", "3"): 3,
        ("1", "5"): 3, ("3", "5"): 3, ("2", "5"): 2,
        ("1", "4"): 2, ("2", "4"): 2, ("3", "4"): 2,
        ("4", "5"): INF,
    }
    names = ["1", "2", "3", "4", "5"]
    labels: list[list[Label]] = [
        [1 if s == t else m.get((s, t), m.get((t, s), 2)) for t in names] for s in names
    ]
    return build_system(names, labels)


FIXTURES: dict[str, Fixture] = {
    f.name: f
    for f in [
        Fixture("triangle-237", "Tits simplex of (2,3,7), cocompact", lambda: triangle(2, 3, 7)),
        Fixture("triangle-245", "Tits simplex of (2,4,5), cocompact", lambda: triangle(2, 4, 5)),
        Fixture("triangle-23inf", "Tits simplex of (2,3,inf), one parabolic vertex", lambda: triangle(2, 3, INF)),
        Fixture("triangle-2infinf", "Tits simplex of (2,inf,inf)", lambda: triangle(2, INF, INF)),
        Fixture("triangle-33inf", "Tits simplex of (3,3,inf)", lambda: triangle(3, 3, INF)),
        Fixture("triangle-infinfinf", "ideal triangle (inf,inf,inf)", lambda: triangle(INF, INF, INF)),
        Fixture("tits-A~2", "Tits simplex of (3,3,3), parabolic", lambda: triangle(3, 3, 3)),
        Fixture("A3", "Tits simplex of A3, elliptic", lambda: tits_simplex(diagram("A3"))),
        Fixture("segment-orthogonal", "product of two right-angled segments, elliptic",
                lambda: product(segment("a", "b"), segment("c", "d"))),
        Fixture("cone-237", "cone over the (2,3,7) triangle", lambda: cone_over(triangle(2, 3, 7))),
        Fixture("cone-333", "cone over the (3,3,3) triangle", lambda: cone_over(triangle(3, 3, 3))),
        Fixture("kv-triangle-334", "non-symmetrizable (3,3,4) Cartan triangle", kv_triangle),
        Fixture("quadrilateral-lox", "quadrilateral with a truncable loxodromic vertex", quadrilateral_lox),
        Fixture("pentagon-right", "right-angled hyperbolic pentagon", pentagon_right),
        Fixture("prism-system", "prism Coxeter system, parabolic vertex {1,3,5}", prism_system,
                peripherals=("1", "3", "5")),
    ]
}

QUASI_LANNER_TRIANGLES = (
    "triangle-237", "triangle-245", "triangle-23inf",
    "triangle-2infinf", "triangle-33inf", "triangle-infinfinf",
)


def fixture_names() -> list[str]:
    return sorted(FIXTURES)


def fixture(name: str) -> Built:
    """Build a named fixture.

    Raises:
        ValidationError: unknown name.
    """
    try:
        return FIXTURES[name].build()
    except KeyError:
        raise ValidationError(f"unknown fixture {name!r}", locus={"fixture": name}) from None


def fixture_polytope(name: str) -> MirrorPolytope:
    built = fixture(name)
    if not isinstance(built, MirrorPolytope):
        raise ValidationError(f"fixture {name!r} is a Coxeter system, not a polytope", locus={"fixture": name})
    return built


def diagram(name: str, max_rank: int = 9) -> CoxeterSystem:
    """Catalog diagram by name (``A3``, ``I2(7)``, ``B~2``, ...)."""
    for entry, _, system in catalog(max_rank=max_rank):
        if entry == name:
            return system
    raise ValidationError(f"unknown diagram {name!r}", locus={"diagram": name})


__all__ = [
    "FIXTURES",
    "QUASI_LANNER_TRIANGLES",
    "Fixture",
    "diagram",
    "fixture",
    "fixture_names",
    "fixture_polytope",
    "kv_triangle",
    "pentagon_right",
    "prism_system",
    "quadrilateral_lox",
    "segment",
    "triangle",
    "triangle_system",
]
