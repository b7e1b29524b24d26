"""cvk: polytope Coxeter proyektif, klasifikasi, truncation, orbit, dan geometri Hilbert."""

from cvk.classify import (
    action_classification,
    classify_vertex,
    perfection,
    polytope_class,
    strict_convexity,
    zariski_closure,
)
from cvk.coxsys import INF, CoxeterSystem, build_system, relative_hyperbolicity_check
from cvk.polytope import MirrorPolytope, build_mirror_polytope, check_conditions_CD, tits_simplex
from cvk.truncate import truncability, truncate_all, truncate_vertex

__all__ = [
    "INF",
    "CoxeterSystem",
    "MirrorPolytope",
    "action_classification",
    "build_mirror_polytope",
    "build_system",
    "check_conditions_CD",
    "classify_vertex",
    "perfection",
    "polytope_class",
    "relative_hyperbolicity_check",
    "strict_convexity",
    "tits_simplex",
    "truncability",
    "truncate_all",
    "truncate_vertex",
    "zariski_closure",
]
