"""Perakitan ClassificationReport dari semua prosedur keputusan.

Satu section per prosedur. Prosedur yang prasyaratnya tidak terpenuhi tidak
menggagalkan report: section-nya berisi ``not-applicable`` beserta alasannya.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from config import DEFAULT_TOLERANCE, Tolerance
from cvk.cartan import cartan_type, components, numerical_rank, symmetrizable
from cvk.classify import (
    Perfection,
    PolytopeKind,
    action_classification,
    degenerate_classification,
    invariant_convex_extremes,
    perfection,
    polytope_class,
    strict_convexity,
    strict_convexity_verdict,
    strictly_convex_invariant_set,
    zariski_closure,
)
from cvk.coxsys import (
    CoxeterSystem,
    classify_irreducible,
    irreducible_components,
    is_lanner,
    is_lorentzian,
    is_quasi_lanner,
    relative_hyperbolicity_check,
    subsystem,
)
from cvk.io import SCHEMA, polytope_to_dict
from cvk.polytope import MirrorPolytope, cartan_matrix_of, check_conditions_CD, coxeter_system_of, tits_simplex
from utils.errors import CvkError, PreconditionError
from utils.mlogger import LoggerManager, logger

log = logger.bind(module="report")


@dataclass
class ClassificationReport:
    name: str
    sections: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"schema": SCHEMA, "kind": "classification-report", "input": self.name, **self.sections}


def _guarded(run: Callable[[], Any]) -> dict[str, Any]:
    """Run a section; precondition refusals become a not-applicable entry."""
    try:
        result = run()
    except PreconditionError as e:
        log.warning(f"section skipped: {e.message}")
        return {"verdict": "not-applicable", "reason": e.message, "error": e.to_dict()}
    return result.to_dict() if hasattr(result, "to_dict") else result


def _cartan_section(poly: MirrorPolytope, tol: Tolerance) -> dict[str, Any]:
    a = cartan_matrix_of(poly, tol=tol)
    kind = cartan_type(a, tol=tol)
    return {
        "matrix": a.entries.tolist(),
        "type": str(kind.aggregate),
        "per_component": [
            {"facets": [poly.names[i] for i in comp], "type": str(t), "lambda": value}
            for comp, t, value in kind.per_component
        ],
        "rank": numerical_rank(a, tol=tol),
        "components": len(components(a, tol=tol)),
        "symmetrizable": symmetrizable(a, tol=tol),
    }


@LoggerManager.timer("classification report", level="INFO")
def polytope_report(
    poly: MirrorPolytope, name: str = "polytope", *, tol: Tolerance = DEFAULT_TOLERANCE
) -> ClassificationReport:
    """Full report for a Coxeter polytope.

    Raises:
        ConditionCViolated: a ridge fails (C); the locus names the ridge.
        AngleNotSubmultiple: a ridge fails (D).
    """
    conditions = check_conditions_CD(poly, tol=tol)
    conditions.raise_first()
    report = ClassificationReport(name)
    s = report.sections
    s["polytope"] = polytope_to_dict(poly)
    s["conditions"] = {
        "verdict": conditions.is_coxeter,
        "theorem": "vinberg-conditions-C-D",
        "ridges": [r.to_dict() for r in conditions.ridges],
    }
    s["coxeter_system"] = coxeter_system_of(poly, tol=tol).to_dict()
    s["cartan"] = _cartan_section(poly, tol)
    perf = perfection(poly, tol=tol)
    s["vertices"] = [v.to_dict() for v in perf.vertices]
    s["perfection"] = perf.to_dict()
    cls = polytope_class(poly, tol=tol)
    s["polytope_class"] = cls.to_dict()
    s["degenerate"] = _guarded(lambda: degenerate_classification(poly, tol=tol))
    s["action"] = action_classification(poly, tol=tol).to_dict()
    s["zariski"] = _guarded(lambda: zariski_closure(poly, tol=tol))
    convexity = strict_convexity(poly, tol=tol)
    s["strict_convexity"] = convexity.to_dict()
    s["relative_hyperbolicity"] = (
        None if convexity.relative_hyperbolicity is None else convexity.relative_hyperbolicity.to_dict()
    )
    s["strictly_convex_invariant_set"] = strictly_convex_invariant_set(poly, tol=tol).to_dict()
    s["invariant_convex_extremes"] = _guarded(lambda: invariant_convex_extremes(poly, tol=tol))
    log.info(
        f"{name}: {cls.kind}, {perf.level}, cocompact={report.sections['action']['cocompact']['verdict']}"
    )
    return report


def _system_section(system: CoxeterSystem, tol: Tolerance) -> dict[str, Any]:
    comps = []
    for comp in irreducible_components(system):
        dc = classify_irreducible(comp, tol=tol)
        comps.append({"members": list(comp.ordered), "class": str(dc.kind), "name": dc.name,
                      "min_eigenvalue": dc.min_eigenvalue})
    single = len(comps) == 1
    return {
        "system": system.to_dict(),
        "components": comps,
        "lanner": single and is_lanner(system, tol=tol),
        "quasi_lanner": single and is_quasi_lanner(system, tol=tol),
        "lorentzian": is_lorentzian(system, tol=tol),
    }


@LoggerManager.timer("system report", level="INFO")
def system_report(
    system: CoxeterSystem,
    peripherals: tuple[str, ...] | None = None,
    name: str = "system",
    *,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> ClassificationReport:
    """Report for a bare Coxeter system.

    The strict-convexity entry assumes a quasi-perfect realization whose
    parabolic vertices have ``S_p = peripherals``.
    """
    report = ClassificationReport(name)
    s = report.sections
    s["coxeter_system"] = _system_section(system, tol)
    groups = [] if not peripherals else [subsystem(system, peripherals)]
    rel = relative_hyperbolicity_check(system, groups, tol=tol)
    s["relative_hyperbolicity"] = rel.to_dict()
    convexity = strict_convexity_verdict(
        Perfection.QUASI_PERFECT, system, [peripherals] if peripherals else [], tol=tol
    )
    s["strict_convexity"] = convexity.to_dict() | {"assumes": "quasi-perfect realization"}
    try:
        simplex = tits_simplex(system, tol=tol)
        cls = polytope_class(simplex, tol=tol)
        s["tits_simplex"] = {
            "class": cls.to_dict(),
            "loxodromic": cls.kind is PolytopeKind.LOXODROMIC,
        }
    except CvkError as e:
        s["tits_simplex"] = {"error": e.to_dict()}
    return report


__all__ = ["ClassificationReport", "polytope_report", "system_report"]
