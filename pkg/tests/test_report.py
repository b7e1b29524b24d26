import json

import pytest

from cvk.catalog import fixture_polytope, prism_system, triangle_system
from cvk.io import dumps
from cvk.report import polytope_report, system_report


@pytest.mark.integration
class TestPolytopeReport:
    def test_compact_triangle(self, t237, tol):
        report = polytope_report(t237, "triangle-237", tol=tol).to_dict()
        assert report["kind"] == "classification-report"
        assert report["input"] == "triangle-237"
        assert report["conditions"]["verdict"] is True
        assert report["polytope_class"]["verdict"] == "loxodromic"
        assert report["perfection"]["verdict"] == "perfect"
        assert report["action"]["cocompact"]["verdict"] == "true"
        assert report["zariski"]["group"] == "SO(2,1)"
        assert report["cartan"]["symmetrizable"] is True

    def test_sections_serialize(self, quad, tol):
        loaded = json.loads(dumps(polytope_report(quad, "quadrilateral-lox", tol=tol).to_dict()))
        assert loaded["strict_convexity"]["verdict"] == "false"
        assert loaded["action"]["convex_cocompact"]["verdict"] == "true"
        assert [v["class"] for v in loaded["vertices"]].count("loxodromic") == 1

    def test_elliptic_refusals_become_not_applicable(self, a3, tol):
        report = polytope_report(a3, "A3", tol=tol).to_dict()
        assert report["zariski"]["verdict"] == "not-applicable"
        assert report["zariski"]["error"]["error"] == "PreconditionUnmet"
        assert report["action"]["cocompact"]["verdict"] == "not-applicable"

    def test_degenerate_case(self, tol):
        report = polytope_report(fixture_polytope("cone-237"), "cone-237", tol=tol).to_dict()
        assert report["degenerate"]["verdict"] == 4


@pytest.mark.integration
class TestSystemReport:
    def test_prism(self, tol):
        report = system_report(prism_system(), ("1", "3", "5"), "prism", tol=tol).to_dict()
        rel = report["relative_hyperbolicity"]
        assert rel["verdict"] is False
        assert rel["peripherals"] == [["1", "3", "5"]]
        assert report["strict_convexity"]["assumes"] == "quasi-perfect realization"

    def test_lanner_triangle(self, tol):
        report = system_report(triangle_system(2, 3, 7), None, "t237", tol=tol).to_dict()
        section = report["coxeter_system"]
        assert section["lanner"] is True
        assert len(section["components"]) == 1
        assert report["relative_hyperbolicity"]["verdict"] is True
        assert report["tits_simplex"]["loxodromic"] is True
