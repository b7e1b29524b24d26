import numpy as np
import pytest

from cvk.catalog import fixture_polytope
from cvk.classify import Perfection, Tri, VertexKind, action_classification, perfection, vertex_classes
from cvk.faces import face_lattice
from cvk.polytope import check_conditions_CD, coxeter_system_of
from cvk.truncate import is_simple_vertex, truncability, truncate_all, truncate_vertex
from utils.errors import ConeException, NotAVertex, NotLoxodromic


def _loxodromic_index(poly, tol) -> int:
    return next(v.index for v in vertex_classes(poly, tol=tol) if v.kind is VertexKind.LOXODROMIC)


@pytest.mark.unit
class TestTruncability:
    def test_plan_separates_vertex(self, quad, tol):
        k = _loxodromic_index(quad, tol)
        plan = truncability(quad, k, tol=tol)
        lattice = face_lattice(quad, tol=tol)
        assert plan.side(plan.point) > 0
        others = [j for j in range(len(lattice.vertices)) if j != k]
        assert all(plan.side(lattice.vertices[j]) < 0 for j in others)
        assert plan.residual <= 1e-9
        alpha, v = plan.new_pair
        assert alpha @ v == pytest.approx(2.0)

    def test_refuses_elliptic_vertex(self, t237, tol):
        assert is_simple_vertex(t237, 0, tol=tol)
        with pytest.raises(NotLoxodromic):
            truncability(t237, 0, tol=tol)

    def test_refuses_parabolic_vertex(self, t23inf, tol):
        cusp = next(v.index for v in vertex_classes(t23inf, tol=tol) if v.kind is VertexKind.PARABOLIC)
        with pytest.raises(NotLoxodromic):
            truncability(t23inf, cusp, tol=tol)

    def test_refuses_cone_apex(self, tol):
        cone = fixture_polytope("cone-237")
        apex = _loxodromic_index(cone, tol)
        with pytest.raises(ConeException):
            truncability(cone, apex, tol=tol)

    def test_unknown_vertex(self, quad, tol):
        with pytest.raises(NotAVertex):
            truncability(quad, 99, tol=tol)


@pytest.mark.integration
class TestTruncate:
    def test_single_vertex(self, quad, tol):
        plan = truncability(quad, _loxodromic_index(quad, tol), tol=tol)
        result = truncate_vertex(quad, plan, tol=tol)
        assert result.n_facets == 5
        assert result.names[:4] == quad.names
        assert result.names[4] == f"t{plan.vertex}"

    def test_pentagon_is_right_angled_and_perfect(self, quad, tol):
        result = truncate_all(quad, tol=tol)
        a = result.alphas @ result.vectors.T
        new = result.n_facets - 1
        for s in (0, 3):
            assert abs(a[new, s] * a[s, new]) <= 1e-9
        assert check_conditions_CD(result, tol=tol).is_coxeter
        assert perfection(result, tol=tol).level is Perfection.PERFECT
        w = coxeter_system_of(result, tol=tol)
        assert w.label(result.names[new], "1") == 2
        assert w.label(result.names[new], "4") == 2

    def test_original_action_flags(self, quad, tol):
        report = action_classification(quad, tol=tol)
        assert report.convex_cocompact.value is Tri.TRUE
        assert report.finite_covolume.value is Tri.FALSE

    def test_nothing_to_truncate(self, t237, tol):
        assert truncate_all(t237, tol=tol) is t237

    def test_truncated_vertices_are_gone(self, quad, tol):
        result = truncate_all(quad, tol=tol)
        lattice = face_lattice(result, tol=tol)
        assert len(lattice.vertices) == 5
        lox = face_lattice(quad, tol=tol).vertices[_loxodromic_index(quad, tol)]
        assert np.all(np.linalg.norm(lattice.vertices - lox, axis=1) > 1e-6)
