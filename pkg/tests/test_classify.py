import numpy as np
import pytest

from cvk.cartan import MatrixType
from cvk.catalog import QUASI_LANNER_TRIANGLES, fixture_polytope, kv_triangle
from cvk.classify import (
    Perfection,
    PolytopeKind,
    Tri,
    VertexKind,
    ZariskiKind,
    action_classification,
    cone_apex,
    degenerate_classification,
    invariance_residual,
    invariant_convex_extremes,
    invariant_quadratic_forms,
    irreducibility,
    perfection,
    polytope_class,
    signature,
    strict_convexity,
    strictly_convex_invariant_set,
    vertex_classes,
    zariski_closure,
)
from utils.errors import PreconditionUnmet


@pytest.mark.unit
class TestVertices:
    def test_compact_triangle_vertices_are_elliptic(self, t237, tol):
        classes = vertex_classes(t237, tol=tol)
        assert [v.kind for v in classes] == [VertexKind.ELLIPTIC] * 3
        assert all(v.link_perfect and v.is_simple for v in classes)

    def test_cusp(self, t23inf, tol):
        parabolic = perfection(t23inf, tol=tol).of_kind(VertexKind.PARABOLIC)
        assert [v.facets for v in parabolic] == [("2", "3")]
        assert parabolic[0].link_type is MatrixType.ZERO

    def test_ultra_ideal_vertex(self, quad, tol):
        lox = perfection(quad, tol=tol).of_kind(VertexKind.LOXODROMIC)
        assert [v.facets for v in lox] == [("1", "4")]
        np.testing.assert_allclose(
            lox[0].point, np.array([-0.5, 1.25, 1.0]) / np.linalg.norm([-0.5, 1.25, 1.0]), atol=1e-9
        )


@pytest.mark.unit
@pytest.mark.parametrize(
    ("name", "level"),
    [
        ("triangle-237", Perfection.PERFECT),
        ("triangle-23inf", Perfection.QUASI_PERFECT),
        ("quadrilateral-lox", Perfection.TWO_PERFECT),
        ("pentagon-right", Perfection.PERFECT),
        ("A3", Perfection.PERFECT),
    ],
)
def test_perfection_levels(name, level, tol):
    assert perfection(fixture_polytope(name), tol=tol).level is level


@pytest.mark.unit
class TestPolytopeClass:
    def test_affine_triangle_is_parabolic(self, t333, tol):
        cls = polytope_class(t333, tol=tol)
        assert cls.kind is PolytopeKind.PARABOLIC
        assert cls.rank == 2
        assert cls.five_case == 3
        assert cls.diagram == "A~2"

    def test_compact_triangle_is_loxodromic(self, t237, tol):
        cls = polytope_class(t237, tol=tol)
        assert cls.kind is PolytopeKind.LOXODROMIC
        assert cls.five_case == 5
        assert cls.shape == "P"

    def test_elliptic(self, a3, tol):
        cls = polytope_class(a3, tol=tol)
        assert cls.kind is PolytopeKind.ELLIPTIC
        assert cls.five_case == 1
        assert cls.diagram == "A3"

    def test_cone_is_decomposable(self, tol):
        cls = polytope_class(fixture_polytope("cone-333"), tol=tol)
        assert cls.kind is PolytopeKind.DECOMPOSABLE
        assert cls.cartan_type is MatrixType.MIXED
        assert cls.shape.startswith("P = Q (x) .")


@pytest.mark.unit
class TestDegenerate:
    @pytest.mark.parametrize(
        ("name", "case"),
        [("A3", 1), ("tits-A~2", 2), ("triangle-237", 3), ("cone-333", 4), ("cone-237", 4)],
    )
    def test_cases(self, name, case, tol):
        assert degenerate_classification(fixture_polytope(name), tol=tol).case == case

    def test_apex(self, tol):
        cone = fixture_polytope("cone-237")
        facet, _ = cone_apex(cone, tol=tol)
        assert cone.names[facet] == "inf"
        assert cone_apex(fixture_polytope("triangle-237"), tol=tol) is None


@pytest.mark.integration
class TestAction:
    def test_compact(self, t237, tol):
        report = action_classification(t237, tol=tol)
        assert report.cocompact.value is Tri.TRUE
        assert report.finite_covolume.value is Tri.TRUE
        assert report.convex_cocompact.value is Tri.TRUE
        assert report.geometrically_finite.value is Tri.TRUE
        assert report.convex_cocompact_via_truncation.value is Tri.TRUE

    def test_cusped(self, t23inf, tol):
        report = action_classification(t23inf, tol=tol)
        assert report.cocompact.value is Tri.FALSE
        assert report.finite_covolume.value is Tri.TRUE
        assert report.convex_cocompact.value is Tri.FALSE
        assert report.convex_cocompact.witness == {"parabolic_vertices": [["2", "3"]]}

    def test_ultra_ideal(self, quad, tol):
        report = action_classification(quad, tol=tol)
        assert report.convex_cocompact.value is Tri.TRUE
        assert report.finite_covolume.value is Tri.FALSE
        assert report.convex_cocompact_via_truncation.value is Tri.TRUE

    def test_not_applicable_off_loxodromic(self, a3, tol):
        report = action_classification(a3, tol=tol)
        assert report.cocompact.value is Tri.NOT_APPLICABLE
        assert "loxodromic" in report.cocompact.reason

    def test_irreducibility(self, t237, t333, tol):
        assert irreducibility(t237, tol=tol).strongly_irreducible
        assert not irreducibility(t333, tol=tol).irreducible


@pytest.mark.integration
class TestForms:
    @pytest.mark.parametrize("name", QUASI_LANNER_TRIANGLES)
    def test_quasi_lanner_has_one_form(self, name, tol):
        gens = fixture_polytope(name).reflections()
        forms = invariant_quadratic_forms(gens, tol=tol)
        assert len(forms) == 1
        assert invariance_residual(forms[0], gens) <= 1e-9
        pos, neg, null = signature(forms[0], tol=tol)
        assert sorted((pos, neg)) == [1, 2]
        assert null == 0

    def test_zariski_so(self, t237, tol):
        verdict = zariski_closure(t237, tol=tol)
        assert verdict.kind is ZariskiKind.CONJUGATE_SO
        assert verdict.group == "SO(2,1)"
        assert verdict.residual <= 1e-9
        assert verdict.form_space_dim == 1
        assert t237.interior @ verdict.form @ t237.interior < 0

    def test_zariski_sl_for_non_symmetrizable(self, tol):
        verdict = zariski_closure(kv_triangle(), tol=tol)
        assert verdict.kind is ZariskiKind.FULL_SL
        assert verdict.group == "SL(3)"

    def test_zariski_cone_over_parabolic(self, tol):
        verdict = zariski_closure(fixture_polytope("cone-333"), tol=tol)
        assert verdict.kind is ZariskiKind.DEGENERATE
        assert verdict.group == "Trans_2"

    def test_zariski_refuses_elliptic(self, a3, tol):
        with pytest.raises(PreconditionUnmet):
            zariski_closure(a3, tol=tol)


@pytest.mark.integration
class TestConvexity:
    def test_compact_is_strictly_convex(self, t237, tol):
        result = strict_convexity(t237, tol=tol)
        assert result.strictly_convex.value is Tri.TRUE
        assert result.gromov_hyperbolic is Tri.TRUE

    def test_cusped_is_strictly_convex(self, t23inf, tol):
        result = strict_convexity(t23inf, tol=tol)
        assert result.strictly_convex.value is Tri.TRUE
        assert result.relative_hyperbolicity is not None
        assert [p.ordered for p in result.relative_hyperbolicity.peripherals] == [("2", "3")]

    def test_loxodromic_vertex_breaks_strict_convexity(self, quad, tol):
        result = strict_convexity(quad, tol=tol)
        assert result.strictly_convex.value is Tri.FALSE
        assert result.strictly_convex.witness == {"loxodromic_vertex": ["1", "4"]}
        assert strictly_convex_invariant_set(quad, tol=tol).value is Tri.TRUE

    def test_not_applicable_on_parabolic(self, t333, tol):
        assert strict_convexity(t333, tol=tol).strictly_convex.value is Tri.NOT_APPLICABLE

    def test_extremes(self, t237, quad, tol):
        assert invariant_convex_extremes(t237, tol=tol).smallest.value is Tri.TRUE
        extremes = invariant_convex_extremes(quad, tol=tol)
        assert extremes.largest.value is Tri.TRUE
        assert extremes.smallest.value is Tri.FALSE
        assert extremes.unique.value is Tri.FALSE
