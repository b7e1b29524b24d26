import numpy as np
import pytest

from cvk.catalog import fixture_polytope
from cvk.classify import zariski_closure
from cvk.orbit import (
    approach_to_quadric,
    enumerate_group,
    group_enumeration,
    in_omega_max,
    limit_set_approx,
    omega_max_approx,
    orbit_tiles,
    quadric_residuals,
    sphere_coverage,
    word_matrix,
)
from cvk.polytope import coxeter_system_of
from cvk.words import coxeter_growth
from utils.errors import CapExceeded, NoProximalFound


@pytest.mark.integration
@pytest.mark.slow
@pytest.mark.parametrize("name", ["triangle-237", "triangle-245", "pentagon-right"])
def test_counts_match_word_oracle(name, tol):
    poly = fixture_polytope(name)
    enum = group_enumeration(poly, 8, tol=tol)
    assert enum.counts == coxeter_growth(coxeter_system_of(poly, tol=tol), 8)
    assert not enum.closed


@pytest.mark.unit
class TestEnumeration:
    def test_finite_group_closes(self, a3, tol):
        enum = group_enumeration(a3, 8, tol=tol)
        assert enum.closed
        assert len(enum.elements) == 24
        assert enum.counts == coxeter_growth(coxeter_system_of(a3, tol=tol), 8)

    def test_elements_sorted_by_length(self, t237, tol):
        elements = enumerate_group(t237, 4, tol=tol)
        lengths = [g.length for g in elements]
        assert lengths == sorted(lengths)
        assert elements[0].word == ()

    def test_inverse(self, t237, tol):
        g = enumerate_group(t237, 3, tol=tol)[-1]
        np.testing.assert_allclose(g.matrix @ g.inverse().matrix, np.eye(3), atol=1e-9)
        np.testing.assert_allclose(word_matrix(t237, g.indices), g.matrix, atol=1e-12)

    def test_cap(self, t237, tol):
        with pytest.raises(CapExceeded):
            group_enumeration(t237, 15, tol=tol)


@pytest.mark.integration
class TestTiling:
    @pytest.mark.parametrize("depth", [4, pytest.param(8, marks=pytest.mark.slow)])
    def test_no_overlaps(self, t237, tol, depth):
        snapshot = orbit_tiles(t237, depth, tol=tol)
        assert snapshot.overlaps == 0
        assert snapshot.stats()["overlap_check"] == "ok"
        assert snapshot.counts == coxeter_growth(coxeter_system_of(t237, tol=tol), depth)

    def test_elliptic_tiling_covers_sphere(self, a3, tol):
        snapshot = orbit_tiles(a3, 8, tol=tol)
        assert snapshot.closed
        assert sphere_coverage(snapshot, 100, seed=3, tol=tol) == 1.0

    def test_vertices_approach_quadric(self, t237, tol):
        snapshot = orbit_tiles(t237, 6, tol=tol)
        form = zariski_closure(t237, tol=tol).form
        approach = approach_to_quadric(snapshot, form)
        assert len(approach) == 7
        assert all(b <= a for a, b in zip(approach, approach[1:], strict=False))


@pytest.mark.integration
class TestLimitSet:
    def test_points_lie_on_invariant_quadric(self, t237, tol):
        sample = limit_set_approx(t237, 400, (10, 20), seed=0, tol=tol)
        assert len(sample.points) >= 200
        form = zariski_closure(t237, tol=tol).form
        assert quadric_residuals(sample, form).max() <= 1e-6

    def test_omega_max_contains_interior(self, t237, tol):
        sample = limit_set_approx(t237, 100, (10, 20), seed=1, tol=tol)
        halfspaces = omega_max_approx(sample)
        assert in_omega_max(halfspaces, t237.interior).all()
        frame = sample.to_frame()
        assert list(frame.columns) == ["x0", "x1", "x2", "word", "gap"]

    def test_finite_group_has_no_proximal_element(self, a3, tol):
        with pytest.raises(NoProximalFound):
            limit_set_approx(a3, 20, (10, 12), seed=0, tol=tol)
