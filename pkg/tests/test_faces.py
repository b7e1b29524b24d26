import numpy as np
import pytest

from cvk.faces import face_lattice, link_at_vertex
from cvk.polytope import coxeter_system_of
from utils.errors import NotAVertex


@pytest.mark.unit
class TestLattice:
    def test_triangle(self, t237, tol):
        lattice = face_lattice(t237, tol=tol)
        assert len(lattice.vertices) == 3
        assert len(lattice.facets) == 3
        assert lattice.adjacent_pairs == [(0, 1), (0, 2), (1, 2)]
        assert all(len(sp) == 2 for sp in lattice.vertex_sets)

    def test_quadrilateral_cycle(self, quad, tol):
        lattice = face_lattice(quad, tol=tol)
        assert len(lattice.vertices) == 4
        assert lattice.adjacent_pairs == [(0, 1), (0, 3), (1, 2), (2, 3)]

    def test_simplex_in_three_dimensions(self, orthogonal_segments, tol):
        lattice = face_lattice(orthogonal_segments, tol=tol)
        assert len(lattice.vertices) == 4
        assert len(lattice.edges) == 6
        assert len(lattice.ridges) == 6
        assert len(lattice.facets) == 4

    def test_segment_pairs_its_endpoints(self, right_segment, tol):
        lattice = face_lattice(right_segment, tol=tol)
        assert lattice.adjacent_pairs == [(0, 1)]

    def test_vertices_are_unit_and_feasible(self, quad, tol):
        lattice = face_lattice(quad, tol=tol)
        np.testing.assert_allclose(np.linalg.norm(lattice.vertices, axis=1), 1.0)
        assert np.all(lattice.vertices @ quad.alphas.T <= 1e-8)

    def test_lattice_is_memoized(self, t237, tol):
        assert face_lattice(t237, tol=tol) is face_lattice(t237, tol=tol)


@pytest.mark.unit
class TestLinks:
    def test_link_of_right_angled_vertex(self, t237, tol):
        lattice = face_lattice(t237, tol=tol)
        k = lattice.vertex_sets.index(frozenset({0, 1}))
        link = link_at_vertex(t237, k, tol=tol)
        assert link.polytope.dim == 1
        assert link.polytope.names == ("1", "2")
        assert coxeter_system_of(link.polytope, tol=tol).label("1", "2") == 2

    def test_vertex_by_coordinates(self, t237, tol):
        lattice = face_lattice(t237, tol=tol)
        point = 3.0 * lattice.vertices[2]
        assert link_at_vertex(t237, point, tol=tol).vertex == 2

    def test_unknown_vertex(self, t237, tol):
        with pytest.raises(NotAVertex):
            link_at_vertex(t237, 99, tol=tol)
        with pytest.raises(NotAVertex):
            link_at_vertex(t237, t237.interior, tol=tol)
