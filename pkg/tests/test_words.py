import pytest

from cvk.catalog import diagram, prism_system, triangle_system
from cvk.coxsys import INF, spherical_diagram
from cvk.words import braid_class, coxeter_elements, coxeter_growth, reduced_word


@pytest.mark.unit
class TestGrowth:
    def test_a2_is_finite(self):
        assert coxeter_growth(spherical_diagram("A", 2), 4) == [1, 2, 2, 1, 0]

    def test_a3_has_order_24(self):
        counts = coxeter_growth(diagram("A3"), 8)
        assert sum(counts) == 24
        assert counts[6] == 1
        assert counts[7:] == [0, 0]

    def test_infinite_dihedral(self):
        w = triangle_system(2, 3, INF).restrict(["2", "3"])
        assert coxeter_growth(w, 5) == [1, 2, 2, 2, 2, 2]

    def test_levels_sorted_by_key(self):
        levels = coxeter_elements(prism_system(), 3)
        for level in levels:
            keys = [e.key for e in level]
            assert keys == sorted(keys)


@pytest.mark.unit
class TestReducedWords:
    def test_braid_relation(self):
        w = spherical_diagram("A", 2)
        assert reduced_word(w, (1, 0, 1)) == (0, 1, 0)

    def test_cancellation(self):
        w = spherical_diagram("A", 2)
        assert reduced_word(w, (0, 0)) == ()
        assert reduced_word(w, (0, 1, 1, 0)) == ()

    def test_commuting_generators(self):
        w = triangle_system(2, 3, 7)
        assert reduced_word(w, (1, 0)) == (0, 1)

    def test_braid_class(self):
        moves = [((0, 1), (1, 0)), ((1, 0), (0, 1))]
        assert braid_class((0, 1, 0), moves) == frozenset({(0, 1, 0), (1, 0, 0), (0, 0, 1)})
