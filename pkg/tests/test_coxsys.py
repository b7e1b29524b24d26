import numpy as np
import pytest

from cvk.catalog import prism_system, triangle_system
from cvk.coxsys import (
    INF,
    DiagramKind,
    build_system,
    catalog,
    classify_irreducible,
    gram_matrix,
    irreducible_components,
    is_affine,
    is_lanner,
    is_lorentzian,
    is_quasi_lanner,
    is_spherical,
    just_infinite_subsystems,
    label_from_json,
    orthogonal_complement,
    relative_hyperbolicity_check,
    subsystem,
    subsystem_rank_scan,
)
from cvk.polytope import cartan_matrix_of, coxeter_system_of, tits_simplex
from utils.errors import BadDiagonal, BadLabel, BadPeripheral, CapExceeded, NonSymmetric, NotIrreducible


@pytest.mark.unit
class TestBuildSystem:
    def test_rejects_bad_diagonal(self):
        with pytest.raises(BadDiagonal):
            build_system(["a", "b"], [[2, 3], [3, 1]])

    def test_rejects_label_below_two(self):
        with pytest.raises(BadLabel):
            build_system(["a", "b"], [[1, 1], [1, 1]])

    def test_rejects_asymmetric_labels(self):
        with pytest.raises(NonSymmetric):
            build_system(["a", "b"], [[1, 3], [4, 1]])

    def test_json_labels(self):
        assert label_from_json("inf") is INF
        assert label_from_json(5) == 5
        with pytest.raises(BadLabel):
            label_from_json(2.5)

    def test_components_split_on_label_two(self):
        w = build_system(["a", "b", "c"], [[1, 2, 2], [2, 1, 3], [2, 3, 1]])
        comps = irreducible_components(w)
        assert sorted(c.ordered for c in comps) == [("a",), ("b", "c")]
        with pytest.raises(NotIrreducible):
            classify_irreducible(w)


@pytest.mark.unit
class TestCatalog:
    def test_every_diagram_has_its_kind(self, tol):
        for name, kind, w in catalog(max_rank=6):
            dc = classify_irreducible(w, tol=tol)
            min_eig = float(np.linalg.eigvalsh(gram_matrix(w)).min())
            if kind is DiagramKind.SPHERICAL:
                assert min_eig > 1e-9, name
            else:
                assert abs(min_eig) <= 1e-9, name
            assert dc.kind is kind, name
            assert dc.name == name

    def test_large_diagram_has_no_name(self, tol):
        dc = classify_irreducible(triangle_system(2, 3, 7), tol=tol)
        assert dc.kind is DiagramKind.LARGE
        assert dc.name is None


@pytest.mark.unit
def test_lanner_flags(tol):
    assert is_lanner(triangle_system(2, 3, 7), tol=tol)
    assert is_quasi_lanner(triangle_system(2, 3, 7), tol=tol)
    assert not is_lanner(triangle_system(2, 3, INF), tol=tol)
    assert is_quasi_lanner(triangle_system(2, 3, INF), tol=tol)
    assert not is_quasi_lanner(triangle_system(3, 3, 3), tol=tol)
    assert is_affine(triangle_system(3, 3, 3), tol=tol)
    assert is_lorentzian(triangle_system(2, 3, 7), tol=tol)


@pytest.mark.integration
def test_tits_simplex_round_trip(tol):
    rng = np.random.default_rng(7)
    choices = [2, 3, 4, 5, 6, INF]
    for _ in range(50):
        rank = int(rng.integers(2, 6))
        labels = [[1] * rank for _ in range(rank)]
        for i in range(rank):
            for j in range(i + 1, rank):
                labels[i][j] = labels[j][i] = choices[int(rng.integers(len(choices)))]
        w = build_system([f"s{k}" for k in range(rank)], labels)
        simplex = tits_simplex(w, tol=tol)
        assert coxeter_system_of(simplex, tol=tol) == w
        np.testing.assert_allclose(cartan_matrix_of(simplex, tol=tol).entries, gram_matrix(w), atol=1e-9)


@pytest.mark.unit
class TestSubsystems:
    def test_scan_order_and_cap(self):
        w = triangle_system(2, 3, 7)
        scanned = [s.ordered for s in subsystem_rank_scan(w, 1, 2)]
        assert scanned[:3] == [("1",), ("2",), ("3",)]
        assert len(scanned) == 6

        big = build_system(
            [f"s{k}" for k in range(13)],
            [[1 if i == j else 2 for j in range(13)] for i in range(13)],
        )
        with pytest.raises(CapExceeded):
            list(subsystem_rank_scan(big))

    def test_just_infinite(self, tol):
        found = just_infinite_subsystems(triangle_system(2, 3, INF), tol=tol)
        assert [s.ordered for s in found] == [("2", "3")]

    def test_orthogonal_complement(self):
        w = prism_system()
        assert orthogonal_complement(w, subsystem(w, ["4"])).ordered == ("1", "2", "3")

    def test_unknown_peripheral(self):
        with pytest.raises(BadPeripheral):
            subsystem(prism_system(), ["9"])

    def test_spherical_subsystem(self, tol):
        w = prism_system()
        assert is_spherical(subsystem(w, ["1", "2"]), tol=tol)
        assert not is_spherical(subsystem(w, ["4", "5"]), tol=tol)


@pytest.mark.integration
class TestRelativeHyperbolicity:
    def test_prism_fails_with_affine_witness(self, tol):
        w = prism_system()
        report = relative_hyperbolicity_check(w, [subsystem(w, ["1", "3", "5"])], tol=tol)
        assert not report.holds
        assert report.witness is not None
        assert report.witness.condition == 1
        assert any(s.members >= {"1", "2", "3"} for s in report.witness.witness)

    def test_compact_triangle_holds_without_peripherals(self, tol):
        report = relative_hyperbolicity_check(triangle_system(2, 3, 7), [], tol=tol)
        assert report.holds
        assert report.to_dict()["witnesses"] == []

    def test_cusped_triangle_holds(self, tol):
        w = triangle_system(2, 3, INF)
        report = relative_hyperbolicity_check(w, [subsystem(w, ["2", "3"])], tol=tol)
        assert report.holds

    def test_exhaustive_collects_more(self, tol):
        w = prism_system()
        peripherals = [subsystem(w, ["1", "3", "5"])]
        first = relative_hyperbolicity_check(w, peripherals, tol=tol)
        every = relative_hyperbolicity_check(w, peripherals, tol=tol, exhaustive=True)
        assert len(every.failures) >= len(first.failures) == 1

    def test_foreign_peripheral(self, tol):
        other = triangle_system(2, 3, 7)
        with pytest.raises(BadPeripheral):
            relative_hyperbolicity_check(prism_system(), [subsystem(other, ["1"])], tol=tol)
