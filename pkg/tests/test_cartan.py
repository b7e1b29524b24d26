import math

import numpy as np
import pytest

from cvk.cartan import (
    CartanMatrix,
    MatrixType,
    cartan_type,
    components,
    minimal_eigenvalue,
    numerical_rank,
    perron_pair,
    symmetrizable,
    validate_cartan,
)
from cvk.catalog import triangle_system
from cvk.coxsys import gram_matrix
from utils.errors import AsymmetricZeroPattern, BadDiagonal, PositiveOffDiagonal

R2 = math.sqrt(2.0)
KV_334 = [[2.0, -2.0, -R2], [-0.5, 2.0, -1.0], [-R2, -1.0, 2.0]]


@pytest.mark.unit
class TestValidate:
    def test_bad_diagonal(self):
        with pytest.raises(BadDiagonal):
            validate_cartan([[2.0, -1.0], [-1.0, 1.5]])

    def test_positive_off_diagonal(self):
        with pytest.raises(PositiveOffDiagonal):
            validate_cartan([[2.0, 0.5], [-1.0, 2.0]])

    def test_zero_pattern(self):
        with pytest.raises(AsymmetricZeroPattern):
            validate_cartan([[2.0, 0.0], [-1.0, 2.0]])


@pytest.mark.unit
class TestSpectrum:
    def test_affine_triangle_is_zero_type(self, tol):
        a = CartanMatrix(gram_matrix(triangle_system(3, 3, 3)))
        value, residual = minimal_eigenvalue(a, (0, 1, 2), tol=tol)
        assert abs(value) <= 1e-9
        assert residual <= 1e-9
        assert cartan_type(a, tol=tol).aggregate is MatrixType.ZERO
        assert numerical_rank(a, tol=tol) == 2

    def test_compact_triangle_is_negative(self, tol):
        a = CartanMatrix(gram_matrix(triangle_system(2, 3, 7)))
        pair = perron_pair(a, (0, 1, 2), tol=tol)
        assert pair.value < -1e-9
        assert np.all(pair.vector > 0)
        assert pair.residual <= 1e-9
        assert numerical_rank(a, tol=tol) == 3

    def test_non_symmetric_left_vector(self, tol):
        a = validate_cartan(KV_334, tol=tol)
        left = perron_pair(a, (0, 1, 2), left=True, tol=tol)
        right = perron_pair(a, (0, 1, 2), tol=tol)
        assert abs(left.value - right.value) <= 1e-9
        np.testing.assert_allclose(left.vector @ a.entries, left.value * left.vector, atol=1e-9)
        assert cartan_type(a, tol=tol).aggregate is MatrixType.NEGATIVE

    def test_slight_asymmetry_uses_general_solver(self, tol):
        a = CartanMatrix(np.array([[2.0, -10.0], [-10.00005, 2.0]]))
        pair = perron_pair(a, (0, 1), tol=tol)
        np.testing.assert_allclose(a.entries @ pair.vector, pair.value * pair.vector, atol=1e-9)
        assert pair.residual <= 1e-9

    def test_mixed_components(self, tol):
        a = CartanMatrix(np.array([
            [2.0, -1.0, 0.0, 0.0],
            [-1.0, 2.0, 0.0, 0.0],
            [0.0, 0.0, 2.0, -2.0],
            [0.0, 0.0, -2.0, 2.0],
        ]))
        assert components(a, tol=tol) == [(0, 1), (2, 3)]
        report = cartan_type(a, tol=tol)
        assert report.aggregate is MatrixType.MIXED
        assert not report.is_uniform
        assert [t for _, t, _ in report.per_component] == [MatrixType.POSITIVE, MatrixType.ZERO]


@pytest.mark.unit
def test_symmetrizable(tol):
    assert symmetrizable(CartanMatrix(gram_matrix(triangle_system(2, 3, 7))), tol=tol)
    assert not symmetrizable(validate_cartan(KV_334, tol=tol), tol=tol)
