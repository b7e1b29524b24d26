"""Matriks Cartan: validasi, komponen, eigenvalue Perron-Frobenius, tipe, rank.

``lambda_A`` dibaca sebagai eigenvalue Perron-Frobenius dari komponen irreducible:
eigenvalue real dengan bagian real terkecil, yang eigenvector-nya positif.
Nilai ini sama dengan ``2 - rho(2I - A)``, dan tandanya menentukan tipe
positive / zero / negative.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import networkx as nx
import numpy as np

from config import DEFAULT_TOLERANCE, Tolerance
from utils.errors import (
    AsymmetricZeroPattern,
    BadDiagonal,
    EigenFailure,
    PositiveOffDiagonal,
    ValidationError,
)
from utils.mlogger import logger

log = logger.bind(module="cartan")


@dataclass(frozen=True, eq=False)
class CartanMatrix:
    entries: np.ndarray

    @property
    def size(self) -> int:
        return int(self.entries.shape[0])

    def block(self, comp: Sequence[int]) -> np.ndarray:
        idx = np.asarray(comp, dtype=int)
        return self.entries[np.ix_(idx, idx)]

    def __array__(self, dtype: object = None, copy: object = None) -> np.ndarray:  # noqa: ARG002
        return self.entries if dtype is None else self.entries.astype(dtype)


class MatrixType(StrEnum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"
    MIXED = "mixed"


@dataclass(frozen=True)
class Eigenpair:
    value: float
    vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class TypeReport:
    aggregate: MatrixType
    per_component: tuple[tuple[tuple[int, ...], MatrixType, float], ...]

    @property
    def is_uniform(self) -> bool:
        return self.aggregate is not MatrixType.MIXED


def validate_cartan(
    entries: np.ndarray | Sequence[Sequence[float]],
    *,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> CartanMatrix:
    """Check diagonal 2, non-positive off-diagonal and symmetric zero pattern.

    Raises:
        BadDiagonal: a diagonal entry differs from 2.
        PositiveOffDiagonal: an off-diagonal entry is positive.
        AsymmetricZeroPattern: ``a_ij == 0`` but ``a_ji != 0``.
    """
    a = np.array(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"Cartan matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    for i in range(n):
        if abs(a[i, i] - 2.0) > tol.eps * 10:
            raise BadDiagonal(f"a_{i}{i} = {a[i, i]} != 2", locus={"index": i})
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if a[i, j] > tol.eps:
                raise PositiveOffDiagonal(
                    f"a_{i}{j} = {a[i, j]} > 0", locus={"pair": [i, j]}
                )
            if (abs(a[i, j]) <= tol.eps) != (abs(a[j, i]) <= tol.eps):
                raise AsymmetricZeroPattern(
                    f"a_{i}{j} = {a[i, j]} but a_{j}{i} = {a[j, i]}",
                    locus={"pair": [i, j]},
                )
    return CartanMatrix(entries=a)


def components(a: CartanMatrix, *, tol: Tolerance = DEFAULT_TOLERANCE) -> list[tuple[int, ...]]:
    """Irreducible diagonal blocks, as sorted index tuples."""
    graph = nx.Graph()
    graph.add_nodes_from(range(a.size))
    rows, cols = np.nonzero(np.abs(a.entries) > tol.eps)
    graph.add_edges_from((int(i), int(j)) for i, j in zip(rows, cols, strict=True) if i != j)
    comps = [tuple(sorted(c)) for c in nx.connected_components(graph)]
    return sorted(comps)


def perron_pair(
    a: CartanMatrix,
    comp: Sequence[int],
    *,
    left: bool = False,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Eigenpair:
    """Perron-Frobenius eigenpair of an irreducible block.

    Args:
        a: The Cartan matrix.
        comp: Indices of one irreducible component.
        left: Use the transpose (left eigenvector).
        tol: Tolerances.

    Returns:
        Eigenpair: ``lambda_A``, its positive eigenvector (unit norm) and the
        residual ``|B x - lambda x|``.

    Raises:
        EigenFailure: the solver failed or no positive eigenvector was found.
    """
    block = a.block(comp)
    if left:
        block = block.T
    try:
        if np.allclose(block, block.T, rtol=0.0, atol=tol.eps):
            values, vectors = np.linalg.eigh((block + block.T) / 2)
            k = int(np.argmin(values))
            value, vector = float(values[k]), vectors[:, k]
        else:
            values, vectors = np.linalg.eig(block)
            k = int(np.argmin(values.real))
            value, vector = float(values[k].real), vectors[:, k].real
    except np.linalg.LinAlgError as e:
        raise EigenFailure(f"eigen solver failed: {e}", locus={"component": list(comp)}) from e

    vector = vector / np.linalg.norm(vector)
    if vector.sum() < 0:
        vector = -vector
    if vector.min() < -1e3 * tol.eps * max(1.0, float(np.abs(block).max())):
        raise EigenFailure(
            "minimal eigenvector is not positive",
            locus={"component": list(comp), "vector": vector.tolist()},
        )
    vector = np.clip(vector, 0.0, None)
    residual = float(np.linalg.norm(block @ vector - value * vector))
    return Eigenpair(value=value, vector=vector, residual=residual)


def minimal_eigenvalue(
    a: CartanMatrix, comp: Sequence[int], *, tol: Tolerance = DEFAULT_TOLERANCE
) -> tuple[float, float]:
    """``(lambda_A, residual)`` of one irreducible component."""
    pair = perron_pair(a, comp, tol=tol)
    return pair.value, pair.residual


def _type_of(value: float, eps: float) -> MatrixType:
    if value > eps:
        return MatrixType.POSITIVE
    if value < -eps:
        return MatrixType.NEGATIVE
    return MatrixType.ZERO


def cartan_type(a: CartanMatrix, *, tol: Tolerance = DEFAULT_TOLERANCE) -> TypeReport:
    """Per-component type and the aggregate (``MIXED`` when components disagree)."""
    per = []
    for comp in components(a, tol=tol):
        value, _ = minimal_eigenvalue(a, comp, tol=tol)
        per.append((comp, _type_of(value, tol.eps), value))
    kinds = {t for _, t, _ in per}
    aggregate = kinds.pop() if len(kinds) == 1 else MatrixType.MIXED
    return TypeReport(aggregate=aggregate, per_component=tuple(per))


def numerical_rank(a: CartanMatrix | np.ndarray, *, tol: Tolerance = DEFAULT_TOLERANCE) -> int:
    m = a.entries if isinstance(a, CartanMatrix) else np.asarray(a, dtype=float)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol.eps * s[0]))


def symmetrizable(a: CartanMatrix, *, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Cyclic products agree in both directions on every cycle of the graph."""
    graph = nx.Graph()
    graph.add_nodes_from(range(a.size))
    rows, cols = np.nonzero(np.abs(a.entries) > tol.eps)
    graph.add_edges_from((int(i), int(j)) for i, j in zip(rows, cols, strict=True) if i < j)
    for cycle in nx.cycle_basis(graph):
        forward = backward = 1.0
        for k, i in enumerate(cycle):
            j = cycle[(k + 1) % len(cycle)]
            forward *= a.entries[i, j]
            backward *= a.entries[j, i]
        if abs(forward - backward) > 1e3 * tol.eps * max(1.0, abs(forward)):
            return False
    return True


__all__ = [
    "CartanMatrix",
    "Eigenpair",
    "MatrixType",
    "TypeReport",
    "cartan_type",
    "components",
    "minimal_eigenvalue",
    "numerical_rank",
    "perron_pair",
    "symmetrizable",
    "validate_cartan",
]
