from collections.abc import Callable

import numpy as np
import pytest

from config import DEFAULT_TOLERANCE, Tolerance
from cvk.catalog import fixture_polytope, segment, triangle
from cvk.coxsys import INF
from cvk.polytope import MirrorPolytope, build_mirror_polytope
from utils.mlogger import LogConfig, LoggerManager


@pytest.fixture(scope="session", autouse=True)
def _logger() -> None:
    LoggerManager(
        LogConfig(
            level="WARNING",
            to_terminal=True,
            to_file=False,
            format_style="simple",
            bind_context={"app": "cvk-tests"},
            enable_exception_hooks=False,
        )
    ).setup()


@pytest.fixture
def tol() -> Tolerance:
    return DEFAULT_TOLERANCE


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def t237() -> MirrorPolytope:
    return triangle(2, 3, 7)


@pytest.fixture(scope="session")
def t333() -> MirrorPolytope:
    return triangle(3, 3, 3)


@pytest.fixture(scope="session")
def t23inf() -> MirrorPolytope:
    return triangle(2, 3, INF)


@pytest.fixture(scope="session")
def a3() -> MirrorPolytope:
    return fixture_polytope("A3")


@pytest.fixture(scope="session")
def quad() -> MirrorPolytope:
    return fixture_polytope("quadrilateral-lox")


@pytest.fixture(scope="session")
def orthogonal_segments() -> MirrorPolytope:
    return fixture_polytope("segment-orthogonal")


@pytest.fixture
def angled_segment() -> Callable[[float, float], MirrorPolytope]:
    """Segment in S^1 with ``a_12 a_21 = x2 * y1``."""

    def build(x2: float, y1: float) -> MirrorPolytope:
        return build_mirror_polytope(
            1,
            [([-1.0, 0.0], [-2.0, y1]), ([0.0, -1.0], [x2, -2.0])],
        )

    return build


@pytest.fixture(scope="session")
def right_segment() -> MirrorPolytope:
    return segment()
