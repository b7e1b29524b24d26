"""Output: SVG tiling (d = 2), PLY point cloud (d = 3), CSV limit set, tulis atomik.

Semua file ditulis ke temp file di direktori tujuan lalu ``os.replace``,
jadi pembaca tidak pernah melihat file setengah jadi.
"""

import os
import tempfile
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pandas as pd

from cvk.faces import face_lattice
from cvk.hilbert import AffineChart
from cvk.orbit import LimitSetSample, TilingSnapshot
from utils.errors import ValidationError
from utils.mlogger import logger

log = logger.bind(module="render")

SVG_SIZE = 800
_MARGIN = 20


def write_atomic(path: Path, content: str | bytes) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(content, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode) as handle:
            handle.write(content)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    log.debug(f"wrote {path}")
    return path


def _polygon_order(snapshot: TilingSnapshot) -> list[int]:
    """Vertex indices of the base polygon in cyclic order (walk along edges)."""
    lattice = face_lattice(snapshot.polytope)
    edges = [f.vertices for f in lattice.edges]
    order = [0]
    while len(order) < len(lattice.vertices):
        last = order[-1]
        nxt = next(
            (v for e in edges if last in e for v in e if v != last and v not in order), None
        )
        if nxt is None:
            break
        order.append(nxt)
    return order


def _affine_points(chart: AffineChart, points: np.ndarray) -> np.ndarray | None:
    if np.any(points @ chart.covector >= 0):
        return None
    return chart.to_affine(points)


def tiling_svg(snapshot: TilingSnapshot, chart: AffineChart, limit_points: np.ndarray | None = None) -> str:
    """Tiles as polygons in the affine chart, limit-set points as dots.

    Tiles leaving the chart are skipped.
    """
    if snapshot.polytope.dim != 2:
        raise ValidationError("SVG output needs d = 2", locus={"dim": snapshot.polytope.dim})
    order = _polygon_order(snapshot)
    polygons = []
    for _, verts in snapshot.tiles:
        coords = _affine_points(chart, verts[order])
        if coords is not None:
            polygons.append(coords)
    extra = [] if limit_points is None else [chart.to_affine(limit_points)]
    cloud = np.vstack(polygons + extra) if polygons or extra else np.zeros((1, 2))
    lo, hi = cloud.min(axis=0), cloud.max(axis=0)
    scale = (SVG_SIZE - 2 * _MARGIN) / max(float((hi - lo).max()), 1e-12)

    def to_px(p: np.ndarray) -> tuple[float, float]:
        x, y = (p - lo) * scale + _MARGIN
        return round(float(x), 3), round(float(SVG_SIZE - y), 3)

    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=f"{SVG_SIZE}px",
        height=f"{SVG_SIZE}px",
        viewBox=f"0 0 {SVG_SIZE} {SVG_SIZE}",
    )
    tiles = ET.SubElement(root, "g", fill="none", stroke="black", **{"stroke-width": "0.5"})
    for coords in polygons:
        px = [to_px(p) for p in coords]
        d = "M" + "L".join(f"{x} {y}" for x, y in px) + "z"
        ET.SubElement(tiles, "path", d=d)
    if extra:
        dots = ET.SubElement(root, "g", fill="red")
        for p in extra[0]:
            x, y = to_px(p)
            ET.SubElement(dots, "circle", cx=str(x), cy=str(y), r="1")
    log.debug(f"svg: {len(polygons)} polygons")
    return ET.tostring(root, encoding="unicode")


def point_cloud_ply(points: np.ndarray) -> str:
    """ASCII PLY with one vertex per row."""
    header = [
        "ply",
        "format ascii 1.0",
        f"element vertex {len(points)}",
        *(f"property float {axis}" for axis in "xyz"[: points.shape[1]]),
        "end_header",
    ]
    body = [" ".join(f"{c:.9g}" for c in row) for row in points]
    return "\n".join(header + body) + "\n"


def tiling_ply(snapshot: TilingSnapshot, chart: AffineChart) -> str:
    if snapshot.polytope.dim != 3:
        raise ValidationError("PLY output needs d = 3", locus={"dim": snapshot.polytope.dim})
    verts = np.vstack([v for _, v in snapshot.tiles])
    inside = verts[verts @ chart.covector < 0]
    return point_cloud_ply(chart.to_affine(inside))


def limit_set_csv(sample: LimitSetSample) -> str:
    frame: pd.DataFrame = sample.to_frame()
    return frame.to_csv(index=False)


__all__ = [
    "limit_set_csv",
    "point_cloud_ply",
    "tiling_ply",
    "tiling_svg",
    "write_atomic",
]
