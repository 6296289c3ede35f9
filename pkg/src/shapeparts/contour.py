"""Closed planar contours: loading, validation, orientation and resampling."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np

from shapeparts.geometry import find_self_intersection, signed_area

DEFAULT_SAMPLES = 200
MIN_RESAMPLE = 8


class ContourError(ValueError):
    """Raised when input cannot form a simple closed contour."""


@dataclass(frozen=True, eq=False)
class Contour:
    """Counterclockwise simple polygon given by its ordered boundary points."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def N(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def perimeter(self) -> float:
        return float(np.linalg.norm(np.roll(self.points, -1, axis=0) - self.points, axis=1).sum())

    def area(self) -> float:
        return signed_area(self.points)

    def roll(self, shift: int) -> "Contour":
        """Same polygon with the starting index moved forward by ``shift``."""
        return Contour(np.roll(self.points, -shift, axis=0))


def _parse_csv(text: str) -> list[tuple[float, float]]:
    pts = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise ContourError(f"line {lineno}: expected 'x,y', got {row!r}")
        try:
            pts.append((float(row[0]), float(row[1])))
        except ValueError:
            if lineno == 1 and [c.strip().lower() for c in row] == ["x", "y"]:
                continue
            raise ContourError(f"line {lineno}: non-numeric coordinate in {row!r}") from None
    return pts


def _parse_json(text: str) -> list[tuple[float, float]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ContourError(f"invalid JSON: {exc}") from None
    raw = doc.get("points") if isinstance(doc, dict) else None
    if not isinstance(raw, list):
        raise ContourError("JSON contour must be an object with a 'points' array")
    pts = []
    for k, p in enumerate(raw):
        if (
            not isinstance(p, list)
            or len(p) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p)
        ):
            raise ContourError(f"points[{k}] is not a 2-element numeric array")
        pts.append((float(p[0]), float(p[1])))
    return pts


def from_points(points) -> Contour:
    """Validate raw points and return a CCW :class:`Contour`.

    Consecutive duplicates (including a repeated closing point) are dropped.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) == 0:
        raise ContourError("expected a sequence of (x, y) pairs")
    if not np.isfinite(pts).all():
        raise ContourError("coordinates must be finite")
    keep = np.any(pts != np.roll(pts, -1, axis=0), axis=1)
    if not keep.any():
        keep[0] = True
    pts = pts[keep]
    if len(np.unique(pts, axis=0)) < 3:
        raise ContourError("a contour needs at least 3 distinct points")

    area = signed_area(pts)
    if area == 0.0:
        raise ContourError("degenerate contour with zero area")
    if area < 0:
        pts = pts[::-1]
        # keep the original first point first
        pts = np.roll(pts, 1, axis=0)

    hit = find_self_intersection(pts)
    if hit is not None:
        i, j = hit
        raise ContourError(f"self-intersecting contour: edge {i} meets edge {j}")
    return Contour(pts)


def load_contour(source: Union[BinaryIO, bytes, str, Path], format: str | None = None) -> Contour:
    """Read a contour from a byte stream, raw bytes or a file path.

    ``format`` is ``"csv"`` or ``"json"``; for paths it defaults to the file
    suffix.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        if format is None:
            format = path.suffix.lstrip(".").lower()
        data = path.read_bytes()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()
    if format not in ("csv", "json"):
        raise ContourError(f"unsupported contour format {format!r}")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ContourError(f"input is not UTF-8 text: {exc}") from None
    pts = _parse_csv(text) if format == "csv" else _parse_json(text)
    return from_points(pts)


def dumps_contour(c: Contour, format: str = "csv") -> str:
    """Serialize with full float precision; inverse of :func:`load_contour`."""
    if format == "csv":
        return "".join(f"{x!r},{y!r}\n" for x, y in c.points.tolist())
    if format == "json":
        return json.dumps({"points": c.points.tolist()})
    raise ContourError(f"unsupported contour format {format!r}")


def resample_uniform(c: Contour, n_target: int = DEFAULT_SAMPLES) -> Contour:
    """Resample at ``n_target`` equal arc-length steps along the closed outline.

    Linear interpolation on the polygon edges, starting at the first point.
    """
    if n_target < MIN_RESAMPLE:
        raise ContourError(f"n_target must be >= {MIN_RESAMPLE}, got {n_target}")
    pts = c.points
    closed = np.vstack([pts, pts[:1]])
    seg = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]

    targets = total * np.arange(n_target) / n_target
    idx = np.searchsorted(cum, targets, side="right") - 1
    idx = np.clip(idx, 0, len(seg) - 1)
    frac = (targets - cum[idx]) / seg[idx]
    out = closed[idx] + frac[:, None] * (closed[idx + 1] - closed[idx])

    hit = find_self_intersection(out)
    if hit is not None:
        i, j = hit
        raise ContourError(
            f"resampling to {n_target} points produced a self-intersecting contour "
            f"(edge {i} meets edge {j})"
        )
    if signed_area(out) <= 0:
        raise ContourError(f"resampling to {n_target} points collapsed the contour")
    return Contour(out)
