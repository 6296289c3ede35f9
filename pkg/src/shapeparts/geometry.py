"""Planar predicates shared by the contour and visibility code.

All predicates work on coordinates that have been mapped to the unit box
with :func:`normalize`, so the fixed epsilon below is scale-free.
"""

from __future__ import annotations

import numpy as np

ORIENT_EPS = 1e-12


def normalize(points: np.ndarray) -> np.ndarray:
    """Translate and uniformly scale ``points`` into the unit box."""
    pts = np.asarray(points, dtype=float)
    lo = pts.min(axis=0)
    extent = float((pts.max(axis=0) - lo).max())
    if extent == 0.0:
        return pts - lo
    return (pts - lo) / extent


def orient(ax, ay, bx, by, cx, cy, eps: float = ORIENT_EPS):
    """Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear.

    Broadcasts over numpy arrays.
    """
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return np.where(det > eps, 1, np.where(det < -eps, -1, 0))


def signed_area(points: np.ndarray) -> float:
    """Shoelace signed area; positive for counterclockwise order."""
    x = points[:, 0]
    y = points[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def point_on_segment(px, py, ax, ay, bx, by, eps: float = ORIENT_EPS):
    """True where p lies on the closed segment a-b (broadcasting)."""
    col = orient(ax, ay, bx, by, px, py, eps) == 0
    within_x = (np.minimum(ax, bx) - eps <= px) & (px <= np.maximum(ax, bx) + eps)
    within_y = (np.minimum(ay, by) - eps <= py) & (py <= np.maximum(ay, by) + eps)
    return col & within_x & within_y


def inside_or_on(px, py, poly: np.ndarray) -> np.ndarray:
    """Closed point-in-polygon test for one or many query points.

    Crossing-number test for the interior plus an explicit on-edge check,
    so boundary points report True.
    """
    px = np.atleast_1d(np.asarray(px, dtype=float))[:, None]
    py = np.atleast_1d(np.asarray(py, dtype=float))[:, None]
    ax = poly[:, 0][None, :]
    ay = poly[:, 1][None, :]
    bx = np.roll(poly[:, 0], -1)[None, :]
    by = np.roll(poly[:, 1], -1)[None, :]

    on_edge = point_on_segment(px, py, ax, ay, bx, by).any(axis=1)

    straddle = (ay > py) != (by > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_cross = ax + (py - ay) * (bx - ax) / (by - ay)
    crossings = (straddle & (px < x_cross)).sum(axis=1)
    return on_edge | (crossings % 2 == 1)


def segments_cross_properly(p, q, a, b) -> np.ndarray:
    """True where segment p-q crosses segment a-b at a single interior point.

    Touching at an endpoint or collinear overlap is not a proper crossing.
    Arguments are ``(..., 2)`` arrays that broadcast against each other.
    """
    o1 = orient(p[..., 0], p[..., 1], q[..., 0], q[..., 1], a[..., 0], a[..., 1])
    o2 = orient(p[..., 0], p[..., 1], q[..., 0], q[..., 1], b[..., 0], b[..., 1])
    o3 = orient(a[..., 0], a[..., 1], b[..., 0], b[..., 1], p[..., 0], p[..., 1])
    o4 = orient(a[..., 0], a[..., 1], b[..., 0], b[..., 1], q[..., 0], q[..., 1])
    return (o1 * o2 < 0) & (o3 * o4 < 0)


def segment_intersection_params(p, q, a, b, eps: float = 1e-9):
    """Intersection parameters (t on p-q, u on a-b) of two segments, or None.

    Collinear overlapping segments return the parameters of the first shared
    point. ``eps`` widens the accepted parameter range to [-eps, 1+eps].
    """
    r = q - p
    s = b - a
    denom = r[0] * s[1] - r[1] * s[0]
    qp = a - p
    if abs(denom) <= ORIENT_EPS:
        if abs(qp[0] * r[1] - qp[1] * r[0]) > ORIENT_EPS:
            return None
        rr = float(np.dot(r, r))
        if rr == 0.0:
            return None
        t0 = float(np.dot(qp, r)) / rr
        t1 = t0 + float(np.dot(s, r)) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < -eps or lo > 1 + eps:
            return None
        t = max(lo, 0.0)
        u = (t - t0) / (t1 - t0) if t1 != t0 else 0.0
        return t, u
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    if -eps <= t <= 1 + eps and -eps <= u <= 1 + eps:
        return t, u
    return None


def find_self_intersection(points: np.ndarray, eps: float = 1e-9):
    """Return the first pair of non-adjacent edges ``(i, j)`` that meet, or None.

    Edge ``i`` runs from point ``i`` to point ``i + 1`` (mod N). Adjacent
    edges are also reported when they fold back onto each other.
    """
    pts = normalize(points)
    n = len(pts)
    a = pts
    b = np.roll(pts, -1, axis=0)

    # Cheap bounding-box prefilter, then exact parameter test on survivors.
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    overlap = (
        (lo[:, None, 0] <= hi[None, :, 0] + eps)
        & (lo[None, :, 0] <= hi[:, None, 0] + eps)
        & (lo[:, None, 1] <= hi[None, :, 1] + eps)
        & (lo[None, :, 1] <= hi[:, None, 1] + eps)
    )
    ii, jj = np.nonzero(np.triu(overlap, k=1))
    for i, j in zip(ii.tolist(), jj.tolist()):
        adjacent = j == i + 1 or (i == 0 and j == n - 1)
        if adjacent:
            # Shared vertex is expected; only a collinear fold-back is an error.
            shared = b[i] if j == i + 1 else a[i]
            u = a[i] - shared if j == i + 1 else b[i] - shared
            v = b[j] - shared if j == i + 1 else a[j] - shared
            cross = u[0] * v[1] - u[1] * v[0]
            if abs(cross) <= ORIENT_EPS and float(np.dot(u, v)) > 0:
                return i, j
            continue
        if segment_intersection_params(a[i], b[i], a[j], b[j], eps) is not None:
            return i, j
    return None
