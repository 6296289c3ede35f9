"""Visibility graph of a contour, circular neighborhood masks and radius estimation."""

from __future__ import annotations

import math
from typing import TextIO

import numpy as np

from shapeparts.contour import Contour
from shapeparts.geometry import inside_or_on, normalize, point_on_segment, segments_cross_properly


def _visible_from(i: int, pts: np.ndarray) -> np.ndarray:
    """Visibility of points ``j > i`` from point ``i`` (boolean, length N-i-1)."""
    n = len(pts)
    js = np.arange(i + 1, n)
    if len(js) == 0:
        return np.zeros(0, dtype=bool)
    p = pts[i][None, None, :]
    q = pts[js][:, None, :]
    a = pts[None, :, :]
    b = np.roll(pts, -1, axis=0)[None, :, :]

    blocked = segments_cross_properly(p, q, a, b).any(axis=1)

    # Boundary vertices lying on the open segment split it into pieces; each
    # piece is then entirely inside or entirely outside.
    vx = pts[:, 0][None, :]
    vy = pts[:, 1][None, :]
    on = point_on_segment(vx, vy, p[..., 0], p[..., 1], q[..., 0], q[..., 1])
    on[:, i] = False
    on[np.arange(len(js)), js] = False

    vis = np.zeros(len(js), dtype=bool)
    todo = np.nonzero(~blocked)[0]
    if len(todo) == 0:
        return vis

    simple = todo[~on[todo].any(axis=1)]
    if len(simple):
        mid = 0.5 * (pts[i] + pts[js[simple]])
        vis[simple] = inside_or_on(mid[:, 0], mid[:, 1], pts)

    for r in todo[on[todo].any(axis=1)].tolist():
        start, end = pts[i], pts[js[r]]
        d = end - start
        touch = pts[on[r]]
        t = np.sort(((touch - start) @ d) / float(d @ d))
        cuts = np.concatenate([[0.0], t, [1.0]])
        mids = start + 0.5 * (cuts[:-1] + cuts[1:])[:, None] * d
        vis[r] = bool(inside_or_on(mids[:, 0], mids[:, 1], pts).all())
    return vis


def build_visibility_matrix(c: Contour) -> np.ndarray:
    """Binary symmetric matrix of mutually visible contour points.

    Points ``i`` and ``j`` see each other when the segment between them stays
    inside the closed region bounded by the contour. Touching the boundary,
    including running along an edge, does not block visibility.
    """
    pts = normalize(c.points)
    n = len(pts)
    A = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        A[i, i + 1 :] = _visible_from(i, pts)
    idx = np.arange(n)
    A[idx, (idx + 1) % n] = 1
    A = np.maximum(A, A.T)
    np.fill_diagonal(A, 0)
    return A


def circular_distance(N: int) -> np.ndarray:
    idx = np.arange(N)
    off = np.abs(idx[:, None] - idx[None, :])
    return np.minimum(off, N - off)


def max_radius(N: int) -> int:
    return N // 2 - 1


def neighborhood_mask(N: int, n: int) -> np.ndarray:
    """Circulant 0/1 band: ones where circular index distance is at most ``n``."""
    if not 1 <= n <= max_radius(N):
        raise ValueError(f"radius must lie in [1, {max_radius(N)}] for N={N}, got {n}")
    first = np.zeros(N, dtype=np.int64)
    first[: n + 1] = 1
    first[N - n :] = 1
    idx = np.arange(N)
    return first[(idx[None, :] - idx[:, None]) % N]


def restrict(A: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Elementwise product of a visibility matrix and a neighborhood mask."""
    A = np.asarray(A)
    mask = np.asarray(mask)
    if A.shape != mask.shape:
        raise ValueError(f"dimension mismatch: A is {A.shape}, mask is {mask.shape}")
    return A * mask


def off_diagonal_profile(A: np.ndarray) -> np.ndarray:
    """Visible-pair counts per circular offset.

    Entry ``k`` holds s(k + 1): the number of upper-triangle pairs (i, j)
    whose index offset ``j - i`` equals n or N - n, for n = 1 .. N // 2.
    """
    A = np.asarray(A)
    N = A.shape[0]
    i, j = np.triu_indices(N, k=1)
    off = j - i
    circ = np.minimum(off, N - off)
    return np.bincount(circ, weights=A[i, j], minlength=N // 2 + 1)[1 : N // 2 + 1].astype(np.int64)


def estimate_radius(profile, N: int, n_min: int | None = None) -> int:
    """Smallest strict local minimum of the profile at or above ``n_min``.

    ``profile[k]`` is s(k + 1). Falls back to ``N // 8`` when the profile has
    no qualifying minimum (a convex shape gives a flat profile).
    """
    s = np.asarray(profile)
    if len(s) < 4:
        raise ValueError("profile needs at least 4 entries")
    if n_min is None:
        n_min = math.ceil(N / 20)
    for n in range(max(n_min, 2), len(s)):
        if s[n - 1] < s[n - 2] and s[n - 1] < s[n]:
            return n
    return N // 8


def write_matrix(M: np.ndarray, fh: TextIO) -> None:
    """Plain-text dump: a line with N, then N rows of space-separated integers."""
    M = np.asarray(M)
    fh.write(f"{M.shape[0]}\n")
    for row in M.tolist():
        fh.write(" ".join(str(int(v)) for v in row) + "\n")


def read_matrix(fh: TextIO) -> np.ndarray:
    lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    N = int(lines[0])
    rows = [list(map(int, ln.split())) for ln in lines[1 : N + 1]]
    M = np.array(rows, dtype=np.int64)
    if M.shape != (N, N):
        raise ValueError(f"expected a {N}x{N} matrix, got shape {M.shape}")
    return M
