"""Synthetic test shapes."""

from __future__ import annotations

import numpy as np

from shapeparts.contour import Contour, from_points, resample_uniform


def _arc(cx, cy, r, a0, a1, k):
    t = np.linspace(a0, a1, k, endpoint=False)
    return np.column_stack([cx + r * np.cos(t), cy + r * np.sin(t)])


def _line(p, q, k):
    t = np.linspace(0.0, 1.0, k, endpoint=False)[:, None]
    return np.asarray(p) + t * (np.asarray(q) - np.asarray(p))


def dumbbell(
    n_points: int = 200,
    left_radius: float = 1.0,
    right_radius: float = 1.0,
    gap: float = 0.1,
    neck_half_width: float = 0.03,
    density: int = 4000,
) -> tuple[Contour, np.ndarray]:
    """Two disks joined by a straight neck, resampled to ``n_points``.

    ``gap`` is the distance between the two circles along the axis. Returns
    the contour and a label per point: 1 left lobe, 2 right lobe, 0 neck.
    """
    r1, r2, h = left_radius, right_radius, neck_half_width
    c2 = r1 + gap + r2
    a1 = np.arcsin(h / r1)
    a2 = np.arcsin(h / r2)
    x_big = r1 * np.cos(a1)
    x_small = c2 - r2 * np.cos(a2)

    len_big = r1 * (2 * np.pi - 2 * a1)
    len_small = r2 * (2 * np.pi - 2 * a2)
    len_neck = x_small - x_big
    total = len_big + len_small + 2 * len_neck

    def share(length):
        return max(2, int(round(density * length / total)))

    dense = np.vstack(
        [
            _arc(0.0, 0.0, r1, a1, 2 * np.pi - a1, share(len_big)),
            _line((x_big, -h), (x_small, -h), share(len_neck)),
            _arc(c2, 0.0, r2, np.pi + a2, 3 * np.pi - a2, share(len_small)),
            _line((x_small, h), (x_big, h), share(len_neck)),
        ]
    )
    c = resample_uniform(from_points(dense), n_points)

    pts = c.points
    tol = 1e-9
    on_neck = (np.abs(np.abs(pts[:, 1]) - h) < tol) & (pts[:, 0] > x_big + tol) & (pts[:, 0] < x_small - tol)
    labels = np.where(pts[:, 0] < c2 / 2, 1, 2)
    labels[on_neck] = 0
    return c, labels


def ellipse(n_points: int = 200, a: float = 2.0, b: float = 1.0) -> Contour:
    t = 2 * np.pi * np.arange(n_points) / n_points
    return Contour(np.column_stack([a * np.cos(t), b * np.sin(t)]))


def circle(n_points: int, radius: float = 1.0) -> Contour:
    return ellipse(n_points, radius, radius)


def random_star_polygon(rng: np.random.Generator, n: int, spread: float = 0.6) -> Contour:
    """Random simple polygon: sorted angles with random radii around the origin."""
    angles = np.sort(rng.uniform(0, 2 * np.pi, n))
    radii = rng.uniform(1.0 - spread, 1.0, n)
    return from_points(np.column_stack([radii * np.cos(angles), radii * np.sin(angles)]))
