"""Dominant-set extraction with replicator dynamics and a sequential constraint.

Clusters are runs of consecutive contour indices (wrapping around the seam).
Each round re-initializes the participation vector uniformly over the nodes
still in play, climbs the quadratic form with replicator dynamics, keeps the
longest consecutive run of the support and removes it from the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 10000
MIN_CLUSTER_SIZE = 4


class NoCohesiveSet(ArithmeticError):
    """The quadratic form vanished on the current support."""


class EmptySupport(ArithmeticError):
    """Every participation weight fell below the support threshold."""


@dataclass(frozen=True)
class Cluster:
    start: int
    length: int
    cohesiveness: float
    N: int

    @property
    def members(self) -> np.ndarray:
        return (self.start + np.arange(self.length)) % self.N

    def as_record(self) -> dict:
        return {"start": self.start, "length": self.length, "cohesiveness": self.cohesiveness}


@dataclass(frozen=True)
class Decomposition:
    N: int
    clusters: list[Cluster] = field(default_factory=list)
    unassigned: list[int] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.clusters)

    def labels(self) -> np.ndarray:
        """Cluster id per contour point (1-based), 0 for unassigned."""
        lab = np.zeros(self.N, dtype=np.int64)
        for k, c in enumerate(self.clusters, start=1):
            lab[c.members] = k
        return lab

    def as_record(self) -> dict:
        return {
            "clusters": [c.as_record() for c in self.clusters],
            "unassigned": list(self.unassigned),
        }


def objective(D: np.ndarray, x: np.ndarray) -> float:
    """Quadratic form x' D x."""
    D = np.asarray(D, dtype=float)
    x = np.asarray(x, dtype=float)
    if D.shape != (len(x), len(x)):
        raise ValueError(f"dimension mismatch: D is {D.shape}, x has length {len(x)}")
    return float(x @ D @ x)


def uniform_cohesiveness(D: np.ndarray, members) -> float:
    """Quadratic form at the uniform vector 1/|members| over ``members``."""
    members = np.asarray(members)
    k = len(members)
    if k == 0:
        return 0.0
    return float(np.asarray(D, dtype=float)[np.ix_(members, members)].sum()) / (k * k)


# Participation weights that decay below the smallest normal double are set
# to zero: subnormal arithmetic is orders of magnitude slower and such values
# cannot influence the objective.
_TINY = np.finfo(np.float64).tiny


@njit(cache=True)
def _replicator_kernel(D, x0, tol, max_iter, record):
    n = x0.shape[0]
    x = x0.copy()
    hist = np.empty((max_iter + 1 if record else 1, n))
    Js = np.empty(max_iter + 1 if record else 1)
    steps = 0

    y = np.dot(D, x)
    J = np.dot(x, y)
    if record:
        hist[0] = x
        Js[0] = J
    if not J > 0.0:
        return x, J, steps, False, hist, Js

    while steps < max_iter:
        x = x * y / J
        for i in range(n):
            if x[i] < _TINY:
                x[i] = 0.0
        x /= x.sum()
        steps += 1

        y = np.dot(D, x)
        J_new = np.dot(x, y)
        if record:
            hist[steps] = x
            Js[steps] = J_new
        if not J_new > 0.0:
            return x, J_new, steps, False, hist, Js
        gain = J_new - J
        J = J_new
        if gain < tol:
            break
    return x, J, steps, True, hist, Js


def replicator_run(
    D: np.ndarray,
    x0: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    record: bool = False,
):
    """Iterate the discrete replicator map x <- x * (Dx) / (x'Dx).

    Stops once an update raises the objective by less than ``tol`` or after
    ``max_iter`` updates. Each iterate is clamped at zero and renormalized so
    it stays on the simplex despite round-off.

    With ``record=True`` returns ``(x, trajectory, objective_values)`` where
    the trajectory includes ``x0``; otherwise returns ``x``.

    Raises :class:`NoCohesiveSet` if the objective is zero at any iterate.
    """
    D = np.ascontiguousarray(D, dtype=np.float64)
    x0 = np.ascontiguousarray(x0, dtype=np.float64)
    if D.shape != (len(x0), len(x0)):
        raise ValueError(f"dimension mismatch: D is {D.shape}, x0 has length {len(x0)}")
    x, J, steps, ok, hist, Js = _replicator_kernel(D, x0, float(tol), int(max_iter), bool(record))
    if not ok:
        raise NoCohesiveSet(f"objective vanished after {steps} replicator steps")
    if record:
        return x, hist[: steps + 1].copy(), Js[: steps + 1].copy()
    return x


def support(x: np.ndarray, eps: float | None = None) -> np.ndarray:
    """Indices whose participation exceeds ``eps`` (default 1/(10N))."""
    x = np.asarray(x)
    if eps is None:
        eps = 1.0 / (10 * len(x))
    idx = np.nonzero(x > eps)[0]
    if len(idx) == 0:
        raise EmptySupport(f"no participation weight above {eps:g}")
    return idx


def longest_circular_run(indices, N: int) -> tuple[int, int]:
    """Longest run of consecutive indices modulo ``N`` inside ``indices``.

    Returns ``(start, length)``. Runs may wrap past ``N - 1`` to ``0``; among
    equally long runs the smallest start index wins.
    """
    mark = np.zeros(N, dtype=bool)
    mark[np.asarray(list(indices), dtype=np.int64)] = True
    if not mark.any():
        raise ValueError("indices must be non-empty")
    if mark.all():
        return 0, N

    best_start, best_len = -1, 0
    gap = int(np.argmin(mark))  # a position not in the set
    run_start, run_len = -1, 0
    for step in range(1, N + 1):
        pos = (gap + step) % N
        if mark[pos]:
            if run_len == 0:
                run_start = pos
            run_len += 1
            continue
        if run_len > best_len or (run_len == best_len and run_len > 0 and run_start < best_start):
            best_start, best_len = run_start, run_len
        run_len = 0
    return best_start, best_len


def extract_all(
    D: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    min_size: int = MIN_CLUSTER_SIZE,
) -> Decomposition:
    """Peel off sequentially constrained dominant sets until every node is used.

    Runs shorter than ``min_size`` are marked unassigned instead of becoming
    clusters. Cluster cohesiveness is evaluated on the full ``D`` at the
    uniform vector over the cluster's members.
    """
    D = np.asarray(D, dtype=np.float64)
    N = D.shape[0]
    active = np.arange(N)
    clusters: list[Cluster] = []
    unassigned: list[int] = []

    while len(active):
        sub = np.ascontiguousarray(D[np.ix_(active, active)])
        x0 = np.full(len(active), 1.0 / len(active))
        try:
            x = replicator_run(sub, x0, tol, max_iter)
            sup = active[support(x)]
        except (NoCohesiveSet, EmptySupport):
            unassigned.extend(active.tolist())
            break
        start, length = longest_circular_run(sup, N)
        run = (start + np.arange(length)) % N
        if length >= min_size:
            clusters.append(Cluster(int(start), int(length), uniform_cohesiveness(D, run), N))
        else:
            unassigned.extend(run.tolist())
        active = np.setdiff1d(active, run, assume_unique=True)

    return Decomposition(N, clusters, sorted(unassigned))
