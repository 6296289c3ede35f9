"""Optional pruning of the kept cluster most entangled with unassigned points."""

from __future__ import annotations

import numpy as np

from shapeparts.dominant_sets import Cluster, Decomposition


def _edges_within(A: np.ndarray, nodes: np.ndarray) -> int:
    if len(nodes) == 0:
        return 0
    return int(A[np.ix_(nodes, nodes)].sum()) // 2


def cross_visibility(A: np.ndarray, members, unassigned) -> int:
    """Visibility edges joining ``members`` to ``unassigned``.

    Counted by inclusion-exclusion: edges inside the union minus edges inside
    each part. ``A`` is the unrestricted visibility matrix.
    """
    A = np.asarray(A)
    c = np.asarray(members, dtype=np.int64)
    u = np.asarray(unassigned, dtype=np.int64)
    if np.intersect1d(c, u).size:
        raise ValueError("cluster and unassigned sets overlap")
    return _edges_within(A, np.concatenate([c, u])) - _edges_within(A, c) - _edges_within(A, u)


def prune_weakest(decomp: Decomposition, A: np.ndarray) -> tuple[Decomposition, int | None]:
    """Dissolve the cluster sharing the most visibility with unassigned points.

    Ties on the edge count go to the larger count per member, then to the
    later-extracted cluster. Nothing is removed when every count is zero.
    Returns the new decomposition and the index of the removed cluster
    (``None`` if unchanged).
    """
    if not decomp.clusters:
        return decomp, None
    scores = [cross_visibility(A, c.members, decomp.unassigned) for c in decomp.clusters]
    if max(scores) == 0:
        return decomp, None
    keys = [(q, q / c.length, k) for k, (q, c) in enumerate(zip(scores, decomp.clusters))]
    victim = max(keys)[2]
    removed: Cluster = decomp.clusters[victim]
    kept = [c for k, c in enumerate(decomp.clusters) if k != victim]
    unassigned = sorted(decomp.unassigned + removed.members.tolist())
    return Decomposition(decomp.N, kept, unassigned), victim
