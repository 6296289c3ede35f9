"""Clustering quality measures on the visibility graph.

Densities follow each formula's own pair convention: the graph density uses
unordered pairs, the internal and external densities ordered pairs. Points
left unassigned belong to no cluster.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from shapeparts.dominant_sets import Decomposition


@dataclass(frozen=True)
class MetricsReport:
    graph_density: float
    internal_density: float
    per_cluster_internal: list[float]
    external_density: float
    modularity: float

    def as_record(self) -> dict:
        return asdict(self)


def _num_edges(A: np.ndarray) -> int:
    return int(np.triu(A, k=1).sum())


def graph_density(A: np.ndarray) -> float:
    A = np.asarray(A)
    N = A.shape[0]
    if N < 2:
        raise ValueError("density needs at least 2 nodes")
    return _num_edges(A) / (N * (N - 1) / 2)


def internal_external_density(
    A: np.ndarray, decomp: Decomposition, include_unassigned: bool = True
) -> tuple[list[float], float, float]:
    """Per-cluster internal densities, their mean, and the external density.

    The external density counts ordered edge pairs whose endpoints are not in
    the same cluster over all ordered pairs minus within-cluster ones. With
    ``include_unassigned=False`` only pairs joining two different clusters
    enter numerator and denominator.
    """
    A = np.asarray(A)
    N = A.shape[0]
    per = []
    within_edges = 0
    within_pairs = 0
    for c in decomp.clusters:
        m = c.members
        k = len(m)
        e = int(A[np.ix_(m, m)].sum())  # ordered
        within_edges += e
        within_pairs += k * (k - 1)
        per.append(e / (k * (k - 1)) if k > 1 else 0.0)
    internal = float(np.mean(per)) if per else 0.0

    if include_unassigned:
        num = int(A.sum()) - within_edges
        den = N * (N - 1) - within_pairs
    else:
        lab = decomp.labels()
        clustered = np.nonzero(lab > 0)[0]
        sub = A[np.ix_(clustered, clustered)]
        same = lab[clustered][:, None] == lab[clustered][None, :]
        num = int(sub[~same].sum())
        den = int((~same).sum())
    external = num / den if den > 0 else 0.0
    return per, internal, external


def modularity(A: np.ndarray, decomp: Decomposition) -> float:
    """Sum over clusters of within-edge fraction minus squared endpoint fraction."""
    A = np.asarray(A)
    E = _num_edges(A)
    if E == 0:
        raise ValueError("modularity is undefined for an edgeless graph")
    deg = A.sum(axis=1)
    Q = 0.0
    for c in decomp.clusters:
        m = c.members
        e_ii = int(A[np.ix_(m, m)].sum()) / 2 / E
        a_i = float(deg[m].sum()) / (2 * E)
        Q += e_ii - a_i * a_i
    return Q


def _segment_ids(labels) -> np.ndarray:
    # label 0 means unassigned: each such point becomes its own segment
    lab = np.asarray(labels, dtype=np.int64).copy()
    zeros = np.nonzero(lab == 0)[0]
    lab[zeros] = lab.max(initial=0) + 1 + np.arange(len(zeros))
    return lab


def _pairs(counts: np.ndarray) -> int:
    counts = counts.astype(np.int64)
    return int((counts * (counts - 1) // 2).sum())


def rand_index(S1, S2) -> float:
    """Fraction of point pairs on which two labelings agree.

    Labels are per contour point; 0 marks an unassigned point, treated as a
    singleton segment.
    """
    a = _segment_ids(S1)
    b = _segment_ids(S2)
    if a.shape != b.shape:
        raise ValueError("segmentations must label the same points")
    N = len(a)
    if N < 2:
        raise ValueError("rand index needs at least 2 points")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    both = _pairs(table.ravel())
    same_a = _pairs(table.sum(axis=1))
    same_b = _pairs(table.sum(axis=0))
    total = N * (N - 1) // 2
    agree = total + 2 * both - same_a - same_b
    return agree / total


def compute_metrics(A: np.ndarray, decomp: Decomposition) -> MetricsReport:
    per, internal, external = internal_external_density(A, decomp)
    return MetricsReport(
        graph_density=graph_density(A),
        internal_density=internal,
        per_cluster_internal=per,
        external_density=external,
        modularity=modularity(A, decomp),
    )
