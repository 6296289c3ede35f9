"""Cohesiveness threshold from degree-preserving rewired null graphs."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from shapeparts.dominant_sets import DEFAULT_MAX_ITER, DEFAULT_TOL, Decomposition, extract_all


class RewiringWarning(UserWarning):
    """The graph has too few edges for any double-edge swap."""


@dataclass(frozen=True)
class NullEnsembleConfig:
    num_graphs: int = 250
    std_multiplier: float = 2.0
    swap_factor: int = 10
    rng_seed: int = 0

    def __post_init__(self):
        if self.num_graphs < 1:
            raise ValueError("num_graphs must be >= 1")
        if not self.std_multiplier > 0:
            raise ValueError("std_multiplier must be > 0")
        if self.swap_factor < 1:
            raise ValueError("swap_factor must be >= 1")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class ThresholdReport:
    samples: list[float]
    mean: float
    std: float
    threshold: float
    std_multiplier: float = 2.0
    degenerate_rewires: int = 0
    clusters_per_graph: list[int] = field(default_factory=list)

    @classmethod
    def from_samples(cls, samples, std_multiplier: float = 2.0, **extra) -> "ThresholdReport":
        """Pool samples into mean + multiplier * sample std (std 0 below 2 samples)."""
        s = sorted(float(v) for v in samples)
        if not s:
            return cls([], 0.0, 0.0, 0.0, std_multiplier, **extra)
        mean = math.fsum(s) / len(s)
        std = math.sqrt(math.fsum((v - mean) ** 2 for v in s) / (len(s) - 1)) if len(s) > 1 else 0.0
        return cls(s, mean, std, mean + std_multiplier * std, std_multiplier, **extra)

    def as_record(self, verbose: bool = False) -> dict:
        rec = {
            "num_samples": len(self.samples),
            "mean": self.mean,
            "std": self.std,
            "std_multiplier": self.std_multiplier,
            "threshold": self.threshold,
            "degenerate_rewires": self.degenerate_rewires,
        }
        if verbose:
            rec["samples"] = list(self.samples)
            rec["clusters_per_graph"] = list(self.clusters_per_graph)
        return rec


@njit(cache=True)
def _swap_edges(ea, eb, adj, picks, flips):
    for t in range(picks.shape[0]):
        e1 = picks[t, 0]
        e2 = picks[t, 1]
        if e1 == e2:
            continue
        a = ea[e1]
        b = eb[e1]
        c = ea[e2]
        d = eb[e2]
        if flips[t]:
            c, d = d, c
        if a == c or a == d or b == c or b == d:
            continue
        if adj[a, d] or adj[c, b]:
            continue
        adj[a, b] = False
        adj[b, a] = False
        adj[c, d] = False
        adj[d, c] = False
        adj[a, d] = True
        adj[d, a] = True
        adj[c, b] = True
        adj[b, c] = True
        eb[e1] = d
        eb[e2] = b
        ea[e2] = c


def rewire_preserving_degrees(D: np.ndarray, swap_factor: int = 10, rng_seed=0) -> np.ndarray:
    """Randomize a weighted graph with double-edge swaps.

    Two edges (a, b) and (c, d) on four distinct nodes become (a, d) and
    (c, b) when neither new edge exists; each weight moves with its edge.
    Binary degrees and the multiset of weights are preserved exactly.
    ``swap_factor`` times the edge count swaps are attempted. ``rng_seed``
    is anything :func:`numpy.random.default_rng` accepts.

    Graphs with fewer than 2 edges are returned unchanged with a
    :class:`RewiringWarning`.
    """
    D = np.asarray(D)
    ea, eb = np.nonzero(np.triu(D, k=1))
    n_edges = len(ea)
    if n_edges < 2:
        warnings.warn(f"cannot rewire a graph with {n_edges} edge(s)", RewiringWarning, stacklevel=2)
        return D.copy()
    weights = D[ea, eb]
    ea = ea.astype(np.int64)
    eb = eb.astype(np.int64)

    rng = np.random.default_rng(rng_seed)
    attempts = swap_factor * n_edges
    picks = rng.integers(0, n_edges, size=(attempts, 2), dtype=np.int64)
    flips = rng.random(attempts) < 0.5
    adj = D != 0
    _swap_edges(ea, eb, adj, picks, flips)

    out = np.zeros_like(D)
    out[ea, eb] = weights
    out[eb, ea] = weights
    return out


def null_cohesiveness_samples(
    D: np.ndarray,
    cfg: NullEnsembleConfig = NullEnsembleConfig(),
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ThresholdReport:
    """Pool cluster cohesiveness over an ensemble of rewired copies of ``D``.

    Graph ``i`` is rewired with seed ``(cfg.rng_seed, i)`` so each member is
    reproducible on its own.
    """
    samples: list[float] = []
    per_graph: list[int] = []
    degenerate = 0
    for i in range(cfg.num_graphs):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", RewiringWarning)
            Dr = rewire_preserving_degrees(D, cfg.swap_factor, [cfg.rng_seed, i])
        degenerate += any(issubclass(w.category, RewiringWarning) for w in caught)
        dec = extract_all(Dr, tol, max_iter)
        samples.extend(c.cohesiveness for c in dec.clusters)
        per_graph.append(dec.m)
    if degenerate:
        warnings.warn(
            f"{degenerate} of {cfg.num_graphs} null graphs could not be rewired",
            RewiringWarning,
            stacklevel=2,
        )
    return ThresholdReport.from_samples(
        samples, cfg.std_multiplier, degenerate_rewires=degenerate, clusters_per_graph=per_graph
    )


def select_clusters(d: Decomposition, report: ThresholdReport) -> Decomposition:
    """Keep clusters whose cohesiveness strictly exceeds the threshold."""
    kept = [c for c in d.clusters if c.cohesiveness > report.threshold]
    dropped = [i for c in d.clusters if not c.cohesiveness > report.threshold for i in c.members.tolist()]
    return Decomposition(d.N, kept, sorted(d.unassigned + dropped))
