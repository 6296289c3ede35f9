"""Two-step diffusion of the restricted visibility graph."""

from __future__ import annotations

import numpy as np


def diffuse(A_n: np.ndarray, add_direct: bool = False) -> np.ndarray:
    """Count length-2 paths between every pair of points.

    Returns ``A_n @ A_n`` in exact integer arithmetic with the diagonal set to
    zero. With ``add_direct`` the direct edges of ``A_n`` get one extra unit
    each (an experimental variant, off by default).
    """
    A_n = np.asarray(A_n, dtype=np.int64)
    if A_n.ndim != 2 or A_n.shape[0] != A_n.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A_n.shape}")
    D = A_n @ A_n
    if add_direct:
        D = D + A_n
    np.fill_diagonal(D, 0)
    return D
