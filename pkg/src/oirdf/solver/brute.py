"""Exhaustive oracle: minimum over all 3^(nm) labelings.

Adjacency comes from ``core.neighbors``; nothing here is shared with the
profile DP.
"""

from __future__ import annotations

import numpy as np

from ..core import CylinderSpec, Labeling, neighbors
from . import _kernels as K


def neighbour_table(spec: CylinderSpec) -> tuple[np.ndarray, np.ndarray]:
    N = spec.order
    nbr = np.zeros((N, 4), dtype=np.int64)
    deg = np.zeros(N, dtype=np.int64)
    for i, j in spec.vertices():
        v = i * spec.m + j
        adj = sorted(a * spec.m + b for a, b in neighbors(spec, i, j))
        deg[v] = len(adj)
        nbr[v, : len(adj)] = adj
    return nbr, deg


def enumerate_min(spec: CylinderSpec) -> tuple[int, Labeling, int]:
    nbr, deg = neighbour_table(spec)
    best, lab, found, checked = K.brute_force_min(spec.n, spec.m, nbr, deg, 2 * spec.order + 1)
    # all-ones is always an OIRDF
    assert found
    return int(best), Labeling(spec, lab.reshape(spec.n, spec.m)), int(checked)
