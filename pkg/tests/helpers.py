"""Shared test utilities, including a brute-force spanning tree oracle
that is independent of the greedy implementation under test."""

from itertools import combinations

import numpy as np


def _is_spanning(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged = 0
    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            return False  # cycle
        parent[ri] = rj
        merged += 1
    return merged == n - 1


def spanning_tree_weights(weights):
    """Total weight of every labeled spanning tree of the complete graph."""
    n = len(weights)
    if n == 1:
        return [0.0]
    all_edges = list(combinations(range(n), 2))
    totals = []
    for subset in combinations(all_edges, n - 1):
        if _is_spanning(n, subset):
            totals.append(sum(weights[i][j] for i, j in subset))
    return totals


def min_spanning_weight(weights):
    return min(spanning_tree_weights(weights))


def random_point_matrix(rng, size, extent=100.0):
    """Distance matrix for ``size`` random points in a square field."""
    pts = rng.uniform(0.0, extent, size=(size, 2))
    return np.hypot(
        pts[:, 0][:, None] - pts[:, 0][None, :],
        pts[:, 1][:, None] - pts[:, 1][None, :],
    )
