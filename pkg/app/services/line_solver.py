"""
Exact solver for collinear instances.

Two interval dynamic programs over the sorted points:
- Minimum-weight sink trees for every interval, rooted at either end
- Minimum-cost left-right assignment built from those trees

Both record their arg-min choices (smallest index on ties) so that an
optimal range assignment can be rebuilt and checked against the table value.
Indices are 0-based throughout.
"""

import logging
from typing import List, Optional

import numpy as np

from app.models import (
    CommGraph, Edge, Instance, LeftRightAssignment, LineSolution, MtipError,
    MtipTables, SinkTables, WeightedDigraph,
)
from app.services.interference_service import (
    build_comm_graph, build_weighted_digraph, covering_radii, edge_weight,
    is_strongly_connected, total_interference,
)

logger = logging.getLogger(__name__)

LEFT = 'left'
RIGHT = 'right'

# Larger than any reachable table value; keeps the tables int64
UNSET = np.iinfo(np.int64).max // 4


class SolverError(MtipError):
    """Custom exception for solver input and reconstruction errors"""
    pass


def compute_all_sinks(graph: WeightedDigraph) -> SinkTables:
    """
    Fill both sink tables by increasing interval length.

    For a cell [i, j] and split k the two recurrences share the term
    ``s_left[i, k] + s_right[k + 1, j]``; the left-rooted tree adds the edge
    j -> k, the right-rooted tree adds i -> k + 1. A whole diagonal is
    evaluated at once.

    Args:
        graph: Weighted digraph of a sorted 1D instance

    Returns:
        SinkTables with split choices
    """
    n = graph.n
    weights = graph.matrix
    s_left = np.full((n, n), UNSET, dtype=np.int64)
    s_right = np.full((n, n), UNSET, dtype=np.int64)
    choice_left = np.full((n, n), -1, dtype=np.int64)
    choice_right = np.full((n, n), -1, dtype=np.int64)
    diagonal = np.arange(n)
    s_left[diagonal, diagonal] = 0
    s_right[diagonal, diagonal] = 0

    for length in range(1, n):
        starts = np.arange(n - length)[:, None]
        ends = starts + length
        splits = starts + np.arange(length)[None, :]

        shared = s_left[starts, splits] + s_right[splits + 1, ends]
        left_values = shared + weights[ends, splits]
        right_values = shared + weights[starts, splits + 1]

        best_left = left_values.argmin(axis=1)
        best_right = right_values.argmin(axis=1)
        rows = np.arange(n - length)
        cols = rows + length
        s_left[rows, cols] = left_values[rows, best_left]
        s_right[rows, cols] = right_values[rows, best_right]
        choice_left[rows, cols] = rows + best_left
        choice_right[rows, cols] = rows + best_right + 1

    logger.debug(f"Computed sink tables for {n} points")
    return SinkTables(n=n, s_left=s_left, s_right=s_right,
                      choice_left=choice_left, choice_right=choice_right)


def reconstruct_sink_tree(tables: SinkTables, i: int, j: int, root_side: str) -> List[Edge]:
    """
    Edges of the minimum sink tree over [i, j] rooted at i (left) or j (right).

    Raises:
        SolverError: On an invalid interval or root side
    """
    if root_side not in (LEFT, RIGHT):
        raise SolverError(f"Root side must be '{LEFT}' or '{RIGHT}', got {root_side!r}")
    if not (0 <= i <= j < tables.n):
        raise SolverError(f"Invalid interval [{i}, {j}] for {tables.n} points")

    edges: List[Edge] = []
    pending = [(i, j, root_side)]
    while pending:
        a, b, side = pending.pop()
        if a == b:
            continue
        if side == LEFT:
            k = int(tables.choice_left[a, b])
            edges.append((b, k))
            pending.append((k + 1, b, RIGHT))
            pending.append((a, k, LEFT))
        else:
            k = int(tables.choice_right[a, b])
            edges.append((a, k))
            pending.append((k, b, RIGHT))
            pending.append((a, k - 1, LEFT))
    return edges


def delta(instance: Instance, i: int, j: int, k: int) -> int:
    """
    Extra coverage p_i pays to reach p_j rightwards when its left range
    already reaches p_k. ``k == i`` means left range 0.

    Raises:
        SolverError: Unless k <= i < j
    """
    if not (0 <= k <= i < j < instance.n):
        raise SolverError(f"delta requires k <= i < j, got i={i}, j={j}, k={k}")
    dist2 = instance.squared_distances
    if dist2[i, j] <= dist2[i, k]:
        return 0
    paid = 0 if k == i else edge_weight(instance, i, k)
    return edge_weight(instance, i, j) - paid


def compute_mtip_tables(instance: Instance, graph: WeightedDigraph, sinks: SinkTables) -> MtipTables:
    """
    Fill the left-right DP from the last row upwards.

    ``m[i, k]`` is the cheapest valid left-right assignment of points i..n-1
    given that p_i's left range reaches p_k. ``c[j]`` only reads rows t >= j,
    so it is computed once, right before row j - 1 needs it.
    """
    n = instance.n
    weights = graph.matrix
    dist2 = instance.squared_distances
    m = np.full((n, n), UNSET, dtype=np.int64)
    c = np.full(n, UNSET, dtype=np.int64)
    best_j = np.full((n, n), -1, dtype=np.int64)
    best_t = np.full(n, -1, dtype=np.int64)
    m[n - 1, :n] = 0

    for i in range(n - 2, -1, -1):
        j = i + 1
        ts = np.arange(j, n)
        candidates = sinks.s_right[j, j:] + weights[ts, j - 1] + m[ts, j - 1]
        pick = int(candidates.argmin())
        c[j] = candidates[pick]
        best_t[j] = j + pick

        js = np.arange(i + 1, n)
        ks = np.arange(i + 1)
        farther = dist2[i, js][None, :] > dist2[i, ks][:, None]
        extra = np.where(farther, weights[i, js][None, :] - weights[i, ks][:, None], 0)
        values = extra + (sinks.s_left[i, js - 1] + c[js])[None, :]
        pick_j = values.argmin(axis=1)
        m[i, :i + 1] = values[ks, pick_j]
        best_j[i, :i + 1] = js[pick_j]

    return MtipTables(n=n, m=m, c=c, best_j=best_j, best_t=best_t)


def reconstruct_edges(sinks: SinkTables, tables: MtipTables) -> List[Edge]:
    """Walk the witness pointers from (0, 0) and collect every tree edge"""
    edges: List[Edge] = []
    i, k = 0, 0
    while i < tables.n - 1:
        j = int(tables.best_j[i, k])
        t = int(tables.best_t[j])
        edges.append((i, j))
        edges.extend(reconstruct_sink_tree(sinks, i, j - 1, LEFT))
        edges.extend(reconstruct_sink_tree(sinks, j, t, RIGHT))
        edges.append((t, j - 1))
        i, k = t, j - 1
    return edges


def left_right_from_edges(instance: Instance, edges: List[Edge]) -> LeftRightAssignment:
    """Each point's left and right reach is its farthest edge target on that side"""
    dist2 = instance.squared_distances
    reach_left = np.zeros(instance.n)
    reach_right = np.zeros(instance.n)
    for p, q in edges:
        reach = reach_left if q < p else reach_right
        reach[p] = max(reach[p], dist2[p, q])
    return LeftRightAssignment(
        rho_left=tuple(covering_radii(reach_left).tolist()),
        rho_right=tuple(covering_radii(reach_right).tolist()),
    )


def left_right_graph(instance: Instance, lr: LeftRightAssignment) -> CommGraph:
    """Edges p_i -> p_j with j < i within rho_left(p_i), or j > i within rho_right(p_i)"""
    dist2 = instance.squared_distances
    left = np.asarray(lr.rho_left) ** 2
    right = np.asarray(lr.rho_right) ** 2
    index = np.arange(instance.n)
    to_left = (index[None, :] < index[:, None]) & (dist2 <= left[:, None])
    to_right = (index[None, :] > index[:, None]) & (dist2 <= right[:, None])
    covered = to_left | to_right
    return CommGraph(n=instance.n, adjacency=tuple(
        frozenset(np.flatnonzero(row).tolist()) for row in covered
    ))


def _coverage_counts(instance: Instance, radii: np.ndarray) -> np.ndarray:
    covered = instance.squared_distances <= (radii * radii)[:, None]
    return covered.sum(axis=1) - 1


def left_right_cost(instance: Instance, lr: LeftRightAssignment) -> int:
    """Sum over points of the larger of the two full coverage counts"""
    left = _coverage_counts(instance, np.asarray(lr.rho_left, dtype=float))
    right = _coverage_counts(instance, np.asarray(lr.rho_right, dtype=float))
    return int(np.maximum(left, right).sum())


def left_right_cost_prime(instance: Instance, lr: LeftRightAssignment) -> int:
    """Sum of the directional counts: points to the left within rho_left plus points to the right within rho_right"""
    return left_right_graph(instance, lr).edge_count


def solve_mtip_1d(instance: Instance, graph: Optional[WeightedDigraph] = None) -> LineSolution:
    """
    Exact minimum total interference for a sorted 1D instance.

    Args:
        instance: Validated 1D instance
        graph: Precomputed weighted digraph, built when omitted

    Returns:
        LineSolution whose assignment is valid and measures to ``total``

    Raises:
        SolverError: If the instance is not 1D or reconstruction disagrees with the table
    """
    if instance.dim != 1:
        raise SolverError(f"Exact solver needs a 1D instance, got dim={instance.dim}")
    n = instance.n
    if n == 1:
        lr = LeftRightAssignment(rho_left=(0.0,), rho_right=(0.0,))
        return LineSolution(assignment=lr.to_range_assignment(), total=0, left_right=lr, edges=())

    graph = graph or build_weighted_digraph(instance)
    sinks = compute_all_sinks(graph)
    tables = compute_mtip_tables(instance, graph, sinks)
    cost = int(tables.m[0, 0])

    edges = reconstruct_edges(sinks, tables)
    lr = left_right_from_edges(instance, edges)
    assignment = lr.to_range_assignment()
    measured = total_interference(instance, assignment)
    if measured != cost:
        logger.error(f"Reconstructed assignment measures {measured}, table value is {cost}")
        raise SolverError(f"Reconstruction mismatch: measured {measured}, expected {cost}")
    if not is_strongly_connected(build_comm_graph(instance, assignment)):
        logger.error(f"Reconstructed assignment on {n} points is not strongly connected")
        raise SolverError("Reconstructed assignment is not strongly connected")

    logger.info(f"Solved 1D instance with {n} points: total interference {cost}")
    return LineSolution(assignment=assignment, total=cost, left_right=lr, edges=tuple(edges))
