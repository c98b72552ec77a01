"""
Minimum-weight spanning arborescences.

Chu-Liu/Edmonds contraction on a dense cost matrix: every node takes its
cheapest incoming edge, cycles are contracted into single nodes with
reduced costs, the smaller problem is solved recursively and the cycles are
re-opened at the node where the chosen entering edge lands. Ties go to the
lowest source index.
"""

import logging
from typing import List, Tuple

import numpy as np

from app.models import Arborescence, Edge, MtipError, WeightedDigraph
from app.services.interference_service import invert_digraph

logger = logging.getLogger(__name__)


class ArborescenceError(MtipError):
    """Custom exception for arborescence errors (bad root, unreachable nodes)"""
    pass


def _find_cycles(parent: np.ndarray) -> List[List[int]]:
    """Cycles of the functional graph v -> parent[v]; the root has parent -1"""
    state = [0] * len(parent)  # 0 unseen, 1 on current walk, 2 done
    cycles = []
    for start in range(len(parent)):
        walk = []
        v = start
        while v != -1 and state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = int(parent[v])
        if v != -1 and state[v] == 1:
            cycles.append(walk[walk.index(v):])
        for u in walk:
            state[u] = 2
    return cycles


def _group_min(costs: np.ndarray, labels: np.ndarray, groups: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Minimum cost between every ordered pair of label groups.

    Returns the (groups, groups) minimum together with the original source
    and target node of each minimum.
    """
    n = len(labels)
    order = np.argsort(labels, kind='stable')
    starts = np.searchsorted(labels[order], np.arange(groups))
    ranked = costs[order][:, order]
    positions = np.arange(n)

    row_min = np.minimum.reduceat(ranked, starts, axis=0)
    row_hit = ranked == row_min[labels[order]]
    row_arg = np.minimum.reduceat(np.where(row_hit, positions[:, None], n), starts, axis=0)

    best = np.minimum.reduceat(row_min, starts, axis=1)
    col_hit = row_min == best[:, labels[order]]
    col_arg = np.minimum.reduceat(np.where(col_hit, positions[None, :], n), starts, axis=1)

    src = order[np.take_along_axis(row_arg, col_arg, axis=1)]
    dst = order[col_arg]
    return best, src, dst


def _edmonds(costs: np.ndarray, root: int) -> np.ndarray:
    n = costs.shape[0]
    costs = costs.astype(float, copy=True)
    np.fill_diagonal(costs, np.inf)
    costs[:, root] = np.inf

    parent = costs.argmin(axis=0)
    cheapest = costs[parent, np.arange(n)]
    parent[root] = -1
    cheapest[root] = 0.0

    unreachable = np.flatnonzero(np.isinf(cheapest))
    if len(unreachable):
        raise ArborescenceError(f"Node {int(unreachable[0])} is unreachable from root {root}")

    cycles = _find_cycles(parent)
    if not cycles:
        return parent

    labels = np.full(n, -1, dtype=np.int64)
    on_cycle = np.zeros(n, dtype=bool)
    for number, cycle in enumerate(cycles):
        labels[cycle] = number
        on_cycle[cycle] = True
    rest = np.flatnonzero(labels < 0)
    labels[rest] = len(cycles) + np.arange(len(rest))
    groups = len(cycles) + len(rest)

    reduced = costs - np.where(on_cycle, cheapest, 0.0)[None, :]
    reduced[labels[:, None] == labels[None, :]] = np.inf

    contracted, src, dst = _group_min(reduced, labels, groups)
    root_label = int(labels[root])
    sub_parent = _edmonds(contracted, root_label)

    result = parent.copy()
    entering = np.array([g for g in range(groups) if g != root_label], dtype=np.int64)
    from_groups = sub_parent[entering]
    result[dst[from_groups, entering]] = src[from_groups, entering]
    result[root] = -1
    return result


def solve_branching(costs: np.ndarray, root: int) -> np.ndarray:
    """
    Parent array of a minimum spanning arborescence for a cost matrix.

    ``np.inf`` marks a missing edge; the diagonal is ignored.

    Raises:
        ArborescenceError: If root is out of range or some node is unreachable
    """
    n = costs.shape[0]
    if not 0 <= root < n:
        raise ArborescenceError(f"Root {root} is outside a graph of {n} nodes")
    if n == 1:
        return np.array([-1], dtype=np.int64)
    return _edmonds(costs, root)


def min_arborescence(graph: WeightedDigraph, root: int) -> Arborescence:
    """
    Minimum-weight spanning out-arborescence rooted at ``root``.

    Args:
        graph: Complete weighted digraph
        root: Root node

    Returns:
        Arborescence with its weight under ``graph``

    Raises:
        ArborescenceError: If root is out of range or some node is unreachable
    """
    parent = solve_branching(graph.matrix, root)
    parents = tuple(None if p < 0 else int(p) for p in parent)
    weight = int(sum(graph.matrix[p, v] for v, p in enumerate(parents) if p is not None))
    logger.debug(f"Arborescence on {graph.n} nodes from root {root}: weight {weight}")
    return Arborescence(root=root, parent=parents, weight=weight)


def min_sink_tree(graph: WeightedDigraph, root: int) -> Tuple[List[Edge], int]:
    """Minimum sink tree: an arborescence of the inverted graph with its edges reversed"""
    tree = min_arborescence(invert_digraph(graph), root)
    edges = [(child, parent) for parent, child in tree.edges]
    return edges, graph.edge_list_weight(edges)
