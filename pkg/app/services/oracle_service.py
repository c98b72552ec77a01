"""
Exhaustive reference solvers for small inputs.

- Optimal range assignment over distance-realised candidate ranges
- Minimum sink tree and minimum arborescence over all parent choices

Every search counts the states it visits and gives up with
OracleBudgetExceeded instead of running unbounded.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from app.models import Instance, MtipError, OracleBudget, RangeAssignment, WeightedDigraph
from app.services.interference_service import (
    build_comm_graph, covering_radius, coverage_matrix, is_strongly_connected,
    total_interference,
)

logger = logging.getLogger(__name__)


class OracleBudgetExceeded(MtipError):
    """Raised when an exhaustive search would exceed its budget"""

    def __init__(self, message: str, limit: Optional[int] = None, size: Optional[int] = None):
        super().__init__(message)
        self.limit = limit
        self.size = size


class _StateCounter:
    def __init__(self, budget: OracleBudget):
        self.budget = budget
        self.states = 0

    def tick(self, amount: int = 1):
        self.states += amount
        if self.states > self.budget.max_states:
            raise OracleBudgetExceeded(
                f"Search exceeded {self.budget.max_states} states",
                limit=self.budget.max_states, size=self.states,
            )


def _check_size(n: int, budget: OracleBudget):
    if n > budget.max_points:
        raise OracleBudgetExceeded(
            f"Oracle accepts at most {budget.max_points} points, got {n}",
            limit=budget.max_points, size=n,
        )


def candidate_levels(instance: Instance, p: int) -> List[Tuple[int, float, int]]:
    """
    Distinct coverage levels of point p as (cost, squared radius, target mask),
    ascending. Level 0 covers nothing.
    """
    row = instance.squared_distances[p]
    levels = []
    for radius2 in np.unique(row):
        covered = (row <= radius2)
        covered[p] = False
        mask = 0
        for q in np.flatnonzero(covered):
            mask |= 1 << int(q)
        levels.append((int(covered.sum()), float(radius2), mask))
    return levels


def _closure(masks: List[int], start: int) -> int:
    reached = 1 << start
    frontier = reached
    while frontier:
        grown = 0
        bits = frontier
        while bits:
            low = bits & -bits
            grown |= masks[low.bit_length() - 1]
            bits ^= low
        frontier = grown & ~reached
        reached |= grown
    return reached


def _strongly_connected(out_masks: List[int]) -> bool:
    n = len(out_masks)
    full = (1 << n) - 1
    if _closure(out_masks, 0) != full:
        return False
    in_masks = [0] * n
    for p, mask in enumerate(out_masks):
        for q in range(n):
            if mask >> q & 1:
                in_masks[q] |= 1 << p
    return _closure(in_masks, 0) == full


def brute_force_optimal(instance: Instance,
                        budget: Optional[OracleBudget] = None) -> Tuple[RangeAssignment, int]:
    """
    Optimal valid range assignment by exhaustive search.

    Each point ranges over 0 and its distances to the other points. Totals
    are tried in increasing order and points are filled in index order with
    ascending ranges, so the first valid assignment found is optimal and is
    the lexicographically smallest optimal range vector.

    Args:
        instance: Instance with at most budget.max_points points
        budget: Size and state limits

    Returns:
        (assignment, OPT)

    Raises:
        OracleBudgetExceeded: If the instance or the search is too large
    """
    budget = budget or OracleBudget()
    n = instance.n
    _check_size(n, budget)
    if n == 1:
        return RangeAssignment(ranges=(0.0,)), 0

    levels = [candidate_levels(instance, p)[1:] for p in range(n)]
    counter = _StateCounter(budget)
    chosen = [0] * n
    masks = [0] * n

    def search(p: int, spent: int, limit: int) -> bool:
        counter.tick()
        if p == n:
            return _strongly_connected(masks)
        remaining = n - p - 1
        for level, (cost, _, mask) in enumerate(levels[p]):
            if spent + cost + remaining > limit:
                break
            chosen[p] = level
            masks[p] = mask
            if search(p + 1, spent + cost, limit):
                return True
        return False

    for limit in range(n, n * (n - 1) + 1):
        if search(0, 0, limit):
            break
    else:
        logger.error(f"Exhaustive search found no valid assignment on {n} points")
        raise MtipError("No valid assignment found; the full-range assignment should always be valid")

    assignment = RangeAssignment(ranges=tuple(
        covering_radius(levels[p][chosen[p]][1]) for p in range(n)
    ))
    measured = total_interference(instance, assignment)
    if measured != limit or not is_strongly_connected(build_comm_graph(instance, assignment)):
        logger.error(f"Oracle assignment measures {measured} against search total {limit}")
        raise MtipError(f"Oracle result failed re-verification (measured {measured}, expected {limit})")

    logger.info(f"Oracle optimum for {n} points: {limit} after {counter.states} states")
    return assignment, limit


def snap_assignment(instance: Instance, assignment: RangeAssignment) -> RangeAssignment:
    """Shrink every range to the distance of its farthest covered point"""
    covered = coverage_matrix(instance, assignment)
    dist2 = np.where(covered, instance.squared_distances, 0.0)
    return RangeAssignment(ranges=tuple(covering_radius(float(r)) for r in dist2.max(axis=1)))


def _min_parent_choice(costs: np.ndarray, root: int, budget: OracleBudget) -> int:
    """
    Cheapest way for every non-root node v to pick one other node u, paying
    ``costs[v, u]``, such that following the picks always ends at the root.
    """
    n = costs.shape[0]
    _check_size(n, budget)
    if not 0 <= root < n:
        raise MtipError(f"Root {root} is outside a graph of {n} nodes")
    if n == 1:
        return 0

    counter = _StateCounter(budget)
    nodes = [v for v in range(n) if v != root]
    options = {
        v: sorted((int(costs[v, u]), u) for u in range(n) if u != v)
        for v in nodes
    }
    cheapest_rest = [0] * (len(nodes) + 1)
    for position in range(len(nodes) - 1, -1, -1):
        cheapest_rest[position] = cheapest_rest[position + 1] + options[nodes[position]][0][0]

    pick = [-1] * n
    best = [None]

    def closes_cycle(v: int, u: int) -> bool:
        while u != root and u != -1:
            if u == v:
                return True
            u = pick[u]
        return False

    def search(position: int, spent: int):
        counter.tick()
        if position == len(nodes):
            if best[0] is None or spent < best[0]:
                best[0] = spent
            return
        v = nodes[position]
        for cost, u in options[v]:
            if best[0] is not None and spent + cost + cheapest_rest[position + 1] >= best[0]:
                break
            if closes_cycle(v, u):
                continue
            pick[v] = u
            search(position + 1, spent + cost)
            pick[v] = -1

    search(0, 0)
    return best[0]


def brute_force_min_sink_tree(graph: WeightedDigraph, root: int,
                              budget: Optional[OracleBudget] = None) -> int:
    """Minimum sink-tree weight over all parent functions (each non-root picks its out-neighbour)"""
    return _min_parent_choice(graph.matrix, root, budget or OracleBudget())


def brute_force_min_arborescence(graph: WeightedDigraph, root: int,
                                 budget: Optional[OracleBudget] = None) -> int:
    """Minimum arborescence weight over all parent functions (each non-root picks its in-neighbour)"""
    return _min_parent_choice(graph.matrix.T, root, budget or OracleBudget())
