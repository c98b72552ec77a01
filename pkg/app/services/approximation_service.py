"""
Two-approximation for planar (and collinear) instances.

The broadcast part gives one root a range covering every point; the sink
part routes every other point to the root along a minimum sink tree of the
coverage-count digraph. Taking the larger range per point keeps both trees,
so the graph is strongly connected and costs at most twice the optimum.
"""

import logging
from typing import List, Optional, Tuple, Union

import numpy as np

from app.models import ApproxResult, Edge, Instance, MtipError, RangeAssignment, WeightedDigraph
from app.services.arborescence_service import min_sink_tree
from app.services.interference_service import (
    assignment_from_edges, build_comm_graph, build_weighted_digraph,
    covering_radius, is_strongly_connected, total_interference,
)

logger = logging.getLogger(__name__)

POLICY_FIRST = 'first'
POLICY_BEST = 'best'
FIXED_PREFIX = 'fixed:'

RootPolicy = Union[str, int]


class ApproximationError(MtipError):
    """Custom exception for approximation errors (bad root or root policy)"""
    pass


def parse_root_policy(policy: RootPolicy, n: int) -> Optional[int]:
    """
    Resolve a root policy to a root index; None means try every root.

    Accepts ``first``, ``best``, ``fixed:<i>`` or a bare integer.

    Raises:
        ApproximationError: On an unknown policy or an out-of-range root
    """
    if isinstance(policy, int) and not isinstance(policy, bool):
        root = policy
    elif policy == POLICY_BEST:
        return None
    elif policy == POLICY_FIRST:
        root = 0
    elif isinstance(policy, str) and policy.startswith(FIXED_PREFIX):
        try:
            root = int(policy[len(FIXED_PREFIX):])
        except ValueError:
            raise ApproximationError(f"Invalid fixed root in policy {policy!r}")
    else:
        raise ApproximationError(
            f"Unknown root policy {policy!r}; use first, best or fixed:<index>"
        )
    if not 0 <= root < n:
        raise ApproximationError(f"Root {root} is outside an instance of {n} points")
    return root


def broadcast_edges(instance: Instance, root: int) -> List[Edge]:
    return [(root, q) for q in range(instance.n) if q != root]


def solve_mtip1(instance: Instance, root: int) -> RangeAssignment:
    """Root reaches its farthest point, every other point gets range 0"""
    if not 0 <= root < instance.n:
        raise ApproximationError(f"Root {root} is outside an instance of {instance.n} points")
    ranges = [0.0] * instance.n
    ranges[root] = covering_radius(float(instance.squared_distances[root].max()))
    return RangeAssignment(ranges=tuple(ranges))


def solve_mtip2(instance: Instance, root: int,
                graph: Optional[WeightedDigraph] = None) -> Tuple[RangeAssignment, int]:
    """
    Each non-root point reaches its target in a minimum sink tree to ``root``.

    Returns:
        (assignment, total) where total equals the sink tree weight
    """
    assignment, weight, _ = _sink_part(instance, root, graph)
    return assignment, weight


def _sink_part(instance: Instance, root: int,
               graph: Optional[WeightedDigraph]) -> Tuple[RangeAssignment, int, List[Edge]]:
    if not 0 <= root < instance.n:
        raise ApproximationError(f"Root {root} is outside an instance of {instance.n} points")
    graph = graph or build_weighted_digraph(instance)
    edges, weight = min_sink_tree(graph, root)
    return assignment_from_edges(instance, edges), weight, edges


def combine_assignments(first: RangeAssignment, second: RangeAssignment) -> RangeAssignment:
    """Pointwise maximum of two assignments"""
    return RangeAssignment(ranges=tuple(np.maximum(first.radii, second.radii).tolist()))


def approximate_for_root(instance: Instance, root: int,
                         graph: Optional[WeightedDigraph] = None) -> ApproxResult:
    """Combined broadcast/sink assignment for one root, measured afresh"""
    graph = graph or build_weighted_digraph(instance)
    broadcast = solve_mtip1(instance, root)
    sink, sink_weight, sink_edges = _sink_part(instance, root, graph)
    combined = combine_assignments(broadcast, sink)
    total = total_interference(instance, combined)
    return ApproxResult(
        assignment=combined,
        total=total,
        root=root,
        broadcast=instance.n - 1,
        sink=sink_weight,
        broadcast_edges=tuple(broadcast_edges(instance, root)),
        sink_edges=tuple(sink_edges),
    )


def approx_mtip_2d(instance: Instance, root_policy: RootPolicy = POLICY_BEST) -> ApproxResult:
    """
    Approximate minimum total interference assignment.

    Under the ``best`` policy every root is tried and the smallest total
    wins (lowest root on ties). The root's broadcast range covers every
    point, so a root's total is n - 1 plus its sink tree weight and only the
    winner needs to be materialised.

    Args:
        instance: 1D or 2D instance
        root_policy: ``first``, ``best``, ``fixed:<i>`` or an index

    Returns:
        ApproxResult with a strongly connected assignment

    Raises:
        ApproximationError: On an invalid policy, or if the result is not strongly connected
    """
    n = instance.n
    root = parse_root_policy(root_policy, n)
    graph = build_weighted_digraph(instance)

    if root is None:
        best_root, best_weight = 0, None
        for candidate in range(n):
            _, weight = min_sink_tree(graph, candidate)
            logger.debug(f"Root {candidate}: sink weight {weight}")
            if best_weight is None or weight < best_weight:
                best_root, best_weight = candidate, weight
        root = best_root

    result = approximate_for_root(instance, root, graph)
    if not is_strongly_connected(build_comm_graph(instance, result.assignment)):
        logger.error(f"Combined assignment for root {root} is not strongly connected")
        raise ApproximationError(f"Combined assignment for root {root} is not strongly connected")

    logger.info(
        f"Approximated {instance.dim}D instance with {n} points: total {result.total} "
        f"(root {root}, broadcast {result.broadcast}, sink {result.sink})"
    )
    return result
