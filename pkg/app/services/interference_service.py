"""
Interference model service.

Everything the solvers share:
- Communication graph of a range assignment (exact squared comparisons)
- Strong connectivity
- Sender / receiver / total interference
- Coverage-count edge weights and the weighted complete digraph
"""

import logging
import math
from typing import Dict, List, Sequence

import networkx as nx
import numpy as np

from app.models import CommGraph, Edge, Instance, MtipError, RangeAssignment, WeightedDigraph

logger = logging.getLogger(__name__)


class AssignmentError(MtipError):
    """Custom exception for range assignments that do not fit their instance"""
    pass


class GraphError(MtipError):
    """Custom exception for invalid graph queries"""
    pass


def covering_radius(dist2: float) -> float:
    """
    Smallest float r with r * r >= dist2.

    ``math.sqrt`` can round down by one ulp, which would leave the target
    uncovered under the squared comparison.
    """
    radius = math.sqrt(dist2)
    while radius * radius < dist2:
        radius = math.nextafter(radius, math.inf)
    return radius


def covering_radii(dist2: np.ndarray) -> np.ndarray:
    """Vectorised covering_radius"""
    radii = np.sqrt(dist2)
    short = radii * radii < dist2
    while short.any():
        radii[short] = np.nextafter(radii[short], np.inf)
        short = radii * radii < dist2
    return radii


def _check_lengths(instance: Instance, assignment: RangeAssignment):
    if len(assignment) != instance.n:
        raise AssignmentError(
            f"Assignment has {len(assignment)} ranges but instance has {instance.n} points"
        )


def coverage_matrix(instance: Instance, assignment: RangeAssignment) -> np.ndarray:
    """
    Boolean (n, n) matrix with ``[p, q]`` true iff p covers q and p != q.

    Raises:
        AssignmentError: If the assignment length does not match
    """
    _check_lengths(instance, assignment)
    radii = assignment.radii
    covered = instance.squared_distances <= (radii * radii)[:, None]
    np.fill_diagonal(covered, False)
    return covered


def build_comm_graph(instance: Instance, assignment: RangeAssignment) -> CommGraph:
    """Directed communication graph: p -> q iff dist(p, q)^2 <= range(p)^2"""
    covered = coverage_matrix(instance, assignment)
    adjacency = tuple(frozenset(np.flatnonzero(row).tolist()) for row in covered)
    return CommGraph(n=instance.n, adjacency=adjacency)


def to_networkx(graph: CommGraph) -> nx.DiGraph:
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(graph.n))
    digraph.add_edges_from(graph.edges)
    return digraph


def is_strongly_connected(graph: CommGraph) -> bool:
    """True iff every ordered pair is joined by a directed path; one node counts as connected"""
    if graph.n <= 1:
        return True
    return nx.is_strongly_connected(to_networkx(graph))


def is_valid_assignment(instance: Instance, assignment: RangeAssignment) -> bool:
    return is_strongly_connected(build_comm_graph(instance, assignment))


def sender_interference(instance: Instance, assignment: RangeAssignment, p: int) -> int:
    """SI(p): number of other points inside p's range"""
    return int(coverage_matrix(instance, assignment)[p].sum())


def receiver_interference(instance: Instance, assignment: RangeAssignment, p: int) -> int:
    """RI(p): number of other points whose range covers p"""
    return int(coverage_matrix(instance, assignment)[:, p].sum())


def total_interference(instance: Instance, assignment: RangeAssignment) -> int:
    """Edge count of the communication graph"""
    return int(coverage_matrix(instance, assignment).sum())


def interference_profile(instance: Instance, assignment: RangeAssignment) -> Dict[str, List[int]]:
    """Per-point SI and RI lists"""
    covered = coverage_matrix(instance, assignment)
    return {
        'sender': covered.sum(axis=1).astype(int).tolist(),
        'receiver': covered.sum(axis=0).astype(int).tolist(),
    }


def verify_certificate(instance: Instance, assignment: RangeAssignment, bound: int) -> bool:
    """
    Membership check for the decision version: the assignment is valid and
    its total interference is at most ``bound``.
    """
    covered = coverage_matrix(instance, assignment)
    total = int(covered.sum())
    if total > bound:
        logger.debug(f"Certificate rejected: total {total} exceeds bound {bound}")
        return False
    return is_strongly_connected(build_comm_graph(instance, assignment))


def edge_weight(instance: Instance, p: int, q: int) -> int:
    """
    Coverage count w(p, q) = |{z != p : dist(p, z) <= dist(p, q)}|.

    Raises:
        GraphError: If p == q or an index is out of range
    """
    if p == q:
        raise GraphError(f"Edge weight undefined for a self-loop at {p}")
    if not (0 <= p < instance.n and 0 <= q < instance.n):
        raise GraphError(f"Edge ({p}, {q}) is outside an instance of {instance.n} points")
    row = instance.squared_distances[p]
    return int(np.count_nonzero(row <= row[q])) - 1


def build_weighted_digraph(instance: Instance) -> WeightedDigraph:
    """Complete digraph of coverage counts, one sorted distance row per source"""
    dist2 = instance.squared_distances
    weights = np.zeros((instance.n, instance.n), dtype=np.int64)
    for p in range(instance.n):
        ordered = np.sort(dist2[p])
        weights[p] = np.searchsorted(ordered, dist2[p], side='right') - 1
    np.fill_diagonal(weights, 0)
    logger.debug(f"Built weighted digraph on {instance.n} points")
    return WeightedDigraph(n=instance.n, matrix=weights)


def invert_digraph(graph: WeightedDigraph) -> WeightedDigraph:
    """w'(p, q) = w(q, p)"""
    return WeightedDigraph(n=graph.n, matrix=graph.matrix.T.copy())


def assignment_from_edges(instance: Instance, edges: Sequence[Edge]) -> RangeAssignment:
    """
    Give every source the covering radius of its farthest edge target and
    every other point range 0.
    """
    dist2 = instance.squared_distances
    reach = np.zeros(instance.n)
    for p, q in edges:
        reach[p] = max(reach[p], dist2[p, q])
    return RangeAssignment(ranges=tuple(covering_radii(reach).tolist()))
