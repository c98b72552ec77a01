"""
Domain types for the interference solvers.

Plain value objects shared by every service. Indices are 0-based and refer to
the order of ``Instance.points`` (ascending coordinate order for 1D instances).
Types written to report files carry a ``to_dict``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np


Edge = Tuple[int, int]


class MtipError(Exception):
    """Base exception for every solver, generator and command error"""
    pass


@dataclass(frozen=True)
class Instance:
    """A validated set of distinct points in 1D or 2D"""
    dim: int
    points: Tuple[Tuple[float, ...], ...]

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def coordinates(self) -> np.ndarray:
        """Points as an (n, dim) float array"""
        return np.asarray(self.points, dtype=float).reshape(self.n, self.dim)

    @cached_property
    def squared_distances(self) -> np.ndarray:
        """Pairwise squared Euclidean distances, shape (n, n)"""
        coords = self.coordinates
        diff = coords[:, None, :] - coords[None, :, :]
        return (diff ** 2).sum(axis=2)

    def to_dict(self) -> Dict[str, Any]:
        return {'dim': self.dim, 'points': [list(p) for p in self.points]}

    def __repr__(self):
        return f'<Instance dim={self.dim} n={self.n}>'


@dataclass(frozen=True)
class RangeAssignment:
    """Per-point transmission radius, index-aligned with Instance.points"""
    ranges: Tuple[float, ...]

    def __len__(self):
        return len(self.ranges)

    @property
    def radii(self) -> np.ndarray:
        return np.asarray(self.ranges, dtype=float)

    def to_dict(self) -> Dict[str, Any]:
        return {'ranges': list(self.ranges)}


@dataclass(frozen=True)
class CommGraph:
    """Directed communication graph induced by a range assignment"""
    n: int
    adjacency: Tuple[frozenset, ...]

    @property
    def edges(self) -> List[Edge]:
        return [(p, q) for p in range(self.n) for q in sorted(self.adjacency[p])]

    @property
    def edge_count(self) -> int:
        return sum(len(targets) for targets in self.adjacency)

    def out_degree(self, p: int) -> int:
        return len(self.adjacency[p])

    def in_degree(self, p: int) -> int:
        return sum(1 for targets in self.adjacency if p in targets)


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """
    Complete digraph with integer edge weights.

    ``matrix[p, q]`` is the weight of p -> q; the diagonal is 0 and carries
    no edge.
    """
    n: int
    matrix: np.ndarray

    def weight(self, p: int, q: int) -> int:
        return int(self.matrix[p, q])

    def induced(self, indices: Sequence[int]) -> 'WeightedDigraph':
        """Sub-digraph on ``indices`` keeping the original weights"""
        idx = np.asarray(indices, dtype=int)
        return WeightedDigraph(n=len(idx), matrix=self.matrix[np.ix_(idx, idx)].copy())

    def edge_list_weight(self, edges: Sequence[Edge]) -> int:
        return int(sum(self.matrix[p, q] for p, q in edges))

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.matrix, other.matrix)


@dataclass(eq=False)
class SinkTables:
    """
    Minimum sink-tree weights over every interval [i, j].

    ``s_left[i, j]`` is rooted at point i, ``s_right[i, j]`` at point j.
    Cells with i > j are unused. ``choice_*`` hold the minimising split k.
    """
    n: int
    s_left: np.ndarray
    s_right: np.ndarray
    choice_left: np.ndarray
    choice_right: np.ndarray


@dataclass(eq=False)
class MtipTables:
    """
    Left-right DP tables: ``m[i, k]`` for k <= i, the auxiliary ``c[j]``,
    and witnesses ``best_j[i, k]`` / ``best_t[j]``.
    """
    n: int
    m: np.ndarray
    c: np.ndarray
    best_j: np.ndarray
    best_t: np.ndarray


@dataclass(frozen=True)
class LeftRightAssignment:
    """Independent left and right reach per point (1D only)"""
    rho_left: Tuple[float, ...]
    rho_right: Tuple[float, ...]

    def to_range_assignment(self) -> RangeAssignment:
        return RangeAssignment(ranges=tuple(
            max(left, right) for left, right in zip(self.rho_left, self.rho_right)
        ))

    def to_dict(self) -> Dict[str, Any]:
        return {'rho_left': list(self.rho_left), 'rho_right': list(self.rho_right)}


@dataclass(frozen=True)
class LineSolution:
    """Exact 1D optimum with its witnesses"""
    assignment: RangeAssignment
    total: int
    left_right: LeftRightAssignment
    edges: Tuple[Edge, ...]


@dataclass(frozen=True)
class Arborescence:
    """Spanning out-arborescence; ``parent[root]`` is None"""
    root: int
    parent: Tuple[Optional[int], ...]
    weight: int

    @property
    def edges(self) -> List[Edge]:
        return [(p, v) for v, p in enumerate(self.parent) if p is not None]


@dataclass(frozen=True)
class ApproxResult:
    """Combined broadcast/sink assignment for one root"""
    assignment: RangeAssignment
    total: int
    root: int
    broadcast: int
    sink: int
    broadcast_edges: Tuple[Edge, ...] = ()
    sink_edges: Tuple[Edge, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'root': self.root,
            'total': self.total,
            'broadcast': self.broadcast,
            'sink': self.sink,
            'ranges': list(self.assignment.ranges),
        }


@dataclass(frozen=True)
class OracleBudget:
    """Size guard for the exhaustive solvers"""
    max_points: int = 7
    max_states: int = 10 ** 8


@dataclass(frozen=True)
class GridGraph:
    """Vertices on the integer lattice, edges between unit-distance pairs"""
    vertices: Tuple[Tuple[int, int], ...]
    edges: Tuple[Edge, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def neighbours(self) -> Tuple[frozenset, ...]:
        adjacent: List[set] = [set() for _ in self.vertices]
        for a, b in self.edges:
            adjacent[a].add(b)
            adjacent[b].add(a)
        return tuple(frozenset(s) for s in adjacent)

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.neighbours[a]


class GadgetSet(tuple):
    """Point indices of one vertex gadget: center and four connectors"""
    __slots__ = ()

    def __new__(cls, center, right, left, top, bottom):
        return super().__new__(cls, (center, right, left, top, bottom))

    center = property(lambda self: self[0])
    right = property(lambda self: self[1])
    left = property(lambda self: self[2])
    top = property(lambda self: self[3])
    bottom = property(lambda self: self[4])

    @property
    def connectors(self) -> Tuple[int, int, int, int]:
        return self[1], self[2], self[3], self[4]


@dataclass(frozen=True)
class Gadget:
    """The 5-points-per-vertex point set built from a grid graph"""
    grid: GridGraph
    instance: Instance
    vertex_map: Tuple[GadgetSet, ...]

    def owner_of(self, point: int) -> int:
        """Grid vertex whose gadget contains ``point``"""
        return point // 5


@dataclass
class RunReport:
    """Summary printed by every command that emits an assignment"""
    command: str
    n: int
    dim: int
    claimed_total: Optional[int]
    measured_total: int
    duration_seconds: float
    strongly_connected: bool
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def cost_matches_measured(self) -> bool:
        return self.claimed_total is None or self.claimed_total == self.measured_total

    def to_dict(self) -> Dict[str, Any]:
        report = {
            'command': self.command,
            'instance': {'n': self.n, 'dim': self.dim},
            'totals': {'claimed': self.claimed_total, 'measured': self.measured_total},
            'duration_seconds': round(self.duration_seconds, 6),
            'verification': {
                'strongly_connected': self.strongly_connected,
                'cost_matches_measured': self.cost_matches_measured,
            },
        }
        report.update(self.extra)
        return report
