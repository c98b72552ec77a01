"""
Instance and assignment validation service.

Turns raw JSON-shaped input into the value types used by the solvers:
- Point list checks (non-empty, finite, distinct)
- Canonical ordering of 1D instances with an index permutation
- Range assignment checks against an instance
- Grid-graph checks for the reduction gadget
"""

import logging
import math
import numbers
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.models import GridGraph, Instance, MtipError, RangeAssignment

logger = logging.getLogger(__name__)


class InstanceValidationError(MtipError):
    """Custom exception for instance and input validation errors"""
    pass


class GridGraphError(InstanceValidationError):
    """Raised when a grid graph breaks the lattice rules"""
    pass


class InstanceValidator:
    """
    Validates raw point lists, assignments and grid graphs.

    Coordinates are compared exactly; there is no tolerance anywhere.
    """

    def validate_dimension(self, dim: Any) -> bool:
        """
        Validate the instance dimension.

        Args:
            dim: Declared dimension

        Returns:
            True if dim is 1 or 2

        Raises:
            InstanceValidationError: If dim is anything else
        """
        if isinstance(dim, bool) or not isinstance(dim, int) or dim not in (1, 2):
            raise InstanceValidationError(f"Dimension must be 1 or 2, got {dim!r}")
        return True

    def validate_coordinates(self, points: Sequence[Sequence[float]], dim: int) -> bool:
        """
        Validate shape and finiteness of every coordinate.

        Raises:
            InstanceValidationError: On an empty list, a wrong arity or a non-finite value
        """
        if not points:
            raise InstanceValidationError("Point list is empty")

        for index, point in enumerate(points):
            if len(point) != dim:
                raise InstanceValidationError(
                    f"Point {index} has {len(point)} coordinates, expected {dim}"
                )
            for value in point:
                if not _is_number(value):
                    raise InstanceValidationError(f"Point {index} has a non-numeric coordinate: {value!r}")
                if not math.isfinite(value):
                    raise InstanceValidationError(f"Point {index} has a non-finite coordinate: {value!r}")
        return True

    def validate_distinct(self, points: Sequence[Tuple[float, ...]]) -> bool:
        """
        Validate that no two points coincide.

        Raises:
            InstanceValidationError: If a duplicate point exists
        """
        seen: Dict[Tuple[float, ...], int] = {}
        for index, point in enumerate(points):
            if point in seen:
                raise InstanceValidationError(
                    f"Duplicate point {list(point)} at indices {seen[point]} and {index}"
                )
            seen[point] = index
        return True

    def validate_instance(self, raw_points: Sequence[Any], dim: int) -> Tuple[Instance, List[int]]:
        """
        Validate and normalize a raw point list.

        1D points may be given as bare numbers or one-element lists. 1D
        instances are sorted ascending; ``permutation[original] = sorted``
        lets callers map solver output back to the input order. 2D
        instances keep their order and get the identity permutation.

        Args:
            raw_points: Coordinates as read from JSON
            dim: 1 or 2

        Returns:
            (Instance, permutation)

        Raises:
            InstanceValidationError: If any check fails
        """
        self.validate_dimension(dim)
        if raw_points is None:
            raise InstanceValidationError("Point list is empty")
        if not isinstance(raw_points, (list, tuple)):
            raise InstanceValidationError(f"Points must be a list, got {type(raw_points).__name__}")

        points = []
        for index, p in enumerate(raw_points):
            if isinstance(p, (list, tuple)):
                points.append(tuple(p))
            elif dim == 1:
                points.append((p,))
            else:
                raise InstanceValidationError(f"Point {index} must be a list of {dim} numbers, got {p!r}")
        self.validate_coordinates(points, dim)
        points = [tuple(float(v) for v in p) for p in points]
        self.validate_distinct(points)

        if dim == 1:
            order = sorted(range(len(points)), key=lambda i: points[i][0])
            permutation = [0] * len(points)
            for position, original in enumerate(order):
                permutation[original] = position
            points = [points[i] for i in order]
        else:
            permutation = list(range(len(points)))

        logger.debug(f"Validated {dim}D instance with {len(points)} points")
        return Instance(dim=dim, points=tuple(points)), permutation

    def validate_assignment(self, instance: Instance, assignment: RangeAssignment) -> bool:
        """
        Validate that an assignment fits an instance.

        Raises:
            InstanceValidationError: On a length mismatch or a negative/non-finite range
        """
        if len(assignment) != instance.n:
            raise InstanceValidationError(
                f"Assignment has {len(assignment)} ranges but instance has {instance.n} points"
            )
        for index, radius in enumerate(assignment.ranges):
            if not math.isfinite(radius) or radius < 0:
                raise InstanceValidationError(f"Range {index} must be finite and >= 0, got {radius!r}")
        return True

    def validate_grid_graph(self, vertices: Sequence[Sequence[int]],
                            edges: Optional[Sequence[Sequence[int]]] = None,
                            min_degree: int = 0) -> GridGraph:
        """
        Validate a grid graph; derive its edges when none are given.

        Edges must join exactly the unit-distance vertex pairs.

        Args:
            vertices: Integer lattice coordinates
            edges: Index pairs, or None to derive them
            min_degree: Required minimum vertex degree (2 for cycle round trips)

        Returns:
            GridGraph

        Raises:
            GridGraphError: If the graph breaks the grid rules
        """
        if not isinstance(vertices, (list, tuple)):
            raise GridGraphError(f"Grid vertices must be a list, got {type(vertices).__name__}")
        if not vertices:
            raise GridGraphError("Grid graph has no vertices")

        lattice = []
        for index, vertex in enumerate(vertices):
            if not _is_int_pair(vertex):
                raise GridGraphError(f"Grid vertex {index} must be two integers, got {vertex!r}")
            lattice.append((int(vertex[0]), int(vertex[1])))
        self.validate_distinct(lattice)

        unit_pairs = _unit_distance_pairs(lattice)
        if edges is None:
            normalized = unit_pairs
        else:
            if not isinstance(edges, (list, tuple)):
                raise GridGraphError(f"Grid edges must be a list, got {type(edges).__name__}")
            normalized = set()
            for edge in edges:
                if not _is_int_pair(edge):
                    raise GridGraphError(f"Grid edge must be a pair of vertex indices, got {edge!r}")
                a, b = int(edge[0]), int(edge[1])
                if not (0 <= a < len(lattice) and 0 <= b < len(lattice)) or a == b:
                    raise GridGraphError(f"Grid edge {[a, b]} has an invalid endpoint")
                pair = (min(a, b), max(a, b))
                if pair not in unit_pairs:
                    raise GridGraphError(
                        f"Grid edge {list(pair)} joins vertices that are not at distance 1"
                    )
                normalized.add(pair)
            missing = unit_pairs - normalized
            if missing:
                raise GridGraphError(
                    f"Grid graph is not induced: unit-distance pair {list(min(missing))} has no edge"
                )

        grid = GridGraph(vertices=tuple(lattice), edges=tuple(sorted(normalized)))
        if min_degree:
            for index, adjacent in enumerate(grid.neighbours):
                if len(adjacent) < min_degree:
                    raise GridGraphError(
                        f"Grid vertex {index} has degree {len(adjacent)}, at least {min_degree} required"
                    )
        return grid


def _is_number(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _is_index(value: Any) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _is_int_pair(value: Any) -> bool:
    return isinstance(value, (list, tuple)) and len(value) == 2 and all(_is_index(v) for v in value)


def _unit_distance_pairs(lattice: Sequence[Tuple[int, int]]) -> set:
    position = {vertex: index for index, vertex in enumerate(lattice)}
    pairs = set()
    for index, (x, y) in enumerate(lattice):
        for neighbour in ((x + 1, y), (x, y + 1)):
            other = position.get(neighbour)
            if other is not None:
                pairs.add((min(index, other), max(index, other)))
    return pairs


def validate_instance(raw_points: Sequence[Any], dim: int) -> Tuple[Instance, List[int]]:
    """Convenience wrapper around InstanceValidator.validate_instance"""
    return InstanceValidator().validate_instance(raw_points, dim)


def instance_from_dict(data: Dict[str, Any]) -> Tuple[Instance, List[int]]:
    """Build an instance from its JSON object ``{"dim": .., "points": [..]}``"""
    if not isinstance(data, dict) or 'points' not in data:
        raise InstanceValidationError("Instance JSON must be an object with 'dim' and 'points'")
    return validate_instance(data['points'], data.get('dim'))


def assignment_from_dict(data: Dict[str, Any], instance: Instance) -> RangeAssignment:
    """Build and validate an assignment from ``{"ranges": [..]}``"""
    if not isinstance(data, dict) or 'ranges' not in data:
        raise InstanceValidationError("Assignment JSON must be an object with 'ranges'")
    ranges = data['ranges']
    if not isinstance(ranges, (list, tuple)):
        raise InstanceValidationError(f"Assignment ranges must be a list, got {type(ranges).__name__}")
    for index, radius in enumerate(ranges):
        if not _is_number(radius):
            raise InstanceValidationError(f"Assignment ranges must be numbers: range {index} is {radius!r}")
    assignment = RangeAssignment(ranges=tuple(float(r) for r in ranges))
    InstanceValidator().validate_assignment(instance, assignment)
    return assignment


def grid_graph_from_dict(data: Dict[str, Any], min_degree: int = 0) -> GridGraph:
    """Build a grid graph from ``{"vertices": [..], "edges": [..]}``; edges are optional"""
    if not isinstance(data, dict) or 'vertices' not in data:
        raise GridGraphError("Grid-graph JSON must be an object with 'vertices'")
    return InstanceValidator().validate_grid_graph(data['vertices'], data.get('edges'), min_degree)


def induced_grid_graph(vertices: Sequence[Sequence[int]]) -> GridGraph:
    """Grid graph on ``vertices`` with an edge between every unit-distance pair"""
    return InstanceValidator().validate_grid_graph(vertices)
