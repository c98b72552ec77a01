"""
Grid-graph reduction gadget.

Each grid vertex becomes five points: a center on a lattice of spacing 17
and four connectors at distance 5 from it (the unit construction scaled by
5 so every threshold is an exact integer comparison). Distances that matter:

- connector to own center: 5
- facing connectors of adjacent vertices: 7
- connector to a neighbouring connector of its own set: 5 * sqrt(2)
- connector to an adjacent center: 12

A Hamiltonian cycle gives a valid assignment of total 9 per vertex and any
valid assignment of total 9 per vertex encodes a Hamiltonian cycle.
"""

import json
import logging
import numbers
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.models import Gadget, GadgetSet, GridGraph, Instance, MtipError, RangeAssignment
from app.services.instance_validator import (
    GridGraphError, InstanceValidator, grid_graph_from_dict, induced_grid_graph, validate_instance,
)
from app.services.interference_service import (
    build_comm_graph, coverage_matrix, is_strongly_connected,
)

logger = logging.getLogger(__name__)

SPACING = 17
CONNECTOR_OFFSET = 5
SHORT_RANGE = 5
LONG_RANGE = 7

# Squared thresholds: a long connector reaches the facing connector but not
# its own neighbouring connectors; a center reaching 12 hits adjacent centers.
LONG_MIN2 = LONG_RANGE ** 2
LONG_MAX2 = 2 * CONNECTOR_OFFSET ** 2
CENTER_MAX2 = 12 ** 2

SET_INTERFERENCE = 9

# Connector slot per lattice direction, matching GadgetSet order
DIRECTIONS = {
    (1, 0): 1,   # right
    (-1, 0): 2,  # left
    (0, 1): 3,   # top
    (0, -1): 4,  # bottom
}

BUNDLED_GRIDS_DIR = Path(__file__).resolve().parents[2] / 'data' / 'grids'


class ReductionError(MtipError):
    """Raised when an assignment or cycle does not fit the reduction; carries per-set diagnostics"""

    def __init__(self, message: str, diagnostics: Optional[List[Dict[str, Any]]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


def gen_grid_gadget(grid: GridGraph) -> Gadget:
    """
    Build the 5n-point instance of a grid graph.

    Point 5i is the center of vertex i, followed by its right, left, top and
    bottom connectors.

    Raises:
        GridGraphError: If the grid graph is invalid
    """
    grid = InstanceValidator().validate_grid_graph(grid.vertices, grid.edges)
    points = []
    vertex_map = []
    for index, (x, y) in enumerate(grid.vertices):
        cx, cy = SPACING * x, SPACING * y
        points.extend([
            (cx, cy),
            (cx + CONNECTOR_OFFSET, cy),
            (cx - CONNECTOR_OFFSET, cy),
            (cx, cy + CONNECTOR_OFFSET),
            (cx, cy - CONNECTOR_OFFSET),
        ])
        base = 5 * index
        vertex_map.append(GadgetSet(base, base + 1, base + 2, base + 3, base + 4))

    instance, _ = validate_instance(points, 2)
    logger.info(f"Generated gadget with {instance.n} points for {grid.n} grid vertices")
    return Gadget(grid=grid, instance=instance, vertex_map=tuple(vertex_map))


def validate_cycle(grid: GridGraph, cycle: Sequence[int]) -> List[int]:
    """
    Check that ``cycle`` visits every vertex once along grid edges.

    Raises:
        ReductionError: If it is not a Hamiltonian cycle of the grid graph
    """
    cycle = [int(v) for v in cycle]
    n = grid.n
    if n < 3 or len(cycle) != n:
        raise ReductionError(
            f"Cycle of length {len(cycle)} cannot be Hamiltonian on {n} vertices",
            [{'reason': 'length', 'length': len(cycle), 'vertices': n}],
        )
    if sorted(cycle) != list(range(n)):
        raise ReductionError(
            "Cycle must visit every vertex exactly once",
            [{'reason': 'not_a_permutation', 'cycle': cycle}],
        )
    missing = [
        [cycle[i], cycle[(i + 1) % n]] for i in range(n)
        if not grid.has_edge(cycle[i], cycle[(i + 1) % n])
    ]
    if missing:
        raise ReductionError(
            f"Cycle uses {len(missing)} pairs that are not grid edges",
            [{'reason': 'not_grid_edge', 'pair': pair} for pair in missing],
        )
    return cycle


def gadget_assignment_from_hamiltonian(gadget: Gadget, cycle: Sequence[int]) -> RangeAssignment:
    """
    Ranges for a directed Hamiltonian cycle: 5 everywhere except range 7
    on each vertex's connector facing its successor.

    Raises:
        ReductionError: If ``cycle`` is not a Hamiltonian cycle of the grid graph
    """
    cycle = validate_cycle(gadget.grid, cycle)
    ranges = [float(SHORT_RANGE)] * gadget.instance.n
    vertices = gadget.grid.vertices
    for position, v in enumerate(cycle):
        w = cycle[(position + 1) % len(cycle)]
        step = (vertices[w][0] - vertices[v][0], vertices[w][1] - vertices[v][1])
        ranges[gadget.vertex_map[v][DIRECTIONS[step]]] = float(LONG_RANGE)
    return RangeAssignment(ranges=tuple(ranges))


def set_sender_interference(gadget: Gadget, assignment: RangeAssignment) -> List[int]:
    """Sum of SI over the five points of each vertex set"""
    per_point = coverage_matrix(gadget.instance, assignment).sum(axis=1)
    return per_point.reshape(gadget.grid.n, 5).sum(axis=1).astype(int).tolist()


def extract_hamiltonian_cycle(gadget: Gadget, assignment: RangeAssignment) -> List[int]:
    """
    Recover a Hamiltonian cycle from a valid assignment of total 9n.

    Every set must have exactly one long connector (squared range in
    [49, 50)) and a center below 12. The set a long connector reaches is the
    successor of its vertex.

    Returns:
        Vertex sequence starting at vertex 0

    Raises:
        ReductionError: With per-set diagnostics when any condition fails
    """
    instance = gadget.instance
    grid = gadget.grid
    n = grid.n
    covered = coverage_matrix(instance, assignment)
    total = int(covered.sum())

    if not is_strongly_connected(build_comm_graph(instance, assignment)):
        raise ReductionError(
            "Assignment is not valid: communication graph is not strongly connected",
            [{'reason': 'not_strongly_connected', 'total': total}],
        )

    per_set = covered.sum(axis=1).reshape(n, 5).sum(axis=1)
    if total != SET_INTERFERENCE * n:
        diagnostics = [
            {'reason': 'set_interference', 'vertex': v, 'interference': int(si)}
            for v, si in enumerate(per_set) if si != SET_INTERFERENCE
        ]
        raise ReductionError(
            f"Total interference {total} differs from {SET_INTERFERENCE * n}", diagnostics
        )

    radii2 = assignment.radii ** 2
    successor = {}
    diagnostics = []
    for v, members in enumerate(gadget.vertex_map):
        if radii2[members.center] >= CENTER_MAX2:
            diagnostics.append({'reason': 'center_too_long', 'vertex': v,
                                'range': float(assignment.ranges[members.center])})
        long_connectors = [
            p for p in members.connectors if LONG_MIN2 <= radii2[p] < LONG_MAX2
        ]
        if len(long_connectors) != 1:
            diagnostics.append({'reason': 'long_connector_count', 'vertex': v,
                                'count': len(long_connectors)})
            continue
        reached = {gadget.owner_of(int(q)) for q in np.flatnonzero(covered[long_connectors[0]])} - {v}
        if len(reached) != 1:
            diagnostics.append({'reason': 'successor_count', 'vertex': v,
                                'reached': sorted(reached)})
            continue
        successor[v] = reached.pop()

    if diagnostics:
        raise ReductionError(
            f"{len({d['vertex'] for d in diagnostics})} vertex sets violate the one-long-connector rule",
            diagnostics,
        )

    cycle = [0]
    while len(cycle) <= n:
        following = successor[cycle[-1]]
        if following == 0:
            break
        cycle.append(following)
    if len(cycle) != n or successor[cycle[-1]] != 0:
        raise ReductionError(
            f"Long connectors form a cycle of length {len(cycle)} instead of {n}",
            [{'reason': 'not_hamiltonian', 'partial_cycle': cycle}],
        )
    return validate_cycle(grid, cycle)


def grid_from_document(data: Dict[str, Any], min_degree: int = 0) -> Tuple[GridGraph, Optional[List[int]]]:
    """Grid graph and its optional known ``cycle`` from grid-graph JSON"""
    grid = grid_graph_from_dict(data, min_degree=min_degree)
    cycle = data.get('cycle')
    if cycle is None:
        return grid, None
    if not isinstance(cycle, list) or not all(
        isinstance(v, numbers.Integral) and not isinstance(v, bool) for v in cycle
    ):
        raise GridGraphError(f"Grid cycle must be a list of vertex indices, got {cycle!r}")
    return grid, [int(v) for v in cycle]


def rectangular_grid(rows: int, columns: int) -> Tuple[GridGraph, List[int]]:
    """
    Full rows x columns grid graph with a Hamiltonian cycle.

    Vertices are numbered row by row. With an even row count the cycle runs
    along row 0, snakes back through columns 1.. and returns down column 0;
    otherwise the same walk is taken with rows and columns swapped.

    Raises:
        GridGraphError: Unless both sides are at least 2 and rows * columns is even
    """
    if rows < 2 or columns < 2 or (rows * columns) % 2:
        raise GridGraphError(
            f"A {rows}x{columns} grid has no Hamiltonian cycle; need sides >= 2 and an even vertex count"
        )
    if rows % 2 == 0:
        walk = [(x, 0) for x in range(columns)]
        for y in range(1, rows):
            xs = range(columns - 1, 0, -1) if y % 2 else range(1, columns)
            walk.extend((x, y) for x in xs)
        walk.extend((0, y) for y in range(rows - 1, 0, -1))
    else:
        walk = [(0, y) for y in range(rows)]
        for x in range(1, columns):
            ys = range(rows - 1, 0, -1) if x % 2 else range(1, rows)
            walk.extend((x, y) for y in ys)
        walk.extend((x, 0) for x in range(columns - 1, 0, -1))

    grid = induced_grid_graph([[x, y] for y in range(rows) for x in range(columns)])
    cycle = validate_cycle(grid, [y * columns + x for x, y in walk])
    return grid, cycle


def grid_document(grid: GridGraph, cycle: Optional[Sequence[int]] = None) -> Dict[str, Any]:
    """Grid-graph JSON as read by grid_from_document"""
    document = {
        'vertices': [list(v) for v in grid.vertices],
        'edges': [list(e) for e in grid.edges],
    }
    if cycle is not None:
        document['cycle'] = list(cycle)
    return document


def bundled_grid_names() -> List[str]:
    return sorted(path.stem for path in BUNDLED_GRIDS_DIR.glob('*.json'))


def load_bundled_grid(name: str) -> Tuple[GridGraph, Optional[List[int]]]:
    """
    Bundled fixture with a known Hamiltonian cycle, e.g. ``grid_2x2``.

    Raises:
        GridGraphError: If no fixture has that name
    """
    path = BUNDLED_GRIDS_DIR / f'{name}.json'
    if not path.is_file():
        raise GridGraphError(
            f"No bundled grid named {name!r}; available: {', '.join(bundled_grid_names())}"
        )
    with open(path) as handle:
        return grid_from_document(json.load(handle), min_degree=2)


def recover_gadget(instance: Instance) -> Optional[Gadget]:
    """Rebuild the gadget whose point layout ``instance`` reproduces, if any"""
    if instance.dim != 2 or instance.n == 0 or instance.n % 5:
        return None
    coords = instance.coordinates
    centers = coords[0::5]
    if np.any(centers % SPACING):
        return None
    vertices = [(int(x) // SPACING, int(y) // SPACING) for x, y in centers]
    try:
        gadget = gen_grid_gadget(InstanceValidator().validate_grid_graph(vertices))
    except MtipError:
        return None
    if gadget.instance.points != instance.points:
        return None
    return gadget
