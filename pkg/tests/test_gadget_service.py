"""
Tests for the grid-graph reduction gadget

Covers both directions of the reduction:
- Hamiltonian cycle -> assignment of total 9n
- Assignment of total 9n -> Hamiltonian cycle, with structured failures
"""

import numpy as np
import pytest

from app.models import GridGraph, RangeAssignment
from app.services.approximation_service import approx_mtip_2d
from app.services.gadget_service import (
    ReductionError, bundled_grid_names, extract_hamiltonian_cycle,
    gadget_assignment_from_hamiltonian, gen_grid_gadget, grid_document, grid_from_document,
    load_bundled_grid, recover_gadget, rectangular_grid, set_sender_interference, validate_cycle,
)
from app.services.instance_generator import gen_random_plane
from app.services.instance_validator import GridGraphError, induced_grid_graph
from app.services.interference_service import (
    build_comm_graph, is_strongly_connected, total_interference,
)


def grid(vertices):
    return induced_grid_graph(vertices)


@pytest.fixture
def square():
    """2x2 grid with the cycle around it"""
    return load_bundled_grid('grid_2x2')


@pytest.fixture
def ladder():
    """2x3 grid with its boundary cycle"""
    return load_bundled_grid('grid_2x3')


@pytest.mark.gadget
class TestGenGridGadget:
    """Point layout"""

    def test_single_vertex(self):
        """One vertex gives a center and four connectors at distance 5"""
        gadget = gen_grid_gadget(grid([[0, 0]]))
        assert gadget.instance.points == ((0, 0), (5, 0), (-5, 0), (0, 5), (0, -5))
        assert gadget.vertex_map[0].center == 0
        assert gadget.vertex_map[0].connectors == (1, 2, 3, 4)

    def test_square_centers(self, square):
        """Centers sit on a lattice of spacing 17"""
        gadget = gen_grid_gadget(square[0])
        assert gadget.instance.n == 20
        centers = [gadget.instance.points[s.center] for s in gadget.vertex_map]
        assert centers == [(0, 0), (17, 0), (0, 17), (17, 17)]

    def test_five_points_per_vertex(self):
        """|points| = 5 |V| for an irregular grid"""
        vertices = [[0, 0], [1, 0], [2, 0], [2, 1], [2, 2], [1, 2]]
        gadget = gen_grid_gadget(grid(vertices))
        assert gadget.instance.n == 5 * len(vertices)
        assert gadget.owner_of(13) == 2

    def test_squared_distances_are_integers(self, ladder):
        """Every comparison in the reduction is exact"""
        dist2 = gen_grid_gadget(ladder[0]).instance.squared_distances
        assert np.array_equal(dist2, np.round(dist2))

    def test_invalid_grid_rejected(self):
        """A grid graph with a non-unit edge is refused"""
        bad = GridGraph(vertices=((0, 0), (2, 0)), edges=((0, 1),))
        with pytest.raises(GridGraphError):
            gen_grid_gadget(bad)


@pytest.mark.gadget
class TestHamiltonianAssignment:
    """Cycle to assignment"""

    @pytest.mark.parametrize('name, expected', [('grid_2x2', 36), ('grid_2x3', 54)])
    def test_total_is_nine_per_vertex(self, name, expected):
        """The cycle assignment is valid with total exactly 9n"""
        graph, cycle = load_bundled_grid(name)
        gadget = gen_grid_gadget(graph)
        assignment = gadget_assignment_from_hamiltonian(gadget, cycle)
        assert total_interference(gadget.instance, assignment) == expected
        assert is_strongly_connected(build_comm_graph(gadget.instance, assignment))
        assert set_sender_interference(gadget, assignment) == [9] * graph.n

    def test_ranges(self, square):
        """One range 7 per vertex on the connector facing the successor"""
        graph, cycle = square
        gadget = gen_grid_gadget(graph)
        assignment = gadget_assignment_from_hamiltonian(gadget, cycle)
        assert sorted(set(assignment.ranges)) == [5.0, 7.0]
        assert assignment.ranges.count(7.0) == graph.n
        assert assignment.ranges[gadget.vertex_map[0].right] == 7.0

    def test_shortening_a_long_connector_disconnects(self, ladder):
        """The long connector is the only way out of its set"""
        graph, cycle = ladder
        gadget = gen_grid_gadget(graph)
        ranges = list(gadget_assignment_from_hamiltonian(gadget, cycle).ranges)
        ranges[ranges.index(7.0)] = 5.0
        assignment = RangeAssignment(ranges=tuple(ranges))
        assert not is_strongly_connected(build_comm_graph(gadget.instance, assignment))

    def test_reversed_cycle(self, ladder):
        """Either orientation of the cycle works"""
        graph, cycle = ladder
        gadget = gen_grid_gadget(graph)
        assignment = gadget_assignment_from_hamiltonian(gadget, list(reversed(cycle)))
        assert total_interference(gadget.instance, assignment) == 54

    def test_not_a_cycle(self, square):
        """A sequence using a diagonal is refused with a diagnostic"""
        graph, _ = square
        with pytest.raises(ReductionError) as excinfo:
            gadget_assignment_from_hamiltonian(gen_grid_gadget(graph), [0, 3, 1, 2])
        assert {d['reason'] for d in excinfo.value.diagnostics} == {'not_grid_edge'}

    def test_cycle_checks(self, square):
        """Length and permutation are checked before edges"""
        graph, _ = square
        with pytest.raises(ReductionError) as excinfo:
            validate_cycle(graph, [0, 1, 3])
        assert excinfo.value.diagnostics[0]['reason'] == 'length'
        with pytest.raises(ReductionError) as excinfo:
            validate_cycle(graph, [0, 1, 1, 2])
        assert excinfo.value.diagnostics[0]['reason'] == 'not_a_permutation'


@pytest.mark.gadget
class TestExtractHamiltonianCycle:
    """Assignment to cycle"""

    @pytest.mark.parametrize('name', ['grid_2x2', 'grid_2x3'])
    def test_round_trip(self, name):
        """Extraction recovers the cycle that built the assignment"""
        graph, cycle = load_bundled_grid(name)
        gadget = gen_grid_gadget(graph)
        assignment = gadget_assignment_from_hamiltonian(gadget, cycle)
        recovered = extract_hamiltonian_cycle(gadget, assignment)
        assert recovered == cycle
        assert validate_cycle(graph, recovered) == recovered

    def test_round_trip_larger_grid(self):
        """A 4x4 grid with a serpentine cycle"""
        vertices = [[x, y] for y in range(4) for x in range(4)]
        graph = grid(vertices)
        index = {tuple(v): i for i, v in enumerate(vertices)}
        path = [(0, 0)] + [(x, y) for y in range(4) for x in (range(1, 4) if y % 2 == 0 else range(3, 0, -1))]
        path += [(0, y) for y in range(3, 0, -1)]
        cycle = [index[p] for p in path]
        gadget = gen_grid_gadget(graph)
        assignment = gadget_assignment_from_hamiltonian(gadget, cycle)
        assert total_interference(gadget.instance, assignment) == 9 * 16
        assert extract_hamiltonian_cycle(gadget, assignment) == cycle

    def test_all_short_ranges(self, square):
        """Without long connectors the sets never talk"""
        gadget = gen_grid_gadget(square[0])
        assignment = RangeAssignment(ranges=(5.0,) * gadget.instance.n)
        with pytest.raises(ReductionError) as excinfo:
            extract_hamiltonian_cycle(gadget, assignment)
        assert excinfo.value.diagnostics[0]['reason'] == 'not_strongly_connected'

    def test_long_center(self, square):
        """A center of range 12 pushes its set above 9"""
        graph, cycle = square
        gadget = gen_grid_gadget(graph)
        ranges = list(gadget_assignment_from_hamiltonian(gadget, cycle).ranges)
        ranges[gadget.vertex_map[0].center] = 12.0
        assignment = RangeAssignment(ranges=tuple(ranges))
        assert total_interference(gadget.instance, assignment) >= 37
        with pytest.raises(ReductionError) as excinfo:
            extract_hamiltonian_cycle(gadget, assignment)
        diagnostics = excinfo.value.diagnostics
        assert [d['vertex'] for d in diagnostics] == [0]
        assert diagnostics[0]['reason'] == 'set_interference'
        assert diagnostics[0]['interference'] > 9

    def test_second_long_connector(self, square):
        """Two long connectors in one set cost an extra edge"""
        graph, cycle = square
        gadget = gen_grid_gadget(graph)
        ranges = list(gadget_assignment_from_hamiltonian(gadget, cycle).ranges)
        ranges[gadget.vertex_map[0].top] = 7.0
        assignment = RangeAssignment(ranges=tuple(ranges))
        with pytest.raises(ReductionError) as excinfo:
            extract_hamiltonian_cycle(gadget, assignment)
        assert excinfo.value.diagnostics == [
            {'reason': 'set_interference', 'vertex': 0, 'interference': 10},
        ]

    def test_set_interference_lower_bound(self, ladder):
        """Every valid assignment found on a gadget gives each set at least 9"""
        graph, cycle = ladder
        gadget = gen_grid_gadget(graph)
        for assignment in (
            gadget_assignment_from_hamiltonian(gadget, cycle),
            approx_mtip_2d(gadget.instance, 'first').assignment,
            approx_mtip_2d(gadget.instance, 'best').assignment,
        ):
            assert is_strongly_connected(build_comm_graph(gadget.instance, assignment))
            assert all(si >= 9 for si in set_sender_interference(gadget, assignment))


@pytest.mark.gadget
class TestBundledGrids:
    """Fixtures shipped with known cycles"""

    def test_names(self):
        """Both fixtures are listed"""
        assert {'grid_2x2', 'grid_2x3'} <= set(bundled_grid_names())

    def test_unknown_name(self):
        """A missing fixture names the available ones"""
        with pytest.raises(GridGraphError, match='grid_2x2'):
            load_bundled_grid('grid_9x9')

    def test_recover_gadget(self, ladder):
        """The gadget is recognised from its points alone"""
        gadget = gen_grid_gadget(ladder[0])
        recovered = recover_gadget(gadget.instance)
        assert recovered is not None
        assert recovered.grid.vertices == gadget.grid.vertices

    def test_recover_rejects_other_instances(self):
        """Random point sets are not gadgets"""
        assert recover_gadget(gen_random_plane(10, seed=1)) is None


@pytest.mark.gadget
class TestRectangularGrid:
    """Full grids with a constructed cycle"""

    @pytest.mark.parametrize('name, rows, columns', [('grid_2x2', 2, 2), ('grid_2x3', 2, 3)])
    def test_matches_bundled_fixture(self, name, rows, columns):
        """The shipped fixtures are exactly what the constructor writes"""
        grid, cycle = rectangular_grid(rows, columns)
        bundled_grid, bundled_cycle = load_bundled_grid(name)
        assert grid == bundled_grid
        assert cycle == bundled_cycle

    @pytest.mark.parametrize('rows, columns', [(3, 2), (3, 4), (4, 3), (4, 4), (2, 5)])
    def test_cycle_round_trips(self, rows, columns):
        """Odd row counts use the transposed walk; every cycle encodes to 9 per vertex"""
        grid, cycle = rectangular_grid(rows, columns)
        assert grid.n == rows * columns
        gadget = gen_grid_gadget(grid)
        assignment = gadget_assignment_from_hamiltonian(gadget, cycle)
        assert total_interference(gadget.instance, assignment) == 9 * grid.n
        assert extract_hamiltonian_cycle(gadget, assignment) == cycle

    @pytest.mark.parametrize('rows, columns', [(3, 3), (1, 4), (2, 1)])
    def test_no_cycle(self, rows, columns):
        """Odd vertex counts and single rows or columns have no Hamiltonian cycle"""
        with pytest.raises(GridGraphError, match='no Hamiltonian cycle'):
            rectangular_grid(rows, columns)

    def test_document_round_trip(self):
        """grid_document is read back by grid_from_document"""
        grid, cycle = rectangular_grid(4, 3)
        assert grid_from_document(grid_document(grid, cycle), min_degree=2) == (grid, cycle)
        assert 'cycle' not in grid_document(grid)
