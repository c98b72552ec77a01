"""
Tests for minimum spanning arborescences and sink trees
"""

import networkx as nx
import numpy as np
import pytest

from app.models import WeightedDigraph
from app.services.arborescence_service import (
    ArborescenceError, min_arborescence, min_sink_tree, solve_branching,
)
from app.services.interference_service import invert_digraph
from app.services.oracle_service import brute_force_min_arborescence, brute_force_min_sink_tree


def digraph(rows):
    return WeightedDigraph(n=len(rows), matrix=np.array(rows, dtype=np.int64))


def random_digraph(rng, n):
    """Complete digraph with integer weights in [1, n]"""
    matrix = rng.integers(1, n + 1, size=(n, n)).astype(np.int64)
    np.fill_diagonal(matrix, 0)
    return WeightedDigraph(n=n, matrix=matrix)


def is_spanning_arborescence(tree):
    """Every node walks up its parents to the root without repeating"""
    for v in range(len(tree.parent)):
        seen = set()
        while v != tree.root:
            if v in seen or tree.parent[v] is None:
                return False
            seen.add(v)
            v = tree.parent[v]
    return tree.parent[tree.root] is None


@pytest.fixture
def cheap_pair():
    """Root 0 with expensive edges to a and b, cheap edges between them"""
    return digraph([
        [0, 10, 10],
        [5, 0, 1],
        [5, 1, 0],
    ])


@pytest.mark.unit
class TestMinArborescence:
    """Edmonds contraction on dense matrices"""

    def test_single_node(self):
        """One node gives an empty arborescence"""
        tree = min_arborescence(digraph([[0]]), 0)
        assert tree.weight == 0
        assert tree.parent == (None,)
        assert tree.edges == []

    def test_two_nodes(self):
        """The only edge out of the root is forced"""
        tree = min_arborescence(digraph([[0, 3], [7, 0]]), 0)
        assert tree.weight == 3
        assert tree.parent == (None, 0)

    def test_cycle_is_broken(self, cheap_pair):
        """The a <-> b cycle costs one expensive root edge"""
        tree = min_arborescence(cheap_pair, 0)
        assert tree.weight == 11
        assert is_spanning_arborescence(tree)

    def test_root_out_of_range(self, cheap_pair):
        """The root must be a node"""
        with pytest.raises(ArborescenceError, match='outside'):
            min_arborescence(cheap_pair, 3)

    def test_unreachable_node(self):
        """Missing edges can make a node unreachable"""
        costs = np.array([[0, np.inf], [1.0, 0]])
        with pytest.raises(ArborescenceError, match='unreachable'):
            solve_branching(costs, 0)

    def test_nested_contractions(self):
        """Cycles inside contracted cycles are re-opened correctly"""
        graph = digraph([
            [0, 50, 50, 50, 50],
            [50, 0, 1, 9, 50],
            [50, 2, 0, 50, 50],
            [50, 3, 50, 0, 1],
            [50, 50, 50, 1, 0],
        ])
        tree = min_arborescence(graph, 0)
        assert is_spanning_arborescence(tree)
        assert tree.weight == brute_force_min_arborescence(graph, 0)

    @pytest.mark.oracle
    def test_matches_brute_force(self, rng):
        """500 seeded random digraphs with n <= 7 agree with exhaustive search"""
        for trial in range(500):
            n = int(rng.integers(1, 8))
            graph = random_digraph(rng, n)
            root = int(rng.integers(n))
            tree = min_arborescence(graph, root)
            assert is_spanning_arborescence(tree)
            assert tree.weight == graph.edge_list_weight(tree.edges)
            assert tree.weight == brute_force_min_arborescence(graph, root), trial

    def test_matches_networkx(self, rng):
        """Larger graphs agree with networkx's Edmonds implementation"""
        for _ in range(20):
            n = int(rng.integers(8, 40))
            graph = random_digraph(rng, n)
            root = int(rng.integers(n))
            reference = nx.DiGraph()
            for p in range(n):
                for q in range(n):
                    if p != q and q != root:
                        reference.add_edge(p, q, weight=int(graph.matrix[p, q]))
            expected = nx.minimum_spanning_arborescence(reference).size(weight='weight')
            assert min_arborescence(graph, root).weight == expected


@pytest.mark.unit
class TestMinSinkTree:
    """Sink trees through the inverted graph"""

    def test_single_node(self):
        """One node gives weight 0"""
        assert min_sink_tree(digraph([[0]]), 0) == ([], 0)

    def test_two_nodes(self):
        """The non-root node points at the root"""
        edges, weight = min_sink_tree(digraph([[0, 1], [1, 0]]), 0)
        assert edges == [(1, 0)]
        assert weight == 1

    def test_unit_square(self, unit_square_graph):
        """Every corner reaches (0, 0) for total weight 6"""
        edges, weight = min_sink_tree(unit_square_graph, 0)
        assert weight == 6
        assert len(edges) == 3
        assert all(q != p for p, q in edges)

    def test_duality(self, cheap_pair):
        """A sink tree of the inverted graph mirrors the arborescence"""
        _, weight = min_sink_tree(invert_digraph(cheap_pair), 0)
        assert weight == 11
        assert brute_force_min_sink_tree(invert_digraph(cheap_pair), 0) == 11

    @pytest.mark.oracle
    def test_matches_brute_force(self, rng):
        """Random digraphs agree with the exhaustive sink-tree search"""
        for _ in range(200):
            n = int(rng.integers(1, 8))
            graph = random_digraph(rng, n)
            root = int(rng.integers(n))
            _, weight = min_sink_tree(graph, root)
            assert weight == brute_force_min_sink_tree(graph, root)
