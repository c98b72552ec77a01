#!/usr/bin/env python3
"""
Seeded sweep comparing every solver against the exhaustive oracles
Prints pass counts, the worst approximation ratio and timings
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import time

import numpy as np

from app import create_app
from app.models import OracleBudget, WeightedDigraph
from app.services.approximation_service import approx_mtip_2d, solve_mtip1, solve_mtip2
from app.services.arborescence_service import min_arborescence
from app.services.gadget_service import (
    bundled_grid_names, extract_hamiltonian_cycle, gadget_assignment_from_hamiltonian,
    gen_grid_gadget, load_bundled_grid, set_sender_interference,
)
from app.services.instance_generator import LINE_SPREADS, gen_random_line, gen_random_plane
from app.services.interference_service import (
    build_comm_graph, build_weighted_digraph, is_strongly_connected, total_interference,
)
from app.services.line_solver import solve_mtip_1d
from app.services.oracle_service import (
    brute_force_min_arborescence, brute_force_min_sink_tree, brute_force_optimal,
)


def check_line_solver(budget):
    """Exact 1D totals against the oracle, 100 instances per size"""
    print("Checking exact 1D solver against the oracle...")
    failures = 0
    for n in range(2, 8):
        for seed in range(100):
            spread = LINE_SPREADS[seed % len(LINE_SPREADS)]
            instance = gen_random_line(n, seed=seed, spread=spread)
            solution = solve_mtip_1d(instance)
            _, opt = brute_force_optimal(instance, budget)
            if solution.total != opt:
                failures += 1
                print(f"  ❌ n={n} seed={seed} {spread}: solver {solution.total}, oracle {opt}")
    print(f"  {600 - failures}/600 agree")
    return failures


def check_arborescences(budget):
    """Edmonds against exhaustive search on random integer digraphs"""
    print("Checking minimum arborescences...")
    rng = np.random.default_rng(0)
    failures = 0
    for trial in range(500):
        n = int(rng.integers(1, 8))
        matrix = rng.integers(1, n + 1, size=(n, n)).astype(np.int64)
        np.fill_diagonal(matrix, 0)
        graph = WeightedDigraph(n=n, matrix=matrix)
        root = int(rng.integers(n))
        if min_arborescence(graph, root).weight != brute_force_min_arborescence(graph, root, budget):
            failures += 1
            print(f"  ❌ trial {trial}")
    print(f"  {500 - failures}/500 agree")
    return failures


def check_broadcast_and_sink(budget):
    """Broadcast part costs n - 1, sink part equals the exhaustive sink tree"""
    print("Checking broadcast and sink parts...")
    failures = 0
    for seed in range(200):
        instance = gen_random_plane(2 + seed % 6, seed=seed)
        root = seed % instance.n
        if total_interference(instance, solve_mtip1(instance, root)) != instance.n - 1:
            failures += 1
            print(f"  ❌ broadcast seed={seed}")
        _, weight = solve_mtip2(instance, root)
        if weight != brute_force_min_sink_tree(build_weighted_digraph(instance), root, budget):
            failures += 1
            print(f"  ❌ sink seed={seed}")
    print(f"  {400 - failures}/400 agree")
    return failures


def check_approximation(budget):
    """Approximation ratio against the oracle on small planar instances"""
    print("Checking approximation ratio...")
    failures = 0
    worst = 1.0
    for seed in range(200):
        instance = gen_random_plane(2 + seed % 5, seed=500 + seed)
        result = approx_mtip_2d(instance, 'best')
        _, opt = brute_force_optimal(instance, budget)
        ratio = result.total / opt
        worst = max(worst, ratio)
        connected = is_strongly_connected(build_comm_graph(instance, result.assignment))
        if ratio > 2 or not connected:
            failures += 1
            print(f"  ❌ seed={seed}: total {result.total}, OPT {opt}, connected {connected}")
    print(f"  worst ratio {worst:.4f}")
    return failures


def check_reduction():
    """Bundled grids: 9n totals and cycle recovery"""
    print("Checking reduction gadget...")
    failures = 0
    for name in bundled_grid_names():
        grid, cycle = load_bundled_grid(name)
        gadget = gen_grid_gadget(grid)
        assignment = gadget_assignment_from_hamiltonian(gadget, cycle)
        total = total_interference(gadget.instance, assignment)
        recovered = extract_hamiltonian_cycle(gadget, assignment)
        ok = (total == 9 * grid.n
              and set(set_sender_interference(gadget, assignment)) == {9}
              and len(recovered) == grid.n)
        if not ok:
            failures += 1
        print(f"  {'✅' if ok else '❌'} {name}: total {total}, cycle {recovered}")
    return failures


def time_large_instances():
    print("Timing large instances...")
    start = time.perf_counter()
    solve_mtip_1d(gen_random_line(500, seed=11))
    print(f"  solve1d n=500: {time.perf_counter() - start:.2f}s")
    start = time.perf_counter()
    approx_mtip_2d(gen_random_plane(300, seed=17), 'best')
    print(f"  approx2d best-of-roots n=300: {time.perf_counter() - start:.2f}s")


def main():
    """Main function"""
    print("🔬 Interference solver acceptance sweep")
    print("=" * 50)

    app = create_app()
    with app.app_context():
        budget = OracleBudget(
            max_points=app.config['ORACLE_MAX_POINTS'],
            max_states=app.config['ORACLE_MAX_STATES'],
        )
        failures = 0
        failures += check_line_solver(budget)
        failures += check_arborescences(budget)
        failures += check_broadcast_and_sink(budget)
        failures += check_approximation(budget)
        failures += check_reduction()
        time_large_instances()

    print("=" * 50)
    if failures:
        print(f"❌ {failures} checks failed")
        return 1
    print("✅ All checks passed")
    return 0


if __name__ == '__main__':
    sys.exit(main())
