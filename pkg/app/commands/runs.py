"""
Solver runs shared by the single-file commands and the batch command.

These functions take every setting explicitly so batch workers can call them
outside the application context.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from app.models import Instance, MtipError, OracleBudget
from app.services.approximation_service import POLICY_BEST, RootPolicy, approx_mtip_2d, parse_root_policy
from app.services.line_solver import solve_mtip_1d
from app.services.oracle_service import brute_force_optimal
from app.services.report_service import (
    build_report, edges_to_input_order, load_instance, timed, to_input_order, write_json,
)

logger = logging.getLogger(__name__)

BATCH_COMMANDS = ('solve1d', 'approx2d', 'oracle')


def run_solve1d(instance: Instance, permutation: Sequence[int]) -> Dict[str, Any]:
    """Exact 1D solve; the report carries ranges and tree edges in input order"""
    with timed() as clock:
        solution = solve_mtip_1d(instance)
    report = build_report('solve1d', instance, solution.assignment, solution.total, clock['seconds'], {
        'ranges': to_input_order(list(solution.assignment.ranges), permutation),
        'edges': edges_to_input_order(solution.edges, permutation),
        'left_right': {
            side: to_input_order(values, permutation)
            for side, values in solution.left_right.to_dict().items()
        },
    })
    return report.to_dict()


def run_approx2d(instance: Instance, permutation: Sequence[int], root_policy: RootPolicy) -> Dict[str, Any]:
    """
    Approximation; roots are named by input index. 1D instances also get
    the exact optimum and the ratio.
    """
    root = parse_root_policy(root_policy, instance.n)
    with timed() as clock:
        result = approx_mtip_2d(instance, POLICY_BEST if root is None else permutation[root])
    extra = result.to_dict()
    extra['ranges'] = to_input_order(list(result.assignment.ranges), permutation)
    extra['root'] = list(permutation).index(result.root)
    if instance.dim == 1:
        exact = solve_mtip_1d(instance).total
        extra['exact_total'] = exact
        extra['ratio'] = result.total / exact if exact else 1.0
    report = build_report('approx2d', instance, result.assignment, result.total, clock['seconds'], extra)
    return report.to_dict()


def run_oracle(instance: Instance, permutation: Sequence[int], budget: OracleBudget) -> Dict[str, Any]:
    with timed() as clock:
        assignment, opt = brute_force_optimal(instance, budget)
    report = build_report('oracle', instance, assignment, opt, clock['seconds'], {
        'opt': opt,
        'ranges': to_input_order(list(assignment.ranges), permutation),
    })
    return report.to_dict()


def run_command(command: str, instance: Instance, permutation: Sequence[int],
                root_policy: RootPolicy, budget: OracleBudget) -> Dict[str, Any]:
    if command == 'solve1d':
        return run_solve1d(instance, permutation)
    if command == 'approx2d':
        return run_approx2d(instance, permutation, root_policy)
    if command == 'oracle':
        return run_oracle(instance, permutation, budget)
    raise MtipError(f"Unknown batch command {command!r}")


def run_batch(command: str, paths: Sequence[str], out_dir: Path, jobs: int,
              root_policy: RootPolicy, budget: OracleBudget,
              indent: Optional[int] = 2) -> List[Dict[str, Any]]:
    """
    Run one command over many instance files with ``jobs`` worker threads.

    Each file writes ``<out_dir>/<stem>.<command>.json``; the returned
    summary keeps the input order whatever order the workers finish in.
    Per-file errors are recorded, not raised.
    """
    def process(path: str) -> Dict[str, Any]:
        target = out_dir / f'{Path(path).stem}.{command}.json'
        try:
            instance, permutation = load_instance(path)
            report = run_command(command, instance, permutation, root_policy, budget)
            write_json(report, target, indent)
        except MtipError as e:
            logger.warning(f"Batch {command} failed on {path}: {e}")
            return {'file': path, 'ok': False, 'error': type(e).__name__, 'message': str(e)}
        return {
            'file': path,
            'ok': True,
            'output': str(target),
            'total': report['totals']['measured'],
            'strongly_connected': report['verification']['strongly_connected'],
        }

    out_dir.mkdir(parents=True, exist_ok=True)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        summary = list(pool.map(process, paths))
    logger.info(f"Batch {command}: {sum(s['ok'] for s in summary)}/{len(summary)} files succeeded")
    return summary
