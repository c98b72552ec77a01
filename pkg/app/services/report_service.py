"""
Run reports, verification and file IO for the command line.

Solver output is never trusted: every report re-measures the emitted
assignment with the interference model.
"""

import json
import logging
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from app.models import Edge, GridGraph, Instance, MtipError, RangeAssignment, RunReport
from app.services.gadget_service import (
    ReductionError, extract_hamiltonian_cycle, grid_from_document, recover_gadget,
    set_sender_interference,
)
from app.services.instance_validator import assignment_from_dict, instance_from_dict
from app.services.interference_service import (
    build_comm_graph, interference_profile, is_strongly_connected,
    total_interference, verify_certificate,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
STDOUT = '-'


class ReportError(MtipError):
    """Custom exception for missing, unreadable or malformed files"""

    def __init__(self, message: str, path: Optional[PathLike] = None):
        super().__init__(message)
        self.path = str(path) if path is not None else None


def read_json(path: PathLike) -> Any:
    """
    Load a JSON document.

    Raises:
        ReportError: If the file is missing or not valid JSON
    """
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ReportError(f"File not found: {path}", path)
    except json.JSONDecodeError as e:
        raise ReportError(f"Invalid JSON in {path}: {e}", path)
    except OSError as e:
        raise ReportError(f"Cannot read {path}: {e}", path)


def write_json(data: Any, path: Optional[PathLike] = None, indent: Optional[int] = 2):
    """Write JSON to ``path``, or to stdout when path is None or '-'"""
    text = json.dumps(data, indent=indent)
    if path is None or str(path) == STDOUT:
        sys.stdout.write(text + '\n')
        return
    try:
        target = Path(path)
        if target.parent and not target.parent.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text + '\n')
    except OSError as e:
        raise ReportError(f"Cannot write {path}: {e}", path)
    logger.info(f"Wrote {path}")


def write_text(text: str, path: Optional[PathLike] = None):
    if path is None or str(path) == STDOUT:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise ReportError(f"Cannot write {path}: {e}", path)
    logger.info(f"Wrote {path}")


def load_instance(path: PathLike) -> Tuple[Instance, List[int]]:
    """Instance file -> (Instance, permutation from input order to instance order)"""
    return instance_from_dict(read_json(path))


def load_grid(path: PathLike, min_degree: int = 0) -> Tuple[GridGraph, Optional[List[int]]]:
    """Grid-graph file -> (GridGraph, known cycle or None)"""
    return grid_from_document(read_json(path), min_degree=min_degree)


def load_assignment(path: PathLike, instance: Instance, permutation: Sequence[int]) -> RangeAssignment:
    """
    Read an assignment written in input order and reorder it to match the
    instance (1D instances are stored sorted).
    """
    raw = assignment_from_dict(read_json(path), instance)
    ordered = [0.0] * instance.n
    for original, position in enumerate(permutation):
        ordered[position] = raw.ranges[original]
    return RangeAssignment(ranges=tuple(ordered))


def to_input_order(values: Sequence[Any], permutation: Sequence[int]) -> List[Any]:
    """Inverse of load_assignment's reordering"""
    return [values[position] for position in permutation]


def edges_to_input_order(edges: Sequence[Edge], permutation: Sequence[int]) -> List[List[int]]:
    original = {position: index for index, position in enumerate(permutation)}
    return [[original[p], original[q]] for p, q in edges]


@contextmanager
def timed():
    """Yields a dict whose 'seconds' is filled in on exit"""
    clock = {'seconds': 0.0}
    start = time.perf_counter()
    try:
        yield clock
    finally:
        clock['seconds'] = time.perf_counter() - start


def build_report(command: str, instance: Instance, assignment: RangeAssignment,
                 claimed_total: Optional[int], duration: float,
                 extra: Optional[Dict[str, Any]] = None) -> RunReport:
    """Re-measure ``assignment`` and wrap the result in a RunReport"""
    measured = total_interference(instance, assignment)
    connected = is_strongly_connected(build_comm_graph(instance, assignment))
    report = RunReport(
        command=command,
        n=instance.n,
        dim=instance.dim,
        claimed_total=claimed_total,
        measured_total=measured,
        duration_seconds=duration,
        strongly_connected=connected,
        extra=dict(extra or {}),
    )
    if not report.cost_matches_measured:
        logger.warning(f"{command}: claimed total {claimed_total} but measured {measured}")
    return report


def verify_assignment(instance: Instance, assignment: RangeAssignment,
                      bound: Optional[int] = None,
                      permutation: Optional[Sequence[int]] = None) -> Dict[str, Any]:
    """
    Independent check of an assignment: validity, measured total, per-point
    interference, an optional certificate bound and, for gadget point sets,
    a Hamiltonian cycle extraction attempt.
    """
    measured = total_interference(instance, assignment)
    profile = interference_profile(instance, assignment)
    if permutation is not None:
        profile = {key: to_input_order(values, permutation) for key, values in profile.items()}
    result: Dict[str, Any] = {
        'instance': {'n': instance.n, 'dim': instance.dim},
        'strongly_connected': is_strongly_connected(build_comm_graph(instance, assignment)),
        'total': measured,
        'interference': profile,
    }
    if bound is not None:
        result['certificate'] = {
            'bound': bound,
            'accepted': verify_certificate(instance, assignment, bound),
        }

    gadget = recover_gadget(instance)
    if gadget is not None:
        hamiltonian: Dict[str, Any] = {
            'set_interference': set_sender_interference(gadget, assignment),
        }
        try:
            hamiltonian['cycle'] = extract_hamiltonian_cycle(gadget, assignment)
            hamiltonian['found'] = True
        except ReductionError as e:
            hamiltonian['found'] = False
            hamiltonian['message'] = str(e)
            hamiltonian['diagnostics'] = e.diagnostics
        result['gadget'] = hamiltonian
    return result


def to_dot(instance: Instance, assignment: RangeAssignment,
           permutation: Optional[Sequence[int]] = None, name: str = 'comm') -> str:
    """
    Communication graph in Graphviz DOT with node positions and ranges.

    Nodes are named by their index in the input file when a permutation is given.
    """
    graph = build_comm_graph(instance, assignment)
    label = list(range(instance.n))
    for original, position in enumerate(permutation or []):
        label[position] = original
    lines = [f'digraph {name} {{']
    for p, point in enumerate(instance.points):
        x = point[0]
        y = point[1] if instance.dim == 2 else 0.0
        lines.append(f'  {label[p]} [pos="{x!r},{y!r}!", range="{assignment.ranges[p]!r}"];')
    for p, q in graph.edges:
        lines.append(f'  {label[p]} -> {label[q]};')
    lines.append('}')
    return '\n'.join(lines) + '\n'
