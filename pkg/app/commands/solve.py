import logging
from pathlib import Path

import click
from flask import current_app

from app.commands import solve_bp
from app.commands.decorators import json_errors
from app.commands.runs import BATCH_COMMANDS, run_approx2d, run_batch, run_oracle, run_solve1d
from app.models import OracleBudget
from app.services.report_service import load_instance, write_json

logger = logging.getLogger(__name__)


def _budget(max_points, max_states) -> OracleBudget:
    config = current_app.config
    return OracleBudget(
        max_points=max_points if max_points is not None else config['ORACLE_MAX_POINTS'],
        max_states=max_states if max_states is not None else config['ORACLE_MAX_STATES'],
    )


def _emit(report, out, edges_out=None):
    """Report to stdout; assignment (and edge list) to their files when asked"""
    indent = current_app.config['JSON_INDENT']
    if out:
        write_json({'ranges': report['ranges']}, out, indent)
    if edges_out:
        write_json({'edges': report['edges']}, edges_out, indent)
    write_json(report, None, indent)


@solve_bp.cli.command('solve1d')
@click.argument('instance_path', type=click.Path(dir_okay=False))
@click.option('--out', type=click.Path(dir_okay=False), help='Assignment file to write')
@click.option('--edges-out', type=click.Path(dir_okay=False), help='Edge-list file for the optimal trees')
@json_errors
def solve1d(instance_path, out, edges_out):
    """Exact optimum of a 1D instance."""
    instance, permutation = load_instance(instance_path)
    _emit(run_solve1d(instance, permutation), out, edges_out)


@solve_bp.cli.command('approx2d')
@click.argument('instance_path', type=click.Path(dir_okay=False))
@click.option('--root-policy', help='first, best or fixed:<index>')
@click.option('--out', type=click.Path(dir_okay=False), help='Assignment file to write')
@json_errors
def approx2d(instance_path, root_policy, out):
    """Two-approximation for 1D or 2D instances."""
    instance, permutation = load_instance(instance_path)
    policy = root_policy or current_app.config['DEFAULT_ROOT_POLICY']
    _emit(run_approx2d(instance, permutation, policy), out)


@solve_bp.cli.command('oracle')
@click.argument('instance_path', type=click.Path(dir_okay=False))
@click.option('--budget', 'max_points', type=int, help='Largest accepted instance size')
@click.option('--max-states', type=int, help='Search state limit')
@click.option('--out', type=click.Path(dir_okay=False), help='Assignment file to write')
@json_errors
def oracle(instance_path, max_points, max_states, out):
    """Exhaustive optimum of a small instance."""
    instance, permutation = load_instance(instance_path)
    _emit(run_oracle(instance, permutation, _budget(max_points, max_states)), out)


@solve_bp.cli.command('batch')
@click.argument('command', type=click.Choice(BATCH_COMMANDS))
@click.argument('instance_paths', nargs=-1, required=True, type=click.Path(dir_okay=False))
@click.option('--out-dir', required=True, type=click.Path(file_okay=False), help='Directory for per-file reports')
@click.option('--jobs', type=int, help='Worker threads')
@click.option('--root-policy', help='first, best or fixed:<index> (approx2d)')
@click.option('--budget', 'max_points', type=int, help='Largest accepted instance size (oracle)')
@click.option('--max-states', type=int, help='Search state limit (oracle)')
@json_errors
def batch(command, instance_paths, out_dir, jobs, root_policy, max_points, max_states):
    """Run solve1d, approx2d or oracle over many instance files."""
    config = current_app.config
    summary = run_batch(
        command,
        list(instance_paths),
        Path(out_dir),
        jobs if jobs is not None else config['BATCH_JOBS'],
        root_policy or config['DEFAULT_ROOT_POLICY'],
        _budget(max_points, max_states),
        config['JSON_INDENT'],
    )
    failed = sum(1 for entry in summary if not entry['ok'])
    write_json({'command': command, 'files': summary, 'failed': failed}, None, config['JSON_INDENT'])
    if failed:
        click.get_current_context().exit(1)
