import logging

import click
from flask import current_app

from app.commands import generate_bp
from app.commands.decorators import json_errors
from app.services.gadget_service import (
    gadget_assignment_from_hamiltonian, gen_grid_gadget, load_bundled_grid,
)
from app.services.instance_generator import LINE_SPREADS, gen_instance
from app.services.report_service import ReportError, load_grid, write_json

logger = logging.getLogger(__name__)


@generate_bp.cli.command('gen')
@click.option('--kind', type=click.Choice(['line', 'plane', 'gadget']), required=True,
              help='Random line, random plane, or the grid-graph gadget')
@click.option('--n', 'n', type=int, help='Number of points (line, plane)')
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--spread', type=click.Choice(LINE_SPREADS), help='Gap distribution for line instances')
@click.option('--ratio', type=float, help='Gap growth for the geometric spread')
@click.option('--grid', 'grid_path', type=click.Path(dir_okay=False), help='Grid-graph JSON (gadget)')
@click.option('--bundled', help='Bundled grid fixture name, e.g. grid_2x3 (gadget)')
@click.option('--cycle', is_flag=True, help='Also write the Hamiltonian-cycle assignment (gadget)')
@click.option('--assignment-out', type=click.Path(dir_okay=False),
              help='Where --cycle writes the assignment')
@click.option('--out', default='-', show_default=True, help="Instance file, '-' for stdout")
@json_errors
def gen(kind, n, seed, spread, ratio, grid_path, bundled, cycle, assignment_out, out):
    """Generate an instance."""
    config = current_app.config
    indent = config['JSON_INDENT']

    if kind in ('line', 'plane'):
        if n is None:
            raise click.UsageError(f"--n is required for kind '{kind}'")
        options = {}
        if kind == 'line':
            options = {
                'ratio': ratio if ratio is not None else config['GEOMETRIC_RATIO'],
                'clusters': config['CLUSTER_COUNT'],
                'width': config['CLUSTER_WIDTH'],
            }
        instance = gen_instance(kind, n, seed, spread or config['DEFAULT_LINE_SPREAD'], **options)
        write_json(instance.to_dict(), out, indent)
        return

    if bool(grid_path) == bool(bundled):
        raise click.UsageError('Gadget generation needs exactly one of --grid or --bundled')
    if cycle and not assignment_out:
        raise click.UsageError('--cycle needs --assignment-out')

    if bundled:
        grid, known_cycle = load_bundled_grid(bundled)
    else:
        grid, known_cycle = load_grid(grid_path, min_degree=2 if cycle else 0)
    gadget = gen_grid_gadget(grid)
    write_json(gadget.instance.to_dict(), out, indent)

    if cycle:
        if known_cycle is None:
            raise ReportError('Grid-graph file has no "cycle" to build the assignment from',
                              grid_path or bundled)
        assignment = gadget_assignment_from_hamiltonian(gadget, known_cycle)
        write_json(assignment.to_dict(), assignment_out, indent)
        logger.info(f"Wrote Hamiltonian assignment for {grid.n} grid vertices")
