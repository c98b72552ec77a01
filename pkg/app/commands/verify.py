import click
from flask import current_app

from app.commands import verify_bp
from app.commands.decorators import json_errors
from app.services.report_service import load_assignment, load_instance, to_dot, verify_assignment, write_json, write_text


@verify_bp.cli.command('verify')
@click.argument('instance_path', type=click.Path(dir_okay=False))
@click.argument('assignment_path', type=click.Path(dir_okay=False))
@click.option('--bound', type=int, help='Also check total interference <= bound')
@json_errors
def verify(instance_path, assignment_path, bound):
    """Check an assignment: validity, measured total, gadget cycle extraction."""
    instance, permutation = load_instance(instance_path)
    assignment = load_assignment(assignment_path, instance, permutation)
    result = verify_assignment(instance, assignment, bound, permutation)
    write_json(result, None, current_app.config['JSON_INDENT'])


@verify_bp.cli.command('export-dot')
@click.argument('instance_path', type=click.Path(dir_okay=False))
@click.argument('assignment_path', type=click.Path(dir_okay=False))
@click.option('--out', default='-', show_default=True, help="DOT file, '-' for stdout")
@json_errors
def export_dot(instance_path, assignment_path, out):
    """Write the communication graph as Graphviz DOT."""
    instance, permutation = load_instance(instance_path)
    assignment = load_assignment(assignment_path, instance, permutation)
    write_text(to_dot(instance, assignment, permutation), out)
