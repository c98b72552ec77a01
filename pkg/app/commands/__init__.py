from flask import Blueprint

# Command blueprints; cli_group=None makes every command top level
generate_bp = Blueprint('generate', __name__, cli_group=None)
solve_bp = Blueprint('solve', __name__, cli_group=None)
verify_bp = Blueprint('verify', __name__, cli_group=None)

# Import commands to register them with blueprints
from app.commands import generate, solve, verify
