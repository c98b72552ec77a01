"""
Command decorators
"""
import json
import logging
from functools import wraps

import click

from app.models import MtipError

logger = logging.getLogger(__name__)

# Extra exception attributes copied into the error object when set
ERROR_DETAILS = ('diagnostics', 'path', 'limit', 'size')


def error_payload(error: MtipError) -> dict:
    payload = {'error': type(error).__name__, 'message': str(error)}
    for name in ERROR_DETAILS:
        value = getattr(error, name, None)
        if value is not None and value != []:
            payload[name] = value
    return payload


def json_errors(f):
    """
    Decorator turning library errors into a JSON object on stderr and exit status 1
    """
    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except MtipError as e:
            logger.debug(f"Command failed with {type(e).__name__}: {e}")
            click.echo(json.dumps(error_payload(e)), err=True)
            click.get_current_context().exit(1)

    return decorated_function
