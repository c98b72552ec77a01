from flask import Flask
import logging
import os
import sys

LOG_HANDLER_NAME = 'mtip'


def configure_logging(level_name):
    """Send log records to stderr so JSON on stdout stays clean"""
    level = getattr(logging, str(level_name).upper(), logging.INFO)
    root = logging.getLogger()
    if not any(h.get_name() == LOG_HANDLER_NAME for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.set_name(LOG_HANDLER_NAME)
        handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s'))
        root.addHandler(handler)
    root.setLevel(level)


def create_app(config_name=None):
    """Application factory pattern"""
    app = Flask(__name__)

    # Load configuration
    if config_name is None:
        config_name = os.environ.get('FLASK_ENV', 'development')

    from config import config
    if config_name not in config:
        raise ValueError(f"Unknown configuration: {config_name}")
    app.config.from_object(config[config_name])

    configure_logging(app.config['LOG_LEVEL'])

    # Register command blueprints
    from app.commands import generate_bp, solve_bp, verify_bp
    app.register_blueprint(generate_bp)
    app.register_blueprint(solve_bp)
    app.register_blueprint(verify_bp)

    return app
