"""
Pytest configuration and shared fixtures for the interference solver tests.

Provides the application and CLI runner, small hand-checked instances and
helpers for writing instance files.
"""

import json

import numpy as np
import pytest

from app import create_app
from app.services.instance_validator import validate_instance
from app.services.interference_service import build_weighted_digraph


@pytest.fixture(scope='session')
def app():
    """Create test application instance for session scope"""
    app = create_app('testing')
    app.config.update({'TESTING': True})
    yield app


@pytest.fixture
def runner(app):
    """Create test CLI runner"""
    return app.test_cli_runner()


@pytest.fixture
def line_012():
    """1D points 0, 1, 2"""
    instance, _ = validate_instance([0, 1, 2], 1)
    return instance


@pytest.fixture
def unit_square():
    """Corners of the unit square, (0, 0) first"""
    instance, _ = validate_instance([[0, 0], [1, 0], [0, 1], [1, 1]], 2)
    return instance


@pytest.fixture
def unit_square_graph(unit_square):
    """Coverage-count digraph of the unit square"""
    return build_weighted_digraph(unit_square)


@pytest.fixture
def rng():
    """Seeded generator for property checks"""
    return np.random.default_rng(20240601)


@pytest.fixture
def write_file(tmp_path):
    """Write a JSON document under tmp_path and return its path as a string"""
    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return _write
