"""
Seeded random instance generation.

Every generator owns a ``numpy.random.Generator`` created from its seed, so
the same arguments always give the same instance.
"""

import logging
from typing import List, Optional

import numpy as np

from app.models import Instance
from app.services.instance_validator import InstanceValidationError, validate_instance

logger = logging.getLogger(__name__)

SPREAD_UNIFORM = 'uniform'
SPREAD_CLUSTERED = 'clustered'
SPREAD_GEOMETRIC = 'geometric'
LINE_SPREADS = (SPREAD_UNIFORM, SPREAD_CLUSTERED, SPREAD_GEOMETRIC)


def _check_count(n: int):
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InstanceValidationError(f"Point count must be a positive integer, got {n!r}")


def _distinct_draws(n: int, draw) -> List:
    """Call ``draw()`` until n distinct values were produced, keeping draw order"""
    seen = set()
    values = []
    while len(values) < n:
        value = draw()
        if value not in seen:
            seen.add(value)
            values.append(value)
    return values


def gen_random_line(n: int, seed: int, spread: str = SPREAD_UNIFORM,
                    ratio: float = 1.5, clusters: int = 3, width: float = 0.02) -> Instance:
    """
    Random sorted 1D instance.

    Args:
        n: Number of points
        seed: Generator seed
        spread: ``uniform`` in [0, 1), ``clustered`` around random centers
            with normal noise of the given width, or ``geometric`` gaps that
            grow by ``ratio``
        ratio: Gap growth factor for the geometric spread, > 1
        clusters: Number of cluster centers
        width: Standard deviation around each center

    Returns:
        Validated Instance

    Raises:
        InstanceValidationError: On a bad count, spread or parameter
    """
    _check_count(n)
    rng = np.random.default_rng(seed)

    if spread == SPREAD_UNIFORM:
        coords = _distinct_draws(n, lambda: float(rng.random()))
    elif spread == SPREAD_CLUSTERED:
        if clusters < 1 or width <= 0:
            raise InstanceValidationError("Clustered spread needs clusters >= 1 and width > 0")
        centers = rng.random(clusters)
        coords = _distinct_draws(
            n, lambda: float(centers[rng.integers(clusters)] + rng.normal(0.0, width))
        )
    elif spread == SPREAD_GEOMETRIC:
        if not ratio > 1:
            raise InstanceValidationError(f"Geometric ratio must be > 1, got {ratio}")
        base = rng.uniform(0.5, 1.0)
        gaps = base * ratio ** np.arange(n - 1)
        coords = np.concatenate(([0.0], np.cumsum(gaps))).tolist()
    else:
        raise InstanceValidationError(
            f"Unknown spread {spread!r}; expected one of {', '.join(LINE_SPREADS)}"
        )

    instance, _ = validate_instance(coords, 1)
    logger.debug(f"Generated {spread} line instance: n={n}, seed={seed}")
    return instance


def gen_random_plane(n: int, seed: int) -> Instance:
    """Random 2D instance in the unit box, duplicates rejected and redrawn"""
    _check_count(n)
    rng = np.random.default_rng(seed)
    points = _distinct_draws(n, lambda: tuple(rng.random(2).tolist()))
    instance, _ = validate_instance(points, 2)
    logger.debug(f"Generated plane instance: n={n}, seed={seed}")
    return instance


def gen_instance(kind: str, n: int, seed: int, spread: Optional[str] = None, **options) -> Instance:
    """Dispatch on ``line`` / ``plane``"""
    if kind == 'line':
        return gen_random_line(n, seed, spread or SPREAD_UNIFORM, **options)
    if kind == 'plane':
        return gen_random_plane(n, seed)
    raise InstanceValidationError(f"Unknown instance kind {kind!r}")
