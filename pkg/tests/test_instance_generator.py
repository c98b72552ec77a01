"""
Tests for seeded instance generation
"""

import numpy as np
import pytest

from app.services.instance_generator import (
    LINE_SPREADS, gen_instance, gen_random_line, gen_random_plane,
)
from app.services.instance_validator import InstanceValidationError


@pytest.mark.unit
class TestGenRandomLine:
    """1D instances"""

    def test_single_point(self):
        """n = 1 gives one point"""
        assert gen_random_line(1, seed=99).n == 1

    @pytest.mark.parametrize('spread', LINE_SPREADS)
    def test_deterministic(self, spread):
        """Same seed, same instance"""
        assert gen_random_line(5, seed=42, spread=spread) == gen_random_line(5, seed=42, spread=spread)

    def test_seeds_differ(self):
        """Different seeds give different instances"""
        assert gen_random_line(5, seed=1) != gen_random_line(5, seed=2)

    @pytest.mark.parametrize('spread', LINE_SPREADS)
    def test_sorted_and_distinct(self, spread):
        """Coordinates come out strictly increasing"""
        coords = gen_random_line(200, seed=3, spread=spread).coordinates[:, 0]
        assert np.all(np.diff(coords) > 0)

    def test_uniform_in_unit_interval(self):
        """Uniform points lie in [0, 1)"""
        coords = gen_random_line(100, seed=5).coordinates[:, 0]
        assert coords.min() >= 0.0
        assert coords.max() < 1.0

    def test_geometric_gaps(self):
        """Gaps grow by the chosen ratio"""
        instance = gen_random_line(7, seed=1, spread='geometric', ratio=1.5)
        gaps = np.diff(instance.coordinates[:, 0])
        assert np.all(np.diff(gaps) > 0)
        assert gaps[1:] / gaps[:-1] == pytest.approx(np.full(5, 1.5))

    def test_clustered_stays_near_centers(self):
        """Clustered points fall into a few tight groups"""
        coords = gen_random_line(60, seed=8, spread='clustered', clusters=2, width=0.001).coordinates[:, 0]
        big_gaps = np.diff(coords) > 0.05
        assert big_gaps.sum() <= 1

    def test_zero_points_rejected(self):
        """n must be positive"""
        with pytest.raises(InstanceValidationError):
            gen_random_line(0, seed=1)

    def test_unknown_spread_rejected(self):
        """Only the three spreads exist"""
        with pytest.raises(InstanceValidationError, match='Unknown spread'):
            gen_random_line(4, seed=1, spread='poisson')

    def test_ratio_must_grow(self):
        """A geometric ratio of 1 or less is rejected"""
        with pytest.raises(InstanceValidationError):
            gen_random_line(4, seed=1, spread='geometric', ratio=1.0)


@pytest.mark.unit
class TestGenRandomPlane:
    """2D instances"""

    def test_single_point(self):
        """n = 1 gives one point"""
        instance = gen_random_plane(1, seed=0)
        assert instance.n == 1
        assert instance.dim == 2

    def test_deterministic(self):
        """Same seed, same instance"""
        assert gen_random_plane(20, seed=7) == gen_random_plane(20, seed=7)

    def test_in_unit_box_and_distinct(self):
        """Points lie in the unit box without repeats"""
        instance = gen_random_plane(300, seed=4)
        coords = instance.coordinates
        assert coords.min() >= 0.0 and coords.max() < 1.0
        assert len(set(instance.points)) == 300

    def test_zero_points_rejected(self):
        """n must be positive"""
        with pytest.raises(InstanceValidationError):
            gen_random_plane(0, seed=1)


@pytest.mark.unit
class TestGenInstance:
    """Kind dispatch"""

    def test_dispatch(self):
        """line and plane route to their generators"""
        assert gen_instance('line', 4, 3, 'geometric') == gen_random_line(4, 3, 'geometric')
        assert gen_instance('plane', 4, 3) == gen_random_plane(4, 3)

    def test_unknown_kind(self):
        """Other kinds are rejected"""
        with pytest.raises(InstanceValidationError, match='Unknown instance kind'):
            gen_instance('sphere', 4, 3)
