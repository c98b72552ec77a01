"""
Services package for the interference solvers

Contains the interference model, the exact line solver, the approximation,
the exhaustive oracles and instance generation.
"""

from .approximation_service import approx_mtip_2d
from .line_solver import solve_mtip_1d
from .oracle_service import brute_force_optimal

__all__ = ['approx_mtip_2d', 'solve_mtip_1d', 'brute_force_optimal']
