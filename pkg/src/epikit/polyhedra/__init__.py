"""Exact polyhedral tools: simplex, Fourier-Motzkin, lattice points."""

from .fourier_motzkin import LatticeEnumerator, cone_is_zero, eliminate, is_feasible, project_cone
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, LPResult, feasible_point, linprog

__all__ = [
    "LatticeEnumerator", "cone_is_zero", "eliminate", "is_feasible", "project_cone",
    "INFEASIBLE", "OPTIMAL", "UNBOUNDED", "LPResult", "feasible_point", "linprog",
]
