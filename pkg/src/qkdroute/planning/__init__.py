from qkdroute.planning.bruteforce import brute_force_solve
from qkdroute.planning.checker import ConstraintReport, ConstraintResult, check_solution
from qkdroute.planning.model import (
    Contract,
    Objective,
    PlanProblem,
    PlanSolution,
    build_problem,
    evaluate,
    objective_edgr,
    objective_escf,
    objective_pescf,
)
from qkdroute.planning.solver import solve

__all__ = [
    "Contract",
    "ConstraintReport",
    "ConstraintResult",
    "Objective",
    "PlanProblem",
    "PlanSolution",
    "brute_force_solve",
    "build_problem",
    "check_solution",
    "evaluate",
    "objective_edgr",
    "objective_escf",
    "objective_pescf",
    "solve",
]
