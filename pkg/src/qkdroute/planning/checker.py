"""Independent evaluation of the five constraint families of a plan."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from qkdroute.paths import edge_indicator
from qkdroute.planning.model import PlanProblem, PlanSolution, evaluate


@dataclass(frozen=True)
class ConstraintResult:
    name: str
    passed: bool
    # contract index for i/ii/iii/v, edge index for iv
    first_violation: int | None = None
    detail: str = ""


@dataclass(frozen=True)
class ConstraintReport:
    results: tuple[ConstraintResult, ...]
    objective_value: Fraction | None

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> ConstraintResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _fail(name: str, where: int, detail: str) -> ConstraintResult:
    return ConstraintResult(name, False, where, detail)


def _one_path(problem: PlanProblem, sol: PlanSolution) -> ConstraintResult:
    for i, ps in enumerate(problem.path_sets):
        row = sol.rho[i] if i < len(sol.rho) else ()
        if len(row) != len(ps) or any(v not in (0, 1) for v in row):
            return _fail("i", i, "selection row malformed")
        if sum(row) != 1:
            return _fail("i", i, f"{sum(row)} paths selected")
    return ConstraintResult("i", True)


def _path_grant_bound(problem: PlanProblem, sol: PlanSolution) -> ConstraintResult:
    for i, c in enumerate(problem.contracts):
        for m, value in enumerate(sol.per_path_grant[i]):
            if value < 0 or value > c.bandwidth * sol.rho[i][m]:
                return _fail("ii", i, f"path {m} carries {value}")
    return ConstraintResult("ii", True)


def _edge_grant_link(problem: PlanProblem, sol: PlanSolution) -> ConstraintResult:
    for i, ps in enumerate(problem.path_sets):
        for j, e in enumerate(problem.net.edges):
            expected = sum(
                edge_indicator(ps, m, e) * sol.per_path_grant[i][m] for m in range(len(ps))
            )
            if sol.edge_grant[i][j] != expected:
                return _fail("iii", i, f"edge {e}: {sol.edge_grant[i][j]} != {expected}")
    return ConstraintResult("iii", True)


def _capacity(problem: PlanProblem, sol: PlanSolution) -> ConstraintResult:
    for j, e in enumerate(problem.net.edges):
        load = sum(row[j] for row in sol.edge_grant)
        if load > problem.net.capacity[e]:
            return _fail("iv", j, f"edge {e}: load {load} > {problem.net.capacity[e]}")
    return ConstraintResult("iv", True)


def _grant_sum(problem: PlanProblem, sol: PlanSolution) -> ConstraintResult:
    for i in range(len(problem.contracts)):
        if sol.grant[i] != sum(sol.per_path_grant[i]):
            return _fail("v", i, f"grant {sol.grant[i]} != {sum(sol.per_path_grant[i])}")
    return ConstraintResult("v", True)


def check_solution(problem: PlanProblem, sol: PlanSolution) -> ConstraintReport:
    """Evaluate constraint families i to v separately and recompute the objective."""
    results = tuple(
        f(problem, sol)
        for f in (_one_path, _path_grant_bound, _edge_grant_link, _capacity, _grant_sum)
    )
    try:
        value = evaluate(problem, sol.grant)
    except ValueError:
        value = None
    return ConstraintReport(results, value)
