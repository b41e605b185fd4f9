"""Exact solver for the fair route-planning problem.

Path assignments are visited in lexicographic order.  For a fixed assignment
the grants only interact through shared edge capacities, and a depth-first
branch and bound over integer grants finds the optimum.  The bound is the
objective of the grants fixed so far plus, for every open contract, the best
value it could reach alone given the residual bottleneck of its route.  That
is admissible for all three objectives because the pairwise EDGR terms that
involve open contracts are non-negative.

The result is the minimum objective, and among equal objectives the
lexicographically smallest ``(chosen paths, grants)`` pair.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from qkdroute.errors import SearchBudgetExceeded
from qkdroute.planning.model import Objective, PlanProblem, PlanSolution

DEFAULT_NODE_BUDGET = 10_000_000


class _Search:
    def __init__(self, problem: PlanProblem, node_budget: int):
        self.problem = problem
        self.budget = node_budget
        self.nodes = 0
        self.n = len(problem.contracts)
        self.demand = [c.bandwidth for c in problem.contracts]
        self.prio = [
            1 if problem.objective is Objective.ESCF else c.priority
            for c in problem.contracts
        ]
        self.edgr = problem.objective is Objective.EDGR
        index = {e: j for j, e in enumerate(problem.net.edges)}
        self.cap0 = [problem.net.capacity[e] for e in problem.net.edges]
        self.routes = [
            [tuple(index[e] for e in path) for path in ps.paths] for ps in problem.path_sets
        ]
        self.best: tuple[Fraction, tuple[int, ...], tuple[int, ...]] | None = None

    def cost(self, i: int, g: int) -> Fraction | int:
        # Separable part of the objective contributed by contract i alone.
        if self.edgr:
            return -g
        return self.prio[i] * (self.demand[i] - g) ** 2

    def run(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        for chosen in product(*(range(len(r)) for r in self.routes)):
            self.chosen = chosen
            self.route = [self.routes[i][m] for i, m in enumerate(chosen)]
            self.residual = list(self.cap0)
            self.grants: list[int] = []
            self.ratios: list[Fraction] = []
            self.dfs(0, 0)
        assert self.best is not None
        return self.best[1], self.best[2]

    def upper(self, i: int) -> int:
        return min([self.demand[i]] + [self.residual[j] for j in self.route[i]])

    def dfs(self, i: int, partial) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(
                f"planning search exceeded {self.budget} nodes"
            )
        if i == self.n:
            value = Fraction(partial)
            key = (value, self.chosen, tuple(self.grants))
            if self.best is None or key < self.best:
                self.best = key
            return
        bound = partial + sum(self.cost(j, self.upper(j)) for j in range(i, self.n))
        if self.best is not None:
            best_value, best_chosen, best_grants = self.best
            if bound > best_value:
                return
            if bound == best_value and (
                best_chosen < self.chosen or tuple(self.grants) > best_grants[:i]
            ):
                return
        route = self.route[i]
        for g in range(self.upper(i), -1, -1):
            step = self.cost(i, g)
            if self.edgr:
                r = Fraction(g, self.demand[i])
                step += sum(((q - r) ** 2 for q in self.ratios), Fraction(0))
                self.ratios.append(r)
            for j in route:
                self.residual[j] -= g
            self.grants.append(g)
            self.dfs(i + 1, partial + step)
            self.grants.pop()
            for j in route:
                self.residual[j] += g
            if self.edgr:
                self.ratios.pop()


def solve(problem: PlanProblem, node_budget: int = DEFAULT_NODE_BUDGET) -> PlanSolution:
    """Globally optimal plan for ``problem.objective``.

    Never infeasible: zero grants satisfy every capacity, so an over-subscribed
    instance yields reduced grants rather than an error.
    """
    chosen, grants = _Search(problem, node_budget).run()
    return PlanSolution.assemble(problem, chosen, grants)
