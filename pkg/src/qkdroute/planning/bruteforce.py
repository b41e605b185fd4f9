"""Exhaustive reference solver, used as an oracle for :mod:`.solver`.

Deliberately naive: every path assignment is paired with every integer grant
vector, in lexicographic order, and the first strictly better candidate wins.
"""

from __future__ import annotations

from itertools import product
from math import prod

from qkdroute.errors import SearchBudgetExceeded
from qkdroute.planning.model import PlanProblem, PlanSolution, evaluate

DEFAULT_BOUND = 10_000_000


def brute_force_solve(problem: PlanProblem, bound: int = DEFAULT_BOUND) -> PlanSolution:
    sizes = [len(ps) for ps in problem.path_sets]
    space = prod(sizes) * prod(c.bandwidth + 1 for c in problem.contracts)
    if space > bound:
        raise SearchBudgetExceeded(f"brute force space {space} exceeds bound {bound}")

    best = None
    grant_ranges = [range(c.bandwidth + 1) for c in problem.contracts]
    for chosen in product(*(range(s) for s in sizes)):
        routes = [problem.path_sets[i].paths[m] for i, m in enumerate(chosen)]
        for grants in product(*grant_ranges):
            load: dict = {}
            for path, g in zip(routes, grants):
                for e in path:
                    load[e] = load.get(e, 0) + g
            if any(v > problem.net.capacity[e] for e, v in load.items()):
                continue
            value = evaluate(problem, grants)
            if best is None or value < best[0]:
                best = (value, chosen, grants)
    assert best is not None  # zero grants are always feasible
    return PlanSolution.assemble(problem, best[1], best[2])
