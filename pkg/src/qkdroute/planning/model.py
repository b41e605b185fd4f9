"""Contracts, planning problems, solutions and the fairness objectives."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from qkdroute.errors import BuildError, InvalidInput
from qkdroute.network import Network, Path
from qkdroute.paths import DEFAULT_MAX_HOPS, PathSet, enumerate_paths


class Objective(str, Enum):
    PESCF = "PESCF"
    ESCF = "ESCF"
    EDGR = "EDGR"


@dataclass(frozen=True, order=True)
class Contract:
    """Planned demand.  Field order gives the lexicographic contract order."""

    source: str
    dest: str
    bandwidth: int
    priority: int

    def __post_init__(self) -> None:
        if self.source == self.dest:
            raise InvalidInput(f"contract {self} has identical endpoints")
        for name in ("bandwidth", "priority"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidInput(f"contract {name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class PlanProblem:
    net: Network
    contracts: tuple[Contract, ...]
    path_sets: tuple[PathSet, ...]
    objective: Objective

    @property
    def demands(self) -> tuple[int, ...]:
        return tuple(c.bandwidth for c in self.contracts)


@dataclass(frozen=True)
class PlanSolution:
    """Assignment of one path and an integer grant per contract.

    ``rho[i][m]`` is 1 when contract ``i`` uses its ``m``-th candidate path;
    ``edge_grant[i]`` is aligned with ``net.edges``.
    """

    rho: tuple[tuple[int, ...], ...]
    grant: tuple[int, ...]
    per_path_grant: tuple[tuple[int, ...], ...]
    edge_grant: tuple[tuple[int, ...], ...]
    objective_value: Fraction

    @property
    def chosen_path(self) -> tuple[int | None, ...]:
        """Index of the selected path per contract (None unless exactly one)."""
        out = []
        for row in self.rho:
            picked = [m for m, flag in enumerate(row) if flag]
            out.append(picked[0] if len(picked) == 1 else None)
        return tuple(out)

    def suggested_rejections(self) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.grant) if g == 0)

    @classmethod
    def assemble(
        cls, problem: PlanProblem, chosen: Sequence[int], grants: Sequence[int]
    ) -> "PlanSolution":
        """Derive every decision variable from path choices and grants."""
        edge_pos = {e: j for j, e in enumerate(problem.net.edges)}
        rho, per_path, per_edge = [], [], []
        for ps, m_star, g in zip(problem.path_sets, chosen, grants):
            rho.append(tuple(int(m == m_star) for m in range(len(ps))))
            per_path.append(tuple(g if m == m_star else 0 for m in range(len(ps))))
            row = [0] * len(edge_pos)
            for e in ps.paths[m_star]:
                row[edge_pos[e]] = g
            per_edge.append(tuple(row))
        return cls(
            rho=tuple(rho),
            grant=tuple(grants),
            per_path_grant=tuple(per_path),
            edge_grant=tuple(per_edge),
            objective_value=evaluate(problem, grants),
        )

    def path_of(self, problem: PlanProblem, i: int) -> Path:
        m = self.chosen_path[i]
        return () if m is None else problem.path_sets[i].paths[m]


def build_problem(
    net: Network,
    contracts: Sequence[Contract],
    max_hops: int = DEFAULT_MAX_HOPS,
    objective: Objective | str = Objective.PESCF,
) -> PlanProblem:
    """Sort contracts lexicographically and enumerate their candidate paths."""
    if not contracts:
        raise BuildError("at least one contract is required")
    objective = Objective(objective)
    unknown = [c for c in contracts if not (net.has_node(c.source) and net.has_node(c.dest))]
    if unknown:
        raise BuildError(
            "contracts reference unknown nodes: " + ", ".join(map(_short, unknown)),
            unknown,
        )
    ordered = tuple(sorted(contracts))
    path_sets = tuple(enumerate_paths(net, c.source, c.dest, max_hops) for c in ordered)
    unroutable = [c for c, ps in zip(ordered, path_sets) if not ps.paths]
    if unroutable:
        raise BuildError(
            f"no path within {max_hops} hops for: " + ", ".join(map(_short, unroutable)),
            unroutable,
        )
    return PlanProblem(net, ordered, path_sets, objective)


def _short(c: Contract) -> str:
    return f"({c.source},{c.dest},{c.bandwidth},{c.priority})"


def _check_grants(problem: PlanProblem, grants: Sequence[int]) -> None:
    if len(grants) != len(problem.contracts):
        raise ValueError(f"expected {len(problem.contracts)} grants, got {len(grants)}")
    for c, g in zip(problem.contracts, grants):
        if not 0 <= g <= c.bandwidth:
            raise ValueError(f"grant {g} outside [0, {c.bandwidth}] for {_short(c)}")


def objective_pescf(problem: PlanProblem, grants: Sequence[int]) -> Fraction:
    """Priority-weighted sum of squared shortfalls."""
    _check_grants(problem, grants)
    return Fraction(
        sum(c.priority * (c.bandwidth - g) ** 2 for c, g in zip(problem.contracts, grants))
    )


def objective_escf(problem: PlanProblem, grants: Sequence[int]) -> Fraction:
    _check_grants(problem, grants)
    return Fraction(sum((c.bandwidth - g) ** 2 for c, g in zip(problem.contracts, grants)))


def objective_edgr(problem: PlanProblem, grants: Sequence[int]) -> Fraction:
    """Pairwise squared differences of granted ratios minus total grant."""
    _check_grants(problem, grants)
    ratios = [Fraction(g, c.bandwidth) for c, g in zip(problem.contracts, grants)]
    spread = sum(
        ((ratios[i] - ratios[j]) ** 2 for i in range(len(ratios)) for j in range(i + 1, len(ratios))),
        Fraction(0),
    )
    return spread - sum(grants)


OBJECTIVES = {
    Objective.PESCF: objective_pescf,
    Objective.ESCF: objective_escf,
    Objective.EDGR: objective_edgr,
}


def evaluate(problem: PlanProblem, grants: Sequence[int]) -> Fraction:
    return OBJECTIVES[problem.objective](problem, grants)

