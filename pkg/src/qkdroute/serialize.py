"""JSON documents for networks, contracts, traces and every report.

Rationals are written as ``"num/den"`` strings; the ``*_decimal`` fields next
to them are for people and are never read back.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Any

from qkdroute.errors import InvalidInput
from qkdroute.network import Edge, Network, Path, validate_network
from qkdroute.offline import RatioReport
from qkdroute.online import BufferState, Request, SimulationResult, Trace
from qkdroute.planning.model import Contract, PlanProblem, PlanSolution


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_json(path: str | FilePath) -> Any:
    text = FilePath(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    if not sep:
        raise InvalidInput(f"expected 'num/den', got {text!r}")
    return Fraction(int(num), int(den))


def decimal_str(x: Fraction, places: int = 6) -> str:
    return f"{float(x):.{places}f}"


def _field(doc: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(doc, dict):
        raise InvalidInput(f"{where}: expected an object")
    if key not in doc:
        raise InvalidInput(f"{where}.{key}: missing")
    value = doc[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise InvalidInput(f"{where}.{key}: expected {kind.__name__}, got {value!r}")
    return value


def _no_extra(doc: dict, allowed: set[str], where: str) -> None:
    extra = sorted(set(doc) - allowed)
    if extra:
        raise InvalidInput(f"{where}: unknown field(s) {', '.join(extra)}")


# -- network ---------------------------------------------------------------

def network_to_dict(net: Network) -> dict:
    return {
        "nodes": list(net.nodes),
        "edges": [{"src": e.src, "dst": e.dst, "capacity": net.capacity[e]} for e in net.edges],
    }


def network_from_dict(doc: Any) -> Network:
    nodes = _field(doc, "nodes", list, "network")
    raw = _field(doc, "edges", list, "network")
    _no_extra(doc, {"nodes", "edges"}, "network")
    edges = []
    for k, item in enumerate(raw):
        where = f"network.edges[{k}]"
        _no_extra(item, {"src", "dst", "capacity"}, where)
        edges.append((
            _field(item, "src", str, where),
            _field(item, "dst", str, where),
            _field(item, "capacity", int, where),
        ))
    return validate_network(nodes, edges)


# -- paths -----------------------------------------------------------------

def path_to_list(path: Path) -> list[dict]:
    return [{"src": e.src, "dst": e.dst} for e in path]


def path_from_list(items: Any, where: str) -> Path:
    if not isinstance(items, list):
        raise InvalidInput(f"{where}: expected a list of edges")
    return tuple(
        Edge(_field(it, "src", str, f"{where}[{k}]"), _field(it, "dst", str, f"{where}[{k}]"))
        for k, it in enumerate(items)
    )


# -- contracts -------------------------------------------------------------

def contracts_to_dict(contracts) -> dict:
    return {
        "contracts": [
            {"src": c.source, "dst": c.dest, "bandwidth": c.bandwidth, "priority": c.priority}
            for c in contracts
        ]
    }


def contracts_from_dict(doc: Any) -> list[Contract]:
    out = []
    for k, item in enumerate(_field(doc, "contracts", list, "document")):
        where = f"contracts[{k}]"
        _no_extra(item, {"src", "dst", "bandwidth", "priority"}, where)
        out.append(Contract(
            _field(item, "src", str, where),
            _field(item, "dst", str, where),
            _field(item, "bandwidth", int, where),
            _field(item, "priority", int, where),
        ))
    return out


# -- traces ----------------------------------------------------------------

def trace_to_dict(trace: Trace) -> dict:
    return {
        "mu": trace.mu,
        "requests": [{"src": r.source, "dst": r.dest, "bits": r.bits} for r in trace.requests],
    }


def trace_from_dict(doc: Any) -> Trace:
    mu = _field(doc, "mu", int, "trace")
    _no_extra(doc, {"mu", "requests"}, "trace")
    requests = []
    for k, item in enumerate(_field(doc, "requests", list, "trace")):
        where = f"trace.requests[{k}]"
        _no_extra(item, {"src", "dst", "bits"}, where)
        requests.append(Request(
            _field(item, "src", str, where),
            _field(item, "dst", str, where),
            _field(item, "bits", int, where),
        ))
    return Trace(mu, tuple(requests))


# -- plan reports ----------------------------------------------------------

def solution_to_dict(problem: PlanProblem, sol: PlanSolution) -> dict:
    rows = []
    for i, c in enumerate(problem.contracts):
        rows.append({
            "src": c.source,
            "dst": c.dest,
            "demand": c.bandwidth,
            "priority": c.priority,
            "path_index": sol.chosen_path[i],
            "path": path_to_list(sol.path_of(problem, i)),
            "grant": sol.grant[i],
            "status": "granted" if sol.grant[i] == c.bandwidth
            else "suggested-rejection" if sol.grant[i] == 0 else "reduced",
        })
    return {
        "objective_kind": problem.objective.value,
        "contracts": rows,
        "objective": fraction_str(sol.objective_value),
        "objective_decimal": decimal_str(sol.objective_value),
    }


def solution_from_dict(problem: PlanProblem, doc: Any) -> PlanSolution:
    rows = _field(doc, "contracts", list, "solution")
    if len(rows) != len(problem.contracts):
        raise InvalidInput(f"solution lists {len(rows)} contracts, problem has {len(problem.contracts)}")
    chosen, grants = [], []
    for i, row in enumerate(rows):
        where = f"solution.contracts[{i}]"
        m = _field(row, "path_index", int, where)
        path = path_from_list(row.get("path"), f"{where}.path")
        if not 0 <= m < len(problem.path_sets[i]) or problem.path_sets[i].paths[m] != path:
            raise InvalidInput(f"{where}: path does not match candidate {m}")
        chosen.append(m)
        grants.append(_field(row, "grant", int, where))
    sol = PlanSolution.assemble(problem, chosen, grants)
    if sol.objective_value != parse_fraction(_field(doc, "objective", str, "solution")):
        raise InvalidInput("solution.objective does not match the grants")
    return sol


# -- simulation reports ----------------------------------------------------

def residual_to_list(state: BufferState) -> list[dict]:
    return [{"src": e.src, "dst": e.dst, "residual": v} for e, v in sorted(state.residual.items())]


def simulation_to_dict(result: SimulationResult) -> dict:
    return {
        "decisions": [path_to_list(p) if p else None for p in result.decisions],
        "served": result.served_count,
        "rejected": result.rejected_count,
        "final_residual": residual_to_list(result.final_state),
    }


def simulation_from_dict(doc: Any) -> SimulationResult:
    decisions = []
    for k, item in enumerate(_field(doc, "decisions", list, "simulation")):
        decisions.append(() if item is None else path_from_list(item, f"simulation.decisions[{k}]"))
    residual = {}
    for k, item in enumerate(_field(doc, "final_residual", list, "simulation")):
        where = f"simulation.final_residual[{k}]"
        e = Edge(_field(item, "src", str, where), _field(item, "dst", str, where))
        residual[e] = _field(item, "residual", int, where)
    return SimulationResult(
        tuple(decisions),
        _field(doc, "served", int, "simulation"),
        _field(doc, "rejected", int, "simulation"),
        BufferState(residual),
    )


# -- ratio reports and manifests -------------------------------------------

def ratio_report_to_dict(report: RatioReport) -> dict:
    return {
        "algorithm_served": report.algorithm_served,
        "opt_served": report.opt_served,
        "ratio": fraction_str(report.ratio),
        "ratio_decimal": decimal_str(report.ratio),
        "opt_assignment": [path_to_list(p) if p else None for p in report.opt_assignment],
    }


def ratio_report_from_dict(doc: Any) -> RatioReport:
    assignment = tuple(
        () if item is None else path_from_list(item, f"report.opt_assignment[{k}]")
        for k, item in enumerate(_field(doc, "opt_assignment", list, "report"))
    )
    return RatioReport(
        _field(doc, "algorithm_served", int, "report"),
        _field(doc, "opt_served", int, "report"),
        parse_fraction(_field(doc, "ratio", str, "report")),
        assignment,
    )


def manifest_to_dict(instance) -> dict:
    return {
        "construction": instance.construction.value,
        "edge_count": instance.edge_count,
        "beta": instance.beta,
        "mu": instance.mu,
        "trace_length": len(instance.trace),
        "predicted_ratio": fraction_str(instance.predicted_ratio),
        "predicted_ratio_decimal": decimal_str(instance.predicted_ratio),
        "network": "network.json",
        "trace": "trace.json",
    }
