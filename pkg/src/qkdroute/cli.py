"""``qkdroute`` command line: plan, simulate, adversary, verify, paths.

Data goes to stdout (or ``--output``), diagnostics to stderr.

Exit codes: 0 success, 1 input error, 2 plan needs reduced grants,
3 verification mismatch, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path as FilePath
from typing import Any, Sequence

from qkdroute import serialize
from qkdroute.adversary import Construction, generate
from qkdroute.errors import InvalidInput, InvalidInstance, QkdRouteError, SearchBudgetExceeded
from qkdroute.network import Edge, Network
from qkdroute.offline import DEFAULT_STATE_BUDGET, optimal_served, ratio_of
from qkdroute.online import Strategy, simulate
from qkdroute.paths import DEFAULT_MAX_HOPS, enumerate_paths
from qkdroute.planning import Objective, build_problem, check_solution, solve

EXIT_OK, EXIT_INPUT, EXIT_SUGGESTIONS, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class RefreshConfig:
    rates: dict[Edge, int]
    period: int


@dataclass(frozen=True)
class RunConfig:
    max_hops: int = DEFAULT_MAX_HOPS
    objective: Objective = Objective.PESCF
    strategy: Strategy = Strategy.WSP
    refresh: RefreshConfig | None = None
    search_budget: int = DEFAULT_STATE_BUDGET
    seed: int = 0

    @classmethod
    def from_dict(cls, doc: Any) -> "RunConfig":
        if not isinstance(doc, dict):
            raise InvalidInput("config: expected an object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise InvalidInput(f"config: unknown key(s) {', '.join(unknown)}")
        values: dict[str, Any] = {}
        for key in ("max_hops", "search_budget", "seed"):
            if key in doc:
                v = doc[key]
                if isinstance(v, bool) or not isinstance(v, int):
                    raise InvalidInput(f"config.{key}: expected integer, got {v!r}")
                values[key] = v
        try:
            if "objective" in doc:
                values["objective"] = Objective(doc["objective"])
            if "strategy" in doc:
                values["strategy"] = Strategy(doc["strategy"])
        except ValueError as exc:
            raise InvalidInput(f"config: {exc}") from None
        if doc.get("refresh") is not None:
            values["refresh"] = _refresh_from_dict(doc["refresh"])
        cfg = cls(**values)
        cfg.check()
        return cfg

    def check(self) -> None:
        if self.max_hops < 1:
            raise InvalidInput(f"max_hops must be positive, got {self.max_hops}")
        if self.search_budget < 1:
            raise InvalidInput(f"search_budget must be positive, got {self.search_budget}")


def _refresh_from_dict(doc: Any) -> RefreshConfig:
    if not isinstance(doc, dict) or set(doc) != {"rates", "period"}:
        raise InvalidInput("config.refresh: expected {\"rates\": [...], \"period\": n}")
    period = doc["period"]
    if isinstance(period, bool) or not isinstance(period, int) or period < 1:
        raise InvalidInput(f"config.refresh.period: expected positive integer, got {period!r}")
    rates = {}
    for k, item in enumerate(doc["rates"]):
        if not isinstance(item, dict) or set(item) != {"src", "dst", "rate"}:
            raise InvalidInput(f"config.refresh.rates[{k}]: expected src, dst, rate")
        if isinstance(item["rate"], bool) or not isinstance(item["rate"], int) or item["rate"] < 0:
            raise InvalidInput(f"config.refresh.rates[{k}].rate: expected non-negative integer")
        rates[Edge(item["src"], item["dst"])] = item["rate"]
    return RefreshConfig(rates, period)


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.from_dict(serialize.load_json(args.config)) if args.config else RunConfig()
    overrides = {
        key: getattr(args, key)
        for key in ("max_hops", "objective", "strategy", "search_budget", "seed")
        if getattr(args, key, None) is not None
    }
    if "objective" in overrides:
        overrides["objective"] = Objective(overrides["objective"])
    if "strategy" in overrides:
        overrides["strategy"] = Strategy(overrides["strategy"])
    cfg = replace(cfg, **overrides)
    cfg.check()
    return cfg


def _emit(text: str, output: str | None) -> None:
    if output:
        FilePath(output).write_text(text)
    else:
        sys.stdout.write(text)


def _check_refresh(net: Network, refresh: RefreshConfig) -> None:
    unknown = [e for e in refresh.rates if not net.has_edge(e)]
    if unknown:
        raise InvalidInput("config.refresh.rates: unknown edge(s) " + ", ".join(map(str, unknown)))


# -- commands --------------------------------------------------------------

def cmd_plan(args: argparse.Namespace) -> int:
    cfg = _config(args)
    net = serialize.network_from_dict(serialize.load_json(args.network))
    contracts = serialize.contracts_from_dict(serialize.load_json(args.contracts))
    problem = build_problem(net, contracts, cfg.max_hops, cfg.objective)
    solution = solve(problem, cfg.search_budget)
    report = check_solution(problem, solution)
    if not report.ok:
        failed = ", ".join(r.name for r in report.results if not r.passed)
        raise QkdRouteError(f"solver produced a plan violating constraint(s) {failed}")
    _emit(serialize.dumps(serialize.solution_to_dict(problem, solution)), args.output)
    if solution.grant != problem.demands:
        short = [i for i, (g, b) in enumerate(zip(solution.grant, problem.demands)) if g < b]
        print(f"demand not fully grantable; reduced contracts: {short}", file=sys.stderr)
        return EXIT_SUGGESTIONS
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _config(args)
    net = serialize.network_from_dict(serialize.load_json(args.network))
    trace = serialize.trace_from_dict(serialize.load_json(args.trace))
    rates = period = None
    if cfg.refresh is not None:
        _check_refresh(net, cfg.refresh)
        rates, period = cfg.refresh.rates, cfg.refresh.period
    result = simulate(net, trace, cfg.strategy, rates, period)
    doc = {"strategy": cfg.strategy.value, **serialize.simulation_to_dict(result)}
    _emit(serialize.dumps(doc), args.output)
    print(f"served {result.served_count}/{len(trace)}", file=sys.stderr)
    return EXIT_OK


def write_instance(instance, out_dir: FilePath) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "network.json").write_text(serialize.dumps(serialize.network_to_dict(instance.net)))
    (out_dir / "trace.json").write_text(serialize.dumps(serialize.trace_to_dict(instance.trace)))
    (out_dir / "manifest.json").write_text(serialize.dumps(serialize.manifest_to_dict(instance)))


def cmd_adversary(args: argparse.Namespace) -> int:
    instance = generate(args.construction, args.edge_count, args.beta, args.mu)
    write_instance(instance, FilePath(args.out))
    print(f"predicted ratio {serialize.fraction_str(instance.predicted_ratio)}", file=sys.stderr)
    return EXIT_OK


VERIFY_COLUMNS = [
    "construction", "edge_count", "beta", "mu", "trace_length", "served", "opt",
    "simulated_ratio", "predicted_ratio", "match", "status",
]


def verify_rows(
    construction: Construction, grid: Sequence[tuple[int, int, int]], budget: int
) -> list[dict]:
    rows = []
    for e, b, m in grid:
        row: dict[str, Any] = dict.fromkeys(VERIFY_COLUMNS, "")
        row.update(construction=construction.value, edge_count=e, beta=b, mu=m)
        try:
            inst = generate(construction, e, b, m)
        except InvalidInstance as exc:
            row.update(match="false", status=f"invalid: {exc}")
            rows.append(row)
            continue
        row.update(
            trace_length=len(inst.trace),
            predicted_ratio=serialize.fraction_str(inst.predicted_ratio),
        )
        served = simulate(inst.net, inst.trace, construction.strategy).served_count
        row["served"] = served
        try:
            opt, _ = optimal_served(inst.net, inst.trace, budget)
        except SearchBudgetExceeded:
            row.update(status="skipped")
            rows.append(row)
            continue
        ratio = ratio_of(served, opt)
        row.update(
            opt=opt,
            simulated_ratio=serialize.fraction_str(ratio),
            match=str(ratio == inst.predicted_ratio).lower(),
            status="ok",
        )
        rows.append(row)
    return rows


def _parse_triple(text: str) -> tuple[int, int, int]:
    try:
        e, b, m = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected E,BETA,MU, got {text!r}") from None
    return e, b, m


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config(args)
    rows = verify_rows(Construction(args.construction), args.grid, cfg.search_budget)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=VERIFY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit(buf.getvalue(), args.output)
    if any(r["match"] == "false" for r in rows):
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_paths(args: argparse.Namespace) -> int:
    cfg = _config(args)
    net = serialize.network_from_dict(serialize.load_json(args.network))
    try:
        ps = enumerate_paths(net, args.source, args.dest, cfg.max_hops)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    doc = {
        "source": ps.source,
        "dest": ps.dest,
        "max_hops": ps.max_hops,
        "paths": [serialize.path_to_list(p) for p in ps.paths],
    }
    _emit(serialize.dumps(doc), args.output)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for plan suggestions here
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qkdroute", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON run configuration; flags override it")
        p.add_argument("--search-budget", dest="search_budget", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("-o", "--output", help="write the report here instead of stdout")

    p = sub.add_parser("plan", help="fair route planning for a contract set")
    p.add_argument("network")
    p.add_argument("contracts")
    p.add_argument("--max-hops", dest="max_hops", type=int)
    p.add_argument("--objective", choices=[o.value for o in Objective])
    common(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("simulate", help="online routing of a request trace")
    p.add_argument("network")
    p.add_argument("trace")
    p.add_argument("--strategy", choices=[s.value for s in Strategy])
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("adversary", help="write a worst-case instance")
    p.add_argument("construction", choices=[c.value for c in Construction])
    p.add_argument("edge_count", type=int)
    p.add_argument("beta", type=int)
    p.add_argument("mu", type=int)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("verify", help="compare simulated and predicted ratios as CSV")
    p.add_argument("construction", choices=[c.value for c in Construction])
    p.add_argument("grid", nargs="*", type=_parse_triple, metavar="E,BETA,MU")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paths", help="list candidate paths between two nodes")
    p.add_argument("network")
    p.add_argument("source")
    p.add_argument("dest")
    p.add_argument("--max-hops", dest="max_hops", type=int)
    common(p)
    p.set_defaults(func=cmd_paths)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (QkdRouteError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
