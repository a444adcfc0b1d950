"""Batch command-line front end.

Subcommands parse JSON fixtures, dispatch to the library, and emit JSON or
CSV. Outputs are byte-identical for identical inputs, seed, and config; no
timestamps or timings are written.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import acceptance
from .acts import build_ladder
from .engine import bound, perceived_distribution
from .errors import BracketingError, CoarseBoundsError, ConvergenceError
from .learning import (
    SmoothRule,
    audit_A1,
    bootstrap_errors,
    draw_sample,
    empirical_expectation,
    has_certain_equivalent,
)
from .preferences import simple_bounds_compare
from .serde import (
    act_from_record,
    bound_to_record,
    dump_json,
    load_act,
    perceived_to_record,
    write_csv,
)
from .statics import capacity_profile, mlr_cutoff_monotonicity, mlr_shift, sandwich_check
from .applications.crra import CRRAUtility
from .applications import insurance as ins
from .applications import portfolio as pf
from .applications import contracts as ct

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2


def _parse_capacities(text: str) -> list:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _thread_cap() -> int:
    raw = os.environ.get("COARSE_BOUNDS_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError as err:
        raise CoarseBoundsError(f"COARSE_BOUNDS_THREADS must be an integer, got {raw!r}") from err
    if cap < 1:
        raise CoarseBoundsError("COARSE_BOUNDS_THREADS must be at least 1")
    return cap


def cmd_bounds(args) -> int:
    act, belief = load_act(args.infile)
    ladder = build_ladder(act, belief)
    results = {
        n: bound_to_record(bound(ladder, n, args.kind))
        for n in _parse_capacities(args.capacity)
    }
    payload = results[next(iter(results))] if len(results) == 1 else results
    _emit(dump_json(payload), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    act_f, belief = load_act(args.infile)
    act_g, belief_g = load_act(args.infile2)
    if belief_g.masses != belief.masses:
        raise CoarseBoundsError("the two acts must share one belief")
    verdict = simple_bounds_compare(act_f, act_g, belief, _parse_capacities(args.capacity)[0])
    _emit(dump_json(verdict.to_json()), args.out)
    return EXIT_OK


def cmd_perceive(args) -> int:
    act, belief = load_act(args.infile)
    ladder = build_ladder(act, belief)
    dist = perceived_distribution(ladder, _parse_capacities(args.capacity)[0], args.attitude)
    _emit(dump_json(perceived_to_record(dist)), args.out)
    return EXIT_OK


def cmd_sweep_capacity(args) -> int:
    act, belief = load_act(args.infile)
    ladder = build_ladder(act, belief)
    n_max = max(_parse_capacities(args.capacity))
    profile = capacity_profile(ladder, n_max, args.kind)
    text = write_csv(profile.rows(), ("N", "W", "increment"))
    _emit(text, args.out)
    return EXIT_OK


def cmd_statics(args) -> int:
    act, belief = load_act(args.infile)
    ladder = build_ladder(act, belief)
    n = _parse_capacities(args.capacity)[0]
    lam = 0.8
    weights = np.exp(lam * np.arange(len(ladder))).tolist()
    profile = capacity_profile(ladder, max(2, n), "lower")
    report = {
        "sandwich": sandwich_check(ladder, n),
        "mlr_cutoff_monotone": mlr_cutoff_monotonicity(
            ladder, mlr_shift(ladder.level_masses, weights), n
        ),
        "profile_values": list(profile.values),
        "profile_monotone": profile.monotone,
        "profile_concave": profile.concave,
    }
    _emit(dump_json(report), args.out)
    return EXIT_OK


def cmd_learn(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        fixture = json.load(fh)
    act, belief = act_from_record(fixture)
    rule = SmoothRule(gamma=fixture["gamma"], k=fixture["k"])
    seed = int(fixture.get("seed", args.seed))
    data = draw_sample(belief, act.state_ids, int(fixture["K"]), seed)
    b = int(fixture["B"])
    errors = bootstrap_errors(act, data, b, seed)
    audit = audit_A1(act, data, rule, b, seed, true_belief=belief)
    report = {
        "empirical_mean": empirical_expectation(act, data),
        "has_certain_equivalent": has_certain_equivalent(act, data, rule, b, seed),
        "coarsening_audit": {
            "precondition_met": audit.precondition_met,
            "violations": [list(v) for v in audit.violations],
        },
        "error_mean": errors.mean(),
    }
    _emit(dump_json(report), args.out)
    if args.quantiles_out:
        rows = errors.quantiles()
        write_csv(rows, ("quantile", "error"), args.quantiles_out)
    return EXIT_OK


def _loss_model(grid: dict) -> ins.LossModel:
    model = ins.LossModel.uniform(grid.get("max_loss", 1.0), grid.get("n", 200))
    if grid.get("tilt"):
        model = model.tilted(float(grid["tilt"]))
    return model


def _contract(record: dict) -> ins.InsuranceContract:
    return ins.InsuranceContract(
        premium=record["premium"], deductible=record["deductible"],
        coverage=record["coverage"], cap=record.get("cap"), wealth=record["wealth"],
    )


def cmd_insurance(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        fixture = json.load(fh)
    contract = _contract(fixture["contract"])
    grid_spec = dict(fixture.get("grid", {}))
    if args.grid:
        grid_spec["n"] = args.grid
    model = _loss_model(grid_spec)
    utility = CRRAUtility(fixture.get("gamma", 2.0))
    capacities = _parse_capacities(args.capacity)
    if args.dominated is not None:
        pair = ins.dominated_pair(contract, float(args.dominated), model, utility,
                                  capacities[0], tol=args.tol)
        _emit(dump_json({
            "indifferent": pair.indifferent,
            "lowest_cutoff_ok": pair.lowest_cutoff_ok,
            "value_high": pair.value_high,
            "value_low": pair.value_low,
            "low_premium": pair.low_contract.premium,
            "low_deductible": pair.low_contract.deductible,
        }), args.out)
        return EXIT_OK
    if args.figure:
        text = emit_figure_data(args.figure, contract, model, utility, capacities[0],
                                fixture.get("target_deductible"))
        _emit(text, args.out)
        return EXIT_OK
    rows = [
        (n, args.attitude, ins.plan_value(contract, model, utility, n, args.attitude))
        for n in capacities
    ]
    _emit(write_csv(rows, ("N", "attitude", "value")), args.out)
    return EXIT_OK


def emit_figure_data(kind: str, contract, model, utility, n, target_deductible=None) -> str:
    """Plot-ready step-function overlays of plans and their lower bounds."""
    act = ins.plan_act(contract, model)
    wealth = dict(zip(act.state_ids, act.values))
    cuts = ins.plan_cutoffs(contract, model, utility, n)
    edges = [*cuts, model.max_loss]

    def overlay(contract_, edges_):
        def at(loss):
            for e in edges_:
                if loss <= e:
                    return contract_.wealth - contract_.premium - ins.consumer_payment(contract_, e)
            return contract_.wealth - contract_.premium - ins.consumer_payment(contract_, model.max_loss)
        return at

    bound_at = overlay(contract, edges)
    if kind == "siminf_overlay":
        rows = [(x, wealth[x], bound_at(x)) for x in model.losses]
        return write_csv(rows, ("loss", "plan_wealth", "siminf_value"))
    if kind == "dominated_pair":
        if target_deductible is None:
            raise CoarseBoundsError("dominated_pair figure needs target_deductible")
        pair = ins.dominated_pair(contract, float(target_deductible), model, utility, n)
        low_act = ins.plan_act(pair.low_contract, model)
        low_wealth = dict(zip(low_act.state_ids, low_act.values))
        rows = [
            (x, wealth[x], bound_at(x), low_wealth[x]) for x in model.losses
        ]
        return write_csv(rows, ("loss", "plan_wealth", "siminf_value", "second_plan_wealth"))
    raise CoarseBoundsError(f"unknown figure kind {kind!r}")


def cmd_portfolio(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        fixture = json.load(fh)
    problem = pf.PortfolioProblem(
        endowment=fixture["endowment"], safe_return=fixture["safe_return"],
        risky_returns=fixture["risky_returns"], risky_masses=fixture["risky_masses"],
        beta=fixture["beta"], utility=CRRAUtility(fixture.get("gamma", 2.0)),
        capacity=max(_parse_capacities(args.capacity)), attitude=args.attitude,
    )
    rows = []
    for n in _parse_capacities(args.capacity):
        alpha = pf.solve_allocation(problem, fixture.get("savings", 0.5), capacity=n)
        price = pf.equilibrium_price(problem, capacity=n)
        rows.append((n, args.attitude, alpha, price))
    _emit(write_csv(rows, ("N", "attitude", "risky_share", "price")), args.out)
    return EXIT_OK


def cmd_contract(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        fixture = json.load(fh)
    costs = {str(k): float(v) for k, v in fixture["effort_costs"].items()}
    efforts = tuple(costs)
    problem = ct.ContractingProblem(
        outputs=tuple(fixture["outputs"]),
        efforts=efforts,
        output_masses=tuple(tuple(m) for m in fixture["output_masses"]),
        agent_utility=lambda wage, effort: float(np.sqrt(max(wage, 1e-12))) - costs[effort],
        principal_utility=lambda output, wage: output - wage,
        wage_grid=tuple(fixture["wage_grid"]),
    )
    schedule = fixture["schedule"]
    n = _parse_capacities(args.capacity)[0]
    result = ct.simplify_contract(problem, schedule, n)
    report = {
        "induced_effort": result.induced_effort,
        "effort_unchanged": result.effort_unchanged,
        "agent_value_gap": result.agent_value_gap,
        "principal_pointwise_ok": result.principal_pointwise_ok,
        "simplified_schedule": list(result.schedule),
        "distinct_wages": len(set(result.schedule)),
    }
    _emit(dump_json(report), args.out)
    return EXIT_OK


def cmd_accept(args) -> int:
    results = acceptance.run_all(seed=args.seed, suite=args.suite)
    lines = acceptance.report_lines(results)
    _emit("\n".join(lines), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarse-bounds",
        description="Coarse lower/upper bounds of uncertain acts under capacity constraints.",
    )
    sub = parser.add_subparsers(dest="command")

    def common(p, capacity=True):
        p.add_argument("--in", dest="infile", required=True, help="input JSON file")
        p.add_argument("--out", default=None, help="output path (stdout otherwise)")
        if capacity:
            p.add_argument("--N", dest="capacity", required=True,
                           help="capacity, single value or range a..b")

    p = sub.add_parser("bounds", help="optimal bound of an act")
    common(p)
    p.add_argument("--kind", choices=("lower", "upper"), default="lower")

    p = sub.add_parser("compare", help="bound-based comparison of two acts")
    common(p)
    p.add_argument("--in2", dest="infile2", required=True, help="second act JSON")

    p = sub.add_parser("perceive", help="perceived distribution of an act")
    common(p)
    p.add_argument("--attitude", choices=("cautious", "reckless"), default="cautious")

    p = sub.add_parser("sweep-capacity", help="W(N) profile as CSV")
    common(p)
    p.add_argument("--kind", choices=("lower", "upper"), default="lower")

    p = sub.add_parser("statics", help="lattice checks on one instance")
    common(p)

    p = sub.add_parser("learn", help="learning fixture report")
    common(p, capacity=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quantiles-out", dest="quantiles_out", default=None)

    p = sub.add_parser("insurance", help="plan values, dominated pairs, or figure data")
    common(p)
    p.add_argument("--attitude", choices=("cautious", "reckless"), default="cautious")
    p.add_argument("--figure", choices=("siminf_overlay", "dominated_pair"), default=None)
    p.add_argument("--grid", type=int, default=None, help="override grid resolution")
    p.add_argument("--tol", type=float, default=1e-9, help="indifference tolerance")
    p.add_argument("--dominated", default=None, metavar="TARGET_D",
                   help="emit the weakly dominated low-deductible pair report")

    p = sub.add_parser("portfolio", help="allocation and price sweeps")
    common(p)
    p.add_argument("--attitude", choices=("cautious", "reckless"), default="cautious")

    p = sub.add_parser("contract", help="contract simplification report")
    common(p)

    p = sub.add_parser("accept", help="run the acceptance suites")
    p.add_argument("--suite", default="all",
                   choices=("all", *acceptance.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)

    return parser


COMMANDS = {
    "bounds": cmd_bounds,
    "compare": cmd_compare,
    "perceive": cmd_perceive,
    "sweep-capacity": cmd_sweep_capacity,
    "statics": cmd_statics,
    "learn": cmd_learn,
    "insurance": cmd_insurance,
    "portfolio": cmd_portfolio,
    "contract": cmd_contract,
    "accept": cmd_accept,
}


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if not args.command:
        parser.print_usage()
        return EXIT_USAGE
    try:
        _thread_cap()
        if hasattr(args, "capacity") and isinstance(args.capacity, str):
            if any(n < 1 for n in _parse_capacities(args.capacity)):
                raise CoarseBoundsError("capacities must be at least 1")
        return COMMANDS[args.command](args)
    except (BracketingError, ConvergenceError, ArithmeticError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    except (CoarseBoundsError, FileNotFoundError, KeyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
