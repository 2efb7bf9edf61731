"""Command-line front end (``ppg``)."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import conditions as cond
from .algorithm import (VerificationFailed, plan_for_n, reduced_plan, run_quadrilateral_baseline,
                        run_triangle_baseline, run_two_round, build_round1_plan)
from .atlas import run_atlas
from .dot import export_dot
from .lowerbound import attack_table, check_lemma4, density
from .model import Placement, load_instance, parse_rational
from .oracles import AdversaryOracle, HiddenInstance, HonestOracle
from .rigidity import (InstanceTooLarge, UnderdeterminedGraph, enumerate_layer_drawings,
                       solve_all_placements)


class ConfigError(ValueError):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1))


def _oracle(mode: str, n: int, seed: int):
    if mode == "honest":
        return HonestOracle(HiddenInstance.random(n, seed))
    return AdversaryOracle(n, seed=seed)


def cmd_run(args) -> int:
    if args.alg == "three-path":
        if args.oracle == "adversary":
            plan = reduced_plan(args.leaves, 1)
        elif args.n is not None:
            plan = plan_for_n(args.n)
        else:
            if args.b is None or args.b < 1:
                raise ConfigError("three-path needs --b >= 1 or --n >= 4664")
            plan = build_round1_plan(args.b)
        oracle = _oracle(args.oracle, plan.n, args.seed)
        report = run_two_round(oracle, plan=plan)
    else:
        if args.n is None:
            raise ConfigError(f"{args.alg} needs --n")
        low = 2 if args.alg == "triangle" else 8
        if args.n < low:
            raise ConfigError(f"{args.alg} needs --n >= {low}")
        oracle = _oracle(args.oracle, args.n, args.seed)
        run = run_triangle_baseline if args.alg == "triangle" else run_quadrilateral_baseline
        report = run(oracle, args.n)
    out = report.to_json()
    if args.oracle == "adversary":
        verdict = oracle.verdict()
        out["adversary"] = {"defeated": verdict.defeated, "reason": verdict.reason}
        report.verified = report.verified and not verdict.defeated
        out["verified"] = report.verified
    _emit(out)
    if args.emit_dot:
        Path(args.emit_dot).write_text(export_dot(report.graph, report.placement))
    if args.emit_json:
        full = report.to_json(placement=True)
        full["instance"] = report.graph.to_json()
        Path(args.emit_json).write_text(json.dumps(full, indent=1) + "\n")
    return 0 if report.verified else 1


def cmd_verify_rigid(args) -> int:
    g = load_instance(args.instance)
    sols = solve_all_placements(g, cap=args.cap, limit=2)
    print("rigid" if len(sols) == 1 else "ambiguous")
    if args.witness:
        _emit([p.to_json() for p in sols])
    return 0 if len(sols) == 1 else 1


def cmd_layer_check(args) -> int:
    g = load_instance(args.instance)
    drawings = enumerate_layer_drawings(g, limit=args.limit, cap=args.cap)
    print(f"drawings: {len(drawings)}")
    if drawings:
        d = drawings[0]
        print(export_dot(g, directions=d.directions(), coords2d=d.points(), name="layer"), end="")
    return 0


def cmd_conditions(args) -> int:
    if args.action == "list":
        if args.replacement:
            sets = [cond.appendixA_replacement_conditions()]
        elif args.group is not None:
            sets = [cond.seven_cycle_conditions()[args.group - 1]]
        elif args.serial is not None:
            sets = [cond.lemma2_condition_sets()[args.serial - 1]]
        else:
            sets = cond.lemma2_condition_sets()
        for cs in sets:
            for line in cs.lines():
                print(line)
        return 0
    if not args.lengths:
        raise ConfigError("conditions check needs a lengths file")
    data = json.loads(Path(args.lengths).read_text())
    report = cond.check_three_path(cond.ThreePathLengths.from_mapping(data))
    _emit(report.to_json())
    return 0 if report.ok else 1


def cmd_analyze(args) -> int:
    g = load_instance(args.instance)
    everything = not (args.lemma4 or args.density or args.attacks)
    out = {}
    if args.lemma4 or everything:
        out["lemma4"] = check_lemma4(g).to_json()
    if args.density or everything:
        out["density"] = density(g).to_json()
    if args.attacks:
        out["attacks"] = []
        for r in attack_table():
            count = len(solve_all_placements(r.cycle()))
            out["attacks"].append({**r.to_json(), "placements": count})
    _emit(out)
    return 0


def cmd_atlas(args) -> int:
    if args.max_n > 7:
        raise ConfigError("--max-n must be at most 7")
    report = run_atlas(args.max_n, args.samples, args.seed)
    _emit({k: v for k, v in report.to_json().items() if k != "cases" or v})
    return 0 if not report.inconsistent else 1


def cmd_export_dot(args) -> int:
    g = load_instance(args.instance)
    placement = None
    if args.placement:
        data = json.loads(Path(args.placement).read_text())
        placement = Placement({int(k): parse_rational(v) for k, v in data.items()})
    text = export_dot(g, placement)
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return 0


def cmd_oracle(args) -> int:
    """Answer a two-round query file ``{"n": N, "rounds": [[[a, b], ...], ...]}``."""
    data = json.loads(Path(args.queries).read_text())
    n = int(data.get("n", args.n or 0))
    if n < 2:
        raise ConfigError("oracle needs n (in the query file or --n)")
    oracle = _oracle(args.mode, n, args.seed)
    for i, rnd in enumerate(data["rounds"], 1):
        oracle.answer([tuple(p) for p in rnd], i)
    out = oracle.transcript.to_json()
    if args.mode == "adversary" and len(data["rounds"]) == 2:
        out["verdict"] = oracle.verdict().to_json()
    _emit(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ppg", description="Exact point placement on a line.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a placement algorithm against an oracle")
    r.add_argument("--alg", choices=["three-path", "triangle", "quad"], default="three-path")
    size = r.add_mutually_exclusive_group()
    size.add_argument("--b", type=int)
    size.add_argument("--n", type=int)
    r.add_argument("--oracle", choices=["honest", "adversary"], default="honest")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--leaves", type=int, default=5,
                   help="leaves per core point for the small plan used against the adversary")
    r.add_argument("--verify", action="store_true",
                   help="compare against the hidden instance (always on for honest oracles)")
    r.add_argument("--emit-dot")
    r.add_argument("--emit-json")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify-rigid", help="decide line rigidity by brute force")
    v.add_argument("instance")
    v.add_argument("--cap", type=int)
    v.add_argument("--witness", action="store_true")
    v.set_defaults(func=cmd_verify_rigid)

    lc = sub.add_parser("layer-check", help="search for a layer drawing")
    lc.add_argument("instance")
    lc.add_argument("--limit", type=int, default=1000)
    lc.add_argument("--cap", type=int)
    lc.set_defaults(func=cmd_layer_check)

    c = sub.add_parser("conditions", help="list or check rigidity conditions")
    c.add_argument("action", choices=["list", "check"])
    c.add_argument("lengths", nargs="?")
    which = c.add_mutually_exclusive_group()
    which.add_argument("--serial", type=int, choices=range(1, 7))
    which.add_argument("--group", type=int, choices=range(1, 7))
    which.add_argument("--replacement", action="store_true")
    c.set_defaults(func=cmd_conditions)

    a = sub.add_parser("analyze", help="path, density and attack reports")
    a.add_argument("instance")
    a.add_argument("--lemma4", action="store_true")
    a.add_argument("--density", action="store_true")
    a.add_argument("--attacks", action="store_true")
    a.set_defaults(func=cmd_analyze)

    at = sub.add_parser("atlas", help="rigidity vs. layer drawing on all small graphs")
    at.add_argument("--max-n", type=int, default=5)
    at.add_argument("--samples", type=int, default=50)
    at.add_argument("--seed", type=int, default=0)
    at.set_defaults(func=cmd_atlas)

    d = sub.add_parser("export-dot", help="write an instance as DOT")
    d.add_argument("instance")
    d.add_argument("--placement")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_export_dot)

    o = sub.add_parser("oracle", help="answer a query file with an oracle")
    o.add_argument("--mode", choices=["honest", "adversary"], default="honest")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--n", type=int)
    o.add_argument("--queries", required=True)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (ConfigError, InstanceTooLarge, UnderdeterminedGraph, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
