"""Command-line entry point: ``itsp gen|solve|bench|verify|report``.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from . import bench
from .ga import GAParams, run
from .instances import (
    GenConfig,
    InstanceFileError,
    generate_suite,
    read_instance,
    write_instance,
)
from .representations import REPRESENTATIONS
from .solution import read_solution, solution_profile, solution_to_dict, verify_solution, write_solution
from .temperature import ProfileKind, ProfilePair

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_VERIFY = 0, 1, 2, 3

log = logging.getLogger("itsp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split("-"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 10-20, got {text!r}") from None
    if lo < 0 or lo > hi:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}")
    return lo, hi


def _csv_list(choices):
    def parse(text: str) -> list[str]:
        items = [x.strip() for x in text.split(",") if x.strip()]
        bad = [x for x in items if x not in choices]
        if bad or not items:
            raise argparse.ArgumentTypeError(
                f"choose from {','.join(choices)}; got {text!r}"
            )
        return items
    return parse


PROFILE_CHOICES = [k.value for k in ProfileKind]


def _add_profile_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--profile", choices=PROFILE_CHOICES,
                   help="same increase and decrease profile")
    p.add_argument("--increase", choices=PROFILE_CHOICES)
    p.add_argument("--decrease", choices=PROFILE_CHOICES)


def _profile_from(args) -> ProfilePair | None:
    if args.profile and (args.increase or args.decrease):
        raise UsageError("--profile cannot be combined with --increase/--decrease")
    if args.profile:
        return ProfilePair.same(args.profile)
    if args.increase or args.decrease:
        if not (args.increase and args.decrease):
            raise UsageError("--increase and --decrease must be given together")
        return ProfilePair(ProfileKind(args.increase), ProfileKind(args.decrease))
    return None


def _add_ga_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file with GAParams fields")
    p.add_argument("--budget", type=int)
    p.add_argument("--population", type=int, dest="population_size")
    p.add_argument("--elite", type=int, dest="elite_size")
    p.add_argument("--m-nl", type=float, dest="m_nl")
    p.add_argument("--m-ptl", type=float, dest="m_ptl")
    p.add_argument("--m-sl", type=float, dest="m_sl")


def _ga_overrides(args, with_rates: bool = True) -> dict:
    data: dict = {}
    if args.config:
        data.update(json.loads(args.config.read_text(encoding="utf-8")))
    names = ["budget", "population_size", "elite_size"]
    if with_rates:
        names += ["m_nl", "m_ptl", "m_sl"]
    for name in names:
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    return data


def cmd_gen(args) -> int:
    config = GenConfig(master_seed=args.master_seed)
    single = [args.nodes, args.p_range, args.d_range, args.B]
    if any(v is not None for v in single):
        if any(v is None for v in single):
            raise UsageError("a single cell needs --nodes, --p-range, --d-range and --B")
        config = GenConfig(
            nodes=(args.nodes,), p_ranges=(args.p_range,), d_ranges=(args.d_range,),
            B_values=(args.B,), master_seed=args.master_seed,
        )
    if args.variations is not None:
        config = GenConfig(**{**config.__dict__, "variations": args.variations})
    profile = _profile_from(args)
    args.out.mkdir(parents=True, exist_ok=True)
    count = 0
    for name, inst in generate_suite(config, profile):
        write_instance(inst, args.out / name)
        count += 1
    log.info("wrote %d instances to %s", count, args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    profile = _profile_from(args)
    if profile is not None:
        inst = inst.with_profile(profile)
    seed = args.seed
    if seed is None:
        seed = random.SystemRandom().randrange(2**32)
        log.warning("no --seed given; using random seed %d", seed)
    data = _ga_overrides(args)
    data.update(representation=args.repr, seed=seed)
    params = GAParams.from_dict(data)
    result = run(inst, params)
    solution = solution_to_dict(
        result.best.rep, inst, seed=seed, evaluations=result.evaluations
    )
    out = args.out or args.instance.with_name(args.instance.stem + f"_{args.repr}.solution.json")
    write_solution(solution, out)
    if args.log:
        args.log.write_text(result.log_csv(), encoding="utf-8")
    print(f"{out}: total {result.best.total} ({json.dumps(solution['objective'])})")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    data = read_solution(args.solution)
    profile = _profile_from(args) or solution_profile(data)
    if profile is not None:
        inst = inst.with_profile(profile)
    problems = verify_solution(inst, data)
    if problems:
        for p in problems:
            print(f"FAIL {p}")
        return EXIT_VERIFY
    print(f"OK total {data.get('objective', {}).get('total')}")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.seed is None:
        raise UsageError("bench requires --seed")
    instances = sorted(args.instances.glob("*.json")) if args.instances.is_dir() else [args.instances]
    if not instances:
        raise UsageError(f"no instance files in {args.instances}")
    profiles = [ProfilePair.same(p) for p in args.profiles]
    cells = bench.make_cells(instances, args.reprs, profiles, args.seed, **_ga_overrides(args, False))
    rows = bench.run_cells(cells, args.workers)
    if args.runs:
        args.runs.write_text(bench.to_csv(rows, bench.RUN_FIELDS), encoding="utf-8")
    summary = bench.to_csv(bench.summarize(rows), bench.SUMMARY_FIELDS)
    _emit(summary, args.out)
    failed = [r for r in rows if r["status"] != "ok"]
    for r in failed:
        log.error("%s %s %s failed: %s", r["instance"], r["repr"], r["profile"], r["error"])
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_report(args) -> int:
    rows = [row for path in args.runs for row in bench.read_csv(path)]
    _emit(bench.to_csv(bench.summarize(rows), bench.SUMMARY_FIELDS), args.out)
    return EXIT_OK


def _emit(text: str, out: Path | None) -> None:
    if out:
        out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress")
    parser = _Parser(prog="itsp", description="Intermittent TSP solver toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate benchmark instances", parents=[common])
    g.add_argument("--out", type=Path, required=True)
    g.add_argument("--master-seed", type=int, default=0)
    g.add_argument("--nodes", type=int)
    g.add_argument("--p-range", type=_range)
    g.add_argument("--d-range", type=_range)
    g.add_argument("--B", type=int)
    g.add_argument("--variations", type=int)
    _add_profile_args(g)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run the GA on one instance", parents=[common])
    s.add_argument("instance", type=Path)
    s.add_argument("--repr", choices=REPRESENTATIONS, default="1L")
    s.add_argument("--seed", type=int)
    s.add_argument("--out", type=Path)
    s.add_argument("--log", type=Path, help="per-generation CSV log")
    _add_profile_args(s)
    _add_ga_args(s)
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run representations x profiles over instances", parents=[common])
    b.add_argument("instances", type=Path, help="instance file or directory")
    b.add_argument("--reprs", type=_csv_list(REPRESENTATIONS), default=list(REPRESENTATIONS))
    b.add_argument("--profiles", type=_csv_list(PROFILE_CHOICES), default=PROFILE_CHOICES)
    b.add_argument("--seed", type=int)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", type=Path, help="summary CSV (default stdout)")
    b.add_argument("--runs", type=Path, help="per-run CSV")
    _add_ga_args(b)
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="replay a solution with the time-step oracle", parents=[common])
    v.add_argument("instance", type=Path)
    v.add_argument("solution", type=Path)
    _add_profile_args(v)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="re-aggregate per-run CSVs", parents=[common])
    r.add_argument("runs", type=Path, nargs="+")
    r.add_argument("--out", type=Path)
    r.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"itsp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InstanceFileError, ValueError, OSError) as exc:
        print(f"itsp: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
