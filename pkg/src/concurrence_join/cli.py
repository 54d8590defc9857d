"""Command-line entry point: ``concurrence-join {analyze,simulate,homology,oracle}``.

Exit status 0 on success, 1 when an oracle identity fails, 2 on bad usage
or input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .concurrence import DatasetParseError, ingest_csv
from .homology import FiltrationOrder, betti, intervals_to_json, persistence
from .oracles import run_oracle
from .pipeline import Grouping, analyze
from .simplicial import MalformedSimplexError, SimplexBudgetError, complex_from_json
from .synthetic import JointSpec, SpecError, cycle_pattern_spec, load_spec, perfectly_coupled, sample

MAX_ORACLE_VERTICES = 8


class UsageError(Exception):
    pass


def parse_frames(text: str):
    """``"all"``, ``"3"``, or an inclusive range ``"1..5"``."""
    text = text.strip()
    if text == "all":
        return "all"
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo < 1 or hi < lo:
                raise ValueError
            return range(lo, hi + 1)
        f = int(text)
        if f < 1:
            raise ValueError
        return [f]
    except ValueError:
        raise UsageError(f"bad --frames value {text!r}; use 'all', 'F' or 'LO..HI' with 1 <= LO <= HI") from None


def _names(text: str | None, flag: str) -> tuple[str, ...]:
    if not text:
        raise UsageError(f"{flag} is required")
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    if not names:
        raise UsageError(f"{flag} lists no variables")
    return names


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def cmd_analyze(args) -> int:
    if not args.input:
        raise UsageError("--input is required")
    try:
        D = ingest_csv(Path(args.input))
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    except DatasetParseError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    try:
        G = Grouping(_names(args.group_a, "--group-a"), _names(args.group_b, "--group-b"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    missing = [v for v in G.variables if v not in D.names]
    if missing:
        raise UsageError(f"variable(s) not in {args.input}: {', '.join(missing)}")
    report = analyze(D, G, parse_frames(args.frames), representatives=args.representatives)
    if args.output:
        _write(args.output, report.to_json(args.representatives))
    print("\n".join(report.summary_lines()))
    for d, runs in sorted(report.frequency_lifespans.items()):
        if runs:
            spans = " ".join(f"[{lo},{hi}]" for lo, hi in runs)
            print(f"frequency lifespan dim {d}: {spans}")
    return 0


def cmd_simulate(args) -> int:
    if args.rows is None or args.rows < 1:
        raise UsageError("--rows must be a positive integer")
    if args.spec and args.cycles:
        raise UsageError("give either --spec or --cycles, not both")
    if args.spec:
        try:
            spec = load_spec(Path(args.spec).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from None
        except SpecError as exc:
            raise UsageError(f"{args.spec}: {exc}") from None
    elif args.cycles:
        try:
            ka, kb = (int(x) for x in args.cycles.split(","))
            A = cycle_pattern_spec(ka, [f"A{i + 1}" for i in range(ka)])
            B = cycle_pattern_spec(kb, [f"B{i + 1}" for i in range(kb)])
            spec = perfectly_coupled(A, B) if args.coupled else JointSpec(A, B)
        except (ValueError, SpecError) as exc:
            raise UsageError(f"bad --cycles value {args.cycles!r}: {exc}") from None
    else:
        raise UsageError("one of --spec or --cycles is required")
    D = sample(spec, args.rows, args.seed)
    _write(args.output, D.to_csv())
    return 0


def _levels_for(K, level_map: dict) -> dict:
    """Each simplex enters with the earliest listed facet containing it (default level 1)."""
    facet_level = {}
    for key, lv in level_map.items():
        f = tuple(sorted(key.split("|")))
        if f not in K.facets:
            raise UsageError(f"level map key {key!r} is not a facet of the complex")
        facet_level[f] = lv
    out = {}
    for f in K.facets:
        lv = facet_level.get(f, 1)
        fs = set(f)
        for s in K.simplices:
            if fs.issuperset(s) and (s not in out or lv < out[s]):
                out[s] = lv
    return out


def cmd_homology(args) -> int:
    if not args.input:
        raise UsageError("--input is required")
    try:
        K, notes = complex_from_json(Path(args.input).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    except (json.JSONDecodeError, MalformedSimplexError) as exc:
        raise UsageError(f"{args.input}: malformed complex: {exc}") from None
    for n in notes:
        print(f"note: {n}")
    if K.is_empty:
        raise UsageError(f"{args.input}: complex has no simplices")
    print("betti: " + " ".join(str(b) for b in betti(K)))
    if args.levels:
        try:
            level_map = json.loads(Path(args.levels).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot load level map {args.levels}: {exc}") from None
        order = FiltrationOrder.from_levels(_levels_for(K, level_map))
        ivs = persistence(order, representatives=args.representatives)
        print("intervals: " + json.dumps(intervals_to_json(ivs, args.representatives)))
    return 0


def cmd_oracle(args) -> int:
    if args.trials is None or args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if not 1 <= args.max_vertices <= MAX_ORACLE_VERTICES:
        raise UsageError(f"--max-vertices must be between 1 and {MAX_ORACLE_VERTICES}")
    t0 = time.perf_counter()
    failures = run_oracle(args.trials, args.max_vertices, args.seed, mutate=args.inject_mutation)
    dt = time.perf_counter() - t0
    for fail in failures:
        print(fail.to_json())
    print(f"oracle: {args.trials - len(failures)}/{args.trials} trials passed in {dt:.1f}s")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="concurrence-join", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="two-group independence analysis of a 0/1 CSV")
    a.add_argument("--input", help="CSV with a header of variable names")
    a.add_argument("--output", help="write the JSON report here")
    a.add_argument("--group-a", help="comma-separated variable names")
    a.add_argument("--group-b", help="comma-separated variable names")
    a.add_argument("--frames", default="all", help="'all', 'F' or 'LO..HI'")
    a.add_argument("-v", "--representatives", action="store_true", help="include representative cycles")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="sample a synthetic two-group dataset as CSV")
    s.add_argument("--spec", help="JSON spec file {groupA, groupB, joint?}")
    s.add_argument("--cycles", help="'KA,KB': two cycle groups, independent unless --coupled")
    s.add_argument("--coupled", action="store_true", help="with --cycles: pair the i-th patterns")
    s.add_argument("-T", "--rows", type=int, help="number of observations")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_simulate)

    h = sub.add_parser("homology", help="Betti numbers (and intervals) of a complex JSON file")
    h.add_argument("--input", help="complex JSON {vertices, facets}")
    h.add_argument("--levels", help="JSON map 'v1|v2|...' facet -> level")
    h.add_argument("-v", "--representatives", action="store_true")
    h.set_defaults(func=cmd_homology)

    o = sub.add_parser("oracle", help="check join/product identities on random complexes")
    o.add_argument("--trials", type=int, default=200)
    o.add_argument("--max-vertices", type=int, default=6)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--inject-mutation", action="store_true", help="drop one join facet (negative control)")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SimplexBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
