"""Command-line entry point: ``nsbell {run,sweep,optimize,verify}``."""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import config as cfgio
from .report import (
    COLUMNS,
    DEFAULT_GRID,
    DIRECT_COLUMNS,
    OBJECTIVES,
    GridAxis,
    SweepSpec,
    csv_text,
    fmt,
    optimize,
    run_sweep,
    scenario_row,
)
from .circuit import pure_output
from .oracle import DEFAULT_DRAWS
from .verify import mutation_checks, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _load(args) -> cfgio.ScenarioConfig:
    text = Path(args.config).read_text() if args.config else ""
    cfg, notes = cfgio.quiet_loads(text)
    for n in notes:
        print(f"warning: {n}", file=sys.stderr)
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_run(args) -> int:
    cfg = _load(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        text = csv_text([scenario_row(cfg)])
    _emit(text, args.out)
    if args.dump_state:
        if not args.out:
            sys.stdout.write("\n")
        sys.stdout.write(pure_output(cfg).dumps())
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.sweep:
        raise ValueError("sweep needs --sweep name:start:stop:steps")
    if len(args.sweep) > 1:
        raise ValueError("sweep takes exactly one --sweep")
    spec = SweepSpec.parse(args.sweep[0])
    cfg = _load(args)
    _emit(csv_text(run_sweep(cfg, spec), COLUMNS + DIRECT_COLUMNS), args.out)
    return EXIT_OK


def cmd_optimize(args) -> int:
    cfg = _load(args)
    axes = tuple(GridAxis.parse(s) for s in args.sweep) if args.sweep else DEFAULT_GRID
    res = optimize(cfg, args.objective, axes)
    names = ("r_sq", "eps", "eps_prime")
    lines = ["objective,value,points," + ",".join(names)]
    vals = [res.params.get(n, float("nan")) for n in names]
    lines.append(",".join([res.objective, fmt(res.value), str(res.n_points), *map(fmt, vals)]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suites(n_draws=args.draws, seed=args.seed)
    if args.mutants:
        results += mutation_checks(seed=args.seed)
    text = "".join(r.line() + "\n" for r in results)
    ok = all(r.passed for r in results)
    text += f"{'ALL PASS' if ok else 'FAILURES'}: {sum(r.passed for r in results)}/{len(results)} suites\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nsbell",
        description="Bell states from two photons on a non-symmetric beam splitter.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config=True):
        if config:
            sp.add_argument("--config", metavar="PATH", help="key = value scenario file")
        sp.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("run", help="simulate one scenario and print a CSV row")
    common(sp)
    sp.add_argument("--dump-state", action="store_true", help="also print the 10 output amplitudes")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("sweep", help="sweep one parameter, one CSV row per grid point")
    common(sp)
    sp.add_argument("--sweep", action="append", metavar="NAME:START:STOP:STEPS")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("optimize", help="exhaustive grid search over r_sq (and eps, eps_prime)")
    common(sp)
    sp.add_argument("--objective", required=True, choices=OBJECTIVES)
    sp.add_argument("--sweep", action="append", metavar="NAME:START:STOP:STEPS",
                    help="grid axis; repeat for several (default r_sq:0.5:1.0:51)")
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("verify", help="run the invariant suites")
    common(sp, config=False)
    sp.add_argument("--draws", type=int, default=DEFAULT_DRAWS)
    sp.add_argument("--mutants", action="store_true",
                    help="also check that deliberately broken engines are caught")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
