"""Command-line frontend: ``igmm minimize|reduce|verify|stats|bench``."""
from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .boolset import MAX_PROPS
from .kiss import ParseError, parse, write_kiss2, write_xkiss
from .machine import Igmm, reachable_prune, restrict_to_first_cubes, stats
from .reduce import bisim_quotient, reduce_with_output_assignment
from .satmin import MinimizeOptions, MinimizeReport, minimize
from .verify import check_specialization

log = logging.getLogger("igmm")

EXIT_OK, EXIT_INPUT, EXIT_TIMEOUT, EXIT_VERIFY = 0, 1, 2, 3
METHODS = ("sat", "bisim-oa", "bisim")
CSV_FIELDS = ["file", "states", "in_props", "out_props", "method", "result_states",
              "time_ms", "sat_vars", "sat_clauses", "cegar_rounds", "status"]


@dataclass
class RunConfig:
    method: str = "sat"
    cube_outputs: bool = False
    keep_unreachable: bool = False
    timeout_s: float = 1800.0
    dimacs_dump: str | None = None
    seed: int = 0
    max_props: int = MAX_PROPS
    fmt: str = "auto"


def read_machine(path: str, fmt: str = "auto", max_props: int = MAX_PROPS) -> Igmm:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return parse(text, fmt, max_props)
    except ParseError as e:
        raise ParseError(e.msg, e.line, e.col, source=path) from None


def run_method(m: Igmm, cfg: RunConfig) -> tuple[Igmm, MinimizeReport]:
    """Apply one method; on timeout the input comes back unchanged."""
    if cfg.cube_outputs:
        m = restrict_to_first_cubes(m)
    if cfg.method == "sat":
        opts = MinimizeOptions(keep_unreachable=cfg.keep_unreachable, timeout_s=cfg.timeout_s,
                               seed=cfg.seed, dimacs_dump=cfg.dimacs_dump,
                               max_props=cfg.max_props)
        return minimize(m, opts)
    if cfg.method not in METHODS:
        raise ValueError(f"unknown method {cfg.method!r}")
    t0 = time.monotonic()
    report = MinimizeReport(method=cfg.method, states_in=m.n_states)
    work = m if cfg.keep_unreachable else reachable_prune(m)[0]
    result = work
    if cfg.timeout_s <= 0:
        report.status = "timeout"
    else:
        result = bisim_quotient(work) if cfg.method == "bisim" else reduce_with_output_assignment(work)
        if time.monotonic() - t0 > cfg.timeout_s:
            report.status = "timeout"
            result = work
    report.states_out = result.n_states
    report.time_s = time.monotonic() - t0
    return result, report


def _write_output(m: Igmm, path: str | None, cube: bool) -> None:
    text = write_kiss2(m) if cube else write_xkiss(m)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _config(args) -> RunConfig:
    return RunConfig(method=args.method, cube_outputs=args.cube_outputs,
                     keep_unreachable=args.keep_unreachable, timeout_s=args.timeout_s,
                     dimacs_dump=getattr(args, "dimacs_dump", None), seed=args.seed,
                     max_props=args.max_props, fmt=args.format)


def cmd_minimize(args) -> int:
    cfg = _config(args)
    m = read_machine(args.input, cfg.fmt, cfg.max_props)
    result, report = run_method(m, cfg)
    print(report.line(), file=sys.stderr)
    _write_output(result, args.output, cfg.cube_outputs)
    return EXIT_TIMEOUT if report.status == "timeout" else EXIT_OK


def cmd_verify(args) -> int:
    impl = read_machine(args.impl, args.format, args.max_props)
    spec = read_machine(args.spec, args.format, args.max_props)
    cex = check_specialization(impl, spec)
    if cex is None:
        print(f"ok: {args.impl} specializes {args.spec}")
        return EXIT_OK
    print(f"not a specialization: {cex.format(spec)}")
    return EXIT_VERIFY


def cmd_stats(args) -> int:
    for path in args.inputs:
        m = read_machine(path, args.format, args.max_props)
        prefix = f"{path}: " if len(args.inputs) > 1 else ""
        print(prefix + str(stats(m)))
    return EXIT_OK


def bench_file(path: str, methods: tuple[str, ...], cfg: RunConfig) -> list[dict]:
    """All rows for one file.  Never raises; failures become error rows."""
    name = Path(path).name
    try:
        m = read_machine(path, cfg.fmt, cfg.max_props)
    except (OSError, ValueError) as e:
        log.warning("%s: %s", path, e)
        return [dict(file=name, method=meth, status="error") for meth in methods]
    base = dict(file=name, states=m.n_states, in_props=m.inputs.arity, out_props=m.outputs.arity)
    rows = []
    for meth in methods:
        row = dict(base, method=meth)
        try:
            _, rep = run_method(m, RunConfig(**{**cfg.__dict__, "method": meth}))
        except Exception as e:  # one bad instance must not stop the run
            log.warning("%s [%s]: %s", path, meth, e)
            row["status"] = "error"
        else:
            row.update(result_states=rep.states_out, time_ms=f"{rep.time_s * 1000:.3f}",
                       sat_vars=rep.sat_vars, sat_clauses=rep.sat_clauses,
                       cegar_rounds=rep.cegar_rounds, status=rep.status)
        rows.append(row)
    return rows


def cmd_bench(args) -> int:
    cfg = _config(args)
    methods = tuple(s.strip() for s in args.methods.split(",") if s.strip())
    for meth in methods:
        if meth not in METHODS:
            raise ValueError(f"unknown method {meth!r}")
    d = Path(args.dir)
    if not d.is_dir():
        raise OSError(f"{d} is not a directory")
    files = sorted(str(p) for p in d.iterdir() if p.is_file() and not p.name.startswith("."))
    csv_path = Path(args.csv)
    fresh = not csv_path.exists() or csv_path.stat().st_size == 0
    with open(csv_path, "a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, restval="")
        if fresh:
            writer.writeheader()
        if args.jobs > 1 and len(files) > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = pool.map(bench_file, files, [methods] * len(files), [cfg] * len(files))
                for rows in results:
                    writer.writerows(rows)
                    fh.flush()
        else:
            for f in files:
                writer.writerows(bench_file(f, methods, cfg))
                fh.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="igmm", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, method_choices=METHODS, default="sat"):
        p.add_argument("--format", choices=("auto", "kiss2", "xkiss"), default="auto")
        p.add_argument("--max-props", type=int, default=MAX_PROPS)
        if method_choices is None:
            return
        p.add_argument("--method", choices=method_choices, default=default)
        p.add_argument("--cube-outputs", action="store_true",
                       help="keep only the first output cube of every transition; write KISS2")
        p.add_argument("--keep-unreachable", action="store_true")
        p.add_argument("--timeout-s", type=float, default=1800.0)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("minimize", help="minimal specialization (default: SAT)")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--dimacs-dump", metavar="DIR")
    common(p)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("reduce", help="polynomial-time reduction")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    common(p, ("bisim", "bisim-oa"), "bisim-oa")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("verify", help="check that --impl specializes --spec")
    p.add_argument("--impl", required=True)
    p.add_argument("--spec", required=True)
    common(p, None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="print machine statistics")
    p.add_argument("inputs", nargs="+")
    common(p, None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="run methods over a directory, append CSV rows")
    p.add_argument("dir")
    p.add_argument("--csv", default="bench.csv")
    p.add_argument("--methods", default=",".join(METHODS))
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
