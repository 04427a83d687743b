"""Command-line entry point: ``gosset <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
invariant violation. Progress goes to stderr; stdout is deterministic for a
fixed configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import catalog as cat
from . import cubes, inscribed, polytope, steiner, verify
from .errors import DomainError, InvariantError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3
DEFAULT_CACHE = Path.home() / ".cache" / "gosset"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    fmt: str = "json"
    cache_dir: Path = DEFAULT_CACHE
    threads: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        cache = os.environ.get("GOSSET_CACHE_DIR")
        return cls(args.seed, args.format, Path(cache) if cache else DEFAULT_CACHE, args.threads)


class UsageError(Exception):
    pass


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _rows_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def catalog_path(cfg: RunConfig, kind: str, r: int) -> Path:
    return cfg.cache_dir / f"{kind}_r{r}.jsonl"


# -- commands ---------------------------------------------------------------------

def cmd_catalog(args: argparse.Namespace, cfg: RunConfig) -> int:
    C = cat.enumerate_kind(args.kind, args.r)
    path = catalog_path(cfg, args.kind, args.r)
    if path.exists():
        cached = cat.load_catalog(path)
        if cached.classes != C.classes:
            raise InvariantError(f"cached catalog {path} differs from a fresh build")
        _progress(f"cache verified: {path}")
    path.parent.mkdir(parents=True, exist_ok=True)
    cat.write_catalog(path, C)
    _progress(f"wrote {path}")
    print(f"count: {len(C)}")
    return EXIT_OK


def cmd_graph(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.table:
        report = polytope.verify_subpolytope_table(args.r, cfg.threads)
        if cfg.fmt == "csv":
            sys.stdout.write(report.to_csv())
        else:
            _emit({"r": args.r, "passed": report.passed,
                   "rows": [{"polytope": row.polytope, "expected": row.expected, "computed": row.computed,
                             "pass": row.passed} for row in report.rows]})
        return EXIT_OK if report.passed else EXIT_FAIL
    g = polytope.line_graph(args.r, args.v)
    out = {"r": args.r, "v": args.v, "vertices": len(g), "edges": g.edge_count, "degrees": sorted(set(g.degrees()))}
    if args.simplexes is not None:
        out["simplexes"] = {str(args.simplexes): polytope.count_simplexes(g, args.simplexes, cfg.threads)}
    if cfg.fmt == "csv":
        sys.stdout.write(_rows_csv(list(out), [[json.dumps(v) if isinstance(v, (list, dict)) else v
                                                 for v in out.values()]]))
    else:
        _emit(out)
    return EXIT_OK


def cmd_inscribed(args: argparse.Namespace, cfg: RunConfig) -> int:
    r, n, b = args.r, args.n, args.b
    try:
        inscribed.check_feasible(r, n, b)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    if args.centers_only:
        cs = sorted(inscribed.centers(r, n, b, cfg.threads))
        _progress(f"A{n}^{r}({b}): {len(cs)} centers")
        if args.list:
            for D in cs:
                _emit(D.to_json())
        print(len(cs))
        return EXIT_OK
    if args.sample:
        stream = iter(inscribed.sample_simplexes(r, n, b, args.sample, cfg.seed))
    else:
        stream = inscribed.enumerate_inscribed(r, n, b)
    count = 0
    for s in stream:
        if args.limit is not None and count >= args.limit:
            break
        tag = inscribed.classify(s) if args.classify else None
        _emit(s.to_json(tag))
        count += 1
    _progress(f"{count} simplexes")
    return EXIT_OK


def cmd_fano(args: argparse.Namespace, cfg: RunConfig) -> int:
    ok = True
    for s in inscribed.sample_simplexes(8, 6, 1, args.sample, cfg.seed):
        f = inscribed.fano_structure(s)
        rep = steiner.verify_fano_steiner(f.lines, f.blocks)
        ok &= rep.passed
        _emit({"vertices": list(s.vertices), "lines": list(f.lines), "blocks": [list(b) for b in f.blocks],
               "corner_lines": list(f.corner_lines), "steiner_237": rep.passed})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cubes(args: argparse.Namespace, cfg: RunConfig) -> int:
    cube = cubes.find_cube(args.r)
    _emit({"r": args.r, "dimension": cube.dimension, "max_dimension": cubes.max_cube_dimension(args.r),
           "vertices": list(cube.vertices), "center": cube.center.to_json()})
    return EXIT_OK


def cmd_steiner(args: argparse.Namespace, cfg: RunConfig) -> int:
    names = list(steiner.STEINER_SPECS) if args.name == "all" else [args.name]
    ok = True
    rows = []
    for name in names:
        sys_ = steiner.build_steiner(name)
        rep = steiner.verify_design(sys_)
        ok &= rep.passed
        if args.summary or cfg.fmt == "csv":
            rows.append([name, sys_.r, sys_.k, sys_.c, len(sys_.blocks), str(rep.passed).lower()])
        else:
            _emit(sys_.to_json())
        if not rep.passed:
            _progress(f"{name}: {rep.counterexample}")
    if rows:
        if cfg.fmt == "csv":
            sys.stdout.write(_rows_csv(["name", "r", "k", "c", "blocks", "pass"], rows))
        else:
            for row in rows:
                _emit(dict(zip(["name", "r", "k", "c", "blocks", "pass"], row)))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    scopes = verify.SCOPES if args.scope == "all" else (args.scope,)
    run = verify.run_scopes(scopes, args.r, args.sample, cfg.seed, cfg.threads, _progress)
    if cfg.fmt == "csv":
        sys.stdout.write(_rows_csv(["scope", "name", "pass", "detail"],
                                   [[c.scope, c.name, str(c.passed).lower(), c.detail] for c in run.checks]))
    else:
        _emit({"passed": run.passed, "checks": [c.to_json() for c in run.checks],
               "failing": [c.name for c in run.checks if not c.passed]})
    for c in run.checks:
        if not c.passed:
            _progress(f"FAIL {c.scope}: {c.name}: {c.detail}")
    if any(c.invariant for c in run.checks):
        return EXIT_INVARIANT
    return EXIT_OK if run.passed else EXIT_FAIL


def cmd_export(args: argparse.Namespace, cfg: RunConfig) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for r in args.ranks:
        for kind in cat.KIND_NAMES:
            p = out / f"{kind}_r{r}.jsonl"
            cat.write_catalog(p, cat.enumerate_kind(kind, r))
            written.append(p)
        if r >= 4:
            p = out / f"subpolytopes_r{r}.csv"
            p.write_text(polytope.verify_subpolytope_table(r, cfg.threads).to_csv(), encoding="utf-8")
            written.append(p)
    for name in steiner.STEINER_SPECS:
        p = out / f"{name}.json"
        p.write_text(steiner.build_steiner(name).dumps() + "\n", encoding="utf-8")
        written.append(p)
    for p in written:
        print(p.name)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def _rank(text: str) -> int:
    r = int(text)
    if not 3 <= r <= 8:
        raise argparse.ArgumentTypeError(f"rank must be in 3..8, got {r}")
    return r


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="seed for samplers")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=0, help="worker processes (0 = one per CPU)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p = argparse.ArgumentParser(prog="gosset", description="Lines, Gosset polytopes and inscribed simplexes on del Pezzo surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", parents=[common], help="build a class catalog and write it to the cache")
    s.add_argument("--kind", choices=sorted(cat.KIND_NAMES), required=True)
    s.add_argument("--r", type=_rank, required=True)
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("graph", parents=[common], help="degree graphs on lines and the subpolytope table")
    s.add_argument("--r", type=_rank, required=True)
    s.add_argument("--v", type=int, default=0, choices=(0, 1, 2, 3), help="edge degree")
    s.add_argument("--simplexes", type=int, metavar="M", help="also count M-simplexes")
    s.add_argument("--table", action="store_true", help="verify the subpolytope table for r")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("inscribed", parents=[common], help="A_n^r(b)-polytopes and their centers")
    s.add_argument("--r", type=_rank, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--b", type=int, default=1)
    s.add_argument("--centers-only", action="store_true", help="print the number of distinct centers")
    s.add_argument("--list", action="store_true", help="with --centers-only, also list the centers")
    s.add_argument("--classify", action="store_true", help="tag each simplex cornered/uncornered")
    s.add_argument("--limit", type=int, help="stop after this many simplexes")
    s.add_argument("--sample", type=int, help="seeded sample of this many simplexes instead of all")
    s.set_defaults(func=cmd_inscribed)

    s = sub.add_parser("fano", parents=[common], help="Fano planes of sampled A_6^8(1)-polytopes")
    s.add_argument("--sample", type=int, default=10)
    s.set_defaults(func=cmd_fano)

    s = sub.add_parser("cubes", parents=[common], help="a cube of maximal dimension on S_r")
    s.add_argument("--r", type=_rank, required=True)
    s.set_defaults(func=cmd_cubes)

    s = sub.add_parser("steiner", parents=[common], help="build and verify a Steiner system")
    s.add_argument("--name", choices=sorted(steiner.STEINER_SPECS) + ["all"], default="all")
    s.add_argument("--summary", action="store_true", help="print block counts instead of blocks")
    s.set_defaults(func=cmd_steiner)

    s = sub.add_parser("verify", parents=[common], help="run verification checks")
    s.add_argument("--scope", choices=verify.SCOPES + ("all",), default="all")
    s.add_argument("--r", type=_rank, help="restrict to one rank")
    s.add_argument("--sample", type=int, default=200, help="instances per sampled theorem check")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export", parents=[common], help="write catalogs, tables and Steiner systems")
    s.add_argument("--out", required=True, help="output directory")
    s.add_argument("--ranks", type=_rank, nargs="+", default=list(verify.RANKS))
    s.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    cfg = RunConfig.from_args(args)
    try:
        return args.func(args, cfg)
    except (UsageError, DomainError) as exc:
        print(f"gosset: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"gosset: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
