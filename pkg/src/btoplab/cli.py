"""Command-line front end: ``btoplab analyze | verify | catalog | gen``.

Exit codes: 0 success, 1 a verification or catalog check failed, 2 a file or
argument could not be parsed, 3 a precondition of the analysis failed.
Configuration precedence is defaults, then ``--config`` file, then flags.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import io
from .catalog import CATALOG, get_entry, run_entry
from .classify import (
    classify,
    verify_lemma31,
    verify_lemma32,
    verify_lemma33,
)
from .config import RunConfig
from .generators import (
    qphi_instance_set,
    random_laurent,
    random_potapov,
    random_symbol_set,
)
from .operators import identity_suite
from .symbol import LaurentMatrixSymbol

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3
LEMMAS = ("1.1", "3.1", "3.2", "3.3")
IDENTITY_TOL = 1e-10
LEMMA31_TOL = 1e-8


class UsageError(ValueError):
    pass


# -- configuration ----------------------------------------------------

_FLAG_TO_FIELD = {
    "n_trunc": "n_trunc", "kmax": "k_max", "tol_coeff": "tol_coeff", "tol_psd": "tol_psd",
    "tol_angle": "tol_angle", "grid": "grid", "seed": "seed",
}


def resolve_config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    return cfg.updated(**{f: getattr(args, a) for a, f in _FLAG_TO_FIELD.items()})


def thread_count() -> int:
    raw = os.environ.get("BTOP_THREADS")
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"BTOP_THREADS must be an integer, got {raw!r}") from None
    return max(1, value)


# -- instance sources -------------------------------------------------

def parse_source(text: str):
    """``catalog:<id>`` or ``random:<seed>,<count>``."""
    kind, _, rest = text.partition(":")
    if kind == "catalog":
        if rest not in CATALOG:
            raise UsageError(f"unknown catalog id {rest!r}; choose from {sorted(CATALOG)}")
        return "catalog", rest
    if kind == "random":
        try:
            seed, count = (int(x) for x in rest.split(","))
        except ValueError:
            raise UsageError(f"random source must be random:<seed>,<count>, got {text!r}") from None
        if seed < 0 or count < 1:
            raise UsageError("random source needs seed >= 0 and count >= 1")
        return "random", (seed, count)
    raise UsageError(f"instance source must be catalog:<id> or random:<seed>,<count>, got {text!r}")


def _identity_rows(source, cfg: RunConfig):
    N = cfg.n_trunc
    if source[0] == "catalog":
        e = get_entry(source[1])
        theta = e.Q.as_symbol() if e.Q.is_polynomial else LaurentMatrixSymbol.monomial(1, np.eye(e.phi.n))
        cases = [(e.id, e.phi, e.phi.analytic_part(), theta)]
    else:
        seed, count = source[1]
        rng = np.random.default_rng(seed + 1)
        cases = []
        for i, phi in enumerate(random_symbol_set(seed, count)):
            psi = random_laurent(rng, phi.n, 0, int(rng.integers(0, 5)))
            theta = random_potapov(rng, phi.n, int(rng.integers(1, 4)), polynomial=True).as_symbol()
            cases.append((f"random-{i}", phi, psi, theta))
    rows = []
    for name, phi, psi, theta in cases:
        dev = max(identity_suite(phi, psi, theta, N).values())
        rows.append({"instance": name, "metric": "max_deviation", "value": dev,
                     "passed": dev < IDENTITY_TOL})
    return rows


def _lemma_cases(source):
    if source[0] == "catalog":
        e = get_entry(source[1])
        return [(e.id, e.phi, e.Q)]
    seed, count = source[1]
    return [(f"random-{i}", phi, Q) for i, (phi, Q) in enumerate(qphi_instance_set(seed, count))]


def verify_rows(lemma: str, source, cfg: RunConfig) -> list[dict]:
    if lemma == "1.1":
        return _identity_rows(source, cfg)
    rows = []
    for name, phi, Q in _lemma_cases(source):
        if lemma == "3.1":
            r = verify_lemma31(phi, Q, cfg.grid)
            rows.append({"instance": name, "metric": "relative_frobenius",
                         "value": r.relative_frobenius, "passed": r.relative_frobenius < LEMMA31_TOL})
        elif lemma == "3.2":
            r = verify_lemma32(phi, Q, cfg.tol_angle, cfg.grid, cfg.tol_coeff)
            rows.append({"instance": name, "metric": "max_angle", "value": r.max_angle,
                         "dims": [r.dim_range, r.dim_image], "passed": r.passed})
        else:
            r = verify_lemma33(phi, Q, cfg.grid)
            rows.append({"instance": name, "metric": "rank_vs_dim",
                         "value": [r.commutator_rank, r.dim_model_space], "passed": r.bound_holds})
    return rows


# -- output -----------------------------------------------------------

def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append([prefix, io.dumps(obj).strip().replace("\n", "").replace("  ", "")])


def to_csv(rows: list[list]) -> str:
    buf = _stdio.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------

def cmd_analyze(args, cfg: RunConfig) -> int:
    phi = io.symbol_from_json(args.symbol)
    Q = io.potapov_from_json(args.potapov) if args.potapov else None
    report = classify(phi, Q, cfg, require_qphi=Q is not None)
    data = report.to_dict()
    if args.format == "csv":
        rows = [["field", "value"]]
        _flatten("", io.canonical(data), rows)
        emit(to_csv(rows), args.out)
    else:
        emit(io.dumps(data), args.out)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.lemma not in LEMMAS:
        raise UsageError(f"unknown lemma {args.lemma!r}; choose from {', '.join(LEMMAS)}")
    source = parse_source(args.source)
    rows = verify_rows(args.lemma, source, cfg)
    ok = all(r["passed"] for r in rows)
    if args.format == "csv":
        table = [["instance", "metric", "value", "passed"]]
        table += [[r["instance"], r["metric"], io.dumps(r["value"]).strip().replace("\n", "")
                   .replace(" ", ""), r["passed"]] for r in rows]
        emit(to_csv(table), args.out)
    else:
        emit(io.dumps({"lemma": args.lemma, "source": args.source, "config": cfg.to_dict(),
                       "rows": rows, "all_passed": ok}), args.out)
    for r in rows:
        if not r["passed"]:
            print(f"verify {args.lemma}: {r['instance']} failed ({r['metric']} = {r['value']})",
                  file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def run_catalog(ids, cfg: RunConfig, params: dict | None = None, threads: int = 1) -> list[dict]:
    """Run catalog entries, possibly in parallel; results come back in ``ids`` order."""
    params = params or {}

    def job(entry_id):
        return run_entry(get_entry(entry_id, **params.get(entry_id, {})), cfg)

    if threads <= 1 or len(ids) <= 1:
        return [job(i) for i in ids]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(job, ids))


def cmd_catalog(args, cfg: RunConfig) -> int:
    if args.id is not None and args.id not in CATALOG:
        raise UsageError(f"unknown catalog id {args.id!r}; choose from {sorted(CATALOG)}")
    if args.c is not None and args.id not in (None, "scalar-czbar"):
        raise UsageError("--c only applies to scalar-czbar")
    ids = [args.id] if args.id else list(CATALOG)
    params = {}
    if args.c is not None:
        try:
            params["scalar-czbar"] = {"c": complex(args.c.replace(" ", ""))}
        except ValueError:
            raise UsageError(f"--c must be a complex number, got {args.c!r}") from None
    results = run_catalog(ids, cfg, params, thread_count())
    ok = all(r["all_checks_passed"] for r in results)
    if args.format == "csv":
        table = [["id", "check", "passed"]]
        for r in results:
            table += [[r["id"], c["name"], c["passed"]] for c in r["checks"]]
            table.append([r["id"], "verdict:" + r["report"]["verdict"], r["all_checks_passed"]])
        emit(to_csv(table), args.out)
    else:
        emit(io.dumps({"config": cfg.to_dict(), "entries": results, "all_passed": ok}), args.out)
    for r in results:
        for c in r["checks"]:
            if not c["passed"]:
                print(f"catalog {r['id']}: check {c['name']} failed", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args, cfg: RunConfig) -> int:
    seed = cfg.seed
    if args.kind == "symbols":
        items = [io.symbol_to_json(p) for p in random_symbol_set(seed, args.count)]
    elif args.kind == "qphi":
        items = [{"phi": io.symbol_to_json(p), "Q": io.potapov_to_json(Q)}
                 for p, Q in qphi_instance_set(seed, args.count)]
    else:
        rng = np.random.default_rng(seed)
        items = [io.potapov_to_json(random_potapov(rng, int(rng.integers(1, 4)),
                                                   int(rng.integers(1, 5))))
                 for _ in range(args.count)]
    emit(io.dumps({"kind": args.kind, "seed": seed, "count": args.count, "instances": items}),
         args.out)
    return EXIT_OK


# -- parser -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--n-trunc", type=int, help="truncation blocks N (default 64)")
    g.add_argument("--kmax", type=int, help="highest k for k-hyponormality (default 4)")
    g.add_argument("--tol-coeff", type=float, help="coefficient tolerance (default 1e-10)")
    g.add_argument("--tol-psd", type=float, help="PSD tolerance (default 1e-9)")
    g.add_argument("--tol-angle", type=float, help="principal angle tolerance (default 1e-6)")
    g.add_argument("--grid", type=int, help="circle grid size (default 512)")
    g.add_argument("--seed", type=int, help="random seed (default 0)")
    g.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    g.add_argument("--out", help="write the report here instead of standard output")
    g.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="btoplab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="classify T_Phi for a symbol file")
    a.add_argument("symbol", help="symbol JSON file")
    a.add_argument("--potapov", help="Potapov product JSON file with Phi = Q Phi^*")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="run a lemma verifier on instances")
    v.add_argument("lemma", help="one of " + ", ".join(LEMMAS))
    v.add_argument("--source", required=True,
                   help="catalog:<id> or random:<seed>,<count>")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", parents=[common], help="reproduce the worked examples")
    c.add_argument("id", nargs="?", help="entry id (default: all)")
    c.add_argument("--c", help="parameter c for scalar-czbar, e.g. 0.5 or 1+0.5j")
    c.set_defaults(func=cmd_catalog)

    gen = sub.add_parser("gen", parents=[common], help="dump random instances as JSON")
    gen.add_argument("kind", choices=("symbols", "qphi", "potapov"))
    gen.add_argument("--count", type=int, default=10)
    gen.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (OSError, ValueError) as exc:
        print(f"error: bad configuration: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, cfg)
    except (io.SpecParseError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        # PreconditionError, NotInEPhi and invalid model parameters
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION

if __name__ == "__main__":
    sys.exit(main())
