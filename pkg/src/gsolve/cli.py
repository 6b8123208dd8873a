"""Command-line front end: run solvers, reproduce benchmark tables, classify.

Sources are either a Matrix Market file (``--mtx path``) or an assembled
benchmark system (``--pde g=... n=... [layout=...]``).  For file sources the
right-hand side is manufactured as b = A @ ones, so the exact solution is
the all-ones vector, matching the benchmark convention.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from .engine import IterationConfig, predict, solve, spectral_radius
from .matrices import DEFAULT_DENSE_LIMIT, SquareMatrix, classify, comparison_matrix, extract_splitting
from .mmio import read_matrix, write_matrix, write_vector
from .pde import G_BUILTINS, LAYOUT_BENCH, LAYOUTS, assemble
from .solvers import FactorizationError, Method, RelaxationWarning, build_step, iteration_matrix

#: Benchmark tables: reaction coefficient per table number.
TABLE_G = {1: "xplusy", 2: "zero", 3: "expxy", 4: "negexp4xy"}
TABLE_SIZES = (20, 30, 40)
#: Method columns; the SOR column is GSOR pinned at m = 0.
TABLE_COLUMNS = ("gj", "ggs", "sor", "gsor")


class CliError(Exception):
    """User-facing failure: bad source, bad parameters, unreadable file."""


def _fmt(value) -> str:
    """Round-trippable text for a CSV/markdown cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_pde_tokens(tokens: list[str]):
    params = {"layout": LAYOUT_BENCH}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise CliError(f"--pde expects key=value tokens, got {token!r}")
        params[key] = value
    unknown = set(params) - {"g", "n", "layout"}
    if unknown:
        raise CliError(f"--pde got unknown keys: {', '.join(sorted(unknown))}")
    if "g" not in params or "n" not in params:
        raise CliError("--pde needs g=<name> and n=<size>")
    if params["g"] not in G_BUILTINS:
        raise CliError(f"unknown g {params['g']!r}; expected one of {', '.join(G_BUILTINS)}")
    if params["layout"] not in LAYOUTS:
        raise CliError(f"unknown layout {params['layout']!r}; expected one of {LAYOUTS}")
    try:
        n = int(params["n"])
    except ValueError:
        raise CliError(f"--pde n must be an integer, got {params['n']!r}") from None
    return params["g"], n, params["layout"]


def _load_source(args) -> tuple[str, SquareMatrix, np.ndarray, np.ndarray]:
    """Resolve (label, A, b, x_exact) from --mtx or --pde."""
    if getattr(args, "mtx", None):
        try:
            A = read_matrix(args.mtx)
        except Exception as err:
            raise CliError(f"cannot read {args.mtx}: {err}") from err
        ones = np.ones(A.n)
        return str(args.mtx), A, A.csr @ ones, ones
    g_id, n, layout = _parse_pde_tokens(args.pde)
    try:
        problem = assemble(n, g_id, layout=layout)
    except ValueError as err:
        raise CliError(str(err)) from err
    return f"pde:g={g_id}:n={n}:layout={layout}", problem.A, problem.b, problem.x_exact


def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--mtx", metavar="PATH", help="Matrix Market coordinate file")
    group.add_argument(
        "--pde",
        nargs="+",
        metavar="KEY=VALUE",
        help="assemble a benchmark system: g=<name> n=<size> [layout=bench|square]",
    )


def _method_plan(name: str, m: int, omega: float | None):
    """Map a CLI method token to (label, engine method, m, omega)."""
    token = name.strip().lower()
    if token == "sor":
        if omega is None:
            raise CliError("method sor needs --omega")
        return token, Method.GSOR, 0, omega
    method = Method.parse(token)
    if method is Method.GSOR and omega is None:
        raise CliError("method gsor needs --omega")
    if method in (Method.GJ, Method.GGS):
        return token, method, m, None
    return token, method, m, omega


# -- run ------------------------------------------------------------------

RUN_FIELDS = (
    "source",
    "method",
    "n",
    "m",
    "omega",
    "iterations",
    "converged",
    "final_diff_norm",
    "final_error_norm",
    "seconds",
    "note",
)


@dataclass(frozen=True)
class RunRecord:
    source: str
    method: str
    n: int
    m: int
    omega: float | None
    iterations: int
    converged: bool
    final_diff_norm: float
    final_error_norm: float | None
    seconds: float
    note: str

    def row(self) -> list[str]:
        return [_fmt(getattr(self, name)) for name in RUN_FIELDS]


def _emit_records(records: list[RunRecord], fmt: str, out) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(RUN_FIELDS)
        for rec in records:
            writer.writerow(rec.row())
    elif fmt == "jsonl":
        for rec in records:
            print(json.dumps(dict(zip(RUN_FIELDS, rec.row()))), file=out)
    else:  # markdown
        print("| " + " | ".join(RUN_FIELDS) + " |", file=out)
        print("|" + "---|" * len(RUN_FIELDS), file=out)
        for rec in records:
            print("| " + " | ".join(rec.row()) + " |", file=out)


def _cmd_run(args, out) -> int:
    source, A, b, x_exact = _load_source(args)
    records = []
    failed = False
    for name in args.method.split(","):
        label, method, m, omega = _method_plan(name, args.m, args.omega)
        config = IterationConfig(
            method=method, m=m, omega=omega, tol=args.tol, max_iter=args.max_iter
        )
        try:
            report = solve(A, b, config, x_exact=x_exact)
        except FactorizationError as err:
            records.append(
                RunRecord(source, label, A.n, m, omega, 0, False,
                          float("nan"), None, 0.0, f"factorization failed: {err}")
            )
            failed = True
            continue
        records.append(
            RunRecord(
                source=source,
                method=label,
                n=A.n,
                m=m,
                omega=omega,
                iterations=report.iterations,
                converged=report.converged,
                final_diff_norm=report.final_diff_norm,
                final_error_norm=report.final_error_norm,
                seconds=round(report.elapsed_seconds, 2),
                note=report.note,
            )
        )
        failed = failed or not report.converged
    _emit_records(records, args.format, out)
    return 1 if failed else 0


# -- table ----------------------------------------------------------------


def _cmd_table(args, out) -> int:
    numbers = sorted(TABLE_G) if args.which == "all" else [int(args.which)]
    all_converged = True
    csv_rows: list[list[str]] = []
    for number in numbers:
        g_id = TABLE_G[number]
        if args.format == "markdown":
            print(f"## Table {number}: g = {g_id} "
                  f"(m={args.m}, omega={args.omega}, tol={_fmt(args.tol)})", file=out)
            print("", file=out)
            header = ["n"] + [c.upper() for c in TABLE_COLUMNS]
            print("| " + " | ".join(header) + " |", file=out)
            print("|" + "---:|" * len(header), file=out)
        for n in TABLE_SIZES:
            problem = assemble(n, g_id, layout=args.layout)
            cells = []
            for column in TABLE_COLUMNS:
                _, method, m, omega = _method_plan(column, args.m, args.omega)
                config = IterationConfig(
                    method=method, m=m, omega=omega, tol=args.tol, max_iter=args.max_iter
                )
                report = solve(problem.A, problem.b, config, x_exact=problem.x_exact)
                all_converged = all_converged and report.converged
                cells.append((column, m, omega, report))
            if args.format == "markdown":
                shown = [f"{r.iterations}({r.elapsed_seconds:.2f})" for *_, r in cells]
                print(f"| {n} | " + " | ".join(shown) + " |", file=out)
            else:
                for column, m, omega, report in cells:
                    csv_rows.append([
                        str(number), g_id, str(n), column, str(m), _fmt(omega),
                        str(report.iterations), _fmt(round(report.elapsed_seconds, 2)),
                        _fmt(report.converged),
                    ])
        if args.format == "markdown":
            print("", file=out)
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(
            ("table", "g", "n", "method", "m", "omega", "iterations", "seconds", "converged")
        )
        writer.writerows(csv_rows)
    return 0 if all_converged else 1


# -- classify / rho / export ----------------------------------------------


def _tristate(value: bool | None) -> str:
    return "undetermined" if value is None else _fmt(value)


def _cmd_classify(args, out) -> int:
    source, A, _, _ = _load_source(args)
    report = classify(A, dense_limit=args.dense_limit)
    print(f"source: {source} (order {A.n})", file=out)
    for name, value in (
        ("sdd", report.is_sdd), ("z", report.is_z), ("l", report.is_l),
        ("m", report.is_m), ("h", report.is_h), ("spd", report.is_spd),
    ):
        print(f"{name}: {_tristate(value)}", file=out)
    if report.m_witness is not None:
        print(f"m_witness_min: {_fmt(float(report.m_witness.min()))}", file=out)
    for note in report.notes:
        print(f"note: {note}", file=out)
    if args.predict:
        _, method, m, omega = _method_plan(args.predict, args.m, args.omega)
        verdict = predict(
            A,
            IterationConfig(method=method, m=m, omega=omega),
            dense_limit=args.dense_limit,
        )
        print(f"predict: method={args.predict} m={m} omega={_fmt(omega)}", file=out)
        sources = ", ".join(verdict.guarantee_source) or "none"
        print(f"guaranteed: {_fmt(verdict.guaranteed)} ({sources})", file=out)
        rho = "unavailable" if verdict.rho_estimate is None else f"{verdict.rho_estimate:.6g}"
        print(f"rho: {rho}", file=out)
        print(f"predicted_converges: {_tristate(verdict.predicted_converges)}", file=out)
    return 0


def _cmd_rho(args, out) -> int:
    _, A, _, _ = _load_source(args)
    _, method, m, omega = _method_plan(args.method, args.m, args.omega)
    if m > A.n - 1:
        raise CliError(f"m={m} too large for order {A.n}")
    op = build_step(extract_splitting(A, m), method, omega)
    if args.power:
        estimate = spectral_radius(op, mode="power", seed=args.seed)
        reliable = "yes" if estimate.reliable else "no"
        print(
            f"rho: {estimate.value:.6g} mode=power reliable={reliable} "
            f"bound={estimate.error_bound:.3g} steps={estimate.steps}",
            file=out,
        )
        return 0
    if A.n > args.dense_limit:
        raise CliError(
            f"order {A.n} exceeds dense limit {args.dense_limit}; rerun with --power"
        )
    value = spectral_radius(iteration_matrix(op, args.dense_limit))
    print(f"rho: {value:.6g} mode=dense reliable=yes", file=out)
    return 0


def _cmd_export(args, out) -> int:
    source, A, b, x_exact = _load_source(args)
    if args.what in ("rhs", "exact"):
        vector = b if args.what == "rhs" else x_exact
        write_vector(args.output, vector)
        print(f"wrote {args.what} vector (length {len(vector)}) to {args.output}",
              file=out)
        return 0
    if args.what == "matrix":
        result = A
    elif args.what == "comparison":
        result = comparison_matrix(A)
    else:
        splitting = extract_splitting(A, args.m)
        result = {"band": splitting.band, "lower": splitting.lower,
                  "upper": splitting.upper}[args.what]
    write_matrix(args.output, result, comment=f"{args.what} of {source}")
    print(f"wrote {args.what} ({result.nnz} entries) to {args.output}", file=out)
    return 0


# -- parser ----------------------------------------------------------------


def _build_parser(dense_limit_default: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsolve",
        description="Banded-splitting stationary solvers (GJ/GGS/GSOR): "
        "run, reproduce benchmark tables, classify matrices, estimate spectral radii.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common_iteration(p, default_format=None):
        p.add_argument("--m", type=int, default=1, help="half-bandwidth (default 1)")
        p.add_argument("--omega", type=float, default=None, help="relaxation factor")
        p.add_argument("--tol", type=float, default=1e-7, help="stopping tolerance")
        p.add_argument("--max-iter", type=int, default=10000, help="iteration cap")
        if default_format:
            p.add_argument("--format", choices=("csv", "markdown", "jsonl"),
                           default=default_format)

    p_run = sub.add_parser("run", help="solve one system with one or more methods")
    _add_source_arguments(p_run)
    p_run.add_argument("--method", required=True,
                       help="comma-separated: gj, ggs, sor, gsor")
    common_iteration(p_run, default_format="csv")

    p_table = sub.add_parser("table", help="reproduce the benchmark iteration tables")
    p_table.add_argument("which", choices=("1", "2", "3", "4", "all"))
    p_table.add_argument("--layout", choices=LAYOUTS, default=LAYOUT_BENCH)
    p_table.add_argument("--m", type=int, default=1)
    p_table.add_argument("--omega", type=float, default=1.5)
    p_table.add_argument("--tol", type=float, default=1e-7)
    p_table.add_argument("--max-iter", type=int, default=10000)
    p_table.add_argument("--format", choices=("markdown", "csv"), default="markdown")

    p_cls = sub.add_parser("classify", help="matrix-class certification report")
    _add_source_arguments(p_cls)
    p_cls.add_argument("--predict", metavar="METHOD",
                       help="also predict convergence for gj/ggs/sor/gsor")
    p_cls.add_argument("--m", type=int, default=1)
    p_cls.add_argument("--omega", type=float, default=None)
    p_cls.add_argument("--dense-limit", type=int, default=dense_limit_default)

    p_rho = sub.add_parser("rho", help="spectral radius of an iteration matrix")
    _add_source_arguments(p_rho)
    p_rho.add_argument("--method", required=True, help="gj, ggs, sor, or gsor")
    p_rho.add_argument("--m", type=int, default=1)
    p_rho.add_argument("--omega", type=float, default=None)
    p_rho.add_argument("--power", action="store_true",
                       help="operator-based power estimate instead of dense eigenvalues")
    p_rho.add_argument("--seed", type=int, default=None, help="power-mode start seed")
    p_rho.add_argument("--dense-limit", type=int, default=dense_limit_default)

    p_exp = sub.add_parser(
        "export",
        help="write the matrix, its comparison matrix, splitting parts, "
        "or the rhs/exact-solution vectors",
    )
    _add_source_arguments(p_exp)
    p_exp.add_argument(
        "--what",
        choices=("matrix", "comparison", "band", "lower", "upper", "rhs", "exact"),
        required=True,
    )
    p_exp.add_argument("--m", type=int, default=1)
    p_exp.add_argument("-o", "--output", required=True,
                       help="output path (.mtx for matrices, text for vectors)")

    return parser


_COMMANDS = {
    "run": _cmd_run,
    "table": _cmd_table,
    "classify": _cmd_classify,
    "rho": _cmd_rho,
    "export": _cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    dense_limit_default = DEFAULT_DENSE_LIMIT
    env_limit = os.environ.get("GSOLVE_DENSE_LIMIT")
    if env_limit:
        try:
            dense_limit_default = int(env_limit)
        except ValueError:
            print(f"gsolve: ignoring non-integer GSOLVE_DENSE_LIMIT={env_limit!r}",
                  file=sys.stderr)
    parser = _build_parser(dense_limit_default)
    args = parser.parse_args(argv)
    warnings.filterwarnings("once", category=RelaxationWarning)
    try:
        return _COMMANDS[args.command](args, sys.stdout)
    except (CliError, ValueError, FactorizationError) as err:
        print(f"gsolve: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
