"""Command-line front end.

Subcommands: ``analyze`` (one polynomial, one point), ``verify`` (random
campaigns against the proven bounds), ``search`` (extremal configurations),
``levelset`` (sublevel-set contours to SVG/CSV), and ``examples`` (the named
extremal polynomials in wire format).

Polynomial wire format: whitespace-separated ``re,im`` coefficient pairs in
ascending power order, constant term first. So ``"0,0 -5,0 0,0 0,0 0,0 1,0"``
is z^5 - 5z. This ordering is the most common source of user error; every
parse failure names the offending token.

Exit codes: 0 success, 1 parse/config errors, 2 evaluation point is critical,
3 root solver did not converge. JSON goes to stdout (schema field ``1``);
``--json-out`` duplicates it to a file, ``--csv-out`` writes per-sample rows,
search history, or the sampled grid depending on the subcommand. With
``--deterministic`` the output carries no timestamp and is byte-identical
across runs with the same seed and flags.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from typing import Any, Sequence

from . import campaign as campaign_mod
from . import levelset as levelset_mod
from .meanvalue import MeanValueReport, ZCriticalError, analyze
from .poly import EXAMPLE_GENERATORS, ComplexPolynomial
from .roots import (
    DEFAULT_SOLVER_CONFIG,
    SolverConfig,
    SolverNotConvergedError,
    critical_points,
)
from .search import SearchConfig, SearchResult, run_search

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_Z_CRITICAL = 2
EXIT_NOT_CONVERGED = 3


class _Parser(argparse.ArgumentParser):
    # Spec reserves exit 2 for the z-critical condition; argparse's own
    # failures must come back as 1.
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(token: str) -> complex:
    parts = token.split(",")
    if len(parts) != 2:
        raise ValueError(f"bad complex token {token!r}: expected 're,im'")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise ValueError(f"bad complex token {token!r}: expected 're,im'") from None


def parse_polynomial(text: str) -> ComplexPolynomial:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty coefficient string")
    return ComplexPolynomial(tuple(parse_complex(tok) for tok in tokens))


def format_complex(z: complex) -> str:
    return f"{z.real!r},{z.imag!r}"


def format_polynomial(P: ComplexPolynomial) -> str:
    return " ".join(format_complex(c) for c in P.coeffs)


def parse_degrees(text: str) -> tuple[int, ...]:
    """Accepts '2..8' ranges and '2,3,4' lists."""
    text = text.strip()
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError(f"bad degree range {text!r}")
        return tuple(range(lo, hi + 1))
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _complex_json(z: complex) -> list[float]:
    return [z.real, z.imag]


def report_to_dict(report: MeanValueReport) -> dict[str, Any]:
    proof = None
    if report.proof is not None:
        proof = {
            "R": report.proof.R,
            "ratios": list(report.proof.ratios),
            "min_ratio": report.proof.min_ratio,
            "c1_residual": report.proof.c1_residual,
        }
    return {
        "degree": report.degree,
        "q_values": [
            {"zeta": _complex_json(qv.zeta), "q": _complex_json(qv.q), "abs_q": qv.abs_q}
            for qv in report.q_values
        ],
        "s_value": report.s_value,
        "s_argmin": report.s_argmin,
        "t_value": report.t_value,
        "t_argmax": report.t_argmax,
        "tischler_value": report.tischler_value,
        "smale_margin": report.smale_margin,
        "dual_bound": report.dual_bound,
        "dual_margin": report.dual_margin,
        "tischler_bound": report.tischler_bound,
        "proof": proof,
    }


def summary_to_dict(summary: campaign_mod.CampaignSummary) -> dict[str, Any]:
    def _finite_or_none(x: float) -> float | None:
        return x if math.isfinite(x) else None

    return {
        "degrees": list(summary.config.degrees),
        "samples_per_degree": summary.config.samples_per_degree,
        "coefficient_distribution": summary.config.coefficient_distribution,
        "seed": summary.config.seed,
        "point_policy": summary.config.point_policy,
        "per_degree": [
            {
                "degree": d.degree,
                "count": d.count,
                "violations_smale": d.violations_smale,
                "violations_dual": d.violations_dual,
                "min_dual_margin": _finite_or_none(d.min_dual_margin),
                "max_s": _finite_or_none(d.max_s),
                "min_t": _finite_or_none(d.min_t),
                "tischler_violations": d.tischler_violations,
                "skipped_nonconverged": d.skipped_nonconverged,
                "max_c1_residual": d.max_c1_residual,
                "min_koebe_ratio": _finite_or_none(d.min_koebe_ratio),
                "containment_failures": d.containment_failures,
            }
            for d in summary.per_degree
        ],
    }


def search_result_to_dict(result: SearchResult, cfg: SearchConfig) -> dict[str, Any]:
    return {
        "degree": cfg.degree,
        "objective": cfg.objective,
        "seed": cfg.seed,
        "starts": cfg.starts,
        "best_value": result.best_value,
        "best_zetas": [_complex_json(z) for z in result.best_zetas],
        "best_polynomial": [_complex_json(c) for c in result.best_polynomial.coeffs],
        "evaluations": result.evaluations,
        "per_start_bests": list(result.per_start_bests),
        "history": [[index, value] for index, value in result.history],
    }


def _emit_json(payload: dict[str, Any], args: argparse.Namespace) -> None:
    envelope: dict[str, Any] = {"schema": SCHEMA_VERSION}
    if not args.deterministic:
        envelope["timestamp"] = datetime.now(timezone.utc).isoformat()
    envelope.update(payload)
    text = json.dumps(envelope, indent=2)
    print(text)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text + "\n")


def _solver_from_args(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        max_iterations=args.max_iterations,
        residual_tol=args.residual_tol,
        cluster_radius_multiplier=args.cluster_multiplier,
    )


def _polynomial_from_args(args: argparse.Namespace) -> ComplexPolynomial:
    if getattr(args, "example", None):
        if args.d is None:
            raise ValueError("--example requires --d DEGREE")
        return EXAMPLE_GENERATORS[args.example](args.d)
    if getattr(args, "poly", None):
        return parse_polynomial(args.poly)
    raise ValueError("provide --poly COEFFS or --example NAME with --d DEGREE")


def _add_solver_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--max-iterations", type=int, default=DEFAULT_SOLVER_CONFIG.max_iterations)
    sub.add_argument("--residual-tol", type=float, default=DEFAULT_SOLVER_CONFIG.residual_tol)
    sub.add_argument(
        "--cluster-multiplier",
        type=float,
        default=DEFAULT_SOLVER_CONFIG.cluster_radius_multiplier,
    )


def _add_poly_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--poly", help="coefficients as 're,im' pairs, constant first")
    sub.add_argument("--example", choices=sorted(EXAMPLE_GENERATORS))
    sub.add_argument("--d", type=int, help="degree for --example")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="global random seed")
    common.add_argument(
        "--deterministic",
        action="store_true",
        help="omit timestamps so identical runs emit identical bytes",
    )
    common.add_argument("--json-out", help="also write the JSON report to this path")
    common.add_argument("--csv-out", help="write per-row CSV output to this path")

    parser = _Parser(prog="smalemv", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, help=help_text, parents=[common])

    sub = add_command("analyze", "mean-value report for one polynomial")
    _add_poly_flags(sub)
    sub.add_argument("--z", default="0,0", help="evaluation point 're,im'")
    _add_solver_flags(sub)
    sub.set_defaults(func=cmd_analyze)

    sub = add_command("verify", "random campaign against the bounds")
    sub.add_argument("--degrees", default="2..8", help="range '2..8' or list '2,3,4'")
    sub.add_argument("--samples", type=int, default=1000)
    sub.add_argument(
        "--dist",
        choices=campaign_mod.DISTRIBUTIONS,
        default="unit-gaussian-complex",
    )
    sub.add_argument(
        "--point-policy",
        choices=campaign_mod.POINT_POLICIES,
        default="origin-after-normalization",
    )
    _add_solver_flags(sub)
    sub.set_defaults(func=cmd_verify)

    sub = add_command("search", "extremal critical-point search")
    sub.add_argument("--config", help="JSON file with SearchConfig fields")
    sub.add_argument("--d", type=int)
    sub.add_argument("--objective", choices=("max-S", "min-T", "max-Tischler-excess"))
    sub.add_argument("--starts", type=int, default=64)
    sub.add_argument("--max-evals", type=int, default=20000)
    sub.add_argument("--simplex-scale", type=float, default=0.25)
    sub.add_argument("--min-zeta-norm", type=float, default=1e-4)
    sub.set_defaults(func=cmd_search)

    sub = add_command("levelset", "sublevel-set contour to SVG")
    _add_poly_flags(sub)
    sub.add_argument("-o", "--output", help="SVG output path")
    sub.add_argument("--nx", type=int, default=512)
    sub.add_argument("--ny", type=int, default=512)
    sub.add_argument("--threshold", type=float, help="override the R^d threshold")
    sub.add_argument("--half-width", type=float, help="override the window half-width")
    _add_solver_flags(sub)
    sub.set_defaults(func=cmd_levelset)

    sub = add_command("examples", "emit a named example polynomial")
    sub.add_argument("--name", choices=sorted(EXAMPLE_GENERATORS), required=True)
    sub.add_argument("--d", type=int, required=True)
    sub.set_defaults(func=cmd_examples)

    return parser


def cmd_analyze(args: argparse.Namespace) -> int:
    P = _polynomial_from_args(args)
    z = parse_complex(args.z)
    solver = _solver_from_args(args)
    crit = critical_points(P, solver)
    try:
        report = analyze(P, z, crit)
    except SolverNotConvergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except ZCriticalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_Z_CRITICAL
    _emit_json({"kind": "mean-value-report", "report": report_to_dict(report)}, args)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = campaign_mod.CampaignConfig(
        degrees=parse_degrees(args.degrees),
        samples_per_degree=args.samples,
        coefficient_distribution=args.dist,
        seed=args.seed,
        point_policy=args.point_policy,
    )
    sink = None
    csv_file = None
    if args.csv_out:
        csv_file = open(args.csv_out, "w", encoding="utf-8", newline="")
        csv_file.write(
            "degree,sample,s,t,tischler,smale_margin,dual_margin,"
            "c1_residual,min_ratio,containment_ok\n"
        )

        def sink(row: dict) -> None:
            fields = [
                row["degree"],
                row["sample"],
                repr(row["s"]),
                repr(row["t"]),
                repr(row["tischler"]),
                repr(row["smale_margin"]),
                repr(row["dual_margin"]),
                "" if row["c1_residual"] is None else repr(row["c1_residual"]),
                "" if row["min_ratio"] is None else repr(row["min_ratio"]),
                "" if row["containment_ok"] is None else int(row["containment_ok"]),
            ]
            csv_file.write(",".join(str(f) for f in fields) + "\n")

    try:
        summary = campaign_mod.run_campaign(cfg, _solver_from_args(args), sink)
    finally:
        if csv_file is not None:
            csv_file.close()
    _emit_json({"kind": "campaign-summary", "summary": summary_to_dict(summary)}, args)
    return EXIT_OK if summary.total_bound_violations == 0 else EXIT_USAGE


def cmd_search(args: argparse.Namespace) -> int:
    fields: dict[str, Any] = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            fields.update(json.load(fh))
    if args.d is not None:
        fields["degree"] = args.d
    if args.objective is not None:
        fields["objective"] = args.objective
    fields.setdefault("starts", args.starts)
    fields.setdefault("max_evals", args.max_evals)
    fields.setdefault("simplex_scale", args.simplex_scale)
    fields.setdefault("min_zeta_norm", args.min_zeta_norm)
    fields.setdefault("seed", args.seed)
    if "degree" not in fields or "objective" not in fields:
        raise ValueError("search needs --d and --objective (or a --config file)")
    cfg = SearchConfig(**fields)
    result = run_search(cfg)
    if args.csv_out:
        with open(args.csv_out, "w", encoding="utf-8", newline="") as fh:
            fh.write("evaluation,incumbent\n")
            for index, value in result.history:
                fh.write(f"{index},{value!r}\n")
    _emit_json(
        {"kind": "search-result", "result": search_result_to_dict(result, cfg)}, args
    )
    return EXIT_OK


def cmd_levelset(args: argparse.Namespace) -> int:
    if not args.output:
        print("error: levelset requires an output path (-o PATH)", file=sys.stderr)
        return EXIT_USAGE
    P = _polynomial_from_args(args)
    if P.degree < 2:
        raise ValueError("levelset requires degree >= 2")
    solver = _solver_from_args(args)
    crit = critical_points(P, solver)
    if not crit.converged:
        print("error: root solver did not converge", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    threshold = (
        args.threshold
        if args.threshold is not None
        else levelset_mod.max_critical_value(P, crit)
    )
    window = levelset_mod.default_window(crit)
    if args.half_width is not None:
        cx = 0.5 * (window[0] + window[1])
        cy = 0.5 * (window[2] + window[3])
        window = (
            cx - args.half_width,
            cx + args.half_width,
            cy - args.half_width,
            cy + args.half_width,
        )
    grid = levelset_mod.sample_grid(P, window, args.nx, args.ny, threshold)
    contours = levelset_mod.extract_contour(grid)
    levelset_mod.write_svg(args.output, grid, contours, crit)
    if args.csv_out:
        levelset_mod.write_grid_csv(args.csv_out, grid)
    containment = levelset_mod.containment_check(P, crit, threshold)
    for verdict in containment.verdicts:
        state = "ok" if verdict.ok else "FAIL"
        print(
            f"containment {verdict.label}: |P({format_complex(verdict.point)})| "
            f"= {verdict.value:.6g} vs threshold {threshold:.6g} -> {state}"
        )
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_examples(args: argparse.Namespace) -> int:
    P = EXAMPLE_GENERATORS[args.name](args.d)
    print(format_polynomial(P))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
