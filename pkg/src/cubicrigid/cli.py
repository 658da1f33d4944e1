"""Command-line front end.

Subcommands:

  verify         run the full certificate pipeline for one curve pair
  resultant      compute Res_x of a curve pair by either determinant path
  artin-schreier closed form (and optional Sylvester oracle) for the
                 additive-polynomial resultant over F_p
  profile        per-coefficient degree table for the n-th iterate
  solve          numeric intersection points only
  sweep          verify over rectangles of (n, m), one row per pair

Exit codes: 0 all certificates pass, 1 any certificate failed, 2 usage
or resource-limit errors.  Output is deterministic for a fixed command
line and seed.

Resource limits come from flags (--max-n, --max-size, --enum-budget) or
environment variables (CUBICRIGID_MAX_N, CUBICRIGID_MAX_SIZE,
CUBICRIGID_ENUM_BUDGET); flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import cubicdyn, frobres, rigidity
from .errors import CubicRigidError, ResourceLimitError
from .exactpoly import NEG_INF
from .sylvester import leading_data, resultant_x

ENV_PREFIX = "CUBICRIGID_"

SWEEP_COLUMNS = ["n", "m", "tail_i", "tail_j", "degree", "expected",
                 "ord3_lead", "jac_mod3", "num_solutions", "min_abs_J",
                 "overall"]


@dataclass
class Limits:
    max_n: int | None = None        # iterate cap (default 7)
    max_size: int | None = None     # Sylvester size caps
    enum_budget: int | None = None  # field enumeration cap

    def oracle_budget(self) -> int:
        return self.max_size if self.max_size is not None else frobres.ORACLE_SIZE_BUDGET

    def certificate_size(self) -> int:
        return self.max_size if self.max_size is not None else rigidity.MAX_SYLVESTER_SIZE

    def enumeration(self) -> int:
        return self.enum_budget if self.enum_budget is not None else frobres.ENUM_BUDGET_DEFAULT


@dataclass
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    emit: str = "text"
    out: str | None = None
    jobs: int = 1
    seed: int = 0
    limits: Limits = field(default_factory=Limits)


def _env_int(name: str) -> int | None:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw in (None, ""):
        return None
    try:
        return int(raw)
    except ValueError:
        print(f"invalid integer in ${ENV_PREFIX}{name}: {raw!r}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubicrigid",
        allow_abbrev=False,
        description="Exact certificates for transversal intersections of "
                    "critical-orbit curves of the cubic family z^3 - 3x^2 z + y.")
    parser.add_argument("--emit", choices=["text", "json", "csv"], default="text")
    parser.add_argument("--out", metavar="PATH", default=None,
                        help="write the report to PATH instead of stdout")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for evaluation points / sweep rows")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the numeric solver's starting configuration")
    parser.add_argument("--max-n", type=int, default=None)
    parser.add_argument("--max-size", type=int, default=None)
    parser.add_argument("--enum-budget", type=int, default=None)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_verify = sub.add_parser("verify", help="full certificate pipeline for one pair")
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--m", type=int, required=True)
    p_verify.add_argument("--tail-i", type=int, choices=[0, 1], default=0)
    p_verify.add_argument("--tail-j", type=int, choices=[0, 1], default=0)
    p_verify.add_argument("--tol", type=float, default=rigidity.MATCH_TOL_DEFAULT)
    p_verify.add_argument("--no-solve", action="store_true",
                          help="skip the numeric exhibit")

    p_res = sub.add_parser("resultant", help="Res_x of the periodic curve pair")
    p_res.add_argument("--n", type=int, required=True)
    p_res.add_argument("--m", type=int, required=True)
    p_res.add_argument("--tail-i", type=int, choices=[0, 1], default=0)
    p_res.add_argument("--tail-j", type=int, choices=[0, 1], default=0)
    p_res.add_argument("--method", choices=["ff", "ei", "both", "auto"], default="auto")
    p_res.add_argument("--full", action="store_true",
                       help="print every coefficient, not just the summary")

    p_as = sub.add_parser("artin-schreier",
                          help="resultant of x^(p^n)-x-A and x^(p^m)-x-B over F_p")
    p_as.add_argument("--p", type=int, required=True)
    p_as.add_argument("--n", type=int, required=True)
    p_as.add_argument("--m", type=int, required=True)
    p_as.add_argument("--oracle", action="store_true",
                      help="also expand the Sylvester determinant and match signs")

    p_prof = sub.add_parser("profile", help="coefficient degree profile of f^n(x)")
    p_prof.add_argument("--n", type=int, required=True)

    p_solve = sub.add_parser("solve", help="numeric intersection points")
    p_solve.add_argument("--n", type=int, required=True)
    p_solve.add_argument("--m", type=int, required=True)
    p_solve.add_argument("--tail-i", type=int, choices=[0, 1], default=0)
    p_solve.add_argument("--tail-j", type=int, choices=[0, 1], default=0)
    p_solve.add_argument("--tol", type=float, default=rigidity.MATCH_TOL_DEFAULT)

    p_sweep = sub.add_parser("sweep", help="verify over ranges of n and m")
    p_sweep.add_argument("--n-range", required=True, metavar="LO:HI",
                         help="inclusive range, e.g. 1:2 (or a single value)")
    p_sweep.add_argument("--m-range", required=True, metavar="LO:HI")
    p_sweep.add_argument("--tails", default="0,0", metavar="I,J",
                         help="comma-separated tail flags, or 'all' for all four")
    p_sweep.add_argument("--tol", type=float, default=rigidity.MATCH_TOL_DEFAULT)
    return parser


def parse_config(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    limits = Limits(
        max_n=args.max_n if args.max_n is not None else _env_int("MAX_N"),
        max_size=args.max_size if args.max_size is not None else _env_int("MAX_SIZE"),
        enum_budget=(args.enum_budget if args.enum_budget is not None
                     else _env_int("ENUM_BUDGET")))
    if (limits.max_n is not None and limits.max_n <= 0) or \
       (limits.max_size is not None and limits.max_size <= 0) or \
       (limits.enum_budget is not None and limits.enum_budget <= 0):
        raise SystemExit(2)
    params = {k: v for k, v in vars(args).items()
              if k not in ("emit", "out", "jobs", "seed", "subcommand",
                           "max_n", "max_size", "enum_budget")}
    if args.jobs < 1:
        build_parser().error("--jobs must be >= 1")
    return RunConfig(subcommand=args.subcommand, params=params, emit=args.emit,
                     out=args.out, jobs=args.jobs, seed=args.seed, limits=limits)


# ---------------------------------------------------------------------------
# Renderers
# ---------------------------------------------------------------------------

def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.12e}{z.imag:+.12e}i"


def _report_row(rep) -> dict:
    min_j = min((abs(s.jacobian_value) for s in rep.solutions), default=None)
    return {
        "n": rep.n, "m": rep.m, "tail_i": rep.tail_i, "tail_j": rep.tail_j,
        "degree": rep.resultant_degree, "expected": rep.expected_degree,
        "ord3_lead": rep.lead_coeff_ord3,
        "jac_mod3": rep.jacobian_mod3_ok,
        "num_solutions": len(rep.solutions),
        "min_abs_J": "" if min_j is None else repr(min_j),
        "overall": rep.overall,
    }


def _render_report_text(rep) -> str:
    lead = "n/a" if rep.lead_coeff is None else rep.lead_coeff
    lines = [
        f"verify n={rep.n} m={rep.m} tails=({rep.tail_i},{rep.tail_j})",
        f"  resultant: degree {rep.resultant_degree} "
        f"(expected {rep.expected_degree}), lead {lead}, "
        f"ord3(lead) = {rep.lead_coeff_ord3}, "
        f"mod-3 leading term {'ok' if rep.mod3_lead_ok else 'WRONG'}, "
        f"{'exact' if rep.exact_resultant else 'mod-p evidence'}",
        f"  jacobian: {'J = 1 + 3K certified' if rep.jacobian_mod3_ok else 'mod-3 certificate FAILED'}"
        f" (K {'present' if rep.K_poly_present else 'absent'})",
        f"  integrality: {'ok' if rep.integrality_ok else 'FAILED'}",
        f"  solutions: {len(rep.solutions)}",
    ]
    for s in rep.solutions:
        lines.append(
            f"    alpha={_fmt_complex(s.alpha)} beta={_fmt_complex(s.beta)} "
            f"J={_fmt_complex(s.jacobian_value)} "
            f"res=({s.residual_F:.2e},{s.residual_G:.2e}) "
            f"mult={s.multiplicity_hint}" + ("" if s.strict else " [non-strict tail]"))
    for note in rep.notes:
        lines.append(f"  note: {note}")
    lines.append(f"  overall: {'PASS' if rep.overall else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _csv_from_rows(rows: list, columns: list) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _emit_report(rep, emit: str) -> str:
    if emit == "json":
        return json.dumps(rep.to_json_dict(), indent=2, sort_keys=True) + "\n"
    if emit == "csv":
        return _csv_from_rows([_report_row(rep)], SWEEP_COLUMNS)
    return _render_report_text(rep)


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    p = cfg.params
    rep = rigidity.transversality_report(
        p["n"], p["m"], (p["tail_i"], p["tail_j"]), tol=p["tol"],
        seed=cfg.seed, jobs=cfg.jobs, solve=not p["no_solve"],
        max_n=cfg.limits.max_n)
    return _emit_report(rep, cfg.emit), 0 if rep.overall else 1


def _cmd_resultant(cfg: RunConfig) -> tuple[str, int]:
    p = cfg.params
    n, m = p["n"], p["m"]
    f = rigidity.variant_F(n, p["tail_i"], cfg.limits.max_n)
    g = rigidity.variant_G(m, p["tail_j"], cfg.limits.max_n)
    bound = 3 ** (n + m - 1)
    method = p["method"]
    agreement = None
    if method == "both":
        r = resultant_x(f, g, degree_bound=bound, method="both", jobs=cfg.jobs)
        agreement = True
    else:
        r = resultant_x(f, g, degree_bound=bound, method=method, jobs=cfg.jobs)
    ld = leading_data(r)
    mod3 = r.reduce_mod(3)
    mod3_deg = mod3.deg_y
    mod3_term = ("0" if mod3.is_zero else
                 f"{mod3.coefficient(0, int(mod3_deg))}*y^{int(mod3_deg)}")
    payload = {
        "n": n, "m": m, "degree": ld.degree,
        "lead_coeff": str(ld.lead_coeff), "ord3_lead": ld.ord3,
        "mod3_leading_term": mod3_term,
        "method_agreement": agreement,
    }
    if cfg.emit == "json":
        if p["full"]:
            payload["coefficients"] = r.to_json_terms()
        return json.dumps(payload, indent=2, sort_keys=True) + "\n", 0
    if cfg.emit == "csv":
        return _csv_from_rows([payload], list(payload.keys())), 0
    lines = [f"Res_x for n={n}, m={m}, tails=({p['tail_i']},{p['tail_j']}):",
             f"  degree {ld.degree}, leading coefficient {ld.lead_coeff}, "
             f"ord3 {ld.ord3}, mod-3 leading term {mod3_term}"]
    if agreement is not None:
        lines.append(f"  fraction-free and evaluation-interpolation agree: {agreement}")
    if p["full"]:
        lines.append(f"  R(y) = {r}")
    return "\n".join(lines) + "\n", 0


def _cmd_artin_schreier(cfg: RunConfig) -> tuple[str, int]:
    p = cfg.params
    closed = frobres.artin_schreier_resultant_closed(p["p"], p["n"], p["m"])
    payload = {"p": p["p"], "n": p["n"], "m": p["m"], "closed_form": str(closed)}
    code = 0
    if p["oracle"]:
        oracle = frobres.artin_schreier_resultant_oracle(
            p["p"], p["n"], p["m"], budget=cfg.limits.oracle_budget())
        sign = frobres.match_sign(oracle, closed)
        payload["oracle"] = str(oracle)
        payload["matched_sign"] = sign
        if sign is None:
            code = 1
    if cfg.emit == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n", code
    if cfg.emit == "csv":
        return _csv_from_rows([payload], list(payload.keys())), code
    lines = [f"Res(x^{p['p']}^{p['n']} - x - A, x^{p['p']}^{p['m']} - x - B) over F_{p['p']}:",
             f"  closed form: {payload['closed_form']}"]
    if p["oracle"]:
        lines.append(f"  Sylvester oracle: {payload['oracle']}")
        lines.append(f"  matched sign: {payload['matched_sign']}")
    return "\n".join(lines) + "\n", code


def _cmd_profile(cfg: RunConfig) -> tuple[str, int]:
    n = cfg.params["n"]
    prof = cubicdyn.coefficient_profile(n, max_n=cfg.limits.max_n)
    rows = []
    for e in prof.entries:
        row = e.json_row(n)
        row["matches_observed_pattern"] = e.matches_conjecture
        rows.append(row)
    code = 0 if prof.ok else 1
    if cfg.emit == "json":
        return json.dumps({"n": n, "ok": prof.ok, "rows": rows},
                          indent=2, sort_keys=True) + "\n", code
    if cfg.emit == "csv":
        return _csv_from_rows(rows, ["n", "k", "bound", "actual_degree", "ok",
                                     "matches_observed_pattern"]), code
    lines = [f"coefficient profile of f^{n}(x): deg a_k vs bound 4*floor(k/3)-k",
             f"{'k':>5} {'bound':>6} {'deg':>6} {'ok':>4} {'pattern':>8}"]
    for row in rows:
        deg = "-inf" if row["actual_degree"] is None else row["actual_degree"]
        lines.append(f"{row['k']:>5} {row['bound']:>6} {deg:>6} "
                     f"{'y' if row['ok'] else 'N':>4} "
                     f"{'y' if row['matches_observed_pattern'] else 'n':>8}")
    lines.append(f"all bounds hold: {prof.ok}")
    return "\n".join(lines) + "\n", code


def _cmd_solve(cfg: RunConfig) -> tuple[str, int]:
    p = cfg.params
    sols = rigidity.solve_pcf(p["n"], p["m"], (p["tail_i"], p["tail_j"]),
                              tol=p["tol"], seed=cfg.seed, jobs=cfg.jobs,
                              max_n=cfg.limits.max_n)
    ok = all(s.residual_F <= rigidity.RESIDUAL_TOL
             and s.residual_G <= rigidity.RESIDUAL_TOL
             and abs(s.jacobian_value) >= rigidity.JACOBIAN_MIN for s in sols)
    if cfg.emit == "json":
        return json.dumps([s.to_json_dict() for s in sols],
                          indent=2, sort_keys=True) + "\n", 0 if ok else 1
    if cfg.emit == "csv":
        cols = ["alpha_re", "alpha_im", "beta_re", "beta_im", "residual_F",
                "residual_G", "J_re", "J_im", "multiplicity_hint", "strict"]
        rows = [{"alpha_re": repr(s.alpha.real), "alpha_im": repr(s.alpha.imag),
                 "beta_re": repr(s.beta.real), "beta_im": repr(s.beta.imag),
                 "residual_F": repr(s.residual_F), "residual_G": repr(s.residual_G),
                 "J_re": repr(s.jacobian_value.real), "J_im": repr(s.jacobian_value.imag),
                 "multiplicity_hint": s.multiplicity_hint, "strict": s.strict}
                for s in sols]
        return _csv_from_rows(rows, cols), 0 if ok else 1
    lines = [f"solutions for n={p['n']} m={p['m']} tails=({p['tail_i']},{p['tail_j']}):"]
    for s in sols:
        lines.append(f"  alpha={_fmt_complex(s.alpha)} beta={_fmt_complex(s.beta)} "
                     f"J={_fmt_complex(s.jacobian_value)} "
                     f"res=({s.residual_F:.2e},{s.residual_G:.2e}) "
                     f"mult={s.multiplicity_hint}"
                     + ("" if s.strict else " [non-strict tail]"))
    return "\n".join(lines) + "\n", 0 if ok else 1


def _parse_range(spec: str) -> list:
    parts = spec.split(":")
    if len(parts) == 1:
        lo = hi = int(parts[0])
    elif len(parts) == 2:
        lo, hi = int(parts[0]), int(parts[1])
    else:
        raise ValueError(f"bad range {spec!r}")
    return list(range(lo, hi + 1))


def _sweep_one(task) -> dict:
    n, m, ti, tj, tol, seed, max_n = task
    try:
        rep = rigidity.transversality_report(
            n, m, (ti, tj), tol=tol, seed=seed, jobs=1, max_n=max_n)
        return _report_row(rep)
    except CubicRigidError as exc:
        return {"n": n, "m": m, "tail_i": ti, "tail_j": tj, "degree": -1,
                "expected": 3 ** (n + m - 1), "ord3_lead": -1, "jac_mod3": False,
                "num_solutions": 0, "min_abs_J": "", "overall": False,
                "_error": str(exc)}


def _cmd_sweep(cfg: RunConfig) -> tuple[str, int]:
    p = cfg.params
    try:
        n_values = _parse_range(p["n_range"])
        m_values = _parse_range(p["m_range"])
    except ValueError as exc:
        raise SystemExit(2) from exc
    if p["tails"] == "all":
        tail_pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    else:
        ti, tj = (int(t) for t in p["tails"].split(","))
        tail_pairs = [(ti, tj)]
    tasks = [(n, m, ti, tj, p["tol"], cfg.seed, cfg.limits.max_n)
             for n in n_values for m in m_values for (ti, tj) in tail_pairs]
    if cfg.jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_sweep_one, tasks))
    else:
        rows = [_sweep_one(t) for t in tasks]
    errors = [r.pop("_error", None) for r in rows]
    code = 0 if all(r["overall"] for r in rows) or not rows else 1
    if cfg.emit == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n", code
    # text and csv both use the tabular form; csv is the native format here
    out = _csv_from_rows(rows, SWEEP_COLUMNS)
    if cfg.emit == "text":
        noted = [f"# {e}" for e in errors if e]
        if noted:
            out += "\n".join(noted) + "\n"
    return out, code


_COMMANDS = {
    "verify": _cmd_verify,
    "resultant": _cmd_resultant,
    "artin-schreier": _cmd_artin_schreier,
    "profile": _cmd_profile,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
}


def run(config: RunConfig) -> int:
    """Execute one configured subcommand; returns the process exit code."""
    try:
        output, code = _COMMANDS[config.subcommand](config)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except CubicRigidError as exc:
        print(f"certificate failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return code


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(2_000_000)
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
