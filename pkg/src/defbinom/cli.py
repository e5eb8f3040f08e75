"""Command-line interface.

Generating functions are given as JSON, inline or as a file path:

    {"raw": ["1", "1", "1/2"]}                    explicit coefficients
    {"family": "Gauss", "a": "1/2"}               a closed-form family
    {"exp": {"kind": "MonomialSum", "f": ["0", "1", "1/2"]}}
    {"theorem31": "InvPow", "a": "1", "b": "1", "f": {...}}
    {"product": ["1/2", "1/4"], "alpha": "0"}
    {"normalize": {...}}                          rescale so that a_1 = 1

A bare Sigma0 expression (``{"kind": ...}``) is accepted by ``spec check``.

Exit codes: 0 ok, 1 usage, 2 domain error, 3 class-check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import conjectures, deformations
from .cst import (
    deformed_binomial,
    i_coefficients,
    pn_polynomials,
    sequence_from_series,
)
from .errors import ConvergenceError, DomainError, OrderMismatchError, TruncationError
from .families import (
    Example1,
    Example2Finite,
    Gauss,
    family_from_json,
)
from .detection import helstrom_nonlinear
from .powerseries import DEFAULT_ORDER, MAX_ORDER, TruncSeries, format_rational, rational
from .sigma import (
    build_product_family,
    build_theorem31,
    check_sigma,
    check_sigma0,
    check_sigma_plus,
    eval_sigma0,
    normalize,
    sigma0_from_json,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CHECK = 0, 1, 2, 3

FIGURES = {
    "example1-n5": (Example1(1, 5), range(1, 8)),
    "example2-a1_4-a1_2": (Example2Finite(Fraction(1, 4), Fraction(1, 2)), range(1, 5)),
    "example2-a1_3-a4_3": (Example2Finite(Fraction(1, 3), Fraction(4, 3)), range(1, 5)),
    "example2-a5_4-a6_4": (Example2Finite(Fraction(5, 4), Fraction(6, 4)), range(1, 5)),
    "example3-a1_2": (Gauss(Fraction(1, 2)), range(1, 6)),
}
FIGURE_POINTS = 201


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_json(text: str):
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON: {exc}") from None


def series_from_json(obj, order: int) -> TruncSeries:
    if not isinstance(obj, dict):
        raise DomainError("a generating function spec must be a JSON object")
    if "raw" in obj:
        raw = obj["raw"]
        if not isinstance(raw, list) or not raw:
            raise DomainError("field 'raw' must be a nonempty list")
        return TruncSeries.from_coeffs(raw, min(order, len(raw) - 1))
    if "family" in obj:
        return family_from_json(obj).series(order)
    if "exp" in obj:
        return eval_sigma0(sigma0_from_json(obj["exp"]), order).exp()
    if "theorem31" in obj:
        if "f" not in obj:
            raise DomainError("field 'f' is required with 'theorem31'")
        return build_theorem31(
            sigma0_from_json(obj["f"]),
            obj["theorem31"],
            order,
            a=obj.get("a"),
            b=obj.get("b"),
            alpha=obj.get("alpha"),
        )
    if "product" in obj:
        return build_product_family(obj["product"], obj.get("alpha", "0"), order)
    if "normalize" in obj:
        return normalize(series_from_json(obj["normalize"], order))
    if "kind" in obj:
        raise DomainError("a Sigma0 expression is not a generating function; wrap it as {\"exp\": ...}")
    raise DomainError("unrecognised generating function spec")


def _dump(obj, out):
    json.dump(obj, out, indent=2, sort_keys=True)
    out.write("\n")


def _order(args, default=DEFAULT_ORDER) -> int:
    order = default if args.order is None else args.order
    if not 0 <= order <= MAX_ORDER:
        raise UsageError(f"--order must lie in [0, {MAX_ORDER}]")
    return order


def _fmt_all(values):
    return [format_rational(v) for v in values]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_spec_check(args, out):
    obj = load_json(args.spec)
    order = _order(args)
    if isinstance(obj, dict) and "kind" in obj:
        reports = [check_sigma0(eval_sigma0(sigma0_from_json(obj), order))]
    else:
        n = series_from_json(obj, order)
        reports = [check_sigma(n)]
        if n[0] == 1:
            reports.append(check_sigma_plus(n))
    _dump({"reports": [r.to_json() for r in reports]}, out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK


def cmd_sequence(args, out):
    order = _order(args)
    if args.n_max > order:
        raise UsageError("--n-max exceeds --order")
    n = series_from_json(load_json(args.spec), order).truncate(args.n_max)
    x = sequence_from_series(n)
    I = i_coefficients(n)
    rows = [
        {"n": k, "x": format_rational(x[k]), "xfact": format_rational(x.xfact[k]), "I": format_rational(I[k])}
        for k in range(len(x))
    ]
    _dump({"rows": rows}, out)
    return EXIT_OK


def _grid(k):
    return [Fraction(j, k) for j in range(k + 1)]


def cmd_poly(args, out):
    order = _order(args)
    if args.n_max > order:
        raise UsageError("--n-max exceeds --order")
    n = series_from_json(load_json(args.spec), order).truncate(args.n_max)
    p = pn_polynomials(n)
    result = {"polynomials": [{"n": k, "coeffs": _fmt_all(p[k].coeffs), "text": str(p[k])} for k in range(len(p))]}
    if args.eta_grid:
        grid = _grid(args.eta_grid)
        result["samples"] = {
            "eta": [float(e) for e in grid],
            **{f"p{k}": [float(p[k](e)) for e in grid] for k in range(len(p))},
        }
    _dump(result, out)
    return EXIT_OK


def cmd_dist(args, out):
    order = _order(args)
    if args.n > order:
        raise UsageError("--n exceeds --order")
    n = series_from_json(load_json(args.spec), order)
    if args.g:
        table = deformations.eta_deform(n, deformations.parse_monotone_map(args.g), args.n, args.eta)
    else:
        table = deformed_binomial(n, args.n, rational(args.eta))
    if not table.probabilistic:
        print("warning: generating function is not in Sigma+; the table is formal", file=sys.stderr)
    if args.json:
        _dump(table.to_json(), out)
    else:
        out.write(",".join(_fmt_all(table.probs)) + "\n")
    return EXIT_OK


def cmd_deform(args, out):
    order = _order(args)
    n = series_from_json(load_json(args.spec), order)
    if args.normalize:
        n = normalize(n)
    alpha = rational(args.alpha)
    x = sequence_from_series(n)
    p = pn_polynomials(n)
    checks = {}
    if args.op == "d":
        m = deformations.d_alpha(n, alpha)
        x_formula = deformations.d_alpha_sequence(x, p, alpha)
        polys = deformations.d_alpha_polys(x, p, alpha)
        checks["I_match"] = deformations.d_alpha_in(x, i_coefficients(n), alpha) == i_coefficients(m)
    else:
        m = deformations.e_alpha(n, alpha)
        q = deformations.e_alpha_q_polynomials(x)
        x_formula, polys = deformations.e_alpha_sequence_and_polys(x, p, q, alpha)
        checks["q_match"] = q == deformations.q_polynomials_series(n)
    x_series = sequence_from_series(m)
    checks["sequence_match"] = x_formula == x_series
    checks["polys_match"] = tuple(polys) == pn_polynomials(m)
    checks["sigma_plus"] = check_sigma_plus(m).passed
    checks["normalized"] = m[1] == 1
    _dump(
        {
            "op": args.op,
            "alpha": format_rational(alpha),
            "series": _fmt_all(m.coeffs),
            "x": _fmt_all(x_series.x),
            "checks": checks,
        },
        out,
    )
    return EXIT_OK if all(checks.values()) else EXIT_CHECK


def cmd_flow(args, out):
    f = tuple(s for s in args.f.split(",") if s)
    state = deformations.FlowState(f, 0, rational(args.alpha))
    result = deformations.flow_iterate(state, args.steps, args.op)
    _dump(result.to_json(), out)
    return EXIT_OK


def cmd_conjecture(args, out):
    order = _order(args, conjectures.DEFAULT_ORDER)
    if args.which == "1":
        if args.a is None or args.m is None:
            raise UsageError("conjecture 1 needs --a and --m")
        reports = [conjectures.conjecture1_check(args.a, args.m, args.n_max, order)]
    else:
        if not args.coeffs:
            raise UsageError("conjecture 2 needs --coeffs")
        coeffs = [s for s in args.coeffs.split(",") if s]
        conventions = conjectures.CONVENTIONS if args.convention == "both" else (args.convention,)
        reports = [conjectures.conjecture2_check(coeffs, c, args.n_max, order) for c in conventions]
    _dump({"reports": [r.to_json() for r in reports]}, out)
    return EXIT_OK


def cmd_helstrom(args, out):
    n = series_from_json(load_json(args.spec), _order(args))
    _dump(helstrom_nonlinear(n, args.t).to_json(), out)
    return EXIT_OK


def figure_csv(name: str) -> str:
    if name not in FIGURES:
        raise UsageError(f"unknown figure {name!r}; choose from {', '.join(sorted(FIGURES))}")
    spec, ks = FIGURES[name]
    ks = list(ks)
    p = pn_polynomials(spec.series(max(ks)))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["eta"] + [f"p{k}" for k in ks])
    for j in range(FIGURE_POINTS):
        eta = Fraction(j, FIGURE_POINTS - 1)
        writer.writerow([repr(float(eta))] + [repr(float(p[k](eta))) for k in ks])
    return buf.getvalue()


def cmd_figure(args, out):
    out.write(figure_csv(args.name))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None, help=f"truncation order (default {DEFAULT_ORDER}, max {MAX_ORDER})")

    parser = _Parser(prog="defbinom", description="Deformed binomial distributions from generating functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    spec = sub.add_parser("spec", help="class membership reports")
    spec_sub = spec.add_subparsers(dest="action", required=True, parser_class=_Parser)
    check = spec_sub.add_parser("check", parents=[common])
    check.add_argument("spec")
    check.set_defaults(func=cmd_spec_check)

    p = sub.add_parser("sequence", parents=[common], help="x_n, x_n! and I_n")
    p.add_argument("spec")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("poly", parents=[common], help="polynomials p_n(eta)")
    p.add_argument("spec")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--eta-grid", type=int, default=0, metavar="K", help="also sample at eta = j/K")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("dist", parents=[common], help="deformed binomial table")
    p.add_argument("spec")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--g", help="eta reparametrization: pow:c or poly:c1,c2,...")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("deform", parents=[common], help="apply D_alpha or E_alpha")
    p.add_argument("spec")
    p.add_argument("--op", choices=["d", "e"], required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--normalize", action="store_true", help="normalize the input first")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("flow", help="iterate the deformation flow on F's coefficients")
    p.add_argument("--alpha", required=True)
    p.add_argument("--f", required=True, help="comma-separated coefficients f_0,f_1,...")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--op", choices=["d", "e"], default="d")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("conjecture", parents=[common], help="recursion conjecture harness")
    p.add_argument("which", choices=["1", "2"])
    p.add_argument("--a")
    p.add_argument("--m", type=int)
    p.add_argument("--coeffs", help="c_2,...,c_m")
    p.add_argument("--convention", choices=[*conjectures.CONVENTIONS, "both"], default="both")
    p.add_argument("--n-max", type=int, default=conjectures.DEFAULT_N_MAX)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("helstrom", parents=[common], help="Helstrom bound for a nonlinear coherent state")
    p.add_argument("spec")
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_helstrom)

    p = sub.add_parser("figure", help="CSV data for the polynomial figures")
    p.add_argument("name", choices=sorted(FIGURES))
    p.set_defaults(func=cmd_figure)
    return parser


def _glue_negative_values(argv):
    """Let ``--alpha -1/2`` through: argparse would read ``-1/2`` as a flag."""
    out = []
    for tok in argv:
        if out and out[-1] in VALUE_FLAGS and tok.startswith("-") and len(tok) > 1 and tok[1].isdigit():
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


VALUE_FLAGS = ("--alpha", "--eta", "--a", "--t", "--f", "--coeffs")


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"defbinom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, TruncationError, OrderMismatchError, ConvergenceError, ValueError, TypeError) as exc:
        print(f"defbinom: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    sys.exit(code)
