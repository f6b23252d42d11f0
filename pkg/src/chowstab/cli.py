"""Command-line surface: thin certified shell over the library.

Every subcommand maps one-to-one onto a library operation and emits a
certificate document, either human-readable or as deterministic JSON
(sorted keys; by default timing_ms is 0 so identical inputs give
byte-identical output, pass --timing to record wall time instead).
Randomized commands require an explicit --seed.

Exit codes: 0 success, 2 usage/parse errors, 3 precondition violations.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .cycles import lift_support, multiple_cycle, sum_cycles, transfer_check
from .discriminants import cyclic_critical_exponent, discriminant_binary, \
    quartic_st, singular_locus_enumerate, smoothness_binary, sylvester_resultant
from .errors import ChowstabError, ParseError
from .fields import FP, ZZ, PrimeFieldElem, domain_from_tag, domain_tag
from .poly import Poly, parse_poly
from .stability import BracketSupport, SearchBudget, StabilityCertificate, \
    destab_search, lee_ratio, mu_bracket, mu_hypersurface, \
    numerical_identity_check, torus_certificate, WeightVector
from .thresholds import INFINITY, blowup_discrepancy, fpt_interval, \
    lct_bound_optimize, lct_upper_bound, lee_verdict

SCHEMA_VERSION = "1"


@dataclass
class CertificateDocument:
    schema_version: str
    command: str
    inputs: dict
    result: dict
    timing_ms: int

    def to_json(self) -> str:
        payload = {"schema_version": self.schema_version,
                   "command": self.command,
                   "inputs": jsonable(self.inputs),
                   "result": jsonable(self.result),
                   "timing_ms": self.timing_ms}
        return json.dumps(payload, sort_keys=True, indent=2)


def jsonable(x):
    """Map library values onto deterministic JSON-encodable structures."""
    if isinstance(x, Fraction):
        return str(x)
    if x == INFINITY and isinstance(x, float):
        return "inf"
    if isinstance(x, PrimeFieldElem):
        return x.residue
    if isinstance(x, Poly):
        return x.to_string()
    if isinstance(x, WeightVector):
        return list(x.entries)
    if isinstance(x, bool) or isinstance(x, int) or isinstance(x, str) \
            or x is None:
        return x
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):  # Enum
        return x.value
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


# -- small input parsers -------------------------------------------------------


def _parse_int_csv(text: str) -> list:
    try:
        return [int(t.strip()) for t in text.split(",")]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}")


def _parse_rational(text: str):
    t = text.strip()
    if t == "inf":
        return INFINITY
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational like 5/6, got {text!r}")


def _parse_rational_csv(text: str) -> list:
    return [_parse_rational(t) for t in text.split(",")]


def _parse_bracket_tuples(text: str) -> list:
    """Parse '{0,1},{0,1};{0,2},{1,3}' into a list of subset tuples."""
    tuples = []
    for chunk in text.split(";"):
        groups = re.findall(r"\{([^}]*)\}", chunk)
        if not groups:
            raise ParseError(f"no subsets found in {chunk!r}")
        tuples.append(tuple(tuple(_parse_int_csv(g)) for g in groups))
    return tuples


def read_poly_file(path: str) -> tuple:
    """Read a polynomial file: header 'vars=N field=TAG', body in the grammar.

    Returns (poly, domain); parse errors carry line and column.
    """
    with open(path, "r", encoding="utf-8") as handle:
        content = handle.read()
    lines = content.splitlines()
    if not lines:
        raise ParseError("empty polynomial file", line=1, position=1)
    header = lines[0].strip()
    match = re.fullmatch(r"vars=(\d+)\s+field=(\S+)", header)
    if not match:
        raise ParseError("expected header 'vars=<N> field=<q|fp:P>'",
                         line=1, position=1)
    nvars = int(match.group(1))
    domain = domain_from_tag(match.group(2))
    body = "\n".join(lines[1:])
    if not body.strip():
        raise ParseError("missing polynomial body", line=2, position=1)
    try:
        poly = parse_poly(body, nvars, domain)
    except ParseError as exc:
        pos = exc.position or 1
        consumed = body[:pos - 1]
        line = 2 + consumed.count("\n")
        col = pos - (consumed.rfind("\n") + 1)
        raise ParseError(str(exc).split(" (")[0], line=line, position=col) \
            from None
    return poly, domain


def _load_poly(args, which: str = "poly") -> tuple:
    """Fetch a polynomial from --poly/--nvars/--field or from --in FILE."""
    text = getattr(args, which.replace("-", "_"), None)
    path = getattr(args, "in_file" if which == "poly" else "in_file2", None)
    if path is not None:
        return read_poly_file(path)
    if text is None:
        raise ParseError(f"--{which} or --in is required")
    if args.nvars is None:
        raise ParseError("--nvars is required with --poly")
    domain = domain_from_tag(args.field)
    return parse_poly(text, args.nvars, domain), domain


# -- command handlers -----------------------------------------------------------


def _cmd_mu(args):
    poly, domain = _load_poly(args)
    r = WeightVector(tuple(_parse_int_csv(args.r)))
    value = mu_hypersurface(poly, r)
    inputs = {"poly": poly, "field": domain_tag(domain), "r": r}
    return inputs, {"mu": value}


def _cmd_mu_bracket(args):
    tuples = _parse_bracket_tuples(args.tuples)
    bracket = BracketSupport.build(args.n, args.cycle_dim, args.d, tuples)
    r = WeightVector(tuple(_parse_int_csv(args.r)))
    value = mu_bracket(bracket, r)
    inputs = {"n": args.n, "cycle_dim": args.cycle_dim, "d": args.d,
              "tuples": sorted(map(list, bracket.tuples)), "r": r}
    return inputs, {"mu": value}


def _cmd_lee_ratio(args):
    poly, domain = _load_poly(args)
    r = WeightVector(tuple(_parse_int_csv(args.r)))
    res = lee_ratio(poly, r)
    inputs = {"poly": poly, "field": domain_tag(domain), "r": r}
    return inputs, {"w_f": res.w_f, "sum_wxI": res.sum_wxI,
                    "ratio": res.ratio}


def _cmd_identity_check(args):
    poly, domain = _load_poly(args)
    r = WeightVector(tuple(_parse_int_csv(args.r)))
    res = numerical_identity_check(poly, r)
    inputs = {"poly": poly, "field": domain_tag(domain), "r": r}
    return inputs, {"lhs": res.lhs, "mu": res.mu, "residual": res.residual}


def _certificate_result(cert: StabilityCertificate) -> dict:
    result = {"verdict": cert.verdict.value}
    if cert.witness_r is not None:
        result["witness_r"] = cert.witness_r
    if cert.witness_g is not None:
        result["witness_g"] = [list(row) for row in cert.witness_g]
    if cert.mu_value is not None:
        result["mu"] = cert.mu_value
    if cert.lp_value is not None:
        result["lp_value"] = cert.lp_value
    if cert.search_budget_used is not None:
        result["search_budget_used"] = cert.search_budget_used.as_dict()
        result["note"] = ("unknown_after_search is not a stability proof"
                          if cert.verdict.value == "unknown_after_search"
                          else "witness found by bounded search")
    return result


def _cmd_certify_torus(args):
    poly, domain = _load_poly(args)
    cert = torus_certificate(poly)
    inputs = {"poly": poly, "field": domain_tag(domain)}
    return inputs, _certificate_result(cert)


def _cmd_search_destab(args):
    poly, domain = _load_poly(args)
    budget = SearchBudget(max_candidates=args.max_candidates,
                          transvection_scalars=tuple(
                              _parse_int_csv(args.scalars)),
                          depth=args.depth, seed=args.seed)
    cert = destab_search(poly, budget)
    inputs = {"poly": poly, "field": domain_tag(domain),
              "budget": {"max_candidates": budget.max_candidates,
                         "scalars": list(budget.transvection_scalars),
                         "depth": budget.depth, "seed": budget.seed}}
    return inputs, _certificate_result(cert)


def _cmd_sum(args):
    poly, domain = _load_poly(args)
    if args.poly2 is None:
        raise ParseError("--poly2 is required")
    other = parse_poly(args.poly2, poly.nvars, poly.domain)
    total = sum_cycles(poly, other)
    inputs = {"poly": poly, "poly2": other, "field": domain_tag(domain)}
    return inputs, {"poly": total, "degree": total.homogeneous_degree}


def _cmd_power(args):
    poly, domain = _load_poly(args)
    power = multiple_cycle(poly, args.m)
    inputs = {"poly": poly, "m": args.m, "field": domain_tag(domain)}
    return inputs, {"poly": power, "degree": power.homogeneous_degree}


def _cmd_lift_check(args):
    poly, domain = _load_poly(args)
    report = transfer_check(poly, samples=args.samples, seed=args.seed)
    lifted = lift_support(poly)
    inputs = {"poly": poly, "field": domain_tag(domain),
              "samples": args.samples, "seed": args.seed}
    return inputs, {"lift": lifted,
                    "support_preserved": report.support_preserved,
                    "all_equal": report.all_equal,
                    "mu_pairs": [list(p) for p in report.mu_pairs]}


def _with_points(args, poly, single):
    """Run a local computation at the origin of each supplied chart point."""
    if not args.points:
        return single(poly)
    outcomes = []
    for chunk in args.points.split(";"):
        point = _parse_rational_csv(chunk)
        shifted = poly.translate(point)
        outcomes.append({"point": [Fraction(x) if x != INFINITY else x
                                   for x in point],
                         **single(shifted)})
    return {"per_point": outcomes}


def _cmd_lct_bound(args):
    poly, domain = _load_poly(args)
    w = tuple(_parse_int_csv(args.w))

    def single(f):
        return {"bound": lct_upper_bound(f, w)}

    result = _with_points(args, poly, single)
    if "per_point" in result:
        bounds = [r["bound"] for r in result["per_point"]]
        result["min_bound"] = min(bounds)
    inputs = {"poly": poly, "field": domain_tag(domain), "w": list(w),
              "points": args.points}
    return inputs, result


def _cmd_lct_optimize(args):
    poly, domain = _load_poly(args)

    def single(f):
        best = lct_bound_optimize(f, args.max_weight)
        return {"best_bound": best.best_bound, "best_w": list(best.best_w)}

    result = _with_points(args, poly, single)
    if "per_point" in result:
        result["min_bound"] = min(r["best_bound"]
                                  for r in result["per_point"])
    inputs = {"poly": poly, "field": domain_tag(domain),
              "max_weight": args.max_weight, "points": args.points}
    return inputs, result


def _cmd_blowup_a(args):
    poly, domain = _load_poly(args)
    w = tuple(_parse_int_csv(args.w))
    c = _parse_rational(args.c)
    value = blowup_discrepancy(poly, w, c)
    inputs = {"poly": poly, "field": domain_tag(domain), "w": list(w),
              "c": c}
    return inputs, {"discrepancy": value}


def _cmd_fpt(args):
    poly, domain = _load_poly(args)

    def single(f):
        interval = fpt_interval(f, args.emax)
        return {"lower": interval.lower, "upper": interval.upper,
                "kind": interval.kind,
                "nu_by_e": [list(x) for x in interval.provenance["nu_by_e"]]}

    result = _with_points(args, poly, single)
    if "per_point" in result:
        result["min_lower"] = min(r["lower"] for r in result["per_point"])
    inputs = {"poly": poly, "field": domain_tag(domain), "emax": args.emax,
              "points": args.points}
    return inputs, result


def _cmd_lee_verdict(args):
    bound = _parse_rational(args.bound)
    verdict = lee_verdict(args.n, args.d, bound, args.bound_kind)
    inputs = {"n": args.n, "d": args.d, "bound": bound,
              "bound_kind": args.bound_kind}
    return inputs, {"verdict": verdict.outcome.value,
                    "threshold": verdict.threshold,
                    "boundary": verdict.boundary,
                    "note": "lower bound must be certified globally by the caller"}


def _cmd_resultant(args):
    domain = domain_from_tag(args.field)
    p = parse_poly(args.p, 2, domain)
    q = parse_poly(args.q, 2, domain)
    value = sylvester_resultant(p, q, args.degp, args.degq)
    inputs = {"p": p, "q": q, "field": domain_tag(domain),
              "degp": args.degp, "degq": args.degq}
    return inputs, {"resultant": value}


def _cmd_disc(args):
    if args.mode == "generic":
        poly = discriminant_binary(args.d, "generic")
        return ({"d": args.d, "mode": "generic"},
                {"discriminant": poly.to_string(var="a"),
                 "variables": [f"a{i}" for i in range(args.d + 1)]})
    if args.poly is None:
        raise ParseError("numeric mode requires --poly")
    domain = domain_from_tag(args.field)
    form = parse_poly(args.poly, 2, domain)
    value = discriminant_binary(args.d, "numeric", form)
    inputs = {"d": args.d, "mode": "numeric", "poly": form,
              "field": domain_tag(domain)}
    return inputs, {"discriminant": value}


def _cmd_quartic_st(args):
    coeffs = _parse_rational_csv(args.coeffs)
    if args.mod is not None:
        domain = FP(args.mod)
    else:
        domain = domain_from_tag(args.field) if args.field else ZZ
    res = quartic_st(coeffs, domain)
    inputs = {"coeffs": [Fraction(c) for c in coeffs],
              "field": domain_tag(domain)}
    return inputs, {"S": res.S, "T": res.T, "D": res.D}


def _cmd_smooth_binary(args):
    poly, domain = _load_poly(args)
    inputs = {"poly": poly, "field": domain_tag(domain)}
    return inputs, {"smooth": smoothness_binary(poly)}


def _cmd_singular_points(args):
    poly, domain = _load_poly(args)
    points = singular_locus_enumerate(poly, args.ext,
                                      include_form=args.with_form)
    inputs = {"poly": poly, "field": domain_tag(domain), "ext": args.ext,
              "with_form": args.with_form}
    return inputs, {"points": [str(pt) for pt in points],
                    "count": len(points),
                    "semi_decision": True,
                    "note": ("empty output does not prove emptiness over "
                             "the algebraic closure")}


def _cmd_cyclic_exponent(args):
    value = cyclic_critical_exponent(args.n, args.d)
    return ({"n": args.n, "d": args.d},
            {"exponent": value, "degenerate": value == 0})


# -- parser wiring ---------------------------------------------------------------


def _add_poly_options(sub, file_ok=True):
    sub.add_argument("--nvars", type=int, default=None,
                     help="number of variables (x0..x{N-1})")
    sub.add_argument("--field", default="q",
                     help="coefficient field: q, z, or fp:P")
    sub.add_argument("--poly", default=None, help="polynomial text")
    if file_ok:
        sub.add_argument("--in", dest="in_file", default=None,
                         help="polynomial file with a vars/field header")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chowstab",
        description="Exact stability certificates and singularity bounds "
                    "for projective hypersurfaces.")
    parser.add_argument("--json", action="store_true",
                        help="emit the certificate document as JSON")
    parser.add_argument("--timing", action="store_true",
                        help="record wall time in timing_ms (breaks "
                             "byte-for-byte determinism)")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering a value parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true",
                        default=argparse.SUPPRESS)
    commands = parser.add_subparsers(dest="command", required=True)

    def new_command(name, **kwargs):
        return commands.add_parser(name, parents=[common], **kwargs)

    sub = new_command("mu", help="numerical weight minimum of a form")
    _add_poly_options(sub)
    sub.add_argument("--r", required=True, help="weights, e.g. '-1,0,1'")
    sub.set_defaults(handler=_cmd_mu)

    sub = new_command("mu-bracket",
                              help="weight minimum of a bracket support")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--cycle-dim", type=int, required=True)
    sub.add_argument("--d", type=int, required=True)
    sub.add_argument("--tuples", required=True,
                     help="e.g. '{0,1},{0,1};{0,2},{1,3}'")
    sub.add_argument("--r", required=True)
    sub.set_defaults(handler=_cmd_mu_bracket)

    sub = new_command("lee-ratio",
                              help="chart-weight ratio against d/(n+1)")
    _add_poly_options(sub)
    sub.add_argument("--r", required=True)
    sub.set_defaults(handler=_cmd_lee_ratio)

    sub = new_command("identity-check",
                              help="exact residual of the weight identity")
    _add_poly_options(sub)
    sub.add_argument("--r", required=True)
    sub.set_defaults(handler=_cmd_identity_check)

    sub = new_command("certify-torus",
                              help="exact diagonal-torus stability verdict")
    _add_poly_options(sub)
    sub.set_defaults(handler=_cmd_certify_torus)

    sub = new_command("search-destab",
                              help="bounded search for destabilizing "
                                   "coordinate changes")
    _add_poly_options(sub)
    sub.add_argument("--seed", type=int, required=True)
    sub.add_argument("--max-candidates", type=int, default=2000)
    sub.add_argument("--scalars", default="1,-1")
    sub.add_argument("--depth", type=int, default=2)
    sub.set_defaults(handler=_cmd_search_destab)

    sub = new_command("sum", help="Chow form of a sum (product)")
    _add_poly_options(sub)
    sub.add_argument("--poly2", default=None)
    sub.set_defaults(handler=_cmd_sum)

    sub = new_command("power", help="Chow form of a multiple (power)")
    _add_poly_options(sub)
    sub.add_argument("-m", type=int, required=True)
    sub.set_defaults(handler=_cmd_power)

    sub = new_command("lift-check",
                              help="support-preserving lift and weight "
                                   "transfer check")
    _add_poly_options(sub)
    sub.add_argument("--samples", type=int, default=100)
    sub.add_argument("--seed", type=int, required=True)
    sub.set_defaults(handler=_cmd_lift_check)

    sub = new_command("lct-bound",
                              help="weighted upper bound for the threshold "
                                   "at the origin")
    _add_poly_options(sub)
    sub.add_argument("--w", required=True)
    sub.add_argument("--points", default=None,
                     help="extra chart origins, e.g. '0,0;1,2'")
    sub.set_defaults(handler=_cmd_lct_bound)

    sub = new_command("lct-optimize",
                              help="best weighted bound over primitive "
                                   "weights")
    _add_poly_options(sub)
    sub.add_argument("--max-weight", type=int, required=True)
    sub.add_argument("--points", default=None)
    sub.set_defaults(handler=_cmd_lct_optimize)

    sub = new_command("blowup-a",
                              help="origin blow-up discrepancy of the "
                                   "weighted pair")
    _add_poly_options(sub)
    sub.add_argument("--w", required=True)
    sub.add_argument("--c", required=True)
    sub.set_defaults(handler=_cmd_blowup_a)

    sub = new_command("fpt", help="F-pure threshold interval")
    _add_poly_options(sub)
    sub.add_argument("--emax", type=int, required=True)
    sub.add_argument("--points", default=None)
    sub.set_defaults(handler=_cmd_fpt)

    sub = new_command("lee-verdict",
                              help="stability verdict from a certified "
                                   "threshold lower bound")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--d", type=int, required=True)
    sub.add_argument("--bound", required=True)
    sub.add_argument("--bound-kind", choices=["lct_lower", "fpt_lower"],
                     default="lct_lower")
    sub.set_defaults(handler=_cmd_lee_verdict)

    sub = new_command("resultant",
                              help="Sylvester resultant of two binary forms")
    sub.add_argument("--p", required=True)
    sub.add_argument("--q", required=True)
    sub.add_argument("--field", default="q")
    sub.add_argument("--degp", type=int, default=None)
    sub.add_argument("--degq", type=int, default=None)
    sub.set_defaults(handler=_cmd_resultant)

    sub = new_command("disc", help="discriminant of a binary form")
    sub.add_argument("--d", type=int, required=True)
    sub.add_argument("--mode", choices=["generic", "numeric"],
                     default="generic")
    sub.add_argument("--poly", default=None)
    sub.add_argument("--field", default="q")
    sub.set_defaults(handler=_cmd_disc)

    sub = new_command("quartic-st",
                              help="S, T, and D = 4S^3 - T^2 of a quartic")
    sub.add_argument("--coeffs", required=True, help="a0,a1,a2,a3,a4")
    sub.add_argument("--mod", type=int, default=None)
    sub.add_argument("--field", default=None)
    sub.set_defaults(handler=_cmd_quartic_st)

    sub = new_command("smooth-binary",
                              help="exact smoothness of a binary form")
    _add_poly_options(sub)
    sub.set_defaults(handler=_cmd_smooth_binary)

    sub = new_command("singular-points",
                              help="critical points over F_{p^e} "
                                   "(semi-decision)")
    _add_poly_options(sub)
    sub.add_argument("--ext", type=int, default=1,
                     help="extension degree e")
    sub.add_argument("--with-form", action="store_true",
                     help="require the form itself to vanish too")
    sub.set_defaults(handler=_cmd_singular_points)

    sub = new_command("cyclic-exponent",
                              help="exponent constraining critical points "
                                   "of the cyclic form")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--d", type=int, required=True)
    sub.set_defaults(handler=_cmd_cyclic_exponent)

    return parser


def _render_human(doc: CertificateDocument) -> str:
    lines = [f"command: {doc.command}"]
    for key in sorted(doc.result):
        lines.append(f"{key}: {json.dumps(jsonable(doc.result[key]))}")
    return "\n".join(lines)


# Flags whose values may start with '-': merged into --flag=value so
# argparse does not mistake them for options.
_VALUE_FLAGS = {"--r", "--w", "--c", "--bound", "--scalars", "--coeffs",
                "--points", "--p", "--q", "--poly", "--poly2"}


def _merge_flag_values(argv) -> list:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv) -> int:
    """Parse argv, dispatch, and print a certificate document."""
    parser = build_parser()
    try:
        args = parser.parse_args(_merge_flag_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        inputs, result = args.handler(args)
    except ParseError as exc:
        print(f"chowstab: parse error: {exc}", file=sys.stderr)
        return 2
    except (ChowstabError, ValueError, OSError) as exc:
        print(f"chowstab: error: {exc}", file=sys.stderr)
        return 3
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    doc = CertificateDocument(
        schema_version=SCHEMA_VERSION,
        command=args.command,
        inputs=inputs,
        result=result,
        timing_ms=elapsed_ms if args.timing else 0)
    if args.json:
        print(doc.to_json())
    else:
        print(_render_human(doc))
        if args.timing:
            print(f"timing_ms: {elapsed_ms}", file=sys.stderr)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
