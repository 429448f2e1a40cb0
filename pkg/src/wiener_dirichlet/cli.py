"""Command-line front end.

Exit codes: 0 success, 2 malformed input (symbol text or fixture files),
3 a computation that did not converge.  JSON is written UTF-8 with a stable
key order; CSV follows RFC 4180 quoting.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections.abc import Sequence

from .bohr import LineInfQuery, bohr_lift, line_infimum, multiplicative_independence, transfer_symbol
from .classify import ClassificationReport, classify
from .dirichlet import DEFAULT_INDEX_CUTOFF, DEFAULT_TOLERANCE, DirichletPoly, UnconvergedError
from .multipoly import MultiPoly, to_sparse
from .polytorus import ComponentMap, MonomialMap, blaschke_power_norm, isometry_check_Tk, lemma19_witness
from .primes import nth_prime
from .symbol import SymbolParseError, format_dirichlet_poly, format_symbol, parse_any, parse_symbol

THREADS_ENV = "WIENER_DIRICHLET_THREADS"
EXIT_OK, EXIT_PARSE, EXIT_UNCONVERGED = 0, 2, 3


class InputError(ValueError):
    """Malformed fixture file or option value."""


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _complex_json(c: complex) -> dict:
    return {"re": c.real, "im": c.imag}


def report_to_dict(rep: ClassificationReport) -> dict:
    out = {
        "symbol": format_symbol(rep.symbol),
        "c0": rep.symbol.c0,
        "verdicts": rep.verdicts,
        "evidence": [{"rule": e.rule, "citation": e.citation, "detail": e.detail} for e in rep.evidence],
    }
    if rep.norm_samples is not None:
        out["norm_table"] = [
            {"n": n, "lower": c.lower, "upper": c.upper, "exact_to_index": c.exact_to_index}
            for n, c in rep.norm_samples
        ]
    if rep.contradictions:
        out["contradictions"] = list(rep.contradictions)
    return out


def run_classify(text: str, boundary_preserving: bool = False, profile: bool = False,
                 tolerance: float = DEFAULT_TOLERANCE, cutoff: int = DEFAULT_INDEX_CUTOFF,
                 threads: int = 1) -> dict:
    """Parse, classify and serialize.

    Raises ``SymbolParseError`` on bad text and ``UnconvergedError`` when a
    requested norm table has an unconverged entry.
    """
    rep = classify(parse_symbol(text), boundary_preserving or None, profile=profile,
                   index_cutoff=cutoff, tolerance=tolerance, threads=threads)
    bad = [n for n, c in rep.norm_samples or [] if not c.converged]
    if bad:
        raise UnconvergedError(f"norm did not converge for n in {bad}")
    return report_to_dict(rep)


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv_text(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerows(rows)
    return buf.getvalue()


def _parse_range(spec: str, geometric: bool, ratio: int) -> list[int]:
    try:
        lo, hi = (int(x) for x in spec.split(".."))
    except ValueError:
        raise InputError(f"expected a range LO..HI, got {spec!r}") from None
    if lo < 2 or hi < lo:
        raise InputError(f"range {spec!r} must satisfy 2 <= LO <= HI")
    if not geometric:
        return list(range(lo, hi + 1))
    if ratio < 2:
        raise InputError("ratio must be >= 2")
    out, n = [], lo
    while n <= hi:
        out.append(n)
        n *= ratio
    return out


def _parse_pair(spec: str) -> complex:
    try:
        re_, im = (float(x) for x in spec.split(","))
    except ValueError:
        raise InputError(f"expected RE,IM, got {spec!r}") from None
    return complex(re_, im)


def _read_lines(path: str, allowed: set[str]):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(str(exc)) from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in allowed:
            raise InputError(f"{path}:{lineno}: expected one of {sorted(allowed)} followed by ':'")
        yield lineno, key, rest.split()


def read_matrix_file(path: str) -> list[list[int]]:
    rows = []
    for lineno, _, fields in _read_lines(path, {"row"}):
        try:
            rows.append([int(x) for x in fields])
        except ValueError:
            raise InputError(f"{path}:{lineno}: row entries must be integers") from None
    if not rows:
        raise InputError(f"{path}: no rows")
    return rows


def read_signs_file(path: str) -> list[complex]:
    signs = []
    for lineno, _, fields in _read_lines(path, {"sign"}):
        if len(fields) != 2:
            raise InputError(f"{path}:{lineno}: a sign needs 're im'")
        try:
            signs.append(complex(float(fields[0]), float(fields[1])))
        except ValueError:
            raise InputError(f"{path}:{lineno}: sign parts must be numbers") from None
    return signs


def read_components_file(path: str) -> ComponentMap:
    comps: list[dict] = []
    for lineno, key, fields in _read_lines(path, {"component", "term"}):
        if key == "component":
            if fields:
                raise InputError(f"{path}:{lineno}: 'component:' takes no values")
            comps.append({})
            continue
        if not comps:
            raise InputError(f"{path}:{lineno}: 'term:' before any 'component:'")
        if len(fields) < 2:
            raise InputError(f"{path}:{lineno}: a term needs 're im e1 ... ek'")
        try:
            c = complex(float(fields[0]), float(fields[1]))
            alpha = tuple(int(x) for x in fields[2:])
        except ValueError:
            raise InputError(f"{path}:{lineno}: malformed term") from None
        if any(a < 0 for a in alpha):
            raise InputError(f"{path}:{lineno}: exponents must be non-negative")
        comps[-1][alpha] = comps[-1].get(alpha, 0) + c
    if not comps:
        raise InputError(f"{path}: no components")
    polys = [MultiPoly(c) for c in comps]
    width = max([len(a) for c in comps for a in c] + [0])
    k = len(polys)
    if width > k:
        raise InputError(f"{path}: exponent vectors longer than the number of components ({k})")
    return ComponentMap(polys, k)


def _multipoly_json(F: MultiPoly) -> list[dict]:
    out = []
    for alpha in sorted(F.support, key=lambda a: (sum(a), a)):
        c = F[alpha]
        out.append({"alpha": {str(j): e for j, e in to_sparse(alpha).items()}, **_complex_json(c)})
    return out


def cmd_classify(args) -> int:
    report = run_classify(args.symbol, args.boundary_preserving, args.profile, args.tolerance, args.cutoff,
                          args.threads)
    if args.csv:
        rows = [["section", "key", "value", "detail"]]
        rows += [["verdict", k, v, ""] for k, v in report["verdicts"].items()]
        rows += [["evidence", e["rule"], e["citation"], e["detail"]] for e in report["evidence"]]
        for r in report.get("norm_table", []):
            rows.append(["norm", str(r["n"]), f"{r['lower']!r}..{r['upper']!r}", f"exact_to_index={r['exact_to_index']}"])
        sys.stdout.write(_csv_text(rows))
    else:
        sys.stdout.write(dumps_json(report))
    return EXIT_OK


def cmd_norm_table(args) -> int:
    from .classify import norm_decay_profile

    sym = parse_symbol(args.symbol)
    ns = _parse_range(args.n, args.geometric, args.ratio)
    table = norm_decay_profile(sym, ns, index_cutoff=args.cutoff, tolerance=args.tolerance, threads=args.threads)
    if args.json:
        sys.stdout.write(dumps_json({
            "symbol": format_symbol(sym),
            "norm_table": [{"n": n, "lower": c.lower, "upper": c.upper, "exact_to_index": c.exact_to_index,
                            "terms_used": c.terms_used, "converged": c.converged} for n, c in table],
        }))
    else:
        rows = [["n", "lower", "upper", "exact_to_index", "terms_used", "converged"]]
        rows += [[n, repr(c.lower), repr(c.upper), c.exact_to_index, c.terms_used, str(c.converged).lower()]
                 for n, c in table]
        sys.stdout.write(_csv_text(rows))
    bad = [n for n, c in table if not c.converged]
    if bad:
        print(f"error: norm did not converge for n in {bad}", file=sys.stderr)
        return EXIT_UNCONVERGED
    return EXIT_OK


def cmd_bohr_lift(args) -> int:
    value = parse_any(args.text)
    if isinstance(value, DirichletPoly):
        F = bohr_lift(value)
        out = {"input": format_dirichlet_poly(value), "kind": "dirichlet-poly", "lift": _multipoly_json(F),
               "norm": F.norm()}
    else:
        comps = transfer_symbol(value, k_max=args.k_max, index_cutoff=args.cutoff, tolerance=args.tolerance)
        out = {"input": format_symbol(value), "kind": "symbol", "k_max": args.k_max,
               "components": [{"k": k, "prime": nth_prime(k), "terms": _multipoly_json(F)}
                              for k, F in enumerate(comps, start=1)]}
    sys.stdout.write(dumps_json(out))
    return EXIT_OK


def cmd_line_inf(args) -> int:
    sym = parse_symbol(args.symbol)
    res = line_infimum(sym, LineInfQuery(args.sigma, args.grid, args.refine))
    freqs = sorted(sym.frequencies.support)
    sys.stdout.write(dumps_json({
        "symbol": format_symbol(sym), "sigma": args.sigma,
        "numeric_min": res.numeric_min, "certified_lower": res.certified_lower,
        "independent_frequencies": multiplicative_independence(freqs),
    }))
    return EXIT_OK


def cmd_isometry_tk(args) -> int:
    rows = read_matrix_file(args.matrix)
    signs = read_signs_file(args.signs) if args.signs else None
    try:
        m = MonomialMap(rows, signs)
        res = isometry_check_Tk(m)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    w = None if res.witness is None else {"alpha": list(res.witness[0]), "alpha_prime": list(res.witness[1])}
    sys.stdout.write(dumps_json({"isometry": res.isometry, "reason": res.reason, "witness": w}))
    return EXIT_OK


def cmd_witness(args) -> int:
    phi = read_components_file(args.components)
    try:
        res = lemma19_witness(phi)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if isinstance(res, str):
        out = {"result": res}
    else:
        out = {"result": "witness", "alpha": list(res.alpha), "alpha_prime": list(res.alpha_prime),
               "common": list(res.common), "case": res.case}
    sys.stdout.write(dumps_json(out))
    return EXIT_OK


def cmd_blaschke(args) -> int:
    a = _parse_pair(args.a)
    eps = _parse_pair(args.eps)
    try:
        res = blaschke_power_norm(a, eps, args.n, coeff_cutoff=args.coeff_cutoff, tolerance=args.tolerance)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(dumps_json({
        "a": _complex_json(a), "eps": _complex_json(eps), "n": args.n,
        "lower": res.lower, "upper": res.upper, "converged": res.converged,
        "suggested_cutoff": res.suggested_cutoff,
    }))
    if not res.converged:
        print(f"error: bracket wider than tolerance; retry with --coeff-cutoff {res.suggested_cutoff}",
              file=sys.stderr)
        return EXIT_UNCONVERGED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOLERANCE,
                        help="relative tolerance for certified norms (default %(default)s)")
    common.add_argument("--cutoff", type=_positive_int, default=DEFAULT_INDEX_CUTOFF,
                        help="Dirichlet index cutoff for exact coefficients (default %(default)s)")
    common.add_argument("--threads", type=_positive_int, default=_default_threads(),
                        help=f"worker threads for norm tables (default from ${THREADS_ENV}, else 1)")

    parser = argparse.ArgumentParser(prog="wiener-dirichlet",
                                     description="Certified computations for composition symbols on the Wiener-Dirichlet algebra.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="bounded/compact/isometry/automorphism verdicts")
    p.add_argument("symbol")
    p.add_argument("--boundary-preserving", action="store_true", help="declare that phi maps iR into iR")
    p.add_argument("--profile", action="store_true", help="attach a norm table for n = 2^4..2^12")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("norm-table", parents=[common], help="certified norms of n^-phi over a range of n")
    p.add_argument("symbol")
    p.add_argument("--n", default="16..4096", help="range LO..HI (default %(default)s)")
    p.add_argument("--geometric", action="store_true", help="step geometrically instead of by 1")
    p.add_argument("--ratio", type=int, default=2, help="ratio for --geometric (default %(default)s)")
    p.add_argument("--json", action="store_true", help="JSON instead of CSV")
    p.set_defaults(func=cmd_norm_table)

    p = sub.add_parser("bohr-lift", parents=[common], help="lift a Dirichlet polynomial, or a symbol's transfer map")
    p.add_argument("text")
    p.add_argument("--k-max", type=int, default=8, help="components of the transfer map (default %(default)s)")
    p.set_defaults(func=cmd_bohr_lift)

    p = sub.add_parser("line-inf", parents=[common], help="inf over t of Re phi(sigma + it)")
    p.add_argument("symbol")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--grid", type=int, default=256, help="grid points per torus dimension (default %(default)s)")
    p.add_argument("--refine", type=int, default=50, help="refinement sweeps (default %(default)s)")
    p.set_defaults(func=cmd_line_inf)

    p = sub.add_parser("isometry-tk", parents=[common], help="isometry test for a monomial map")
    p.add_argument("--matrix", required=True, help="file of 'row: e1 ... ek' lines")
    p.add_argument("--signs", help="file of 'sign: re im' lines (default all 1)")
    p.set_defaults(func=cmd_isometry_tk)

    p = sub.add_parser("witness", parents=[common], help="colliding multi-indices for a non-monomial map")
    p.add_argument("--components", required=True, help="file of 'component:' blocks of 'term: re im e1 ... ek'")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("blaschke", parents=[common], help="norm of powers of a disc automorphism")
    p.add_argument("--a", required=True, help="zero of the factor as RE,IM")
    p.add_argument("--eps", default="1,0", help="unimodular factor as RE,IM (default %(default)s)")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--coeff-cutoff", type=_positive_int, default=4096)
    p.set_defaults(func=cmd_blaschke, tolerance=1e-6)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SymbolParseError as exc:
        print(f"error: {exc}\n  {exc.text}\n  {' ' * len(exc.text.encode('utf-8')[:exc.offset].decode('utf-8', 'ignore'))}^",
              file=sys.stderr)
        return EXIT_PARSE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnconvergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCONVERGED


if __name__ == "__main__":
    sys.exit(main())
