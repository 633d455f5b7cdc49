"""
Inflex — Interfaz de línea de comandos
Subcomandos: inflect, newton, verify, count, satotate, discriminant, wronskian.

Códigos de salida: 0 todo pass/refused, 1 algún fail, 2 error de uso.
"""
import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from sympy import factor_list

from inflex.core.algebra import InflexError, parse_poly, to_text
from inflex.core.constants import APP_NAME, APP_VERSION, EXIT_FAIL, EXIT_OK, EXIT_USAGE
from inflex.core.elimination import surface_discriminant
from inflex.core.ffarith import curve_model, good_primes, point_counts, satotate
from inflex.core.lattice import D4_CENTERS, WEIERSTRASS_CENTERS, centered, interior_lattice_points, \
    lower_hull_delta, newton_polygon
from inflex.core.modp import BadPrimeError, require_prime
from inflex.core.pencils import FAMILIES, PencilSpec, atomic_inflection, d6_factor, wronskian_matrix_away
from inflex.core.ramification import inflection_orders, mu_B, vandermonde_N
from inflex.core.reports import UnknownCheckError
from inflex.services import export, harness
from inflex.services.config_loader import load_harness_config

logger = logging.getLogger(__name__)

CENTERS = {"weierstrass": WEIERSTRASS_CENTERS, "d4": D4_CENTERS}


class UsageError(Exception):
    pass


# ── Salida ────────────────────────────────────────────────────────────────────

def _emit(args, name: str, text: str) -> None:
    """Write to --out DIR/name when given, else to stdout."""
    if args.out:
        export.write_text(Path(args.out) / name, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _spec_from_args(args) -> PencilSpec:
    abc = harness.parse_triple(args.abc) if args.abc else (1, 1, 1)
    n = args.n if args.n is not None else 2 * args.ell
    return PencilSpec(args.family, n=n, ell=args.ell, abc=abc, custom=args.f or "")


# ── Subcomandos ───────────────────────────────────────────────────────────────

def cmd_inflect(args) -> int:
    spec = _spec_from_args(args)
    ip = atomic_inflection(spec, args.m, args.u)
    meta = ip.to_dict()
    if args.factor:
        if spec.kind == "d6":
            meta["factorization"] = d6_factor(args.m, spec.ell, spec.n).to_dict()
        else:
            content, factors = factor_list(ip.poly.as_expr())
            meta["factorization"] = {"content": str(content),
                                     "factors": [[str(f), e] for f, e in factors]}
    stem = f"inflect_{spec.kind}_m{args.m}"
    if args.json:
        _emit(args, f"{stem}.json", export.to_json(meta))
    else:
        _emit(args, f"{stem}.txt", to_text(ip.poly))
        if args.out:
            export.write_text(Path(args.out) / f"{stem}.json", export.to_json(meta))
        elif args.factor:
            sys.stdout.write(export.to_json(meta["factorization"]))
    return EXIT_OK


def cmd_newton(args) -> int:
    spec = _spec_from_args(args)
    names = ("x", spec.parameters[0])
    P = atomic_inflection(spec, args.m, args.u).poly
    quotient, label = None, "origin"
    if args.center is not None:
        options = CENTERS.get(spec.kind)
        if not options or not 0 <= args.center < len(options):
            raise UsageError(f"no center #{args.center} for the {spec.kind} pencil")
        center = options[args.center]
        P = centered(P, names, center)
        quotient, label = center.quotient, center.label
    polygon = newton_polygon(P, names, quotient)
    count, _ = interior_lattice_points(polygon)
    out = {"family": spec.kind, "m": args.m, "center": label, "polygon": polygon.to_dict(),
           "interior_points": count}
    if args.delta:
        hull, delta = lower_hull_delta(P, names, quotient)
        out["lower_hull"] = hull.to_dict()
        out["delta"] = delta
    stem = f"newton_{spec.kind}_m{args.m}"
    if args.svg:
        title = f"New(P_{args.m}) {spec.kind} at {label}"
        svg = export.polygon_svg(polygon, title)
        if args.out:
            export.write_text(Path(args.out) / f"{stem}.svg", svg)
        else:
            sys.stdout.write(svg)
            return EXIT_OK
    _emit(args, f"{stem}.json", export.to_json(out))
    return EXIT_OK


def _verify_overrides(args) -> dict:
    overrides = {"m": args.m, "n": args.n_param, "alpha": args.alpha, "beta": args.beta, "abc": args.abc,
                 "p": args.p, "bound": args.bound, "bins": args.bins}
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        overrides[key.strip()] = int(value) if value.strip().lstrip("-").isdigit() else value.strip()
    for key in ("m", "p"):
        if overrides.get(key) is not None:
            harness.parse_range(overrides[key])
    return overrides


def _print_catalog(stream) -> None:
    for desc in harness.catalog():
        stream.write(f"{desc.id:42s} [{desc.kind}] {desc.anchor}: \"{desc.quote}\"\n")
        for note in desc.corrections:
            stream.write(f"{'':45s}correction: {note}\n")


def cmd_verify(args) -> int:
    if args.list:
        if args.json:
            _emit(args, "catalog.json", export.to_json([d.to_dict() for d in harness.catalog()]))
        else:
            _print_catalog(sys.stdout)
        return EXIT_OK
    if not args.check:
        raise UsageError("verify needs a check id, 'all' or --list")
    ids = "all" if args.check == ["all"] else args.check
    try:
        if ids != "all":
            for cid in ids:
                harness.get_check(cid)
    except UnknownCheckError as exc:
        sys.stderr.write(f"{exc}\n\n")
        _print_catalog(sys.stderr)
        return EXIT_USAGE
    reports = harness.run_checks(ids, _verify_overrides(args), args.threads, args.config_data)
    if args.json or args.out:
        _emit(args, "reports.json", export.reports_json(reports, include_time=not args.no_header))
    else:
        for r in reports:
            extra = ""
            if r.verdict == "fail":
                extra = f"  counterexample: {json.dumps(r.to_dict()['counterexample'], ensure_ascii=False)}"
            elif r.notes:
                extra = f"  ({r.notes[-1]})"
            sys.stdout.write(f"{r.verdict.upper():8s} {r.id}{extra}\n")
    summary = harness.summarize(reports)
    logger.info(f"[CLI] {summary}")
    return harness.exit_code(reports)


def cmd_count(args) -> int:
    model = curve_model(args.curve)
    strategy = args.strategy or ("fiberwise" if args.curve == "d4-c2" else "brute")
    if args.p is not None:
        require_prime(args.p, model.excluded)
        primes = [args.p]
    elif args.bound is not None:
        primes = good_primes(args.bound, model.excluded)
    else:
        raise UsageError("count needs --p or --bound")
    executor = ThreadPoolExecutor(max_workers=args.threads) if args.threads > 1 else None
    try:
        records = point_counts(primes, strategy, executor, args.curve, model.genus)
    finally:
        if executor is not None:
            executor.shutdown()
    if args.p is not None and not args.out and not args.json:
        sys.stdout.write(f"{records[0].count}\n")
        return EXIT_OK
    params = {"curve": args.curve, "strategy": strategy, "primes": [primes[0], primes[-1]]}
    if args.json:
        _emit(args, "counts.json", export.to_json([r.to_dict() for r in records]))
    else:
        _emit(args, "counts.csv", export.point_counts_csv(records, params, not args.no_header))
    return EXIT_OK


def cmd_satotate(args) -> int:
    bound = args.bound if args.bound is not None else args.config_data["prime_bound"]
    bins = args.bins if args.bins is not None else args.config_data["histogram_bins"]
    executor = ThreadPoolExecutor(max_workers=args.threads) if args.threads > 1 else None
    try:
        result = satotate(bound, bins, executor)
    finally:
        if executor is not None:
            executor.shutdown()
    if args.json:
        _emit(args, "satotate.json", export.to_json(result))
        return EXIT_OK
    if args.out:
        export.write_text(Path(args.out) / "satotate_counts.csv",
                          export.point_counts_csv(result.records, {"curve": "d4-c2", "bound": bound},
                                                  not args.no_header))
        export.write_text(Path(args.out) / "satotate_histogram.csv",
                          export.histogram_csv(result, not args.no_header))
    else:
        sys.stdout.write(export.histogram_csv(result, not args.no_header))
    return EXIT_FAIL if result.hasse_violations else EXIT_OK


def cmd_discriminant(args) -> int:
    strategy = args.strategy or args.config_data["resultant_strategy"]
    executor = ThreadPoolExecutor(max_workers=args.threads) if args.threads > 1 else None
    try:
        result = surface_discriminant(args.m, args.ell, strategy, executor)
    finally:
        if executor is not None:
            executor.shutdown()
    out = result.to_dict()
    if args.full:
        out["reduced"] = to_text(result.reduced)
    _emit(args, f"discriminant_m{args.m}.json", export.to_json(out))
    return EXIT_OK if all(e.divides for e in result.ledger.entries) else EXIT_FAIL


def cmd_wronskian(args) -> int:
    if args.ramification:
        g = (args.d - 1) * (args.n - 1) // 2
        vn = vandermonde_N(args.n, g, args.ell)
        out = {**vn.to_dict(), "mu_B": mu_B(args.n, (args.d - 1) // args.n),
               "inflection_orders": inflection_orders(args.n, args.d, args.ell)}
    else:
        aw = wronskian_matrix_away(args.n, args.d, args.ell, parse_poly(args.f) if args.f else None)
        out = aw.to_dict()
    _emit(args, f"wronskian_{args.n}_{args.d}_{args.ell}.json", export.to_json(out))
    return EXIT_OK


# ── Parser ────────────────────────────────────────────────────────────────────

def _add_pencil_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--m", type=int, required=True, help="inflection order m ≥ 1")
    p.add_argument("--u", default=None, help="'spec' (ℓ/n, default), 'symbolic' or a rational such as 1/2")
    p.add_argument("--n", type=int, default=None, help="cover degree (default 2ℓ)")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--abc", default=None, help="Legendre exponents a,b,c")
    p.add_argument("--f", default=None, help="custom f(x, params) for --family custom")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--out", default=None, metavar="DIR", help="write files into DIR")
    common.add_argument("--threads", type=int, default=None, metavar="N")
    common.add_argument("--no-header", action="store_true", help="omit provenance headers and timings")
    common.add_argument("--config", default=None, metavar="PATH", help="harness config (JSON)")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("--quiet", action="store_true")

    ap = argparse.ArgumentParser(prog="inflex",
                                 description="Exact inflection polynomials of superelliptic pencils.")
    ap.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inflect", parents=[common], help="atomic inflection polynomial P_m")
    _add_pencil_args(p)
    p.add_argument("--factor", action="store_true", help="report the factorization (D6: peel x^e(4z−1))")
    p.set_defaults(func=cmd_inflect)

    p = sub.add_parser("newton", parents=[common], help="Newton polygon of P_m")
    _add_pencil_args(p)
    p.add_argument("--center", type=int, default=None, help="index of a singular center of the family")
    p.add_argument("--delta", action="store_true", help="lower hull and δ at the center")
    p.add_argument("--svg", action="store_true", help="render the polygon as SVG")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("verify", parents=[common], help="run registered checks")
    p.add_argument("check", nargs="*", help="check ids or 'all'")
    p.add_argument("--list", action="store_true", help="print the catalog with anchors")
    p.add_argument("--m", default=None, help="m range, e.g. 2..10 or 3,5,7")
    p.add_argument("--n", dest="n_param", type=int, default=None)
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--abc", default=None)
    p.add_argument("--p", default=None, help="prime(s), e.g. 7,11,13")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="any other check parameter")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", parents=[common], help="points over F_p")
    p.add_argument("--curve", default="d4-c2", help="d4-c2, weierstrass:<m> or d4:<m>")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--bound", type=int, default=None, help="all good primes up to the bound")
    p.add_argument("--strategy", choices=("fiberwise", "brute"), default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("satotate", parents=[common], help="Sato–Tate histogram and KS distance for C2")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--bins", type=int, default=None)
    p.set_defaults(func=cmd_satotate)

    p = sub.add_parser("discriminant", parents=[common], help="bielliptic discriminant ledger")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--strategy", choices=("auto", "direct", "interpolate"), default=None)
    p.add_argument("--full", action="store_true", help="include the reduced discriminant")
    p.set_defaults(func=cmd_discriminant)

    p = sub.add_parser("wronskian", parents=[common], help="Wronskian data for y^n = f")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--f", default=None, help="f(x) for the away-from-ramification matrix (default x^d − x)")
    p.add_argument("--ramification", action="store_true", help="N(n,g,ℓ), μ(B) and the inflection orders")
    p.set_defaults(func=cmd_wronskian)
    return ap


def _configure_logging(args) -> None:
    level = logging.DEBUG if args.verbose else (logging.WARNING if args.quiet else logging.INFO)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    _configure_logging(args)
    try:
        args.config_data = load_harness_config(Path(args.config) if args.config else None)
        args.threads = max(1, args.threads or int(args.config_data["threads"]))
        return args.func(args)
    except BadPrimeError as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return EXIT_USAGE
    except (UsageError, UnknownCheckError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except InflexError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        logger.error(f"[CLI] I/O failure: {exc}")
        return EXIT_FAIL
