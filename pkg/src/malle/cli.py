"""Command line entry point: malle <command> <spec> [options]."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .brauer import brauer_report, certificate
from .cohomology import CohomologyError
from .config import SpecError, parse_spec
from .constants import UnbalancedError, leading_constant, local_probability, unbalanced_report
from .galois import BadPlaceError, GaloisError
from .picorb import BundleError, effective_cone_constant, fujita
from .tamagawa import brute_force_local, frobenius_of, good_local_density

log = logging.getLogger("malle")

EXIT_MATH = 2


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(type(x))


def _emit(report: dict, args, lines: list[str]):
    text = json.dumps(report, indent=2, sort_keys=True, default=_json_default)
    if args.json:
        Path(args.json).write_text(text + "\n")
    if args.format == "json":
        print(text)
    else:
        print("\n".join(lines))


def _labels(G, classes):
    return [G.label(G.classes.reps[c]) for c in classes]


def cmd_analyze(spec, args) -> int:
    L, G = spec.bundle, spec.group
    F = fujita(L)
    rep = {
        "spec": spec.name,
        "group_order": G.order,
        "weights": {G.label(r): str(L.weight[c]) for c, r in enumerate(G.classes.reps)},
        "a": str(F.a), "b": F.b, "balanced": F.balanced,
        "minimal_classes": _labels(G, F.minimal_classes),
        "iitaka_group_order": F.iitaka_group.order,
        "kappa": F.kappa,
        "rational_characters": len(spec.datum.rational_characters),
    }
    lines = [f"{spec.name}: |G| = {G.order}", f"a = {F.a}, b = {F.b}, balanced = {F.balanced}",
             f"minimal classes: {', '.join(rep['minimal_classes'])}",
             f"Iitaka group order {F.iitaka_group.order}"]
    if F.balanced:
        eff = effective_cone_constant(L, F)
        rep["alpha"] = str(eff["alpha"])
        lines.append(f"alpha* = {eff['alpha']}")
    else:
        U = unbalanced_report(L)
        rep["iitaka"] = U.to_json()
    _emit(rep, args, lines)
    return 0


def cmd_brauer(spec, args) -> int:
    R = brauer_report(spec.datum, spec.support())
    rep = R.to_json()
    lines = [f"{spec.name}: support {', '.join(rep['support'])}",
             f"algebraic part {rep['algebraic']['invariants'] or 'trivial'}",
             f"geometric invariant part {rep['geometric']['invariant'] or 'trivial'}",
             f"order {rep['order']}"]
    lines += [f"  generator: {g}" for g in rep["generators"]]
    for d in R.descents:
        lines.append(f"  certificate: {certificate(R.datum, d).description}")
    _emit(rep, args, lines)
    return 0


def cmd_constant(spec, args) -> int:
    L = spec.bundle
    F = fujita(L)
    if not F.balanced:
        raise UnbalancedError("height is not balanced; the constant command needs a balanced height "
                              "(run analyze for the Iitaka decomposition)")
    P = args.primes or spec.primes
    out = spec.raw.get("output") or {}
    split = bool(out.get("split_arch", False))
    mode = str(out.get("mode", "zeta"))
    hs = spec.height_spec()
    R = brauer_report(spec.datum, F.minimal_classes)
    C = leading_constant(L, hs, R, P, mode=mode, split_arch=split, threads=args.threads)
    rep = C.to_json()
    lines = [f"{spec.name}: a = {C.a}, b = {C.b}, |Br| = {C.brauer_order}, P = {P}"]
    for p in C.prefactors:
        lines.append(f"  prefactor [{p.element}, {p.slice}] = {p.exact}")
    for sl, v in C.constants.items():
        lines.append(f"  c[{sl}] = {v:.6f}")
    if split and len(C.constants) > 1:
        real = next((k for k in C.constants if "C" not in k), None)
        if real is not None:
            pr = local_probability(L, hs, R, {"inf": [real]}, P)
            rep["conditionals"] = {real: pr}
            lines.append(f"  share {real}: {pr['probability']:.1%} (without Brauer sum {pr['naive']:.1%})")
    _emit(rep, args, lines)
    return 0


def cmd_masscheck(spec, args) -> int:
    from sympy import primerange
    L, datum = spec.bundle, spec.datum
    Q = args.max_q or 47
    rows, ok = [], True
    a = fujita(L).a
    for q in primerange(2, Q + 1):
        if datum.G.order % q == 0 or datum.conductor % q == 0:
            continue
        fr = frobenius_of(datum, q)
        x = good_local_density(q, fr, L, a)
        y = brute_force_local(q, L, fr, a)
        same = x.terms == y.terms
        ok &= same
        rows.append({"q": q, "mass_formula": str(x.exact if x.exact is not None else x.value),
                     "brute_force": str(y.exact if y.exact is not None else y.value), "equal": same})
    lines = [f"{r['q']:>4}  {r['mass_formula']:>16}  {r['brute_force']:>16}  {'ok' if r['equal'] else 'MISMATCH'}"
             for r in rows]
    _emit({"spec": spec.name, "rows": rows, "all_equal": ok}, args, lines)
    return 0 if ok else 1


def cmd_empirical(spec, args) -> int:
    from .lmfdb import LMFDBClient, bundled_snapshot, empirical_density, read_snapshot, write_snapshot
    B = args.bound
    if args.input:
        recs = read_snapshot(args.input)
    elif args.fetch:
        cl = LMFDBClient(args.cache, delay=args.delay)
        # H >= |disc K|^(1/2) since the resolvent discriminant divides disc K
        recs = cl.fetch_a4(max_disc=int(B ** 2))
        if args.snapshot:
            write_snapshot(recs, args.snapshot)
    else:
        snap = bundled_snapshot()
        if snap is None:
            print("no snapshot available: pass --input FILE or --fetch", file=sys.stderr)
            return 1
        recs = read_snapshot(snap)
    d = empirical_density(recs, B)
    lines = [f"B = {B}: R^4 {d['R^4']:.4f}, C^2 {d['C^2']:.4f}, totally real {d['share_totally_real']:.0%}"]
    _emit(d, args, lines)
    return 0


COMMANDS = {"analyze": cmd_analyze, "brauer": cmd_brauer, "constant": cmd_constant,
            "masscheck": cmd_masscheck, "empirical": cmd_empirical}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="malle", description="Leading constants for counting G-extensions.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("spec", help="spec file or bundled config name (e.g. a4-disc)")
    p.add_argument("--primes", type=int, help="prime bound for Euler products")
    p.add_argument("--max-q", type=int, help="largest q for masscheck")
    p.add_argument("--json", help="also write the JSON report here")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--input", help="snapshot CSV for empirical")
    p.add_argument("--fetch", action="store_true", help="fetch from the LMFDB")
    p.add_argument("--snapshot", help="write fetched records to this CSV")
    p.add_argument("--cache", help="cache directory (default $MALLE_CACHE_DIR or ~/.cache/malle)")
    p.add_argument("--delay", type=float, default=1.0, help="seconds between LMFDB requests")
    p.add_argument("--bound", type=float, default=100_000, help="height bound for empirical")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        spec = parse_spec(args.spec)
    except SpecError as e:
        print(f"spec error: {e}", file=sys.stderr)
        return 1
    try:
        return COMMANDS[args.command](spec, args)
    except (BundleError, BadPlaceError, GaloisError, CohomologyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
