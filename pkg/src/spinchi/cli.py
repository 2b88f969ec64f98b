"""Command-line front end.  JSON by default, --pretty / --csv opt-in.

Exit codes: 0 success, 2 argument or domain validation error, 3 internal
invariant failure (residual pi power, 2-adic integrality, failed verify
suite).  All exact values are emitted as strings so nothing is rounded.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import random
import sys
from fractions import Fraction

from . import clifford, exactq, ggroups, profinite, qforms
from . import euler as euler_mod
from .exactq import ResidualPiPowerError


def _chi_record(m: int, n: int) -> dict:
    res = euler_mod.chi_closed(m, n)
    prof = euler_mod.l2_profile(m, n)
    desc = res.descriptor
    return {
        "m": m,
        "n": n,
        "d": desc.d,
        "dimX": desc.dim_x,
        "delta": desc.delta,
        "chi": res.factored,
        "chi_rational": str(res.value),
        "sign": res.sign,
        "case": res.case,
        "l2": {
            "betti_degree": prof.betti_degree,
            "betti_value": str(prof.betti_value),
            "ns_range": list(prof.ns_range) if prof.ns_range else None,
            "ns_value": prof.ns_value if prof.ns_value is not None else "inf+",
            "torsion_sign": prof.torsion_sign,
        },
    }


def _emit(record: dict, pretty: bool) -> None:
    print(json.dumps(record, indent=2 if pretty else None))


def _cmd_chi(args) -> int:
    if args.factored:
        print(euler_mod.chi_closed(args.m, args.n).factored)
        return 0
    _emit(_chi_record(args.m, args.n), args.pretty)
    return 0


def _cmd_sign(args) -> int:
    _emit({"m": args.m, "n": args.n,
           "sign": euler_mod.chi_sign(args.m, args.n)}, args.pretty)
    return 0


def _cmd_profile(args) -> int:
    record = _chi_record(args.m, args.n)
    _emit({"m": args.m, "n": args.n, "dimX": record["dimX"],
           "delta": record["delta"], "l2": record["l2"]}, args.pretty)
    return 0


def _cmd_compare(args) -> int:
    rep = profinite.profinitely_commensurable(
        args.m, args.n, args.m2, args.n2, prime_bound=args.prime_bound)
    first, second = rep.chi_both
    _emit({
        "first": {"m": args.m, "n": args.n,
                  "chi": first.factored, "sign": first.sign},
        "second": {"m": args.m2, "n": args.n2,
                   "chi": second.factored, "sign": second.sign},
        "locally_equivalent": rep.locally_equivalent,
        "witness": rep.witness,
        "csp_note": rep.csp_note,
        "dim_mod4_consistent": rep.dim_mod4_consistent,
        "delta_consistent": rep.delta_consistent,
        "verdict": rep.verdict,
    }, args.pretty)
    return 0


_TABLE_FIELDS = ("m", "n", "d", "dimX", "delta", "chi",
                 "chi_rational", "sign", "case")


def _cmd_table(args) -> int:
    if args.d_max < 3:
        raise ValueError("need --d-max >= 3")
    records = [_chi_record(m, d - m)
               for d in range(3, args.d_max + 1) for m in range(1, d)]
    if args.csv:
        print(",".join(_TABLE_FIELDS))
        for rec in records:
            print(",".join(str(rec[f]) for f in _TABLE_FIELDS))
    elif args.pretty:
        widths = {f: max(len(f), *(len(str(r[f])) for r in records))
                  for f in _TABLE_FIELDS}
        print("  ".join(f.ljust(widths[f]) for f in _TABLE_FIELDS))
        for rec in records:
            print("  ".join(str(rec[f]).ljust(widths[f]) for f in _TABLE_FIELDS))
    else:
        for rec in records:
            print(json.dumps(rec))
    return 0


def _cmd_witt(args) -> int:
    form = qforms.DiagonalForm.parse(args.form)
    place = qforms.Place.parse(args.place)
    _emit({"witt": qforms.witt_index(form, place),
           "aniso_dim": qforms.anisotropic_dim(form, place)}, args.pretty)
    return 0


def _cmd_srank(args) -> int:
    rep = euler_mod.s_arithmetic_sign(args.m, args.n, args.primes)
    _emit({
        "m": args.m,
        "n": args.n,
        "S": list(rep.primes),
        "witt": rep.witt_by_place,
        "rank_S": rep.rank_s,
        "rank_Q": rep.rank_rational,
        "sign": rep.sign,
        "ep_vanishes": rep.ep_vanishes,
    }, args.pretty)
    return 0


# ---------------------------------------------------------------------------
# verify suites


def _suite_exactq() -> None:
    for j in range(1, 11):
        lhs = (exactq.zeta_even_exact(j)
               * exactq.PiExact(Fraction(1), -2 * j) * exactq.gamma_half(2 * j)
               * exactq.PiExact(Fraction(1), -(2 * j + 1))
               * exactq.gamma_half(2 * j + 1))
        rhs = exactq.PiExact(abs(exactq.zeta_negative_odd(j)), 0)
        assert lhs == rhs, f"functional equation failed at j={j}"
    for ell in (1, 3, 5, 7, 9):
        lhs = (exactq.l_psi_exact_odd(ell)
               * exactq.PiExact(Fraction(1), -2 * ell)
               * exactq.gamma_half(2 * ell))
        rhs = exactq.PiExact(
            Fraction(1, 2 ** ell) * abs(exactq.gen_bernoulli_mod4(ell)) / ell, 0)
        assert lhs == rhs, f"L identity failed at ell={ell}"
    table = {1: Fraction(-1, 2), 3: Fraction(3, 2), 5: Fraction(-25, 2),
             7: Fraction(427, 2), 9: Fraction(-12465, 2)}
    for ell, want in table.items():
        assert exactq.gen_bernoulli_mod4(ell) == want, f"B_psi,{ell}"
    assert exactq.zeta_negative_odd(1) == Fraction(-1, 12)
    assert exactq.zeta_even_exact(2) == exactq.PiExact(Fraction(1, 90), 8)


def _suite_clifford() -> None:
    for d in range(1, 11):
        sig = clifford.Signature(max(1, d - 1), d - max(1, d - 1))
        for blade in range(1 << d):
            card = blade.bit_count()
            el = clifford.CliffordElement.blade(sig, clifford.ZZ, blade)
            want = -1 if (card * (card + 1) // 2) % 2 else 1
            got = el.conjugate().coefficient(blade)
            assert got == want, f"conjugation sign at d={d}, blade={blade:b}"
    rng = random.Random(20260815)
    sig = clifford.Signature(3, 2)
    field = clifford.PrimeField(5)
    for _ in range(200):
        x, y, z = (_random_element(rng, sig, field) for _ in range(3))
        assert (x * y) * z == x * (y * z), "associativity"
    for _ in range(10):
        coeffs = {clifford.blade_from_indices([i, j]): 4 * rng.randint(-3, 3)
                  for i, j in itertools.combinations(range(1, 6), 2)}
        x = clifford.CliffordElement(sig, clifford.ZZ, coeffs)
        g = clifford.clifford_exp(x, 8)
        assert clifford.is_spin_element(g), "exp image not in Spin"
        back = clifford.clifford_log(g, 8)
        want = {b: c % 256 for b, c in coeffs.items() if c % 256}
        assert dict(back.coeffs) == want, "log(exp) != id"


def _random_element(rng, sig, ring):
    coeffs = {}
    for _ in range(rng.randint(1, 4)):
        blade = rng.randrange(1 << sig.d)
        coeffs[blade] = ring.from_int(rng.randint(-6, 6))
    return clifford.CliffordElement(sig, ring, coeffs)


def _suite_oracles() -> None:
    rng = random.Random(97)
    squarefrees = [x for x in range(-35, 36)
                   if x and all(x % (q * q) for q in (2, 3, 5))]
    for _ in range(60):
        a, b = rng.choice(squarefrees), rng.choice(squarefrees)
        v = rng.choice([None, 2, 3, 5, 7, 11, 13])
        got = qforms.hilbert_symbol(a, b, v)
        want = _hilbert_bruteforce(a, b, v)
        assert got == want, f"Hilbert symbol ({a},{b})_{v}: {got} vs {want}"
    for (m, n), p in (((2, 1), 3), ((2, 1), 5), ((2, 2), 3), ((3, 1), 3)):
        desc = ggroups.SpinGroupDescriptor(m, n)
        formula = ggroups.spin_order_fp(desc, p)
        counted = ggroups.so_order_bruteforce(qforms.DiagonalForm.pm(m, n), p)
        assert formula == counted, f"order mismatch at ({m},{n}), p={p}"


def _hilbert_bruteforce(a: int, b: int, v) -> int:
    """Primitive solvability of z^2 = a x^2 + b y^2, searched mod p^k.

    Squarefree a, b only.  Modulus p^4 (2^6 at p=2) makes every primitive
    solution Hensel-liftable, so the search is exact.  A primitive triple
    can be scaled so some unit coordinate is 1, hence three sweeps.
    """
    if v is None:
        return -1 if a < 0 and b < 0 else 1
    p = v
    modulus = 2 ** 6 if p == 2 else p ** 4
    squares = {z * z % modulus for z in range(modulus)}
    for x in range(modulus):  # y = 1
        if (a * x * x + b) % modulus in squares:
            return 1
    for y in range(modulus):  # x = 1
        if (a + b * y * y) % modulus in squares:
            return 1
    targets = {(1 - a * x * x) % modulus for x in range(modulus)}  # z = 1
    if any(b * y * y % modulus in targets for y in range(modulus)):
        return 1
    return -1


def _suite_adelic() -> None:
    for d in range(3, 13):
        for m in range(1, d):
            n = d - m
            if m % 2 and n % 2:
                continue
            closed = euler_mod.chi_closed(m, n).value
            assembled = euler_mod.adelic_assembly_exact(m, n)
            assert closed == assembled, f"chi mismatch at ({m},{n})"


_SUITES = {
    "exactq": _suite_exactq,
    "clifford": _suite_clifford,
    "oracles": _suite_oracles,
    "adelic": _suite_adelic,
}


def _cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        try:
            _SUITES[name]()
        except AssertionError as exc:
            failed = True
            print(f"FAIL {name}: {exc}")
        else:
            print(f"PASS {name}")
    return 3 if failed else 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinchi",
        description="Euler characteristics of level-4 congruence subgroups "
                    "of Spin(m, n) and the local invariants behind them.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--pretty", action="store_true",
                       help="indent JSON / align tables")
        return p

    p = add("chi", _cmd_chi, "Euler characteristic of Spin(m,n) at level 4")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--factored", action="store_true",
                   help="print only the factored value")

    p = add("sign", _cmd_sign, "sign of the Euler characteristic")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)

    p = add("profile", _cmd_profile, "L2 invariant profile")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)

    p = add("compare", _cmd_compare, "profinite commensurability report")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("m2", type=int)
    p.add_argument("n2", type=int)
    p.add_argument("--prime-bound", type=int, default=100)

    p = add("table", _cmd_table, "chi table for all (m,n) with 3 <= d <= d_max")
    p.add_argument("--d-max", type=int, default=10)
    p.add_argument("--csv", action="store_true")

    p = add("witt", _cmd_witt, "Witt index of a diagonal form at a place")
    p.add_argument("form", help='e.g. "1,1,1,1,-1" or "b(4,1)"')
    p.add_argument("place", help='prime or "oo"')

    p = add("srank", _cmd_srank, "S-arithmetic rank and Serre sign")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("primes", type=int, nargs="*", default=[])

    p = add("verify", _cmd_verify, "run self-check suites")
    p.add_argument("suite", nargs="?", default="all",
                   choices=["all", *_SUITES])
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ResidualPiPowerError, clifford.TwoAdicIntegralityError,
            AssertionError) as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
