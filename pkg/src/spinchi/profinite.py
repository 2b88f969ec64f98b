"""Profinite commensurability of the congruence spin groups, at desk scale.

Two groups Spin(m, n), Spin(m2, n2) with m + n = m2 + n2 have isomorphic
congruence completions iff the forms <1^m,(-1)^n>, <1^m2,(-1)^n2> are
Z_p-equivalent at every finite place.  Upgrading that to the full
profinite completion needs trivial congruence kernels, which Kneser's
criterion gives when both rational Witt indices are >= 2; below that the
conclusion is recorded as conditional rather than claimed.

The sweeps instantiate, over all descriptor pairs with d <= d_max, the
constraints every locally-equivalent pair must satisfy: dim X mod 4,
delta and sign(chi) all agree.  Violations are collected, never silently
dropped; an entry in the violations list is a bug by theorem.  The chi
values themselves are not profinite invariants, and
``sweep_euler_not_profinite`` lists the witnessing pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .euler import EulerResult, chi_closed, chi_sign
from .ggroups import SpinGroupDescriptor
from .qforms import genus_first_failure, witt_index_rational

GENUS_PRIME_BOUND = 100


@dataclass(frozen=True)
class CommensurabilityReport:
    pair: tuple[SpinGroupDescriptor, SpinGroupDescriptor]
    locally_equivalent: bool
    witness: str
    csp_unconditional: bool
    csp_note: str
    dim_mod4_consistent: bool
    delta_consistent: bool
    chi_both: tuple[EulerResult, EulerResult]
    verdict: str


def profinitely_commensurable(m: int, n: int, m2: int, n2: int,
                              prime_bound: int = GENUS_PRIME_BOUND,
                              ) -> CommensurabilityReport:
    """Decide congruence-completion isomorphism for the pair, with caveats."""
    first = SpinGroupDescriptor(m, n)
    second = SpinGroupDescriptor(m2, n2)
    failure = genus_first_failure(m, n, m2, n2, prime_bound)
    equal = failure is None
    witness = f"all p <= {prime_bound} pass" if equal else failure

    w1 = witt_index_rational(first.form())
    w2 = witt_index_rational(second.form())
    unconditional = w1 >= 2 and w2 >= 2
    csp_note = (
        f"rational Witt indices {w1} and {w2}: "
        + ("both >= 2, congruence kernels trivial (Kneser)" if unconditional
           else "some < 2, congruence kernel not controlled here")
    )
    if not equal:
        verdict = "not locally equivalent"
    elif unconditional:
        verdict = "profinitely commensurable"
    else:
        verdict = ("locally equivalent "
                   "(commensurability conditional on congruence kernel)")
    return CommensurabilityReport(
        pair=(first, second),
        locally_equivalent=equal,
        witness=witness,
        csp_unconditional=unconditional,
        csp_note=csp_note,
        dim_mod4_consistent=(first.dim_x - second.dim_x) % 4 == 0,
        delta_consistent=first.delta == second.delta,
        chi_both=(chi_closed(m, n), chi_closed(m2, n2)),
        verdict=verdict,
    )


@dataclass(frozen=True)
class SweepReport:
    d_max: int
    pair_count: int
    equivalent_pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    classes: tuple[tuple[tuple[int, int], ...], ...]
    violations: tuple[str, ...]
    chi_ratio_notes: tuple[str, ...]


def _descriptors(d: int) -> list[tuple[int, int]]:
    return [(m, d - m) for m in range(1, d)]


def sweep_theorem_frank_dim(d_max: int,
                            prime_bound: int = GENUS_PRIME_BOUND) -> SweepReport:
    """Check dim-mod-4, delta and sign constraints on all equivalent pairs.

    Enumerates every descriptor pair of equal d <= d_max.  Classes are the
    local-equivalence classes with more than one member.  The chi-ratio
    notes record the observed power-of-2 pattern for delta = 0 classes;
    they are data, not assertions.
    """
    if d_max < 3:
        raise ValueError("need d_max >= 3")
    equivalent: list[tuple[tuple[int, int], tuple[int, int]]] = []
    violations: list[str] = []
    notes: list[str] = []
    classes: list[tuple[tuple[int, int], ...]] = []
    pair_count = 0
    for d in range(3, d_max + 1):
        descs = _descriptors(d)
        partition: list[list[tuple[int, int]]] = []
        for mn in descs:
            home = None
            for cls in partition:
                if genus_first_failure(*cls[0], *mn, prime_bound) is None:
                    home = cls
                    break
            if home is None:
                partition.append([mn])
            else:
                home.append(mn)
        classes.extend(tuple(cls) for cls in partition if len(cls) > 1)
        for i, a in enumerate(descs):
            for b in descs[i + 1:]:
                pair_count += 1
                if genus_first_failure(*a, *b, prime_bound) is not None:
                    continue
                equivalent.append((a, b))
                if (a[0] * a[1] - b[0] * b[1]) % 4:
                    violations.append(f"{a}/{b}: dim X not equal mod 4")
                da = SpinGroupDescriptor(*a).delta
                db = SpinGroupDescriptor(*b).delta
                if da != db:
                    violations.append(f"{a}/{b}: delta mismatch")
                ca, cb = chi_closed(*a), chi_closed(*b)
                if ca.sign != cb.sign:
                    violations.append(f"{a}/{b}: sign mismatch")
                if ca.value and cb.value:
                    ratio = ca.value / cb.value
                    two_power = abs(ratio.numerator) == 1 or abs(ratio.denominator) == 1
                    two_power = two_power and (
                        abs(ratio.numerator * ratio.denominator).bit_count() == 1)
                    notes.append(f"{a}/{b}: chi ratio {ratio}"
                                 + ("" if two_power else " (not a power of 2)"))
    return SweepReport(
        d_max=d_max,
        pair_count=pair_count,
        equivalent_pairs=tuple(equivalent),
        classes=tuple(classes),
        violations=tuple(violations),
        chi_ratio_notes=tuple(notes),
    )


@dataclass(frozen=True)
class ChiMismatchPair:
    first: tuple[int, int]
    second: tuple[int, int]
    chi_first: Fraction
    chi_second: Fraction


def sweep_euler_not_profinite(d_max: int,
                              prime_bound: int = GENUS_PRIME_BOUND,
                              ) -> list[ChiMismatchPair]:
    """Locally-equivalent pairs whose (nonzero) chi values differ.

    Each entry shows chi is not determined by the profinite completion.
    Empty lists are a legitimate outcome for small d_max.
    """
    if d_max < 3:
        raise ValueError("need d_max >= 3")
    out: list[ChiMismatchPair] = []
    for d in range(3, d_max + 1):
        descs = _descriptors(d)
        for i, a in enumerate(descs):
            for b in descs[i + 1:]:
                if genus_first_failure(*a, *b, prime_bound) is not None:
                    continue
                ca, cb = chi_closed(*a).value, chi_closed(*b).value
                if ca and cb and ca != cb:
                    out.append(ChiMismatchPair(a, b, ca, cb))
    return out
