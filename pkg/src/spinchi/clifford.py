"""Clifford algebras of diagonal forms x_1^2+..+x_m^2 - x_{m+1}^2-..-x_d^2.

Blades are bitmasks: bit i-1 set means the generator e_i is present, so
e({1,2}) is the mask 0b11.  The sign of a blade product is computed from
the inversion count of the concatenation plus one -1 per repeated index
with negative square.  Everything is generic over a coefficient ring; we
only ever need the ring operations listed on ``CoefficientRing``, which
keeps Z, Q, F_p, Z/2^N and dual numbers on one code path.

The 2-adic exponential and logarithm work with exact rationals and only
reduce mod 2^N at the end; a coefficient with even denominator on the
way out means the input was not in the domain (4 times the integral Lie
algebra for exp, 1 + 4*C_0 for log) and raises TwoAdicIntegralityError.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator

Blade = int


class TwoAdicIntegralityError(ArithmeticError):
    """A 2-adically non-integral coefficient where an integer was required."""


@dataclass(frozen=True)
class Signature:
    """Diagonal form of signature (m, n): e_i^2 = +1 for i <= m, else -1."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0 or self.d < 1:
            raise ValueError("need m, n >= 0 with m + n >= 1")
        if self.d > 63:
            raise ValueError("at most 63 generators supported")

    @property
    def d(self) -> int:
        return self.m + self.n


def blade_from_indices(indices: Iterable[int]) -> Blade:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError("generator indices start at 1")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError("repeated index in blade")
        mask |= bit
    return mask


def blade_indices(blade: Blade) -> tuple[int, ...]:
    out = []
    i = 1
    while blade:
        if blade & 1:
            out.append(i)
        blade >>= 1
        i += 1
    return tuple(out)


def blade_str(blade: Blade) -> str:
    return "e{" + ",".join(str(i) for i in blade_indices(blade)) + "}"


def blade_mul(j: Blade, k: Blade, sig: Signature) -> tuple[int, Blade]:
    """(sign, blade) with e(J) e(K) = sign * e(J xor K).

    The sign is (-1)^inversions times the product of squares of repeated
    indices; inversions counts pairs (a, b) in J x K with a > b.
    """
    inv = 0
    kk = k
    while kk:
        low = kk & -kk
        inv += (j >> low.bit_length()).bit_count()
        kk ^= low
    neg_squares = ((j & k) >> sig.m).bit_count()
    sign = -1 if (inv + neg_squares) & 1 else 1
    return sign, j ^ k


def _grade_sign(card: int) -> int:
    return -1 if card & 1 else 1


def _iota_sign(card: int) -> int:
    return -1 if (card * (card - 1) // 2) & 1 else 1


def _conjugate_sign(card: int) -> int:
    return -1 if (card * (card + 1) // 2) & 1 else 1


# ---------------------------------------------------------------------------
# Coefficient rings


class CoefficientRing:
    """Commutative ring with identity, decidable equality, known 2-torsion.

    ``ann2_generators`` returns generators of {a : 2a = 0}; that is what
    the even Clifford Lie algebra needs beyond the grade-2 part.
    """

    name = "ring"
    zero: Any
    one: Any

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def from_int(self, k: int):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def ann2_generators(self) -> tuple:
        return ()

    def __eq__(self, other) -> bool:
        # structural: two Z/8 instances are the same ring
        return isinstance(other, CoefficientRing) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return self.name


class IntegerRing(CoefficientRing):
    name = "Z"
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, k):
        return k


class RationalRing(IntegerRing):
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, k):
        return Fraction(k)


class PrimeField(CoefficientRing):
    """F_p, elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be prime")
        self.p = p
        self.name = f"F_{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def from_int(self, k):
        return k % self.p

    def ann2_generators(self):
        return (self.one,) if self.p == 2 else ()


class ModularRing(CoefficientRing):
    """Z/modulus, elements stored as ints in [0, modulus)."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = modulus
        self.name = f"Z/{modulus}"
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def from_int(self, k):
        return k % self.modulus

    def ann2_generators(self):
        # a with 2a = 0: generated by modulus/2 when the modulus is even
        if self.modulus % 2 == 0:
            return (self.modulus // 2,)
        return ()


class DualNumbers(CoefficientRing):
    """base[eps]/(eps^2); elements are (a, b) meaning a + eps*b."""

    def __init__(self, base: CoefficientRing):
        self.base = base
        self.name = f"{base.name}[eps]"
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        return (self.base.mul(a[0], b[0]),
                self.base.add(self.base.mul(a[0], b[1]),
                              self.base.mul(a[1], b[0])))

    def from_int(self, k):
        return (self.base.from_int(k), self.base.zero)

    def eq(self, a, b):
        return self.base.eq(a[0], b[0]) and self.base.eq(a[1], b[1])

    def ann2_generators(self):
        return tuple((g, self.base.zero) for g in self.base.ann2_generators()) + \
            tuple((self.base.zero, g) for g in self.base.ann2_generators())


ZZ = IntegerRing()
QQ = RationalRing()


# ---------------------------------------------------------------------------
# Elements


class CliffordElement:
    """Finite coefficient dictionary blade -> ring element (no zeros stored)."""

    __slots__ = ("sig", "ring", "coeffs")

    def __init__(self, sig: Signature, ring: CoefficientRing,
                 coeffs: dict[Blade, Any] | None = None):
        self.sig = sig
        self.ring = ring
        clean: dict[Blade, Any] = {}
        for blade, c in (coeffs or {}).items():
            if blade >> sig.d:
                raise ValueError(f"blade {blade:#x} outside dimension {sig.d}")
            if not ring.is_zero(c):
                clean[blade] = c
        self.coeffs = clean

    @classmethod
    def scalar(cls, sig: Signature, ring: CoefficientRing, value) -> "CliffordElement":
        return cls(sig, ring, {0: value})

    @classmethod
    def one(cls, sig: Signature, ring: CoefficientRing) -> "CliffordElement":
        return cls.scalar(sig, ring, ring.one)

    @classmethod
    def blade(cls, sig: Signature, ring: CoefficientRing, blade: Blade,
              coeff=None) -> "CliffordElement":
        return cls(sig, ring, {blade: ring.one if coeff is None else coeff})

    @classmethod
    def generator(cls, sig: Signature, ring: CoefficientRing, i: int) -> "CliffordElement":
        return cls.blade(sig, ring, blade_from_indices([i]))

    def coefficient(self, blade: Blade):
        return self.coeffs.get(blade, self.ring.zero)

    @property
    def support(self) -> tuple[Blade, ...]:
        return tuple(sorted(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_even(self) -> bool:
        return all(b.bit_count() % 2 == 0 for b in self.coeffs)

    def _compat(self, other: "CliffordElement") -> None:
        if self.sig != other.sig or self.ring != other.ring:
            raise ValueError("elements live in different algebras")

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._compat(other)
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = self.ring.add(out.get(b, self.ring.zero), c)
        return CliffordElement(self.sig, self.ring, out)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(
            self.sig, self.ring,
            {b: self.ring.neg(c) for b, c in self.coeffs.items()})

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __mul__(self, other) -> "CliffordElement":
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        self._compat(other)
        ring = self.ring
        out: dict[Blade, Any] = {}
        for b1, c1 in self.coeffs.items():
            for b2, c2 in other.coeffs.items():
                sign, b = blade_mul(b1, b2, self.sig)
                term = ring.mul(c1, c2)
                if sign < 0:
                    term = ring.neg(term)
                out[b] = ring.add(out.get(b, ring.zero), term)
        return CliffordElement(self.sig, self.ring, out)

    def __rmul__(self, other) -> "CliffordElement":
        # ring scalars commute with everything
        return self.scale(other)

    def scale(self, c) -> "CliffordElement":
        if isinstance(c, int):
            c = self.ring.from_int(c)
        return CliffordElement(
            self.sig, self.ring,
            {b: self.ring.mul(c, v) for b, v in self.coeffs.items()})

    def _signed_map(self, sign_of_card) -> "CliffordElement":
        out = {}
        for b, c in self.coeffs.items():
            out[b] = c if sign_of_card(b.bit_count()) > 0 else self.ring.neg(c)
        return CliffordElement(self.sig, self.ring, out)

    def iota(self) -> "CliffordElement":
        """Anti-automorphism reversing products of generators."""
        return self._signed_map(_iota_sign)

    def grade_involution(self) -> "CliffordElement":
        """Automorphism e_i -> -e_i."""
        return self._signed_map(_grade_sign)

    def conjugate(self) -> "CliffordElement":
        """Clifford conjugation: iota composed with the grade involution."""
        return self._signed_map(_conjugate_sign)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordElement):
            return NotImplemented
        if self.sig != other.sig or self.ring != other.ring:
            return False
        if self.coeffs.keys() != other.coeffs.keys():
            return False
        return all(self.ring.eq(c, other.coeffs[b]) for b, c in self.coeffs.items())

    __hash__ = None

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{self.coeffs[b]}*{blade_str(b)}" for b in self.support)

    def __repr__(self) -> str:
        return f"<{self} over {self.ring.name}, sig=({self.sig.m},{self.sig.n})>"


# ---------------------------------------------------------------------------
# Spin condition and Lie algebra


def is_spin_element(g: CliffordElement) -> bool:
    """Membership in Spin: g in the even part, g gbar = 1, and conjugation
    by g maps each generator into the span of the generators.

    Raises ValueError on odd-blade support (not even a candidate).
    """
    if not g.is_even():
        raise ValueError("spin elements live in the even subalgebra")
    gbar = g.conjugate()
    if g * gbar != CliffordElement.one(g.sig, g.ring):
        return False
    for i in range(1, g.sig.d + 1):
        h = g * CliffordElement.generator(g.sig, g.ring, i) * gbar
        if any(b.bit_count() != 1 for b in h.coeffs):
            return False
    return True


def lie_algebra_basis(sig: Signature, ring: CoefficientRing) -> list[CliffordElement]:
    """Spanning set of the Lie algebra of the spin group over the ring.

    All grade-2 blades, plus a * e(J) for each generator a of the
    2-torsion of the ring and each even blade of grade != 2.  Over rings
    without 2-torsion (Z, Q, F_p for odd p) the grade-2 part is all of it.
    """
    out = [CliffordElement.blade(sig, ring, blade_from_indices([i, j]))
           for i, j in itertools.combinations(range(1, sig.d + 1), 2)]
    torsion = ring.ann2_generators()
    if torsion:
        for blade in range(1 << sig.d):
            card = blade.bit_count()
            if card % 2 == 0 and card != 2:
                for a in torsion:
                    out.append(CliffordElement.blade(sig, ring, blade, a))
    return out


def bracket(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    return x * y - y * x


# ---------------------------------------------------------------------------
# 2-adic exponential and logarithm


def _to_rational_element(x: CliffordElement) -> CliffordElement:
    coeffs = {}
    for b, c in x.coeffs.items():
        if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
            raise TypeError("exp/log need integer or rational coefficients")
        coeffs[b] = Fraction(c)
    return CliffordElement(x.sig, QQ, coeffs)


def _reduce_mod_2n(x: CliffordElement, bits: int) -> CliffordElement:
    mod = 1 << bits
    ring = ModularRing(mod)
    out = {}
    for b, c in x.coeffs.items():
        if c.denominator % 2 == 0:
            raise TwoAdicIntegralityError(
                f"coefficient {c} of {blade_str(b)} is not a 2-adic integer")
        out[b] = c.numerator * pow(c.denominator, -1, mod) % mod
    return CliffordElement(x.sig, ring, out)


def clifford_exp(x: CliffordElement, bits: int) -> CliffordElement:
    """exp(x) mod 2^bits for x in 4 * (integral even Lie algebra).

    Requires even support and every coefficient an integer divisible
    by 4; then x^k/k! is 2-adically integral and the series is stable
    past k = bits, so the truncated sum is exact mod 2^bits.
    """
    if bits < 1:
        raise ValueError("need bits >= 1")
    x = _to_rational_element(x)
    if not x.is_even():
        raise ValueError("exp is defined on the even part")
    for b, c in x.coeffs.items():
        if c.denominator != 1 or c.numerator % 4:
            raise TwoAdicIntegralityError(
                f"coefficient {c} of {blade_str(b)} is not divisible by 4")
    acc = CliffordElement.one(x.sig, QQ)
    term = CliffordElement.one(x.sig, QQ)
    for k in range(1, bits + 1):
        term = (term * x).scale(Fraction(1, k))
        acc = acc + term
    return _reduce_mod_2n(acc, bits)


def clifford_log(g: CliffordElement, bits: int) -> CliffordElement:
    """log(g) mod 2^bits for g = 1 mod 4 in the even subalgebra.

    Input coefficients may live over Z or Z/2^N; they are lifted to
    integers.  The alternating series sum (-1)^(k-1) (g-1)^k / k is
    stable past k = bits because v_2((g-1)^k / k) >= 2k - log2(k).
    """
    if bits < 1:
        raise ValueError("need bits >= 1")
    g = _to_rational_element(g)
    if not g.is_even():
        raise ValueError("log is defined on the even part")
    for b, c in g.coeffs.items():
        want = 1 if b == 0 else 0
        if c.denominator != 1 or (c.numerator - want) % 4:
            raise TwoAdicIntegralityError(
                f"coefficient {c} of {blade_str(b)}: input is not 1 mod 4*C_0")
    a = g - CliffordElement.one(g.sig, QQ)
    acc = CliffordElement(g.sig, QQ, {})
    power = CliffordElement.one(g.sig, QQ)
    for k in range(1, bits + 1):
        power = power * a
        term = power.scale(Fraction((-1) ** (k - 1), k))
        acc = acc + term
    return _reduce_mod_2n(acc, bits)
