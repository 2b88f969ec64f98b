"""Group-theoretic data for Spin(m, n): Weyl groups, finite orders, volumes.

``spin_order_fp`` evaluates the classical order formulas for the F_p
points (p odd, d = m + n >= 3, where Spin -> SO is onto with kernel and
cokernel of equal size, so |Spin(F_p)| = |SO(F_p)|):

  d = 2l + 1:  p^(l^2)  * prod_{j=1}^{l} (p^(2j) - 1)
  d = 2l:      p^(l(l-1)) * (p^l - t) * prod_{j=1}^{l-1} (p^(2j) - 1)

with t = +1 for plus type and t = -1 for minus type (``qforms.fp_type``).

``so_order_bruteforce`` counts solutions of M^T B M = B, det M = 1 by
column-by-column enumeration with Gram-condition pruning.  It exists as
an independent oracle for the formulas, so it stays deliberately naive;
a budget guard refuses instances with p^(d^2) > budget.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .exactq import PiExact, gamma_half, is_prime
from .qforms import DiagonalForm, fp_type


@dataclass(frozen=True)
class SpinGroupDescriptor:
    """Spin(m, n) with m, n >= 1 and d = m + n >= 3."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ValueError("need m, n >= 1")
        if self.d < 3:
            raise ValueError("need m + n >= 3")

    @property
    def d(self) -> int:
        return self.m + self.n

    @property
    def l(self) -> int:
        return self.d // 2

    @property
    def k(self) -> int:
        return self.m // 2

    @property
    def k2(self) -> int:
        return self.n // 2

    @property
    def dim_x(self) -> int:
        """Dimension of the associated symmetric space, m * n."""
        return self.m * self.n

    @property
    def delta(self) -> int:
        """l - k - k2: 1 when m, n are both odd, else 0."""
        return self.l - self.k - self.k2

    def form(self) -> DiagonalForm:
        return DiagonalForm.pm(self.m, self.n)


def weyl_order(series: str, rank: int) -> int:
    """Order of the Weyl group of type B_rank or D_rank.

    |W(B_l)| = 2^l l!, |W(D_l)| = 2^(l-1) l!; D_1 is the trivial group.
    """
    if rank < 1:
        raise ValueError("need rank >= 1")
    if series == "B":
        return 2 ** rank * math.factorial(rank)
    if series == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    raise ValueError(f"unknown series {series!r}, expected 'B' or 'D'")


def weyl_ratio(desc: SpinGroupDescriptor) -> Fraction:
    """|W(compact dual)| / |W(maximal compact)| = 2 * C(l, k).

    For m, n not both odd this equals the quotient of the compact-dual
    Weyl order by that of W(B/D_k) x W(B/D_k2); the binomial form is the
    source of truth and is what gets used in the Euler characteristic.
    """
    return Fraction(2 * math.comb(desc.l, desc.k))


def spin_order_fp(desc: SpinGroupDescriptor, p: int) -> int:
    """|Spin(m, n)(F_p)| for an odd prime p."""
    if p == 2 or not is_prime(p):
        raise ValueError("need an odd prime")
    d, l = desc.d, desc.l
    if d % 2:
        order = p ** (l * l)
        for j in range(1, l + 1):
            order *= p ** (2 * j) - 1
        return order
    t = fp_type(desc.m, desc.n, p)
    order = p ** (l * (l - 1)) * (p ** l - t)
    for j in range(1, l):
        order *= p ** (2 * j) - 1
    return order


def so_order_bruteforce(form: DiagonalForm, p: int,
                        budget: int = 10 ** 8) -> int:
    """|SO(form)(F_p)| by direct enumeration.  Oracle, not for large inputs.

    Requires every entry to be a p-adic unit so the reduction mod p is
    nondegenerate.  Refuses when p^(d^2) exceeds the budget.
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    d = form.dim
    if p ** (d * d) > budget:
        raise ValueError(f"p^(d^2) = {p ** (d * d)} exceeds budget {budget}")
    q = []
    for e in form.entries:
        if e.numerator % p == 0 or e.denominator % p == 0:
            raise ValueError(f"entry {e} is not a unit at {p}")
        q.append(e.numerator * pow(e.denominator, -1, p) % p)

    vectors = list(product(range(p), repeat=d))
    by_norm: dict[int, list[tuple[int, ...]]] = {}
    for vec in vectors:
        norm = sum(qi * x * x for qi, x in zip(q, vec)) % p
        by_norm.setdefault(norm, []).append(vec)

    def det_mod_p(cols: list[tuple[int, ...]]) -> int:
        mat = [list(row) for row in zip(*cols)]
        det = 1
        for i in range(d):
            pivot = next((r for r in range(i, d) if mat[r][i] % p), None)
            if pivot is None:
                return 0
            if pivot != i:
                mat[i], mat[pivot] = mat[pivot], mat[i]
                det = -det
            det = det * mat[i][i] % p
            inv = pow(mat[i][i], -1, p)
            for r in range(i + 1, d):
                factor = mat[r][i] * inv % p
                if factor:
                    mat[r] = [(x - factor * y) % p
                              for x, y in zip(mat[r], mat[i])]
        return det % p

    count = 0
    chosen: list[tuple[int, ...]] = []
    weighted: list[tuple[int, ...]] = []   # q_i * (chosen col)_i, for dot products

    def extend(col: int) -> None:
        nonlocal count
        if col == d:
            if det_mod_p(chosen) == 1:
                count += 1
            return
        for vec in by_norm.get(q[col], ()):
            if all(sum(wi * x for wi, x in zip(w, vec)) % p == 0
                   for w in weighted):
                chosen.append(vec)
                weighted.append(tuple(qi * x % p for qi, x in zip(q, vec)))
                extend(col + 1)
                chosen.pop()
                weighted.pop()

    extend(0)
    return count


@lru_cache(maxsize=None)
def vol_compact_dual(d: int) -> PiExact:
    """Normalized volume of the compact dual group for dimension d:

        2^((3d - d^2)/2) * prod_{j=2}^{d} pi^(j/2) / Gamma(j/2).

    Exactly a rational times a half-integer power of pi.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    exponent = Fraction(3 * d - d * d, 2)
    if exponent.denominator != 1:
        raise AssertionError("3d - d^2 is always even")
    out = PiExact(Fraction(2) ** int(exponent), 0)
    for j in range(2, d + 1):
        out = out * PiExact(Fraction(1), j) / gamma_half(j)
    return out
