"""Arithmetic in the skew polynomial ring A[X;theta].

Multiplication follows X*a = theta(a)*X; right division works whenever the
divisor's leading coefficient is a unit.  Coefficients are stored ascending
with trailing zeros trimmed; the zero polynomial has empty coefficients and
degree -1 as its minus-infinity sentinel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ._util import mixed_radix_digits
from .errors import (
    BudgetExceeded,
    ConstantTermNotUnit,
    LeadingCoeffNotInvertible,
    MixedRings,
    MixedTheta,
    NoncommutativeRing,
)
from .morphisms import RingMap
from .rings import FiniteRing

DEFAULT_BUDGET = 20_000_000


@dataclass(frozen=True)
class SkewPoly:
    ring: FiniteRing
    theta: RingMap
    coeffs: Tuple[int, ...]  # ascending, trailing zeros trimmed

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == self.ring.zero:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def labels(self) -> List[str]:
        return [self.ring.label(c) for c in self.coeffs]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == self.ring.zero:
                continue
            lab = self.ring.label(c)
            if i == 0:
                parts.append(lab)
                continue
            xs = "X" if i == 1 else f"X^{i}"
            parts.append(xs if c == self.ring.one else f"({lab}){xs}")
        return " + ".join(parts)

    def vector(self, n: int) -> Tuple[int, ...]:
        """Coefficient word of length n (degree must be < n)."""
        if self.degree >= n:
            raise ValueError("polynomial does not fit the requested length")
        return tuple(self.coeff(i) for i in range(n))


def skew_poly(
    ring: FiniteRing, theta: RingMap, coeffs: Sequence
) -> SkewPoly:
    vals = [
        c if isinstance(c, int) else ring.parse(str(c)) for c in coeffs
    ]
    return SkewPoly(ring, theta, tuple(vals))


def x_pow_minus(ring: FiniteRing, theta: RingMap, n: int, a: Optional[int] = None) -> SkewPoly:
    """X^n - a (a defaults to 1)."""
    a = ring.one if a is None else a
    coeffs = [ring.neg_el(a)] + [ring.zero] * (n - 1) + [ring.one]
    return SkewPoly(ring, theta, tuple(coeffs))


def _check_pair(f: SkewPoly, g: SkewPoly):
    if f.ring is not g.ring:
        raise MixedRings("skew polynomials over different rings")
    if not (f.theta.perm == g.theta.perm).all():
        raise MixedTheta("skew polynomials with different twists")


def theta_pow_perms(theta: RingMap, upto: int) -> List[np.ndarray]:
    A = theta.ring
    pows = [np.arange(A.order, dtype=np.uint8)]
    for _ in range(upto):
        pows.append(theta.perm[pows[-1]])
    return pows


def skew_add(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    _check_pair(f, g)
    A = f.ring
    n = max(len(f.coeffs), len(g.coeffs))
    return SkewPoly(
        A, f.theta, tuple(A.add_el(f.coeff(i), g.coeff(i)) for i in range(n))
    )


def skew_sub(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    _check_pair(f, g)
    A = f.ring
    n = max(len(f.coeffs), len(g.coeffs))
    return SkewPoly(
        A, f.theta, tuple(A.sub_el(f.coeff(i), g.coeff(i)) for i in range(n))
    )


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Product under (a X^i)(b X^j) = a theta^i(b) X^{i+j}."""
    _check_pair(f, g)
    A = f.ring
    if f.is_zero() or g.is_zero():
        return SkewPoly(A, f.theta, ())
    tp = theta_pow_perms(f.theta, f.degree)
    out = [A.zero] * (f.degree + g.degree + 1)
    for i, fi in enumerate(f.coeffs):
        if fi == A.zero:
            continue
        ti = tp[i]
        for j, gj in enumerate(g.coeffs):
            if gj == A.zero:
                continue
            out[i + j] = A.add_el(out[i + j], A.mul_el(fi, int(ti[gj])))
    return SkewPoly(A, f.theta, tuple(out))


def scalar_mul(a: int, f: SkewPoly) -> SkewPoly:
    A = f.ring
    return SkewPoly(A, f.theta, tuple(A.mul_el(a, c) for c in f.coeffs))


def right_divmod(f: SkewPoly, g: SkewPoly) -> Tuple[SkewPoly, SkewPoly]:
    """Unique (q, r) with f = q*g + r and r = 0 or deg r < deg g."""
    _check_pair(f, g)
    A = f.ring
    if g.is_zero():
        raise LeadingCoeffNotInvertible("division by zero polynomial")
    if not A.is_unit(g.coeffs[-1]):
        raise LeadingCoeffNotInvertible(
            f"leading coefficient {A.label(g.coeffs[-1])} is not a unit"
        )
    d = g.degree
    r = list(f.coeffs)
    q = [A.zero] * max(0, len(r) - d)
    tp = theta_pow_perms(f.theta, max(0, len(r) - d))
    ginv = A.inv_el(g.coeffs[-1])
    for top in range(len(r) - 1, d - 1, -1):
        c = r[top]
        if c == A.zero:
            continue
        s = top - d
        qs = A.mul_el(c, A.inv_el(int(tp[s][g.coeffs[-1]])))
        q[s] = qs
        for j in range(d + 1):
            r[s + j] = A.sub_el(r[s + j], A.mul_el(qs, int(tp[s][g.coeffs[j]])))
    return SkewPoly(A, f.theta, tuple(q)), SkewPoly(A, f.theta, tuple(r[:d]))


def left_divmod(f: SkewPoly, g: SkewPoly) -> Tuple[SkewPoly, SkewPoly]:
    """Unique (q, r) with f = g*q + r and r = 0 or deg r < deg g."""
    _check_pair(f, g)
    A = f.ring
    if g.is_zero() or not A.is_unit(g.coeffs[-1]):
        raise LeadingCoeffNotInvertible("left division needs a unit leading coeff")
    d = g.degree
    r = list(f.coeffs)
    q = [A.zero] * max(0, len(r) - d)
    tp = theta_pow_perms(f.theta, max(1, len(r)))
    inv_perm = np.empty(A.order, dtype=np.uint8)
    inv_perm[f.theta.perm] = np.arange(A.order, dtype=np.uint8)
    tinv = [np.arange(A.order, dtype=np.uint8)]
    for _ in range(len(r)):
        tinv.append(inv_perm[tinv[-1]])
    glead_inv = A.inv_el(g.coeffs[-1])
    for top in range(len(r) - 1, d - 1, -1):
        c = r[top]
        if c == A.zero:
            continue
        s = top - d
        # g_d * theta^d(q_s) = c  =>  q_s = theta^{-d}(g_d^{-1} c)
        qs = int(tinv[d][A.mul_el(glead_inv, c)])
        q[s] = qs
        for i in range(d + 1):
            r[i + s] = A.sub_el(
                r[i + s], A.mul_el(g.coeffs[i], int(tp[i][qs]))
            )
    return SkewPoly(A, f.theta, tuple(q)), SkewPoly(A, f.theta, tuple(r[:d]))


# ---------------------------------------------------------------------------
# reciprocal operators


def skew_reciprocal(h: SkewPoly) -> SkewPoly:
    """h* with coefficients theta^i(h_{m-i})."""
    A = h.ring
    if not A.commutative:
        raise NoncommutativeRing("skew reciprocal is defined over commutative rings")
    if h.is_zero():
        return h
    m = h.degree
    tp = theta_pow_perms(h.theta, m)
    return SkewPoly(
        A, h.theta, tuple(int(tp[i][h.coeff(m - i)]) for i in range(m + 1))
    )


def skew_reciprocal_preimage(P: SkewPoly) -> SkewPoly:
    """The unique h with h* = P (P nonzero with nonzero constant term)."""
    A = P.ring
    if not A.commutative:
        raise NoncommutativeRing("skew reciprocal is defined over commutative rings")
    m = P.degree
    inv_perm = np.empty(A.order, dtype=np.uint8)
    inv_perm[P.theta.perm] = np.arange(A.order, dtype=np.uint8)
    tinv = [np.arange(A.order, dtype=np.uint8)]
    for _ in range(m + 1):
        tinv.append(inv_perm[tinv[-1]])
    # h_j = theta^{-(m-j)}(P_{m-j})
    return SkewPoly(
        A, P.theta, tuple(int(tinv[m - j][P.coeff(m - j)]) for j in range(m + 1))
    )


def left_monic_skew_reciprocal(h: SkewPoly) -> SkewPoly:
    """(1/theta^m(h_0)) * h*."""
    A = h.ring
    star = skew_reciprocal(h)
    m = h.degree
    tp = theta_pow_perms(h.theta, m)
    lead = int(tp[m][h.coeff(0)])
    if not A.is_unit(lead):
        raise ConstantTermNotUnit(
            f"theta^{m}(h_0) = {A.label(lead)} is not a unit"
        )
    return scalar_mul(A.inv_el(lead), star)


# ---------------------------------------------------------------------------
# divisor enumeration (vectorized over candidate coefficient tuples)


def enumerate_monic_right_divisors(
    A: FiniteRing,
    theta: RingMap,
    n: int,
    d: int,
    a_const: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    chunk: int = 1 << 20,
) -> List[SkewPoly]:
    """All monic degree-d right divisors of X^n - a in A[X;theta]."""
    if d > n:
        raise ValueError("divisor degree exceeds modulus degree")
    a = A.one if a_const is None else int(a_const)
    total = A.order**d
    if total > budget:
        raise BudgetExceeded(total, budget, f"divisor search |A|^{d}")
    if d == 0:
        return [SkewPoly(A, theta, (A.one,))]
    tp = theta_pow_perms(theta, n)
    f = np.zeros(n + 1, dtype=np.uint8)
    f[0] = A.neg_el(a)
    f[n] = A.one
    out: List[SkewPoly] = []
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = mixed_radix_digits(codes, A.order, d)
        r = np.tile(f, (codes.shape[0], 1))
        for top in range(n, d - 1, -1):
            s = top - d
            c = r[:, top].copy()
            for j in range(d):
                prod = A.mul[c, tp[s][digits[:, j]]]
                r[:, s + j] = A.sub[r[:, s + j], prod]
            r[:, top] = A.zero
        ok = (r[:, :d] == A.zero).all(axis=1)
        for row in digits[ok]:
            out.append(SkewPoly(A, theta, tuple(int(x) for x in row) + (A.one,)))
    return out


def is_self_dual_generator(h: SkewPoly, k: Optional[int] = None, epsilon: int = 1) -> bool:
    """True iff h has degree k and h^nat * h = X^{2k} - epsilon."""
    A = h.ring
    if not A.commutative:
        raise NoncommutativeRing("self-dual criterion is for commutative rings")
    if h.is_zero():
        return False
    if k is None:
        k = h.degree
    if h.degree != k:
        return False
    g = left_monic_skew_reciprocal(h)
    target = x_pow_minus(A, h.theta, 2 * k, A.one if epsilon == 1 else A.neg_el(A.one))
    return skew_mul(g, h).coeffs == target.coeffs


def self_dual_generators(
    A: FiniteRing,
    theta: RingMap,
    n: int,
    epsilon: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> List[SkewPoly]:
    """Monic degree-n/2 right divisors g of X^n - eps generating self-dual codes.

    g qualifies iff the left quotient h of X^n - eps by g satisfies
    h^nat = g; h is then the degree-k certificate of the criterion.
    """
    if not A.commutative:
        raise NoncommutativeRing("self-dual criterion is for commutative rings")
    if n % 2:
        raise ValueError("length must be even")
    k = n // 2
    eps_el = A.one if epsilon == 1 else A.neg_el(A.one)
    divisors = enumerate_monic_right_divisors(A, theta, n, k, eps_el, budget)
    f = x_pow_minus(A, theta, n, eps_el)
    out = []
    for g in divisors:
        h, rem = left_divmod(f, g)
        if not rem.is_zero() or h.degree != k:
            continue
        if left_monic_skew_reciprocal(h).coeffs == g.coeffs:
            out.append(g)
    return out


def count_self_dual_generators(
    A: FiniteRing, theta: RingMap, n: int, budget: int = DEFAULT_BUDGET
) -> Dict[str, int]:
    """Counts per epsilon with the distinct-generator total (char-2 dedup)."""
    plus = self_dual_generators(A, theta, n, 1, budget)
    if A.neg_el(A.one) == A.one:
        return {"+1": len(plus), "-1": len(plus), "distinct": len(plus)}
    minus = self_dual_generators(A, theta, n, -1, budget)
    keys = {g.coeffs for g in plus} | {g.coeffs for g in minus}
    return {"+1": len(plus), "-1": len(minus), "distinct": len(keys)}
