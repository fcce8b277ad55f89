"""Linear codes over finite rings: module theta-codes, duals, weights, images.

A LinearCode is the left span of its generator rows.  Module theta-codes
built from a monic right divisor are free, so weight scans enumerate
coefficient tuples directly; general codes (duals, images of sets) carry
their codeword sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ._util import dedupe_rows, mixed_radix_digits, rows_in
from .bases import ModuleBasis
from .errors import (
    BudgetExceeded,
    ConfigError,
    LeeUndefined,
    NotBinary,
    NotInvolution,
    NotMonic,
    NotRightDivisor,
    NotSelfDual,
)
from .morphisms import MapGroup, RingMap, fixed_subring, identity_map
from .rings import FiniteRing, is_frobenius
from .skewpoly import SkewPoly, right_divmod, skew_mul, theta_pow_perms

DEFAULT_BUDGET = 20_000_000

_frobenius_cache: Dict[int, bool] = {}


def ring_is_frobenius(A: FiniteRing) -> bool:
    key = id(A)
    if key not in _frobenius_cache:
        _frobenius_cache[key] = is_frobenius(A)[0]
    return _frobenius_cache[key]


class LinearCode:
    """Length-n code over A equal to the left A-span of its generator rows."""

    def __init__(
        self,
        ring: FiniteRing,
        n: int,
        gens: Sequence[Sequence[int]],
        free: bool = False,
        words: Optional[np.ndarray] = None,
    ):
        self.ring = ring
        self.n = int(n)
        self.gens = tuple(tuple(int(c) for c in g) for g in gens)
        for g in self.gens:
            if len(g) != self.n:
                raise ConfigError("generator length mismatch")
        self.free = free
        self._words = words  # sorted unique rows when set

    @property
    def k(self) -> int:
        return len(self.gens)

    def size(self, budget: int = DEFAULT_BUDGET) -> int:
        if self.free:
            return self.ring.order ** len(self.gens)
        return self.codewords(budget).shape[0]

    def codewords(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        """Sorted unique codeword rows, shape (|C|, n)."""
        if self._words is None:
            if not self.gens:
                self._words = np.zeros((1, self.n), dtype=np.uint8)
                self._words[0, :] = self.ring.zero
            else:
                need = self.ring.order ** len(self.gens)
                if need > budget:
                    raise BudgetExceeded(need, budget, "codeword enumeration")
                self._words = _span(self.ring, self.gens)
        return self._words

    def iter_words(
        self, chunk: int = 1 << 18, budget: int = DEFAULT_BUDGET
    ) -> Iterator[np.ndarray]:
        """Codeword stream; free codes stream combinations without dedup."""
        if self.free:
            yield from _iter_free_span(self.ring, self.gens, chunk, budget)
        else:
            yield self.codewords(budget)

    def contains_rows(self, rows: np.ndarray, budget: int = DEFAULT_BUDGET) -> bool:
        return bool(rows_in(rows, self.codewords(budget)).all())

    def generator_matrix_labels(self) -> List[List[str]]:
        return [[self.ring.label(c) for c in g] for g in self.gens]

    def audit_module(self, budget: int = DEFAULT_BUDGET) -> bool:
        """Certify closure: a*g and g+g' stay inside the enumerated span."""
        words = self.codewords(budget)
        A = self.ring
        cand = []
        for g in self.gens:
            garr = np.array(g, dtype=np.uint8)
            cand.append(A.mul[np.arange(A.order)[:, None], garr[None, :]])
            for g2 in self.gens:
                cand.append(A.add[garr, np.array(g2, dtype=np.uint8)][None, :])
        if not cand:
            return True
        stacked = np.concatenate(cand, axis=0)
        return bool(rows_in(stacked, words).all())

    def __repr__(self) -> str:
        return f"LinearCode({self.ring.name}, n={self.n}, k={self.k})"


class ModuleThetaCode(LinearCode):
    """Principal module theta-code generated by a monic right divisor."""

    def __init__(self, g: SkewPoly, f: SkewPoly, theta: RingMap):
        A = g.ring
        if not g.is_monic():
            raise NotMonic("generator polynomial must be monic")
        q, r = right_divmod(f, g)
        if not r.is_zero():
            raise NotRightDivisor(f"{g} does not right-divide {f}")
        n = f.degree
        k = n - g.degree
        tp = theta_pow_perms(theta, max(k, 1))
        rows = []
        for j in range(k):
            row = [A.zero] * n
            for t, c in enumerate(g.coeffs):
                row[j + t] = int(tp[j][c])
            rows.append(row)
        super().__init__(A, n, rows, free=True)
        self.g = g
        self.f = f
        self.theta = theta

    def twisted_shift(self, word: Sequence[int]) -> Tuple[int, ...]:
        p = self.theta.perm
        return (int(p[word[-1]]),) + tuple(int(p[c]) for c in word[:-1])

    def __repr__(self) -> str:
        return (
            f"ModuleThetaCode({self.ring.name}, n={self.n}, k={self.k}, "
            f"g={self.g})"
        )


def theta_code(g: SkewPoly, f: SkewPoly, theta: Optional[RingMap] = None) -> ModuleThetaCode:
    return ModuleThetaCode(g, f, theta if theta is not None else g.theta)


def _span(A: FiniteRing, gens: Sequence[Sequence[int]]) -> np.ndarray:
    n = len(gens[0])
    words = np.zeros((1, n), dtype=np.uint8)
    words[0, :] = A.zero
    scalars = np.arange(A.order)
    for g in gens:
        garr = np.array(g, dtype=np.uint8)
        mult = A.mul[np.ix_(scalars, garr)]  # (order, n): a*g
        words = A.add[words[:, None, :], mult[None, :, :]].reshape(-1, n)
        words = dedupe_rows(words)
    return words


def _iter_free_span(
    A: FiniteRing, gens: Sequence[Sequence[int]], chunk: int, budget: int
) -> Iterator[np.ndarray]:
    k = len(gens)
    n = len(gens[0])
    total = A.order**k
    if total > budget:
        raise BudgetExceeded(total, budget, "free span enumeration")
    rows = np.array(gens, dtype=np.uint8)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = mixed_radix_digits(codes, A.order, k)
        X = np.full((codes.shape[0], n), A.zero, dtype=np.uint8)
        for j in range(k):
            X = A.add[X, A.mul[digits[:, j][:, None], rows[j][None, :]]]
        yield X


def form_value(A: FiniteRing, sigma: RingMap, x: Sequence[int], y: Sequence[int]) -> int:
    acc = A.zero
    for xi, yi in zip(x, y):
        acc = A.add_el(acc, A.mul_el(int(xi), int(sigma.perm[yi])))
    return acc


def _require_involution(A: FiniteRing, sigma: Optional[RingMap]) -> RingMap:
    if sigma is None:
        sigma = identity_map(A)
    if not sigma.is_involution():
        raise NotInvolution("dual computations need an involution")
    return sigma


def dual_code(
    C: LinearCode,
    sigma: Optional[RingMap] = None,
    budget: int = DEFAULT_BUDGET,
    audit_full_span: bool = False,
) -> LinearCode:
    """All words orthogonal to the code under the sigma-hermitian form.

    Checks candidates against the generators only (sufficient by
    sesquilinearity); audit_full_span re-checks against every codeword.
    Brute scan within budget; field alphabets fall back to kernel
    elimination for larger spaces.
    """
    A = C.ring
    sigma = _require_involution(A, sigma)
    total = A.order**C.n
    if total <= budget:
        words = _dual_brute(C, sigma, budget)
        if audit_full_span:
            full = LinearCode(A, C.n, [tuple(int(c) for c in w) for w in C.codewords(budget)])
            slow = _dual_brute(full, sigma, budget)
            if words.shape != slow.shape or not (words == slow).all():
                raise ConfigError("generator-only dual disagrees with full-span audit")
        gens = _extract_generators(A, words)
        return LinearCode(A, C.n, gens, words=words)
    if all(A.is_unit(a) for a in A.elements() if a != A.zero):
        gens = _field_kernel(
            A, np.array(C.gens, dtype=np.uint8) if C.gens else np.zeros((0, C.n), dtype=np.uint8), sigma
        )
        code = LinearCode(A, C.n, gens, free=True)
        return code
    raise BudgetExceeded(total, budget, "dual scan |A|^n")


def _dual_brute(C: LinearCode, sigma: RingMap, budget: int) -> np.ndarray:
    A = C.ring
    n = C.n
    total = A.order**n
    keep: List[np.ndarray] = []
    sig_gens = [tuple(int(sigma.perm[c]) for c in g) for g in C.gens]
    chunk = 1 << 20
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        cand = mixed_radix_digits(codes, A.order, n)
        ok = np.ones(codes.shape[0], dtype=bool)
        for g in sig_gens:
            acc = np.full(codes.shape[0], A.zero, dtype=np.uint8)
            for i, gi in enumerate(g):
                acc = A.add[acc, A.mul[cand[:, i], gi]]
            ok &= acc == A.zero
        keep.append(cand[ok])
    words = np.concatenate(keep, axis=0) if keep else np.zeros((0, n), dtype=np.uint8)
    return dedupe_rows(words)


def _extract_generators(A: FiniteRing, words: np.ndarray) -> List[Tuple[int, ...]]:
    """Greedy generating subset of a (closed) set of words."""
    n = words.shape[1]
    gens: List[Tuple[int, ...]] = []
    span = np.zeros((1, n), dtype=np.uint8)
    span[0, :] = A.zero
    target = words.shape[0]
    if target == 1:
        return gens
    in_span = rows_in(words, span)
    while span.shape[0] != target:
        w = words[~in_span][0]
        gens.append(tuple(int(c) for c in w))
        mult = A.mul[np.arange(A.order)[:, None], w[None, :]]
        span = dedupe_rows(
            A.add[span[:, None, :], mult[None, :, :]].reshape(-1, n)
        )
        in_span = rows_in(words, span)
    return gens


def _field_kernel(
    A: FiniteRing, gens: np.ndarray, sigma: RingMap
) -> List[Tuple[int, ...]]:
    """Kernel basis of v . sigma(G)^T = 0 over a field alphabet."""
    n = gens.shape[1] if gens.size else 0
    M = sigma.perm[gens] if gens.size else gens
    rows = [list(int(c) for c in r) for r in M]
    piv_cols: List[int] = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != A.zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = A.inv_el(rows[r][c])
        rows[r] = [A.mul_el(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != A.zero:
                f = rows[i][c]
                rows[i] = [
                    A.sub_el(x, A.mul_el(f, y)) for x, y in zip(rows[i], rows[r])
                ]
        piv_cols.append(c)
        r += 1
    free_cols = [c for c in range(n) if c not in piv_cols]
    out = []
    for fc in free_cols:
        v = [A.zero] * n
        v[fc] = A.one
        for ri, pc in enumerate(piv_cols):
            v[pc] = A.neg_el(rows[ri][fc])
        out.append(tuple(v))
    return out


def is_self_orthogonal(C: LinearCode, sigma: Optional[RingMap] = None) -> bool:
    A = C.ring
    sigma = _require_involution(A, sigma)
    for g1 in C.gens:
        for g2 in C.gens:
            if form_value(A, sigma, g1, g2) != A.zero:
                return False
    return True


def is_self_dual(
    C: LinearCode, sigma: Optional[RingMap] = None, budget: int = DEFAULT_BUDGET
) -> bool:
    """Self-orthogonality plus the Frobenius cardinality certificate.

    Over non-Frobenius alphabets falls back to full set equality with the
    computed dual.
    """
    A = C.ring
    sigma = _require_involution(A, sigma)
    if not is_self_orthogonal(C, sigma):
        return False
    if ring_is_frobenius(A):
        return C.size(budget) ** 2 == A.order**C.n
    D = dual_code(C, sigma, budget)
    cw = C.codewords(budget)
    dw = D.codewords(budget)
    return cw.shape == dw.shape and bool((cw == dw).all())


# ---------------------------------------------------------------------------
# component-map images


def phi_image(C: ModuleThetaCode, basis: ModuleBasis) -> LinearCode:
    """Image code over R with rows phi(v_i * X^j g), j-major then i."""
    A = C.ring
    if basis.A is not A:
        raise ConfigError("basis belongs to a different ring")
    rows = []
    for j in range(C.k):
        base_row = C.gens[j]
        for v in basis.vecs:
            word = [A.mul_el(v, c) for c in base_row]
            rows.append(basis.phi(word))
    return LinearCode(basis.R_ring, basis.r * C.n, rows, free=True)


def phi_image_set(words: np.ndarray, basis: ModuleBasis) -> np.ndarray:
    return dedupe_rows(basis.phi_rows(words))


# ---------------------------------------------------------------------------
# weights


@dataclass
class WeightProfile:
    metric: str
    min_distance: int
    distribution: List[int]

    def nonzero_terms(self) -> List[Tuple[int, int]]:
        return [(w, c) for w, c in enumerate(self.distribution) if c and w]


def weight_profile(
    C: LinearCode,
    metric: str = "hamming",
    budget: int = DEFAULT_BUDGET,
    chunk: int = 1 << 18,
) -> WeightProfile:
    A = C.ring
    if metric == "hamming":
        per_el = (np.arange(A.order) != A.zero).astype(np.int64)
        maxw = C.n
    elif metric == "lee":
        if A.lee_weights is None:
            raise LeeUndefined(f"{A.name} has no designated Lee structure")
        per_el = A.lee_weights.astype(np.int64)
        maxw = int(per_el.max()) * C.n
    else:
        raise ConfigError(f"unknown metric {metric!r}")
    hist = np.zeros(maxw + 1, dtype=np.int64)
    for X in C.iter_words(chunk=chunk, budget=budget):
        w = per_el[X].sum(axis=1)
        hist += np.bincount(w, minlength=maxw + 1)
    nz = np.nonzero(hist[1:])[0]
    dmin = int(nz[0]) + 1 if nz.size else 0
    return WeightProfile(metric, dmin, hist.tolist())


def classify_binary_type(
    C: LinearCode, budget: int = DEFAULT_BUDGET, check_self_dual: bool = True
) -> str:
    if C.ring.order != 2:
        raise NotBinary("type classification is for binary codes")
    if check_self_dual and not is_self_dual(C, budget=budget):
        raise NotSelfDual("type classification is for self-dual codes")
    prof = weight_profile(C, "hamming", budget)
    weights = [w for w, c in enumerate(prof.distribution) if c]
    return "II" if all(w % 4 == 0 for w in weights) else "I"


# ---------------------------------------------------------------------------
# duality-preservation verdicts


@dataclass
class DualityReport:
    hypotheses: Dict[str, bool]
    method: str  # "set-exact" | "certificate" | "skipped"
    equal: Optional[bool] = None
    lhs_size: Optional[int] = None
    rhs_size: Optional[int] = None
    code_size: Optional[int] = None
    dual_size: Optional[int] = None
    alphabet_power: Optional[int] = None
    detail: str = ""

    @property
    def hypotheses_met(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def cardinality_ok(self) -> Optional[bool]:
        if self.code_size is None or self.dual_size is None:
            return None
        return self.code_size * self.dual_size == self.alphabet_power


def verify_duality_preservation(
    C: LinearCode,
    basis: ModuleBasis,
    sigma: RingMap,
    group: Optional[MapGroup] = None,
    budget: int = DEFAULT_BUDGET,
) -> DualityReport:
    """Compare phi(dual(C)) with dual(phi(C)) and report the hypothesis jacket.

    Both sides are computed set-exactly when the scan fits the budget; for
    self-dual codes over Frobenius alphabets beyond it, the verdict uses
    the self-orthogonality + cardinality certificate.
    """
    from .bases import classify_basis

    A = C.ring
    R_ring = basis.R_ring
    hyp: Dict[str, bool] = {}
    hyp["sigma_involution"] = sigma.is_involution()
    hyp["sigma_preserves_R"] = sigma.preserves(basis.R.elements)
    hyp["A_frobenius"] = ring_is_frobenius(A)
    hyp["R_frobenius"] = ring_is_frobenius(R_ring)
    psd = False
    sym_ok = False
    route = []
    if group is not None:
        try:
            cls = classify_basis(basis, sigma, group)
            psd = bool(cls.pseudo_self_dual)
            if psd:
                route.append("pseudo-self-dual")
        except Exception as exc:
            route.append(f"psd route unavailable ({type(exc).__name__})")
    try:
        cls_sym = classify_basis(basis)
        sym_ok = bool(cls_sym.symmetric) and all(
            int(sigma.perm[v]) == v for v in basis.vecs
        )
        if sym_ok:
            route.append("symmetric with sigma-fixed elements")
    except Exception:
        sym_ok = False
    hyp["basis_duality_preserving"] = psd or sym_ok

    report = DualityReport(hypotheses=hyp, method="skipped", detail="; ".join(route))
    total = A.order**C.n
    if total <= budget:
        D = dual_code(C, sigma, budget)
        dw = D.codewords(budget)
        lhs = phi_image_set(dw, basis)
        cw = C.codewords(budget)
        img_words = phi_image_set(cw, basis)
        img_gens = _extract_generators(R_ring, img_words)
        img = LinearCode(R_ring, basis.r * C.n, img_gens, words=img_words)
        sigma_R = RingMap(
            R_ring, sigma.restrict(basis.to_parent), "automorphism"
        )
        rhs = dual_code(img, sigma_R, budget).codewords(budget)
        report.method = "set-exact"
        report.equal = lhs.shape == rhs.shape and bool((lhs == rhs).all())
        report.lhs_size = int(lhs.shape[0])
        report.rhs_size = int(rhs.shape[0])
        report.code_size = int(cw.shape[0])
        report.dual_size = int(dw.shape[0])
        report.alphabet_power = total
        return report
    # certificate route for self-dual codes
    if is_self_orthogonal(C, sigma) and ring_is_frobenius(A) and ring_is_frobenius(R_ring):
        size = C.size(budget)
        if size * size == total:
            img = (
                phi_image(C, basis)
                if isinstance(C, ModuleThetaCode)
                else None
            )
            if img is not None:
                sigma_R = RingMap(
                    R_ring, sigma.restrict(basis.to_parent), "automorphism"
                )
                report.method = "certificate"
                img_size = img.size(budget)
                report.equal = (
                    is_self_orthogonal(img, sigma_R)
                    and img_size * img_size == R_ring.order**img.n
                )
                report.code_size = size
                report.dual_size = size
                report.alphabet_power = total
                report.detail = (
                    "self-dual certificate: image self-orthogonality plus "
                    "Frobenius cardinality; " + "; ".join(route)
                )
                return report
    report.detail = (
        f"scan needs {total} candidates, budget {budget}; " + "; ".join(route)
    )
    return report
