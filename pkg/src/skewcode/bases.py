"""Free-module bases of a ring over a subring and their duality classes.

A basis is an ordered tuple (v_1..v_r) of elements of A that freely spans A
as a left R-module.  Classification covers trace-orthogonal /
pseudo-self-dual / self-dual (via the trace of the Gram matrix over an
automorphism subgroup) and symmetric (right-multiplication matrices all
symmetric).  Counting is over unordered sets; coordinates fix the given
order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ._util import batched_inverse_mod_p, mixed_radix_digits
from .errors import (
    ConfigError,
    NotFreeRank,
    NotInvolution,
    NotTruncatedPolyRing,
    PhiDoesNotPreserveR,
    RNotCentral,
    RNotFixedByH,
    SigmaDoesNotPreserveR,
)
from .morphisms import MapGroup, RingMap, fixed_subring, trace_table
from .rings import FiniteRing, SubringHandle

_subring_cache: Dict[Tuple[int, Tuple[int, ...]], Tuple[FiniteRing, np.ndarray]] = {}
_bases_cache: Dict[Tuple[int, Tuple[int, ...]], List[Tuple[int, ...]]] = {}


def subring_ring(R: SubringHandle) -> Tuple[FiniteRing, np.ndarray]:
    key = (id(R.parent), R.elements)
    if key not in _subring_cache:
        _subring_cache[key] = R.as_ring()
    return _subring_cache[key]


def free_rank(A: FiniteRing, R: SubringHandle) -> int:
    r = 0
    size = 1
    while size < A.order:
        size *= R.order
        r += 1
    if size != A.order:
        raise NotFreeRank(f"|A|={A.order} is not a power of |R|={R.order}")
    return r


class ModuleBasis:
    """Ordered free left R-basis of A with precomputed coordinate maps."""

    def __init__(self, A: FiniteRing, R: SubringHandle, vecs: Sequence[int]):
        if R.parent is not A:
            raise ConfigError("subring handle belongs to a different ring")
        self.A = A
        self.R = R
        self.vecs = tuple(int(v) for v in vecs)
        self.r = len(self.vecs)
        if R.order**self.r != A.order:
            raise NotFreeRank(
                f"{self.r} vectors cannot freely span |A|={A.order} over |R|={R.order}"
            )
        self.R_ring, self.to_parent = subring_ring(R)
        n_comb = R.order**self.r
        digits = mixed_radix_digits(np.arange(n_comb), R.order, self.r)
        elems = np.zeros(n_comb, dtype=np.uint8)
        for j, v in enumerate(self.vecs):
            scal = A.mul[self.to_parent, v]  # c*v for each c in R
            elems = A.add[elems, scal[digits[:, j]]]
        if np.unique(elems).size != A.order:
            raise ConfigError(
                f"{[A.label(v) for v in self.vecs]} is not a free R-basis of {A.name}"
            )
        self.coords_sub = np.zeros((A.order, self.r), dtype=np.uint8)
        self.coords_sub[elems] = digits
        self.coords_parent = self.to_parent[self.coords_sub].astype(np.uint8)

    # -- component maps ------------------------------------------------

    def rho(self, a: int) -> Tuple[int, ...]:
        """Coordinates of a in R_ring indices."""
        return tuple(int(c) for c in self.coords_sub[a])

    def rho_parent(self, a: int) -> Tuple[int, ...]:
        """Coordinates of a as elements of A lying in R."""
        return tuple(int(c) for c in self.coords_parent[a])

    def rho_inv(self, coords: Sequence[int]) -> int:
        A = self.A
        acc = A.zero
        for c, v in zip(coords, self.vecs):
            acc = A.add_el(acc, A.mul_el(int(self.to_parent[c]), v))
        return acc

    def phi(self, word: Sequence[int]) -> Tuple[int, ...]:
        """Componentwise expansion of an A-word into R_ring coordinates."""
        return tuple(int(c) for a in word for c in self.coords_sub[a])

    def phi_parent(self, word: Sequence[int]) -> Tuple[int, ...]:
        return tuple(int(c) for a in word for c in self.coords_parent[a])

    def phi_rows(self, words: np.ndarray) -> np.ndarray:
        """Vectorized phi of an (N, n) array, result (N, n*r) in R_ring indices."""
        return self.coords_sub[words].reshape(words.shape[0], -1)

    def phi_inv(self, coords: Sequence[int]) -> Tuple[int, ...]:
        if len(coords) % self.r:
            raise ConfigError("coordinate word length not a multiple of the rank")
        return tuple(
            self.rho_inv(coords[i : i + self.r])
            for i in range(0, len(coords), self.r)
        )

    def labels(self) -> Tuple[str, ...]:
        return tuple(self.A.label(v) for v in self.vecs)

    def __repr__(self) -> str:
        return f"ModuleBasis({self.A.name}, {list(self.labels())})"


@dataclass
class GramMatrix:
    """entries[i][j] = v_i * sigma(v_j), stored as parent indices."""

    basis: ModuleBasis
    sigma: RingMap
    entries: np.ndarray


@dataclass
class MulMatrix:
    """Right-multiplication matrix of an element in a basis, over R."""

    basis: ModuleBasis
    element: int
    rows: np.ndarray  # (r, r) R_ring indices

    def is_symmetric(self) -> bool:
        return bool((self.rows == self.rows.T).all())

    def labels(self) -> List[List[str]]:
        R = self.basis.R_ring
        return [[R.label(int(c)) for c in row] for row in self.rows]


@dataclass
class BasisClassification:
    trace_orthogonal: Optional[bool] = None
    pseudo_self_dual: Optional[bool] = None
    self_dual: Optional[bool] = None
    symmetric: Optional[bool] = None
    gamma: Optional[int] = None


def hermitian_form(sigma: RingMap, x: Sequence[int], y: Sequence[int]) -> int:
    """Standard sigma-sesquilinear form sum x_i sigma(y_i)."""
    if not sigma.is_involution():
        raise NotInvolution("form requires an involution")
    A = sigma.ring
    acc = A.zero
    for xi, yi in zip(x, y):
        acc = A.add_el(acc, A.mul_el(xi, int(sigma.perm[yi])))
    return acc


def gram_matrix(basis: ModuleBasis, sigma: RingMap) -> GramMatrix:
    if not sigma.is_involution():
        raise NotInvolution("Gram matrix requires an involution")
    if not sigma.preserves(basis.R.elements):
        raise SigmaDoesNotPreserveR(f"sigma does not fix {basis.R.elements} setwise")
    A = basis.A
    v = np.array(basis.vecs)
    entries = A.mul[np.ix_(v, sigma.perm[v])]
    return GramMatrix(basis, sigma, entries)


def trace_sigma_table(sigma: RingMap, H: MapGroup) -> np.ndarray:
    """T[a, b] = Tr_H(a * sigma(b))."""
    A = sigma.ring
    tr = trace_table(H)
    return tr[A.mul[:, sigma.perm]]


def mul_matrix(basis: ModuleBasis, a: int) -> MulMatrix:
    A = basis.A
    rows = basis.coords_sub[A.mul[np.array(basis.vecs), a]]
    return MulMatrix(basis, a, rows)


def _zero_divisor_mask(A: FiniteRing) -> np.ndarray:
    mask = np.zeros(A.order, dtype=bool)
    nz = [a for a in A.elements() if a != A.zero]
    for a in nz:
        if (A.mul[a, nz] == A.zero).any() or (A.mul[nz, a] == A.zero).any():
            mask[a] = True
    mask[A.zero] = True
    return mask


def classify_basis(
    basis: ModuleBasis,
    sigma: Optional[RingMap] = None,
    group: Optional[MapGroup] = None,
    predicates: Optional[Sequence[str]] = None,
) -> BasisClassification:
    """Evaluate duality-class predicates for a basis.

    Trace predicates need sigma and group with R inside the fixed ring;
    the symmetric predicate needs R central.  Explicitly requested
    predicates with failing preconditions raise; by default each predicate
    is evaluated when its precondition holds.
    """
    A, R = basis.A, basis.R
    want_trace = predicates is None or any(
        p in predicates for p in ("trace_orthogonal", "pseudo_self_dual", "self_dual")
    )
    want_sym = predicates is None or "symmetric" in predicates
    out = BasisClassification()

    central = R.element_set <= set(A.center())
    if want_sym:
        if not central:
            if predicates is not None:
                raise RNotCentral(f"R is not central in {A.name}")
        else:
            out.symmetric = all(
                mul_matrix(basis, v).is_symmetric() for v in basis.vecs
            )

    if want_trace and (sigma is not None or predicates is not None):
        if sigma is None or group is None:
            if predicates is not None:
                raise ConfigError("trace predicates need sigma and group")
            return out
        if not sigma.is_involution():
            raise NotInvolution("sigma must be an involution")
        if not sigma.preserves(R.elements):
            raise SigmaDoesNotPreserveR("sigma must preserve R setwise")
        fixed = fixed_subring(group).element_set
        if not R.element_set <= fixed:
            raise RNotFixedByH("R must lie in the fixed ring of H")
        T = trace_sigma_table(sigma, group)
        _classify_trace(out, basis, T, _zero_divisor_mask(A))
    return out


def _classify_trace(
    out: BasisClassification,
    basis: ModuleBasis,
    T: np.ndarray,
    zd_mask: np.ndarray,
):
    A, R = basis.A, basis.R
    v = np.array(basis.vecs)
    G = T[np.ix_(v, v)]
    off = G[~np.eye(len(v), dtype=bool)]
    diag = np.diag(G)
    out.trace_orthogonal = bool(
        (off == A.zero).all() and (diag != A.zero).all()
    )
    out.pseudo_self_dual = False
    out.self_dual = False
    if not out.trace_orthogonal:
        return
    if (diag == diag[0]).all():
        gamma = int(diag[0])
        r_els = np.array(sorted(R.elements))
        commutes = (A.mul[gamma, r_els] == A.mul[r_els, gamma]).all()
        if not zd_mask[gamma] and commutes:
            out.gamma = gamma
            out.pseudo_self_dual = True
            out.self_dual = gamma == A.one


# ---------------------------------------------------------------------------
# enumeration and counting


def enumerate_basis_sets(A: FiniteRing, R: SubringHandle) -> List[Tuple[int, ...]]:
    """All unordered free R-bases of A, each as an ascending index tuple."""
    key = (id(A), R.elements)
    if key in _bases_cache:
        return _bases_cache[key]
    r = free_rank(A, R)
    R_ring, to_parent = subring_ring(R)
    out: List[Tuple[int, ...]] = []

    def grow(prefix: Tuple[int, ...], vals: np.ndarray, start: int):
        if len(prefix) == r:
            out.append(prefix)
            return
        for v in range(start, A.order):
            scal = A.mul[to_parent, v]
            new = A.add[vals[None, :], scal[:, None]].ravel()
            if np.unique(new).size == new.size:
                grow(prefix + (v,), new, v + 1)

    grow((), np.array([A.zero], dtype=np.uint8), 0)
    _bases_cache[key] = out
    return out


def enumerate_bases(A: FiniteRing, R: SubringHandle) -> Iterator[ModuleBasis]:
    """Stream of bases in canonical (ascending element index) order."""
    for vecs in enumerate_basis_sets(A, R):
        yield ModuleBasis(A, R, vecs)


CLASS_ALIASES = {
    "trace-orth": "trace_orthogonal",
    "trace_orthogonal": "trace_orthogonal",
    "psd": "pseudo_self_dual",
    "pseudo_self_dual": "pseudo_self_dual",
    "self-dual": "self_dual",
    "self_dual": "self_dual",
    "symmetric": "symmetric",
}


def count_bases_by_class(
    A: FiniteRing,
    R: SubringHandle,
    sigma: Optional[RingMap] = None,
    group: Optional[MapGroup] = None,
    cls: str = "pseudo_self_dual",
    with_witnesses: bool = False,
) -> Tuple[int, Optional[int], List[Tuple[int, ...]]]:
    """Count unordered bases in a duality class.

    Returns (count, gamma, witnesses); gamma is the common diagonal trace
    value when the class fixes one (single-valued across hits, else None).
    """
    cls = CLASS_ALIASES.get(cls)
    if cls is None:
        raise ConfigError(f"unknown basis class")
    if cls == "symmetric":
        central = R.element_set <= set(A.center())
        if not central:
            raise RNotCentral(f"R is not central in {A.name}")
        fast = _try_fast_symmetric(A, R, with_witnesses)
        if fast is not None:
            count, wits = fast
            return count, None, wits
        count = 0
        wits: List[Tuple[int, ...]] = []
        for vecs in enumerate_basis_sets(A, R):
            b = ModuleBasis(A, R, vecs)
            if all(mul_matrix(b, v).is_symmetric() for v in vecs):
                count += 1
                if with_witnesses:
                    wits.append(vecs)
        return count, None, wits

    if sigma is None or group is None:
        raise ConfigError("trace classes need sigma and group")
    if not sigma.is_involution():
        raise NotInvolution("sigma must be an involution")
    if not sigma.preserves(R.elements):
        raise SigmaDoesNotPreserveR("sigma must preserve R setwise")
    if not R.element_set <= fixed_subring(group).element_set:
        raise RNotFixedByH("R must lie in the fixed ring of H")
    T = trace_sigma_table(sigma, group)
    zd = _zero_divisor_mask(A)
    r_els = np.array(sorted(R.elements))
    count = 0
    gammas = set()
    wits = []
    for vecs in enumerate_basis_sets(A, R):
        v = np.array(vecs)
        G = T[np.ix_(v, v)]
        off_ok = (G[~np.eye(len(v), dtype=bool)] == A.zero).all()
        diag = np.diag(G)
        if not off_ok or (diag == A.zero).any():
            continue
        if cls == "trace_orthogonal":
            hit = True
        else:
            if not (diag == diag[0]).all():
                continue
            g = int(diag[0])
            psd = (
                not zd[g]
                and bool((A.mul[g, r_els] == A.mul[r_els, g]).all())
            )
            if cls == "pseudo_self_dual":
                hit = psd
            else:
                hit = psd and g == A.one
            if hit:
                gammas.add(g)
        if hit:
            count += 1
            if with_witnesses:
                wits.append(vecs)
    gamma = gammas.pop() if len(gammas) == 1 else None
    return count, gamma, wits


def _try_fast_symmetric(
    A: FiniteRing, R: SubringHandle, with_witnesses: bool
) -> Optional[Tuple[int, List[Tuple[int, ...]]]]:
    """Batched symmetric count when R is the prime field and A is large.

    Bases are then exactly the F_p-vector-space bases; the check is full
    symmetry of the structure tensor in the candidate basis.
    """
    p = R.order
    if A.char != p or not A.commutative:
        return None
    if any(p % k == 0 for k in range(2, p)):
        return None  # prime fields only
    prime = {A.zero}
    acc = A.zero
    for _ in range(p - 1):
        acc = A.add_el(acc, A.one)
        prime.add(acc)
    if R.element_set != prime:
        return None
    r = free_rank(A, R)
    if A.order < 64 and not with_witnesses:
        return None  # generic path is fine and exercised more
    # coordinates of every element over a greedy reference F_p-basis of (A,+)
    span_el = np.array([A.zero], dtype=np.int64)
    span_co = np.zeros((1, 0), dtype=np.int64)
    while span_el.size < A.order:
        have = np.zeros(A.order, dtype=bool)
        have[span_el] = True
        g = int(np.argmin(have))
        mults = [A.zero]
        for _ in range(p - 1):
            mults.append(A.add_el(mults[-1], g))
        mults_arr = np.array(mults, dtype=np.int64)
        span_el = A.add[mults_arr[:, None], span_el[None, :]].ravel().astype(np.int64)
        k = span_co.shape[1]
        new_co = np.zeros((p, span_co.shape[0], k + 1), dtype=np.int64)
        new_co[:, :, :k] = span_co[None, :, :]
        new_co[:, :, k] = np.arange(p)[:, None]
        span_co = new_co.reshape(-1, k + 1)
    if span_co.shape[1] != r:
        return None
    X = np.zeros((A.order, r), dtype=np.int64)
    X[span_el] = span_co
    # all independent r-subsets via rank backtracking over the span mask
    subsets: List[Tuple[int, ...]] = []
    span0 = np.zeros(A.order, dtype=bool)
    span0[A.zero] = True

    def grow(prefix: Tuple[int, ...], span_mask: np.ndarray, start: int):
        if len(prefix) == r:
            subsets.append(prefix)
            return
        for v in range(start, A.order):
            if span_mask[v]:
                continue
            new_mask = span_mask.copy()
            idx = np.where(span_mask)[0]
            cur = idx
            for _ in range(1, p):
                cur = A.add[cur, v]
                new_mask[cur] = True
            grow(prefix + (v,), new_mask, v + 1)

    grow((), span0, 0)
    cand = np.array(subsets, dtype=np.int64)
    count = 0
    wits: List[Tuple[int, ...]] = []
    chunk = 65536
    mulT = A.mul
    for s in range(0, cand.shape[0], chunk):
        c = cand[s : s + chunk]
        Xb = X[c]  # (B, r, r) rows = coords of basis vectors
        inv, ok = batched_inverse_mod_p(Xb, p)
        prods = mulT[c[:, :, None], c[:, None, :]]  # (B, r, r) element indices
        Y = X[prods]  # (B, r, r, r) coords of v_i v_j
        gam = np.einsum("bijk,bkl->bijl", Y, inv) % p
        sym = (gam == gam.transpose(0, 3, 2, 1)).all(axis=(1, 2, 3)) & ok
        count += int(sym.sum())
        if with_witnesses:
            for row in c[sym]:
                wits.append(tuple(int(x) for x in row))
    return count, wits


# ---------------------------------------------------------------------------
# basis transforms and the truncated-polynomial criterion


def transform_basis(
    basis: ModuleBasis, sigma: RingMap, phi: RingMap
) -> ModuleBasis:
    """The basis {phi(sigma(v))}, order preserved."""
    if not phi.is_involution():
        raise NotInvolution("phi must be an involution")
    if not phi.preserves(basis.R.elements):
        raise PhiDoesNotPreserveR("phi must preserve R setwise")
    new = tuple(int(phi.perm[sigma.perm[v]]) for v in basis.vecs)
    return ModuleBasis(basis.A, basis.R, new)


def alfaro_condition(basis: ModuleBasis) -> bool:
    """Change-of-basis test for truncated polynomial rings over their field.

    B's rows are the coordinates of the standard powers 1, x, .., x^{r-1}
    in the tested basis; the test is B.B^T upper anti-triangular with each
    anti-diagonal constant.
    """
    A = basis.A
    pres = A.presentation
    if pres.get("kind") != "poly_quotient":
        raise NotTruncatedPolyRing(f"{A.name} is not F_q[x]/(x^r)")
    rel = pres["relation"]
    base: FiniteRing = pres["base_ring"]
    if pres.get("twisted"):
        raise NotTruncatedPolyRing("twisted quotients not supported here")
    if any(c != base.zero for c in rel[:-1]):
        raise NotTruncatedPolyRing("relation is not a pure power")
    if not all(base.is_unit(a) for a in base.elements() if a != base.zero):
        raise NotTruncatedPolyRing("base is not a field")
    q = base.order
    embedded = set(range(q))  # digit packing puts base constants first
    if basis.R.element_set != embedded:
        raise NotTruncatedPolyRing("R must be the embedded coefficient field")
    r = basis.r
    x = A.symbols[pres["var"]]
    Rr = basis.R_ring
    B = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        B[i] = basis.coords_sub[A.pow_el(x, i)]
    # BB^T over the subring field
    BBt = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            acc = Rr.zero
            for k in range(r):
                acc = Rr.add_el(acc, Rr.mul_el(int(B[i, k]), int(B[j, k])))
            BBt[i, j] = acc
    for s in range(2 * r - 1):
        vals = [int(BBt[i, s - i]) for i in range(r) if 0 <= s - i < r]
        if s > r - 1:
            if any(v != Rr.zero for v in vals):
                return False
        else:
            if any(v != vals[0] for v in vals):
                return False
    return True


def form_via_gram_blocks(
    basis: ModuleBasis, sigma: RingMap, x: Sequence[int], y: Sequence[int]
) -> int:
    """Evaluate Phi(x) . blockdiag(M) . sigma(Phi(y))^T inside A."""
    A = basis.A
    M = gram_matrix(basis, sigma).entries
    px = basis.phi_parent(x)
    py = basis.phi_parent(y)
    r = basis.r
    acc = A.zero
    for blk in range(len(x)):
        for i in range(r):
            for j in range(r):
                t = A.mul_el(px[blk * r + i], int(M[i, j]))
                t = A.mul_el(t, int(sigma.perm[py[blk * r + j]]))
                acc = A.add_el(acc, t)
    return acc
