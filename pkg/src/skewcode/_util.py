"""Shared table-level helpers: map extension, row dedup, F_p linear algebra."""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np


def extend_ring_map(
    add: np.ndarray,
    mul: np.ndarray,
    neg: np.ndarray,
    pairs: Sequence[Tuple[int, int]],
    *,
    anti: bool = False,
    img_add: Optional[np.ndarray] = None,
    img_mul: Optional[np.ndarray] = None,
    img_neg: Optional[np.ndarray] = None,
) -> Optional[np.ndarray]:
    """Extend seed assignments to a map respecting add/neg/mul, or None on conflict.

    Closes the seed set under +, -, * while propagating images; the domain
    tables and (optionally distinct) codomain tables are Cayley tables.
    With anti=True products map reversed: f(ab) = f(b)f(a).  The result covers
    exactly the subring generated by the seeds; callers wanting a total map
    must seed with a generating set and check for -1 entries.
    """
    if img_add is None:
        img_add, img_mul, img_neg = add, mul, neg
    n = add.shape[0]
    img = np.full(n, -1, dtype=np.int32)
    frontier: List[int] = []
    for src, dst in pairs:
        if img[src] == -1:
            img[src] = dst
            frontier.append(src)
        elif img[src] != dst:
            return None
    known: List[int] = []
    while frontier:
        e = frontier.pop()
        fe = img[e]
        ne = int(neg[e])
        cand = [(ne, int(img_neg[fe]))]
        for d in known:
            fd = img[d]
            cand.append((int(add[e, d]), int(img_add[fe, fd])))
            if anti:
                cand.append((int(mul[e, d]), int(img_mul[fd, fe])))
                cand.append((int(mul[d, e]), int(img_mul[fe, fd])))
            else:
                cand.append((int(mul[e, d]), int(img_mul[fe, fd])))
                cand.append((int(mul[d, e]), int(img_mul[fd, fe])))
        cand.append((int(add[e, e]), int(img_add[fe, fe])))
        cand.append((int(mul[e, e]), int(img_mul[fe, fe])))
        known.append(e)
        for src, dst in cand:
            cur = img[src]
            if cur == -1:
                img[src] = dst
                frontier.append(src)
            elif cur != dst:
                return None
    return img


def dedupe_rows(arr: np.ndarray) -> np.ndarray:
    """Unique rows of a 2-D uint8 array, lexicographically sorted."""
    if arr.shape[0] <= 1:
        return arr
    a = np.ascontiguousarray(arr)
    packed = a.view([("", a.dtype)] * a.shape[1]).ravel()
    _, idx = np.unique(packed, return_index=True)
    return a[idx]


def rows_in(sub: np.ndarray, universe: np.ndarray) -> np.ndarray:
    """Boolean mask: which rows of `sub` occur among the rows of `universe`."""
    if universe.shape[0] == 0:
        return np.zeros(sub.shape[0], dtype=bool)
    u = np.ascontiguousarray(universe)
    s = np.ascontiguousarray(sub)
    dt = [("", u.dtype)] * u.shape[1]
    pu = np.sort(u.view(dt).ravel())
    ps = s.view(dt).ravel()
    pos = np.searchsorted(pu, ps)
    pos = np.clip(pos, 0, len(pu) - 1)
    return pu[pos] == ps


def mixed_radix_digits(codes: np.ndarray, base: int, width: int) -> np.ndarray:
    """Little-endian base-`base` digits of each code, shape (len(codes), width)."""
    out = np.empty((codes.shape[0], width), dtype=np.uint8)
    c = codes.copy()
    for i in range(width):
        out[:, i] = c % base
        c //= base
    return out


def rref_mod_p(mat: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Row-reduce an integer matrix mod p; returns (rref, pivot column list)."""
    m = (np.asarray(mat, dtype=np.int64) % p).copy()
    rows, cols = m.shape
    piv_cols: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = None
        for i in range(r, rows):
            if m[i, c] % p:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), p - 2, p) if p > 2 else int(m[r, c])
        m[r] = (m[r] * inv) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        piv_cols.append(c)
        r += 1
    return m % p, piv_cols


def batched_inverse_mod_p(mats: np.ndarray, p: int) -> Tuple[np.ndarray, np.ndarray]:
    """Invert a batch of k x k matrices mod p.

    Returns (inverses, ok_mask); rows with singular matrices have ok=False and
    garbage inverse content.  Gauss-Jordan vectorized across the batch.
    """
    b, k, _ = mats.shape
    a = mats.astype(np.int64) % p
    inv = np.tile(np.eye(k, dtype=np.int64), (b, 1, 1))
    ok = np.ones(b, dtype=bool)
    bi = np.arange(b)
    for col in range(k):
        sub = a[:, col:, col] % p
        rel = np.argmax(sub != 0, axis=1)
        has = np.take_along_axis(sub, rel[:, None], axis=1)[:, 0] != 0
        ok &= has
        pr = col + rel
        pr[~ok] = col
        # swap rows col <-> pr
        tmp = a[bi, col].copy()
        a[bi, col] = a[bi, pr]
        a[bi, pr] = tmp
        tmp = inv[bi, col].copy()
        inv[bi, col] = inv[bi, pr]
        inv[bi, pr] = tmp
        pivot = a[:, col, col] % p
        pivot[pivot == 0] = 1
        lut = np.zeros(p, dtype=np.int64)
        for x in np.unique(pivot):
            lut[int(x)] = pow(int(x), p - 2, p)
        scale = lut[pivot]
        a[:, col] = (a[:, col] * scale[:, None]) % p
        inv[:, col] = (inv[:, col] * scale[:, None]) % p
        factor = a[:, :, col].copy()
        factor[:, col] = 0
        a -= factor[:, :, None] * a[:, col][:, None, :]
        inv -= factor[:, :, None] * inv[:, col][:, None, :]
        a %= p
        inv %= p
    return inv, ok


def poly_is_irreducible_mod_p(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p by trial division."""
    c = [x % p for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    d = len(c) - 1
    if d <= 0:
        return False
    if d == 1:
        return True

    def divides(div: List[int]) -> bool:
        rem = c[:]
        dd = len(div) - 1
        inv = pow(div[-1], p - 2, p) if p > 2 else div[-1]
        while len(rem) - 1 >= dd and any(rem):
            shift = len(rem) - 1 - dd
            q = rem[-1] * inv % p
            for i, dv in enumerate(div):
                rem[shift + i] = (rem[shift + i] - q * dv) % p
            while len(rem) > 1 and rem[-1] == 0:
                rem.pop()
        return len(rem) == 1 and rem[0] == 0

    from itertools import product

    for deg in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=deg):
            div = list(tail) + [1]
            if divides(div):
                return False
    return True
