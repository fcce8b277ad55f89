"""Finite unital rings of order <= 256 as explicit Cayley tables.

Every ring is a pair of order x order add/mul index tables plus marked
zero/one and a recorded ring-generating set.  Higher layers work purely on
element indices; labels exist so printed output matches the usual
coordinate notation ("3w+2", "x+1", "[[1,0],[0,1]]").
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ._util import extend_ring_map, poly_is_irreducible_mod_p, rref_mod_p
from .errors import (
    ConfigError,
    InconsistentTables,
    NonMonicRelation,
    OrderTooLarge,
)

MAX_ORDER = 256


class FiniteRing:
    """A finite unital ring on elements 0..order-1."""

    def __init__(
        self,
        name: str,
        add: np.ndarray,
        mul: np.ndarray,
        zero: int,
        one: int,
        labels: Sequence[str],
        generators: Sequence[int] = (),
        presentation: Optional[Mapping] = None,
        symbols: Optional[Mapping[str, int]] = None,
        lee_weights: Optional[Sequence[int]] = None,
        validate: bool = True,
    ):
        add = np.ascontiguousarray(np.asarray(add, dtype=np.uint8))
        mul = np.ascontiguousarray(np.asarray(mul, dtype=np.uint8))
        n = add.shape[0]
        if n > MAX_ORDER:
            raise OrderTooLarge(f"order {n} exceeds cap {MAX_ORDER}")
        if add.shape != (n, n) or mul.shape != (n, n):
            raise InconsistentTables("tables must be square and same-sized")
        self.name = name
        self.order = n
        self.add = add
        self.mul = mul
        self.zero = int(zero)
        self.one = int(one)
        self.labels = tuple(labels)
        if len(self.labels) != n:
            raise InconsistentTables("label count does not match order")
        self.presentation = dict(presentation or {"kind": "explicit"})
        self.symbols = dict(symbols or {})
        if validate:
            audit = _audit_tables(add, mul, self.zero, self.one)
            if not audit.passed:
                raise InconsistentTables(
                    f"{name}: ring axioms fail: {audit.failed_names()}"
                )
        self.neg = np.ascontiguousarray(
            np.argmax(add == self.zero, axis=1).astype(np.uint8)
        )
        self.sub = np.ascontiguousarray(self.add[:, self.neg])
        both = (mul == self.one) & (mul == self.one).T
        self.inv = np.where(both.any(axis=1), np.argmax(both, axis=1), -1).astype(
            np.int16
        )
        self.unit_mask = self.inv >= 0
        self.char = self.add_order(self.one)
        self.generators = tuple(int(g) for g in generators)
        self._label_to_idx = {lab: i for i, lab in enumerate(self.labels)}
        self._commutative: Optional[bool] = None
        self._add_orders: Optional[np.ndarray] = None
        self.lee_weights = (
            np.asarray(lee_weights, dtype=np.int16)
            if lee_weights is not None
            else None
        )
        if (
            self.lee_weights is None
            and self.presentation.get("kind") == "integer_residue"
        ):
            m = self.order
            self.lee_weights = np.minimum(
                np.arange(m), m - np.arange(m)
            ).astype(np.int16)

    # -- scalar helpers ----------------------------------------------------

    def add_el(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def mul_el(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def neg_el(self, a: int) -> int:
        return int(self.neg[a])

    def sub_el(self, a: int, b: int) -> int:
        return int(self.sub[a, b])

    def inv_el(self, a: int) -> int:
        v = int(self.inv[a])
        if v < 0:
            raise ZeroDivisionError(f"{self.label(a)} is not a unit in {self.name}")
        return v

    def is_unit(self, a: int) -> bool:
        return bool(self.unit_mask[a])

    def int_el(self, k: int) -> int:
        """k * 1 as an element."""
        k %= self.char
        acc = self.zero
        for _ in range(k):
            acc = int(self.add[acc, self.one])
        return acc

    def pow_el(self, a: int, k: int) -> int:
        acc = self.one
        for _ in range(k):
            acc = int(self.mul[acc, a])
        return acc

    def add_order(self, a: int) -> int:
        acc = int(a)
        k = 1
        while acc != self.zero:
            acc = int(self.add[acc, a])
            k += 1
            if k > self.order + 1:
                raise InconsistentTables("additive order diverges")
        return k

    def add_orders(self) -> np.ndarray:
        if self._add_orders is None:
            self._add_orders = np.array(
                [self.add_order(a) for a in range(self.order)], dtype=np.int32
            )
        return self._add_orders

    def mult_order(self, a: int) -> int:
        """Multiplicative order of a unit (raises for non-units)."""
        if not self.is_unit(a):
            raise ZeroDivisionError("multiplicative order needs a unit")
        acc = int(a)
        k = 1
        while acc != self.one:
            acc = int(self.mul[acc, a])
            k += 1
        return k

    def nilpotency_index(self, a: int) -> int:
        """Least k with a^k = 0, or 0 if a is not nilpotent."""
        acc = int(a)
        seen = set()
        k = 1
        while acc not in seen:
            if acc == self.zero:
                return k
            seen.add(acc)
            acc = int(self.mul[acc, a])
            k += 1
        return 0

    @property
    def commutative(self) -> bool:
        if self._commutative is None:
            self._commutative = bool((self.mul == self.mul.T).all())
        return self._commutative

    def center(self) -> Tuple[int, ...]:
        mask = (self.mul == self.mul.T).all(axis=1)
        return tuple(int(i) for i in np.where(mask)[0])

    def elements(self) -> range:
        return range(self.order)

    # -- labels ------------------------------------------------------------

    def label(self, a: int) -> str:
        return self.labels[a]

    def parse(self, s: str) -> int:
        s = s.strip().replace(" ", "")
        hit = self._label_to_idx.get(s)
        if hit is not None:
            return hit
        return _structural_parse(self, s)

    def relabel(self, labels: Sequence[str]):
        self.labels = tuple(labels)
        self._label_to_idx = {lab: i for i, lab in enumerate(self.labels)}

    def table_equal(self, other: "FiniteRing") -> bool:
        return (
            self.order == other.order
            and self.zero == other.zero
            and self.one == other.one
            and bool((self.add == other.add).all())
            and bool((self.mul == other.mul).all())
        )

    def dump_dict(self) -> Dict:
        """Canonical JSON-ready dump."""
        return {
            "order": self.order,
            "zero": self.zero,
            "one": self.one,
            "generators": list(self.generators),
            "labels": list(self.labels),
            "add": self.add.tolist(),
            "mul": self.mul.tolist(),
        }

    def __repr__(self) -> str:
        return f"FiniteRing({self.name}, order={self.order})"

    def __hash__(self) -> int:
        return id(self)

    def __eq__(self, other) -> bool:
        return self is other


# ---------------------------------------------------------------------------
# axiom audit


@dataclass
class RingAudit:
    checks: Dict[str, bool]
    failures: Dict[str, tuple]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed_names(self) -> List[str]:
        return [k for k, v in self.checks.items() if not v]


def _audit_tables(add: np.ndarray, mul: np.ndarray, zero: int, one: int) -> RingAudit:
    n = add.shape[0]
    ident = np.arange(n, dtype=np.uint8)
    checks: Dict[str, bool] = {}
    fails: Dict[str, tuple] = {}

    def record(name: str, mask: np.ndarray):
        ok = bool(mask.all())
        checks[name] = ok
        if not ok:
            bad = np.argwhere(~mask)
            fails[name] = tuple(int(x) for x in bad[0])

    record("add_commutative", add == add.T)
    record("add_identity", add[zero] == ident)
    record("add_inverses", (add == zero).any(axis=1))
    record("add_associative", add[add, :] == add[:, add])
    record("mul_identity", (mul[one] == ident) & (mul[:, one] == ident))
    record("mul_associative", mul[mul, :] == mul[:, mul])
    record(
        "left_distributive",
        mul[:, add] == add[mul[:, :, None], mul[:, None, :]],
    )
    record(
        "right_distributive",
        mul[add, :] == add[mul[:, None, :], mul[None, :, :]],
    )
    return RingAudit(checks, fails)


def is_ring(ring: FiniteRing) -> RingAudit:
    """Full ring-axiom audit of a ring's tables."""
    return _audit_tables(ring.add, ring.mul, ring.zero, ring.one)


# ---------------------------------------------------------------------------
# label formatting & parsing


def _format_terms(
    terms: List[Tuple[str, Tuple[int, ...]]], var_names: Sequence[str]
) -> str:
    """Render [(coeff_label, exponent_tuple)] in descending monomial order."""
    if not terms:
        return "0"

    def mono_str(exps: Tuple[int, ...]) -> str:
        parts = []
        for v, e in zip(var_names, exps):
            if e == 0:
                continue
            parts.append(v if e == 1 else f"{v}^{e}")
        return "".join(parts)

    terms = sorted(terms, key=lambda t: (sum(t[1]), t[1]), reverse=True)
    out = []
    for coeff, exps in terms:
        mono = mono_str(exps)
        if not mono:
            out.append(coeff)
        elif coeff == "1":
            out.append(mono)
        elif coeff.isdigit():
            out.append(f"{coeff}{mono}")
        else:
            out.append(f"{coeff}*{mono}")
    return "+".join(out)


_TOKEN = re.compile(r"(\d+)|([A-Za-z])(?:\^(\d+))?|(\*)")


def _structural_parse(ring: FiniteRing, s: str) -> int:
    if s.startswith("[["):
        return _parse_matrix_label(ring, s)
    if not s:
        raise ConfigError(f"empty element label for {ring.name}")
    total = ring.zero
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    term_val: Optional[int] = None
    while i <= len(s):
        if i == len(s) or s[i] in "+-":
            if term_val is None:
                raise ConfigError(f"cannot parse {s!r} in {ring.name}")
            if sign < 0:
                term_val = ring.neg_el(term_val)
            total = ring.add_el(total, term_val)
            if i == len(s):
                break
            sign = -1 if s[i] == "-" else 1
            term_val = None
            i += 1
            continue
        m = _TOKEN.match(s, i)
        if not m:
            raise ConfigError(f"cannot parse {s!r} at column {i} in {ring.name}")
        i = m.end()
        if m.group(4):
            continue
        if m.group(1):
            factor = ring.int_el(int(m.group(1)))
        else:
            sym = m.group(2)
            if sym not in ring.symbols:
                raise ConfigError(f"unknown symbol {sym!r} in {ring.name}")
            factor = ring.symbols[sym]
            if m.group(3):
                factor = ring.pow_el(factor, int(m.group(3)))
        term_val = factor if term_val is None else ring.mul_el(term_val, factor)
    return total


def _parse_matrix_label(ring: FiniteRing, s: str) -> int:
    pres = ring.presentation
    if pres.get("kind") != "matrix_ring":
        raise ConfigError(f"{ring.name} has no matrix labels")
    base: FiniteRing = pres["base_ring"]
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ConfigError(f"bad matrix label {s!r}")
    rows = s[2:-2].split("],[")
    nn = pres["n"]
    if len(rows) != nn:
        raise ConfigError(f"bad matrix label {s!r}")
    digits = []
    for row in rows:
        cells = row.split(",")
        if len(cells) != nn:
            raise ConfigError(f"bad matrix label {s!r}")
        digits.extend(base.parse(c) for c in cells)
    return _pack_digits(digits, base.order)


# ---------------------------------------------------------------------------
# coordinate-ring scaffolding


def _pack_digits(digits: Sequence[int], base: int) -> int:
    idx = 0
    for d in reversed(digits):
        idx = idx * base + int(d)
    return idx


def _all_digit_tuples(base: int, rank: int) -> List[Tuple[int, ...]]:
    out = []
    for code in range(base**rank):
        digs = []
        c = code
        for _ in range(rank):
            digs.append(c % base)
            c //= base
        out.append(tuple(digs))
    return out


def _coord_add_table(base_ring: FiniteRing, digits: np.ndarray) -> np.ndarray:
    b = base_ring.order
    rank = digits.shape[1]
    sums = base_ring.add[digits[:, None, :], digits[None, :, :]]
    powers = b ** np.arange(rank, dtype=np.int64)
    return (sums.astype(np.int64) * powers).sum(axis=2).astype(np.uint8)


def _poly_mul_mod(
    B: FiniteRing,
    f: Sequence[int],
    g: Sequence[int],
    rel: Sequence[int],
    theta_pows: Sequence[np.ndarray],
) -> Tuple[int, ...]:
    """(f*g) mod rel in B[x;theta]; rel monic; coefficients ascending."""
    df, dg = len(f), len(g)
    out = [B.zero] * (df + dg - 1)
    for i, fi in enumerate(f):
        if fi == B.zero:
            continue
        tp = theta_pows[i]
        for j, gj in enumerate(g):
            if gj == B.zero:
                continue
            out[i + j] = B.add_el(out[i + j], B.mul_el(fi, int(tp[gj])))
    d = len(rel) - 1
    top = len(out) - 1
    while top >= d:
        lead = out[top]
        if lead != B.zero:
            s = top - d
            tp = theta_pows[s]
            for j in range(d + 1):
                out[s + j] = B.sub_el(out[s + j], B.mul_el(lead, int(tp[rel[j]])))
        top -= 1
    out = out[:d] + [B.zero] * max(0, d - len(out))
    return tuple(out[:d])


def _coord_label(base: FiniteRing, digs: Sequence[int], var: str) -> str:
    terms = []
    for i, d in enumerate(digs):
        if d == base.zero:
            continue
        terms.append((base.label(d), (i,)))
    return _format_terms(terms, [var])


# ---------------------------------------------------------------------------
# presentation builders


def build_ring(spec: Mapping, name: Optional[str] = None) -> FiniteRing:
    """Construct a FiniteRing from a presentation mapping (see data/rings)."""
    kind = spec.get("kind")
    builders = {
        "integer_residue": _build_integer_residue,
        "galois_field": _build_galois_field,
        "galois_ring": _build_galois_ring,
        "poly_quotient": _build_poly_quotient,
        "multi_quotient": _build_multi_quotient,
        "matrix_ring": _build_matrix_ring,
        "explicit": _build_explicit,
    }
    if kind not in builders:
        raise ConfigError(f"unknown ring kind {kind!r}")
    ring = builders[kind](spec, name)
    if not _generates(ring, ring.generators):
        ring.generators = _greedy_generators(ring)
    return ring


def _check_order(order: int, what: str):
    if order > MAX_ORDER:
        raise OrderTooLarge(f"{what}: order {order} exceeds cap {MAX_ORDER}")


def _build_integer_residue(spec: Mapping, name: Optional[str]) -> FiniteRing:
    m = int(spec["m"])
    if m < 2:
        raise ConfigError("modulus must be >= 2")
    _check_order(m, f"Z_{m}")
    idx = np.arange(m)
    add = np.add.outer(idx, idx) % m
    mul = np.multiply.outer(idx, idx) % m
    return FiniteRing(
        name or f"Z{m}",
        add,
        mul,
        0,
        1,
        [str(i) for i in range(m)],
        generators=(),
        presentation={"kind": "integer_residue", "m": m},
        symbols={},
        validate=False,
    )


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def _coeff_ring(
    name: str,
    base: FiniteRing,
    rank: int,
    rel: Sequence[int],
    var: str,
    theta: Optional[np.ndarray],
    kind: str,
    extra_pres: Mapping,
) -> FiniteRing:
    order = base.order**rank
    _check_order(order, name)
    tuples = _all_digit_tuples(base.order, rank)
    digits = np.array(tuples, dtype=np.uint8)
    add = _coord_add_table(base, digits)
    ident = np.arange(base.order, dtype=np.uint8)
    pows: List[np.ndarray] = [ident]
    for _ in range(2 * rank + 2):
        pows.append(pows[-1][theta] if theta is not None else ident)
    mul = np.zeros((order, order), dtype=np.uint8)
    for a in range(order):
        fa = tuples[a]
        for b in range(order):
            mul[a, b] = _pack_digits(
                _poly_mul_mod(base, fa, tuples[b], rel, pows), base.order
            )
    labels = [_coord_label(base, t, var) for t in tuples]

    def embed(e: int) -> int:
        return _pack_digits([e] + [base.zero] * (rank - 1), base.order)

    symbols = {sym: embed(e) for sym, e in base.symbols.items()}
    gens = [embed(e) for e in base.generators]
    if rank >= 2:
        x_elt = _pack_digits(
            [base.zero, base.one] + [base.zero] * (rank - 2), base.order
        )
        symbols[var] = x_elt
        gens.append(x_elt)
    pres = {
        "kind": kind,
        "base_ring": base,
        "rank": rank,
        "var": var,
        "relation": tuple(rel),
        **extra_pres,
    }
    return FiniteRing(
        name,
        add,
        mul,
        0,
        embed(base.one),
        labels,
        generators=tuple(dict.fromkeys(gens)),
        presentation=pres,
        symbols=symbols,
        validate=True,
    )


def _build_galois_field(spec: Mapping, name: Optional[str]) -> FiniteRing:
    p = int(spec["p"])
    if not _is_prime(p):
        raise ConfigError(f"{p} is not prime")
    d = int(spec.get("d", 1))
    var = spec.get("var", "a")
    if d == 1:
        ring = _build_integer_residue(
            {"kind": "integer_residue", "m": p}, name or f"F{p}"
        )
        ring.presentation = {"kind": "galois_field", "p": p, "d": 1}
        return ring
    modulus = [int(c) % p for c in spec["modulus"]]
    if len(modulus) != d + 1 or modulus[-1] != 1:
        raise NonMonicRelation("field modulus must be monic of degree d")
    if not poly_is_irreducible_mod_p(modulus, p):
        raise ConfigError("field modulus is not irreducible")
    base = _build_integer_residue({"kind": "integer_residue", "m": p}, f"F{p}")
    ring = _coeff_ring(
        name or f"F{p**d}",
        base,
        d,
        modulus,
        var,
        None,
        "galois_field",
        {"p": p, "d": d, "modulus": tuple(modulus)},
    )
    _power_labels(ring, var)
    return ring


def _power_labels(ring: FiniteRing, var: str):
    """Relabel field units as generator powers when the variable is primitive."""
    a = ring.symbols[var]
    seen = {}
    acc = ring.one
    for k in range(ring.order - 1):
        if acc in seen:
            break
        seen[acc] = k
        acc = ring.mul_el(acc, a)
    if len(seen) != ring.order - 1:
        return  # not primitive; keep coordinate labels
    labels = list(ring.labels)
    for elt, k in seen.items():
        labels[elt] = "1" if k == 0 else (var if k == 1 else f"{var}^{k}")
    labels[ring.zero] = "0"
    ring.relabel(labels)


def _build_galois_ring(spec: Mapping, name: Optional[str]) -> FiniteRing:
    p, k, d = int(spec["p"]), int(spec["k"]), int(spec["d"])
    var = spec.get("var", "w")
    modulus = [int(c) % (p**k) for c in spec["modulus"]]
    if len(modulus) != d + 1 or modulus[-1] != 1:
        raise NonMonicRelation("galois ring modulus must be monic of degree d")
    if not poly_is_irreducible_mod_p(modulus, p):
        raise ConfigError("modulus is not basic irreducible (reducible mod p)")
    base = _build_integer_residue({"kind": "integer_residue", "m": p**k}, f"Z{p**k}")
    return _coeff_ring(
        name or f"GR({p**k},{d})",
        base,
        d,
        modulus,
        var,
        None,
        "galois_ring",
        {"p": p, "k": k, "d": d},
    )


def _resolve_twist(base: FiniteRing, twist: Mapping) -> np.ndarray:
    """Automorphism of the base ring from generator images."""
    pairs = [(base.zero, base.zero), (base.one, base.one)]
    for sym, img_label in twist["images"].items():
        if sym not in base.symbols:
            raise ConfigError(f"twist names unknown symbol {sym!r}")
        pairs.append((base.symbols[sym], base.parse(str(img_label))))
    perm = extend_ring_map(base.add, base.mul, base.neg, pairs)
    if perm is None or (perm < 0).any() or len(set(perm.tolist())) != base.order:
        raise ConfigError("twist images do not extend to an automorphism")
    ok = (perm[base.add] == base.add[np.ix_(perm, perm)]).all() and (
        perm[base.mul] == base.mul[np.ix_(perm, perm)]
    ).all()
    if not ok:
        raise ConfigError("twist is not an automorphism")
    return perm.astype(np.uint8)


def _build_poly_quotient(spec: Mapping, name: Optional[str]) -> FiniteRing:
    base = build_ring(spec["base"])
    var = spec.get("var", "x")
    rel = [
        base.int_el(c) if isinstance(c, int) else base.parse(str(c))
        for c in spec["relation"]
    ]
    if len(rel) < 2 or rel[-1] != base.one:
        raise NonMonicRelation(f"relation must be monic, got {spec['relation']}")
    theta = _resolve_twist(base, spec["twist"]) if spec.get("twist") else None
    try:
        return _coeff_ring(
            name or f"{base.name}[{var}]/(rel)",
            base,
            len(rel) - 1,
            rel,
            var,
            theta,
            "poly_quotient",
            {"twisted": theta is not None},
        )
    except InconsistentTables as exc:
        raise InconsistentTables(
            f"{name or base.name}: quotient is not a ring "
            f"(relation may not span a two-sided ideal): {exc}"
        ) from exc


def _build_multi_quotient(spec: Mapping, name: Optional[str]) -> FiniteRing:
    base = build_ring(spec["base"])
    p = base.order
    if not _is_prime(p) or base.char != p:
        raise ConfigError("multi_quotient base must be a prime field")
    varnames = list(spec["vars"])
    nv = len(varnames)
    relations = []
    for rel in spec["relations"]:
        terms = [(int(c) % p, tuple(int(e) for e in exps)) for c, exps in rel]
        relations.append(terms)
    maxdeg = max(sum(e) for rel in relations for _, e in rel)
    D = 2 * maxdeg
    for _attempt in range(8):
        monos = sorted(
            (
                t
                for t in itertools.product(range(D + 1), repeat=nv)
                if sum(t) <= D
            ),
            key=lambda t: (sum(t), t),
        )
        mono_idx = {m: i for i, m in enumerate(monos)}
        rows = []
        for rel in relations:
            rdeg = max(sum(e) for _, e in rel)
            for m in monos:
                if sum(m) + rdeg > D:
                    continue
                vec = [0] * len(monos)
                for c, e in rel:
                    prod = tuple(mi + ei for mi, ei in zip(m, e))
                    vec[mono_idx[prod]] = (vec[mono_idx[prod]] + c) % p
                rows.append(vec)
        mat = np.array(rows, dtype=np.int64)[:, ::-1]
        rref, pivs = rref_mod_p(mat, p)
        piv_monos = {len(monos) - 1 - c for c in pivs}
        basis = [i for i in range(len(monos)) if i not in piv_monos]
        if 0 in piv_monos:
            raise ConfigError("1 lies in the ideal; quotient is the zero ring")
        piv_exps = {monos[i] for i in piv_monos}
        # finite iff every variable has a pure power in the leading-term ideal
        confined = all(
            any(
                tuple(k if i == v else 0 for i in range(nv)) in piv_exps
                for k in range(1, D + 1)
            )
            for v in range(nv)
        )
        Dq = max(sum(monos[i]) for i in basis)
        if confined and 2 * Dq <= D:
            break
        if not confined and D > 4 * maxdeg + 4:
            raise ConfigError("quotient does not look finite")
        D = max(D + 2, 2 * Dq)
    else:
        raise ConfigError("quotient basis does not stabilize")
    nb = len(basis)
    _check_order(p**nb, "multi_quotient")
    basis_pos = {i: k for k, i in enumerate(basis)}
    piv_row = {len(monos) - 1 - c: r for r, c in enumerate(pivs)}
    nf: Dict[Tuple[int, ...], np.ndarray] = {}
    for i, m in enumerate(monos):
        if sum(m) > 2 * Dq:
            continue
        vec = np.zeros(nb, dtype=np.int64)
        if i in basis_pos:
            vec[basis_pos[i]] = 1
        else:
            row = rref[piv_row[i]]
            for c2 in range(len(monos)):
                orig = len(monos) - 1 - c2
                if orig == i or row[c2] == 0:
                    continue
                vec[basis_pos[orig]] = (-row[c2]) % p
        nf[m] = vec
    basis_monos = [monos[i] for i in basis]
    T = np.zeros((nb, nb, nb), dtype=np.int64)
    for i in range(nb):
        for j in range(nb):
            prod = tuple(x + y for x, y in zip(basis_monos[i], basis_monos[j]))
            T[i, j] = nf[prod]
    tuples = _all_digit_tuples(p, nb)
    dig = np.array(tuples, dtype=np.int64)
    powers = p ** np.arange(nb, dtype=np.int64)
    add = (((dig[:, None, :] + dig[None, :, :]) % p) * powers).sum(axis=2)
    coeff = np.einsum("xi,yj,ijk->xyk", dig, dig, T) % p
    mul = (coeff * powers).sum(axis=2)
    labels = []
    for t in tuples:
        terms = [(str(c), basis_monos[i]) for i, c in enumerate(t) if c]
        labels.append(_format_terms(terms, varnames))
    symbols = {}
    gens = []
    for v in range(nv):
        e = tuple(1 if i == v else 0 for i in range(nv))
        if e not in basis_monos:
            raise ConfigError(f"variable {varnames[v]} not in the quotient basis")
        k = basis_monos.index(e)
        elt = _pack_digits([1 if i == k else 0 for i in range(nb)], p)
        symbols[varnames[v]] = elt
        gens.append(elt)
    one = _pack_digits(
        [1 if basis_monos[i] == (0,) * nv else 0 for i in range(nb)], p
    )
    return FiniteRing(
        name or f"F{p}[{','.join(varnames)}]/(rels)",
        add.astype(np.uint8),
        mul.astype(np.uint8),
        0,
        one,
        labels,
        generators=tuple(gens),
        presentation={
            "kind": "multi_quotient",
            "p": p,
            "vars": tuple(varnames),
            "basis_monos": tuple(basis_monos),
        },
        symbols=symbols,
        validate=True,
    )


def _build_matrix_ring(spec: Mapping, name: Optional[str]) -> FiniteRing:
    base = build_ring(spec["base"])
    nn = int(spec["n"])
    rank = nn * nn
    order = base.order**rank
    _check_order(order, f"M{nn}({base.name})")
    tuples = _all_digit_tuples(base.order, rank)
    digits = np.array(tuples, dtype=np.uint8)
    add = _coord_add_table(base, digits)
    mul = np.zeros((order, order), dtype=np.uint8)
    for a in range(order):
        A = tuples[a]
        for b in range(order):
            B = tuples[b]
            out = []
            for r in range(nn):
                for c in range(nn):
                    acc = base.zero
                    for t in range(nn):
                        acc = base.add_el(
                            acc, base.mul_el(A[r * nn + t], B[t * nn + c])
                        )
                    out.append(acc)
            mul[a, b] = _pack_digits(out, base.order)
    labels = []
    for t in tuples:
        rows = [
            ",".join(base.label(t[r * nn + c]) for c in range(nn))
            for r in range(nn)
        ]
        labels.append("[[" + "],[".join(rows) + "]]")
    one = _pack_digits(
        [base.one if r == c else base.zero for r in range(nn) for c in range(nn)],
        base.order,
    )
    gens = []
    if nn >= 2:
        for (r, c) in ((0, 1), (1, 0)):
            digs = [base.zero] * rank
            digs[r * nn + c] = base.one
            gens.append(_pack_digits(digs, base.order))
    for g in base.generators:
        digs = [base.zero] * rank
        for r in range(nn):
            digs[r * nn + r] = g
        gens.append(_pack_digits(digs, base.order))
    return FiniteRing(
        name or f"M{nn}({base.name})",
        add,
        mul,
        0,
        one,
        labels,
        generators=tuple(gens),
        presentation={"kind": "matrix_ring", "base_ring": base, "n": nn},
        symbols={},
        validate=True,
    )


def _build_explicit(spec: Mapping, name: Optional[str]) -> FiniteRing:
    add = np.asarray(spec["add"], dtype=np.uint8)
    mul = np.asarray(spec["mul"], dtype=np.uint8)
    _check_order(add.shape[0], "explicit tables")
    zero, one = int(spec["zero"]), int(spec["one"])
    audit = _audit_tables(add, mul, zero, one)
    if not audit.passed:
        raise InconsistentTables(f"explicit tables: {audit.failed_names()}")
    labels = spec.get("labels") or [str(i) for i in range(add.shape[0])]
    ring = FiniteRing(
        name or "explicit",
        add,
        mul,
        zero,
        one,
        labels,
        generators=tuple(spec.get("generators") or ()),
        presentation={"kind": "explicit"},
        symbols={},
        validate=False,
    )
    return ring


def _generates(ring: FiniteRing, gens: Sequence[int]) -> bool:
    return len(subring_generated(ring, gens).elements) == ring.order


def _greedy_generators(ring: FiniteRing) -> Tuple[int, ...]:
    gens: List[int] = []
    cur = subring_generated(ring, gens)
    while len(cur.elements) != ring.order:
        for a in ring.elements():
            if a not in cur.element_set:
                gens.append(a)
                break
        cur = subring_generated(ring, gens)
    return tuple(gens)


# ---------------------------------------------------------------------------
# subrings


@dataclass(frozen=True)
class SubringHandle:
    """A unital subring given as a closed element subset of a parent ring."""

    parent: FiniteRing
    elements: Tuple[int, ...]

    def __post_init__(self):
        es = set(self.elements)
        if self.parent.zero not in es or self.parent.one not in es:
            raise ConfigError("subring must contain 0 and 1")

    @property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def as_ring(self) -> Tuple[FiniteRing, np.ndarray]:
        """Reindexed FiniteRing plus to_parent index array."""
        sub = np.array(sorted(self.elements), dtype=np.int64)
        back = np.full(self.parent.order, -1, dtype=np.int64)
        back[sub] = np.arange(len(sub))
        add = back[self.parent.add[np.ix_(sub, sub)]]
        mul = back[self.parent.mul[np.ix_(sub, sub)]]
        if (add < 0).any() or (mul < 0).any():
            raise ConfigError("element subset is not closed")
        labels = [self.parent.label(int(a)) for a in sub]
        symbols = {
            s: int(back[e])
            for s, e in self.parent.symbols.items()
            if e in self.element_set
        }
        ring = FiniteRing(
            f"{self.parent.name}|sub{len(sub)}",
            add,
            mul,
            int(back[self.parent.zero]),
            int(back[self.parent.one]),
            labels,
            generators=(),
            presentation={"kind": "subring", "parent": self.parent.name},
            symbols=symbols,
            validate=False,
        )
        ring.generators = _greedy_generators(ring)
        if not ring.generators:
            # prime subring: label elements as integer multiples of 1
            ints = {}
            acc = ring.zero
            for k in range(ring.char):
                ints[acc] = str(k)
                acc = ring.add_el(acc, ring.one)
            if len(ints) == ring.order:
                ring.relabel([ints[i] for i in range(ring.order)])
        if ring.order == 4 and ring.char == 4 and ring.lee_weights is None:
            lee = np.zeros(4, dtype=np.int16)
            acc = ring.zero
            for k in range(4):
                lee[acc] = min(k, 4 - k)
                acc = ring.add_el(acc, ring.one)
            ring.lee_weights = lee
        return ring, sub

    def __contains__(self, a: int) -> bool:
        return int(a) in self.element_set


def subring_generated(A: FiniteRing, S: Iterable[int] = ()) -> SubringHandle:
    """Smallest unital subring containing S."""
    mask = np.zeros(A.order, dtype=bool)
    mask[A.zero] = True
    mask[A.one] = True
    for s in S:
        mask[int(s)] = True
    while True:
        idx = np.where(mask)[0]
        new = mask.copy()
        new[A.add[np.ix_(idx, idx)].ravel()] = True
        new[A.mul[np.ix_(idx, idx)].ravel()] = True
        new[A.neg[idx]] = True
        if (new == mask).all():
            break
        mask = new
    return SubringHandle(A, tuple(int(i) for i in np.where(mask)[0]))


def all_subrings(A: FiniteRing, proper: bool = False) -> List[SubringHandle]:
    """All unital subrings reachable from <= 2 generators."""
    seen = {}
    for a in A.elements():
        h = subring_generated(A, [a])
        seen.setdefault(h.elements, h)
    for els in list(seen):
        for a in A.elements():
            h2 = subring_generated(A, list(els) + [a])
            seen.setdefault(h2.elements, h2)
    out = [s for s in seen.values() if not proper or len(s.elements) < A.order]
    return sorted(out, key=lambda s: (len(s.elements), s.elements))


def units_and_zero_divisors(A: FiniteRing) -> Tuple[frozenset, frozenset]:
    """Partition of nonzero elements into units and two-sided zero divisors."""
    units = frozenset(int(a) for a in np.where(A.unit_mask)[0])
    nz = [a for a in A.elements() if a != A.zero]
    zds = set()
    for a in nz:
        if (A.mul[a, nz] == A.zero).any() or (A.mul[nz, a] == A.zero).any():
            zds.add(a)
    leftover = set(nz) - units - zds
    if leftover:
        raise InconsistentTables(
            f"{A.name}: nonzero non-units that are not zero divisors: {sorted(leftover)}"
        )
    return units, frozenset(zds)


def element_profile(A: FiniteRing, a: int) -> Tuple:
    """Ring-automorphism invariants of an element, used to prune searches."""
    unit = A.is_unit(a)
    return (
        A.add_order(a),
        unit,
        A.mult_order(a) if unit else 0,
        A.nilpotency_index(a),
    )


def minimal_generators(A: FiniteRing) -> Tuple[int, ...]:
    """A smallest ring-generating set (size <= 3 for supported rings)."""
    if _generates(A, ()):
        return ()
    for size in (1, 2, 3):
        for combo in itertools.combinations(range(A.order), size):
            if _generates(A, combo):
                return combo
    raise ConfigError(f"{A.name}: no generating set of size <= 3")


def find_isomorphic_subrings(
    A: FiniteRing, pattern: FiniteRing
) -> List[SubringHandle]:
    """All unital subrings of A isomorphic (as unital rings) to `pattern`."""
    if pattern.order > A.order:
        return []
    gens = minimal_generators(pattern)
    profiles = [element_profile(pattern, g) for g in gens]
    cands = [
        [a for a in A.elements() if element_profile(A, a) == prof]
        for prof in profiles
    ]
    hits = {}
    for images in itertools.product(*cands):
        pairs = [(pattern.zero, A.zero), (pattern.one, A.one)]
        pairs += list(zip(gens, images))
        img = extend_ring_map(
            pattern.add,
            pattern.mul,
            pattern.neg,
            pairs,
            img_add=A.add,
            img_mul=A.mul,
            img_neg=A.neg,
        )
        if img is None or (img < 0).any():
            continue
        if len(set(img.tolist())) != pattern.order:
            continue
        key = tuple(sorted(int(x) for x in img))
        if key not in hits:
            hits[key] = SubringHandle(A, key)
    return [hits[k] for k in sorted(hits)]


def designate_lee_basis(A: FiniteRing, vecs: Sequence[int]):
    """Fix a Z_char-coordinate basis and derive elementwise Lee weights.

    The Lee weight of a coordinate k in Z_m is min(k, m-k); an element's
    weight is the sum over its coordinates in the designated basis.
    """
    m = A.char
    r = len(vecs)
    if m**r != A.order:
        raise ConfigError("designated basis must be a free Z_char-basis")
    lee = np.full(A.order, -1, dtype=np.int16)
    for digits in itertools.product(range(m), repeat=r):
        acc = A.zero
        for k, v in zip(digits, vecs):
            term = A.zero
            for _ in range(k):
                term = A.add_el(term, v)
            acc = A.add_el(acc, term)
        w = sum(min(k, m - k) for k in digits)
        if lee[acc] != -1:
            raise ConfigError("designated basis is not free")
        lee[acc] = w
    A.lee_weights = lee


# ---------------------------------------------------------------------------
# Frobenius detection


def additive_generators(A: FiniteRing) -> List[int]:
    """Greedy generating set of the additive group."""
    gens: List[int] = []
    span = {A.zero}
    orders = A.add_orders()
    while len(span) != A.order:
        best = max(
            (a for a in A.elements() if a not in span), key=lambda a: orders[a]
        )
        gens.append(best)
        for s in list(span):
            acc = s
            for _ in range(int(orders[best])):
                acc = A.add_el(acc, best)
                span.add(acc)
    return gens


def additive_characters(A: FiniteRing) -> np.ndarray:
    """All additive characters as rows of values in Z_char."""
    c = A.char
    gens = additive_generators(A)
    orders = [A.add_order(g) for g in gens]
    choices = [range(0, c, c // o) for o in orders]
    chars = []
    for vals in itertools.product(*choices):
        chi = np.full(A.order, -1, dtype=np.int64)
        chi[A.zero] = 0
        ok = True
        frontier = [A.zero]
        for g, v in zip(gens, vals):
            if chi[g] == -1:
                chi[g] = v
                frontier.append(g)
            elif chi[g] != v:
                ok = False
                break
        known: List[int] = []
        while ok and frontier:
            e = frontier.pop()
            known.append(e)
            for d in known:
                s = A.add_el(e, d)
                val = (chi[e] + chi[d]) % c
                if chi[s] == -1:
                    chi[s] = val
                    frontier.append(s)
                elif chi[s] != val:
                    ok = False
                    break
        if ok and (chi >= 0).all():
            chars.append(tuple(int(x) for x in chi))
    return np.array(sorted(set(chars)), dtype=np.int64)


def is_frobenius(A: FiniteRing) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """Generating-character test: some character kills no nonzero left ideal."""
    chars = additive_characters(A)
    nonzero = [a for a in A.elements() if a != A.zero]
    for chi in chars:
        vals = chi[A.mul]  # vals[r, a] = chi(r * a)
        ideal_killed = ~(vals != 0).any(axis=0)
        if not ideal_killed[nonzero].any():
            return True, tuple(int(x) for x in chi)
    return False, None
