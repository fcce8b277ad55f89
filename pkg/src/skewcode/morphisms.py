"""Automorphisms, anti-automorphisms, involutions, trace maps of finite rings.

Maps are stored as full element permutations; composition and audits are
then table lookups.  Enumeration assigns images to a recorded ring
generating set among elements with the same invariant profile and extends.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ._util import extend_ring_map
from .errors import ConfigError, MixedRings, NotInvolution
from .rings import FiniteRing, SubringHandle, element_profile


@dataclass(frozen=True)
class RingMap:
    """Additive-multiplicative bijection of a ring, automorphism or anti."""

    ring: FiniteRing
    perm: np.ndarray
    kind: str  # "automorphism" | "anti_automorphism"
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(
            self, "perm", np.ascontiguousarray(np.asarray(self.perm, dtype=np.uint8))
        )
        if self.kind not in ("automorphism", "anti_automorphism"):
            raise ConfigError(f"bad map kind {self.kind!r}")

    def __call__(self, a: int) -> int:
        return int(self.perm[a])

    def apply_vec(self, v: Sequence[int]) -> Tuple[int, ...]:
        return tuple(int(self.perm[a]) for a in v)

    def compose(self, other: "RingMap") -> "RingMap":
        """self after other."""
        if other.ring is not self.ring:
            raise MixedRings("composition across rings")
        kind = (
            "automorphism"
            if (self.kind == other.kind)
            else "anti_automorphism"
        )
        if self.ring.commutative:
            kind = "automorphism"
        return RingMap(self.ring, self.perm[other.perm], kind)

    def inverse(self) -> "RingMap":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.ring.order, dtype=np.uint8)
        return RingMap(self.ring, inv, self.kind)

    @property
    def order(self) -> int:
        ident = np.arange(self.ring.order, dtype=np.uint8)
        acc = self.perm
        k = 1
        while not (acc == ident).all():
            acc = self.perm[acc]
            k += 1
        return k

    def is_identity(self) -> bool:
        return bool((self.perm == np.arange(self.ring.order)).all())

    def is_involution(self) -> bool:
        """Involutory anti-automorphism; on commutative rings any order-<=2 map."""
        sq = self.perm[self.perm]
        if not (sq == np.arange(self.ring.order)).all():
            return False
        return self.kind == "anti_automorphism" or self.ring.commutative

    def audit(self) -> bool:
        A = self.ring
        p = self.perm
        if len(set(p.tolist())) != A.order or p[A.one] != A.one:
            return False
        if not (p[A.add] == A.add[np.ix_(p, p)]).all():
            return False
        img = A.mul[np.ix_(p, p)]
        if self.kind == "anti_automorphism":
            return bool((p[A.mul] == img.T).all())
        return bool((p[A.mul] == img).all())

    def preserves(self, subset: Iterable[int]) -> bool:
        s = set(int(a) for a in subset)
        return {int(self.perm[a]) for a in s} == s

    def restrict(self, sub_to_parent: np.ndarray) -> np.ndarray:
        """Permutation induced on a reindexed subring (to_parent array)."""
        back = np.full(self.ring.order, -1, dtype=np.int64)
        back[sub_to_parent] = np.arange(len(sub_to_parent))
        out = back[self.perm[sub_to_parent]]
        if (out < 0).any():
            raise ConfigError("map does not preserve the subring")
        return out.astype(np.uint8)

    def key(self) -> bytes:
        return self.perm.tobytes()

    def __hash__(self) -> int:
        return hash((id(self.ring), self.kind, self.perm.tobytes()))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingMap)
            and self.ring is other.ring
            and self.kind == other.kind
            and (self.perm == other.perm).all()
        )

    def __repr__(self) -> str:
        tag = self.name or ("id" if self.is_identity() else "map")
        return f"RingMap({self.ring.name}, {tag}, {self.kind})"


def identity_map(A: FiniteRing) -> RingMap:
    return RingMap(A, np.arange(A.order, dtype=np.uint8), "automorphism", "id")


def map_from_images(
    A: FiniteRing,
    images: Dict[str, str],
    kind: str = "automorphism",
    name: Optional[str] = None,
) -> RingMap:
    """Extend generator-symbol images to a full audited map."""
    pairs = [(A.zero, A.zero), (A.one, A.one)]
    for sym, lab in images.items():
        src = A.symbols.get(sym)
        if src is None:
            src = A.parse(sym)
        pairs.append((src, A.parse(str(lab))))
    anti = kind == "anti_automorphism"
    perm = extend_ring_map(A.add, A.mul, A.neg, pairs, anti=anti)
    if perm is None or (perm < 0).any():
        raise ConfigError(f"images do not extend to a {kind} of {A.name}")
    m = RingMap(A, perm.astype(np.uint8), kind, name)
    if not m.audit():
        raise ConfigError(f"extended map fails the {kind} audit on {A.name}")
    return m


def map_from_function(
    A: FiniteRing, fn, kind: str = "automorphism", name: Optional[str] = None
) -> RingMap:
    perm = np.array([fn(a) for a in A.elements()], dtype=np.uint8)
    m = RingMap(A, perm, kind, name)
    if not m.audit():
        raise ConfigError(f"function is not a {kind} of {A.name}")
    return m


@dataclass(frozen=True)
class MapGroup:
    """A composition-closed set of automorphisms containing the identity."""

    ring: FiniteRing
    members: Tuple[RingMap, ...]

    def __post_init__(self):
        keys = {m.key() for m in self.members}
        if len(keys) != len(self.members):
            raise ConfigError("duplicate members in map group")

    @property
    def order(self) -> int:
        return len(self.members)

    def element_order_histogram(self) -> Dict[int, int]:
        hist: Dict[int, int] = {}
        for m in self.members:
            hist[m.order] = hist.get(m.order, 0) + 1
        return hist

    def is_abelian(self) -> bool:
        for f, g in itertools.combinations(self.members, 2):
            if not (f.perm[g.perm] == g.perm[f.perm]).all():
                return False
        return True

    def structure_label(self) -> str:
        n = self.order
        hist = self.element_order_histogram()
        ab = self.is_abelian()
        if n == 1:
            return "C1"
        if n == 2:
            return "S2"
        if n == 3:
            return "C3"
        if n == 4:
            return "C4" if hist.get(4) else "D2"
        if n == 6:
            return "C6" if ab else "S3"
        if n == 8 and not ab and hist.get(2) == 5:
            return "D4"
        if n == 16 and not ab and hist.get(2) == 9:
            return "D8"
        if n == 16 and not ab and hist.get(2) == 5 and hist.get(8) == 4:
            return "SD16"
        if n == 24 and hist.get(2) == 9 and hist.get(3) == 8 and hist.get(4) == 6:
            return "S4"
        return f"order{n}"

    def contains(self, m: RingMap) -> bool:
        k = m.key()
        return any(x.key() == k for x in self.members)

    def subgroups(self) -> List["MapGroup"]:
        """All subgroups (reachable by <= 2 generators, enough at order <= 24)."""
        seen: Dict[Tuple[bytes, ...], MapGroup] = {}

        def add(gens: Sequence[RingMap]):
            g = subgroup_generated(list(gens), self.ring)
            key = tuple(sorted(m.key() for m in g.members))
            seen.setdefault(key, g)

        add([])
        for m in self.members:
            add([m])
        for f, g in itertools.combinations(self.members, 2):
            add([f, g])
        return sorted(seen.values(), key=lambda g: (g.order, [m.key() for m in g.members]))

    def pointwise_stabilizer(self, subset: Iterable[int]) -> "MapGroup":
        s = [int(a) for a in subset]
        keep = [m for m in self.members if all(m.perm[a] == a for a in s)]
        return MapGroup(self.ring, tuple(keep))

    def __iter__(self):
        return iter(self.members)

    def __repr__(self) -> str:
        return f"MapGroup({self.ring.name}, order={self.order})"


def _search_maps(A: FiniteRing, anti: bool) -> List[RingMap]:
    gens = A.generators
    kind = "anti_automorphism" if anti else "automorphism"
    if not gens:
        return [
            RingMap(A, np.arange(A.order, dtype=np.uint8), kind)
        ]
    profiles = [element_profile(A, g) for g in gens]
    cands = [
        [a for a in A.elements() if element_profile(A, a) == prof]
        for prof in profiles
    ]
    found: Dict[bytes, RingMap] = {}
    for images in itertools.product(*cands):
        pairs = [(A.zero, A.zero), (A.one, A.one)] + list(zip(gens, images))
        perm = extend_ring_map(A.add, A.mul, A.neg, pairs, anti=anti)
        if perm is None or (perm < 0).any():
            continue
        if len(set(perm.tolist())) != A.order:
            continue
        m = RingMap(A, perm.astype(np.uint8), kind)
        if m.audit():
            found.setdefault(m.key(), m)
    return [found[k] for k in sorted(found)]


def enumerate_automorphisms(A: FiniteRing) -> MapGroup:
    """The full automorphism group of A."""
    maps = _search_maps(A, anti=False)
    ident = identity_map(A)
    if ident.key() not in {m.key() for m in maps}:
        raise ConfigError(f"{A.name}: search lost the identity map")
    return MapGroup(A, tuple(maps))


def enumerate_anti_automorphisms(A: FiniteRing) -> List[RingMap]:
    """All product-reversing bijections; equals Aut(A) when A is commutative."""
    if A.commutative:
        return [
            RingMap(A, m.perm, "automorphism", m.name)
            for m in enumerate_automorphisms(A).members
        ]
    return _search_maps(A, anti=True)


def enumerate_involutions(A: FiniteRing) -> List[RingMap]:
    """Involutory anti-automorphisms; order <= 2 automorphisms when commutative."""
    if A.commutative:
        return [m for m in enumerate_automorphisms(A) if m.order <= 2]
    return [m for m in enumerate_anti_automorphisms(A) if m.is_involution()]


def exhaustive_unit_fixing_maps(A: FiniteRing, anti: bool = False) -> List[RingMap]:
    """Brute-force search over additive automorphisms fixing 1 (order <= 16).

    Validation fallback for the generator-image search on small rings.
    """
    if A.order > 16:
        raise ConfigError("fallback search is for rings of order <= 16")
    from .rings import additive_generators

    gens = additive_generators(A)
    ords = [A.add_order(g) for g in gens]
    kind = "anti_automorphism" if anti else "automorphism"
    out: Dict[bytes, RingMap] = {}
    universe = list(A.elements())
    pool = [ [a for a in universe if A.add_order(a) == o] for o in ords ]
    for images in itertools.product(*pool):
        pairs = [(A.zero, A.zero), (A.one, A.one)] + list(zip(gens, images))
        img = np.full(A.order, -1, dtype=np.int64)
        ok = True
        for s, d in pairs:
            if img[s] == -1:
                img[s] = d
            elif img[s] != d:
                ok = False
                break
        if not ok:
            continue
        frontier = [s for s, _ in pairs]
        known: List[int] = []
        while ok and frontier:
            e = frontier.pop()
            known.append(e)
            for d in known:
                s2 = A.add_el(e, d)
                v = A.add_el(int(img[e]), int(img[d]))
                if img[s2] == -1:
                    img[s2] = v
                    frontier.append(s2)
                elif img[s2] != v:
                    ok = False
                    break
        if not ok or (img < 0).any() or len(set(img.tolist())) != A.order:
            continue
        m = RingMap(A, img.astype(np.uint8), kind)
        if m.audit():
            out.setdefault(m.key(), m)
    return [out[k] for k in sorted(out)]


def subgroup_generated(
    maps: Sequence[RingMap], ring: Optional[FiniteRing] = None
) -> MapGroup:
    """Closure of automorphisms under composition."""
    if maps:
        ring = maps[0].ring
    if ring is None:
        raise ConfigError("empty generator list needs an explicit ring")
    for m in maps:
        if m.ring is not ring:
            raise MixedRings("generators live on different rings")
        if m.kind != "automorphism":
            raise ConfigError("map groups contain automorphisms only")
    ident = identity_map(ring)
    members: Dict[bytes, RingMap] = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        cur = frontier.pop()
        for g in maps:
            nxt = g.compose(cur)
            if nxt.key() not in members:
                members[nxt.key()] = nxt
                frontier.append(nxt)
    return MapGroup(ring, tuple(members[k] for k in sorted(members)))


def fixed_subring(H: MapGroup) -> SubringHandle:
    """Elements fixed by every member of H."""
    A = H.ring
    mask = np.ones(A.order, dtype=bool)
    ident = np.arange(A.order, dtype=np.uint8)
    for m in H.members:
        mask &= m.perm == ident
    return SubringHandle(A, tuple(int(i) for i in np.where(mask)[0]))


def trace_table(H: MapGroup) -> np.ndarray:
    """tr[a] = sum over h in H of h(a)."""
    A = H.ring
    acc = H.members[0].perm.copy()
    for m in H.members[1:]:
        acc = A.add[acc, m.perm]
    return acc


def trace(H: MapGroup, a: int) -> int:
    return int(trace_table(H)[a])


def conjugate_involution(sigma: RingMap, phi: RingMap) -> RingMap:
    """phi . sigma . phi, with the conjugated subgroup available separately."""
    if not sigma.is_involution():
        raise NotInvolution("sigma must be an involution")
    if not phi.is_involution():
        raise NotInvolution("phi must be an involution")
    if sigma.ring is not phi.ring:
        raise MixedRings("conjugation across rings")
    perm = phi.perm[sigma.perm[phi.perm]]
    kind = "automorphism" if sigma.ring.commutative else "anti_automorphism"
    out = RingMap(sigma.ring, perm, kind)
    if not out.audit():
        raise NotInvolution("conjugate is not a ring map (unexpected)")
    return out


def conjugate_group(H: MapGroup, phi: RingMap) -> MapGroup:
    """phi H phi as a subgroup of Aut(A)."""
    out = []
    for m in H.members:
        perm = phi.perm[m.perm[phi.perm]]
        out.append(RingMap(H.ring, perm, "automorphism"))
    for m in out:
        if not m.audit():
            raise ConfigError("conjugated member is not an automorphism")
    return MapGroup(H.ring, tuple(sorted(out, key=lambda m: m.key())))
