"""Named ring registry backed by TOML files under data/rings.

Each file holds one presentation plus optional named maps, subrings, and a
designated Lee basis.  Rings are cached per loader so repeated lookups
share tables and map objects.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Dict, List, Mapping, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .errors import ConfigError
from .morphisms import MapGroup, RingMap, enumerate_automorphisms, identity_map, map_from_images
from .rings import FiniteRing, SubringHandle, build_ring, designate_lee_basis, subring_generated

DATA_DIR = Path(__file__).parent / "data"
RINGS_DIR = DATA_DIR / "rings"
GOLDEN_DIR = DATA_DIR / "golden"


class RingCatalog:
    """Loads named rings, their maps and subrings from a config directory."""

    def __init__(self, rings_dir: Optional[Path] = None):
        self.rings_dir = Path(rings_dir) if rings_dir else RINGS_DIR
        self._rings: Dict[str, FiniteRing] = {}
        self._maps: Dict[str, Dict[str, RingMap]] = {}
        self._subrings: Dict[str, Dict[str, SubringHandle]] = {}
        self._aut: Dict[str, MapGroup] = {}

    def names(self) -> List[str]:
        return sorted(p.stem for p in self.rings_dir.glob("*.toml"))

    def _load_file(self, name: str) -> Mapping:
        path = self.rings_dir / f"{name}.toml"
        if not path.exists():
            raise ConfigError(
                f"unknown ring {name!r}; available: {', '.join(self.names())}"
            )
        with path.open("rb") as fh:
            return tomllib.load(fh)

    def ring(self, name: str) -> FiniteRing:
        if name not in self._rings:
            cfg = self._load_file(name)
            ring = build_ring(cfg, name)
            if "lee_basis" in cfg:
                designate_lee_basis(ring, [ring.parse(s) for s in cfg["lee_basis"]])
            self._rings[name] = ring
            self._maps[name] = {}
            for mname, mcfg in cfg.get("maps", {}).items():
                self._maps[name][mname] = map_from_images(
                    ring,
                    {str(k): str(v) for k, v in mcfg["images"].items()},
                    mcfg.get("kind", "automorphism"),
                    mname,
                )
            self._subrings[name] = {}
            for sname, scfg in cfg.get("subrings", {}).items():
                gens = [ring.parse(str(s)) for s in scfg.get("generators", [])]
                self._subrings[name][sname] = subring_generated(ring, gens)
        return self._rings[name]

    def map(self, ring_name: str, map_name: str) -> RingMap:
        ring = self.ring(ring_name)
        if map_name in ("id", "identity"):
            return identity_map(ring)
        maps = self._maps[ring_name]
        if map_name not in maps:
            raise ConfigError(
                f"ring {ring_name!r} has no map {map_name!r}; "
                f"configured: {sorted(maps)}"
            )
        return maps[map_name]

    def maps(self, ring_name: str) -> Dict[str, RingMap]:
        self.ring(ring_name)
        return dict(self._maps[ring_name])

    def automorphisms(self, ring_name: str) -> MapGroup:
        if ring_name not in self._aut:
            self._aut[ring_name] = enumerate_automorphisms(self.ring(ring_name))
        return self._aut[ring_name]

    def subring(self, ring_name: str, spec: str) -> SubringHandle:
        """Resolve 'prime', a configured name, or 'gens:<l1>,<l2>,...'."""
        ring = self.ring(ring_name)
        if spec == "prime":
            return subring_generated(ring, [])
        if spec.startswith("gens:"):
            gens = [ring.parse(s) for s in spec[5:].split(",") if s]
            return subring_generated(ring, gens)
        named = self._subrings[ring_name]
        if spec in named:
            return named[spec]
        raise ConfigError(
            f"ring {ring_name!r} has no subring {spec!r}; "
            f"configured: {sorted(named)}; also accepts 'prime' or 'gens:...'"
        )

    def theta_list(self, ring_name: str, selector: str) -> List[RingMap]:
        """'id' | 'all' | 'nonid' | a configured map name."""
        if selector == "id":
            return [identity_map(self.ring(ring_name))]
        if selector in ("all", "nonid"):
            group = self.automorphisms(ring_name)
            out = [m for m in group]
            if selector == "nonid":
                out = [m for m in out if not m.is_identity()]
            return out
        return [self.map(ring_name, selector)]


_default_catalog: Optional[RingCatalog] = None


def default_catalog() -> RingCatalog:
    global _default_catalog
    if _default_catalog is None:
        _default_catalog = RingCatalog()
    return _default_catalog
