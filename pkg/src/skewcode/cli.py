"""Command-line front end.

Exit codes: 0 all checks pass, 1 diff or property violation, 2 usage or
configuration error (including budget refusals).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .bases import (
    ModuleBasis,
    classify_basis,
    count_bases_by_class,
    enumerate_basis_sets,
)
from .codes import (
    dual_code,
    is_self_dual,
    phi_image,
    theta_code,
    verify_duality_preservation,
    weight_profile,
)
from .config import RingCatalog
from .errors import BudgetExceeded, SkewcodeError
from .morphisms import (
    enumerate_anti_automorphisms,
    enumerate_involutions,
    identity_map,
    subgroup_generated,
)
from .recipes import RECIPES, emit, matrix_block, run_recipe
from .rings import is_ring, units_and_zero_divisors
from .skewpoly import (
    count_self_dual_generators,
    enumerate_monic_right_divisors,
    skew_poly,
    x_pow_minus,
)

DEFAULT_BUDGET = 20_000_000


def _ring_arg(p: argparse.ArgumentParser):
    p.add_argument("--ring", required=True, help="ring name from the catalog")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skewcode",
        description=(
            "Workbench for duality-preserving bases and self-dual skew "
            "cyclic codes over finite rings"
        ),
    )
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="candidate-evaluation cap for exhaustive scans",
    )
    ap.add_argument(
        "--format",
        choices=("json", "csv", "text"),
        default="json",
        help="output format",
    )
    ap.add_argument("--threads", type=int, default=1, help="worker threads")
    ap.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    ap.add_argument(
        "--rings-dir", type=Path, default=None, help="override ring config directory"
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring", help="inspect a ring; dump canonical tables")
    _ring_arg(p)
    p.add_argument("--audit", action="store_true", help="run the axiom audit")
    p.add_argument("--dump", action="store_true", help="emit canonical JSON tables")

    p = sub.add_parser("aut", help="automorphisms / anti-automorphisms / involutions")
    _ring_arg(p)
    p.add_argument("--anti", action="store_true")
    p.add_argument("--involutions", action="store_true")
    p.add_argument(
        "--dump", action="store_true", help="serialize maps as permutation arrays"
    )

    p = sub.add_parser("bases", help="enumerate or count duality-class bases")
    _ring_arg(p)
    p.add_argument("--subring", default="prime", help="prime | <name> | gens:a,b")
    p.add_argument("--sigma", default="id", help="involution name or id")
    p.add_argument(
        "--group",
        default="aut",
        help="aut | id | comma list of map names generating H",
    )
    p.add_argument(
        "--class",
        dest="cls",
        default="psd",
        choices=("trace-orth", "psd", "self-dual", "symmetric"),
    )
    p.add_argument("--list", action="store_true", help="list basis sets")

    p = sub.add_parser("divisors", help="monic right divisors of X^n - a")
    _ring_arg(p)
    p.add_argument("--theta", default="id", help="map name | id | all | nonid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--constant", default="1", help="constant term a of X^n - a")

    p = sub.add_parser("selfdual-gens", help="self-dual generator census")
    _ring_arg(p)
    p.add_argument("--theta", default="id")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("code", help="build a module theta-code and report it")
    _ring_arg(p)
    p.add_argument("--theta", default="id")
    p.add_argument("--gen-poly", required=True, help="ascending coefficients, comma separated")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--constant", default="1")
    p.add_argument("--metric", choices=("hamming", "lee"), default="hamming")

    p = sub.add_parser("map", help="image of a module code under a basis")
    _ring_arg(p)
    p.add_argument("--theta", default="id")
    p.add_argument("--gen-poly", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--constant", default="1")
    p.add_argument("--subring", default="prime")
    p.add_argument("--basis", required=True, help="ordered labels, comma separated")
    p.add_argument("--metric", choices=("hamming", "lee"), default="hamming")
    p.add_argument("--sigma", default="id")

    p = sub.add_parser("verify-duality", help="check phi(dual) against dual(phi)")
    _ring_arg(p)
    p.add_argument("--theta", default="id")
    p.add_argument("--gen-poly", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--constant", default="1")
    p.add_argument("--subring", default="prime")
    p.add_argument("--basis", required=True)
    p.add_argument("--sigma", default="id")
    p.add_argument("--group", default="aut")

    p = sub.add_parser("recipe", help="run a named reproduction recipe")
    p.add_argument("name", help=f"one of: {', '.join(sorted(RECIPES))}")
    p.add_argument("--golden-dir", type=Path, default=None)

    return ap


def _resolve_subring(cat: RingCatalog, ring_name: str, spec: str):
    if spec.startswith("fixed:"):
        from .morphisms import fixed_subring

        return fixed_subring(_resolve_group(cat, ring_name, spec[6:]))
    return cat.subring(ring_name, spec)


def _resolve_group(cat: RingCatalog, ring_name: str, spec: str):
    if spec == "aut":
        return cat.automorphisms(ring_name)
    if spec == "id":
        return subgroup_generated([identity_map(cat.ring(ring_name))])
    gens = [cat.map(ring_name, s) for s in spec.split(",") if s]
    return subgroup_generated(gens)


def _poly(cat, ring_name, theta_name, coeffs: str):
    ring = cat.ring(ring_name)
    theta = cat.map(ring_name, theta_name)
    return skew_poly(ring, theta, [c for c in coeffs.split(",")]), ring, theta


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    random.seed(args.seed)
    cat = RingCatalog(args.rings_dir)
    try:
        return _dispatch(args, cat)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SkewcodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _print(args, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        cols: List[str] = []
        for r in rows:
            for k in r:
                if k not in cols:
                    cols.append(k)
        print(",".join(cols))
        for r in rows:
            print(",".join(str(r.get(c, "")) for c in cols))
    else:
        rows = payload if isinstance(payload, list) else [payload]
        for r in rows:
            print("  ".join(f"{k}={v}" for k, v in r.items()))


def _dispatch(args, cat: RingCatalog) -> int:
    cmd = args.command

    if cmd == "ring":
        ring = cat.ring(args.ring)
        units, zds = units_and_zero_divisors(ring)
        info = {
            "name": ring.name,
            "order": ring.order,
            "char": ring.char,
            "commutative": ring.commutative,
            "units": len(units),
            "zero_divisors": len(zds),
            "labels": list(ring.labels),
        }
        if args.audit:
            audit = is_ring(ring)
            info["audit_passed"] = audit.passed
            info["audit_failures"] = audit.failed_names()
        if args.dump:
            info["tables"] = ring.dump_dict()
        _print(args, info)
        return 0

    if cmd == "aut":
        ring = cat.ring(args.ring)
        group = cat.automorphisms(args.ring)
        out = {
            "ring": args.ring,
            "aut_order": group.order,
            "label": group.structure_label(),
            "order_histogram": {
                str(k): v for k, v in sorted(group.element_order_histogram().items())
            },
        }
        if args.anti:
            out["anti_automorphisms"] = len(enumerate_anti_automorphisms(ring))
        if args.involutions:
            out["involutions"] = len(enumerate_involutions(ring))
        if args.dump:
            maps = list(group)
            if args.anti and not ring.commutative:
                maps += enumerate_anti_automorphisms(ring)
            out["maps"] = [
                {
                    "kind": m.kind,
                    "order": m.order,
                    "perm": [int(x) for x in m.perm],
                }
                for m in maps
            ]
        _print(args, out)
        return 0

    if cmd == "bases":
        ring = cat.ring(args.ring)
        R = _resolve_subring(cat, args.ring, args.subring)
        cls = args.cls
        if cls == "symmetric":
            cnt, gamma, wits = count_bases_by_class(
                ring, R, cls="symmetric", with_witnesses=args.list
            )
        else:
            sigma = cat.map(args.ring, args.sigma)
            group = _resolve_group(cat, args.ring, args.group)
            cnt, gamma, wits = count_bases_by_class(
                ring, R, sigma, group, cls, with_witnesses=args.list
            )
        out = {
            "count": cnt,
            "gamma": ring.label(gamma) if gamma is not None else None,
        }
        if args.list:
            out["bases"] = [[ring.label(v) for v in w] for w in wits]
        _print(args, out)
        return 0

    if cmd == "divisors":
        ring = cat.ring(args.ring)
        thetas = cat.theta_list(args.ring, args.theta)
        a = ring.parse(args.constant)
        polys = []
        total = 0
        for th in thetas:
            divs = enumerate_monic_right_divisors(
                ring, th, args.n, args.d, a, args.budget
            )
            total += len(divs)
            polys.extend([d.labels() for d in divs])
        _print(args, {"count": total, "polys": polys})
        return 0

    if cmd == "selfdual-gens":
        ring = cat.ring(args.ring)
        thetas = cat.theta_list(args.ring, args.theta)
        rows = []
        for th in thetas:
            counts = count_self_dual_generators(ring, th, args.n, args.budget)
            rows.append(
                {
                    "theta": th.name or ("id" if th.is_identity() else "aut"),
                    "order": th.order,
                    **counts,
                }
            )
        _print(args, rows)
        return 0

    if cmd in ("code", "map", "verify-duality"):
        g, ring, theta = _poly(cat, args.ring, args.theta, args.gen_poly)
        a = ring.parse(args.constant)
        f = x_pow_minus(ring, theta, args.n, a)
        C = theta_code(g, f, theta)
        sigma = cat.map(args.ring, args.sigma) if cmd != "code" else None
        if cmd == "code":
            prof = weight_profile(C, args.metric, args.budget)
            _print(
                args,
                {
                    "n": C.n,
                    "k": C.k,
                    "size": C.size(args.budget),
                    "min_distance": prof.min_distance,
                    "matrix": C.generator_matrix_labels(),
                },
            )
            return 0
        R = _resolve_subring(cat, args.ring, args.subring)
        vecs = [ring.parse(s) for s in args.basis.split(",")]
        basis = ModuleBasis(ring, R, vecs)
        if cmd == "map":
            img = phi_image(C, basis)
            prof = weight_profile(img, args.metric, args.budget)
            from .morphisms import RingMap

            sigma_r = RingMap(
                basis.R_ring, sigma.restrict(basis.to_parent), "automorphism"
            )
            payload = {
                "image_length": img.n,
                "image_rows": img.k,
                "metric": args.metric,
                "min_distance": prof.min_distance,
                "self_dual": is_self_dual(img, sigma_r, args.budget),
                "matrix": img.generator_matrix_labels(),
            }
            if args.format == "text":
                print(matrix_block(img))
                return 0
            _print(args, payload)
            return 0
        group = _resolve_group(cat, args.ring, args.group)
        rep = verify_duality_preservation(C, basis, sigma, group, args.budget)
        _print(
            args,
            {
                "method": rep.method,
                "equal": rep.equal,
                "hypotheses": rep.hypotheses,
                "lhs_size": rep.lhs_size,
                "rhs_size": rep.rhs_size,
                "cardinality_ok": rep.cardinality_ok,
                "detail": rep.detail,
            },
        )
        return 0 if rep.equal or rep.method == "skipped" else 1

    if cmd == "recipe":
        outcome = run_recipe(
            args.name,
            cat,
            budget=args.budget,
            golden_dir=args.golden_dir,
            threads=args.threads,
        )
        print(emit(outcome.table, args.format))
        for s in outcome.skipped:
            print(f"SKIPPED: {s}", file=sys.stderr)
        for d in outcome.diffs:
            print(f"DIFF: {d}", file=sys.stderr)
        return 0 if outcome.passed else 1

    raise SkewcodeError(f"unhandled command {cmd}")


if __name__ == "__main__":
    raise SystemExit(main())
