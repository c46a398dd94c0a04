"""Command line: check, synthesize, verify, atlas, fixtures, hull."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .constructions import ConstructionError, CrossCheckMismatch, evaluate
from .exact import as_point, parse_rational
from .hull import DegenerateInput, convex_hull
from .lattice import dumps, polytope_to_dict
from .membership import BadDimension, MembershipVerdict, in_E
from .synthesis import (
    NotInE,
    ParseError,
    Unreachable,
    atlas,
    atlas_csv,
    atlas_plotdata,
    synthesize,
    verify_text,
)

FIXTURES = {
    "P_A": "(pyr (pyr (prod (simplex 1) (simplex 1))))",
    "P_B": "(pyr (prod (simplex 1) (simplex 2)))",
    "P_C": "(trunc (simplex 4))",
    "P_D": "(prod (simplex 2) (simplex 2))",
    "cyclic_5_7": "(cyclic 5 7)",
    "dual_cyclic_5_7": "(dual (cyclic 5 7))",
    "witness_17_45": "(stack (trunc (dual (cyclic 5 7))))",
}


def _threads() -> int:
    raw = os.environ.get("POLYWITNESS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_check(args) -> int:
    verdict = in_E(args.dim, args.v, args.e)
    print(verdict)
    return 0 if verdict.inside else 1


def cmd_synthesize(args) -> int:
    try:
        cert = synthesize(args.dim, args.v, args.e, with_coords=args.coords)
    except NotInE as ex:
        print(MembershipVerdict(False, ex.reason))
        return 1
    except Unreachable as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    text = cert.to_json(with_coords=args.coords)
    if args.out:
        Path(args.out).write_text(text)
        print(f"{cert.recipe}  f={cert.f_vector}  -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    try:
        checks = verify_text(Path(args.file).read_text())
    except (ParseError, OSError) as ex:
        print(f"parse error: {ex}", file=sys.stderr)
        return 2
    except (ConstructionError, CrossCheckMismatch) as ex:
        print(f"FAIL: {ex}")
        return 1
    for name, ok in checks.items():
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
    passed = all(checks.values())
    print("VERIFIED" if passed else "REJECTED")
    return 0 if passed else 1


def cmd_atlas(args) -> int:
    rows = atlas(args.dim, args.vmax, with_recipes=not args.no_recipes, workers=_threads())
    if args.format == "csv":
        text = atlas_csv(rows)
    else:
        text = json.dumps(atlas_plotdata(rows)) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_fixtures(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, recipe in FIXTURES.items():
        ev = evaluate(recipe)
        doc = polytope_to_dict(ev.polytope.incidence, ev.coords)
        doc["recipe"] = recipe
        doc["f_vector"] = list(ev.f_vector)
        (out / f"{name}.json").write_text(dumps(doc))
        print(f"{name:16s} f={ev.f_vector}")
    return 0


def cmd_hull(args) -> int:
    try:
        pts = [as_point(parse_rational(x) for x in line.split())
               for line in Path(args.points).read_text().splitlines() if line.strip()]
        H = convex_hull(pts)
    except (ValueError, DegenerateInput) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    print(f"dimension {H.dimension}, {len(H.vertices)} vertices, {len(H.facets)} facets")
    print("vertices:", " ".join(map(str, H.vertices)))
    for f in H.facet_sets(relabel=False):
        print("facet:", " ".join(map(str, f)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polywitness", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide whether (v, e) is in E^d")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--v", type=int, required=True)
    c.add_argument("--e", type=int, required=True)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("synthesize", help="build and certify a witness polytope")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--coords", action="store_true", help="include exact vertex coordinates and facets")
    s.set_defaults(func=cmd_synthesize)

    v = sub.add_parser("verify", help="re-check a certificate or polytope JSON file")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("atlas", help="status of every (v, e) near the admissible range")
    a.add_argument("--dim", type=int, required=True)
    a.add_argument("--vmax", type=int, required=True)
    a.add_argument("--format", choices=["csv", "plotdata"], default="csv")
    a.add_argument("--no-recipes", action="store_true")
    a.add_argument("--out")
    a.set_defaults(func=cmd_atlas)

    f = sub.add_parser("fixtures", help="write the reference polytopes as JSON")
    f.add_argument("--out", default="fixtures")
    f.set_defaults(func=cmd_fixtures)

    h = sub.add_parser("hull", help="exact convex hull of a whitespace-separated point file")
    h.add_argument("points")
    h.set_defaults(func=cmd_hull)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BadDimension, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
