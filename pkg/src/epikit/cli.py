"""Command-line front end: every subcommand prints one JSON document.

Exit status is 0 on success, 1 on bad input (including unstable or
non-compact support data) and 2 when a case is deliberately unsupported.
"""

from __future__ import annotations

import argparse
import json
from fractions import Fraction
from typing import Sequence

from .abelianization import check_pq, compute_sx
from .affine import (LATTICES, AffineRoot, check_barycentre, delta_x, format_affine, kac_to_point,
                     parse_kac, simple_affine_roots)
from .depth import depth_report
from .errors import EpikitError, InvalidInput, Unsupported
from .intertwine import intertwiners
from .rootsys import format_root, root_system
from .stability import SupportProfile, stability_report


def frac(v) -> str:
    """Canonical rational string: ``"1/4"``, ``"-2"``, ``"0"``."""
    return str(Fraction(v))


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False)


def _root_json(sys, psi: AffineRoot) -> dict:
    return dict(psi.to_json(), label=format_affine(sys, psi))


def _setup(args):
    sys = root_system(args.type)
    x = kac_to_point(sys, parse_kac(args.kac, sys, order=args.kac_order))
    return sys, x


def _profiles(args, sys, x) -> list[SupportProfile]:
    if args.profiles:
        try:
            with open(args.profiles, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"cannot read profiles file: {exc}") from exc
        if not isinstance(data, list):
            raise InvalidInput("profiles file must hold a JSON array")
        profiles = [SupportProfile.from_json(d) for d in data]
        for prof in profiles:
            for r in prof.upper:
                if len(r.gradient) != sys.rank:
                    raise InvalidInput(f"profile root {r.to_json()} has the wrong rank")
        return profiles
    # default: a functional nonzero on every line of V(x)
    members = compute_sx(sys, args.p, args.q, x).members()
    if not members:
        raise InvalidInput("V(x) is zero at this point; supply --profiles")
    return [SupportProfile(members)]


def cmd_roots(args) -> dict:
    sys = root_system(args.type)
    return {"type": sys.name, "rank": sys.rank, "cartan": [list(r) for r in sys.cartan],
            "positive_roots": [list(r) for r in sys.positive_roots],
            "labels": [format_root(r) for r in sys.positive_roots],
            "highest_root": list(sys.highest_root), "marks": list(sys.marks)}


def cmd_kac(args) -> dict:
    sys, x = _setup(args)
    kac = parse_kac(args.kac, sys, order=args.kac_order)
    values = [psi(x) for psi in simple_affine_roots(sys)]
    return {"type": sys.name, "kac": list(kac.b), "normalizer": kac.normalizer(sys),
            "point": [frac(c) for c in x], "simple_affine_values": [frac(v) for v in values]}


def cmd_delta(args) -> dict:
    sys, x = _setup(args)
    roots, d = delta_x(sys, x)
    return {"delta": frac(d), "roots": [_root_json(sys, r) for r in roots],
            "point": [frac(c) for c in x]}


def cmd_abelianize(args) -> dict:
    sys, x = _setup(args)
    return compute_sx(sys, args.p, args.q, x).to_json()


def cmd_stable(args) -> dict:
    sys, x = _setup(args)
    report = stability_report(_profiles(args, sys, x))
    return {"stable": all(v for v, _ in report),
            "profiles": [{"cone_trivial": v, "certificate": cert.to_json()} for v, cert in report]}


def cmd_depth(args) -> dict:
    sys, x = _setup(args)
    res = depth_report(_profiles(args, sys, x))
    return {"depth": frac(res.depth), "witness": [frac(c) for c in res.witness],
            "profile": res.profile, "r_x": frac(check_barycentre(sys, x)),
            "dual": [dict(_root_json(sys, r), weight=frac(a)) for r, a in sorted(res.dual.items())]}


def cmd_intertwine(args) -> list:
    sys, x = _setup(args)
    return [w.to_json() for w in intertwiners(sys, x, _profiles(args, sys, x), args.lattice)]


COMMANDS = {
    "roots": (cmd_roots, "positive roots, Cartan matrix and marks"),
    "kac": (cmd_kac, "point with the given Kac coordinates"),
    "delta": (cmd_delta, "Delta(x) and delta(x)"),
    "abelianize": (cmd_abelianize, "the index set S(x) of V(x)"),
    "stable": (cmd_stable, "cone-triviality of support profiles, with certificates"),
    "depth": (cmd_depth, "minimal depth over support profiles, with witness"),
    "intertwine": (cmd_intertwine, "candidate intertwiners surviving both filters"),
}


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors: report them as JSON with exit status 1."""

    def error(self, message):
        print(dumps({"error": {"kind": "usage", "message": message}}))
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="epikit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--type", required=True, help='root system, e.g. "G2" or "B5"')
        p.add_argument("--format", choices=("json", "text"), default="json")
        if name == "roots":
            continue
        p.add_argument("--kac", required=True, help='Kac coordinates, e.g. "1,0,1" or "10⇛1"')
        p.add_argument("--kac-order", choices=("diagram", "bourbaki"), default="diagram",
                       help="entry order of --kac (differs only for G2)")
        if name in ("abelianize", "stable", "depth", "intertwine"):
            p.add_argument("--p", type=int, default=2, help="residue characteristic")
            p.add_argument("--q", type=int, default=None, help="residue field size (default p)")
        if name in ("stable", "depth", "intertwine"):
            p.add_argument("--profiles", help="JSON file: array of {lower, upper} affine-root lists")
        if name == "intertwine":
            p.add_argument("--lattice", choices=LATTICES, default="adjoint")
    return parser


def render_text(doc, indent: str = "") -> str:
    """Aligned ``key: value`` text; nested containers are shown as compact JSON."""
    if isinstance(doc, dict):
        width = max((len(k) for k in doc), default=0)
        return "\n".join(f"{indent}{k.ljust(width)}  {_compact(doc[k])}" for k in sorted(doc))
    if isinstance(doc, list):
        return "\n".join(f"{indent}{_compact(item)}" for item in doc)
    return indent + _compact(doc)


def _compact(v) -> str:
    return v if isinstance(v, str) else json.dumps(v, sort_keys=True, ensure_ascii=False)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "q", 0) is None:
            args.q = args.p
        if hasattr(args, "p"):
            check_pq(args.p, args.q)
        doc = COMMANDS[args.command][0](args)
        code = 0
    except Unsupported as exc:
        doc, code = {"error": {"kind": type(exc).__name__, "message": str(exc)}}, 2
    except EpikitError as exc:
        doc, code = {"error": {"kind": type(exc).__name__, "message": str(exc)}}, 1
    out = render_text(doc) if args.format == "text" else dumps(doc)
    print(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
