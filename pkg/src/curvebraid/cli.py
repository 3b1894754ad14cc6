"""Command-line front end.

Commands are grouped by engine::

    braid nf|eq          normal forms and equality of braid words
    pres verify|eq       cycle-presentation relators and twist-word equality
    curves validate|info|intersect|twist|reduce
                         curve-system queries and surgeries
    bouquet check|chain  bouquet decisions and the chain transformation
    gen bouquet|chain    canonical generators, optionally twist-mutated
    render               DOT or SVG picture of a system's combinatorial map

Report lines are plain text prefixed by a stable tag (``VERDICT``,
``ORDER``, ``WITNESS``, ``RELATOR``, ``GENUS``, ``INTERSECT``, plus the
subsidiary ``REASON``, ``NOTE``, ``PROBLEM``, ``CURVE``, ``FACE``).
Commands whose result is a curve system or a word print that document
instead, so commands compose over pipes; ``-`` reads a system from stdin.

Exit codes: 0 for success and affirmative verdicts, 1 for negative
verdicts, 2 for parse and precondition errors (one-line diagnostic on
stderr).
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from typing import Sequence

from . import bouquet as bq
from . import braid
from . import cyclepres
from .curvesys import (
    CurveSystem,
    build_bouquet,
    build_chain,
    derived_map,
    faces,
    from_json,
    genus,
    to_json,
    validate,
)
from .moves import (
    PunctureBlocked,
    UnsupportedReduction,
    dehn_twist,
    intersection_number,
    reduce_pair,
)
from .words import braid_alphabet, format_word, parse_word, twist_alphabet

_SHAPES = {2: "bigon", 3: "triangle", 4: "quadrilateral", 6: "hexagon"}


def _read_system(path: str) -> CurveSystem:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    s = from_json(text)
    problems = validate(s)
    if problems:
        raise ValueError(f"invalid curve system: {problems[0]}")
    return s


def _parse_braid_word(text: str, strands: int | None):
    alphabet = braid_alphabet(strands) if strands else None
    return parse_word(text, alphabet)


def _parse_twist_word(text: str, n: int | None):
    alphabet = twist_alphabet(n) if n else None
    return parse_word(text, alphabet)


# ---------------------------------------------------------------------------
# braid


def _cmd_braid_nf(args) -> int:
    word = _parse_braid_word(args.word, args.strands)
    nf = braid.normal_form(word)
    canonical = braid.as_word(nf)
    print(f"B{nf.strands}: {format_word(canonical)}".rstrip())
    return 0


def _cmd_braid_eq(args) -> int:
    u = _parse_braid_word(args.left, args.strands)
    v = _parse_braid_word(args.right, args.strands)
    equal = braid.equals(u, v)
    print(f"VERDICT {'equal' if equal else 'unequal'}")
    return 0 if equal else 1


# ---------------------------------------------------------------------------
# pres


def _cmd_pres_verify(args) -> int:
    results = cyclepres.verify_relators(args.n)
    ok = True
    for label, holds in results:
        print(f"RELATOR {label} {'OK' if holds else 'FAIL'}")
        ok = ok and holds
    return 0 if ok else 1


def _cmd_pres_eq(args) -> int:
    u = _parse_twist_word(args.left, args.n)
    v = _parse_twist_word(args.right, args.n)
    if u.alphabet != v.alphabet:
        raise ValueError("twist words over different generator counts")
    equal = cyclepres.twist_word_equals(u.alphabet.size, u, v)
    print(f"VERDICT {'equal' if equal else 'unequal'}")
    return 0 if equal else 1


# ---------------------------------------------------------------------------
# curves


def _cmd_curves_validate(args) -> int:
    text = sys.stdin.read() if args.system == "-" else open(args.system, encoding="utf-8").read()
    problems = validate(from_json(text))
    if problems:
        print("VERDICT invalid")
        for p in problems:
            print(f"PROBLEM {p}")
        return 1
    print("VERDICT valid")
    return 0


def _cmd_curves_info(args) -> int:
    s = _read_system(args.system)
    g, punctures = genus(s)
    print(f"GENUS {g} {punctures}")
    for c in s.curves:
        print(f"CURVE {c.name} {len(c.visits)}")
    for f in sorted(faces(s), key=lambda f: f.key):
        shape = _SHAPES.get(f.size, f"{f.size}-gon")
        mark = " punctured" if f.key in s.punctured_faces else ""
        print(f"FACE {f.key} {f.size} {shape}{mark}")
    return 0


def _cmd_curves_intersect(args) -> int:
    s = _read_system(args.system)
    try:
        number = intersection_number(s, args.a, args.b)
    except PunctureBlocked as blocked:
        number = blocked.crossings  # minimal for the punctured surface
    print(f"INTERSECT {number}")
    return 0


def _cmd_curves_twist(args) -> int:
    s = _read_system(args.system)
    sys.stdout.write(to_json(dehn_twist(s, args.curve, args.along, args.power)))
    return 0


def _cmd_curves_reduce(args) -> int:
    s = _read_system(args.system)
    if (args.a is None) != (args.b is None):
        raise ValueError("--a and --b must be given together")
    if args.a is not None:
        try:
            t = reduce_pair(s, args.a, args.b)
        except PunctureBlocked as blocked:
            print("NOTE reduction blocked by punctures; result is minimal "
                  "for the punctured surface", file=sys.stderr)
            t = blocked.system
    else:
        t = bq.reduce_family(s)
    sys.stdout.write(to_json(t))
    return 0


# ---------------------------------------------------------------------------
# bouquet


def _print_certificate(cert: bq.BouquetCertificate) -> None:
    print(f"VERDICT {'yes' if cert.verdict else 'no'}")
    if cert.verdict:
        print(f"ORDER {' '.join(cert.order)}")
    else:
        print(f"REASON {cert.reason}: {' '.join(cert.failing)}")
    if cert.note:
        print(f"NOTE {cert.note}")
    for w in cert.witnesses:
        triangle = w.triangle if w.triangle is not None else "-"
        print(f"WITNESS {' '.join(w.triple)} {w.intersection} {triangle}")


def _cmd_bouquet_check(args) -> int:
    s = _read_system(args.system)
    curves = tuple(args.curves) if args.curves else s.curve_names
    cert = bq.detect_bouquet(s, curves)
    _print_certificate(cert)
    return 0 if cert.verdict else 1


def _cmd_bouquet_chain(args) -> int:
    s = _read_system(args.system)
    curves = tuple(args.curves) if args.curves else s.curve_names
    cert = bq.detect_bouquet(s, curves)
    if not cert.verdict:
        print(f"VERDICT no", file=sys.stderr)
        print(f"REASON {cert.reason}: {' '.join(cert.failing)}", file=sys.stderr)
        return 1
    sys.stdout.write(to_json(bq.bouquet_to_chain(s, cert)))
    return 0


# ---------------------------------------------------------------------------
# gen


def _mutate(s: CurveSystem, steps: int, rng: random.Random) -> CurveSystem:
    """Apply twist surgeries followed by reduction, skipping unsupported ones."""
    names = list(s.curve_names)
    for _ in range(steps):
        for _attempt in range(32):
            curve, along = rng.sample(names, 2)
            power = rng.choice((-1, 1))
            try:
                candidate = bq.reduce_family(dehn_twist(s, curve, along, power))
            except UnsupportedReduction:
                continue
            s = candidate
            break
        else:
            raise RuntimeError("no representable mutation found in 32 attempts")
    return s


def _cmd_gen(args, builder) -> int:
    s = builder(args.n)
    if args.mutate:
        s = _mutate(s, args.mutate, random.Random(args.seed))
    sys.stdout.write(to_json(s))
    return 0


# ---------------------------------------------------------------------------
# render


def _rotation_positions(s: CurveSystem) -> dict:
    """Dart -> position in its crossing's rotation cycle (0..3)."""
    md = derived_map(s)
    positions = {}
    for x in s.crossings:
        from .curvesys import IN, Dart

        d = Dart(x.id, 0, IN)
        for i in range(4):
            positions[d] = i
            d = md.sigma[d]
    return positions


def _face_notes(s: CurveSystem) -> list[str]:
    notes = []
    for f in sorted(faces(s), key=lambda f: f.key):
        shape = _SHAPES.get(f.size, f"{f.size}-gon")
        mark = ", punctured" if f.key in s.punctured_faces else ""
        notes.append(f"face {f.key}: {f.size} sides ({shape}{mark})")
    return notes


def render_dot(s: CurveSystem) -> str:
    """The combinatorial map as an undirected DOT graph.

    Nodes are crossings; edges are along-curve arcs, labelled
    ``curve.index`` and carrying the rotation positions of their two end
    darts (``tailrot``/``headrot``).  Faces are annotated as comments.
    """
    md = derived_map(s)
    pos = _rotation_positions(s)
    lines = ["graph curvesystem {"]
    for note in _face_notes(s):
        lines.append(f"  // {note}")
    for x in s.crossings:
        sign = "+" if x.sign == 1 else "-"
        lines.append(f'  n{x.id} [label="x{x.id} ({sign})"];')
    for arc in md.arcs:
        lines.append(
            f"  n{arc.tail.crossing} -- n{arc.head.crossing} "
            f'[label="{arc.curve}.{arc.index}" '
            f"tailrot={pos[arc.tail]} headrot={pos[arc.head]}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def render_svg(s: CurveSystem) -> str:
    """Best-effort picture: crossings on a circle, arcs as curved strokes."""
    md = derived_map(s)
    notes = _face_notes(s)
    cx, cy, radius = 220.0, 200.0, 150.0
    ids = [x.id for x in s.crossings]
    spot = {}
    for i, xid in enumerate(ids):
        angle = 2 * math.pi * i / max(len(ids), 1)
        spot[xid] = (cx + radius * math.cos(angle), cy + radius * math.sin(angle))
    color = {c.name: _PALETTE[i % len(_PALETTE)] for i, c in enumerate(s.curves)}
    height = 420 + 18 * len(notes)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 440 {height}">',
        f'<rect width="440" height="{height}" fill="white"/>',
    ]
    for arc in md.arcs:
        x1, y1 = spot[arc.tail.crossing]
        x2, y2 = spot[arc.head.crossing]
        stroke = color[arc.curve]
        if arc.tail.crossing == arc.head.crossing:
            # a small loop beside the crossing, bulging away from the center
            dx, dy = x1 - cx, y1 - cy
            norm = math.hypot(dx, dy) or 1.0
            ox, oy = dx / norm * 60, dy / norm * 60
            path = (
                f"M {x1:.1f} {y1:.1f} "
                f"c {ox + oy:.1f} {oy - ox:.1f} {ox - oy:.1f} {oy + ox:.1f} 0 0"
            )
        else:
            # pull toward the center, spread multiple arcs apart
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            pull = 0.35 + 0.15 * (arc.index % 3)
            qx, qy = mx + (cx - mx) * pull, my + (cy - my) * pull
            path = f"M {x1:.1f} {y1:.1f} Q {qx:.1f} {qy:.1f} {x2:.1f} {y2:.1f}"
        out.append(
            f'<path d="{path}" fill="none" stroke="{stroke}" stroke-width="2">'
            f"<title>{arc.curve}.{arc.index}</title></path>"
        )
    for xid, (x, y) in spot.items():
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="4" fill="black"/>')
        out.append(f'<text x="{x + 6:.1f}" y="{y - 6:.1f}" font-size="12">x{xid}</text>')
    legend_y = 415
    for name in color:
        out.append(
            f'<text x="20" y="{legend_y}" font-size="12" fill="{color[name]}">'
            f"curve {name}</text>"
        )
        legend_y += 14
    for note in notes:
        out.append(f'<text x="160" y="{legend_y - 14 * len(color)}" font-size="12">{note}</text>')
        legend_y += 18
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _cmd_render(args) -> int:
    s = _read_system(args.system)
    sys.stdout.write(render_dot(s) if args.format == "dot" else render_svg(s))
    return 0


# ---------------------------------------------------------------------------
# Dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvebraid",
        description="Exact bouquet decisions for curves on surfaces, and the braid algebra mirroring them.",
    )
    top = parser.add_subparsers(dest="group", required=True)

    p_braid = top.add_parser("braid", help="braid-word normal forms and equality")
    sub = p_braid.add_subparsers(dest="command", required=True)
    p = sub.add_parser("nf", help="canonical word of the Garside normal form")
    p.add_argument("word")
    p.add_argument("--strands", type=int)
    p.set_defaults(func=_cmd_braid_nf)
    p = sub.add_parser("eq", help="exact braid equality")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--strands", type=int)
    p.set_defaults(func=_cmd_braid_eq)

    p_pres = top.add_parser("pres", help="cycle presentation of twist generators")
    sub = p_pres.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", help="check every relator maps to a trivial braid")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_pres_verify)
    p = sub.add_parser("eq", help="twist-word equality through the braid embedding")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--n", type=int)
    p.set_defaults(func=_cmd_pres_eq)

    p_curves = top.add_parser("curves", help="curve-system queries and surgeries")
    sub = p_curves.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", help="structural diagnostics")
    p.add_argument("system")
    p.set_defaults(func=_cmd_curves_validate)
    p = sub.add_parser("info", help="genus, curves, faces")
    p.add_argument("system")
    p.set_defaults(func=_cmd_curves_info)
    p = sub.add_parser("intersect", help="geometric intersection number")
    p.add_argument("system")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_curves_intersect)
    p = sub.add_parser("twist", help="Dehn twist one curve along another")
    p.add_argument("system")
    p.add_argument("--curve", required=True)
    p.add_argument("--along", required=True)
    p.add_argument("--power", type=int, default=1)
    p.set_defaults(func=_cmd_curves_twist)
    p = sub.add_parser("reduce", help="bigon reduction (one pair, or all pairs)")
    p.add_argument("system")
    p.add_argument("--a")
    p.add_argument("--b")
    p.set_defaults(func=_cmd_curves_reduce)

    p_bouquet = top.add_parser("bouquet", help="bouquet decisions")
    sub = p_bouquet.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", help="decide whether curves form a bouquet")
    p.add_argument("system")
    p.add_argument("--curves", nargs="+")
    p.set_defaults(func=_cmd_bouquet_check)
    p = sub.add_parser("chain", help="transform a bouquet into a chain")
    p.add_argument("system")
    p.add_argument("--curves", nargs="+")
    p.set_defaults(func=_cmd_bouquet_chain)

    p_gen = top.add_parser("gen", help="canonical curve systems")
    sub = p_gen.add_subparsers(dest="command", required=True)
    for name, builder in (("bouquet", build_bouquet), ("chain", build_chain)):
        p = sub.add_parser(name, help=f"canonical {name} of n curves")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--mutate", type=int, default=0, metavar="STEPS",
                       help="twist surgeries + reductions to apply")
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=_cmd_gen, builder=builder)

    p = top.add_parser("render", help="DOT or SVG picture of the combinatorial map")
    p.add_argument("system")
    p.add_argument("--format", choices=("dot", "svg"), default="dot")
    p.set_defaults(func=_cmd_render)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and execute one command; returns the exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "builder"):
            return args.func(args, args.builder)
        return args.func(args)
    except BrokenPipeError:
        return 0
    except (ValueError, KeyError, OSError, UnsupportedReduction) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "render_dot", "render_svg"]


if __name__ == "__main__":
    main()
