"""Systems of simple closed curves on an oriented surface, as signed Gauss codes.

A :class:`CurveSystem` records a finite collection of oriented simple closed
curves in general position: every crossing is a transversal double point of
two *distinct* curves (no self-intersections), and each curve lists the
cyclic sequence of crossings it runs through.  The two strands through a
crossing are named slot 0 and slot 1; the crossing sign is ``+1`` when the
slot-1 strand crosses the slot-0 strand from right to left (its direction is
a counterclockwise quarter turn from the slot-0 direction) and ``-1``
otherwise.

The combinatorial map
---------------------

Each crossing carries four darts -- slot 0/1 times in/out.  Two permutations
of the darts determine the surface the system fills:

* ``alpha`` exchanges the two ends of every along-curve arc (the out-dart of
  one visit with the in-dart of the next visit on the same curve);
* ``sigma`` rotates the four darts of a crossing counterclockwise, which for
  a ``+1`` crossing is the cycle ``(s0.in, s1.in, s0.out, s1.out)`` and for
  a ``-1`` crossing is ``(s0.in, s1.out, s0.out, s1.in)``.

Faces are the orbits of ``sigma`` after ``alpha``.  By default the ambient
surface is the closure in which every face is a disk; marking a face key in
``punctured_faces`` removes a point from that disk, which is how systems on
surfaces with punctures are encoded.  A face key is the lexicographically
least of its dart identifiers ``c<crossing>.<slot>.<in|out>``.

Complement regions
------------------

:func:`complement_regions` computes the regions of the surface minus a
sub-collection of the curves.  Faces of the full map are merged across every
arc of a deleted curve; region boundaries are walked with the same
face-tracing rule except that at a crossing with a deleted curve the walk
turns past the deleted strand and continues along the kept curve.  Each
region reports its Euler characteristic, its boundary circles as cyclic
corner words, and the deleted arcs and crossings it swallowed.

Curves with no crossings cannot be placed by the map alone; they are only
accepted when the ``floating`` table records where they went: either an
isotopy partner (the curve sits in an annular neighbourhood of that curve)
or the empty string, meaning the curve bounds a disk in the surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

__all__ = [
    "IN",
    "OUT",
    "Dart",
    "Visit",
    "Curve",
    "Crossing",
    "CurveSystem",
    "Face",
    "Side",
    "Boundary",
    "Region",
    "MapData",
    "make_system",
    "validate",
    "check",
    "derived_map",
    "faces",
    "face_keys",
    "genus",
    "complement_regions",
    "build_bouquet",
    "build_chain",
    "parallel_copy",
    "flip_orientation",
    "curve_components",
    "next_crossing_id",
    "to_json",
    "from_json",
    "canonical_key",
    "isomorphic",
]

IN = "in"
OUT = "out"


class Dart(NamedTuple):
    """One of the four strand ends at a crossing."""

    crossing: int
    slot: int
    io: str

    @property
    def key(self) -> str:
        return f"c{self.crossing}.{self.slot}.{self.io}"


class Visit(NamedTuple):
    """One passage of a curve through a crossing, in one of the two slots."""

    crossing: int
    slot: int


@dataclass(frozen=True)
class Curve:
    name: str
    visits: tuple[Visit, ...]


@dataclass(frozen=True)
class Crossing:
    id: int
    sign: int


@dataclass(frozen=True)
class CurveSystem:
    """A collection of curves in general position, plus surface decorations.

    ``punctured_faces`` holds face keys of the derived map; ``floating``
    holds ``(curve, partner)`` pairs declaring that a crossing-free curve is
    a parallel push-off of the named partner curve, or — when the partner is
    the empty string — that it bounds a disk in the surface.
    """

    curves: tuple[Curve, ...]
    crossings: tuple[Crossing, ...]
    punctured_faces: frozenset[str] = frozenset()
    floating: tuple[tuple[str, str], ...] = ()

    @property
    def curve_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    def curve(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(f"no curve named {name!r}")

    def sign_of(self, crossing: int) -> int:
        for x in self.crossings:
            if x.id == crossing:
                return x.sign
        raise KeyError(f"no crossing with id {crossing}")

    def floating_partner(self, name: str) -> str | None:
        for curve, partner in self.floating:
            if curve == name:
                return partner
        return None


def make_system(
    curves: Mapping[str, Sequence[tuple[int, int]]],
    signs: Mapping[int, int],
    punctured_faces: Iterable[str] = (),
    floating: Iterable[tuple[str, str]] = (),
) -> CurveSystem:
    """Build a :class:`CurveSystem` from plain visit lists and a sign table."""

    return CurveSystem(
        curves=tuple(
            Curve(name, tuple(Visit(c, s) for c, s in visits))
            for name, visits in curves.items()
        ),
        crossings=tuple(Crossing(i, signs[i]) for i in sorted(signs)),
        punctured_faces=frozenset(punctured_faces),
        floating=tuple(floating),
    )


# ---------------------------------------------------------------------------
# Validation


def validate(s: CurveSystem, allow_disconnected: bool = False) -> list[str]:
    """Return a list of diagnostics; an empty list means the system is valid."""

    problems: list[str] = []
    sign_table: dict[int, int] = {}
    for x in s.crossings:
        if x.id in sign_table:
            problems.append(f"duplicate crossing id {x.id}")
        if x.sign not in (-1, 1):
            problems.append(f"crossing {x.id}: sign must be +1 or -1")
        sign_table[x.id] = x.sign

    names = [c.name for c in s.curves]
    if len(set(names)) != len(names):
        problems.append("duplicate curve names")
    floating_names = {curve for curve, _ in s.floating}
    for curve, partner in s.floating:
        if curve not in names:
            problems.append(f"floating record for unknown curve {curve!r}")
        if partner != "" and partner not in names:
            problems.append(f"floating partner {partner!r} is not a curve")

    # slot occupancy: each slot of each crossing used exactly once
    occupants: dict[tuple[int, int], list[str]] = {}
    for c in s.curves:
        if not c.visits:
            # a crossing-free curve needs a floating record to be placed,
            # unless it is the whole system
            if c.name not in floating_names and len(s.curves) > 1:
                problems.append(
                    f"curve {c.name}: no crossings and no floating record"
                )
            continue
        if c.name in floating_names:
            problems.append(f"curve {c.name}: floating but has crossings")
        for v in c.visits:
            if v.crossing not in sign_table:
                problems.append(
                    f"curve {c.name}: unknown crossing {v.crossing}"
                )
                continue
            if v.slot not in (0, 1):
                problems.append(f"curve {c.name}: bad slot at {v.crossing}")
                continue
            occupants.setdefault((v.crossing, v.slot), []).append(c.name)

    for (crossing, slot), users in sorted(occupants.items()):
        if len(users) > 1:
            problems.append(
                f"crossing {crossing} slot {slot}: claimed more than once"
            )
    for crossing in sorted(sign_table):
        u0 = occupants.get((crossing, 0), [])
        u1 = occupants.get((crossing, 1), [])
        if not u0 or not u1:
            problems.append(f"crossing {crossing}: unmatched strand")
        elif u0[0] == u1[0]:
            problems.append(
                f"crossing {crossing}: self-intersection unsupported"
            )

    if problems:
        return problems

    if s.punctured_faces:
        known = set(face_keys(s))
        for key in sorted(s.punctured_faces - known):
            problems.append(f"punctured face {key!r} is not a face key")

    if not allow_disconnected:
        components = curve_components(s)
        if len(components) > 1:
            parts = "; ".join(",".join(sorted(c)) for c in components)
            problems.append(f"disconnected map: components {parts}")
    return problems


def check(s: CurveSystem, allow_disconnected: bool = False) -> CurveSystem:
    """Raise ``ValueError`` when the system is invalid; return it otherwise."""

    problems = validate(s, allow_disconnected=allow_disconnected)
    if problems:
        raise ValueError("; ".join(problems))
    return s


def curve_components(s: CurveSystem) -> list[set[str]]:
    """Connected components of the crossing graph (floating curves excluded)."""

    visiting = [c for c in s.curves if c.visits]
    parent = {c.name: c.name for c in visiting}

    def find(a: str) -> str:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    by_crossing: dict[int, list[str]] = {}
    for c in visiting:
        for v in c.visits:
            by_crossing.setdefault(v.crossing, []).append(c.name)
    for users in by_crossing.values():
        for other in users[1:]:
            parent[find(other)] = find(users[0])
    groups: dict[str, set[str]] = {}
    for c in visiting:
        groups.setdefault(find(c.name), set()).add(c.name)
    return sorted(groups.values(), key=lambda g: sorted(g))


# ---------------------------------------------------------------------------
# The derived combinatorial map


class Arc(NamedTuple):
    """An along-curve arc between consecutive visits."""

    curve: str
    index: int
    tail: Dart  # out-dart where the arc starts
    head: Dart  # in-dart where the arc ends


class Face(NamedTuple):
    darts: tuple[Dart, ...]

    @property
    def key(self) -> str:
        return min(d.key for d in self.darts)

    @property
    def size(self) -> int:
        return len(self.darts)


class MapData:
    """Darts, rotation, arc pairing and faces derived from a system."""

    def __init__(self, s: CurveSystem) -> None:
        sigma: dict[Dart, Dart] = {}
        for x in s.crossings:
            if x.sign == 1:
                cycle = [
                    Dart(x.id, 0, IN),
                    Dart(x.id, 1, IN),
                    Dart(x.id, 0, OUT),
                    Dart(x.id, 1, OUT),
                ]
            else:
                cycle = [
                    Dart(x.id, 0, IN),
                    Dart(x.id, 1, OUT),
                    Dart(x.id, 0, OUT),
                    Dart(x.id, 1, IN),
                ]
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                sigma[a] = b

        alpha: dict[Dart, Dart] = {}
        curve_of: dict[Dart, str] = {}
        arcs: list[Arc] = []
        for c in s.curves:
            m = len(c.visits)
            for i, v in enumerate(c.visits):
                nxt = c.visits[(i + 1) % m]
                tail = Dart(v.crossing, v.slot, OUT)
                head = Dart(nxt.crossing, nxt.slot, IN)
                alpha[tail] = head
                alpha[head] = tail
                curve_of[tail] = c.name
                curve_of[Dart(v.crossing, v.slot, IN)] = c.name
                arcs.append(Arc(c.name, i, tail, head))

        darts = tuple(sorted(sigma, key=lambda d: (d.crossing, d.slot, d.io)))
        faces: list[Face] = []
        face_index: dict[Dart, int] = {}
        seen: set[Dart] = set()
        for start in darts:
            if start in seen:
                continue
            orbit: list[Dart] = []
            d = start
            while d not in seen:
                seen.add(d)
                orbit.append(d)
                d = sigma[alpha[d]]
            for e in orbit:
                face_index[e] = len(faces)
            faces.append(Face(tuple(orbit)))

        self.darts = darts
        self.sigma = sigma
        self.alpha = alpha
        self.curve_of = curve_of
        self.arcs = tuple(arcs)
        self.faces = tuple(faces)
        self.face_index = face_index


@lru_cache(maxsize=None)
def derived_map(s: CurveSystem) -> MapData:
    return MapData(s)


def faces(s: CurveSystem) -> tuple[Face, ...]:
    return derived_map(s).faces


def face_keys(s: CurveSystem) -> tuple[str, ...]:
    return tuple(sorted(f.key for f in faces(s)))


def genus(s: CurveSystem) -> tuple[int, int]:
    """Genus of the ambient surface and its puncture count.

    With every unpunctured face capped by a disk, the map has ``V = C``
    vertices, ``E = 2C`` edges and ``F`` faces, so the closed surface has
    Euler characteristic ``F - C`` and genus ``(2 - (F - C)) // 2``; the
    punctured faces are reported separately.
    """

    if not s.crossings:
        raise ValueError("genus is undefined for a system with no crossings")
    components = curve_components(s)
    if len(components) > 1:
        parts = "; ".join(",".join(sorted(c)) for c in components)
        raise ValueError(f"disconnected map: components {parts}")
    chi = len(faces(s)) - len(s.crossings)
    if chi % 2:
        raise ValueError("map does not close up to an orientable surface")
    return (2 - chi) // 2, len(s.punctured_faces)


# ---------------------------------------------------------------------------
# Complement regions


class Side(NamedTuple):
    """A maximal boundary run along one kept curve.

    ``darts`` are the face-walk darts composing the run, and ``through``
    lists the crossings with deleted curves that the run passes straight
    through, in walk order.
    """

    curve: str
    darts: tuple[Dart, ...]
    through: tuple[int, ...]


class Boundary(NamedTuple):
    """One boundary circle of a region.

    ``corners[i]`` is the crossing where ``sides[i-1]`` meets ``sides[i]``;
    a circle that closes up smoothly (a full copy of one curve) has a single
    side and no corners.
    """

    sides: tuple[Side, ...]
    corners: tuple[int, ...]

    @property
    def curves(self) -> tuple[str, ...]:
        return tuple(side.curve for side in self.sides)


@dataclass(frozen=True)
class Region:
    """A connected component of the surface minus a sub-collection of curves."""

    key: str
    face_keys: tuple[str, ...]
    chi: int
    boundaries: tuple[Boundary, ...]
    punctured: bool
    interior_arcs: tuple[tuple[str, int], ...]
    interior_crossings: tuple[int, ...]

    @property
    def is_disk(self) -> bool:
        return self.chi == 1 and not self.punctured

    @property
    def is_annulus(self) -> bool:
        return self.chi == 0 and len(self.boundaries) == 2 and not self.punctured


def complement_regions(s: CurveSystem, sub: Iterable[str]) -> tuple[Region, ...]:
    """Regions of the surface minus the curves named in ``sub``.

    Curves not in ``sub`` are deleted: faces of the full map merge across
    their arcs, their crossings with kept curves become interior points of
    the boundary sides, and crossings between two deleted curves become
    interior points of the regions.
    """

    kept = set(sub)
    names = set(s.curve_names)
    unknown = kept - names
    if unknown:
        raise ValueError(f"unknown curves in sub-collection: {sorted(unknown)}")
    if not kept:
        raise ValueError("sub-collection must name at least one curve")
    md = derived_map(s)
    deleted = {c.name for c in s.curves if c.visits and c.name not in kept}

    # merge faces across every deleted arc
    parent = list(range(len(md.faces)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for arc in md.arcs:
        if arc.curve in deleted:
            a, b = find(md.face_index[arc.tail]), find(md.face_index[arc.head])
            if a != b:
                parent[a] = b

    regions_faces: dict[int, list[int]] = {}
    for i in range(len(md.faces)):
        regions_faces.setdefault(find(i), []).append(i)

    region_arcs: dict[int, list[tuple[str, int]]] = {}
    for arc in md.arcs:
        if arc.curve in deleted:
            root = find(md.face_index[arc.tail])
            region_arcs.setdefault(root, []).append((arc.curve, arc.index))

    slot_user: dict[tuple[int, int], str] = {}
    for c in s.curves:
        for v in c.visits:
            slot_user[(v.crossing, v.slot)] = c.name
    region_crossings: dict[int, list[int]] = {}
    for x in s.crossings:
        u0 = slot_user.get((x.id, 0))
        u1 = slot_user.get((x.id, 1))
        if u0 in deleted and u1 in deleted:
            root = find(md.face_index[Dart(x.id, 0, IN)])
            region_crossings.setdefault(root, []).append(x.id)

    # boundary circles: iterate the face-walk, turning past deleted strands
    def next_kept(d: Dart) -> tuple[Dart, tuple[int, ...]]:
        e = md.sigma[md.alpha[d]]
        through: list[int] = []
        while md.curve_of[e] in deleted:
            if not through:
                through.append(e.crossing)
            e = md.sigma[e]
        return e, tuple(through)

    kept_darts = [d for d in md.darts if md.curve_of[d] in kept]
    boundaries_at: dict[int, list[Boundary]] = {}
    seen: set[Dart] = set()
    for start in kept_darts:
        if start in seen:
            continue
        walk: list[Dart] = []
        smooth: list[tuple[int, ...]] = []  # crossings skipped after walk[i]
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d, through = next_kept(d)
            smooth.append(through)
        # group the walk into maximal same-curve runs at smooth transitions
        n = len(walk)
        breaks = [i for i in range(n) if not smooth[i]]  # corner after walk[i]
        if breaks:
            sides: list[Side] = []
            corners: list[int] = []
            for bi, e in enumerate(breaks):
                begin = breaks[bi - 1] + 1
                idxs = (
                    list(range(begin, e + 1))
                    if begin <= e
                    else list(range(begin, n)) + list(range(0, e + 1))
                )
                run = [walk[i] for i in idxs]
                through = tuple(
                    x for i in idxs[:-1] for x in smooth[i]
                )
                curve = md.curve_of[run[0]]
                sides.append(Side(curve, tuple(run), through))
                corners.append(md.alpha[walk[e]].crossing)
            # corners[i] computed above is the corner *after* sides[i];
            # shift so corners[i] precedes sides[i]
            corners = corners[-1:] + corners[:-1]
        else:
            through = tuple(x for t in smooth for x in t)
            sides = [Side(md.curve_of[walk[0]], tuple(walk), through)]
            corners = []
        # deterministic rotation: start at the side containing the least dart
        least = min(range(len(sides)), key=lambda i: min(d.key for d in sides[i].darts))
        sides = sides[least:] + sides[:least]
        corners = corners[least:] + corners[:least]
        root = find(md.face_index[start])
        boundaries_at.setdefault(root, []).append(
            Boundary(tuple(sides), tuple(corners))
        )

    regions: list[Region] = []
    for root, face_ids in regions_faces.items():
        keys = sorted(md.faces[i].key for i in face_ids)
        arcs_here = sorted(region_arcs.get(root, []))
        crossings_here = sorted(region_crossings.get(root, []))
        chi = len(face_ids) - len(arcs_here) + len(crossings_here)
        bounds = tuple(
            sorted(
                boundaries_at.get(root, []),
                key=lambda b: min(d.key for side in b.sides for d in side.darts),
            )
        )
        regions.append(
            Region(
                key=keys[0],
                face_keys=tuple(keys),
                chi=chi,
                boundaries=bounds,
                punctured=any(k in s.punctured_faces for k in keys),
                interior_arcs=tuple(arcs_here),
                interior_crossings=tuple(crossings_here),
            )
        )
    return tuple(sorted(regions, key=lambda r: r.key))


# ---------------------------------------------------------------------------
# Builders


def build_bouquet(n: int) -> CurveSystem:
    """The canonical system of ``n`` curves pairwise crossing exactly once.

    There is one crossing per pair, numbered in lexicographic pair order;
    the lower-numbered curve takes slot 0 and every sign is ``+1``; curve
    ``i`` visits its partners in increasing order.  All pairwise geometric
    intersection numbers are 1 and the cyclic order of the curves around
    the common intersection pattern is ``1, 2, ..., n``.
    """

    if n < 1:
        raise ValueError("a bouquet needs at least one curve")
    if n == 1:
        return make_system({"1": []}, {})
    pair_id = {
        pair: i for i, pair in enumerate(combinations(range(1, n + 1), 2))
    }
    curves: dict[str, list[tuple[int, int]]] = {}
    for i in range(1, n + 1):
        visits = []
        for j in range(1, n + 1):
            if j == i:
                continue
            pair = (min(i, j), max(i, j))
            visits.append((pair_id[pair], 0 if i < j else 1))
        curves[str(i)] = visits
    signs = {i: 1 for i in pair_id.values()}
    return make_system(curves, signs)


def build_chain(n: int) -> CurveSystem:
    """The canonical chain: consecutive curves cross once, others not at all.

    Crossing ``i-1`` joins curves ``i`` and ``i+1`` with the lower curve in
    slot 0 and sign ``+1``.
    """

    if n < 2:
        raise ValueError("a chain needs at least two curves")
    curves: dict[str, list[tuple[int, int]]] = {}
    for i in range(1, n + 1):
        visits = []
        if i > 1:
            visits.append((i - 2, 1))
        if i < n:
            visits.append((i - 1, 0))
        curves[str(i)] = visits
    signs = {i: 1 for i in range(n - 1)}
    return make_system(curves, signs)


def next_crossing_id(s: CurveSystem) -> int:
    return max((x.id for x in s.crossings), default=-1) + 1


def parallel_copy(
    s: CurveSystem, name: str, new_name: str | None = None, separated: bool = False
) -> CurveSystem:
    """Add a parallel push-off of the named curve.

    With ``separated=True`` the copy is disjoint from everything and is
    recorded in the ``floating`` table.  Otherwise the copy runs alongside
    the original on its left, crossing every curve the original crosses at
    an adjacent crossing, and crossing the original itself twice in a small
    transverse wiggle (one ``+1`` and one ``-1`` crossing, so the pair spans
    a removable lens).
    """

    base = s.curve(name)
    if new_name is None:
        new_name = f"{name}'"
    if new_name in s.curve_names:
        raise ValueError(f"curve {new_name!r} already exists")
    if separated:
        return CurveSystem(
            curves=s.curves + (Curve(new_name, ()),),
            crossings=s.crossings,
            punctured_faces=s.punctured_faces,
            floating=s.floating + ((new_name, name),),
        )
    if not base.visits:
        raise ValueError("cannot push off a crossing-free curve transversally")

    fresh = next_crossing_id(s)
    sign_of = {x.id: x.sign for x in s.crossings}
    # one companion crossing per original visit, plus the two wiggle crossings
    companion = {v.crossing: fresh + t for t, v in enumerate(base.visits)}
    y1 = fresh + len(base.visits)
    y2 = y1 + 1

    new_signs = dict(sign_of)
    for v in base.visits:
        new_signs[companion[v.crossing]] = sign_of[v.crossing]
    new_signs[y1] = -1
    new_signs[y2] = 1

    new_curves: list[Curve] = []
    for c in s.curves:
        if c.name == name:
            visits = [Visit(v.crossing, v.slot) for v in c.visits]
            visits += [Visit(y1, 0), Visit(y2, 0)]
            new_curves.append(Curve(c.name, tuple(visits)))
            continue
        visits = []
        for v in c.visits:
            if v.crossing in companion:
                # this curve crosses the original here; it meets the copy
                # just after when the stored sign says it travels from the
                # original's right to its left, just before otherwise
                base_slot = 1 - v.slot
                frame_sign = sign_of[v.crossing] * (1 if base_slot == 0 else -1)
                extra = Visit(companion[v.crossing], v.slot)
                if frame_sign == 1:
                    visits.extend([Visit(v.crossing, v.slot), extra])
                else:
                    visits.extend([extra, Visit(v.crossing, v.slot)])
            else:
                visits.append(Visit(v.crossing, v.slot))
        new_curves.append(Curve(c.name, tuple(visits)))
    copy_visits = [Visit(companion[v.crossing], v.slot) for v in base.visits]
    copy_visits += [Visit(y1, 1), Visit(y2, 1)]
    new_curves.append(Curve(new_name, tuple(copy_visits)))

    return CurveSystem(
        curves=tuple(new_curves),
        crossings=tuple(Crossing(i, new_signs[i]) for i in sorted(new_signs)),
        punctured_faces=s.punctured_faces,
        floating=s.floating,
    )


def flip_orientation(s: CurveSystem, name: str) -> CurveSystem:
    """Reverse one curve; every sign on its crossings flips."""

    base = s.curve(name)
    on_curve = {v.crossing for v in base.visits}
    curves = tuple(
        Curve(c.name, tuple(reversed(c.visits))) if c.name == name else c
        for c in s.curves
    )
    crossings = tuple(
        Crossing(x.id, -x.sign if x.id in on_curve else x.sign)
        for x in s.crossings
    )
    return CurveSystem(curves, crossings, s.punctured_faces, s.floating)


# ---------------------------------------------------------------------------
# Serialization


def to_json(s: CurveSystem) -> str:
    """Serialize canonically: curve order preserved, crossings sorted by id."""

    obj: dict = {
        "curves": [
            {"id": c.name, "visits": [[v.crossing, v.slot] for v in c.visits]}
            for c in s.curves
        ],
        "crossings": [
            {"id": x.id, "sign": x.sign}
            for x in sorted(s.crossings, key=lambda x: x.id)
        ],
    }
    if s.punctured_faces:
        obj["punctured_faces"] = sorted(s.punctured_faces)
    if s.floating:
        obj["floating"] = {curve: partner for curve, partner in sorted(s.floating)}
    return json.dumps(obj, indent=2) + "\n"


def from_json(text: str) -> CurveSystem:
    obj = json.loads(text)
    if not isinstance(obj, dict) or "curves" not in obj or "crossings" not in obj:
        raise ValueError("expected an object with 'curves' and 'crossings'")
    curves = tuple(
        Curve(str(c["id"]), tuple(Visit(int(a), int(b)) for a, b in c["visits"]))
        for c in obj["curves"]
    )
    crossings = tuple(
        Crossing(int(x["id"]), int(x["sign"]))
        for x in sorted(obj["crossings"], key=lambda x: x["id"])
    )
    return CurveSystem(
        curves=curves,
        crossings=crossings,
        punctured_faces=frozenset(obj.get("punctured_faces", ())),
        floating=tuple(sorted((k, v) for k, v in obj.get("floating", {}).items())),
    )


# ---------------------------------------------------------------------------
# Map isomorphism


def _encode_from(md: MapData, start: Dart) -> tuple:
    """Canonical traversal code of the dart structure from a starting dart."""

    index = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        d = order[i]
        for e in (md.sigma[d], md.alpha[d]):
            if e not in index:
                index[e] = len(order)
                order.append(e)
        i += 1
    code = tuple((index[md.sigma[d]], index[md.alpha[d]]) for d in order)
    return code, index


def _component_codes(s: CurveSystem) -> tuple:
    md = derived_map(s)
    punctured_faces = [f for f in md.faces if f.key in s.punctured_faces]
    remaining = set(md.darts)
    codes = []
    while remaining:
        _, seen = _encode_from(md, min(remaining))
        comp_darts = sorted(seen, key=seen.get)
        best = None
        for start in comp_darts:
            code, index = _encode_from(md, start)
            punct = tuple(
                sorted(
                    min(index[d] for d in f.darts)
                    for f in punctured_faces
                    if f.darts[0] in index
                )
            )
            cand = (code, punct)
            if best is None or cand < best:
                best = cand
        codes.append(best)
        remaining -= set(comp_darts)
    return tuple(sorted(codes))


def canonical_key(s: CurveSystem) -> tuple:
    """A key equal for exactly the isomorphic systems.

    Isomorphism means a relabelling of crossings, slots and curve names,
    together with reorientation of any subset of curves, carrying one
    derived map (with its punctures) onto the other.  Floating records are
    compared by partner structure.
    """

    flippable = tuple(c.name for c in s.curves if c.visits)
    best = None
    for mask in range(1 << len(flippable)):
        t = s
        for bit, name in enumerate(flippable):
            if mask >> bit & 1:
                t = flip_orientation(t, name)
        cand = _component_codes(t)
        if best is None or cand < best:
            best = cand
    # floating records compared by the link structure of their partner
    # chains: how many hops until a map curve (or a cycle) is reached
    links = dict(s.floating)

    def chain_shape(name: str) -> tuple[int, bool]:
        depth, visited = 0, set()
        while name in links and name not in visited:
            visited.add(name)
            name = links[name]
            depth += 1
        return depth, name in links  # ended in a cycle?

    floating_code = tuple(sorted(chain_shape(curve) for curve, _ in s.floating))
    return best, floating_code


def isomorphic(a: CurveSystem, b: CurveSystem) -> bool:
    return canonical_key(a) == canonical_key(b)
