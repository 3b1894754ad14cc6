"""Surgery on curve systems: bigon reduction, Dehn twists, isotopy tests.

Every operation here consumes and produces :class:`~curvebraid.curvesys.CurveSystem`
values; nothing is mutated in place.  The central primitive is
:func:`isotope_across`, which sweeps a curve across a disk region of its
complement: the curve's boundary side is replaced by a path running just
beyond the rest of the region's boundary, with every crossing created or
removed by the sweep accounted for exactly (including signs and the order
of new crossings along every affected curve).  Bigon reduction is the
two-sided special case of that sweep, and intersection numbers are read
off once no bigon remains.

Dehn twists are performed in an annulus model around the twisting curve:
each strand of the target passing through the annulus becomes a parallel
spiral (the image of a radial arc under a linear shear), so the twisted
curve is simple by construction and its new crossings with every other
curve — and with the twisting curve itself — are enumerated with exact
fractional coordinates rather than floating point.

Conventions frozen here:

* ``TWIST_HANDEDNESS`` fixes which geometric handedness the power ``+1``
  twist denotes; it is calibrated so that in ``build_bouquet(3)`` with
  curves ``a, b, c`` the curve ``dehn_twist(c, along=b, power=-1)`` is
  disjoint from ``a`` after reduction.
* ``MU0`` fixes which sign product of the three pairwise crossings of a
  once-crossing triple denotes the cyclic order ``ABC``; it is calibrated
  so that ``build_bouquet(3)`` realises the order ``1 < 2 < 3 < 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curvesys import (
    IN,
    OUT,
    Crossing,
    Curve,
    CurveSystem,
    Dart,
    Region,
    Side,
    Visit,
    complement_regions,
    curve_components,
    derived_map,
    genus,
    next_crossing_id,
)

#: Geometric handedness denoted by ``power=+1``; see the module docstring.
TWIST_HANDEDNESS = 1

#: Sign product of a once-crossing triple's pairwise crossings (each taken in
#: the frame of the pair's first-named curve) that denotes cyclic order ABC.
MU0 = -1


class PunctureBlocked(RuntimeError):
    """A bigon sweep is prevented by a puncture inside the candidate region.

    Carries the pair, the crossing count at the point the reduction stopped,
    and the partially reduced system.  The count is exact for the punctured
    surface: a pair that is not in minimal position there must still bound
    an unpunctured disk bigon, so running out of those means minimality.
    """

    def __init__(
        self,
        pair: tuple[str, str],
        crossings: int,
        system: CurveSystem,
        region_keys: tuple[str, ...],
    ) -> None:
        self.pair = pair
        self.crossings = crossings
        self.system = system
        self.region_keys = region_keys
        super().__init__(
            f"reduction of pair {pair} blocked by puncture(s) in bigon(s) "
            f"{', '.join(region_keys)}; {crossings} crossings remain "
            f"(minimal for the punctured surface)"
        )


class UnsupportedReduction(RuntimeError):
    """A surgery would produce a position the encoding cannot express.

    Three situations raise this.  A curve that loses every visit has no
    Gauss-code position; only two such cases stay representable — an
    isolated pair unlinking completely (mutual floating records) and an
    emptied curve whose drawn remainder still fills the same surface (the
    curve then bounds a disk and is recorded with the reserved empty-string
    partner).  A sweep that splits the crossing graph loses the relative
    placement of the parts.  And a puncture whose face keeps no crossing
    untouched by the surgery cannot be tracked to a face of the result;
    guessing could later corrupt an isotopy verdict, so the surgery is
    refused instead.
    """


# ---------------------------------------------------------------------------
# Frame signs and boundary-side geometry


def _frame_sign(s: CurveSystem, crossing: int, curve: str) -> int:
    """Sign of ``crossing`` in the frame of ``curve``.

    ``+1`` means the other strand crosses ``curve`` from right to left
    (its direction is a positive quarter-turn from ``curve``'s).
    """

    for c in s.curves:
        for v in c.visits:
            if v.crossing == crossing and c.name == curve:
                stored = s.sign_of(crossing)
                return stored if v.slot == 0 else -stored
    raise KeyError(f"curve {curve!r} does not visit crossing {crossing}")


def _visit_index(curve: Curve, crossing: int) -> int:
    for i, v in enumerate(curve.visits):
        if v.crossing == crossing:
            return i
    raise KeyError(f"curve {curve.name!r} does not visit crossing {crossing}")


@dataclass(frozen=True)
class _SideRun:
    """A boundary side resolved into its curve's own coordinates.

    ``first``/``last`` are visit indices: the side covers the visits
    ``first, first+1, ..., last`` (cyclically) in the curve's direction,
    so ``visits[first].crossing`` and ``visits[last].crossing`` are the two
    corner crossings and the strictly interior visits are passed straight
    through.  ``with_walk`` records whether the boundary walk traverses the
    side along the curve's orientation.
    """

    curve: str
    first: int
    last: int
    with_walk: bool


def _side_run(s: CurveSystem, side: Side) -> _SideRun:
    curve = s.curve(side.curve)
    m = len(curve.visits)
    index = {(v.crossing, v.slot): i for i, v in enumerate(curve.visits)}
    with_walk = side.darts[0].io == OUT
    arcs = []
    for d in side.darts:
        i = index[(d.crossing, d.slot)]
        arcs.append(i if d.io == OUT else (i - 1) % m)
    if with_walk:
        first, last = arcs[0], (arcs[-1] + 1) % m
    else:
        first, last = arcs[-1], (arcs[0] + 1) % m
    return _SideRun(side.curve, first, last, with_walk)


def _past_run(s: CurveSystem, run: _SideRun, z: int) -> bool:
    """Whether the spot just past corner ``z``, away from the side run, is
    after ``z`` in the run curve's direction (else before)."""

    visits = s.curve(run.curve).visits
    if visits[run.last].crossing == z:
        return True
    if visits[run.first].crossing == z:
        return False
    raise AssertionError(f"corner {z} is not an endpoint of its side run")


def _side_occurrences(md, side: Side) -> list[tuple[int, Dart]]:
    """Straight-through crossings of a side with the dart skipped at each.

    The skipped dart belongs to the crossing curve's arc that lies inside
    the region at that point; its partner arc extends away from the region.
    Returned in walk order along the side.
    """

    out = []
    for p in range(len(side.darts) - 1):
        skipped = md.sigma[md.alpha[side.darts[p]]]
        out.append((skipped.crossing, skipped))
    return out


def _chords(s: CurveSystem, region: Region) -> list[tuple[str, str]]:
    """Pair up the region's boundary through-crossings into chords.

    Each chord is a path of one deleted curve through the region's interior
    from one boundary through-crossing to another; the result lists, per
    chord, the names of the two boundary curves it hangs on.
    """

    md = derived_map(s)
    ends: dict[tuple[int, Dart], str] = {}
    for bd in region.boundaries:
        for side in bd.sides:
            for crossing, skipped in _side_occurrences(md, side):
                ends[(crossing, skipped)] = side.curve
    paired: list[tuple[str, str]] = []
    seen: set[tuple[int, Dart]] = set()
    half_deleted = {crossing for crossing, _ in ends}
    for (crossing, skipped), side_curve in ends.items():
        if (crossing, skipped) in seen:
            continue
        seen.add((crossing, skipped))
        w = s.curve(md.curve_of[skipped])
        m = len(w.visits)
        j = _visit_index(w, crossing)
        step = 1 if skipped.io == OUT else -1
        while True:
            j = (j + step) % m
            z2 = w.visits[j].crossing
            if z2 in half_deleted or z2 not in region.interior_crossings:
                break
        far = Dart(z2, w.visits[j].slot, IN if step == 1 else OUT)
        seen.add((z2, far))
        paired.append((side_curve, ends[(z2, far)]))
    return paired


# ---------------------------------------------------------------------------
# The disk sweep


def isotope_across(s: CurveSystem, name: str, region: Region) -> CurveSystem:
    """Sweep ``name`` across a disk region bounded once by it.

    The region must be an unpunctured disk with exactly one boundary side
    on ``name``.  The curve's side (its two corner crossings and every
    crossing passed straight through) is removed, and the curve is rerouted
    just beyond the rest of the region's boundary: it crosses each chord of
    the region once near the chord's far boundary endpoints, and at each
    corner between two other boundary curves it crosses both, just past the
    corner.  Sweeping across a bigon is exactly one reduction step.
    """

    if region.punctured:
        raise ValueError("region is punctured; the sweep is refused")
    if region.chi != 1:
        raise ValueError("region is not a disk")
    if len(region.boundaries) != 1:
        raise ValueError("region is not a disk (multiple boundaries)")
    boundary = region.boundaries[0]
    sides, corners = boundary.sides, boundary.corners
    t = len(sides)
    u_at = [i for i in range(t) if sides[i].curve == name]
    if len(u_at) != 1:
        raise ValueError(
            f"region must have exactly one boundary side on {name!r}, "
            f"found {len(u_at)}"
        )
    if t < 2:
        raise ValueError("sweeping across the region would erase the curve")
    iu = u_at[0]

    md = derived_map(s)
    runs = {i: _side_run(s, sides[i]) for i in range(t)}
    urun = runs[iu]
    ucurve = s.curve(name)
    c_in = ucurve.visits[urun.first].crossing
    c_out = ucurve.visits[urun.last].crossing

    # crossings removed together with the curve's side
    removed = {c_in, c_out}
    i = urun.first
    while i != urun.last:
        removed.add(ucurve.visits[i].crossing)
        i = (i + 1) % len(ucurve.visits)

    # travel over the complementary sides, from the curve's entry corner to
    # its exit corner
    if urun.with_walk:
        travel = [(iu - 1 - j) % t for j in range(t - 1)]
        along_walk = False
    else:
        travel = [(iu + 1 + j) % t for j in range(t - 1)]
        along_walk = True

    fresh = next_crossing_id(s)
    new_crossings: list[Crossing] = []
    events: list[Visit] = []  # the swept curve's new visits, in travel order
    # per-curve insertions: (anchor crossing, +1 after / 0 before, new visit)
    inserts: dict[str, list[tuple[int, int, Visit]]] = {}

    def emit(other: str, sign_u: int, anchor: int, after: bool) -> None:
        nonlocal fresh
        new_crossings.append(Crossing(fresh, sign_u))
        events.append(Visit(fresh, 0))
        inserts.setdefault(other, []).append((anchor, 1 if after else 0, Visit(fresh, 1)))
        fresh += 1

    def tau(i: int) -> int:
        walk_vs_curve = 1 if sides[i].darts[0].io == OUT else -1
        return walk_vs_curve if along_walk else -walk_vs_curve

    prev: int | None = None
    for si in travel:
        side = sides[si]
        if prev is not None:
            z = corners[si] if along_walk else corners[prev]
            a_name, b_name = sides[prev].curve, side.curve
            # past the corner: cross the upcoming side's curve, then the
            # previous side's curve, both just beyond their side runs
            emit(b_name, tau(prev) * _frame_sign(s, z, a_name), z, _past_run(s, runs[si], z))
            emit(a_name, tau(si) * _frame_sign(s, z, b_name), z, _past_run(s, runs[prev], z))
        occ = _side_occurrences(md, side)
        if not along_walk:
            occ = occ[::-1]
        for crossing, skipped in occ:
            w = md.curve_of[skipped]
            emit(
                w,
                tau(si) * _frame_sign(s, crossing, side.curve),
                crossing,
                after=skipped.io == IN,
            )
        prev = si

    # rebuild every visit list
    new_curves: list[Curve] = []
    emptied: list[str] = []
    for c in s.curves:
        if c.name == name:
            m = len(c.visits)
            out: list[Visit] = []
            i = (urun.last + 1) % m
            while i != urun.first:
                out.append(c.visits[i])
                i = (i + 1) % m
            out.extend(events)
            visits = tuple(out)
        else:
            ins = inserts.get(c.name, [])
            out = []
            for v in c.visits:
                if v.crossing in removed:
                    continue
                out.extend(nv for a, side_flag, nv in ins if a == v.crossing and side_flag == 0)
                out.append(v)
                out.extend(nv for a, side_flag, nv in ins if a == v.crossing and side_flag == 1)
            visits = tuple(out)
        if c.visits and not visits:
            emptied.append(c.name)
        new_curves.append(Curve(c.name, visits))

    floating = list(s.floating)
    fills_check = False
    if emptied:
        component = next(c for c in curve_components(s) if name in c)
        others = {sides[i].curve for i in range(t) if i != iu}
        if set(emptied) <= {name} | others and component == {name} | others and len(others) == 1:
            # an isolated pair unlinks completely; each curve keeps the
            # other as its isotopy reference
            partner = next(iter(others))
            for e in emptied:
                floating.append((e, partner if e == name else name))
        else:
            # otherwise the emptied curves are representable only when the
            # drawn remainder still fills the same surface: every
            # complement region is then a disk, so each emptied curve
            # bounds one (checked below once the result exists)
            for e in emptied:
                floating.append((e, ""))
            fills_check = True

    kept = tuple(x for x in s.crossings if x.id not in removed) + tuple(new_crossings)
    result = CurveSystem(
        curves=tuple(new_curves),
        crossings=tuple(sorted(kept, key=lambda x: x.id)),
        punctured_faces=s.punctured_faces,
        floating=tuple(floating),
    )
    if fills_check:
        try:
            same_surface = genus(result) == genus(s)
        except ValueError:
            same_surface = False
        if not same_surface:
            raise UnsupportedReduction(
                f"sweep would leave curve(s) {emptied} with no crossings; "
                "their placement is not representable"
            )
    if len(curve_components(result)) > len(curve_components(s)):
        raise UnsupportedReduction(
            "sweep would disconnect the crossing graph; the relative "
            "placement of the parts is not representable"
        )
    if s.punctured_faces:
        touched = removed | {x.id for x in new_crossings} | {
            a for lst in inserts.values() for a, _, _ in lst
        }
        result = _carry_punctures(s, result, touched)
    return result


def _carry_punctures(
    old: CurveSystem, new: CurveSystem, touched: set[int]
) -> CurveSystem:
    """Reassign punctured faces after a surgery.

    A puncture sits at a generic point of its face, away from the thin
    collar the surgery sweeps through, so its new face is the one containing
    the old face's darts at crossings the surgery did not touch.  If no such
    dart survives, or the survivors end up in different new faces, the
    puncture's position is genuinely ambiguous and the surgery is refused.
    """

    old_md = derived_map(old)
    new_md = derived_map(new)
    new_keys = []
    for key in sorted(old.punctured_faces):
        face = next(f for f in old_md.faces if f.key == key)
        survivors = [d for d in face.darts if d.crossing not in touched]
        homes = {new_md.face_index[d] for d in survivors if d in new_md.face_index}
        if len(homes) != 1:
            raise UnsupportedReduction(
                f"puncture in face {key} cannot be tracked across the surgery"
            )
        new_keys.append(new_md.faces[homes.pop()].key)
    return CurveSystem(
        curves=new.curves,
        crossings=new.crossings,
        punctured_faces=frozenset(new_keys),
        floating=new.floating,
    )


# ---------------------------------------------------------------------------
# Bigons and reduction


@dataclass(frozen=True)
class Bigon:
    """A disk region bounded by one side of each of two curves."""

    region: Region
    curves: tuple[str, str]
    corners: tuple[int, int]


def _structural_bigons(s: CurveSystem, u: str, v: str) -> list[Bigon]:
    out = []
    for region in complement_regions(s, {u, v}):
        if region.chi != 1 or len(region.boundaries) != 1:
            continue
        boundary = region.boundaries[0]
        if len(boundary.sides) != 2:
            continue
        if {side.curve for side in boundary.sides} != {u, v}:
            continue
        x, y = boundary.corners
        if x == y:
            continue
        out.append(Bigon(region, boundary.curves, (x, y)))
    return out


def _innermost(b: Bigon) -> tuple[int, str]:
    return (len(b.region.interior_arcs), b.region.key)


def find_bigon(s: CurveSystem, u: str, v: str) -> Bigon | None:
    """Innermost bigon between ``u`` and ``v``, or ``None`` at minimal position.

    Innermost means fewest interior arcs, ties broken by least region key.
    Reducible (unpunctured) bigons are preferred; a returned bigon with
    ``region.punctured`` set means every remaining bigon is blocked.
    """

    if u == v:
        raise ValueError("a bigon needs two distinct curves")
    bigons = _structural_bigons(s, u, v)
    usable = [b for b in bigons if not b.region.punctured]
    pool = usable or bigons
    return min(pool, key=_innermost) if pool else None


def _pair_crossings(s: CurveSystem, u: str, v: str) -> list[int]:
    cu = {vv.crossing for vv in s.curve(u).visits}
    cv = {vv.crossing for vv in s.curve(v).visits}
    return sorted(cu & cv)


def reduce_pair(s: CurveSystem, u: str, v: str) -> CurveSystem:
    """Remove bigons between ``u`` and ``v`` until the pair is minimal.

    Each step sweeps one curve of the innermost unpunctured bigon across
    it.  The swept side is the one with at least as many same-side chords
    (so the total crossing count strictly drops), ties broken toward the
    curve listed first in the system.  If only punctured bigons remain the
    pair is minimal for the punctured surface and the reduction stops with
    :class:`PunctureBlocked`.
    """

    if u == v:
        raise ValueError("reduce_pair needs two distinct curves")
    t = s
    while True:
        bigons = _structural_bigons(t, u, v)
        usable = [b for b in bigons if not b.region.punctured]
        if usable:
            # innermost first; if a sweep is not representable, fall back to
            # the other side and then to the next bigon before giving up
            error: UnsupportedReduction | None = None
            stepped = None
            for b in sorted(usable, key=_innermost):
                chords = _chords(t, b.region)
                uu = sum(1 for e1, e2 in chords if e1 == u and e2 == u)
                vv = sum(1 for e1, e2 in chords if e1 == v and e2 == v)
                if uu > vv:
                    order = (u, v)
                elif vv > uu:
                    order = (v, u)
                else:
                    first = next(n for n in t.curve_names if n in (u, v))
                    order = (first, u if first == v else v)
                for swept in order:
                    try:
                        stepped = isotope_across(t, swept, b.region)
                        break
                    except UnsupportedReduction as exc:
                        error = error or exc
                if stepped is not None:
                    break
            if stepped is None:
                assert error is not None
                raise error
            t = stepped
            continue
        if bigons:
            raise PunctureBlocked(
                (u, v),
                len(_pair_crossings(t, u, v)),
                t,
                tuple(sorted(b.region.key for b in bigons)),
            )
        return t


def _resolve(s: CurveSystem, name: str) -> tuple[str | None, set[str]]:
    """Follow floating records from ``name``.

    Returns the terminal — a drawn curve name, ``""`` for a curve recorded
    as bounding a disk, or ``None`` for a floating cycle — and the set of
    names passed through, including ``name`` itself.
    """

    chain = {name}
    cur = name
    while True:
        partner = s.floating_partner(cur)
        if partner is None:
            return cur, chain
        if partner == "":
            return "", chain
        if partner in chain:
            return None, chain
        chain.add(partner)
        cur = partner


def intersection_number(s: CurveSystem, u: str, v: str) -> int:
    """Geometric intersection number of ``u`` and ``v``.

    The pair is reduced to minimal position first, so the result does not
    depend on how the input was drawn.  Raises :class:`PunctureBlocked`
    when punctures prevent full reduction; the exception's crossing count
    is then the intersection number for the punctured surface.
    """

    if u == v:
        raise ValueError("intersection_number needs two distinct curves")
    ru, chain_u = _resolve(s, u)
    rv, chain_v = _resolve(s, v)
    if v in chain_u or u in chain_v:
        return 0
    if ru is None or rv is None or ru == "" or rv == "" or ru == rv:
        return 0
    t = reduce_pair(s, ru, rv)
    return len(_pair_crossings(t, ru, rv))


# ---------------------------------------------------------------------------
# Dehn twists


def dehn_twist(s: CurveSystem, target: str, along: str, power: int) -> CurveSystem:
    """Replace ``target`` by its image under the ``power``-th twist along ``along``.

    The twist is modelled exactly in an annulus around ``along``: every
    strand of the target through the annulus becomes a parallel spiral, so
    the new curve is simple and no other curve moves (their visit lists
    only gain the spiral crossings).  No reduction is performed; crossing
    counts satisfy ``crossings(new, d) = crossings(target, d) +
    strands * crossings(along, d)`` per single twist.  ``power`` may be any
    integer; ``|power| > 1`` iterates the single twist.
    """

    if target == along:
        raise ValueError("cannot twist a curve along itself")
    if power == 0:
        return s
    s.curve(target)
    s.curve(along)
    rt, chain_t = _resolve(s, target)
    ra, _ = _resolve(s, along)
    if ra is None or ra == "" or ra in chain_t:
        return s  # twisting along a trivial or disjoint class is the identity
    if rt is None or rt == "":
        return s
    if rt != target:
        # a floating target rides its partner only while the partner's class
        # is fixed; a twist that moves the partner would break the record
        if intersection_number(s, rt, ra) == 0:
            return s
        raise UnsupportedReduction(
            f"cannot twist floating curve {target!r}; it has no drawn strands"
        )
    t = s
    direction = (1 if power > 0 else -1) * TWIST_HANDEDNESS
    for _ in range(abs(power)):
        t = _single_twist(t, target, ra, direction)
    return t


def _single_twist(s: CurveSystem, target: str, along: str, direction: int) -> CurveSystem:
    b = s.curve(along)
    c = s.curve(target)
    r = len(b.visits)
    strand_crossings = set(_pair_crossings(s, target, along))
    if not strand_crossings:
        return s
    positions = {v.crossing: p for p, v in enumerate(b.visits)}
    third_pos = [p for p, v in enumerate(b.visits) if v.crossing not in strand_crossings]

    fresh = next_crossing_id(s)
    new_crossings: list[Crossing] = []
    detours: dict[int, list[Visit]] = {}  # target visit -> replacement visits
    core_at: dict[int, tuple[Fraction, int, Visit]] = {}  # strand -> b-list entry
    copies_at: dict[int, list[tuple[Fraction, Visit]]] = {q: [] for q in third_pos}

    for z in (v.crossing for v in c.visits if v.crossing in strand_crossings):
        p = positions[z]
        eps_b = _frame_sign(s, z, along)
        # events along the spiral: (height above the inner rim, tiebreak, visit)
        spiral: list[tuple[Fraction, int, Visit]] = []
        for q in third_pos:
            y = Fraction(((q - p) * direction) % r, r)
            w_q = b.visits[q].crossing
            sign = direction * eps_b * _frame_sign(s, w_q, along)
            new_crossings.append(Crossing(fresh, sign))
            spiral.append((y, 0, Visit(fresh, 0)))
            copies_at[q].append((y, Visit(fresh, 1)))
            fresh += 1
        # the spiral keeps the strand's radial direction across the core
        new_crossings.append(Crossing(fresh, -eps_b))
        core_angle = (Fraction(p) + Fraction(direction * r, 2)) % r
        core_at[z] = (core_angle, -direction, Visit(fresh, 1))
        spiral.append((Fraction(1, 2), -1, Visit(fresh, 0)))
        fresh += 1
        # a strand crossing toward the outer side travels the spiral upward
        spiral.sort(key=lambda e: (e[0], e[1]), reverse=eps_b != 1)
        detours[z] = [e[2] for e in spiral]

    # rebuild the target
    new_target: list[Visit] = []
    for v in c.visits:
        if v.crossing in strand_crossings:
            new_target.extend(detours[v.crossing])
        else:
            new_target.append(v)

    # rebuild the twisting curve: third visits at integer angles, cores at
    # half-integer offsets from their strands
    entries: list[tuple[Fraction, int, Visit]] = [
        (Fraction(q), 0, b.visits[q]) for q in third_pos
    ]
    entries.extend(core_at.values())
    entries.sort(key=lambda e: (e[0], e[1]))
    new_along = [e[2] for e in entries]

    # rebuild every third curve: spiral copies flank each crossing with the
    # twisting curve, grouped by which side of it they land on
    copy_lookup: dict[int, tuple[list[Visit], list[Visit]]] = {}
    half = Fraction(1, 2)
    for q in third_pos:
        group = sorted(copies_at[q], key=lambda e: e[0])
        inner = [(y, vv) for y, vv in group if y < half]
        outer = [(y, vv) for y, vv in group if y >= half]
        w_q = b.visits[q].crossing
        if _frame_sign(s, w_q, along) == 1:
            before, after = inner, outer  # the strand travels inner to outer
        else:
            before, after = outer[::-1], inner[::-1]
        copy_lookup[w_q] = ([vv for _, vv in before], [vv for _, vv in after])

    new_curves: list[Curve] = []
    for cc in s.curves:
        if cc.name == target:
            new_curves.append(Curve(cc.name, tuple(new_target)))
        elif cc.name == along:
            new_curves.append(Curve(cc.name, tuple(new_along)))
        else:
            out: list[Visit] = []
            for v in cc.visits:
                if v.crossing in copy_lookup:
                    before, after = copy_lookup[v.crossing]
                    out.extend(before)
                    out.append(v)
                    out.extend(after)
                else:
                    out.append(v)
            new_curves.append(Curve(cc.name, tuple(out)))

    kept = tuple(x for x in s.crossings if x.id not in strand_crossings)
    result = CurveSystem(
        curves=tuple(new_curves),
        crossings=tuple(sorted(kept + tuple(new_crossings), key=lambda x: x.id)),
        punctured_faces=s.punctured_faces,
        floating=s.floating,
    )
    if s.punctured_faces:
        touched = strand_crossings | {x.id for x in new_crossings} | {
            b.visits[q].crossing for q in third_pos
        }
        result = _carry_punctures(s, result, touched)
    return result


# ---------------------------------------------------------------------------
# Isotopy and cyclic order


def isotopic(s: CurveSystem, u: str, v: str) -> bool:
    """Whether ``u`` and ``v`` are isotopic as unoriented curves.

    True when the pair reduces to zero crossings and some complement region
    of the two is an unpunctured annulus with one boundary circle on each
    curve, or when a floating record chain already links them.
    """

    if u == v:
        return True
    s.curve(u)
    s.curve(v)
    ru, chain_u = _resolve(s, u)
    rv, chain_v = _resolve(s, v)
    if v in chain_u or u in chain_v:
        return True
    if ru == "" and rv == "":
        return True  # both bound disks
    if ru is None or rv is None or ru == "" or rv == "":
        return False
    if ru == rv:
        return True
    t = reduce_pair(s, ru, rv)
    if _pair_crossings(t, ru, rv):
        return False
    fu, chain_u = _resolve(t, ru)
    fv, chain_v = _resolve(t, rv)
    if rv in chain_u or ru in chain_v or (fu is not None and fu == fv):
        return True
    if fu is None or fv is None:
        return False
    for region in complement_regions(t, {fu, fv}):
        if not region.is_annulus:
            continue
        curves = [bd.curves for bd in region.boundaries]
        if {frozenset(c) for c in curves} == {frozenset({fu}), frozenset({fv})}:
            return True
    return False


@dataclass(frozen=True)
class CyclicOrderVerdict:
    """Cyclic order of three once-crossing curves around their common point.

    ``order`` is ``"ABC"`` or ``"ACB"`` naming the counterclockwise order of
    the three query curves; ``signs`` are the three pairwise crossing signs
    used, each in the frame of the pair's first-named curve.
    """

    curves: tuple[str, str, str]
    order: str
    signs: tuple[int, int, int]


def cyclic_order(s: CurveSystem, a: str, b: str, c: str) -> CyclicOrderVerdict:
    """Cyclic order of three curves that pairwise cross exactly once.

    Pairs are reduced to minimal position first; a pair whose intersection
    number is not 1 is an error.  The verdict is the sign product of the
    three crossings, calibrated so that ``build_bouquet(3)`` gives ABC.
    """

    if len({a, b, c}) != 3:
        raise ValueError("cyclic_order needs three distinct curves")
    t = s
    while True:
        before = len(t.crossings)
        for pair in ((a, b), (b, c), (c, a)):
            t = reduce_pair(t, *pair)
        if len(t.crossings) == before:
            break
    signs = []
    for first, second in ((a, b), (b, c), (c, a)):
        shared = _pair_crossings(t, first, second)
        if len(shared) != 1:
            raise ValueError(
                f"cyclic_order needs pairwise intersection number 1; "
                f"{first!r},{second!r} cross {len(shared)} times after reduction"
            )
        signs.append(_frame_sign(t, shared[0], first))
    product = signs[0] * signs[1] * signs[2]
    order = "ABC" if product == MU0 else "ACB"
    return CyclicOrderVerdict((a, b, c), order, tuple(signs))
