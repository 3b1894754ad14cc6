"""Deciding whether curves form an embedded bouquet.

A bouquet is a family of simple closed curves that can be isotoped to meet
in a single common point, pairwise transversally.  This module decides
bouquet membership for curves in a :class:`~curvebraid.curvesys.CurveSystem`
and produces checkable certificates:

* :func:`triple_bouquet` — the three-curve base case.  After verifying that
  the curves are pairwise non-isotopic with intersection number one, the
  triple's cyclic order fixes a labelling ``(x, y, z)`` and the verdict is
  decided by whether ``x`` and the inverse twist image of ``z`` along ``y``
  can be disjoined.  A bouquet also delimits a three-sided disk region; the
  two criteria are cross-validated on every call.
* :func:`detect_bouquet` — any number of curves, by induction: verify a base
  pair or triple, then place each further curve between some consecutive
  pair of the verified cyclic order and run the triple test there.
* :func:`extend_bouquet` — one induction step with a pinned position: the
  new curve must land between the last and first curve of the certificate.
* :func:`check_linear_criterion` — verifies a candidate cyclic order with
  all pair checks but only ``n - 2`` triple checks.
* :func:`relation_profile` — records which pair and triple relations hold,
  and exports them as relator words for the algebraic engine.
* :func:`bouquet_to_chain` — transforms a certified bouquet into a chain
  (consecutive curves crossing once, all others disjoint) by inverse twists.

Punctured faces are honest obstacles throughout: a pair whose remaining
bigons are all punctured is already in minimal position in the punctured
surface, so the blocked crossing count is its exact intersection number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .curvesys import CurveSystem, complement_regions, make_system
from .moves import (
    PunctureBlocked,
    cyclic_order,
    dehn_twist,
    intersection_number,
    isotopic,
    reduce_pair,
)
from .words import Word, twist_alphabet

#: Failure reasons carried by a no-certificate.
REASON_ISOTOPIC = "isotopic pair"
REASON_INTERSECTION = "pair with intersection != 1"
REASON_CYCLE = "triple cycle-condition failure"


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class TripleWitness:
    """Evidence for one triple test.

    ``triple`` lists the curves in the tested arrangement ``(x, y, z)``:
    the test twisted ``z`` backwards along ``y`` and measured its
    intersection with ``x``.  Zero certifies the arrangement; two refutes
    it.  ``triangle`` carries the key of a three-sided disk region
    delimited by the triple whenever the tested arrangement is its cyclic
    order — a passing test always records one, and a triple refused in its
    own cyclic order records ``None``.
    """

    triple: tuple[str, str, str]
    intersection: int
    triangle: str | None


@dataclass(frozen=True)
class BouquetCertificate:
    """Outcome of a bouquet decision.

    A yes-verdict carries the curves' cyclic order and one
    :class:`TripleWitness` per induction step (none for fewer than three
    curves).  A no-verdict carries a ``reason`` — one of
    :data:`REASON_ISOTOPIC`, :data:`REASON_INTERSECTION`,
    :data:`REASON_CYCLE` — and the curves involved in ``failing``.
    """

    verdict: bool
    order: tuple[str, ...] = ()
    witnesses: tuple[TripleWitness, ...] = ()
    reason: str | None = None
    failing: tuple[str, ...] = ()
    note: str | None = None

    def __post_init__(self) -> None:
        if self.verdict and self.reason is not None:
            raise ValueError("a yes-certificate cannot carry a failure reason")
        if not self.verdict and self.reason is None:
            raise ValueError("a no-certificate needs a reason")


def _no(reason: str, failing: Iterable[str], witness: TripleWitness | None = None) -> BouquetCertificate:
    return BouquetCertificate(
        verdict=False,
        reason=reason,
        failing=tuple(failing),
        witnesses=(witness,) if witness is not None else (),
    )


# ---------------------------------------------------------------------------
# Puncture-aware primitives

# When reduction stops because every remaining bigon is punctured, the pair
# is in minimal position in the punctured surface (the bigon criterion:
# non-minimal position forces an unpunctured disk bigon).  The crossing
# count at that point is therefore the exact intersection number there.


def _pair_intersection(s: CurveSystem, u: str, v: str) -> int:
    try:
        return intersection_number(s, u, v)
    except PunctureBlocked as blocked:
        return blocked.crossings


def _isotopic(s: CurveSystem, u: str, v: str) -> bool:
    try:
        return isotopic(s, u, v)
    except PunctureBlocked:
        return False  # the pair cannot even be disjoined


def reduce_family(s: CurveSystem, names: Sequence[str] | None = None) -> CurveSystem:
    """Round-robin pair reduction until no pair of ``names`` has a bigon.

    ``names`` defaults to every curve in the system.  Punctured-blocked
    pairs are left at their (minimal) blocked position.
    """

    if names is None:
        names = s.curve_names
    t = s
    while True:
        before = t
        for u, v in combinations(names, 2):
            try:
                t = reduce_pair(t, u, v)
            except PunctureBlocked as blocked:
                t = blocked.system
        if t == before:
            return t


# ---------------------------------------------------------------------------
# The triple test


def _scan_triangle(s: CurveSystem, triple: Sequence[str]) -> str | None:
    """Key of an unpunctured disk region bounded once by each curve."""

    want = set(triple)
    for region in complement_regions(s, want):
        if region.chi != 1 or len(region.boundaries) != 1 or region.punctured:
            continue
        sides = region.boundaries[0].sides
        if len(sides) == 3 and {side.curve for side in sides} == want:
            return region.key
    return None


def triangle_check(s: CurveSystem, triple: Sequence[str]) -> str | None:
    """Three-sided disk region delimited by the triple, or ``None``.

    The triple's pairs are reduced first; if any pair's intersection number
    is not one the precondition fails and the answer is ``None``.  The
    returned key refers to the system with the three pairs reduced, which
    is the input system whenever the triple is already minimal.
    """

    a, b, c = _distinct(s, triple, 3)
    t = reduce_family(s, (a, b, c))
    if any(_pair_intersection(t, u, v) != 1 for u, v in combinations((a, b, c), 2)):
        return None
    return _scan_triangle(t, (a, b, c))


def _cycle_test(s: CurveSystem, x: str, y: str, z: str) -> int:
    """Intersection of ``x`` with the inverse twist image of ``z`` along ``y``.

    Zero if and only if the cycle relation for the arrangement
    ``x < y < z < x`` holds; the arrangement with the opposite cyclic order
    admits no disjoining and yields two.
    """

    twisted = dehn_twist(s, z, y, -1)
    return _pair_intersection(twisted, x, z)


def _distinct(s: CurveSystem, names: Sequence[str], expect: int | None = None) -> tuple[str, ...]:
    out = tuple(names)
    if expect is not None and len(out) != expect:
        raise ValueError(f"expected {expect} curves, got {len(out)}")
    if len(set(out)) != len(out):
        raise ValueError(f"curve names are not distinct: {out}")
    for name in out:
        s.curve(name)  # raises for unknown names
    return out


def triple_bouquet(s: CurveSystem, triple: Sequence[str]) -> BouquetCertificate:
    """Decide whether three curves form a bouquet.

    The pairs must be non-isotopic with intersection number one; the
    verdict is then decided by the cycle test in the arrangement dictated
    by the triple's cyclic order.  The three-sided-region criterion is
    evaluated alongside and any divergence between the two raises, since
    it would mean one of the engines is wrong.
    """

    a, b, c = _distinct(s, triple, 3)
    for u, v in combinations((a, b, c), 2):
        number = _pair_intersection(s, u, v)
        if number != 1:
            if number == 0 and _isotopic(s, u, v):
                return _no(REASON_ISOTOPIC, (u, v))
            return _no(REASON_INTERSECTION, (u, v))

    t = reduce_family(s, (a, b, c))
    order = (a, b, c) if cyclic_order(t, a, b, c).order == "ABC" else (a, c, b)
    crossings = _cycle_test(t, *order)
    triangle = _scan_triangle(t, (a, b, c))
    witness = TripleWitness(order, crossings, triangle)
    if (crossings == 0) != (triangle is not None):
        raise RuntimeError(
            f"triple {order}: cycle test found intersection {crossings} but "
            f"triangle scan found {triangle!r}; the two criteria must agree"
        )
    if crossings != 0:
        return _no(REASON_CYCLE, order, witness)
    return BouquetCertificate(True, order, (witness,))


# ---------------------------------------------------------------------------
# Induction


def extend_bouquet(
    s: CurveSystem, certificate: BouquetCertificate, new: str
) -> BouquetCertificate:
    """One induction step: append ``new`` after the certificate's last curve.

    Requires a yes-certificate for the existing curves.  The step succeeds
    when ``new`` meets every certified curve exactly once and the triple
    (first, last, ``new``) passes the cycle test in that arrangement; the
    new cyclic order appends ``new`` at the end.  The position is pinned —
    use :func:`detect_bouquet` to search over positions.
    """

    if not isinstance(certificate, BouquetCertificate) or not certificate.verdict:
        raise ValueError("extension requires a yes-certificate for the base curves")
    base = certificate.order
    _distinct(s, base + (new,))
    for existing in base:
        number = _pair_intersection(s, existing, new)
        if number != 1:
            return _no(REASON_INTERSECTION, (existing, new))
    first, last = base[0], base[-1]
    t = reduce_family(s, (first, last, new))
    crossings = _cycle_test(t, first, last, new)
    if crossings != 0:
        # the pinned arrangement is refuted; the triple may still be a
        # bouquet in another order, so no triangle claim is made
        witness = TripleWitness((first, last, new), crossings, None)
        return _no(REASON_CYCLE, (first, last, new), witness)
    triangle = _scan_triangle(t, (first, last, new))
    if triangle is None:
        raise RuntimeError(
            f"triple ({first}, {last}, {new}): cycle test passed but no "
            "three-sided region exists; the two criteria must agree"
        )
    witness = TripleWitness((first, last, new), crossings, triangle)
    return BouquetCertificate(True, base + (new,), certificate.witnesses + (witness,))


def detect_bouquet(s: CurveSystem, curves: Sequence[str]) -> BouquetCertificate:
    """Decide whether the named curves form a bouquet, in any order.

    A single curve is trivially a bouquet (reported with a note).  A pair
    must be non-isotopic and cross exactly once.  Longer families are built
    up curve by curve: each new curve is checked against every placed curve,
    then slotted between the unique consecutive pair whose cyclic order
    admits it, where the triple test decides.  The certificate's order is a
    cyclic order of the input names, starting from the base triple's first
    curve.
    """

    names = _distinct(s, curves)
    if not names:
        raise ValueError("need at least one curve")
    if len(names) == 1:
        return BouquetCertificate(
            True, names, note="a single curve is trivially a bouquet"
        )

    u, v = names[0], names[1]
    number = _pair_intersection(s, u, v)
    if number != 1:
        if number == 0 and _isotopic(s, u, v):
            return _no(REASON_ISOTOPIC, (u, v))
        return _no(REASON_INTERSECTION, (u, v))
    if len(names) == 2:
        return BouquetCertificate(True, names)

    base = triple_bouquet(s, names[:3])
    if not base.verdict:
        return base
    order, witnesses = base.order, base.witnesses

    for new in names[3:]:
        for placed in order:
            number = _pair_intersection(s, placed, new)
            if number != 1:
                if number == 0 and _isotopic(s, placed, new):
                    return _no(REASON_ISOTOPIC, (placed, new))
                return _no(REASON_INTERSECTION, (placed, new))
        rotated = _place(s, order, new)
        step = extend_bouquet(
            s, BouquetCertificate(True, rotated, witnesses), new
        )
        if not step.verdict:
            return step
        order, witnesses = step.order, step.witnesses
    return BouquetCertificate(True, order, witnesses)


def _place(s: CurveSystem, order: tuple[str, ...], new: str) -> tuple[str, ...]:
    """Rotate ``order`` so that ``new`` belongs after its last curve.

    Scans consecutive pairs ``(b, a)`` starting with the wrap-around pair
    (last, first): the pair admitting ``new`` is the one whose triple
    ``a, b, new`` has cyclic order ``a < b < new < a``.  At least one pair
    does whenever the order is a verified bouquet and ``new`` meets every
    curve once, so exhausting the scan means an engine defect.
    """

    k = len(order)
    for i in range(k, 0, -1):
        b = order[i - 1]
        a = order[i % k]
        if cyclic_order(s, a, b, new).order == "ABC":
            return order[i % k :] + order[: i % k]
    raise RuntimeError(
        f"no consecutive pair of {order} admits {new!r}; "
        "cyclic orders are inconsistent"
    )


# ---------------------------------------------------------------------------
# The linear criterion


@dataclass(frozen=True)
class LinearCriterionResult:
    """Outcome of :func:`check_linear_criterion`.

    ``failing`` is ``None`` on success, ``("pair", i, j)`` for a pair whose
    intersection number is not one, or ``("cycle", i)`` for a failed triple
    check — indices are 1-based positions in the candidate order.
    ``cycle_checks`` counts the triple checks executed.
    """

    ok: bool
    failing: tuple | None
    cycle_checks: int


def check_linear_criterion(s: CurveSystem, order: Sequence[str]) -> LinearCriterionResult:
    """Verify a candidate cyclic order with ``n - 2`` triple checks.

    The candidate ``c_1 < … < c_n`` is confirmed exactly when every pair
    crosses once and, for each ``2 <= i <= n - 1``, the triple
    ``(c_1, c_i, c_{i+1})`` passes the cycle test in that arrangement.
    Requires at least three curves, at least two of them non-isotopic.
    """

    names = _distinct(s, order)
    n = len(names)
    if n < 3:
        raise ValueError("the linear criterion needs at least three curves")
    numbers = {
        (i, j): _pair_intersection(s, names[i - 1], names[j - 1])
        for i, j in combinations(range(1, n + 1), 2)
    }
    if all(number == 0 for number in numbers.values()) and all(
        _isotopic(s, u, v) for u, v in combinations(names, 2)
    ):
        raise ValueError("all curves are isotopic; the criterion needs two distinct classes")
    for (i, j), number in sorted(numbers.items()):
        if number != 1:
            return LinearCriterionResult(False, ("pair", i, j), 0)
    checks = 0
    for i in range(2, n):
        t = reduce_family(s, (names[0], names[i - 1], names[i]))
        crossings = _cycle_test(t, names[0], names[i - 1], names[i])
        checks += 1
        if crossings != 0:
            return LinearCriterionResult(False, ("cycle", i), checks)
    return LinearCriterionResult(True, None, checks)


# ---------------------------------------------------------------------------
# Relation profiles


@dataclass(frozen=True)
class RelationProfile:
    """Which pair and triple relations hold among the given curves.

    ``braid`` marks each pair whose intersection number is one (for
    non-isotopic curves this is exactly the braid relation between their
    twists).  ``cycles`` maps each triple to the arrangement whose cycle
    relation holds — the triple's cyclic order when it forms a bouquet —
    or ``None``.  Pairs and triples are keyed in the order the curves were
    given.
    """

    curves: tuple[str, ...]
    braid: tuple[tuple[tuple[str, str], bool], ...]
    cycles: tuple[tuple[tuple[str, str, str], tuple[str, str, str] | None], ...]

    def braid_holds(self, u: str, v: str) -> bool:
        key = {u, v}
        for pair, holds in self.braid:
            if set(pair) == key:
                return holds
        raise KeyError(f"no pair entry for {u!r}, {v!r}")

    def cycle_variant(self, a: str, b: str, c: str) -> tuple[str, str, str] | None:
        key = {a, b, c}
        for triple, variant in self.cycles:
            if set(triple) == key:
                return variant
        raise KeyError(f"no triple entry for {a!r}, {b!r}, {c!r}")

    def predicts_bouquet(self) -> bool:
        """Whether every pair and triple relation required of a bouquet holds."""
        return all(holds for _, holds in self.braid) and all(
            variant is not None for _, variant in self.cycles
        )

    def consistent_with(self, order: Sequence[str]) -> bool:
        """Whether every triple's variant is the one induced by ``order``."""
        ordered = tuple(order)
        if sorted(ordered) != sorted(self.curves):
            return False
        if not all(holds for _, holds in self.braid):
            return False
        for triple, variant in self.cycles:
            if variant is None or _induced(ordered, triple) != _cyclic_class(variant):
                return False
        return True


def _cyclic_class(arrangement: tuple[str, str, str]) -> frozenset[tuple[str, str]]:
    """A rotation-invariant key: the set of successor pairs."""
    a, b, c = arrangement
    return frozenset(((a, b), (b, c), (c, a)))


def _induced(order: tuple[str, ...], triple: Iterable[str]) -> frozenset[tuple[str, str]]:
    sub = tuple(name for name in order if name in set(triple))
    return _cyclic_class(sub)  # type: ignore[arg-type]


def relation_profile(s: CurveSystem, curves: Sequence[str]) -> RelationProfile:
    """Record which braid and cycle relations hold among the curves.

    Pair entries apply the intersection criterion; triple entries run the
    full triple test and record the certified arrangement, or ``None`` when
    the triple is refused for any reason.
    """

    names = _distinct(s, curves)
    braid = tuple(
        ((u, v), _pair_intersection(s, u, v) == 1)
        for u, v in combinations(names, 2)
    )
    cycles = []
    for triple in combinations(names, 3):
        certificate = triple_bouquet(s, triple)
        cycles.append((triple, certificate.order if certificate.verdict else None))
    return RelationProfile(names, braid, tuple(cycles))


def profile_relators(profile: RelationProfile, order: Sequence[str]) -> tuple[Word, ...]:
    """The profile's holding relations as relator words over twist generators.

    Generator ``i`` is the ``i``-th curve of ``order`` (1-based).  Each
    braid-true pair contributes its braid relator and each triple with a
    variant ``x < y < z < x`` contributes the cycle relator
    ``y x z y z⁻¹ x⁻¹ y⁻¹ z⁻¹``.  Feeding these through the chain
    substitution must produce only trivial braids when the profile comes
    from a certified bouquet and ``order`` is its certificate order.
    """

    ordered = tuple(order)
    if sorted(ordered) != sorted(profile.curves):
        raise ValueError("order must list exactly the profile's curves")
    alphabet = twist_alphabet(len(ordered))
    position = {name: i + 1 for i, name in enumerate(ordered)}
    out = []
    for (u, v), holds in profile.braid:
        if not holds:
            continue
        i, j = position[u], position[v]
        out.append(Word.from_ints(alphabet, [i, j, i, -j, -i, -j]))
    for _, variant in profile.cycles:
        if variant is None:
            continue
        x, y, z = (position[name] for name in variant)
        out.append(Word.from_ints(alphabet, [y, x, z, y, -z, -x, -y, -z]))
    return tuple(out)


# ---------------------------------------------------------------------------
# Bouquet to chain


def _restrict(s: CurveSystem, names: Sequence[str]) -> CurveSystem:
    """Forget every curve outside ``names``, erasing their crossings."""

    keep = set(names)
    if keep == set(s.curve_names):
        return s
    if s.punctured_faces:
        raise ValueError(
            "cannot restrict a punctured system: puncture faces are not "
            "faces of the restricted map"
        )
    dropped = {
        v.crossing for c in s.curves if c.name not in keep for v in c.visits
    }
    floating = []
    for name, partner in s.floating:
        if name not in keep:
            continue
        if partner and partner not in keep:
            raise ValueError(
                f"cannot restrict: floating curve {name!r} rides dropped "
                f"curve {partner!r}"
            )
        floating.append((name, partner))
    return make_system(
        {
            c.name: [
                (v.crossing, v.slot) for v in c.visits if v.crossing not in dropped
            ]
            for c in s.curves
            if c.name in keep
        },
        {x.id: x.sign for x in s.crossings if x.id not in dropped},
        floating=floating,
    )


def bouquet_to_chain(s: CurveSystem, certificate: BouquetCertificate) -> CurveSystem:
    """Transform a certified bouquet into a chain of the same curves.

    Each curve after the first is replaced by its inverse twist image along
    its predecessor in the certificate order; the replacements run from the
    last curve backwards so every twist is along a still-untouched
    predecessor.  The result is restricted to the certified curves and
    fully reduced: consecutive curves cross once, all other pairs are
    disjoint.
    """

    if not isinstance(certificate, BouquetCertificate) or not certificate.verdict:
        raise ValueError("chain transformation requires a yes-certificate")
    names = certificate.order
    _distinct(s, names)
    t = _restrict(s, names)
    for k in range(len(names) - 1, 0, -1):
        t = dehn_twist(t, names[k], names[k - 1], -1)
    return reduce_family(t, names)


__all__ = [
    "REASON_ISOTOPIC",
    "REASON_INTERSECTION",
    "REASON_CYCLE",
    "TripleWitness",
    "BouquetCertificate",
    "LinearCriterionResult",
    "RelationProfile",
    "reduce_family",
    "triple_bouquet",
    "triangle_check",
    "extend_bouquet",
    "detect_bouquet",
    "check_linear_criterion",
    "relation_profile",
    "profile_relators",
    "bouquet_to_chain",
]
