"""Curve systems: validation, faces, genus, regions, builders, serialization."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from curvebraid.curvesys import (
    Crossing,
    Curve,
    CurveSystem,
    Dart,
    Visit,
    build_bouquet,
    build_chain,
    canonical_key,
    complement_regions,
    curve_components,
    derived_map,
    face_keys,
    faces,
    flip_orientation,
    from_json,
    genus,
    isomorphic,
    make_system,
    next_crossing_id,
    parallel_copy,
    to_json,
    validate,
)

FIXTURES = json.loads(
    (Path(__file__).parent / "fixtures" / "hand_traced_faces.json").read_text()
)["fixtures"]


def builder_of(fix):
    return build_bouquet if fix["builder"] == "bouquet" else build_chain


# ---------------------------------------------------------------------------
# Hand-traced face fixtures: the oracle for the face-tracing code


@pytest.mark.parametrize("fix", FIXTURES, ids=[f["name"] for f in FIXTURES])
def test_face_sizes_match_hand_trace(fix):
    s = builder_of(fix)(fix["n"])
    assert len(s.crossings) == fix["crossings"]
    assert sorted(f.size for f in faces(s)) == fix["face_sizes"]


@pytest.mark.parametrize("fix", FIXTURES, ids=[f["name"] for f in FIXTURES])
def test_genus_matches_hand_trace(fix):
    s = builder_of(fix)(fix["n"])
    assert genus(s) == (fix["genus"], 0)


def test_bouquet3_triangle_orbits_match_hand_trace():
    """The two 3-sided faces agree with the recorded walks, cyclically."""

    fix = next(f for f in FIXTURES if f["name"] == "bouquet3")
    s = build_bouquet(3)
    triangles = [f for f in faces(s) if f.size == 3]
    assert len(triangles) == 2
    for recorded in fix["triangle_orbits"]:
        match = [f for f in triangles if set(d.key for d in f.darts) == set(recorded)]
        assert len(match) == 1, f"no face with darts {recorded}"
        got = [d.key for d in match[0].darts]
        shift = recorded.index(got[0])
        assert got == recorded[shift:] + recorded[:shift], "cyclic order differs"


@pytest.mark.parametrize("n", range(2, 8))
def test_every_dart_lies_on_exactly_one_face(n):
    for s in (build_bouquet(n), build_chain(n)):
        md = derived_map(s)
        counted = [d for f in md.faces for d in f.darts]
        assert len(counted) == len(md.darts) == 4 * len(s.crossings)
        assert len(set(counted)) == len(counted)


def test_genus_rejects_empty_and_disconnected():
    with pytest.raises(ValueError, match="no crossings"):
        genus(build_bouquet(1))
    two_pairs = make_system(
        {"1": [(0, 0)], "2": [(0, 1)], "3": [(1, 0)], "4": [(1, 1)]},
        {0: 1, 1: 1},
    )
    with pytest.raises(ValueError, match="disconnected"):
        genus(two_pairs)
    assert len(curve_components(two_pairs)) == 2


# ---------------------------------------------------------------------------
# Validation


@pytest.mark.parametrize("n", range(2, 7))
def test_builders_validate(n):
    assert validate(build_bouquet(n)) == []
    assert validate(build_chain(n)) == []


def test_single_curve_system_is_allowed():
    assert validate(build_bouquet(1)) == []


def test_validate_unknown_crossing():
    s = make_system({"a": [(0, 0), (9, 0)], "b": [(0, 1)]}, {0: 1})
    assert any("unknown crossing 9" in p for p in validate(s))


def test_validate_unmatched_strand():
    s = make_system({"a": [(0, 0)], "b": [(1, 1)]}, {0: 1, 1: 1})
    problems = validate(s)
    assert any("unmatched strand" in p for p in problems)


def test_validate_self_intersection():
    s = make_system({"a": [(0, 0), (0, 1)], "b": []}, {0: 1}, floating=[("b", "a")])
    assert any("self-intersection unsupported" in p for p in validate(s))


def test_validate_double_claimed_slot():
    s = make_system({"a": [(0, 0)], "b": [(0, 0), (0, 1)]}, {0: 1})
    assert any("claimed more than once" in p for p in validate(s))


def test_validate_bad_sign_and_duplicate_id():
    s = CurveSystem(
        curves=(Curve("a", (Visit(0, 0),)), Curve("b", (Visit(0, 1),))),
        crossings=(Crossing(0, 2), Crossing(0, 1)),
    )
    problems = validate(s)
    assert any("sign must be" in p for p in problems)
    assert any("duplicate crossing id" in p for p in problems)


def test_validate_floating_rules():
    bare = make_system({"a": [(0, 0)], "b": [(0, 1)], "c": []}, {0: 1})
    assert any("no floating record" in p for p in validate(bare))
    hinted = make_system(
        {"a": [(0, 0)], "b": [(0, 1)], "c": []}, {0: 1}, floating=[("c", "a")]
    )
    assert validate(hinted) == []
    assert hinted.floating_partner("c") == "a"
    bad = make_system(
        {"a": [(0, 0)], "b": [(0, 1)]}, {0: 1}, floating=[("z", "q")]
    )
    problems = validate(bad)
    assert any("unknown curve" in p for p in problems)
    assert any("not a curve" in p for p in problems)


def test_validate_punctured_face_keys():
    s = build_bouquet(2)
    good = CurveSystem(s.curves, s.crossings, frozenset({face_keys(s)[0]}))
    assert validate(good) == []
    bad = CurveSystem(s.curves, s.crossings, frozenset({"c9.0.in"}))
    assert any("not a face key" in p for p in validate(bad))


def test_validate_disconnected_flag():
    two_pairs = make_system(
        {"1": [(0, 0)], "2": [(0, 1)], "3": [(1, 0)], "4": [(1, 1)]},
        {0: 1, 1: 1},
    )
    assert any("disconnected" in p for p in validate(two_pairs))
    assert validate(two_pairs, allow_disconnected=True) == []


# ---------------------------------------------------------------------------
# Builders


@pytest.mark.parametrize("n", range(2, 7))
def test_bouquet_pairwise_crossing_counts(n):
    s = build_bouquet(n)
    crossings_of = {c.name: {v.crossing for v in c.visits} for c in s.curves}
    for a in s.curve_names:
        for b in s.curve_names:
            if a != b:
                assert len(crossings_of[a] & crossings_of[b]) == 1


@pytest.mark.parametrize("n", range(2, 7))
def test_chain_crossing_counts(n):
    s = build_chain(n)
    crossings_of = {c.name: {v.crossing for v in c.visits} for c in s.curves}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            shared = crossings_of[str(i)] & crossings_of[str(j)]
            assert len(shared) == (1 if j == i + 1 else 0)


def test_bouquet_slots_and_signs():
    s = build_bouquet(4)
    assert all(x.sign == 1 for x in s.crossings)
    for c in s.curves:
        for v in c.visits:
            slot_user = {u.name for u in s.curves if v in u.visits}
            assert c.name in slot_user
    # lower-numbered curve in slot 0
    for c in s.curves:
        for v in c.visits:
            others = [
                u.name
                for u in s.curves
                if u.name != c.name and any(w.crossing == v.crossing for w in u.visits)
            ]
            assert len(others) == 1
            if v.slot == 0:
                assert int(c.name) < int(others[0])
            else:
                assert int(c.name) > int(others[0])


def test_chain2_equals_bouquet2():
    assert build_chain(2) == build_bouquet(2)


def test_builder_bad_sizes():
    with pytest.raises(ValueError):
        build_bouquet(0)
    with pytest.raises(ValueError):
        build_chain(1)


# ---------------------------------------------------------------------------
# Complement regions


def test_full_subcollection_regions_are_faces():
    s = build_bouquet(3)
    regions = complement_regions(s, s.curve_names)
    assert len(regions) == len(faces(s))
    for r in regions:
        assert r.chi == 1
        assert r.is_disk
        assert len(r.face_keys) == 1
        assert r.interior_arcs == () and r.interior_crossings == ()
        assert len(r.boundaries) == 1


def test_torus_pair_single_curve_complement_is_annulus():
    s = build_bouquet(2)
    (region,) = complement_regions(s, {"1"})
    assert region.chi == 0
    assert region.is_annulus
    assert region.interior_arcs == (("2", 0),)
    assert [b.curves for b in region.boundaries] == [("1",), ("1",)]
    assert all(b.corners == () for b in region.boundaries)


def test_chain3_outer_pair_complement_is_two_annuli():
    """Deleting the middle curve leaves two annuli between curves 1 and 3.

    On the closed-up chain surface (a torus) the two disjoint outer curves
    are parallel, and the complement shows it.
    """

    s = build_chain(3)
    regions = complement_regions(s, {"1", "3"})
    assert len(regions) == 2
    for r in regions:
        assert r.chi == 0 and r.is_annulus
        assert sorted(b.curves for b in r.boundaries) == [("1",), ("3",)]


def test_chain3_middle_curve_complement_is_annulus():
    s = build_chain(3)
    (region,) = complement_regions(s, {"2"})
    assert region.chi == 0 and region.is_annulus
    for b in region.boundaries:
        assert b.curves == ("2",)
        (side,) = b.sides
        assert sorted(side.through) == [0, 1]


def test_bouquet3_outer_pair_complement_is_the_torus_square():
    """Deleting curve 2 leaves the fundamental square of the torus filled
    by curves 1 and 3: one disk with boundary word 1,3,1,3, all four
    corners at the single kept crossing."""

    s = build_bouquet(3)
    (region,) = complement_regions(s, {"1", "3"})
    assert region.chi == 1 and region.is_disk
    assert region.interior_arcs == (("2", 0), ("2", 1))
    (boundary,) = region.boundaries
    assert boundary.curves == ("1", "3", "1", "3")
    assert boundary.corners == (1, 1, 1, 1)


def test_regions_partition_faces():
    s = build_bouquet(4)
    for sub in ({"1"}, {"1", "2"}, {"1", "2", "3"}, set(s.curve_names)):
        regions = complement_regions(s, sub)
        seen = [k for r in regions for k in r.face_keys]
        assert sorted(seen) == sorted(face_keys(s))
        for r in regions:
            for b in r.boundaries:
                assert set(b.curves) <= sub


def test_fully_deleted_crossing_is_region_interior():
    s = build_chain(3)
    (region,) = complement_regions(s, {"1"})
    # deleting curves 2 and 3 swallows their mutual crossing (id 1)
    assert region.interior_crossings == (1,)
    assert region.chi == 2 - 3 + 1
    assert set(region.interior_arcs) == {("2", 0), ("2", 1), ("3", 0)}


def test_complement_rejects_bad_subcollections():
    s = build_bouquet(2)
    with pytest.raises(ValueError, match="at least one"):
        complement_regions(s, set())
    with pytest.raises(ValueError, match="unknown curves"):
        complement_regions(s, {"zzz"})


# ---------------------------------------------------------------------------
# Parallel copies


def test_parallel_copy_transverse_double():
    s = parallel_copy(build_bouquet(2), "1")
    assert validate(s) == []
    copy = s.curve("1'")
    base = s.curve("1")
    shared = {v.crossing for v in copy.visits} & {v.crossing for v in base.visits}
    assert len(shared) == 2
    assert sorted(s.sign_of(x) for x in shared) == [-1, 1]
    with_2 = {v.crossing for v in copy.visits} & {
        v.crossing for v in s.curve("2").visits
    }
    assert len(with_2) == 1


def test_parallel_copy_makes_a_lens():
    s = parallel_copy(build_bouquet(2), "1")
    regions = complement_regions(s, {"1", "1'"})
    lens = [
        r
        for r in regions
        if r.is_disk
        and len(r.boundaries) == 1
        and len(r.boundaries[0].sides) == 2
        and set(r.boundaries[0].curves) == {"1", "1'"}
        and len(set(r.boundaries[0].corners)) == 2
    ]
    assert lens, "pushed-off double must span a removable lens"


def test_parallel_copy_separated():
    s = parallel_copy(build_bouquet(2), "1", separated=True)
    assert validate(s) == []
    assert s.curve("1'").visits == ()
    assert s.floating_partner("1'") == "1"
    with pytest.raises(ValueError, match="already exists"):
        parallel_copy(s, "1")
    t = parallel_copy(s, "1'", new_name="z", separated=True)
    assert t.floating_partner("z") == "1'"


def test_parallel_copy_preserves_genus():
    s = build_bouquet(3)
    g0 = genus(s)[0]
    assert genus(parallel_copy(s, "2"))[0] == g0


# ---------------------------------------------------------------------------
# Orientation flips


def test_flip_negates_signs_on_the_curve():
    s = build_bouquet(3)
    t = flip_orientation(s, "2")
    on_2 = {v.crossing for v in s.curve("2").visits}
    for x in t.crossings:
        expected = -s.sign_of(x.id) if x.id in on_2 else s.sign_of(x.id)
        assert x.sign == expected
    assert flip_orientation(t, "2") == s


@pytest.mark.parametrize("n", range(2, 6))
def test_flip_preserves_faces_and_genus(n):
    s = build_bouquet(n)
    t = flip_orientation(s, "1")
    assert validate(t) == []
    assert sorted(f.size for f in faces(t)) == sorted(f.size for f in faces(s))
    assert genus(t) == genus(s)
    assert isomorphic(s, t)


# ---------------------------------------------------------------------------
# Serialization


@pytest.mark.parametrize("n", range(2, 6))
def test_json_round_trip_is_identity(n):
    for s in (build_bouquet(n), build_chain(n)):
        assert from_json(to_json(s)) == s
        assert to_json(from_json(to_json(s))) == to_json(s)


def test_json_round_trip_with_decorations():
    s = parallel_copy(build_bouquet(2), "1", separated=True)
    s = CurveSystem(s.curves, s.crossings, frozenset({face_keys(s)[0]}), s.floating)
    text = to_json(s)
    assert from_json(text) == s
    obj = json.loads(text)
    assert set(obj) == {"curves", "crossings", "punctured_faces", "floating"}
    assert obj["floating"] == {"1'": "1"}


def test_json_schema_shape():
    obj = json.loads(to_json(build_bouquet(2)))
    assert obj == {
        "curves": [
            {"id": "1", "visits": [[0, 0]]},
            {"id": "2", "visits": [[0, 1]]},
        ],
        "crossings": [{"id": 0, "sign": 1}],
    }


def test_json_normalizes_crossing_order():
    text = json.dumps(
        {
            "curves": [
                {"id": "a", "visits": [[5, 0], [2, 0]]},
                {"id": "b", "visits": [[5, 1], [2, 1]]},
            ],
            "crossings": [{"id": 5, "sign": -1}, {"id": 2, "sign": 1}],
        }
    )
    s = from_json(text)
    assert [x.id for x in s.crossings] == [2, 5]
    assert to_json(from_json(to_json(s))) == to_json(s)


def test_from_json_rejects_garbage():
    with pytest.raises(ValueError):
        from_json("[1, 2, 3]")


# ---------------------------------------------------------------------------
# Map isomorphism


def test_isomorphic_to_relabelled_variant():
    s = build_bouquet(3)
    relabel = {0: 7, 1: 3, 2: 5}
    # also swap the slots at old crossing 1, negating its sign
    def visit(v):
        slot = 1 - v.slot if v.crossing == 1 else v.slot
        return (relabel[v.crossing], slot)

    t = make_system(
        {
            "c": [visit(v) for v in s.curve("3").visits],
            "a": [visit(v) for v in s.curve("1").visits],
            "b": [visit(v) for v in s.curve("2").visits],
        },
        {7: 1, 3: -1, 5: 1},
    )
    assert validate(t) == []
    assert isomorphic(s, t)
    assert canonical_key(s) == canonical_key(t)


def test_sign_flip_with_slot_swap_is_the_same_map():
    plus = build_bouquet(2)
    minus = make_system({"1": [(0, 1)], "2": [(0, 0)]}, {0: -1})
    assert isomorphic(plus, minus)


def test_mirror_of_bouquet3_is_isomorphic_only_namelessly():
    """Negating every sign mirrors the map.  With curve names forgotten the
    mirrored bouquet is isomorphic to the original (rename curves 2 and 3),
    so the name-free canonical key identifies them; the chirality shows up
    only in name-aware data such as the cyclic order of named curves."""

    s = build_bouquet(3)
    mirror = make_system(
        {c.name: [(v.crossing, v.slot) for v in c.visits] for c in s.curves},
        {x.id: -1 for x in s.crossings},
    )
    assert validate(mirror) == []
    assert isomorphic(s, mirror)


def test_bouquet_not_isomorphic_to_chain():
    assert not isomorphic(build_bouquet(3), build_chain(3))
    assert not isomorphic(build_bouquet(4), build_chain(4))


def test_rotated_start_of_visit_list_is_isomorphic():
    s = build_chain(4)
    rolled = make_system(
        {
            c.name: [(v.crossing, v.slot) for v in c.visits[1:] + c.visits[:1]]
            for c in s.curves
        },
        {x.id: x.sign for x in s.crossings},
    )
    assert isomorphic(s, rolled)


def test_next_crossing_id():
    assert next_crossing_id(build_bouquet(3)) == 3
    assert next_crossing_id(build_bouquet(1)) == 0
