"""Garside normal form: known values, group laws, structural invariants."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvebraid import _garside_py
from curvebraid.braid import (
    KERNEL_BACKEND,
    NormalForm,
    as_word,
    delta_word,
    equals,
    is_trivial,
    normal_form,
    permutation_of,
)
from curvebraid.words import Word, braid_alphabet, parse_word

try:
    from curvebraid import _garside_c
except ImportError:  # pragma: no cover - pure-only install
    _garside_c = None


def word_strategy(strands: int, max_len: int = 14):
    nonzero = st.integers(-(strands - 1), strands - 1).filter(lambda v: v != 0)
    return st.lists(nonzero, max_size=max_len).map(
        lambda ints: Word.from_ints(braid_alphabet(strands), ints)
    )


# -- known normal forms ------------------------------------------------------


def test_identity_and_generator():
    assert normal_form(parse_word("B3:")) == NormalForm(3, 0, ())
    assert normal_form(parse_word("B3: 1")) == NormalForm(3, 0, ((1, 0, 2),))
    assert normal_form(parse_word("B3: 1")).canonical_length() == 1


def test_half_twist_is_pure_power():
    assert normal_form(parse_word("B3: 1 2 1")) == NormalForm(3, 1, ())
    assert normal_form(parse_word("B4: 1 2 3 1 2 1")) == NormalForm(4, 1, ())
    assert delta_word(2) == parse_word("B2: 1")


def test_single_inverse_generator():
    # sigma_1^-1 = Delta^-1 * (sigma_1 sigma_2) in B_3.
    nf = normal_form(parse_word("B3: -1"))
    assert nf == NormalForm(3, -1, ((2, 0, 1),))


def test_braid_relations_hold():
    assert equals(parse_word("B4: 1 2 1"), parse_word("B4: 2 1 2"))
    assert equals(parse_word("B4: 2 3 2"), parse_word("B4: 3 2 3"))
    assert equals(parse_word("B4: 1 3"), parse_word("B4: 3 1"))
    assert not equals(parse_word("B4: 1 2"), parse_word("B4: 2 1"))


def test_trivial_words():
    assert is_trivial(parse_word("B3: 1 2 1 -2 -1 -2"))
    assert not is_trivial(parse_word("B3: 1 2 -1 -2"))


def test_permutation_diagram_order():
    assert permutation_of(parse_word("B3: 1 2")) == (2, 0, 1)
    assert permutation_of(parse_word("B3: 2 1")) == (1, 2, 0)
    assert permutation_of(parse_word("B3: -1")) == (1, 0, 2)


def test_strand_count_checks():
    with pytest.raises(ValueError):
        normal_form(parse_word("B3: 1"), strands=4)
    with pytest.raises(ValueError):
        equals(parse_word("B3: 1"), parse_word("B4: 1"))


# -- structural invariants of the normal form --------------------------------


@given(word_strategy(4))
def test_factors_are_proper_permutation_braids(w):
    k = 4
    nf = normal_form(w)
    ident = tuple(range(k))
    delta = tuple(range(k - 1, -1, -1))
    for f in nf.factors:
        assert sorted(f) == list(range(k))
        assert f != ident and f != delta


@given(word_strategy(4))
def test_adjacent_pairs_left_weighted(w):
    k = 4
    nf = normal_form(w)
    for A, B in zip(nf.factors, nf.factors[1:]):
        starting = {i for i in range(k - 1) if B[i] > B[i + 1]}
        invA = _garside_py.inverse(list(A))
        finishing = {i for i in range(k - 1) if invA[i] > invA[i + 1]}
        assert starting <= finishing


@given(word_strategy(4))
def test_as_word_round_trip(w):
    assert equals(as_word(normal_form(w)), w)


@given(word_strategy(4), word_strategy(4))
def test_normal_form_is_a_class_function(u, v):
    """u v v^-1 and u name the same braid, so their forms coincide."""
    assert normal_form(u * v * v.inverse()) == normal_form(u)


@given(word_strategy(3, max_len=8))
def test_full_twist_is_central(w):
    full = delta_word(3) * delta_word(3)
    assert equals(full * w, w * full)


@given(word_strategy(4))
def test_exponent_sum_matches_form_length(w):
    """Letter count mod Delta: e(w) = e(Delta) * power + sum of factor lengths."""
    k = 4
    nf = normal_form(w)
    factor_letters = 0
    for f in nf.factors:
        factor_letters += sum(
            1 for i in range(k) for j in range(i + 1, k) if f[i] > f[j]
        )
    assert w.exponent_sum() == (k * (k - 1) // 2) * nf.power + factor_letters


# -- kernels -----------------------------------------------------------------


def test_backend_reported():
    assert KERNEL_BACKEND in ("c", "pure")


@pytest.mark.skipif(_garside_c is None, reason="compiled kernel not built")
@settings(max_examples=200)
@given(st.data())
def test_kernel_parity(data):
    k = data.draw(st.integers(2, 8))
    n = data.draw(st.integers(0, 7))
    factors = [
        data.draw(st.permutations(list(range(k)))) for _ in range(n)
    ]
    pure = _garside_py.normalize(k, [list(f) for f in factors])
    comp = _garside_c.normalize(k, [list(f) for f in factors])
    assert pure == comp


@pytest.mark.skipif(_garside_c is None, reason="compiled kernel not built")
def test_kernel_helpers_agree():
    p, q = [2, 0, 3, 1], [1, 3, 0, 2]
    assert _garside_c.mul(p, q) == _garside_py.mul(p, q)
    assert _garside_c.inverse(p) == _garside_py.inverse(p)
    assert _garside_c.tau(p) == _garside_py.tau(p)


# -- larger groups -----------------------------------------------------------


@settings(max_examples=25)
@given(word_strategy(11, max_len=40))
def test_eleven_strands(w):
    nf = normal_form(w)
    assert equals(as_word(nf), w)
