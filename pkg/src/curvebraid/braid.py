"""Exact word problem for Artin braid groups via left-greedy normal forms.

A braid on k strands is presented by a freely reduced word over the Artin
generators (``words.braid_alphabet(k)``).  ``normal_form`` computes the
classical normal form Delta^p A_1 ... A_l with permutation-braid factors,
left-weighted adjacent pairs, p maximal; two words represent the same braid
iff their normal forms coincide, which makes ``equals`` a decision
procedure.

Negative letters are eliminated before normalization: each inverse
generator contributes one Delta^-1 together with the positive complement
factor, and the accumulated Delta powers are commuted to the front (passing
a power over a factor conjugates the factor by Delta).

Permutation braids are raw permutation tables, so strand counts are not
limited by any precomputed symmetric-group tables; the presentation work in
this package routinely runs in B_11.

The factor-normalization inner loop lives in a kernel with two
interchangeable implementations: a compiled extension (``_garside_c``) and
a pure-Python twin (``_garside_py``).  Set ``CURVEBRAID_PURE=1`` to force
the fallback; ``KERNEL_BACKEND`` reports the selection.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from . import _garside_py
from .words import Alphabet, Word, braid_alphabet

if os.environ.get("CURVEBRAID_PURE"):
    _kernel = _garside_py
else:
    try:
        from . import _garside_c as _kernel  # type: ignore[no-redef]
    except ImportError:
        _kernel = _garside_py

KERNEL_BACKEND: str = _kernel.BACKEND


@dataclass(frozen=True)
class NormalForm:
    """Left-greedy normal form Delta^power A_1 ... A_l in B_strands.

    ``factors`` are permutation tables; the identity braid is power 0 with
    no factors.
    """

    strands: int
    power: int
    factors: tuple[tuple[int, ...], ...]

    @property
    def is_trivial(self) -> bool:
        return self.power == 0 and not self.factors

    def canonical_length(self) -> int:
        return len(self.factors)


def _delta(k: int) -> list[int]:
    return list(range(k - 1, -1, -1))


def _letter_factors(word: Word, k: int) -> tuple[int, list[list[int]]]:
    """Rewrite a signed word as Delta^p times positive permutation factors.

    sigma_g contributes the transposition table; sigma_g^-1 contributes
    Delta^-1 times its positive complement (the reversal table with the
    values g, g+1 swapped).  Powers are commuted to the front: a factor
    crossed by Delta^m is conjugated m times (an involution, so only the
    parity matters).
    """
    pieces: list[tuple[int, list[int]]] = []  # (delta exponent, factor)
    for g, e in word.letters:
        if e == 1:
            f = list(range(k))
            f[g], f[g + 1] = f[g + 1], f[g]
            pieces.append((0, f))
        else:
            # Delta * sigma_g^-1: the reversal with values g, g+1 swapped.
            f = _delta(k)
            f[k - 1 - g], f[k - 2 - g] = f[k - 2 - g], f[k - 1 - g]
            pieces.append((-1, f))
    factors: list[list[int]] = []
    suffix = 0  # Delta power accumulated to the right of the current factor
    for p, f in reversed(pieces):
        factors.append(_garside_py.tau(f) if suffix % 2 else f)
        suffix += p
    factors.reverse()
    return suffix, factors


def normal_form(word: Word, strands: int | None = None) -> NormalForm:
    """Normal form of a braid word; strand count defaults to the alphabet's."""
    k = strands if strands is not None else word.alphabet.size + 1
    if word.alphabet.size != k - 1:
        raise ValueError(
            f"word over {word.alphabet.size} generators is not a braid word on {k} strands"
        )
    power, factors = _letter_factors(word, k)
    extra, normd = _kernel.normalize(k, factors)
    return NormalForm(k, power + extra, tuple(tuple(f) for f in normd))


def equals(u: Word, v: Word, strands: int | None = None) -> bool:
    """Exact braid equality (same strand count required)."""
    if u.alphabet != v.alphabet:
        raise ValueError("braid words over different alphabets")
    return normal_form(u, strands) == normal_form(v, strands)


def is_trivial(word: Word, strands: int | None = None) -> bool:
    return normal_form(word, strands).is_trivial


def permutation_of(word: Word, strands: int | None = None) -> tuple[int, ...]:
    """Image in the symmetric group (a cheap invariant, not injective)."""
    k = strands if strands is not None else word.alphabet.size + 1
    p = list(range(k))
    inv = list(range(k))
    for g, _ in word.letters:  # sign is irrelevant to the permutation
        a, b = inv[g], inv[g + 1]
        p[a], p[b] = p[b], p[a]
        inv[g], inv[g + 1] = b, a
    return tuple(p)


def _permutation_word(p: tuple[int, ...]) -> list[int]:
    """A reduced positive word (1-based generators) for a permutation table.

    Bubble-sorts the table; each adjacent swap needed to sort it is one
    Artin generator of the positive lift, emitted in diagram order.
    """
    work = list(p)
    out: list[int] = []
    changed = True
    while changed:
        changed = False
        for i in range(len(work) - 1):
            if work[i] > work[i + 1]:
                work[i], work[i + 1] = work[i + 1], work[i]
                out.append(i + 1)
                changed = True
    return out


@lru_cache(maxsize=None)
def _delta_word_ints(k: int) -> tuple[int, ...]:
    return tuple(_permutation_word(tuple(_delta(k))))


def as_word(nf: NormalForm) -> Word:
    """Canonical braid word of a normal form (Delta^p then the factors)."""
    alphabet = braid_alphabet(nf.strands)
    ints: list[int] = []
    dw = _delta_word_ints(nf.strands)
    if nf.power >= 0:
        ints.extend(dw * nf.power)
    else:
        ints.extend([-v for v in reversed(dw)] * (-nf.power))
    for f in nf.factors:
        ints.extend(_permutation_word(f))
    return Word.from_ints(alphabet, ints)


def delta_word(strands: int) -> Word:
    """The positive half twist as a braid word."""
    return Word.from_ints(braid_alphabet(strands), _delta_word_ints(strands))


__all__ = [
    "KERNEL_BACKEND",
    "NormalForm",
    "normal_form",
    "equals",
    "is_trivial",
    "permutation_of",
    "as_word",
    "delta_word",
    "braid_alphabet",
    "Alphabet",
]
