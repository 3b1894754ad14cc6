"""The cycle presentation on twist generators and its braid realization.

``n`` twist generators T_1..T_n are subject to two relation families:

* braid relations  T_i T_j T_i = T_j T_i T_j  for every pair i < j,
* cycle relations  T_j T_i T_k T_j = T_k T_j T_i T_k  for every triple
  i < j < k (the variant matching the standard cyclic order of the
  generators; other rotations of a triple are consequences).

Substituting T_k -> P_k sigma_k P_k^-1 with P_k = sigma_1 ... sigma_{k-1}
realizes the generators as band generators of the braid group on n + 1
strands.  Every relator maps to the trivial braid (``verify_relators``
machine-checks this), and the substitution has a retraction
sigma_1 -> T_1, sigma_{k+1} -> T_k^-1 T_{k+1} T_k (``round_trip``
machine-checks it), so equality of twist words can be decided through the
Garside engine (``twist_word_equals``).

Faithfulness of that decision for twist words describing Dehn twists along
a curve collection needs the collection to be an embedded bouquet (so the
curves' complement carries no hidden relations).  Callers outside that
context must read a positive answer modulo ``PI1_ASSUMPTION``; the CLI
prints the flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .braid import equals as braid_equals
from .braid import is_trivial as braid_is_trivial
from .words import Homomorphism, Word, braid_alphabet, twist_alphabet

#: Hypothesis under which ``twist_word_equals`` is faithful, not merely sound.
PI1_ASSUMPTION = "embedded-bouquet-pi1"


@dataclass(frozen=True)
class CyclePresentation:
    """Generators T_1..T_n with braid and cycle relators (as trivial words)."""

    n: int
    braid_relators: tuple[Word, ...]
    cycle_relators: tuple[Word, ...]

    def labeled_relators(self) -> list[tuple[str, Word]]:
        """All relators with their stable report ids, braid pairs first."""
        pairs = combinations(range(1, self.n + 1), 2)
        triples = combinations(range(1, self.n + 1), 3)
        out = [
            (f"braid({i},{j})", w) for (i, j), w in zip(pairs, self.braid_relators)
        ]
        out.extend(
            (f"cycle({i},{j},{k})", w)
            for (i, j, k), w in zip(triples, self.cycle_relators)
        )
        return out


@dataclass(frozen=True)
class ChainSubstitution:
    """The mutually inverse substitutions between twist and braid words.

    ``phi`` sends T_k to the band generator P_k sigma_k P_k^-1; ``psi``
    sends sigma_1 to T_1 and sigma_{k+1} to T_k^-1 T_{k+1} T_k.
    """

    n: int
    phi: Homomorphism
    psi: Homomorphism


def build_presentation(n: int) -> CyclePresentation:
    """Relator lists for n twist generators: C(n,2) braid + C(n,3) cycle."""
    if n < 2:
        raise ValueError(f"need at least 2 generators, got {n}")
    alphabet = twist_alphabet(n)
    braid_rel = tuple(
        Word.from_ints(alphabet, [i, j, i, -j, -i, -j])
        for i, j in combinations(range(1, n + 1), 2)
    )
    cycle_rel = tuple(
        Word.from_ints(alphabet, [j, i, k, j, -k, -i, -j, -k])
        for i, j, k in combinations(range(1, n + 1), 3)
    )
    return CyclePresentation(n, braid_rel, cycle_rel)


def chain_substitution(n: int) -> ChainSubstitution:
    if n < 2:
        raise ValueError(f"need at least 2 generators, got {n}")
    twists = twist_alphabet(n)
    braids = braid_alphabet(n + 1)
    phi_images = tuple(
        Word.from_ints(
            braids,
            list(range(1, k)) + [k] + [-v for v in range(k - 1, 0, -1)],
        )
        for k in range(1, n + 1)
    )
    psi_images = tuple(
        Word.from_ints(twists, [1] if m == 1 else [-(m - 1), m, m - 1])
        for m in range(1, n + 1)
    )
    return ChainSubstitution(
        n,
        Homomorphism(twists, braids, phi_images),
        Homomorphism(braids, twists, psi_images),
    )


def verify_relators(n: int) -> list[tuple[str, bool]]:
    """Map every relator through phi and test triviality in B_{n+1}.

    Returns ``(relator id, ok)`` pairs; all must be true for the
    substitution to respect the presentation.
    """
    pres = build_presentation(n)
    phi = chain_substitution(n).phi
    return [
        (label, braid_is_trivial(phi(word)))
        for label, word in pres.labeled_relators()
    ]


def round_trip(n: int) -> list[tuple[str, bool]]:
    """Check phi(psi(sigma_k)) = sigma_k in B_{n+1} for every k."""
    sub = chain_substitution(n)
    braids = braid_alphabet(n + 1)
    out = []
    for k in range(1, n + 1):
        sigma = Word.generator(braids, k - 1)
        out.append((f"sigma({k})", braid_equals(sub.phi(sub.psi(sigma)), sigma)))
    return out


def twist_word_equals(n: int, w1: Word, w2: Word) -> bool:
    """Decide equality of two twist words through their braid images.

    Sound for any input (equal images certify equality in the presented
    group); complete exactly when the twists come from an embedded bouquet
    (``PI1_ASSUMPTION``).
    """
    alphabet = twist_alphabet(n)
    if w1.alphabet != alphabet or w2.alphabet != alphabet:
        raise ValueError(f"expected words over {alphabet.labels}")
    phi = chain_substitution(n).phi
    return braid_equals(phi(w1), phi(w2))


__all__ = [
    "PI1_ASSUMPTION",
    "CyclePresentation",
    "ChainSubstitution",
    "build_presentation",
    "chain_substitution",
    "verify_relators",
    "round_trip",
    "twist_word_equals",
]
