"""Free-group words over a finite generator alphabet.

A word is a sequence of letters, each letter a pair (index, sign) with
0 <= index < alphabet size and sign in {+1, -1}.  Words are kept freely
reduced at all times: the constructor cancels adjacent inverse pairs, so
two Word objects over the same alphabet are equal in the free group iff
they compare equal.

Text grammar (used by the CLI and file formats):

    word     ::= [header] body
    header   ::= ("B" | "T") int ":"      e.g. "B4:" fixes 4 strands
    body     ::= (signed integer | letter)*

Signed integers are 1-based generator indices, negative for inverses.
Single letters are an alternative input form: lowercase 'a' is generator 1,
'b' is 2, ..., uppercase is the inverse.  Canonical output is always the
signed-integer form.  A "B<k>" header declares a braid group on k strands
(k - 1 generators); a "T<k>" header declares k generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Letter = tuple[int, int]  # (generator index, +1 or -1)


@dataclass(frozen=True)
class Alphabet:
    """A finite, ordered set of generator labels."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate generator labels: {self.labels!r}")

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def braid_alphabet(strands: int) -> Alphabet:
    """Alphabet of the Artin generators of the braid group on ``strands`` strands."""
    if strands < 1:
        raise ValueError(f"need at least 1 strand, got {strands}")
    return Alphabet(tuple(f"s{i}" for i in range(1, strands)))


def twist_alphabet(n: int) -> Alphabet:
    """Alphabet of n twist generators T1..Tn."""
    if n < 1:
        raise ValueError(f"need at least 1 generator, got {n}")
    return Alphabet(tuple(f"T{i}" for i in range(1, n + 1)))


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Cancel adjacent (g, e)(g, -e) pairs until none remain.

    A single stack pass is confluent: the reduced word does not depend on
    cancellation order (tested property).
    """
    out: list[Letter] = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word over ``alphabet``."""

    alphabet: Alphabet
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        reduced = free_reduce(self.letters)
        for g, e in reduced:
            if not 0 <= g < self.alphabet.size:
                raise ValueError(
                    f"letter index {g} out of range for alphabet of size {self.alphabet.size}"
                )
            if e not in (1, -1):
                raise ValueError(f"letter sign must be +1/-1, got {e}")
        object.__setattr__(self, "letters", reduced)

    # -- group operations ---------------------------------------------------

    def __mul__(self, other: Word) -> Word:
        if other.alphabet != self.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(self.alphabet, tuple((g, -e) for g, e in reversed(self.letters)))

    def conjugate(self, by: Word) -> Word:
        """Return by^-1 * self * by."""
        return by.inverse() * self * by

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return self.inverse() ** (-n)
        out = Word(self.alphabet, ())
        for _ in range(n):
            out = out * self
        return out

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    # -- construction helpers ----------------------------------------------

    @classmethod
    def identity(cls, alphabet: Alphabet) -> Word:
        return cls(alphabet, ())

    @classmethod
    def generator(cls, alphabet: Alphabet, index: int, sign: int = 1) -> Word:
        return cls(alphabet, ((index, sign),))

    @classmethod
    def from_ints(cls, alphabet: Alphabet, ints: Sequence[int]) -> Word:
        """Build from 1-based signed integers, e.g. [1, 2, -1]."""
        letters = []
        for v in ints:
            if v == 0:
                raise ValueError("0 is not a valid signed generator index")
            letters.append((abs(v) - 1, 1 if v > 0 else -1))
        return cls(alphabet, tuple(letters))

    def to_ints(self) -> tuple[int, ...]:
        return tuple(e * (g + 1) for g, e in self.letters)


@dataclass(frozen=True)
class Homomorphism:
    """A map between free groups given by generator images.

    ``images[i]`` is the image of generator i of ``source``; inverse letters
    map to inverted images, so the map is a group homomorphism by
    construction.
    """

    source: Alphabet
    target: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.source.size:
            raise ValueError(
                f"need {self.source.size} images, got {len(self.images)}"
            )
        for w in self.images:
            if w.alphabet != self.target:
                raise ValueError("image word over wrong alphabet")

    def __call__(self, word: Word) -> Word:
        if word.alphabet != self.source:
            raise ValueError("word is not over the source alphabet")
        out = Word.identity(self.target)
        for g, e in word.letters:
            img = self.images[g]
            out = out * (img if e == 1 else img.inverse())
        return out

    def compose(self, inner: Homomorphism) -> Homomorphism:
        """Return self o inner (apply ``inner`` first)."""
        if inner.target != self.source:
            raise ValueError("homomorphisms do not compose")
        return Homomorphism(
            inner.source, self.target, tuple(self(w) for w in inner.images)
        )


# -- parsing / formatting ---------------------------------------------------

_HEADER_RE = re.compile(r"^\s*([BT])(\d+)\s*:")


def parse_word(text: str, alphabet: Alphabet | None = None) -> Word:
    """Parse the text grammar described in the module docstring.

    If ``alphabet`` is given, any header must agree with it; if omitted, a
    header is required to fix the alphabet ("B<k>" for k strands -> k - 1
    generators, "T<n>" for n generators).
    """
    m = _HEADER_RE.match(text)
    body = text
    if m:
        kind, num = m.group(1), int(m.group(2))
        body = text[m.end():]
        declared = braid_alphabet(num) if kind == "B" else twist_alphabet(num)
        if alphabet is None:
            alphabet = declared
        elif alphabet != declared:
            raise ValueError(
                f"header {kind}{num}: does not match expected alphabet of size {alphabet.size}"
            )
    if alphabet is None:
        raise ValueError("no alphabet given and no B<k>:/T<n>: header present")

    letters: list[Letter] = []
    for tok in body.split():
        if re.fullmatch(r"-?\d+", tok):
            v = int(tok)
            if v == 0:
                raise ValueError("0 is not a valid signed generator index")
            pairs = [(abs(v) - 1, 1 if v > 0 else -1)]
        elif re.fullmatch(r"[A-Za-z]+", tok):
            # A run of letters is a sequence of one-letter generators.
            pairs = [
                (ord(ch.lower()) - ord("a"), 1 if ch.islower() else -1)
                for ch in tok
            ]
        else:
            raise ValueError(f"unrecognized token {tok!r} in word")
        for g, e in pairs:
            if not 0 <= g < alphabet.size:
                raise ValueError(
                    f"generator {tok!r} out of range for alphabet of size {alphabet.size}"
                )
            letters.append((g, e))
    return Word(alphabet, tuple(letters))


def format_word(word: Word) -> str:
    """Canonical output: 1-based signed integers separated by spaces."""
    return " ".join(str(v) for v in word.to_ints())
