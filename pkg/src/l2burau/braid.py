"""Braid words and the right action of B_n on the free group F_n.

Composition ``alpha * beta`` draws alpha above beta, so the induced
automorphisms satisfy h_{alpha beta} = h_beta o h_alpha.  Images are built by
applying the generators of the word left to right to the current images.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .freegroup import Word, reduce, rewrite_alphabet

__all__ = [
    "BraidWord",
    "parse_braid",
    "act_on_x",
    "act_on_g",
    "action_x",
    "action_g",
    "permutation",
    "cycles",
    "longpaton",
    "LONGPATON_LETTERS",
]


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators sigma_1..sigma_{n-1}.

    Letters are signed ints, ``i`` for sigma_i and ``-i`` for its inverse.
    """

    n: int
    letters: tuple[int, ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.n < 1:
            raise ValueError("strand count must be at least 1")
        for a in letters:
            if a == 0 or abs(a) >= self.n:
                raise ValueError(f"generator s{abs(a)} not in B_{self.n}")
        object.__setattr__(self, "_hash", hash((self.n, letters)))

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.n != other.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(k))

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-a for a in reversed(self.letters)))

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n, ())

    @classmethod
    def generator(cls, n: int, i: int) -> BraidWord:
        return cls(n, (i,))

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"s{a}" if a > 0 else f"-s{-a}" for a in self.letters)


_BRAID_TOKEN = re.compile(r"^(-)?(?:s|sigma_?)?(-)?(\d+)(?:\^(-?\d+))?$")


def parse_braid(text: str, n: int | None = None) -> BraidWord:
    """Parse ``"s1 -s3 s2"`` (or ``"1 -3 2"``, ``"s1^-1"``).

    The strand count defaults to the largest index plus one.
    """
    letters: list[int] = []
    for found in re.finditer(r"[^\s,]+", text):
        tok = found.group()
        if tok == "e":
            continue
        m = _BRAID_TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse braid letter {tok!r} at column {found.start() + 1}")
        neg1, neg2, idx, power = m.groups()
        k = int(power) if power is not None else 1
        if neg1:
            k = -k
        if neg2:
            k = -k
        i = int(idx)
        letters.extend([i if k > 0 else -i] * abs(k))
    if n is None:
        n = max((abs(a) for a in letters), default=0) + 1
    return BraidWord(n, tuple(letters))


def _x_generator_images(n: int, a: int) -> list[Word]:
    i = abs(a)
    imgs = [reduce([j]) for j in range(1, n + 1)]
    if a > 0:
        imgs[i - 1] = reduce([i, i + 1, -i])
        imgs[i] = reduce([i])
    else:
        imgs[i - 1] = reduce([i + 1])
        imgs[i] = reduce([-(i + 1), i, i + 1])
    return imgs


def _g_generator_images(n: int, a: int) -> list[Word]:
    i = abs(a)
    imgs = [reduce([j]) for j in range(1, n + 1)]
    prev = [i - 1] if i > 1 else []
    if a > 0:
        imgs[i - 1] = reduce([i + 1, -i] + prev)
    else:
        imgs[i - 1] = reduce(prev + [-i, i + 1])
    return imgs


@lru_cache(maxsize=4096)
def action_x(beta: BraidWord) -> tuple[Word, ...]:
    """Images h_beta(x_1), ..., h_beta(x_n)."""
    imgs = [reduce([j]) for j in range(1, beta.n + 1)]
    for a in beta.letters:
        gen = _x_generator_images(beta.n, a)
        imgs = [rewrite_alphabet(w, gen) for w in imgs]
    return tuple(imgs)


@lru_cache(maxsize=4096)
def action_g(beta: BraidWord) -> tuple[Word, ...]:
    """Images h_beta(g_1), ..., h_beta(g_n) written in the g-alphabet."""
    imgs = [reduce([j]) for j in range(1, beta.n + 1)]
    for a in beta.letters:
        gen = _g_generator_images(beta.n, a)
        imgs = [rewrite_alphabet(w, gen) for w in imgs]
    return tuple(imgs)


def act_on_x(beta: BraidWord, j: int) -> Word:
    if not 1 <= j <= beta.n:
        raise ValueError(f"x{j} not a generator of F_{beta.n}")
    return action_x(beta)[j - 1]


def act_on_g(beta: BraidWord, j: int) -> Word:
    if not 1 <= j <= beta.n:
        raise ValueError(f"g{j} not a generator of F_{beta.n}")
    return action_g(beta)[j - 1]


def permutation(beta: BraidWord) -> tuple[int, ...]:
    """Strand permutation: ``p[j-1]`` is where the strand starting at j ends.

    Equivalently h_beta(x_j) is conjugate to x_{p[j-1]}; the permutation of
    a product is the composite in drawing order.
    """
    pos = list(range(1, beta.n + 1))
    for a in beta.letters:
        i = abs(a)
        for k, p in enumerate(pos):
            if p == i:
                pos[k] = i + 1
            elif p == i + 1:
                pos[k] = i
    return tuple(pos)


def cycles(perm: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Cycle decomposition; one cycle per component of the closure."""
    seen: set[int] = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc = []
        j = start
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j - 1]
        out.append(tuple(cyc))
    return out


# Floors of the Long-Paton braid, top to bottom; letters on one floor commute.
_LONGPATON_FLOORS = (
    (-1, 5), (2, -4), (3,), (4, -2), (-5, 1), (-5, 1), (-5, 1), (4, -2),
    (3,), (2, -4), (-1, 5), (-1, 5),
    (-1, 5), (2, -4), (-3,), (4, -2), (-5, 1), (-5, 1), (-5, 1), (4, -2),
    (-3,), (2, -4), (-1, 5), (-1, 5),
)  # fmt: skip

LONGPATON_LETTERS = tuple(a for floor in _LONGPATON_FLOORS for a in floor)


def longpaton() -> BraidWord:
    """The Long-Paton braid in B_6, whose classical Burau image is trivial."""
    return BraidWord(6, LONGPATON_LETTERS)
