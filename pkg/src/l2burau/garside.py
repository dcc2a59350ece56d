"""Left-canonical Garside normal form in the braid group B_n.

Simple elements (positive permutation braids) are stored as permutations
``p`` of ``range(n)``: the strand entering at position ``j`` leaves at
``p[j]``.  A braid is Delta^inf times a left-weighted sequence of simple
factors, none of them trivial or equal to Delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .braid import BraidWord

__all__ = ["GarsideNF", "garside_nf", "simple_word", "equal_braids"]

Perm = tuple[int, ...]


def _identity(n: int) -> Perm:
    return tuple(range(n))


def _delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


@lru_cache(maxsize=1 << 16)
def _starting_set(p: Perm) -> frozenset[int]:
    # sigma_i is a left divisor iff strands at i, i+1 cross
    return frozenset(i for i in range(len(p) - 1) if p[i] > p[i + 1])


@lru_cache(maxsize=1 << 16)
def _finishing_set(p: Perm) -> frozenset[int]:
    inv = [0] * len(p)
    for j, v in enumerate(p):
        inv[v] = j
    return frozenset(i for i in range(len(p) - 1) if inv[i] > inv[i + 1])


@lru_cache(maxsize=1 << 16)
def _times_generator(p: Perm, i: int) -> Perm:
    """A * sigma_i (caller ensures the product is still simple)."""
    swap = {i: i + 1, i + 1: i}
    return tuple(swap.get(v, v) for v in p)


def _generator_times(p: Perm, i: int) -> Perm:
    """sigma_i^-1 * B for sigma_i in the starting set of B."""
    q = list(p)
    q[i], q[i + 1] = q[i + 1], q[i]
    return tuple(q)


@lru_cache(maxsize=1 << 16)
def _tau(p: Perm) -> Perm:
    """Conjugation by Delta: sigma_i -> sigma_{n-i}."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - j] for j in range(n))


def simple_word(p: Perm) -> list[int]:
    """Canonical positive word of a simple element (smallest left divisor first)."""
    out = []
    while True:
        s = _starting_set(p)
        if not s:
            return out
        i = min(s)
        out.append(i + 1)
        p = _generator_times(p, i)


@lru_cache(maxsize=1 << 16)
def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Slide letters from b into a until S(b) is contained in F(a)."""
    while True:
        fa = _finishing_set(a)
        movable = _starting_set(b) - fa
        if not movable:
            return a, b
        i = min(movable)
        a = _times_generator(a, i)
        b = _generator_times(b, i)


@dataclass(frozen=True)
class GarsideNF:
    n: int
    infimum: int
    factors: tuple[Perm, ...]

    def to_letters(self) -> list[int]:
        """A word for the braid; a deterministic function of the form."""
        dw = simple_word(_delta(self.n))
        out: list[int] = []
        if self.infimum >= 0:
            out.extend(dw * self.infimum)
        else:
            inv = [-a for a in reversed(dw)]
            out.extend(inv * (-self.infimum))
        for f in self.factors:
            out.extend(simple_word(f))
        return out

    def to_braid(self) -> BraidWord:
        return BraidWord(self.n, tuple(self.to_letters()))

    @property
    def canonical_length(self) -> int:
        return len(self.factors)


def garside_nf(beta: BraidWord) -> GarsideNF:
    n = beta.n
    ident, delta = _identity(n), _delta(n)
    inf = 0
    factors: list[Perm] = []
    for a in beta.letters:
        i = abs(a) - 1
        if a > 0:
            factors.append(_times_generator(ident, i))
        else:
            # s_i^-1 = Delta^-1 (Delta s_i^-1), and X Delta^-1 = Delta^-1 tau(X)
            inf -= 1
            factors = [_tau(f) for f in factors]
            factors.append(_times_generator(delta, i))
    factors = _normalize_factors(factors, n)
    while factors and factors[0] == delta:
        factors.pop(0)
        inf += 1
    return GarsideNF(n, inf, tuple(factors))


def _normalize_factors(factors: list[Perm], n: int) -> list[Perm]:
    ident = _identity(n)
    changed = True
    while changed:
        changed = False
        for k in range(len(factors) - 1, 0, -1):
            a, b = _left_weight(factors[k - 1], factors[k])
            if a != factors[k - 1]:
                factors[k - 1], factors[k] = a, b
                changed = True
        stripped = [f for f in factors if f != ident]
        if len(stripped) != len(factors):
            factors = stripped
            changed = True
    return factors


def equal_braids(a: BraidWord, b: BraidWord) -> bool:
    return garside_nf(a) == garside_nf(b)
