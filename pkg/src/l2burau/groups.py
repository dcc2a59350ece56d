"""Word-problem oracles for target groups and homomorphisms from F_n.

An oracle turns any word in its alphabet into a canonical reduced word, so
group-ring elements over it can use words as dictionary keys.  Each oracle
also carries integer generator weights defining psi: G -> Z, which grades
group elements by powers of t when operators are evaluated.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from .braid import BraidWord
from .freegroup import (
    IDENTITY,
    GroupRingElt,
    Word,
    format_word,
    g_images,
    parse_word,
    reduce,
    rewrite_alphabet,
    x_images_in_g,
)
from .garside import garside_nf

__all__ = [
    "GroupOracle",
    "FreeGroup",
    "FreeAbelianGroup",
    "BraidGroup",
    "TorusKnotGroup",
    "BallOverflow",
    "GammaMap",
    "identity_gamma",
    "abelianization_gamma",
    "exponent_sum_gamma",
    "normalize",
    "apply_gamma",
    "verify_gamma",
    "ball",
    "oracle_from_config",
    "load_group_config",
]


class BallOverflow(RuntimeError):
    pass


class GroupOracle:
    """Base class: subclasses implement ``_normal_form``."""

    kind = "abstract"

    def __init__(self, rank: int, weights: Sequence[int] | None = None,
                 symbol: str = "x", names: Sequence[str] | None = None):
        self.rank = rank
        self.weights = tuple(weights) if weights is not None else (1,) * rank
        if len(self.weights) != rank:
            raise ValueError("need one weight per generator")
        self.symbol = symbol
        self.names = tuple(names) if names is not None else None
        self._weights: dict[Word, int] = {IDENTITY: 0}

    def _check(self, w: Word) -> None:
        for a in w.letters:
            if abs(a) > self.rank:
                raise ValueError(f"letter {a} outside alphabet of rank {self.rank}")

    def normalize(self, w: Word) -> Word:
        self._check(w)
        return self._normal_form(w)

    def _normal_form(self, w: Word) -> Word:
        raise NotImplementedError

    def multiply(self, u: Word, v: Word) -> Word:
        return self._normal_form(u * v)

    def inverse(self, w: Word) -> Word:
        return self._normal_form(w.inverse())

    def weight(self, w: Word) -> int:
        # words are trie nodes, so cache psi along the parent chain
        cache = self._weights
        v = cache.get(w)
        if v is not None:
            return v
        pending = []
        while w not in cache:
            pending.append(w)
            w = w.parent
        v = cache[w]
        wt = self.weights
        for node in reversed(pending):
            a = node.last
            v += wt[a - 1] if a > 0 else -wt[-a - 1]
            cache[node] = v
        return v

    def generators(self) -> list[Word]:
        return [reduce([i]) for i in range(1, self.rank + 1)]

    def format(self, w: Word) -> str:
        return format_word(w, self.symbol, self.names)

    def parse(self, text: str) -> Word:
        return self.normalize(parse_word(text, self.names))

    def describe(self) -> dict:
        return {"kind": self.kind, "rank": self.rank, "weights": list(self.weights)}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"


class FreeGroup(GroupOracle):
    kind = "free"

    def _normal_form(self, w: Word) -> Word:
        return w

    def multiply(self, u: Word, v: Word) -> Word:
        return u * v

    def inverse(self, w: Word) -> Word:
        return w.inverse()

    def describe(self) -> dict:
        return {**super().describe(), "symbol": self.symbol}


class FreeAbelianGroup(GroupOracle):
    """Z^k; normal form x1^e1 x2^e2 ... xk^ek (exponent vectors are cached)."""

    kind = "free-abelian"

    def __init__(self, rank: int, weights: Sequence[int] | None = None):
        super().__init__(rank, weights)
        self._exp: dict[Word, tuple[int, ...]] = {}
        self._word: dict[tuple[int, ...], Word] = {}

    def exponents(self, w: Word) -> tuple[int, ...]:
        e = self._exp.get(w)
        if e is None:
            acc = [0] * self.rank
            for a in w.letters:
                acc[abs(a) - 1] += 1 if a > 0 else -1
            e = self._exp[w] = tuple(acc)
        return e

    def _from_exponents(self, e: tuple[int, ...]) -> Word:
        w = self._word.get(e)
        if w is None:
            w = IDENTITY
            for i, k in enumerate(e, start=1):
                w = w.extend([i if k > 0 else -i] * abs(k))
            self._word[e] = w
            self._exp[w] = e
        return w

    def _normal_form(self, w: Word) -> Word:
        return self._from_exponents(self.exponents(w))

    def multiply(self, u: Word, v: Word) -> Word:
        eu, ev = self.exponents(u), self.exponents(v)
        return self._from_exponents(tuple(a + b for a, b in zip(eu, ev)))


class BraidGroup(GroupOracle):
    """B_k with normal forms read off the left-canonical Garside form."""

    kind = "braid"

    def __init__(self, strands: int, weights: Sequence[int] | None = None):
        super().__init__(strands - 1, weights, symbol="s")
        self.strands = strands

    def _normal_form(self, w: Word) -> Word:
        nf = garside_nf(BraidWord(self.strands, w.letters))
        return reduce(nf.to_letters())

    def describe(self) -> dict:
        return {"kind": self.kind, "strands": self.strands, "weights": list(self.weights)}


class TorusKnotGroup(GroupOracle):
    """<a, b | a^p = b^q> as the amalgam Z *_{a^p = b^q} Z.

    Normal form: c^k s_1 ... s_m with c = a^p central and the s_i
    alternating between a^1..a^{p-1} and b^1..b^{q-1}.  Default weights
    psi(a) = q, psi(b) = p make the relator weight zero.
    """

    kind = "torus-knot"

    def __init__(self, p: int, q: int, weights: Sequence[int] | None = None):
        if p < 2 or q < 2:
            raise ValueError("torus-knot group needs p, q >= 2")
        super().__init__(2, weights if weights is not None else (q, p), names=("a", "b"))
        if self.weights[0] * p != self.weights[1] * q:
            raise ValueError("weights must satisfy p*psi(a) = q*psi(b)")
        self.p, self.q = p, q

    def syllables(self, w: Word) -> tuple[int, list[tuple[int, int]]]:
        """Central exponent and syllable stack [(generator, exponent), ...]."""
        order = (0, self.p, self.q)
        k = 0
        stack: list[list[int]] = []
        for a in w.letters:
            g = abs(a)
            if stack and stack[-1][0] == g:
                e = stack[-1][1] + (1 if a > 0 else -1)
                if e == order[g]:
                    k += 1
                    stack.pop()
                elif e == 0:
                    stack.pop()
                else:
                    stack[-1][1] = e
            elif a > 0:
                stack.append([g, 1])
            else:
                k -= 1
                stack.append([g, order[g] - 1])
        return k, [(g, e) for g, e in stack]

    def _normal_form(self, w: Word) -> Word:
        k, syl = self.syllables(w)
        letters = [1 if k > 0 else -1] * (abs(k) * self.p)
        for g, e in syl:
            letters.extend([g] * e)
        return reduce(letters)

    def describe(self) -> dict:
        return {"kind": self.kind, "p": self.p, "q": self.q, "weights": list(self.weights)}


def normalize(oracle: GroupOracle, w: Word) -> Word:
    return oracle.normalize(w)


@dataclass(frozen=True)
class GammaMap:
    """A homomorphism F_n -> G given by the images of x_1..x_n.

    Every image must have weight 1, so that psi o gamma sends each x_i to 1.
    """

    target: GroupOracle
    images: tuple[Word, ...]
    label: str = "custom"

    def __post_init__(self):
        imgs = tuple(self.target.normalize(w) for w in self.images)
        object.__setattr__(self, "images", imgs)
        bad = [i + 1 for i, w in enumerate(imgs) if self.target.weight(w) != 1]
        if bad:
            raise ValueError(f"psi(gamma(x_i)) != 1 for i in {bad}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, w: Word) -> Word:
        return self.target.normalize(rewrite_alphabet(w, self.images))

    def g_images(self) -> list[Word]:
        """Images of g_i = x_1 ... x_i."""
        return [self(g) for g in g_images(self.n)]

    def is_identity(self) -> bool:
        return isinstance(self.target, FreeGroup) and all(
            w.letters == (i,) for i, w in enumerate(self.images, start=1)
        )

    def describe(self) -> dict:
        return {
            "label": self.label,
            "target": self.target.describe(),
            "images": [self.target.format(w) for w in self.images],
        }


def identity_gamma(n: int, basis: str = "x") -> GammaMap:
    """gamma = id on F_n, presented on the x_i or on g_i = x_1...x_i."""
    if basis == "x":
        return GammaMap(FreeGroup(n), tuple(reduce([i]) for i in range(1, n + 1)), "id")
    if basis == "g":
        target = FreeGroup(n, weights=range(1, n + 1), symbol="g")
        return GammaMap(target, tuple(x_images_in_g(n)), "id")
    raise ValueError(f"unknown basis {basis!r}")


def abelianization_gamma(n: int) -> GammaMap:
    """F_n -> Z^n, x_i -> i-th basis vector."""
    return GammaMap(FreeAbelianGroup(n), tuple(reduce([i]) for i in range(1, n + 1)),
                    "abelianization")


def exponent_sum_gamma(n: int) -> GammaMap:
    """F_n -> Z, every x_i to the generator; psi o gamma is the exponent sum."""
    return GammaMap(FreeAbelianGroup(1), tuple(reduce([1]) for _ in range(n)), "exponent-sum")


def apply_gamma(gamma: GammaMap, a: GroupRingElt) -> GroupRingElt:
    """Push a group-ring element over F_n forward to Z[G]."""
    if gamma.is_identity():
        return GroupRingElt._raw(dict(a.terms), gamma.target)
    images, norm = gamma.images, gamma.target._normal_form
    return a.map_words(lambda w: norm(rewrite_alphabet(w, images)), gamma.target)


def verify_gamma(gamma: GammaMap, relators: Sequence[Word]) -> bool:
    """True iff every relator (in the x-alphabet) maps to the identity."""
    return all(gamma(r).is_identity() for r in relators)


def ball(oracle: GroupOracle, radius: int, steps: Sequence[Word] | None = None,
         cap: int = 2_000_000) -> list[Word]:
    """Normal forms within ``radius`` steps of e, in shortlex order.

    ``steps`` defaults to the generators and their inverses; any symmetric
    set of normal forms may be used instead.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if steps is None:
        gens = oracle.generators()
        steps = gens + [g.inverse() for g in gens]
    steps = [oracle.normalize(s) for s in steps]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for s in steps:
                v = oracle.multiply(u, s)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        if len(seen) > cap:
            raise BallOverflow(f"ball exceeds {cap} elements at radius {radius}")
        frontier = nxt
    return sorted(seen, key=Word.sort_key)


def oracle_from_config(cfg: dict) -> GroupOracle:
    kind = cfg["kind"]
    weights = cfg.get("weights")
    if kind == "free":
        return FreeGroup(int(cfg["rank"]), weights, cfg.get("symbol", "x"))
    if kind == "free-abelian":
        return FreeAbelianGroup(int(cfg["rank"]), weights)
    if kind == "braid":
        return BraidGroup(int(cfg["strands"]), weights)
    if kind == "torus-knot":
        return TorusKnotGroup(int(cfg["p"]), int(cfg["q"]), weights)
    raise ValueError(f"unknown oracle kind {kind!r}")


def load_group_config(source: str | Path | dict) -> tuple[GroupOracle, GammaMap | None]:
    """Read a JSON group config; returns the oracle and the gamma if given.

    Example::

        {"kind": "torus-knot", "p": 2, "q": 3,
         "gamma": ["b^-1 a", "a^-1 b^2"]}
    """
    cfg = source if isinstance(source, dict) else json.loads(Path(source).read_text())
    oracle = oracle_from_config(cfg)
    gamma = None
    if "gamma" in cfg:
        gamma = GammaMap(oracle, tuple(oracle.parse(s) for s in cfg["gamma"]),
                         cfg.get("label", "custom"))
    return oracle, gamma
