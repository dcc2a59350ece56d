"""Symbolic L2-Burau matrices as matrices over Z[G].

Conventions shared by everything numeric downstream:

* vectors in l2(G)^k are columns and matrices act on the left;
* an entry a = sum c_w w stands for the operator sum c_w t^psi(w) R_w, where
  R_w is right multiplication by w and psi is the oracle's weight map;
* since R_a R_b = R_{ba}, composing operator matrices is the matrix product
  over the opposite ring: (M o N)_{ik} = sum_j N_{jk} M_{ij}.

The parameter t never appears in a symbolic matrix; it is recovered from
psi when the matrix is evaluated.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .braid import BraidWord, action_g, action_x
from .freegroup import GroupRingElt, Word, fox_gradient, rewrite_alphabet
from .groups import GammaMap, GroupOracle, apply_gamma, oracle_from_config

__all__ = [
    "OperatorMatrix",
    "compose",
    "l2_burau",
    "l2_burau_g",
    "reduced_l2_burau",
    "precompose_gamma",
]


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: tuple[tuple[GroupRingElt, ...], ...]
    oracle: GroupOracle
    basis: str = "x"
    # set once coefficients carry the factors t^psi(w); None while symbolic
    t: object = None

    @classmethod
    def build(cls, rows: Sequence[Sequence[GroupRingElt]], oracle: GroupOracle,
              basis: str = "x", t=None) -> OperatorMatrix:
        return cls(tuple(tuple(r) for r in rows), oracle, basis, t)

    @classmethod
    def identity(cls, k: int, oracle: GroupOracle, basis: str = "x", t=None) -> OperatorMatrix:
        one, zero = GroupRingElt.one(oracle), GroupRingElt.zero(oracle)
        return cls.build([[one if i == j else zero for j in range(k)] for i in range(k)],
                         oracle, basis, t)

    @classmethod
    def from_words(cls, rows, oracle: GroupOracle, basis: str = "x") -> OperatorMatrix:
        """Build from nested lists of {word-text: coefficient} dicts."""
        built = []
        for row in rows:
            built.append([GroupRingElt({oracle.parse(w): c for w, c in entry.items()}, oracle)
                          for entry in row])
        return cls.build(built, oracle, basis)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij: tuple[int, int]) -> GroupRingElt:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.shape)

    def is_identity(self) -> bool:
        n, m = self.shape
        return n == m and self == OperatorMatrix.identity(n, self.oracle)

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        _check_compatible(self, other, same_shape=True)
        return self.build([[a + b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.entries, other.entries)],
                          self.oracle, self.basis, self.t)

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        _check_compatible(self, other, same_shape=True)
        return self.build([[a - b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.entries, other.entries)],
                          self.oracle, self.basis, self.t)

    def __neg__(self) -> OperatorMatrix:
        return self.build([[-a for a in r] for r in self.entries], self.oracle, self.basis, self.t)

    def scale(self, c: int) -> OperatorMatrix:
        return self.build([[a.scale(c) for a in r] for r in self.entries], self.oracle, self.basis,
                          self.t)

    def minus_identity(self) -> OperatorMatrix:
        n, _ = self.shape
        return self - OperatorMatrix.identity(n, self.oracle, self.basis, self.t)

    def block(self, rows: range, cols: range) -> OperatorMatrix:
        return self.build([[self.entries[i][j] for j in cols] for i in rows],
                          self.oracle, self.basis)

    def max_support(self) -> int:
        return max((len(a) for r in self.entries for a in r), default=0)

    def format(self) -> list[list[str]]:
        fmt = lambda a: a.format(self.oracle.symbol, self.oracle.names)  # noqa: E731
        return [[fmt(a) for a in r] for r in self.entries]

    def to_json(self) -> dict:
        psi, fmt = self.oracle.weight, self.oracle.format
        return {
            "basis": self.basis,
            "oracle": self.oracle.describe(),
            "rows": [[[[fmt(w), c, psi(w)] for w, c in a.items()] for a in r]
                     for r in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> OperatorMatrix:
        oracle = oracle_from_config(data["oracle"])
        rows = []
        for r in data["rows"]:
            rows.append([GroupRingElt({oracle.parse(w): c for w, c, _grade in entry}, oracle)
                         for entry in r])
        return cls.build(rows, oracle, data.get("basis", "x"))

    def __repr__(self) -> str:
        return f"OperatorMatrix({self.format()!r}, basis={self.basis!r})"


def _check_compatible(m: OperatorMatrix, k: OperatorMatrix, same_shape=False) -> None:
    if m.oracle is not k.oracle and m.oracle.describe() != k.oracle.describe():
        raise ValueError("operator matrices live over different groups")
    if same_shape and m.shape != k.shape:
        raise ValueError(f"shape mismatch {m.shape} vs {k.shape}")


def compose(m: OperatorMatrix, k: OperatorMatrix) -> OperatorMatrix:
    """The operator m o k (apply k first), as an opposite-ring product."""
    _check_compatible(m, k)
    n, inner = m.shape
    inner2, p = k.shape
    if inner != inner2:
        raise ValueError(f"cannot compose {m.shape} with {k.shape}")
    zero = GroupRingElt.zero(m.oracle)
    rows = []
    for i in range(n):
        row = []
        for c in range(p):
            acc = zero
            for j in range(inner):
                a, b = k.entries[j][c], m.entries[i][j]
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        rows.append(row)
    return OperatorMatrix.build(rows, m.oracle, m.basis, m.t)


def _check_gamma(beta: BraidWord, gamma: GammaMap) -> None:
    if gamma.n != beta.n:
        raise ValueError(f"gamma is defined on F_{gamma.n}, braid has {beta.n} strands")


def l2_burau(beta: BraidWord, gamma: GammaMap) -> OperatorMatrix:
    """Entry (i, j) is gamma(d h_beta(x_j) / d x_i)."""
    _check_gamma(beta, gamma)
    n = beta.n
    cols = [fox_gradient(w, n) for w in action_x(beta)]
    rows = [[apply_gamma(gamma, cols[j][i]) for j in range(n)] for i in range(n)]
    return OperatorMatrix.build(rows, gamma.target, "x")


def _push(a: GroupRingElt, images: Sequence[Word], oracle: GroupOracle) -> GroupRingElt:
    norm = oracle._normal_form
    return a.map_words(lambda w: norm(rewrite_alphabet(w, images)), oracle)


def l2_burau_g(beta: BraidWord, gamma: GammaMap) -> OperatorMatrix:
    """Full n x n matrix in the basis of lifts of g_1..g_n.

    Entry (i, j) is gamma(d h_beta(g_j) / d g_i), with Fox calculus done in
    the g-alphabet.  Its last column is always the last standard column.
    """
    _check_gamma(beta, gamma)
    n = beta.n
    images = gamma.g_images()
    cols = [fox_gradient(w, n) for w in action_g(beta)]
    rows = [[_push(cols[j][i], images, gamma.target) for j in range(n)] for i in range(n)]
    return OperatorMatrix.build(rows, gamma.target, "g")


def reduced_l2_burau(beta: BraidWord, gamma: GammaMap) -> OperatorMatrix:
    """Upper-left (n-1) x (n-1) block of the g-basis matrix."""
    n = beta.n
    if n < 2:
        raise ValueError("reduced L2-Burau map needs n >= 2")
    _check_gamma(beta, gamma)
    images = gamma.g_images()
    cols = [fox_gradient(w, n) for w in action_g(beta)[: n - 1]]
    rows = [[_push(cols[j][i], images, gamma.target) for j in range(n - 1)]
            for i in range(n - 1)]
    return OperatorMatrix.build(rows, gamma.target, "reduced")


def precompose_gamma(gamma: GammaMap, beta: BraidWord) -> GammaMap:
    """gamma o h_beta, with images gamma(h_beta(x_i))."""
    _check_gamma(beta, gamma)
    if not beta.letters:
        return gamma
    return GammaMap(gamma.target, tuple(gamma(w) for w in action_x(beta)), gamma.label)

