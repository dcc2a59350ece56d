"""Classical Burau matrices over Z[T, T^-1].

Convention: column j holds the image of x_j, i.e. entry (i, j) is
T^phi(d h_beta(x_j) / d x_i).  With this convention the map is an
anti-homomorphism, burau(alpha beta) = burau(beta) @ burau(alpha), and the
matrix is the transpose of the row convention used in much of the
literature.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence

from .braid import BraidWord, action_g, action_x

__all__ = [
    "Laurent",
    "LaurentMatrix",
    "burau",
    "burau_by_generators",
    "reduced_burau",
    "theta",
]


class Laurent:
    """Integer Laurent polynomial in T, stored as {exponent: coefficient}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> Laurent:
        return cls({e: c})

    @classmethod
    def const(cls, c: int) -> Laurent:
        return cls({0: c})

    def __add__(self, other) -> Laurent:
        other = _lift(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self) -> Laurent:
        return Laurent({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other) -> Laurent:
        return self + (-_lift(other))

    def __rsub__(self, other) -> Laurent:
        return _lift(other) - self

    def __mul__(self, other) -> Laurent:
        other = _lift(other)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, t):
        return sum(c * t**e for e, c in self.coeffs.items())

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, data) -> Laurent:
        return cls({e: c for e, c in data})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            mono = "" if e == 0 else ("T" if e == 1 else f"T^{e}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _lift(x) -> Laurent:
    return x if isinstance(x, Laurent) else Laurent.const(x)


class LaurentMatrix:
    def __init__(self, rows: Sequence[Sequence[Laurent | int]]):
        self.rows = [[_lift(x) for x in row] for row in rows]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @classmethod
    def identity(cls, n: int) -> LaurentMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Laurent:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = Laurent()
                for s in range(k):
                    a, b = self.rows[i][s], other.rows[s][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def transpose(self) -> LaurentMatrix:
        n, m = self.shape
        return LaurentMatrix([[self.rows[i][j] for i in range(n)] for j in range(m)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.rows == other.rows

    def is_identity(self) -> bool:
        return self == LaurentMatrix.identity(self.shape[0])

    def evaluate(self, t) -> list[list]:
        return [[x(t) for x in row] for row in self.rows]

    def det(self) -> Laurent:
        """Leibniz expansion; fine for the small sizes used here."""
        n, m = self.shape
        if n != m:
            raise ValueError("det of non-square matrix")
        total = Laurent()
        for perm in itertools.permutations(range(n)):
            term = Laurent.const(_sign(perm))
            for i, j in enumerate(perm):
                term = term * self.rows[i][j]
                if not term:
                    break
            total = total + term
        return total

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, data) -> LaurentMatrix:
        return cls([[Laurent.from_json(x) for x in row] for row in data])

    def __repr__(self) -> str:
        return "LaurentMatrix(" + repr([[repr(x) for x in row] for row in self.rows]) + ")"


def _sign(perm) -> int:
    s, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def _fox_columns(images, n: int, weights: Sequence[int]) -> LaurentMatrix:
    # one scan per image word, tracking only the weight of the prefix
    cols = []
    for w in images:
        col: list[dict[int, int]] = [{} for _ in range(n)]
        e = 0
        for a in w.letters:
            i = abs(a)
            if a > 0:
                d = col[i - 1]
                d[e] = d.get(e, 0) + 1
                e += weights[i - 1]
            else:
                e -= weights[i - 1]
                d = col[i - 1]
                d[e] = d.get(e, 0) - 1
        cols.append([Laurent(d) for d in col])
    return LaurentMatrix([[cols[j][i] for j in range(len(cols))] for i in range(n)])


def burau(beta: BraidWord) -> LaurentMatrix:
    """Unreduced Burau matrix from Fox derivatives of h_beta(x_j)."""
    return _fox_columns(action_x(beta), beta.n, (1,) * beta.n)


def burau_by_generators(beta: BraidWord) -> LaurentMatrix:
    """Same matrix as a product of generator matrices (independent route)."""
    n = beta.n
    out = LaurentMatrix.identity(n)
    T = Laurent.monomial(1)
    for a in beta.letters:
        i = abs(a) - 1
        g = LaurentMatrix.identity(n)
        if a > 0:
            block = [[1 - T, 1], [T, 0]]
        else:
            Ti = Laurent.monomial(-1)
            block = [[0, Ti], [1, 1 - Ti]]
        for r in range(2):
            for c in range(2):
                g.rows[i + r][i + c] = _lift(block[r][c])
        out = g @ out
    return out


def reduced_burau(beta: BraidWord) -> LaurentMatrix:
    """(n-1)x(n-1) reduced Burau matrix from Fox calculus in the g-alphabet."""
    n = beta.n
    if n < 2:
        raise ValueError("reduced Burau needs n >= 2")
    full = _fox_columns(action_g(beta)[: n - 1], n, tuple(range(1, n + 1)))
    return LaurentMatrix([row for row in full.rows[: n - 1]])


def theta(m) -> LaurentMatrix:
    """Recover the classical matrix from a symbolic L2 operator matrix.

    Each group element g is sent to T^psi(g); the t-grading of the operator
    cancels against the T^psi substitution.  Because burau() stores columns
    as images, no transpose is needed to land on burau(beta).
    """
    psi = m.oracle.weight
    rows = []
    for row in m.entries:
        out_row = []
        for a in row:
            d: dict[int, int] = {}
            for w, c in a.terms.items():
                e = psi(w)
                d[e] = d.get(e, 0) + c
            out_row.append(Laurent(d))
        rows.append(out_row)
    return LaurentMatrix(rows)
