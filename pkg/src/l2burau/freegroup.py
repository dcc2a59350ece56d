"""Words in free groups, integer group rings and Fox derivatives.

A letter is a nonzero int: ``+i`` is the i-th generator and ``-i`` its
inverse (generators are 1-based).  Reduced words are hash-consed nodes of
the Cayley tree of the free group, so two words are equal iff they are the
same object, and appending a letter to a word costs O(1).
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from numbers import Number

__all__ = [
    "Word",
    "IDENTITY",
    "reduce",
    "word",
    "parse_word",
    "format_word",
    "GroupRingElt",
    "fox_derivative",
    "fox_gradient",
    "rewrite_alphabet",
    "g_images",
    "x_images_in_g",
]


class Word:
    """A freely reduced word, interned in a global prefix tree."""

    __slots__ = ("parent", "last", "length", "_children", "_letters", "_inverse")

    def __init__(self, parent: Word | None, last: int):
        self.parent = parent
        self.last = last
        self.length = 0 if parent is None else parent.length + 1
        self._children: dict[int, Word] = {}
        self._letters: tuple[int, ...] | None = () if parent is None else None
        self._inverse: Word | None = None

    def append(self, letter: int) -> Word:
        """Right-multiply by one letter, cancelling if needed."""
        if self.length and letter == -self.last:
            return self.parent
        child = self._children.get(letter)
        if child is None:
            if letter == 0:
                raise ValueError("generator index must be nonzero")
            child = self._children.setdefault(letter, Word(self, letter))
        return child

    def extend(self, letters: Iterable[int]) -> Word:
        node = self
        for a in letters:
            node = node.append(a)
        return node

    @property
    def letters(self) -> tuple[int, ...]:
        if self._letters is None:
            out = []
            node = self
            while node.parent is not None:
                out.append(node.last)
                node = node.parent
            out.reverse()
            self._letters = tuple(out)
        return self._letters

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return self.extend(other.letters)

    def inverse(self) -> Word:
        if self._inverse is None:
            inv = IDENTITY.extend(-a for a in reversed(self.letters))
            self._inverse = inv
            inv._inverse = self
        return self._inverse

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self.length == 0

    def sort_key(self) -> tuple:
        """Shortlex key: length first, then x1 < x1^-1 < x2 < ..."""
        return (self.length, tuple(2 * abs(a) - (a > 0) for a in self.letters))

    def __lt__(self, other: Word) -> bool:
        return self.sort_key() < other.sort_key()

    def max_generator(self) -> int:
        return max((abs(a) for a in self.letters), default=0)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)

    def __reduce__(self):
        return (word, (self.letters,))


IDENTITY = Word(None, 0)


def reduce(raw: Iterable[int]) -> Word:
    """Freely reduce a sequence of signed generator indices."""
    return IDENTITY.extend(raw)


def word(letters: Iterable[int] | str | Word = ()) -> Word:
    if isinstance(letters, Word):
        return letters
    if isinstance(letters, str):
        return parse_word(letters)
    return reduce(letters)


_TOKEN = re.compile(r"^(-)?([A-Za-z]*)(\d*)(?:\^(-?\d+))?$")


def parse_word(text: str, names: Sequence[str] | None = None) -> Word:
    """Parse ``"x1 x2^-1 x1"``, ``"1 -2 1"`` or named letters like ``"a b^-2"``.

    ``names`` maps single-symbol generator names to indices 1, 2, ...; an
    empty string or ``"e"`` is the identity.
    """
    letters: list[int] = []
    for found in re.finditer(r"[^\s,]+", text):
        tok, col = found.group(), found.start() + 1
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse letter {tok!r} at column {col}")
        neg, sym, digits, power = m.groups()
        if names is not None and sym + digits in names:
            idx = names.index(sym + digits) + 1
        elif digits:
            idx = int(digits)
        elif sym == "e" and not neg and power is None:
            continue
        else:
            raise ValueError(f"unknown generator {tok!r} at column {col}")
        if idx < 1:
            raise ValueError(f"generator index must be >= 1 in {tok!r}")
        k = int(power) if power is not None else 1
        if neg:
            k = -k
        letters.extend([idx if k > 0 else -idx] * abs(k))
    return reduce(letters)


def format_word(w: Word, symbol: str = "x", names: Sequence[str] | None = None) -> str:
    if w.length == 0:
        return "e"
    parts = []
    for a in w.letters:
        name = names[abs(a) - 1] if names is not None else f"{symbol}{abs(a)}"
        parts.append(name if a > 0 else name + "^-1")
    return " ".join(parts)


class GroupRingElt:
    """A finite formal sum of group elements with nonzero coefficients.

    ``group`` supplies ``multiply(u, v)`` for the target group; ``None``
    means the free group, where products are concatenation plus free
    reduction.  Coefficients are Python ints in symbolic use; the numerics
    reuse the same class with Fraction or float coefficients.

    Instances are treated as immutable once built.
    """

    __slots__ = ("terms", "group")

    def __init__(self, terms: Mapping[Word, Number] | None = None, group=None):
        self.terms: dict[Word, Number] = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[w] = c
        self.group = group

    @classmethod
    def _raw(cls, terms: dict, group) -> GroupRingElt:
        out = cls.__new__(cls)
        out.terms = terms
        out.group = group
        return out

    @classmethod
    def from_word(cls, w: Word, coeff: Number = 1, group=None) -> GroupRingElt:
        return cls._raw({w: coeff} if coeff else {}, group)

    @classmethod
    def one(cls, group=None) -> GroupRingElt:
        return cls._raw({IDENTITY: 1}, group)

    @classmethod
    def zero(cls, group=None) -> GroupRingElt:
        return cls._raw({}, group)

    def __add__(self, other) -> GroupRingElt:
        if isinstance(other, Number):
            other = GroupRingElt.from_word(IDENTITY, other, self.group)
        if not isinstance(other, GroupRingElt):
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, 0) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return GroupRingElt._raw(terms, self.group if self.group is not None else other.group)

    __radd__ = __add__

    def __neg__(self) -> GroupRingElt:
        return GroupRingElt._raw({w: -c for w, c in self.terms.items()}, self.group)

    def __sub__(self, other) -> GroupRingElt:
        if isinstance(other, Number):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other) -> GroupRingElt:
        return (-self) + other

    def scale(self, c: Number) -> GroupRingElt:
        if not c:
            return GroupRingElt.zero(self.group)
        return GroupRingElt._raw({w: c * v for w, v in self.terms.items()}, self.group)

    def __mul__(self, other) -> GroupRingElt:
        if isinstance(other, Number):
            return self.scale(other)
        if not isinstance(other, GroupRingElt):
            return NotImplemented
        group = self.group if self.group is not None else other.group
        terms: dict[Word, Number] = {}
        mul = (lambda u, v: u * v) if group is None else group.multiply
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = mul(u, v)
                s = terms.get(w, 0) + a * b
                if s:
                    terms[w] = s
                else:
                    del terms[w]
        return GroupRingElt._raw(terms, group)

    def __rmul__(self, other) -> GroupRingElt:
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = GroupRingElt.from_word(IDENTITY, other)
        if not isinstance(other, GroupRingElt):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, w: Word) -> Number:
        return self.terms.get(w, 0)

    def items(self) -> list[tuple[Word, Number]]:
        """Terms in shortlex order of their words."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list[Word]:
        return [w for w, _ in self.items()]

    def inverse_words(self) -> GroupRingElt:
        """The involution sum c_w w -> sum c_w w^-1."""
        if self.group is None:
            return GroupRingElt._raw({w.inverse(): c for w, c in self.terms.items()}, None)
        inv = self.group.inverse
        return GroupRingElt._raw({inv(w): c for w, c in self.terms.items()}, self.group)

    def map_words(self, f, group=None) -> GroupRingElt:
        """Apply a word map termwise and merge coefficients."""
        terms: dict[Word, Number] = {}
        for w, c in self.terms.items():
            v = f(w)
            s = terms.get(v, 0) + c
            if s:
                terms[v] = s
            else:
                del terms[v]
        return GroupRingElt._raw(terms, group)

    def format(self, symbol: str = "x", names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self.items():
            body = "" if w.length == 0 else format_word(w, symbol, names)
            if not body:
                txt = str(abs(c))
            elif abs(c) == 1:
                txt = body
            else:
                txt = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, txt))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, txt in pieces[1:]:
            out += f" {sign} {txt}"
        return out

    def __repr__(self) -> str:
        return f"GroupRingElt({self.format()!r})"


def fox_gradient(w: Word, n: int) -> list[GroupRingElt]:
    """All Fox derivatives of ``w`` with respect to x_1..x_n in one scan.

    Uses the prefix form d(w)/dx_i = sum over occurrences of x_i of the
    prefix before it, minus the prefix including it for each x_i^-1.
    """
    out: list[dict[Word, int]] = [{} for _ in range(n)]
    prefix = IDENTITY
    for a in w.letters:
        i = abs(a)
        if i > n:
            raise ValueError(f"letter x{i} outside alphabet of size {n}")
        if a > 0:
            key, c = prefix, 1
            prefix = prefix.append(a)
        else:
            prefix = prefix.append(a)
            key, c = prefix, -1
        d = out[i - 1]
        s = d.get(key, 0) + c
        if s:
            d[key] = s
        else:
            del d[key]
    return [GroupRingElt._raw(d, None) for d in out]


def fox_derivative(w: Word | GroupRingElt, i: int) -> GroupRingElt:
    """Fox derivative d/dx_i, extended linearly to group-ring elements."""
    if isinstance(w, GroupRingElt):
        total = GroupRingElt.zero()
        for u, c in w.terms.items():
            total = total + fox_derivative(u, i).scale(c)
        return total
    n = max(i, w.max_generator())
    return fox_gradient(w, n)[i - 1]


def rewrite_alphabet(w: Word, images: Sequence[Word]) -> Word:
    """Substitute letter k by ``images[k-1]`` (inverse for negative letters)."""
    node = IDENTITY
    for a in w.letters:
        img = images[abs(a) - 1]
        node = node * (img if a > 0 else img.inverse())
    return node


def g_images(n: int) -> list[Word]:
    """Words g_i = x_1 x_2 ... x_i in the x-alphabet."""
    out, node = [], IDENTITY
    for i in range(1, n + 1):
        node = node.append(i)
        out.append(node)
    return out


def x_images_in_g(n: int) -> list[Word]:
    """Words for x_1 = g_1 and x_i = g_{i-1}^-1 g_i in the g-alphabet."""
    return [reduce([1])] + [reduce([-(i - 1), i]) for i in range(2, n + 1)]
