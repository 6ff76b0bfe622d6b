"""The Hoffman algebra H^1 = Q + e1 H with the harmonic (quasi-shuffle) product.

Words are tuples of letters 0 (for e0) and 1 (for e1).  The monomial
``e_k = e1 e0^(k-1)`` identifies an index (k1, ..., kr) with a word of H^1,
and all products here are computed on indices.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .padic import DomainError


class Word(tuple):
    """A word over {e0, e1}; letters are the integers 0 and 1."""

    def __new__(cls, letters=()):
        letters = tuple(letters)
        if any(x not in (0, 1) for x in letters):
            raise DomainError("letters must be 0 (e0) or 1 (e1)")
        return super().__new__(cls, letters)

    @property
    def in_h1(self) -> bool:
        return len(self) == 0 or self[0] == 1

    @property
    def in_h0(self) -> bool:
        return len(self) == 0 or (self[0] == 1 and self[-1] == 0)

    @classmethod
    def from_index(cls, index) -> Word:
        letters = []
        for k in index:
            if k < 1:
                raise DomainError("index entries must be positive")
            letters.append(1)
            letters.extend([0] * (k - 1))
        return cls(letters)

    def to_index(self) -> tuple[int, ...]:
        if not self.in_h1:
            raise DomainError(f"word {self.text()} is not in H^1")
        index = []
        for x in self:
            if x == 1:
                index.append(1)
            else:
                index[-1] += 1
        return tuple(index)

    def text(self) -> str:
        return "".join(f"e{x}" for x in self) or "1"

    def __repr__(self):
        return f"Word({self.text()})"


def index_word_convert(x):
    """Index -> Word, or Word -> Index."""
    if isinstance(x, Word):
        return x.to_index()
    return Word.from_index(tuple(x))


def format_index(index) -> str:
    return "(" + ",".join(str(k) for k in index) + ")"


@lru_cache(maxsize=None)
def _harmonic_indices(a: tuple, b: tuple) -> tuple:
    """Harmonic product of two indices as a sorted tuple of (index, coeff)."""
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    if b < a:
        return _harmonic_indices(b, a)
    k, v = a[0], a[1:]
    l, w = b[0], b[1:]
    out: dict = {}
    for head, pairs in (
        (k, _harmonic_indices(v, b)),
        (l, _harmonic_indices(a, w)),
        (k + l, _harmonic_indices(v, w)),
    ):
        for idx, c in pairs:
            key = (head,) + idx
            out[key] = out.get(key, 0) + c
    return tuple(sorted(out.items()))


class WordPoly:
    """Q-linear combination of words of H^1, keyed by index tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            if isinstance(key, Word):
                key = key.to_index()
            key = tuple(key)
            if any(k < 1 for k in key):
                raise DomainError("index entries must be positive")
            c = Fraction(c)
            if c:
                clean[key] = clean.get(key, 0) + c
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def index(cls, *parts) -> WordPoly:
        if len(parts) == 1 and isinstance(parts[0], (tuple, list)):
            parts = tuple(parts[0])
        return cls({tuple(parts): 1})

    @classmethod
    def word(cls, letters) -> WordPoly:
        w = Word(letters)
        if not w.in_h1:
            raise DomainError(f"word {w.text()} is not in H^1")
        return cls({w.to_index(): 1})

    @classmethod
    def one(cls) -> WordPoly:
        return cls({(): 1})

    def words(self) -> dict:
        return {Word.from_index(k): c for k, c in self.terms.items()}

    @property
    def weight(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return WordPoly(out)

    def __neg__(self):
        return WordPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, WordPoly):
            return harmonic_product(self, c)
        return WordPoly({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def append(self, k: int) -> WordPoly:
        """Right concatenation with e_k."""
        return WordPoly({idx + (k,): c for idx, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, WordPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            parts.append(format_index(idx) if c == 1 else f"{c} * {format_index(idx)}")
        return " + ".join(parts)

    __repr__ = __str__


def harmonic_product(v: WordPoly, w: WordPoly) -> WordPoly:
    out: dict = {}
    for a, ca in v.terms.items():
        for b, cb in w.terms.items():
            for idx, c in _harmonic_indices(a, b):
                out[idx] = out.get(idx, 0) + ca * cb * c
    return WordPoly(out)


def circled_harmonic(v: WordPoly, w: WordPoly) -> WordPoly:
    """(v' e_k) (*) (w' e_l) = (v' * w') e_{k+l}, on e1 H."""
    out: dict = {}
    for a, ca in v.terms.items():
        for b, cb in w.terms.items():
            if not a or not b:
                raise DomainError("the circled product is defined on e1 H only (nonempty words)")
            tail = (a[-1] + b[-1],)
            for idx, c in _harmonic_indices(a[:-1], b[:-1]):
                key = idx + tail
                out[key] = out.get(key, 0) + ca * cb * c
    return WordPoly(out)


def main1_word(i: int, j: int) -> WordPoly:
    """(e1^(i-1) * e1^(j-1)) e2, the index combination ({1}^{i-1} * {1}^{j-1}, 2)."""
    if i < 1 or j < 1:
        raise DomainError("i and j must be positive")
    return harmonic_product(WordPoly.index((1,) * (i - 1)), WordPoly.index((1,) * (j - 1))).append(2)


def compositions(weight: int):
    """All indices of the given weight."""
    if weight == 0:
        yield ()
        return
    for first in range(1, weight + 1):
        for rest in compositions(weight - first):
            yield (first,) + rest
