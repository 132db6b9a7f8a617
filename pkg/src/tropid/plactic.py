"""Plactic monoid machinery over the alphabet {1, ..., n}.

Elements are kept in Schensted canonical form: a semistandard tableau whose
rows weakly increase and whose columns strictly increase away from the
insertion row (stored first).  Knuth rewriting provides an independent
brute-force oracle for equality of small elements.  The module also builds
the subset-indexed tropical representation and the two-variable identity
lift used to compare the rank-4 monoid with triangular matrix semigroups.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

from .constructions import FactorWitness, factor_witness
from .tropical import NEG_INF, TropMatrix
from .words import Identity, Lit, check_word, substitute

__all__ = [
    "Tableau",
    "schensted_insert",
    "from_word",
    "plactic_mul",
    "knuth_closure",
    "ClosureCapExceeded",
    "subset_leq",
    "order_interval",
    "interval_union",
    "subset_order",
    "rho_generator",
    "rho",
    "rho_identity_element",
    "plactic_identity_lift",
    "p4_ut5_separation",
]


def letters_of(w, n: int) -> tuple[int, ...]:
    """Normalize a word over [n] given as digits or an int sequence."""
    seq = tuple(int(c) for c in w)
    if not seq:
        raise ValueError("empty word")
    for x in seq:
        if not 1 <= x <= n:
            raise ValueError(f"letter {x} outside 1..{n}")
    return seq


@dataclass(frozen=True)
class Tableau:
    """Semistandard tableau; rows[0] is the insertion row."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not all(self.rows):
            raise ValueError("empty tableau")
        for row in self.rows:
            if any(row[i] > row[i + 1] for i in range(len(row) - 1)):
                raise ValueError("row not weakly increasing")
        for lower, upper in zip(self.rows, self.rows[1:]):
            if len(upper) > len(lower):
                raise ValueError("row lengths must weakly decrease upward")
            if any(upper[c] <= lower[c] for c in range(len(upper))):
                raise ValueError("column not strictly increasing")

    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def reading_word(self) -> tuple[int, ...]:
        out: list[int] = []
        for row in reversed(self.rows):
            out.extend(row)
        return tuple(out)

    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def __str__(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.rows)


def schensted_insert(t: Tableau | None, x: int) -> Tableau:
    """Row-insert x: bump the smallest strictly greater entry upward."""
    if t is None:
        return Tableau(((x,),))
    rows = [list(r) for r in t.rows]
    i = 0
    while i < len(rows):
        row = rows[i]
        j = bisect_right(row, x)
        if j == len(row):
            row.append(x)
            break
        x, row[j] = row[j], x
        i += 1
    else:
        rows.append([x])
    return Tableau(tuple(tuple(r) for r in rows))


def from_word(w, n: int = 4) -> Tableau:
    t = None
    for x in letters_of(w, n):
        t = schensted_insert(t, x)
    return t


def plactic_mul(s: Tableau, t: Tableau) -> Tableau:
    for x in t.reading_word():
        s = schensted_insert(s, x)
    return s


class ClosureCapExceeded(Exception):
    def __init__(self, length, cap):
        super().__init__(f"word of length {length} exceeds closure cap {cap}")
        self.length = length
        self.cap = cap


def _triple_moves(p: int, q: int, r: int):
    # yzx <-> yxz for x < y <= z, and xzy <-> zxy for x <= y < z
    if r < p <= q:
        yield p, r, q
    if q < p <= r:
        yield p, r, q
    if q <= r < p:
        yield q, p, r
    if p <= r < q:
        yield q, p, r


def knuth_closure(w, n: int = 4, cap: int = 8) -> frozenset[tuple[int, ...]]:
    """Every word reachable by Knuth moves; brute-force equality oracle."""
    word = letters_of(w, n)
    if len(word) > cap:
        raise ClosureCapExceeded(len(word), cap)
    seen = {word}
    frontier = [word]
    while frontier:
        grown: list[tuple[int, ...]] = []
        for u in frontier:
            for i in range(len(u) - 2):
                for triple in _triple_moves(*u[i : i + 3]):
                    v = u[:i] + triple + u[i + 3 :]
                    if v not in seen:
                        seen.add(v)
                        grown.append(v)
        frontier = grown
    return frozenset(seen)


# ---------------------------------------------------------------------------
# subset order and the tropical representation


def _as_subset(s) -> tuple[int, ...]:
    t = tuple(sorted(set(s)))
    if any(x < 1 for x in t):
        raise ValueError("subset elements must be positive")
    return t


def subset_leq(s, t) -> bool:
    """S <= T when |S| >= |T| and the i-th smallest elements compare."""
    a, b = _as_subset(s), _as_subset(t)
    if len(a) < len(b):
        return False
    return all(a[i] <= b[i] for i in range(len(b)))


@lru_cache(maxsize=None)
def _all_subsets(n: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for size in range(n + 1):
        out.extend(itertools.combinations(range(1, n + 1), size))
    return tuple(out)


def order_interval(p, q, n: int = 4) -> frozenset[tuple[int, ...]]:
    """All subsets of [n] between p and q in the subset order."""
    a, b = _as_subset(p), _as_subset(q)
    return frozenset(
        s for s in _all_subsets(n) if subset_leq(a, s) and subset_leq(s, b)
    )


def interval_union(p, q, n: int = 4) -> tuple[int, ...]:
    out: set[int] = set()
    for s in order_interval(p, q, n):
        out.update(s)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def subset_order(n: int) -> tuple[tuple[int, ...], ...]:
    """Row/column order: cardinality descending, then lexicographic.

    Within a cardinality class this linearly extends the subset order, so
    every representation image is upper triangular.
    """
    return tuple(sorted(_all_subsets(n), key=lambda s: (-len(s), s)))


@lru_cache(maxsize=None)
def rho_generator(x: int, n: int = 4) -> TropMatrix:
    if not 1 <= x <= n:
        raise ValueError(f"letter {x} outside 1..{n}")
    index = subset_order(n)
    rows = []
    for p in index:
        row = []
        for q in index:
            if len(p) != len(q) or not subset_leq(p, q):
                row.append(NEG_INF)
            elif x in interval_union(p, q, n):
                row.append(1)
            else:
                row.append(0)
        rows.append(row)
    return TropMatrix.from_rows(rows)


def rho(w, n: int = 4) -> TropMatrix:
    """Image of a word: the product of generator images."""
    out = None
    for x in letters_of(w, n):
        g = rho_generator(x, n)
        out = g if out is None else out @ g
    return out


@lru_cache(maxsize=None)
def rho_identity_element(n: int = 4) -> TropMatrix:
    index = subset_order(n)
    rows = [
        [
            0 if len(p) == len(q) and subset_leq(p, q) else NEG_INF
            for q in index
        ]
        for p in index
    ]
    return TropMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# the two-variable identity lift


def plactic_identity_lift(u: str, v: str) -> Identity:
    """Wrap a pair in ab ... ab and substitute a -> ab, b -> ba.

    When u[ab,ba] = v[ab,ba] holds for 4x4 triangular matrices, the lifted
    identity holds for the rank-4 monoid under every assignment of its
    elements to the two variables.
    """
    check_word(u)
    check_word(v)
    if u == v:
        raise ValueError("sides are equal")
    lhs = substitute("ab" + u + "ab", "ab", "ba")
    rhs = substitute("ab" + v + "ab", "ab", "ba")
    return Identity(Lit(lhs), Lit(rhs))


P4_CORE = "baaabbbaba"


def p4_ut5_separation() -> tuple[Identity, FactorWitness]:
    """An identity of the rank-4 monoid falsified by 5x5 triangular matrices.

    The inner pair surrounds the core word with a b (left side) or an a
    (right side); abab occurs as a factor of the wrapped left inner word
    only, so the abab factor witness separates the sides at entry (1, 5).
    """
    u = P4_CORE + "b" + P4_CORE
    v = P4_CORE + "a" + P4_CORE
    return plactic_identity_lift(u, v), factor_witness("abab")
