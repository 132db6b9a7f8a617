"""Exact max-plus (tropical) scalars, matrices, permutations and digraphs.

Scalars live in the max-plus semiring: addition is ``max``, multiplication
is integer ``+``, and the additive identity is minus infinity.  Entries are
arbitrary-precision Python integers; minus infinity is the distinguished
value ``NEG_INF`` (``None``), never a sentinel integer, so no magnitude of
finite entry can alias it.

Conventions used throughout:

* matrices are square, stored row-major as tuples of tuples (0-based),
* every public method that *names* a position (``at``, ``restrict``,
  path queries, permutation images) speaks 1-based, matching the usual
  mathematical indexing for matrix semigroups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

NEG_INF = None

Trop = "int | None"


def tadd(x, y):
    """Tropical addition (max); NEG_INF is the neutral element."""
    if x is None:
        return y
    if y is None:
        return x
    return x if x >= y else y


def tmul(x, y):
    """Tropical multiplication (integer +); NEG_INF is absorbing."""
    if x is None or y is None:
        return None
    return x + y


def _check_entry(v):
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"matrix entries must be int or NEG_INF, got {v!r}")
    return v


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1, ..., n}; ``images[i-1]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def dim(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def cycle(n: int) -> "Permutation":
        """The n-cycle 1 -> 2 -> ... -> n -> 1."""
        return Permutation(tuple(i % n + 1 for i in range(1, n + 1)))

    def then(self, other: "Permutation") -> "Permutation":
        """Composition: apply ``self`` first, then ``other``."""
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return Permutation(tuple(other(self(i)) for i in range(1, self.dim + 1)))

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths, longest first."""
        seen = set()
        lengths = []
        for start in range(1, self.dim + 1):
            if start in seen:
                continue
            length = 0
            i = start
            while i not in seen:
                seen.add(i)
                i = self(i)
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def is_full_cycle(self) -> bool:
        return self.cycle_type() == (self.dim,)


@dataclass(frozen=True)
class TropMatrix:
    """An immutable square matrix over the max-plus semiring."""

    rows: tuple[tuple["int | None", ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise ValueError("empty matrix")
        for row in self.rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            for v in row:
                _check_entry(v)

    @staticmethod
    def from_rows(rows: Iterable[Iterable["int | None"]]) -> "TropMatrix":
        return TropMatrix(tuple(tuple(row) for row in rows))

    @staticmethod
    def identity(n: int) -> "TropMatrix":
        """Tropical identity: 0 on the diagonal, NEG_INF elsewhere."""
        return TropMatrix(
            tuple(tuple(0 if i == j else None for j in range(n)) for i in range(n))
        )

    @staticmethod
    def diag(values: Sequence[int]) -> "TropMatrix":
        vals = tuple(values)
        return TropMatrix(
            tuple(
                tuple(vals[i] if i == j else None for j in range(len(vals)))
                for i in range(len(vals))
            )
        )

    @staticmethod
    def from_permutation(perm: Permutation, weight: int = 0) -> "TropMatrix":
        """Matrix with ``weight`` at (i, perm(i)) and NEG_INF elsewhere."""
        n = perm.dim
        return TropMatrix(
            tuple(
                tuple(weight if perm(i + 1) == j + 1 else None for j in range(n))
                for i in range(n)
            )
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def at(self, i: int, j: int):
        """Entry at 1-based position (i, j)."""
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexError(f"position ({i}, {j}) out of range for dim {self.dim}")
        return self.rows[i - 1][j - 1]

    def __matmul__(self, other: "TropMatrix") -> "TropMatrix":
        if not isinstance(other, TropMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        n = self.dim
        brows = other.rows
        out = []
        for arow in self.rows:
            row = []
            for j in range(n):
                best = None
                for k in range(n):
                    x = arow[k]
                    if x is None:
                        continue
                    y = brows[k][j]
                    if y is None:
                        continue
                    s = x + y
                    if best is None or s > best:
                        best = s
                row.append(best)
            out.append(tuple(row))
        return TropMatrix(tuple(out))

    def pow(self, k: int) -> "TropMatrix":
        """Semigroup power A^k, k >= 1, by repeated squaring."""
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"exponent must be a positive integer, got {k!r}")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def is_upper_triangular(self) -> bool:
        return all(
            self.rows[i][j] is None
            for i in range(self.dim)
            for j in range(i)
        )

    def is_diagonal(self) -> bool:
        return all(
            self.rows[i][j] is None
            for i in range(self.dim)
            for j in range(self.dim)
            if i != j
        )

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.dim))

    def is_scaled_identity(self) -> bool:
        """Tropical scaling of the identity: constant finite diagonal, NEG_INF off it."""
        d = self.diagonal()
        return self.is_diagonal() and d[0] is not None and all(v == d[0] for v in d)

    def underlying_permutation(self) -> "Permutation | None":
        """The permutation carried by the finite-entry pattern, if any.

        Exists exactly when every row has a single finite entry and the
        resulting map on column indices is a bijection; this characterises
        invertibility in the max-plus monoid.
        """
        images = []
        for row in self.rows:
            cols = [j + 1 for j, v in enumerate(row) if v is not None]
            if len(cols) != 1:
                return None
            images.append(cols[0])
        if len(set(images)) != self.dim:
            return None
        return Permutation(tuple(images))

    def is_invertible(self) -> bool:
        return self.underlying_permutation() is not None

    def restrict(self, nodes: Sequence[int]) -> "TropMatrix":
        """Principal submatrix on the 1-based index set ``nodes``.

        ``nodes`` must be strictly increasing; entry (p, q) of the result is
        entry (nodes[p-1], nodes[q-1]) of the original, so callers keep the
        original labels by keeping ``nodes``.
        """
        nodes = tuple(nodes)
        if not nodes:
            raise ValueError("empty node set")
        if list(nodes) != sorted(set(nodes)) or nodes[0] < 1 or nodes[-1] > self.dim:
            raise ValueError(f"nodes must be strictly increasing within 1..{self.dim}")
        return TropMatrix(
            tuple(tuple(self.rows[i - 1][j - 1] for j in nodes) for i in nodes)
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [
                ["-inf" if v is None else v for v in row] for row in self.rows
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "TropMatrix":
        entries = obj["entries"]
        if len(entries) != obj["dim"]:
            raise ValueError("dim does not match entry rows")
        rows = []
        for row in entries:
            out = []
            for v in row:
                if v == "-inf":
                    out.append(None)
                elif isinstance(v, int) and not isinstance(v, bool):
                    out.append(v)
                else:
                    raise ValueError(f"bad matrix entry {v!r}")
            rows.append(tuple(out))
        return TropMatrix(tuple(rows))

    def __str__(self) -> str:
        cells = [["-inf" if v is None else str(v) for v in row] for row in self.rows]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


@dataclass(frozen=True)
class Edge:
    """A labelled weighted edge; nodes are 1-based, weight is finite."""

    src: int
    dst: int
    label: str
    weight: int


class CompoundDigraph:
    """The labelled digraph of a matrix pair (A, B) on nodes 1..n.

    A finite entry A[i][j] contributes an edge i -> j labelled "a" with that
    weight, and B likewise with label "b".  The weight of a path is the sum
    of its edge weights; a word w over {a, b} labels a path when the r-th
    edge carries label w[r].  Maximum path weights reproduce matrix products:
    the (i, j) entry of w(A, B) is the maximum weight of a w-labelled path
    from i to j.

    Path length counts edges with multiplicity; the simple length counts
    only non-loop edges.
    """

    def __init__(self, dim: int, edges: Iterable[Edge]):
        self.dim = dim
        self.edges = tuple(edges)
        by_label: dict[str, list[Edge]] = {}
        for e in self.edges:
            if not (1 <= e.src <= dim and 1 <= e.dst <= dim):
                raise ValueError(f"edge {e} out of range")
            by_label.setdefault(e.label, []).append(e)
        self._by_label = {k: tuple(v) for k, v in by_label.items()}

    @staticmethod
    def from_matrices(a: TropMatrix, b: TropMatrix) -> "CompoundDigraph":
        if a.dim != b.dim:
            raise ValueError("dimension mismatch")
        edges = []
        for label, m in (("a", a), ("b", b)):
            for i in range(m.dim):
                for j in range(m.dim):
                    v = m.rows[i][j]
                    if v is not None:
                        edges.append(Edge(i + 1, j + 1, label, v))
        return CompoundDigraph(a.dim, edges)

    def max_weight_labeled_path(self, word: str, i: int, j: int):
        """Maximum weight of a ``word``-labelled path i -> j, or NEG_INF.

        Dynamic programme over word positions; independent of the matrix
        product routine (it only walks edge lists).
        """
        if not word:
            raise ValueError("empty word")
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise ValueError("node out of range")
        best = {i: 0}
        for ch in word:
            nxt: dict[int, int] = {}
            for e in self._by_label.get(ch, ()):
                w0 = best.get(e.src)
                if w0 is None:
                    continue
                cand = w0 + e.weight
                cur = nxt.get(e.dst)
                if cur is None or cand > cur:
                    nxt[e.dst] = cand
            if not nxt:
                return None
            best = nxt
        return best.get(j)

    def word_values(self, word: str) -> TropMatrix:
        """All max path weights for ``word`` at once, one DP per start node."""
        rows = []
        for i in range(1, self.dim + 1):
            best = {i: 0}
            for ch in word:
                nxt: dict[int, int] = {}
                for e in self._by_label.get(ch, ()):
                    w0 = best.get(e.src)
                    if w0 is None:
                        continue
                    cand = w0 + e.weight
                    cur = nxt.get(e.dst)
                    if cur is None or cand > cur:
                        nxt[e.dst] = cand
                best = nxt
                if not best:
                    break
            rows.append([best.get(j) for j in range(1, self.dim + 1)])
        return TropMatrix.from_rows(rows)


def longest_loopless_path_length(m: TropMatrix) -> int:
    """Longest path (edge count) in the digraph of ``m`` ignoring loops.

    Raises ValueError if the loopless digraph has a cycle, in which case no
    finite maximum exists.
    """
    n = m.dim
    adj = [
        [j for j in range(n) if j != i and m.rows[i][j] is not None]
        for i in range(n)
    ]
    memo: dict[int, int] = {}
    onstack: set[int] = set()

    def go(i: int) -> int:
        if i in memo:
            return memo[i]
        if i in onstack:
            raise ValueError("loopless digraph contains a cycle")
        onstack.add(i)
        best = 0
        for j in adj[i]:
            best = max(best, 1 + go(j))
        onstack.discard(i)
        memo[i] = best
        return best

    return max(go(i) for i in range(n)) if n else 0
