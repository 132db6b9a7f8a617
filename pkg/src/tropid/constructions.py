"""Separating identities and witnesses for max-plus matrix semigroups.

Two families are built here.  Upper-triangular separations pair an identity
satisfied in dimension n with a witness assignment in dimension n + 1 on
which the two sides evaluate differently; the witness always comes from
``factor_witness``, which turns any word w into a diagonal/superdiagonal
matrix pair whose products read off, in the top-right corner, whether w
occurs as a factor.  Full-matrix separations compose identities of smaller
full and triangular semigroups into identities of M_n; the prime
construction chains those into a single identity separating M_{p-1} from
M_p for prime p, with exactly evaluated per-level diagnostics.

Words here grow fast: the composed identities are held as compressed
expressions (see words.py) and are only ever evaluated, never expanded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .tropical import NEG_INF, Permutation, TropMatrix
from .words import (
    Identity,
    Lit,
    PreconditionFailed,
    Subst,
    WordExpr,
    as_expr,
    cat,
    check_word,
    evaluate,
    expand,
    first_difference,
    has_run,
    letter_count,
    missing_factors,
    power,
    substitute,
)


def lcm_upto(n: int) -> int:
    """Least common multiple of 1..n."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.lcm(*range(1, n + 1))


def _matmul(x: TropMatrix, y: TropMatrix) -> TropMatrix:
    return x @ y


# ---------------------------------------------------------------------------
# factor witnesses


@dataclass(frozen=True)
class FactorWitness:
    """Matrices (A, B) in UT_{n+1} that detect the word w as a factor.

    With params c_1..c_{n+1} (c_1 = 0, then -1 per a and +1 per b of w),
    A = diag(c) and B carries -c_1 and -c_{n+1} at the diagonal corners and
    0 on the superdiagonal.  For any word t, the corner entry
    t(AB, BA)[1, n+1] is at most w(AB, BA)[1, n+1], with equality exactly
    when w occurs in t as a factor.
    """

    word: str
    params: tuple[int, ...]
    a: TropMatrix
    b: TropMatrix

    @property
    def dim(self) -> int:
        return len(self.params)

    def assignment(self) -> dict[str, TropMatrix]:
        return {"a": self.a, "b": self.b}

    def product_pair(self) -> tuple[TropMatrix, TropMatrix]:
        return self.a @ self.b, self.b @ self.a

    def corner(self) -> tuple[int, int]:
        """1-based position of the detecting entry."""
        return 1, self.dim

    def corner_value(self, t: str | WordExpr):
        """t(AB, BA) at the corner; the factor-detecting functional."""
        ab, ba = self.product_pair()
        m = evaluate(as_expr(t), {"a": ab, "b": ba}, _matmul)
        return m.at(1, self.dim)


def factor_witness(w: str) -> FactorWitness:
    check_word(w)
    c = [0]
    for ch in w:
        c.append(c[-1] - 1 if ch == "a" else c[-1] + 1)
    n = len(w)
    a = TropMatrix.diag(c)
    rows = [[NEG_INF] * (n + 1) for _ in range(n + 1)]
    rows[0][0] = -c[0]
    rows[n][n] = -c[n]
    for k in range(n):
        rows[k][k + 1] = 0
    b = TropMatrix.from_rows(rows)
    return FactorWitness(w, tuple(c), a, b)


# ---------------------------------------------------------------------------
# identities of UT_n from covering words


def covering_word_identity(w: str, n: int) -> Identity:
    """The identity (waw)[ab, ba] = (wbw)[ab, ba], valid in UT_n(T).

    Requires w to contain every word of length n - 1 as a factor and both
    waw and wbw to avoid n consecutive equal letters.
    """
    check_word(w)
    if n < 2:
        raise ValueError("n must be at least 2")
    missing = missing_factors(w, n - 1)
    if missing:
        raise PreconditionFailed(
            f"missing length-{n - 1} factors: {', '.join(missing)}"
        )
    for middle in "ab":
        word = w + middle + w
        for letter in "ab":
            if has_run(word, letter, n):
                raise PreconditionFailed(
                    f"w{middle}w contains the run {letter * n}"
                )
    shared_w = Lit(w)
    ia, ib = Lit("ab"), Lit("ba")
    lhs = Subst(cat(shared_w, "a", shared_w), ia, ib)
    rhs = Subst(cat(shared_w, "b", shared_w), ia, ib)
    return Identity(lhs, rhs)


# ---------------------------------------------------------------------------
# the upper-triangular separating chain


@dataclass(frozen=True)
class SeparatingPair:
    """An identity of UT_n together with a witness falsifying it in UT_{n+1}.

    ``inner`` holds the pre-substitution word pair (u, v) when the identity
    has the shape u[ab, ba] = v[ab, ba]; the separating word is then a
    factor of u but of no longer factor of v, which is what the witness
    detects at its corner entry.
    """

    n: int
    identity: Identity
    witness: dict[str, TropMatrix]
    separating_word: "str | None"
    inner: "tuple[str, str] | None"


def _tilde_word(n: int) -> str:
    if n % 2 == 0:
        return "b" + "ab" * ((n - 2) // 2)
    return "ba" * ((n - 1) // 2)


def _strip(w: str, prefix: str, suffix: str) -> str:
    if w.startswith(prefix):
        w = w[len(prefix):]
    if w.endswith(suffix):
        w = w[: -len(suffix)]
    return w


def chain_word(n: int) -> str:
    """The covering word whose identity separates UT_n from UT_{n+1}, n >= 4.

    Concatenates one block per word of length n - 1 (in lexicographic
    order); each block restores its word as a factor while keeping every
    run of equal letters shorter than n.
    """
    if n < 4:
        raise ValueError("chain_word is defined for n >= 4")
    tilde = _tilde_word(n)
    from .words import all_words

    blocks = []
    if n % 2 == 0:
        for w in all_words(n - 1):
            core = _strip(w, "bb", "aa")
            blocks.append("bb" + core + "aa")
        return tilde + "ba" + "".join(blocks) + "bba"
    for w in all_words(n - 1):
        core = _strip(w, "bb", "bb")
        blocks.append("bb" + core + "bb" + "a")
    return tilde + "".join(blocks)


def ut_separating_pair(n: int) -> SeparatingPair:
    """An identity of UT_n(T) falsified in UT_{n+1}(T) by the witness."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        # UT_1 is commutative; any non-commuting pair in UT_2 works.
        a = TropMatrix.from_rows([[0, 0], [NEG_INF, 0]])
        b = TropMatrix.diag([0, 1])
        return SeparatingPair(
            1, Identity(Lit("ab"), Lit("ba")), {"a": a, "b": b}, None, None
        )
    if n == 2:
        u, v = "abaab", "abbab"
        sep = "aa"
    elif n == 3:
        w = "abbaab"
        u, v = w + "b" + w, w + "a" + w
        sep = "bab"
    else:
        wbar = chain_word(n)
        identity = covering_word_identity(wbar, n)
        sep = "a" + _tilde_word(n)
        return SeparatingPair(
            n,
            identity,
            factor_witness(sep).assignment(),
            sep,
            (wbar + "a" + wbar, wbar + "b" + wbar),
        )
    ia, ib = Lit("ab"), Lit("ba")
    identity = Identity(Subst(Lit(u), ia, ib), Subst(Lit(v), ia, ib))
    return SeparatingPair(n, identity, factor_witness(sep).assignment(), sep, (u, v))


# ---------------------------------------------------------------------------
# composed identities of the full matrix semigroup


class ExponentBoundError(ValueError):
    pass


def _require_distinct(x: WordExpr, y: WordExpr, what: str):
    if first_difference(x, y) is None:
        raise ValueError(f"{what} must be distinct words")


def _images(n: int):
    nbar = lcm_upto(n)
    return power(Lit("a"), nbar), power(Lit("b"), nbar)


def full_matrix_identity_i(u, v, q, r, t: int, n: int, allow_short_exponent=False):
    """Compose <ua, va>[(qr)^t[a^m, b^m], (qr)^t r[a^m, b^m]], m = lcm(1..n).

    When u = v holds in M_{n-1} and q = r holds in UT_n, the result holds in
    M_n provided t >= (n-1)^2 + 1; the bound may only be waived explicitly.
    """
    u, v, q, r = map(as_expr, (u, v, q, r))
    if n < 2:
        raise ValueError("n must be at least 2")
    bound = (n - 1) ** 2 + 1
    if t < bound and not allow_short_exponent:
        raise ExponentBoundError(f"t = {t} is below the bound {bound}")
    if t < 1:
        raise ValueError("t must be positive")
    _require_distinct(q, r, "q and r")
    ia, ib = _images(n)
    x = Subst(power(cat(q, r), t), ia, ib)
    y = cat(x, Subst(r, ia, ib))
    lhs = Subst(cat(u, "a"), x, y)
    rhs = Subst(cat(v, "a"), x, y)
    return Identity(lhs, rhs)


def full_matrix_identity_ii(
    u, v, p, q, r, t: "int | None", n: int, allow_short_exponent=False
):
    """Compose <ua, va>[wqp[a^m, b^m], wrp[a^m, b^m]] with w = (pqprp)^t.

    Omitting t (exponent 1) is allowed only with ``allow_short_exponent``,
    matching the observation that the bound is not needed when p itself
    already encodes an identity of UT_n.
    """
    u, v, p, q, r = map(as_expr, (u, v, p, q, r))
    if n < 2:
        raise ValueError("n must be at least 2")
    bound = (n - 1) ** 2 + 1
    if t is None:
        if not allow_short_exponent:
            raise ExponentBoundError(
                "omitting t requires allow_short_exponent=True"
            )
        t = 1
    elif t < bound and not allow_short_exponent:
        raise ExponentBoundError(f"t = {t} is below the bound {bound}")
    if t < 1:
        raise ValueError("t must be positive")
    _require_distinct(q, r, "q and r")
    ia, ib = _images(n)
    w = power(cat(p, q, p, r, p), t)
    x = Subst(cat(w, q, p), ia, ib)
    y = Subst(cat(w, r, p), ia, ib)
    lhs = Subst(cat(u, "a"), x, y)
    rhs = Subst(cat(v, "a"), x, y)
    return Identity(lhs, rhs)


def m3_identity() -> Identity:
    """An identity of M_3(T), of expanded side length 5832."""
    u = "aa" + "bbb" + "aaa" + "b" + "a" + "b" + "a" + "bbb" + "aa"
    v = "aa" + "bbb" + "a" + "b" + "a" + "b" + "aaa" + "bbb" + "aa"
    p = substitute("abbaab", "ab", "ba")
    return full_matrix_identity_ii(
        u, v, p, "ab", "ba", t=None, n=3, allow_short_exponent=True
    )


def m4_witness() -> dict[str, TropMatrix]:
    """The assignment in M_4(T) on which the M_3 identity fails."""
    x = TropMatrix.from_rows(
        [
            [2, NEG_INF, NEG_INF, NEG_INF],
            [NEG_INF, 4, NEG_INF, NEG_INF],
            [3, NEG_INF, NEG_INF, NEG_INF],
            [NEG_INF, NEG_INF, 4, 0],
        ]
    )
    y = TropMatrix.from_rows(
        [
            [NEG_INF, 0, NEG_INF, NEG_INF],
            [NEG_INF, NEG_INF, 1, NEG_INF],
            [NEG_INF, NEG_INF, NEG_INF, 1],
            [1, NEG_INF, NEG_INF, NEG_INF],
        ]
    )
    return {"a": x, "b": y}


def m2_falsifier_pair() -> Identity:
    """An identity of M_2(T) that fails in every odd dimension >= 3.

    For invertible A and B the two sides agree exactly when A^2 B^2 and
    B^2 A^2 commute, by cancelling the common prefix and suffix a^2 b^4 a^2.
    """
    s = Lit("aabbbbaa")
    return Identity(cat(s, "aabb", s), cat(s, "bbaa", s))


def commuting_falsifier(n: int) -> dict[str, TropMatrix]:
    """A cycle/diagonal pair in M_n falsifying m2_falsifier_pair for odd n."""
    a = TropMatrix.from_permutation(Permutation.cycle(n))
    b = TropMatrix.diag([0] * (n - 1) + [1])
    return {"a": a, "b": b}


# ---------------------------------------------------------------------------
# nested composition


@dataclass(frozen=True)
class NestedLevels:
    """Levels for the nested identity: for k = 3..n an identity q_k = r_k
    satisfied by UT_k and an exponent t_k >= (k-1)^2 + 1."""

    n: int
    identities: tuple[Identity, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be at least 3")
        count = self.n - 2
        if len(self.identities) != count or len(self.exponents) != count:
            raise ValueError(f"need identities and exponents for k = 3..{self.n}")
        for k, t in zip(range(3, self.n + 1), self.exponents):
            if t < (k - 1) ** 2 + 1:
                raise ExponentBoundError(
                    f"t_{k} = {t} is below the bound {(k - 1) ** 2 + 1}"
                )

    def level(self, k: int) -> tuple[Identity, int]:
        return self.identities[k - 3], self.exponents[k - 3]


def nested_words(levels: NestedLevels) -> dict[str, dict[int, WordExpr]]:
    """The word families A_k, B_k of the nested construction.

    A_n = a and B_n = b; descending, A_{k-1} = (q_k r_k)^{t_k} with every a
    replaced by A_k^{lcm(1..k)} and every b by B_k^{lcm(1..k)}, and B_{k-1}
    is A_{k-1} followed by r_k under the same replacement.
    """
    n = levels.n
    a: dict[int, WordExpr] = {n: Lit("a")}
    b: dict[int, WordExpr] = {n: Lit("b")}
    for k in range(n, 2, -1):
        ident, t = levels.level(k)
        kbar = lcm_upto(k)
        ia = power(a[k], kbar)
        ib = power(b[k], kbar)
        a[k - 1] = Subst(power(cat(ident.lhs, ident.rhs), t), ia, ib)
        b[k - 1] = cat(a[k - 1], Subst(ident.rhs, ia, ib))
    return {"a": a, "b": b}


def nested_identity(levels: NestedLevels, u2, v2) -> Identity:
    """Compose an identity of M_2 up through the levels into one of M_n."""
    u2, v2 = as_expr(u2), as_expr(v2)
    fam = nested_words(levels)
    a, b = fam["a"], fam["b"]
    tail = [a[k] for k in range(2, levels.n)]
    lhs = cat(Subst(u2, a[2], b[2]), *tail)
    rhs = cat(Subst(v2, a[2], b[2]), *tail)
    return Identity(lhs, rhs)


# ---------------------------------------------------------------------------
# prime separation


@dataclass(frozen=True)
class LevelDiagnostic:
    """Exact evaluation of one nesting level at the witness."""

    k: int
    a_value: TropMatrix
    b_value: TropMatrix
    full_cycle: bool
    diagonal_distinct: bool
    appended_a: int
    variant: str

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "a": self.a_value.to_json(),
            "b": self.b_value.to_json(),
            "full_cycle": self.full_cycle,
            "diagonal_distinct": self.diagonal_distinct,
            "appended_a": self.appended_a,
            "variant": self.variant,
        }


@dataclass(frozen=True)
class PrimeSeparation:
    p: int
    identity: Identity
    witness: dict[str, TropMatrix]
    diagnostics: tuple[LevelDiagnostic, ...]
    level_identities: tuple[Identity, ...] = ()

    def diagnostics_json(self) -> list:
        return [d.to_json() for d in self.diagnostics]


class RepairCapExceeded(Exception):
    def __init__(self, k, cap):
        super().__init__(
            f"level {k}: no diagonal-separating identity among {cap} candidates"
        )
        self.k = k
        self.cap = cap


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _diag_distinct(m: TropMatrix) -> bool:
    d = m.diagonal()
    return (
        m.is_diagonal()
        and all(v is not None for v in d)
        and len(set(d)) == m.dim
    )


def _full_cycle(m: TropMatrix) -> bool:
    perm = m.underlying_permutation()
    return perm is not None and perm.is_full_cycle()


def prime_witness(p: int) -> dict[str, TropMatrix]:
    """The zero-weight p-cycle and the diagonal (0, 1, ..., p-1)."""
    return {
        "a": TropMatrix.from_permutation(Permutation.cycle(p)),
        "b": TropMatrix.diag(list(range(p))),
    }


def _level_identity_candidates(base: Identity, p: int):
    """Candidate level identities derived from a separating pair.

    Every candidate is still satisfied by the same triangular matrices as
    the base pair: whenever u and v evaluate to a common value P, both
    sides of (u m v, v m u) evaluate to P * m(..) * P for any spacer word
    m over the alphabet.  A power of a is appended so that the a-count of
    each side is congruent to -1 mod p; the append is at least one letter
    so the pair never degenerates.

    Appending a common suffix to both sides cannot fix a repeated diagonal
    on the next level: with the level exponent t, a suffix letter recurs at
    2t + 1 = p^3 block boundaries whose cycle offsets sweep every residue
    class mod p equally often, so all diagonal entries shift by the same
    amount.  The candidates therefore vary the interior of the pair, which
    does move the entries independently.  They are ordered deterministically
    and tagged for the diagnostics: "plain", then "uv"/"vu" interleavings
    with growing one-letter spacer runs.
    """
    u, v = base.lhs, base.rhs

    def pad(e: WordExpr, count_a: int):
        j = (p - 1 - count_a) % p
        if j == 0:
            j = p
        return cat(e, Lit("a" * j)), j

    alpha = letter_count(u, "a")
    q, ja = pad(u, alpha)
    r, _ = pad(v, alpha)
    yield q, r, ja, "plain"
    s = 0
    while True:
        spacers = [(None, 0)] if s == 0 else [
            (Lit("a" * s), s), (Lit("b" * s), 0)
        ]
        for spacer, extra_a in spacers:
            for first, second, tag in ((u, v, "uv"), (v, u, "vu")):
                body = cat(first, spacer, second) if spacer else cat(first, second)
                flipped = cat(second, spacer, first) if spacer else cat(second, first)
                count_a = 2 * alpha + extra_a
                q, ja = pad(body, count_a)
                r, _ = pad(flipped, count_a)
                run = spacer.word if spacer else ""
                yield q, r, ja, f"{tag}+{run}" if run else tag
        s += 1


def prime_separation(p: int) -> PrimeSeparation:
    """An identity of M_{p-1}(T) falsified in M_p(T), for prime p.

    For p > 3 the nested composition is used with every level exponent
    (p^3 - 1) / 2.  Each level identity is derived from the triangular
    separating pair of that size, with the a-count of either side padded
    to -1 mod p; candidates from _level_identity_candidates are tried in
    order until the evaluated A-word is a full cycle and the evaluated
    B-word is a diagonal with pairwise distinct entries, which the next
    level needs.  Diagnostics record the evaluated matrices and both
    checks for every level from p-1 down to 2.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    witness = prime_witness(p)
    x, y = witness["a"], witness["b"]
    if p == 2:
        return PrimeSeparation(
            2,
            Identity(Lit("ab"), Lit("ba")),
            witness,
            (LevelDiagnostic(1, x, y, True, True, 0, "plain"),),
        )
    if p == 3:
        diag = LevelDiagnostic(
            2, x, y, _full_cycle(x), _diag_distinct(y), 0, "plain"
        )
        return PrimeSeparation(3, m2_falsifier_pair(), witness, (diag,))

    n = p - 1
    t = (p**3 - 1) // 2
    cap = 2 * p * p
    a: dict[int, WordExpr] = {n: Lit("a")}
    b: dict[int, WordExpr] = {n: Lit("b")}
    diagnostics = [
        LevelDiagnostic(n, x, y, _full_cycle(x), _diag_distinct(y), 0, "plain")
    ]
    used_identities = []
    for k in range(n, 2, -1):
        base = ut_separating_pair(k).identity
        kbar = lcm_upto(k)
        ia = power(a[k], kbar)
        ib = power(b[k], kbar)
        for attempt, (q_try, r_try, ja, tag) in enumerate(
            _level_identity_candidates(base, p)
        ):
            if attempt >= cap:
                raise RepairCapExceeded(k, cap)
            a_next = Subst(power(cat(q_try, r_try), t), ia, ib)
            b_next = cat(a_next, Subst(r_try, ia, ib))
            b_val = evaluate(b_next, witness, _matmul)
            if not _diag_distinct(b_val):
                continue
            a_val = evaluate(a_next, witness, _matmul)
            if _full_cycle(a_val):
                break
        diagnostics.append(
            LevelDiagnostic(k - 1, a_val, b_val, True, True, ja, tag)
        )
        a[k - 1], b[k - 1] = a_next, b_next
        used_identities.append(Identity(q_try, r_try))

    m2 = m2_falsifier_pair()
    tail = [a[k] for k in range(2, n)]
    lhs = cat(Subst(m2.lhs, a[2], b[2]), *tail)
    rhs = cat(Subst(m2.rhs, a[2], b[2]), *tail)
    lv, rv = evaluate(lhs, witness, _matmul), evaluate(rhs, witness, _matmul)
    if lv == rv:
        raise PreconditionFailed("witness failed to separate the composed sides")
    identity = Identity(lhs, rhs)
    return PrimeSeparation(
        p, identity, witness, tuple(diagnostics), tuple(used_identities)
    )
