"""Words over {a, b}, compressed word expressions, and identities.

Explicit words are plain ``str``.  Long words (the nested constructions can
reach lengths beyond 10**9) are held as expression trees that are never
expanded: ``Lit`` (an explicit word), ``Concat``, ``Power`` (w^k, k >= 1)
and ``Subst`` (w[x, y]: the image of w under a -> x, b -> y).  Letter counts,
expanded length, indexed letter access and evaluation in any semigroup are
all computed homomorphically on the tree.

An ``Identity`` is a pair of expressions standing for the formal law
lhs = rhs.  Construction validates that both sides are balanced (equal
letter counts per letter, necessary for the law to hold already in 1x1
max-plus matrices) and that the sides are distinct words, certified either
by expansion (short words) or by a structure-aligned first-difference
search that never expands.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Mapping

ALPHABET = "ab"

DEFAULT_EXPAND_LIMIT = 100_000


class ExpansionTooLarge(Exception):
    """Raised when an expansion would exceed the caller's limit."""

    def __init__(self, length, limit):
        super().__init__(f"expanded length {length} exceeds limit {limit}")
        self.length = length
        self.limit = limit


class PreconditionFailed(Exception):
    """A construction's stated hypothesis does not hold for the input."""


# ---------------------------------------------------------------------------
# explicit word helpers


def check_word(w: str, alphabet: str = ALPHABET) -> str:
    if not w:
        raise ValueError("empty word")
    bad = set(w) - set(alphabet)
    if bad:
        raise ValueError(f"letters {sorted(bad)} outside alphabet {alphabet!r}")
    return w


def is_factor(u: str, v: str) -> bool:
    """True when u occurs in v as a contiguous block."""
    return u in v


def has_run(w: str, letter: str, n: int) -> bool:
    """True when ``letter`` occurs n times in a row somewhere in w."""
    return letter * n in w


def all_words(k: int, alphabet: str = ALPHABET):
    """All words of length k in lexicographic order of the alphabet."""
    if k == 0:
        yield ""
        return
    for prefix in all_words(k - 1, alphabet):
        for ch in alphabet:
            yield prefix + ch


def missing_factors(w: str, k: int, alphabet: str = ALPHABET) -> list[str]:
    return [u for u in all_words(k, alphabet) if u not in w]


def all_factors_present(w: str, k: int, alphabet: str = ALPHABET) -> bool:
    return not missing_factors(w, k, alphabet)


def substitute(w: str, x: str, y: str) -> str:
    """The image of w under the homomorphism a -> x, b -> y."""
    check_word(w)
    return "".join(x if ch == "a" else y for ch in w)


# ---------------------------------------------------------------------------
# compressed word expressions


class WordExpr:
    """Base class for word expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Lit(WordExpr):
    word: str

    def __post_init__(self):
        if not self.word:
            raise ValueError("empty literal")


@dataclass(frozen=True)
class Concat(WordExpr):
    parts: tuple[WordExpr, ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("Concat needs at least two parts")
        if not all(isinstance(p, WordExpr) for p in self.parts):
            raise TypeError("Concat parts must be WordExpr")


@dataclass(frozen=True)
class Power(WordExpr):
    base: WordExpr
    exp: int

    def __post_init__(self):
        if not isinstance(self.base, WordExpr):
            raise TypeError("Power base must be WordExpr")
        if not isinstance(self.exp, int) or self.exp < 1:
            raise ValueError(f"exponent must be a positive integer, got {self.exp!r}")


@dataclass(frozen=True)
class Subst(WordExpr):
    """target[x, y]: substitute x for a and y for b throughout target."""

    target: WordExpr
    image_a: WordExpr
    image_b: WordExpr

    def __post_init__(self):
        for f in (self.target, self.image_a, self.image_b):
            if not isinstance(f, WordExpr):
                raise TypeError("Subst fields must be WordExpr")
        extra = letters(self.target) - set(ALPHABET)
        if extra:
            raise ValueError(f"substitution target uses letters {sorted(extra)}")


def as_expr(w) -> WordExpr:
    if isinstance(w, WordExpr):
        return w
    if isinstance(w, str):
        return Lit(w)
    raise TypeError(f"expected word or expression, got {type(w).__name__}")


def cat(*parts) -> WordExpr:
    exprs = tuple(as_expr(p) for p in parts)
    return exprs[0] if len(exprs) == 1 else Concat(exprs)


def power(base, k: int) -> WordExpr:
    base = as_expr(base)
    return base if k == 1 else Power(base, k)


def _fold(node: WordExpr, lit, con, pow_, sub, memo=None):
    """Generic bottom-up fold with per-call memoisation on node identity."""
    if memo is None:
        memo = {}
    key = id(node)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(node, Lit):
        val = lit(node)
    elif isinstance(node, Concat):
        val = con(node, [_fold(p, lit, con, pow_, sub, memo) for p in node.parts])
    elif isinstance(node, Power):
        val = pow_(node, _fold(node.base, lit, con, pow_, sub, memo))
    elif isinstance(node, Subst):
        val = sub(
            node,
            _fold(node.target, lit, con, pow_, sub, memo),
            _fold(node.image_a, lit, con, pow_, sub, memo),
            _fold(node.image_b, lit, con, pow_, sub, memo),
        )
    else:
        raise TypeError(f"not a WordExpr: {node!r}")
    memo[key] = (node, val)
    return val


def letters(e: WordExpr) -> set[str]:
    return _fold(
        e,
        lambda n: set(n.word),
        lambda n, parts: set().union(*parts),
        lambda n, base: base,
        lambda n, t, ia, ib: (ia if "a" in t else set()) | (ib if "b" in t else set()),
    )


def expanded_length(e: WordExpr, memo=None) -> int:
    return _fold(
        e,
        lambda n: len(n.word),
        lambda n, parts: sum(parts),
        lambda n, base: n.exp * base,
        lambda n, t, ia, ib: _subst_count(n, ia, ib, length=True),
        memo,
    )


def letter_count(e: WordExpr, ch: str) -> int:
    """Occurrences of the letter ch in the expansion, without expanding."""
    return _fold(
        e,
        lambda n: n.word.count(ch),
        lambda n, parts: sum(parts),
        lambda n, base: n.exp * base,
        lambda n, t, ia, ib: letter_count(n.target, "a") * ia
        + letter_count(n.target, "b") * ib,
    )


def _subst_count(n: Subst, len_a: int, len_b: int, length: bool) -> int:
    return letter_count(n.target, "a") * len_a + letter_count(n.target, "b") * len_b


def letter_at(e: WordExpr, i: int) -> str:
    """Letter at 0-based position i of the expansion, by length descent."""
    total = expanded_length(e)
    if not (0 <= i < total):
        raise IndexError(f"position {i} out of range for length {total}")
    lengths: dict[int, tuple] = {}
    cache: dict[int, tuple] = {}
    node, pos = e, i
    while not isinstance(node, Lit):
        for _, child, count in _decompose(node, cache):
            child_len = expanded_length(child, lengths)
            seg = count * child_len
            if pos < seg:
                node, pos = child, pos % child_len
                break
            pos -= seg
        else:
            raise AssertionError("position not covered by decomposition")
    return node.word[pos]


def expand(e: WordExpr, limit: int = DEFAULT_EXPAND_LIMIT) -> str:
    """The explicit word, refusing to materialise anything over ``limit``."""
    n = expanded_length(e)
    if n > limit:
        raise ExpansionTooLarge(n, limit)
    return _fold(
        e,
        lambda node: node.word,
        lambda node, parts: "".join(parts),
        lambda node, base: base * node.exp,
        lambda node, t, ia, ib: "".join(ia if ch == "a" else ib for ch in t),
    )


def spower(value, k: int, mul):
    """value^k (k >= 1) under ``mul`` by repeated squaring."""
    if k < 1:
        raise ValueError("exponent must be positive")
    result = None
    base = value
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def evaluate(e: WordExpr, assign: Mapping[str, object], mul: Callable):
    """Evaluate in any semigroup: letters via ``assign``, product via ``mul``.

    Shared subtrees are evaluated once per substitution context, and powers
    use repeated squaring, so evaluation cost tracks the tree size rather
    than the expanded length.
    """
    return _evaluate_shared([e], assign, mul)[0]


def evaluate_many(exprs, assign, mul):
    return _evaluate_shared(list(exprs), assign, mul)


def _evaluate_shared(exprs, assign, mul):
    memo: dict[int, tuple] = {}

    def ev(node):
        hit = memo.get(id(node))
        if hit is not None:
            return hit[1]
        if isinstance(node, Lit):
            val = reduce(mul, (assign[ch] for ch in node.word))
        elif isinstance(node, Concat):
            val = reduce(mul, (ev(p) for p in node.parts))
        elif isinstance(node, Power):
            val = spower(ev(node.base), node.exp, mul)
        elif isinstance(node, Subst):
            inner = {"a": ev(node.image_a), "b": ev(node.image_b)}
            val = _evaluate_shared([node.target], inner, mul)[0]
        else:
            raise TypeError(f"not a WordExpr: {node!r}")
        memo[id(node)] = (node, val)
        return val

    return [ev(e) for e in exprs]


# ---------------------------------------------------------------------------
# first-difference search without expansion
#
# Both sides are decomposed lazily into queues of segments.  Identical
# segments (same node, by identity or structural equality) are skipped in
# one step using their expanded length, which keeps the search fast on the
# heavily shared trees produced by the constructors even when the first
# differing position is astronomically deep.

_LIT = 0
_EXPR = 1


class FirstDifferenceBudgetExceeded(Exception):
    pass


def _decompose(node, cache):
    hit = cache.get(id(node))
    if hit is not None:
        return hit[1]
    if isinstance(node, Concat):
        segs = [(_EXPR, p, 1) for p in node.parts]
    elif isinstance(node, Power):
        segs = [(_EXPR, node.base, node.exp)]
    elif isinstance(node, Subst):
        t = node.target
        if isinstance(t, Lit):
            segs = []
            for ch in t.word:
                img = node.image_a if ch == "a" else node.image_b
                if segs and segs[-1][1] is img:
                    segs[-1] = (_EXPR, img, segs[-1][2] + 1)
                else:
                    segs.append((_EXPR, img, 1))
        elif isinstance(t, Concat):
            segs = [
                (_EXPR, Subst(p, node.image_a, node.image_b), 1) for p in t.parts
            ]
        elif isinstance(t, Power):
            segs = [(_EXPR, Subst(t.base, node.image_a, node.image_b), t.exp)]
        elif isinstance(t, Subst):
            segs = [
                (
                    _EXPR,
                    Subst(
                        t.target,
                        Subst(t.image_a, node.image_a, node.image_b),
                        Subst(t.image_b, node.image_a, node.image_b),
                    ),
                    1,
                )
            ]
        else:
            raise TypeError(f"not a WordExpr: {t!r}")
    else:
        raise TypeError(f"cannot decompose {node!r}")
    cache[id(node)] = (node, segs)
    return segs


def first_difference(e1: WordExpr, e2: WordExpr, max_steps: int = 500_000):
    """First 0-based position where the expansions differ, or None if equal.

    When one expansion is a proper prefix of the other the length of the
    shorter one is returned.  Raises FirstDifferenceBudgetExceeded if the
    aligned scan cannot settle the question within ``max_steps`` segment
    operations (never hit by the constructions in this package).
    """
    lengths: dict[int, tuple] = {}
    cache: dict[int, tuple] = {}

    def nlen(node):
        return expanded_length(node, lengths)

    def push(dq, node, count):
        if count > 0:
            dq.appendleft((_EXPR, node, count))

    d1: deque = deque([(_EXPR, e1, 1)])
    d2: deque = deque([(_EXPR, e2, 1)])
    pos = 0
    for _ in range(max_steps):
        if not d1 and not d2:
            return None
        if not d1 or not d2:
            return pos
        h1, h2 = d1[0], d2[0]
        if h1[0] == _EXPR and h2[0] == _EXPR:
            n1, c1 = h1[1], h1[2]
            n2, c2 = h2[1], h2[2]
            if n1 is n2 or n1 == n2:
                m = min(c1, c2)
                pos += m * nlen(n1)
                d1.popleft()
                d2.popleft()
                push(d1, n1, c1 - m)
                push(d2, n2, c2 - m)
                continue
            # decompose the left head; next rounds may then align or reduce
            # both sides to literals
            if isinstance(n1, Lit):
                d1.popleft()
                push(d1, n1, c1 - 1)
                d1.appendleft((_LIT, n1.word, 0))
            else:
                d1.popleft()
                push(d1, n1, c1 - 1)
                d1.extendleft(reversed(_decompose(n1, cache)))
            continue
        if h1[0] == _EXPR or h2[0] == _EXPR:
            dq, h = (d1, h1) if h1[0] == _EXPR else (d2, h2)
            node, count = h[1], h[2]
            dq.popleft()
            push(dq, node, count - 1)
            if isinstance(node, Lit):
                dq.appendleft((_LIT, node.word, 0))
            else:
                dq.extendleft(reversed(_decompose(node, cache)))
            continue
        # both heads are literal views: compare characters directly
        w1, o1 = h1[1], h1[2]
        w2, o2 = h2[1], h2[2]
        m = min(len(w1) - o1, len(w2) - o2)
        for k in range(m):
            if w1[o1 + k] != w2[o2 + k]:
                return pos + k
        pos += m
        d1.popleft()
        d2.popleft()
        if o1 + m < len(w1):
            d1.appendleft((_LIT, w1, o1 + m))
        if o2 + m < len(w2):
            d2.appendleft((_LIT, w2, o2 + m))
    raise FirstDifferenceBudgetExceeded(
        f"no verdict after {max_steps} segment operations"
    )


def is_balanced_pair(e1: WordExpr, e2: WordExpr) -> bool:
    return all(letter_count(e1, ch) == letter_count(e2, ch) for ch in ALPHABET)


# ---------------------------------------------------------------------------
# identities


@dataclass(frozen=True)
class Identity:
    """A formal law lhs = rhs between words over {a, b}.

    Sides must be balanced and distinct; both are verified on construction.
    """

    lhs: WordExpr
    rhs: WordExpr

    def __post_init__(self):
        for side in (self.lhs, self.rhs):
            extra = letters(side) - set(ALPHABET)
            if extra:
                raise ValueError(f"identity letters {sorted(extra)} outside ab")
        if not is_balanced_pair(self.lhs, self.rhs):
            raise ValueError(
                "sides are not balanced: letter counts "
                f"a: {letter_count(self.lhs, 'a')} vs {letter_count(self.rhs, 'a')}, "
                f"b: {letter_count(self.lhs, 'b')} vs {letter_count(self.rhs, 'b')}"
            )
        l1 = expanded_length(self.lhs)
        l2 = expanded_length(self.rhs)
        if l1 == l2:
            if l1 <= DEFAULT_EXPAND_LIMIT:
                if expand(self.lhs) == expand(self.rhs):
                    raise ValueError("identity sides are the same word")
            elif first_difference(self.lhs, self.rhs) is None:
                raise ValueError("identity sides are the same word")

    def side_lengths(self) -> tuple[int, int]:
        return expanded_length(self.lhs), expanded_length(self.rhs)

    def digest(self) -> str:
        """Stable content hash of the canonical serialisation."""
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        return {"lhs": expr_to_json(self.lhs), "rhs": expr_to_json(self.rhs)}

    @staticmethod
    def from_json(obj: dict) -> "Identity":
        return Identity(expr_from_json(obj["lhs"]), expr_from_json(obj["rhs"]))


# ---------------------------------------------------------------------------
# JSON wire format
#
# {"t": "let", "v": "a"}
# {"t": "cat", "items": [...]}
# {"t": "pow", "base": ..., "exp": "62"}      exponents as decimal strings
# {"t": "sub", "target": ..., "a": ..., "b": ...}


def expr_to_json(e: WordExpr):
    if isinstance(e, Lit):
        if len(e.word) == 1:
            return {"t": "let", "v": e.word}
        return {"t": "cat", "items": [{"t": "let", "v": ch} for ch in e.word]}
    if isinstance(e, Concat):
        items = []
        for p in e.parts:
            j = expr_to_json(p)
            if isinstance(p, Lit) and len(p.word) > 1:
                items.extend(j["items"])
            else:
                items.append(j)
        return {"t": "cat", "items": items}
    if isinstance(e, Power):
        return {"t": "pow", "base": expr_to_json(e.base), "exp": str(e.exp)}
    if isinstance(e, Subst):
        return {
            "t": "sub",
            "target": expr_to_json(e.target),
            "a": expr_to_json(e.image_a),
            "b": expr_to_json(e.image_b),
        }
    raise TypeError(f"not a WordExpr: {e!r}")


def expr_from_json(obj) -> WordExpr:
    t = obj.get("t")
    if t == "let":
        return Lit(obj["v"])
    if t == "cat":
        parts: list[WordExpr] = []
        run: list[str] = []
        for item in obj["items"]:
            if item.get("t") == "let":
                run.append(item["v"])
                continue
            if run:
                parts.append(Lit("".join(run)))
                run = []
            parts.append(expr_from_json(item))
        if run:
            parts.append(Lit("".join(run)))
        if not parts:
            raise ValueError("empty cat")
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))
    if t == "pow":
        return Power(expr_from_json(obj["base"]), int(obj["exp"]))
    if t == "sub":
        return Subst(
            expr_from_json(obj["target"]),
            expr_from_json(obj["a"]),
            expr_from_json(obj["b"]),
        )
    raise ValueError(f"unknown expression tag {t!r}")
