"""Evidence engine: seeded satisfaction sampling, exact falsification, and
the brute-force cross-check oracles.

Sampling never proves an identity; reports only ever say "no counterexample
in N trials".  Falsification is exact integer arithmetic and its verdicts
are final.  Each trial draws its randomness from a counter-based
generator keyed (seed, trial index), so parallel, chunked, and serial runs
produce the same samples.
"""

from __future__ import annotations

import itertools
import operator
import time
from dataclasses import dataclass

import numpy as np

from .constructions import factor_witness
from .plactic import from_word, knuth_closure, plactic_mul, rho
from .tropical import NEG_INF, CompoundDigraph, TropMatrix
from .words import Identity, all_words, as_expr, evaluate, is_factor

__all__ = [
    "SamplerConfig",
    "VerificationReport",
    "WitnessFailed",
    "OracleFailure",
    "sample_matrix",
    "sample_assignment",
    "check_satisfaction",
    "check_falsification",
    "check_plactic_satisfaction",
    "oracle_cross_checks",
    "mutation_canary",
]

_mul = operator.matmul

SHAPES = ("upper-triangular", "full")


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, trial]))


@dataclass(frozen=True)
class SamplerConfig:
    """Deterministic matrix sampler: (seed, trial index) fixes every draw."""

    dim: int
    shape: str = "upper-triangular"
    entry_min: int = -8
    entry_max: int = 8
    neginf_prob: float = 0.1
    diag_neginf_prob: float | None = None
    trials: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"shape must be one of {SHAPES}")
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.entry_min > self.entry_max:
            raise ValueError("entry_min exceeds entry_max")
        if not 0.0 <= self.neginf_prob <= 1.0:
            raise ValueError("neginf_prob outside [0, 1]")
        if self.trials < 0 or self.seed < 0:
            raise ValueError("trials and seed must be non-negative")

    @property
    def diag_prob(self) -> float:
        # triangular samples keep finite diagonals unless explicitly overridden
        if self.diag_neginf_prob is not None:
            return self.diag_neginf_prob
        return 0.0 if self.shape == "upper-triangular" else self.neginf_prob

    @property
    def target(self) -> str:
        prefix = "UT" if self.shape == "upper-triangular" else "M"
        return f"{prefix}_{self.dim}"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "shape": self.shape,
            "entry_min": self.entry_min,
            "entry_max": self.entry_max,
            "neginf_prob": self.neginf_prob,
            "diag_neginf_prob": self.diag_prob,
            "trials": self.trials,
            "seed": self.seed,
        }


def sample_matrix(cfg: SamplerConfig, rng: np.random.Generator) -> TropMatrix:
    """Row-major draws: one value and one mask draw per admissible entry."""
    rows = []
    for i in range(cfg.dim):
        row = []
        for j in range(cfg.dim):
            if cfg.shape == "upper-triangular" and j < i:
                row.append(NEG_INF)
                continue
            value = int(rng.integers(cfg.entry_min, cfg.entry_max + 1))
            p = cfg.diag_prob if i == j else cfg.neginf_prob
            row.append(NEG_INF if rng.random() < p else value)
        rows.append(row)
    return TropMatrix.from_rows(rows)


def sample_assignment(cfg: SamplerConfig, trial: int) -> dict[str, TropMatrix]:
    rng = _trial_rng(cfg.seed, trial)
    return {"a": sample_matrix(cfg, rng), "b": sample_matrix(cfg, rng)}


def _value_json(v):
    return "-inf" if v is None else v


def _first_difference_entry(lhs: TropMatrix, rhs: TropMatrix):
    for i in range(1, lhs.dim + 1):
        for j in range(1, lhs.dim + 1):
            if lhs.at(i, j) != rhs.at(i, j):
                return (i, j), lhs.at(i, j), rhs.at(i, j)
    return None


@dataclass(frozen=True)
class VerificationReport:
    identity_digest: str
    target: str
    trials: int
    outcome: str
    config: dict | None = None
    counterexample: dict | None = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.outcome == "no-counterexample"

    def to_json(self) -> dict:
        # elapsed is reporting noise and is deliberately not serialized
        return {
            "identity_digest": self.identity_digest,
            "target": self.target,
            "trials": self.trials,
            "outcome": self.outcome,
            "config": self.config,
            "counterexample": self.counterexample,
        }


def check_satisfaction(ident: Identity, cfg: SamplerConfig) -> VerificationReport:
    """Sample assignments and compare exact evaluations; stop on inequality."""
    start = time.perf_counter()
    for trial in range(cfg.trials):
        env = sample_assignment(cfg, trial)
        lhs = evaluate(ident.lhs, env, _mul)
        rhs = evaluate(ident.rhs, env, _mul)
        if lhs != rhs:
            (i, j), lv, rv = _first_difference_entry(lhs, rhs)
            payload = {
                "trial": trial,
                "assignment": {k: m.to_json() for k, m in env.items()},
                "entry": [i, j],
                "lhs_value": _value_json(lv),
                "rhs_value": _value_json(rv),
            }
            return VerificationReport(
                ident.digest(), cfg.target, trial + 1, "counterexample",
                cfg.to_json(), payload, time.perf_counter() - start,
            )
    return VerificationReport(
        ident.digest(), cfg.target, cfg.trials, "no-counterexample",
        cfg.to_json(), None, time.perf_counter() - start,
    )


class WitnessFailed(Exception):
    """The sides agreed under a witness that was expected to separate them."""


def check_falsification(ident: Identity, witness) -> VerificationReport:
    """Exact evaluation at a fixed assignment; raises if the sides agree."""
    env = witness.assignment() if hasattr(witness, "assignment") else dict(witness)
    dims = {m.dim for m in env.values()}
    if len(dims) != 1:
        raise ValueError("witness dimensions are inconsistent")
    dim = dims.pop()
    triangular = all(m.is_upper_triangular() for m in env.values())
    target = f"{'UT' if triangular else 'M'}_{dim}"
    start = time.perf_counter()
    lhs = evaluate(ident.lhs, env, _mul)
    rhs = evaluate(ident.rhs, env, _mul)
    if lhs == rhs:
        raise WitnessFailed(
            f"witness does not separate the sides of {ident.digest()} in {target}"
        )
    (i, j), lv, rv = _first_difference_entry(lhs, rhs)
    payload = {
        "assignment": {k: m.to_json() for k, m in env.items()},
        "entry": [i, j],
        "lhs_value": _value_json(lv),
        "rhs_value": _value_json(rv),
    }
    return VerificationReport(
        ident.digest(), target, 1, "counterexample", None, payload,
        time.perf_counter() - start,
    )


class OracleFailure(Exception):
    """Two independent computations of the same quantity disagreed."""


def check_plactic_satisfaction(
    ident: Identity, max_word_len: int = 6, trials: int = 1000, seed: int = 0
) -> VerificationReport:
    """Sample rank-4 elements for both variables and compare canonical forms.

    Every trial is also evaluated through the subset-indexed representation;
    the two equality verdicts must agree, otherwise the representation and
    the insertion algorithm are out of sync and the run aborts.
    """
    start = time.perf_counter()
    for trial in range(trials):
        rng = _trial_rng(seed, trial)
        wx = tuple(int(c) for c in rng.integers(1, 5, size=int(rng.integers(1, max_word_len + 1))))
        wy = tuple(int(c) for c in rng.integers(1, 5, size=int(rng.integers(1, max_word_len + 1))))
        env_tab = {"a": from_word(wx), "b": from_word(wy)}
        tab_equal = evaluate(ident.lhs, env_tab, plactic_mul) == evaluate(
            ident.rhs, env_tab, plactic_mul
        )
        env_rho = {"a": rho(wx), "b": rho(wy)}
        rho_equal = evaluate(ident.lhs, env_rho, _mul) == evaluate(
            ident.rhs, env_rho, _mul
        )
        if tab_equal != rho_equal:
            raise OracleFailure(
                f"tableau and representation verdicts disagree on x={wx} y={wy}"
            )
        if not tab_equal:
            payload = {
                "trial": trial,
                "x_word": list(wx),
                "y_word": list(wy),
            }
            return VerificationReport(
                ident.digest(), "P_4", trial + 1, "counterexample",
                {"max_word_len": max_word_len, "trials": trials, "seed": seed},
                payload, time.perf_counter() - start,
            )
    return VerificationReport(
        ident.digest(), "P_4", trials, "no-counterexample",
        {"max_word_len": max_word_len, "trials": trials, "seed": seed},
        None, time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# brute-force oracles


def _fold_word(word: str, env: dict[str, TropMatrix]) -> TropMatrix:
    out = None
    for ch in word:
        out = env[ch] if out is None else out @ env[ch]
    return out


def oracle_path_dp(seed: int, max_len: int = 6, dims=(2, 3, 4, 5), samples: int = 100) -> dict:
    """Max-weight labelled paths must reproduce every product entry."""
    words = [w for n in range(1, max_len + 1) for w in all_words(n)]
    checks = 0
    for s in range(samples):
        rng = _trial_rng(seed, s)
        cfg = SamplerConfig(
            dim=dims[s % len(dims)],
            shape=SHAPES[s % 2],
            trials=1,
            seed=seed,
        )
        env = {"a": sample_matrix(cfg, rng), "b": sample_matrix(cfg, rng)}
        graph = CompoundDigraph.from_matrices(env["a"], env["b"])
        for w in words:
            if graph.word_values(w) != _fold_word(w, env):
                raise OracleFailure(f"path DP disagrees with product on {w!r}")
            checks += 1
    return {"name": "path-dp-vs-product", "checks": checks, "status": "ok"}


def oracle_knuth_schensted(max_len: int = 6, n: int = 4) -> dict:
    """Knuth classes and insertion fibers must be the same partition."""
    checks = 0
    for length in range(1, max_len + 1):
        fibers: dict = {}
        for w in itertools.product(range(1, n + 1), repeat=length):
            fibers.setdefault(from_word(w), set()).add(w)
        for tableau, words in fibers.items():
            rep = min(words)
            if knuth_closure(rep, n=n, cap=max_len) != words:
                raise OracleFailure(
                    f"closure of {rep} differs from the insertion fiber"
                )
            checks += len(words)
    return {"name": "knuth-vs-schensted", "checks": checks, "status": "ok"}


def oracle_factor_corner(seed: int, samples: int = 500) -> dict:
    """Corner entries detect factors: bounded above, equal iff contained."""
    checks = 0
    for s in range(samples):
        rng = _trial_rng(seed, s)
        w = "".join("ab"[int(x)] for x in rng.integers(0, 2, size=int(rng.integers(1, 5))))
        t = "".join("ab"[int(x)] for x in rng.integers(0, 2, size=int(rng.integers(1, 9))))
        fw = factor_witness(w)
        bound = fw.corner_value(w)
        value = fw.corner_value(t)
        contained = is_factor(w, t)
        if not _tle(value, bound):
            raise OracleFailure(f"corner value for {t!r} exceeds bound of {w!r}")
        if (value == bound) != contained:
            raise OracleFailure(
                f"corner equality and factor containment disagree: w={w!r} t={t!r}"
            )
        checks += 1
    return {"name": "factor-witness-corner", "checks": checks, "status": "ok"}


def _tle(x, y) -> bool:
    if x is None:
        return True
    if y is None:
        return False
    return x <= y


def oracle_diag_commute(seed: int, samples: int = 10_000, dims=(2, 3, 4, 5)) -> dict:
    """Both products of triangular samples share the same diagonal."""
    checks = 0
    for s in range(samples):
        rng = _trial_rng(seed, s)
        cfg = SamplerConfig(dim=dims[s % len(dims)], trials=1, seed=seed)
        a, b = sample_matrix(cfg, rng), sample_matrix(cfg, rng)
        if (a @ b).diagonal() != (b @ a).diagonal():
            raise OracleFailure(f"diagonal mismatch at sample {s}")
        checks += 1
    return {"name": "diag-ab-vs-ba", "checks": checks, "status": "ok"}


def oracle_restriction(seed: int, samples: int = 200, max_len: int = 6) -> dict:
    """Evaluating on a sub-board never beats the full board, and matches it
    when the sub-board is everything."""
    checks = 0
    for s in range(samples):
        rng = _trial_rng(seed, s)
        dim = int(rng.integers(3, 6))
        cfg = SamplerConfig(dim=dim, trials=1, seed=seed)
        env = {"a": sample_matrix(cfg, rng), "b": sample_matrix(cfg, rng)}
        word = "".join(
            "ab"[int(x)] for x in rng.integers(0, 2, size=int(rng.integers(1, max_len + 1)))
        )
        size = int(rng.integers(2, dim + 1))
        nodes = tuple(
            sorted(int(x) + 1 for x in rng.choice(dim, size=size, replace=False))
        )
        full = _fold_word(word, env)
        sub = _fold_word(word, {k: m.restrict(nodes) for k, m in env.items()})
        for si, i in enumerate(nodes, start=1):
            for sj, j in enumerate(nodes, start=1):
                if not _tle(sub.at(si, sj), full.at(i, j)):
                    raise OracleFailure(
                        f"restricted value exceeds full value at {(i, j)}"
                    )
        everything = tuple(range(1, dim + 1))
        if _fold_word(word, {k: m.restrict(everything) for k, m in env.items()}) != full:
            raise OracleFailure("restriction to all nodes changed the value")
        checks += 1
    return {"name": "restriction-law", "checks": checks, "status": "ok"}


def oracle_cross_checks(seed: int = 0, *, fast: bool = False) -> dict:
    """Run every brute-force oracle; any disagreement aborts with details."""
    if fast:
        results = [
            oracle_path_dp(seed, max_len=4, samples=10),
            oracle_knuth_schensted(max_len=4),
            oracle_factor_corner(seed, samples=50),
            oracle_diag_commute(seed, samples=500),
            oracle_restriction(seed, samples=25),
        ]
    else:
        results = [
            oracle_path_dp(seed),
            oracle_knuth_schensted(),
            oracle_factor_corner(seed),
            oracle_diag_commute(seed),
            oracle_restriction(seed),
        ]
    return {"seed": seed, "oracles": results}


def mutation_canary(seed: int = 0) -> bool:
    """Harness sanity: corrupting a stored witness must trip the corner oracle."""
    fw = factor_witness("ab")
    rows = [list(r) for r in fw.b.rows]
    rows[0][0] = rows[0][0] + 1  # bend the finite corner weight
    bent = TropMatrix.from_rows(rows)
    ab, ba = fw.a @ bent, bent @ fw.a
    env = {"a": ab, "b": ba}

    def corner(t: str):
        return evaluate(as_expr(t), env, _mul).at(1, fw.dim)

    bound = corner(fw.word)
    for length in range(1, 5):
        for t in all_words(length):
            value = corner(t)
            if not _tle(value, bound) or (value == bound) != is_factor(fw.word, t):
                return True
    return False
