"""One-shot reproduction of every separation result, with artifacts.

Each numbered block reruns one headline check end to end: construct, sample
for satisfaction, falsify exactly, and write the reports.  The summary rows
and every JSON artifact are deterministic for a fixed seed; wall-clock data
never enters the files, so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from . import constructions as cons
from .figures import identity_growth_figure, witness_digraph_figure
from .plactic import (
    from_word,
    p4_ut5_separation,
    rho,
    rho_generator,
    subset_order,
)
from .tropical import NEG_INF, Permutation, TropMatrix
from .verify import (
    SamplerConfig,
    WitnessFailed,
    check_falsification,
    check_plactic_satisfaction,
    check_satisfaction,
    mutation_canary,
    oracle_cross_checks,
    _trial_rng,
)
from .words import all_factors_present, evaluate, has_run

__all__ = ["run_all", "CRITERIA"]

CRITERIA = (
    (1, "adjan-ut2"),
    (2, "zur-ut3"),
    (3, "ut-chain"),
    (4, "m3-m4"),
    (5, "m2-falsifier"),
    (6, "prime-sep-5"),
    (7, "plactic"),
    (8, "oracles"),
    (9, "determinism"),
)


def _write_json(path: Path, obj) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    path.write_text(text)
    return text


def _row(num: int, name: str, ok: bool, detail: str) -> dict:
    return {
        "criterion": num,
        "name": name,
        "status": "PASS" if ok else "FAIL",
        "detail": detail,
    }


def _c1_adjan(seed: int, out: Path) -> dict:
    pair = cons.ut_separating_pair(2)
    sat = check_satisfaction(
        pair.identity, SamplerConfig(dim=2, trials=10_000, seed=seed)
    )
    fw = cons.factor_witness("aa")
    fal = check_falsification(pair.identity, fw.assignment())
    ce = fal.counterexample
    ok = (
        sat.ok
        and ce["entry"] == [1, 3]
        and ce["lhs_value"] == -1
        and ce["rhs_value"] == -2
    )
    _write_json(out / "c1_adjan_ut2_satisfaction.json", sat.to_json())
    _write_json(out / "c1_adjan_ut3_falsification.json", fal.to_json())
    return _row(
        1, "adjan-ut2", ok,
        f"{sat.trials} UT_2 trials clean; UT_3 corner (1,3): "
        f"{ce['lhs_value']} vs {ce['rhs_value']}",
    )


def _c2_zur(seed: int, out: Path) -> dict:
    ident = cons.covering_word_identity("abbaab", 3)
    sat = check_satisfaction(ident, SamplerConfig(dim=3, trials=10_000, seed=seed))
    fw = cons.factor_witness("bab")
    fal = check_falsification(ident, fw.assignment())
    ce = fal.counterexample
    ok = sat.ok and ce["entry"] == [1, 4]
    _write_json(out / "c2_covering_ut3_satisfaction.json", sat.to_json())
    _write_json(out / "c2_covering_ut4_falsification.json", fal.to_json())
    return _row(
        2, "zur-ut3", ok,
        f"{sat.trials} UT_3 trials clean; falsified in UT_4 at {tuple(ce['entry'])}",
    )


def _c3_chain(seed: int, out: Path) -> dict:
    details = []
    ok = True
    artifacts = {}
    for n in range(1, 7):
        pair = cons.ut_separating_pair(n)
        sat = check_satisfaction(
            pair.identity, SamplerConfig(dim=n, trials=1000, seed=seed)
        )
        witness = pair.witness
        env = witness.assignment() if hasattr(witness, "assignment") else witness
        try:
            fal = check_falsification(pair.identity, env)
            falsified = True
        except WitnessFailed:
            falsified = False
        level_ok = sat.ok and falsified
        if n >= 4:
            w = cons.chain_word(n)
            level_ok = level_ok and all_factors_present(w, n - 1)
            for middle in ("a", "b"):
                level_ok = level_ok and not any(
                    has_run(w + middle + w, ch, n) for ch in "ab"
                )
        ok = ok and level_ok
        details.append(f"n={n}:{'ok' if level_ok else 'FAIL'}")
        artifacts[f"n{n}"] = {
            "satisfaction": sat.to_json(),
            "falsification": fal.to_json() if falsified else None,
            "side_lengths": list(pair.identity.side_lengths()),
        }
    _write_json(out / "c3_ut_chain.json", artifacts)
    return _row(3, "ut-chain", ok, "; ".join(details))


def _c4_m3(seed: int, out: Path) -> dict:
    ident = cons.m3_identity()
    lengths = ident.side_lengths()
    sat = check_satisfaction(
        ident, SamplerConfig(dim=3, shape="full", trials=1000, seed=seed)
    )
    fal = check_falsification(ident, cons.m4_witness())
    ok = lengths == (5832, 5832) and sat.ok
    _write_json(out / "c4_m3_satisfaction.json", sat.to_json())
    _write_json(out / "c4_m4_falsification.json", fal.to_json())
    return _row(
        4, "m3-m4", ok,
        f"sides {lengths[0]}/{lengths[1]}; {sat.trials} M_3 trials clean; "
        f"M_4 witness separates at {tuple(fal.counterexample['entry'])}",
    )


def _invertible_equivalence(seed: int, samples: int = 200) -> tuple[bool, int]:
    """u2(A,B) = v2(A,B) iff A^2 B^2 = B^2 A^2, on invertible samples."""
    pair = cons.m2_falsifier_pair()
    agreements = 0
    for s in range(samples):
        rng = _trial_rng(seed, s)
        dim = int(rng.integers(2, 6))
        perm = list(range(1, dim + 1))
        # random cycle-ish permutation: rotate by a random shift
        shift = int(rng.integers(0, dim))
        images = tuple(perm[(i + shift) % dim] for i in range(dim))
        try:
            p = Permutation(images)
        except ValueError:
            continue
        weights = [int(x) for x in rng.integers(-4, 5, size=dim)]
        a_rows = [[NEG_INF] * dim for _ in range(dim)]
        for i in range(1, dim + 1):
            a_rows[i - 1][p(i) - 1] = weights[i - 1]
        a = TropMatrix.from_rows(a_rows)
        b = TropMatrix.diag([int(x) for x in rng.integers(-4, 5, size=dim)])
        env = {"a": a, "b": b}
        lhs = evaluate(pair.lhs, env, lambda x, y: x @ y)
        rhs = evaluate(pair.rhs, env, lambda x, y: x @ y)
        commutes = (a.pow(2) @ b.pow(2)) == (b.pow(2) @ a.pow(2))
        if (lhs == rhs) != commutes:
            return False, s
        agreements += 1
    return True, agreements


def _c5_m2(seed: int, out: Path) -> dict:
    pair = cons.m2_falsifier_pair()
    sat = check_satisfaction(
        pair, SamplerConfig(dim=2, shape="full", trials=10_000, seed=seed)
    )
    entries = {}
    falsified = True
    for n in (3, 5):
        fal = check_falsification(pair, cons.commuting_falsifier(n))
        entries[f"M_{n}"] = fal.to_json()
        falsified = falsified and fal.counterexample is not None
    equiv_ok, checked = _invertible_equivalence(seed)
    ok = sat.ok and falsified and equiv_ok
    _write_json(out / "c5_m2_satisfaction.json", sat.to_json())
    _write_json(out / "c5_m2_falsifications.json", entries)
    return _row(
        5, "m2-falsifier", ok,
        f"{sat.trials} M_2 trials clean; cycle witnesses separate in M_3 and "
        f"M_5; equivalence held on {checked} invertible samples",
    )


def _c6_prime(seed: int, out: Path) -> dict:
    ps = cons.prime_separation(5)
    diag_ok = all(d.full_cycle and d.diagonal_distinct for d in ps.diagnostics)
    env = ps.witness
    fal = check_falsification(ps.identity, env)
    sat = check_satisfaction(
        ps.identity, SamplerConfig(dim=4, shape="full", trials=100, seed=seed)
    )
    ok = diag_ok and fal.counterexample is not None and sat.ok
    _write_json(out / "c6_prime_diagnostics.json", ps.diagnostics_json())
    _write_json(out / "c6_prime_falsification.json", fal.to_json())
    _write_json(out / "c6_prime_m4_satisfaction.json", sat.to_json())
    lengths = ps.identity.side_lengths()
    return _row(
        6, "prime-sep-5", ok,
        f"levels 4..2 pass; sides of length {lengths[0]} separate exactly in "
        f"M_5; {sat.trials} M_4 trials clean",
    )


def _c7_plactic(seed: int, out: Path) -> dict:
    relations_ok = True
    for x in range(1, 5):
        for y in range(1, 5):
            for z in range(1, 5):
                if x < y <= z:
                    relations_ok = relations_ok and from_word((y, z, x)) == from_word((y, x, z))
                if x <= y < z:
                    relations_ok = relations_ok and from_word((x, z, y)) == from_word((z, x, y))

    morphism_ok = True
    for s in range(1000):
        rng = _trial_rng(seed, s)
        wu = tuple(int(c) for c in rng.integers(1, 5, size=int(rng.integers(1, 6))))
        wv = tuple(int(c) for c in rng.integers(1, 5, size=int(rng.integers(1, 6))))
        if rho(wu + wv) != rho(wu) @ rho(wv):
            morphism_ok = False
            break

    import itertools as it
    images: dict[TropMatrix, object] = {}
    injective = True
    for length in range(1, 6):
        for w in it.product(range(1, 5), repeat=length):
            t = from_word(w)
            m = rho(w)
            prev = images.get(m)
            if prev is None:
                images[m] = t
            elif prev != t:
                injective = False

    index = subset_order(4)
    block_sizes = {}
    for p in index:
        block_sizes[len(p)] = block_sizes.get(len(p), 0) + 1
    triangular = all(rho_generator(x).is_upper_triangular() for x in range(1, 5))
    blocks_ok = triangular and max(block_sizes.values()) == 6

    ident, fw = p4_ut5_separation()
    sat = check_plactic_satisfaction(ident, max_word_len=6, trials=1000, seed=seed)
    fal = check_falsification(ident, fw.assignment())
    falsify_ok = fal.counterexample["entry"] == [1, 5]

    ok = relations_ok and morphism_ok and injective and blocks_ok and sat.ok and falsify_ok
    _write_json(out / "c7_plactic_satisfaction.json", sat.to_json())
    _write_json(out / "c7_plactic_ut5_falsification.json", fal.to_json())
    return _row(
        7, "plactic", ok,
        f"relations hold; morphism on 1000 pairs; injective on words <= 5; "
        f"largest block 6; {sat.trials} P_4 trials clean; UT_5 entry (1,5)",
    )


def _c8_oracles(seed: int, out: Path) -> dict:
    report = oracle_cross_checks(seed)
    canary = mutation_canary(seed)
    ok = all(o["status"] == "ok" for o in report["oracles"]) and canary
    report["mutation_canary_trips"] = canary
    _write_json(out / "c8_oracles.json", report)
    checks = ", ".join(f"{o['name']}={o['checks']}" for o in report["oracles"])
    return _row(8, "oracles", ok, checks)


def _c9_determinism(seed: int, out: Path) -> dict:
    pair = cons.ut_separating_pair(2)
    cfg = SamplerConfig(dim=2, trials=200, seed=seed)
    first = json.dumps(check_satisfaction(pair.identity, cfg).to_json(), sort_keys=True)
    second = json.dumps(check_satisfaction(pair.identity, cfg).to_json(), sort_keys=True)
    oracle_first = json.dumps(oracle_cross_checks(seed, fast=True), sort_keys=True)
    oracle_second = json.dumps(oracle_cross_checks(seed, fast=True), sort_keys=True)
    ok = first == second and oracle_first == oracle_second
    return _row(
        9, "determinism", ok,
        "repeated in-process runs produced identical reports",
    )


def run_all(seed: int, out: str | Path) -> list[dict]:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    rows = [
        _c1_adjan(seed, out),
        _c2_zur(seed, out),
        _c3_chain(seed, out),
        _c4_m3(seed, out),
        _c5_m2(seed, out),
        _c6_prime(seed, out),
        _c7_plactic(seed, out),
        _c8_oracles(seed, out),
        _c9_determinism(seed, out),
    ]

    identity_growth_figure(out / "identity_growth.png")
    witness_digraph_figure(out / "witness_digraph.png")

    buf = io.StringIO()
    writer = csv.DictWriter(
        buf, fieldnames=["criterion", "name", "status", "detail"], lineterminator="\n"
    )
    writer.writeheader()
    writer.writerows(rows)
    (out / "summary.csv").write_text(buf.getvalue())
    _write_json(out / "summary.json", {"seed": seed, "criteria": rows})
    return rows
