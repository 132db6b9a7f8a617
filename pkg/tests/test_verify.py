from __future__ import annotations

import pytest

from tropid.constructions import (
    covering_word_identity,
    factor_witness,
    ut_separating_pair,
)
from tropid.plactic import p4_ut5_separation
from tropid.tropical import NEG_INF, TropMatrix
from tropid.verify import (
    SamplerConfig,
    WitnessFailed,
    _trial_rng,
    check_falsification,
    check_plactic_satisfaction,
    check_satisfaction,
    mutation_canary,
    oracle_cross_checks,
    sample_assignment,
    sample_matrix,
)
from tropid.words import Identity, Lit


# --- sampler -------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(dim=0)
    with pytest.raises(ValueError):
        SamplerConfig(dim=2, shape="diagonal")
    with pytest.raises(ValueError):
        SamplerConfig(dim=2, entry_min=3, entry_max=1)
    with pytest.raises(ValueError):
        SamplerConfig(dim=2, neginf_prob=1.5)
    with pytest.raises(ValueError):
        SamplerConfig(dim=2, trials=-1)


def test_config_targets_and_diag_prob():
    ut = SamplerConfig(dim=3)
    full = SamplerConfig(dim=3, shape="full", neginf_prob=0.25)
    assert ut.target == "UT_3" and full.target == "M_3"
    assert ut.diag_prob == 0.0  # triangular samples keep finite diagonals
    assert full.diag_prob == 0.25
    assert SamplerConfig(dim=3, diag_neginf_prob=0.5).diag_prob == 0.5


def test_sampling_is_deterministic_per_trial():
    cfg = SamplerConfig(dim=4, seed=11)
    env1 = sample_assignment(cfg, trial=3)
    env2 = sample_assignment(cfg, trial=3)
    assert env1 == env2
    assert env1 != sample_assignment(cfg, trial=4)
    m = env1["a"]
    assert m.is_upper_triangular()
    for i in range(1, 5):
        for j in range(1, i):
            assert m.at(i, j) is NEG_INF


def test_sample_matrix_respects_entry_range():
    cfg = SamplerConfig(dim=3, shape="full", entry_min=-2, entry_max=2,
                        neginf_prob=0.0, seed=5)
    for trial in range(50):
        for m in sample_assignment(cfg, trial).values():
            for row in m.rows:
                for v in row:
                    assert v is not None and -2 <= v <= 2


def test_sample_matrix_all_neginf():
    cfg = SamplerConfig(dim=3, shape="full", neginf_prob=1.0, seed=5)
    m = sample_matrix(cfg, _trial_rng(cfg.seed, 0))
    assert all(v is NEG_INF for row in m.rows for v in row)


# --- satisfaction --------------------------------------------------------


def test_adjan_satisfied_in_ut2():
    rep = check_satisfaction(
        ut_separating_pair(2).identity, SamplerConfig(dim=2, trials=300, seed=9)
    )
    assert rep.ok
    assert rep.outcome == "no-counterexample"
    assert rep.trials == 300
    assert rep.target == "UT_2"
    assert rep.counterexample is None


def test_adjan_fails_in_ut3_with_details():
    rep = check_satisfaction(
        ut_separating_pair(2).identity, SamplerConfig(dim=3, trials=2000, seed=9)
    )
    assert not rep.ok
    ce = rep.counterexample
    assert set(ce) == {"trial", "assignment", "entry", "lhs_value", "rhs_value"}
    assert rep.trials == ce["trial"] + 1  # stopped at the first hit
    assert ce["lhs_value"] != ce["rhs_value"]
    # replay the counterexample exactly
    env = {k: TropMatrix.from_json(v) for k, v in ce["assignment"].items()}
    lhs, rhs = check_falsification(
        ut_separating_pair(2).identity, env
    ).counterexample["entry"], ce["entry"]
    assert lhs == rhs


def test_report_json_has_no_timing():
    rep = check_satisfaction(
        ut_separating_pair(2).identity, SamplerConfig(dim=2, trials=5, seed=0)
    )
    j = rep.to_json()
    assert "elapsed" not in j
    assert j["config"]["seed"] == 0
    assert j["identity_digest"] == ut_separating_pair(2).identity.digest()


# --- falsification -------------------------------------------------------


def test_adjan_falsified_at_known_entry():
    rep = check_falsification(
        ut_separating_pair(2).identity, factor_witness("aa")
    )
    assert rep.target == "UT_3"
    assert rep.counterexample["entry"] == [1, 3]
    assert rep.counterexample["lhs_value"] == -1
    assert rep.counterexample["rhs_value"] == -2


def test_covering_identity_falsified_at_corner():
    rep = check_falsification(
        covering_word_identity("abbaab", 3), factor_witness("bab").assignment()
    )
    assert rep.target == "UT_4"
    assert rep.counterexample["entry"] == [1, 4]


def test_witness_failed_when_identity_holds():
    # a dimension-2 witness cannot separate an identity valid in UT_2
    with pytest.raises(WitnessFailed):
        check_falsification(
            ut_separating_pair(2).identity,
            {"a": TropMatrix.diag([0, 1]), "b": TropMatrix.diag([2, 3])},
        )


def test_witness_dimensions_must_agree():
    with pytest.raises(ValueError):
        check_falsification(
            ut_separating_pair(2).identity,
            {"a": TropMatrix.diag([0, 1]), "b": TropMatrix.diag([0, 1, 2])},
        )


def test_full_matrix_witness_changes_target():
    from tropid.constructions import commuting_falsifier, m2_falsifier_pair

    rep = check_falsification(m2_falsifier_pair(), commuting_falsifier(3))
    assert rep.target == "M_3"


# --- plactic sampling ------------------------------------------------------


def test_true_plactic_law_passes():
    ident, _ = p4_ut5_separation()
    rep = check_plactic_satisfaction(ident, max_word_len=5, trials=150, seed=2)
    assert rep.ok
    assert rep.target == "P_4"


def test_false_plactic_law_fails():
    fake = Identity(Lit("ab"), Lit("ba"))
    rep = check_plactic_satisfaction(fake, max_word_len=4, trials=200, seed=2)
    assert not rep.ok
    assert rep.counterexample is not None


# --- oracles ----------------------------------------------------------------


def test_oracles_agree_in_fast_mode():
    report = oracle_cross_checks(3, fast=True)
    assert [o["status"] for o in report["oracles"]] == ["ok"] * 5
    assert all(o["checks"] > 0 for o in report["oracles"])


def test_oracle_report_is_reproducible():
    assert oracle_cross_checks(3, fast=True) == oracle_cross_checks(3, fast=True)


def test_mutation_canary_trips_on_bent_witness():
    assert mutation_canary(0) is True
