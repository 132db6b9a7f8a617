from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from tropid.constructions import (
    ExponentBoundError,
    NestedLevels,
    chain_word,
    commuting_falsifier,
    covering_word_identity,
    factor_witness,
    full_matrix_identity_i,
    full_matrix_identity_ii,
    m2_falsifier_pair,
    m3_identity,
    m4_witness,
    nested_identity,
    nested_words,
    prime_separation,
    ut_separating_pair,
)
from tropid.tropical import NEG_INF
from tropid.words import (
    PreconditionFailed,
    all_factors_present,
    all_words,
    evaluate,
    expand,
    expanded_length,
    first_difference,
    has_run,
    is_factor,
    letter_at,
)

_mul = lambda x, y: x @ y


# --- factor witnesses ---------------------------------------------------


def test_factor_witness_shape():
    fw = factor_witness("aa")
    assert fw.dim == 3
    assert fw.params == (0, -1, -2)
    assert fw.a.is_diagonal()
    assert fw.a.diagonal() == (0, -1, -2)
    assert fw.b.at(1, 2) == 0 and fw.b.at(2, 3) == 0
    assert fw.b.at(1, 1) == 0 and fw.b.at(3, 3) == 2
    assert fw.b.at(2, 2) is NEG_INF
    assert fw.corner() == (1, 3)


@given(st.text(alphabet="ab", min_size=1, max_size=5))
def test_factor_witness_detects_exactly_its_word(w):
    # corner values never exceed the peak at w; ties are exactly superwords
    fw = factor_witness(w)
    bound = fw.corner_value(w)
    for t in all_words(len(w)):
        v = fw.corner_value(t)
        assert v is NEG_INF or v <= bound
        assert (v == bound) == (t == w)


def test_factor_witness_containment_law():
    fw = factor_witness("bab")
    bound = fw.corner_value("bab")
    assert bound == 3
    assert fw.corner_value("ababa") == bound  # contains bab
    assert fw.corner_value("aabba") < bound


# --- covering-word identities ---------------------------------------------


def test_covering_word_identity_expansion():
    ident = covering_word_identity("abbaab", 3)
    w = "abbaab"
    assert expand(ident.lhs) == "".join(
        "ab" if c == "a" else "ba" for c in w + "a" + w
    )
    assert ident.side_lengths() == (26, 26)


def test_covering_word_preconditions():
    with pytest.raises(PreconditionFailed):
        covering_word_identity("abab", 3)  # no bb factor
    with pytest.raises(PreconditionFailed):
        covering_word_identity("aabb", 3)  # waw has the run aaa
    with pytest.raises(ValueError):
        covering_word_identity("ab", 1)


# --- the separating chain ---------------------------------------------------


def test_adjan_identity_is_the_chain_base():
    pair = ut_separating_pair(2)
    assert expand(pair.identity.lhs) == "abbaababba"
    assert expand(pair.identity.rhs) == "abbabaabba"
    assert pair.separating_word == "aa"
    assert pair.inner == ("abaab", "abbab")


def test_chain_side_lengths_are_frozen():
    got = [ut_separating_pair(n).identity.side_lengths() for n in range(1, 7)]
    assert got == [
        (2, 2), (10, 10), (26, 26), (226, 226), (530, 530), (1066, 1066),
    ]


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_chain_word_covers_and_avoids_runs(n):
    w = chain_word(n)
    assert all_factors_present(w, n - 1)
    for middle in "ab":
        word = w + middle + w
        assert not has_run(word, "a", n)
        assert not has_run(word, "b", n)


def test_chain_word_needs_n_at_least_4():
    with pytest.raises(ValueError):
        chain_word(3)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_separating_word_is_one_sided(n):
    pair = ut_separating_pair(n)
    if n == 1:
        assert pair.separating_word is None
        return
    u, v = pair.inner
    assert is_factor(pair.separating_word, u)
    assert not is_factor(pair.separating_word, v)


def test_witness_matrices_live_one_dimension_up():
    pair = ut_separating_pair(3)
    assert pair.witness["a"].dim == 4
    assert pair.witness["b"].dim == 4


# --- full matrix compositions ------------------------------------------------


def test_fulliden_exponent_bound():
    with pytest.raises(ExponentBoundError):
        full_matrix_identity_i("ab", "ba", "ab", "ba", t=4, n=3)
    ident = full_matrix_identity_i("ab", "ba", "ab", "ba", t=5, n=3)
    l1, l2 = ident.side_lengths()
    assert l1 == l2


def test_fulliden_ii_optional_exponent():
    with pytest.raises(ExponentBoundError):
        full_matrix_identity_ii("ab", "ba", "aabb", "ab", "ba", t=None, n=3)
    ident = full_matrix_identity_ii(
        "ab", "ba", "aabb", "ab", "ba", t=None, n=3, allow_short_exponent=True
    )
    assert ident.side_lengths()[0] == ident.side_lengths()[1]


def test_fulliden_rejects_equal_qr():
    with pytest.raises(ValueError):
        full_matrix_identity_i("ab", "ba", "ab", "ab", t=5, n=3)


def test_m3_identity_has_the_known_length():
    ident = m3_identity()
    assert ident.side_lengths() == (5832, 5832)


def test_m4_witness_falsifies_m3_identity():
    ident = m3_identity()
    env = m4_witness()
    assert env["a"].dim == 4
    lhs = evaluate(ident.lhs, env, _mul)
    rhs = evaluate(ident.rhs, env, _mul)
    assert lhs != rhs


# --- the even/odd falsifier --------------------------------------------------


def test_m2_falsifier_words():
    pair = m2_falsifier_pair()
    s = "aabbbbaa"
    assert expand(pair.lhs) == s + "aabb" + s
    assert expand(pair.rhs) == s + "bbaa" + s


@pytest.mark.parametrize("n", [3, 5])
def test_commuting_falsifier_separates_odd_dimensions(n):
    pair = m2_falsifier_pair()
    env = commuting_falsifier(n)
    assert env["a"].underlying_permutation().is_full_cycle()
    assert env["b"].is_diagonal()
    lhs = evaluate(pair.lhs, env, _mul)
    rhs = evaluate(pair.rhs, env, _mul)
    assert lhs != rhs


def test_commuting_falsifier_is_inert_in_dimension_two():
    # the 2-cycle squares to the identity, so A^2 B^2 = B^2 A^2 trivially
    pair = m2_falsifier_pair()
    env = commuting_falsifier(2)
    lhs = evaluate(pair.lhs, env, _mul)
    rhs = evaluate(pair.rhs, env, _mul)
    assert lhs == rhs


# --- nested composition -------------------------------------------------------


def _levels(n):
    return NestedLevels(
        n,
        tuple(ut_separating_pair(k).identity for k in range(3, n + 1)),
        tuple((k - 1) ** 2 + 1 for k in range(3, n + 1)),
    )


def test_nested_levels_validate_exponents():
    with pytest.raises(ExponentBoundError):
        NestedLevels(3, (ut_separating_pair(3).identity,), (4,))
    with pytest.raises(ValueError):
        NestedLevels(3, (), ())


def test_nested_words_shrink_downward():
    fam = nested_words(_levels(4))
    assert expand(fam["a"][4]) == "a"
    assert expanded_length(fam["a"][3]) > 1
    assert expanded_length(fam["b"][3]) > expanded_length(fam["a"][3])
    # B_k = A_k followed by the substituted right side
    l_a = expanded_length(fam["a"][3])
    for i in (0, l_a // 2, l_a - 1):
        assert letter_at(fam["b"][3], i) == letter_at(fam["a"][3], i)


def test_nested_identity_composes():
    base = m2_falsifier_pair()
    ident = nested_identity(_levels(3), base.lhs, base.rhs)
    l1, l2 = ident.side_lengths()
    assert l1 == l2
    assert first_difference(ident.lhs, ident.rhs) is not None


# --- prime separation ----------------------------------------------------------


def test_prime_separation_requires_prime():
    with pytest.raises(ValueError):
        prime_separation(4)
    with pytest.raises(ValueError):
        prime_separation(1)


def test_prime_two_is_plain_commutativity():
    ps = prime_separation(2)
    assert expand(ps.identity.lhs) == "ab"
    assert expand(ps.identity.rhs) == "ba"
    lhs = evaluate(ps.identity.lhs, ps.witness, _mul)
    rhs = evaluate(ps.identity.rhs, ps.witness, _mul)
    assert lhs != rhs


def test_prime_separation_five_diagnostics():
    ps = prime_separation(5)
    assert [d.k for d in ps.diagnostics] == [4, 3, 2]
    assert all(d.full_cycle for d in ps.diagnostics)
    assert all(d.diagonal_distinct for d in ps.diagnostics)
    # which candidate repaired each level is part of the frozen behaviour
    assert [d.variant for d in ps.diagnostics] == ["plain", "uv+a", "uv"]


def test_prime_separation_five_sides_differ_astronomically_late():
    ps = prime_separation(5)
    assert ps.identity.side_lengths() == (586255422480, 586255422480)
    pos = first_difference(ps.identity.lhs, ps.identity.rhs)
    assert pos == 251237577024
    assert letter_at(ps.identity.lhs, pos) == "b"
    assert letter_at(ps.identity.rhs, pos) == "a"


def test_prime_witness_separates_exactly():
    ps = prime_separation(5)
    lhs = evaluate(ps.identity.lhs, ps.witness, _mul)
    rhs = evaluate(ps.identity.rhs, ps.witness, _mul)
    assert lhs != rhs


def test_prime_three_base_case():
    ps = prime_separation(3)
    assert [d.k for d in ps.diagnostics] == [2]
    lhs = evaluate(ps.identity.lhs, ps.witness, _mul)
    rhs = evaluate(ps.identity.rhs, ps.witness, _mul)
    assert lhs != rhs
