from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from tropid.tropical import (
    NEG_INF,
    CompoundDigraph,
    Permutation,
    TropMatrix,
    longest_loopless_path_length,
    tadd,
    tmul,
)

scalars = st.one_of(st.none(), st.integers(-50, 50))


def entries(dim):
    return st.lists(
        st.lists(st.one_of(st.none(), st.integers(-9, 9)), min_size=dim, max_size=dim),
        min_size=dim,
        max_size=dim,
    )


def matrices(dim):
    return entries(dim).map(TropMatrix.from_rows)


def ut_matrices(dim):
    def mask(rows):
        return TropMatrix.from_rows(
            [[v if j >= i else None for j, v in enumerate(row)]
             for i, row in enumerate(rows)]
        )

    return entries(dim).map(mask)


# --- semiring scalars --------------------------------------------------------


@given(scalars, scalars, scalars)
def test_tadd_is_associative_commutative(x, y, z):
    assert tadd(tadd(x, y), z) == tadd(x, tadd(y, z))
    assert tadd(x, y) == tadd(y, x)


@given(scalars)
def test_neg_inf_is_additive_identity(x):
    assert tadd(x, NEG_INF) == x
    assert tmul(x, NEG_INF) is NEG_INF


@given(scalars, scalars, scalars)
def test_tmul_distributes_over_tadd(x, y, z):
    assert tmul(x, tadd(y, z)) == tadd(tmul(x, y), tmul(x, z))


# --- matrices ----------------------------------------------------------------


def test_matrix_validation():
    with pytest.raises(ValueError):
        TropMatrix.from_rows([[0, 1]])  # not square
    with pytest.raises(TypeError):
        TropMatrix.from_rows([[0.5]])
    with pytest.raises(TypeError):
        TropMatrix.from_rows([[True]])  # bools are not weights
    with pytest.raises(ValueError):
        TropMatrix.from_rows([])


def test_identity_and_diag():
    e = TropMatrix.identity(3)
    d = TropMatrix.diag([1, 2, 3])
    assert e.at(1, 1) == 0 and e.at(1, 2) is NEG_INF
    assert (e @ d) == d == (d @ e)
    assert d.diagonal() == (1, 2, 3)
    assert d.is_diagonal() and d.is_upper_triangular()
    assert TropMatrix.diag([2, 2]).is_scaled_identity()
    assert not TropMatrix.diag([0, 1]).is_scaled_identity()


@given(matrices(3), matrices(3), matrices(3))
@settings(max_examples=60)
def test_matmul_associative(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


@given(ut_matrices(3), ut_matrices(3))
def test_triangular_diag_commutes(a, b):
    # on triangular matrices the product diagonal ignores the order
    assert (a @ b).diagonal() == (b @ a).diagonal()


@given(matrices(3), matrices(3))
def test_full_trace_commutes(a, b):
    # entrywise diagonals differ in general, the tropical trace does not
    def trace(m):
        best = None
        for v in m.diagonal():
            best = tadd(best, v)
        return best

    assert trace(a @ b) == trace(b @ a)


@given(matrices(3), st.integers(1, 6))
@settings(max_examples=40)
def test_pow_matches_repeated_product(m, k):
    expected = m
    for _ in range(k - 1):
        expected = expected @ m
    assert m.pow(k) == expected


def test_pow_rejects_nonpositive():
    with pytest.raises(ValueError):
        TropMatrix.identity(2).pow(0)


def test_permutation_basics():
    c = Permutation.cycle(4)
    assert c(1) == 2 and c(4) == 1
    assert c.is_full_cycle()
    assert c.then(c).cycle_type() == (2, 2)
    assert Permutation.identity(3).cycle_type() == (1, 1, 1)
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))


def test_from_permutation_and_underlying():
    p = Permutation.cycle(3)
    m = TropMatrix.from_permutation(p, weight=2)
    assert m.at(1, 2) == 2 and m.at(1, 1) is NEG_INF
    assert m.underlying_permutation() == p
    assert m.is_invertible()
    assert TropMatrix.from_rows([[0, 0], [NEG_INF, 0]]).underlying_permutation() is None


def test_restrict_is_principal_submatrix():
    m = TropMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    s = m.restrict([1, 3])
    assert s.rows == ((1, 3), (7, 9))
    with pytest.raises(ValueError):
        m.restrict([3, 1])
    with pytest.raises(ValueError):
        m.restrict([0, 2])


@given(matrices(3))
def test_matrix_json_round_trip(m):
    assert TropMatrix.from_json(m.to_json()) == m


def test_matrix_json_rejects_bad_entries():
    with pytest.raises(ValueError):
        TropMatrix.from_json({"dim": 1, "entries": [["oops"]]})
    with pytest.raises(ValueError):
        TropMatrix.from_json({"dim": 2, "entries": [[0, 0]]})


# --- digraph view ------------------------------------------------------------


def test_word_values_agrees_with_matrix_product():
    a = TropMatrix.from_rows([[0, 2, NEG_INF], [NEG_INF, 1, 0], [NEG_INF, NEG_INF, -1]])
    b = TropMatrix.from_rows([[1, NEG_INF, 3], [NEG_INF, 0, 0], [NEG_INF, NEG_INF, 2]])
    g = CompoundDigraph.from_matrices(a, b)
    for word, prod in (("a", a), ("b", b), ("ab", a @ b), ("bba", b @ b @ a)):
        assert g.word_values(word) == prod


def test_max_weight_labeled_path_single_entry():
    a = TropMatrix.from_rows([[0, 1], [NEG_INF, 0]])
    b = TropMatrix.from_rows([[-1, 2], [NEG_INF, 1]])
    g = CompoundDigraph.from_matrices(a, b)
    assert g.max_weight_labeled_path("ab", 1, 2) == (a @ b).at(1, 2)
    assert g.max_weight_labeled_path("a", 2, 1) is NEG_INF
    with pytest.raises(ValueError):
        g.max_weight_labeled_path("", 1, 1)
    with pytest.raises(ValueError):
        g.max_weight_labeled_path("a", 0, 1)


def test_longest_loopless_path_length():
    # strict upper triangular chain 1 -> 2 -> 3
    m = TropMatrix.from_rows(
        [[NEG_INF, 0, NEG_INF], [NEG_INF, NEG_INF, 0], [NEG_INF, NEG_INF, NEG_INF]]
    )
    assert longest_loopless_path_length(m) == 2
    assert longest_loopless_path_length(TropMatrix.identity(4)) == 0
