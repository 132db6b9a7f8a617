"""Exact max-plus matrix semigroups, their separating identities, and the
rank-4 plactic monoid with its tropical matrix representation."""

from .tropical import NEG_INF, CompoundDigraph, Permutation, TropMatrix, tadd, tmul
from .words import (
    Concat,
    Identity,
    Lit,
    Power,
    Subst,
    WordExpr,
    as_expr,
    cat,
    evaluate,
    expand,
    expanded_length,
    first_difference,
    letter_at,
    power,
    substitute,
)
from .constructions import (
    FactorWitness,
    NestedLevels,
    PrimeSeparation,
    RepairCapExceeded,
    SeparatingPair,
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
from .plactic import (
    Tableau,
    from_word,
    knuth_closure,
    plactic_identity_lift,
    plactic_mul,
    rho,
    schensted_insert,
    subset_order,
)
from .verify import (
    SamplerConfig,
    VerificationReport,
    WitnessFailed,
    check_falsification,
    check_plactic_satisfaction,
    check_satisfaction,
    oracle_cross_checks,
    sample_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "NEG_INF", "CompoundDigraph", "Permutation", "TropMatrix", "tadd", "tmul",
    "Concat", "Identity", "Lit", "Power", "Subst", "WordExpr", "as_expr",
    "cat", "evaluate", "expand", "expanded_length", "first_difference",
    "letter_at", "power", "substitute",
    "FactorWitness", "NestedLevels", "PrimeSeparation", "RepairCapExceeded",
    "SeparatingPair", "chain_word", "commuting_falsifier",
    "covering_word_identity", "factor_witness", "full_matrix_identity_i",
    "full_matrix_identity_ii", "m2_falsifier_pair", "m3_identity",
    "m4_witness", "nested_identity", "nested_words", "prime_separation",
    "ut_separating_pair",
    "Tableau", "from_word", "knuth_closure", "plactic_identity_lift",
    "plactic_mul", "rho", "schensted_insert", "subset_order",
    "SamplerConfig", "VerificationReport", "WitnessFailed",
    "check_falsification", "check_plactic_satisfaction", "check_satisfaction",
    "oracle_cross_checks", "sample_matrix",
    "__version__",
]
