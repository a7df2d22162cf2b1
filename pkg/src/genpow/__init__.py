"""Classify finite algebras by how fast generating sets of their powers grow.

A finite algebra is a universe {0..k-1} plus finitely many operation
tables.  Its n-th power either stays generated by polynomially many
tuples or needs exponentially many; this package decides the idempotent
case exactly, runs bounded verification checks in general, and builds
the witness objects that make either verdict auditable.
"""

from .algebra import (
    Algebra,
    OperationTable,
    evaluate,
    first_non_idempotent,
    is_idempotent,
    load_algebra,
    parse_algebra,
    serialize_algebra,
)
from .criteria import (
    DGenEvidence,
    EgpDecision,
    GeneratingSet,
    GrowthProfile,
    GrowthRow,
    SubsetPair,
    SwitchEvidence,
    count_switch_tuples,
    count_switches,
    decide_egp_idempotent,
    equal_pair_evidence,
    equal_pair_generates,
    growth_profile,
    is_r_switchable_at,
    iter_subset_pairs,
    min_generating_size,
    projective_coordinate,
    switch_generation_evidence,
    switch_tuples,
)
from .errors import (
    AlgebraFileError,
    AlgebraSyntaxError,
    BudgetExceededError,
    ElementRangeError,
    GenpowError,
    NotIdempotentError,
    PreconditionError,
    TableDimensionError,
    UniverseMismatchError,
)
from .subpower import (
    TupleSet,
    apply_pointwise,
    closure,
    closure_extend,
    decode_tuple,
    encode_tuple,
    equal_pair_tuples,
    is_full,
)
from .witnesses import (
    CrossEqualityWitness,
    NiceRelation,
    ProjectivityCounterexample,
    cross_equality_witness,
    egp_lower_bound,
    evenize_nice,
    find_blocker_bounded,
    nice_relation_from_nonswitchability,
    preserves_relation,
    projectivity_counterexample,
    subset_pair_relation,
    verify_nice,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "AlgebraFileError",
    "AlgebraSyntaxError",
    "BudgetExceededError",
    "CrossEqualityWitness",
    "DGenEvidence",
    "EgpDecision",
    "ElementRangeError",
    "GeneratingSet",
    "GenpowError",
    "GrowthProfile",
    "GrowthRow",
    "NiceRelation",
    "NotIdempotentError",
    "OperationTable",
    "PreconditionError",
    "ProjectivityCounterexample",
    "SubsetPair",
    "SwitchEvidence",
    "TableDimensionError",
    "TupleSet",
    "UniverseMismatchError",
    "apply_pointwise",
    "closure",
    "closure_extend",
    "count_switch_tuples",
    "count_switches",
    "cross_equality_witness",
    "decide_egp_idempotent",
    "decode_tuple",
    "egp_lower_bound",
    "encode_tuple",
    "equal_pair_evidence",
    "equal_pair_generates",
    "equal_pair_tuples",
    "evaluate",
    "evenize_nice",
    "find_blocker_bounded",
    "first_non_idempotent",
    "growth_profile",
    "is_full",
    "is_idempotent",
    "is_r_switchable_at",
    "iter_subset_pairs",
    "load_algebra",
    "min_generating_size",
    "nice_relation_from_nonswitchability",
    "parse_algebra",
    "preserves_relation",
    "projective_coordinate",
    "projectivity_counterexample",
    "serialize_algebra",
    "subset_pair_relation",
    "switch_generation_evidence",
    "switch_tuples",
    "verify_nice",
]
