"""Connected even factors with degrees 2 or 4 in graph squares.

Library layout:

* ``graph``       immutable simple graphs, parsing, squares, connectivity
* ``structure``   block-cut trees, the leaf/bridge taxonomy, block ordering
* ``hamilton``    constrained Hamiltonian cycles in block squares
* ``factor``      the certified factor constructions
* ``verify``      independent checking, exact oracle, hostile family
* ``smallgraphs`` exhaustive small-graph enumeration up to isomorphism
* ``corpus``      seeded random host generators
* ``cli``         command-line front end (also exposed as ``squarefactor``)
"""

from .errors import (
    ArgumentError,
    BudgetExceededError,
    FormatError,
    InternalInvariantError,
    PreconditionError,
    SquareFactorError,
)
from .factor import (
    BadLeafPlan,
    FactorCertificate,
    build_factor,
    check_lemma_preconditions,
    check_theorem_preconditions,
    lemma_factor,
    plan_bad_leaves,
)
from .graph import (
    Graph,
    distance,
    is_connected,
    is_essentially_two_edge_connected,
    is_two_connected,
    is_two_edge_connected,
    parse_edge_list,
    serialize_edge_list,
    square,
)
from .hamilton import (
    ConstrainedCycleProblem,
    CycleWitness,
    constrained_hamiltonian_cycle,
    make_problem,
)
from .structure import (
    BlockCutTree,
    BlockOrdering,
    StructureClassification,
    classify,
    decompose,
    order_blocks,
    strip,
)
from .verify import (
    CounterexampleDescriptor,
    CountingProof,
    ExistsResult,
    SearchBudget,
    VerificationReport,
    counting_certificate,
    degree4_variant_check,
    exists_factor,
    gen_counterexample,
    verify_certificate,
    verify_factor,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "BadLeafPlan",
    "BlockCutTree",
    "BlockOrdering",
    "BudgetExceededError",
    "ConstrainedCycleProblem",
    "CounterexampleDescriptor",
    "CountingProof",
    "CycleWitness",
    "ExistsResult",
    "FactorCertificate",
    "FormatError",
    "Graph",
    "InternalInvariantError",
    "PreconditionError",
    "SearchBudget",
    "SquareFactorError",
    "StructureClassification",
    "VerificationReport",
    "build_factor",
    "check_lemma_preconditions",
    "check_theorem_preconditions",
    "classify",
    "constrained_hamiltonian_cycle",
    "counting_certificate",
    "decompose",
    "degree4_variant_check",
    "distance",
    "exists_factor",
    "gen_counterexample",
    "is_connected",
    "is_essentially_two_edge_connected",
    "is_two_connected",
    "is_two_edge_connected",
    "lemma_factor",
    "make_problem",
    "order_blocks",
    "parse_edge_list",
    "plan_bad_leaves",
    "serialize_edge_list",
    "square",
    "strip",
    "verify_certificate",
    "verify_factor",
]
