"""Generalized Schur complements, parallel operations and Lebesgue
decompositions of positive semidefinite matrices, with representable
functionals on finite-dimensional *-algebras.

Every closed form has a variational description; :mod:`gschur.variational_oracle`
evaluates those independently and :mod:`gschur.verify` compares the two.
"""

from .completion import (
    CompletionReport,
    IncompleteBlockSystem,
    assemble_block,
    check_block_psd,
    complement,
    completion_report,
    is_completable,
    schur_complement,
)
from .errors import (
    BlockNotPositive,
    DimensionMismatch,
    DomainError,
    GschurError,
    InputError,
    InvalidInput,
    NotCompletable,
    NotDefined,
    NotDominated,
    NotExtensible,
    NotPositive,
    NotRepresentable,
    RouteDisagreement,
)
from .kv_extension import KvExtension, PartialPositiveOperator, Verdict, check_extensibility, krein_von_neumann
from .lebesgue import (
    LebesgueSplit,
    absolutely_continuous,
    identity_relative_decompose,
    lebesgue_decompose,
    limit_route,
    mutually_singular,
)
from .parallel import parallel_difference, parallel_sum, pardiff_exists, weighted_parallel_sum
from .psd_core import (
    DEFAULT_POLICY,
    PsdOperator,
    TolerancePolicy,
    is_psd,
    loewner_leq,
    make_psd,
    pseudo_inverse,
    range_inclusion,
    sqrt_psd,
)
from .star_algebra import (
    FiniteStarAlgebra,
    Functional,
    FunctionalSplit,
    GnsTriple,
    complement_functional,
    gns,
    induced_operator,
    is_representable,
    lebesgue_decompose_functional,
    parallel_diff_functional,
    parallel_sum_functional,
)
from .variational_oracle import OracleEstimate, oracle_inf, oracle_sup

__version__ = "0.1.0"
