"""Mixed quantum-classical linear stochastic systems: realizability and synthesis.

The package checks whether state-space models preserve canonical commutation
relations, rewrites general-form models into the canonical standard form,
splits realizable systems into a quantum subsystem, a classical subsystem and
a static measurement network, and verifies every construction numerically.
"""

from .sysmodel import (
    J2,
    Dimensions,
    GeneralSystem,
    QuantumOnlySystem,
    StandardSystem,
    StructureMatrices,
    diag_j,
    make_structure,
    validate,
)
from .matkit import (
    ItoFactorization,
    PzkvDecomposition,
    SkewCanonicalResult,
    SymplecticCompletion,
    ito_factorize,
    minnorm_right_solve,
    pzkv_decompose,
    random_symplectic,
    rank_tol,
    skew_canonical,
    symplectic_complete,
)
from .realizability import (
    ConditionResult,
    RealizabilityReport,
    check_general,
    check_quantum,
    check_standard,
    check_standard_partitioned,
    commutator_trajectory,
    nondemolition_residual,
)
from .transform import (
    TransformWitness,
    to_standard,
    transfer_equiv_check,
    transfer_eval,
)
from .augment import AugmentedSystem, ReducedSystem, augment, reduce
from .synthesis import (
    ClassicalSubsystem,
    NotRealizableError,
    QuantumSubsystem,
    Realization,
    close_loop,
    generate_realizable,
    synthesize,
)
from .moments import MomentTrajectory, simulate, skew_drift

__version__ = "0.1.0"
