"""Multipartite entanglement numerics for centre-of-mass phonon states.

Builds truncated number-basis representations of the entangled state
carried by the centre-of-mass modes of two groups of trapped atoms,
tests whether pure states are entangled across all of their modes, and
computes the minimum bipartite entropy together with linear-entropy
lower bounds on it.
"""

from .fock import ModeRegister, OccupationVector, com_coefficient, enumerate_compositions
from .measures import (
    MeasureReport,
    SplitResult,
    check_mway_entanglement,
    enumerate_splits,
    min_bipartite_entropy,
    min_bipartite_entropy_bound,
    mixture_density_operator,
    npt_min_eigenvalue,
)
from .reduce import (
    CapacityError,
    DensityOperator,
    SplitSpec,
    com_split_purity,
    linear_entropy,
    partial_trace,
    purity,
    split_entropy,
    von_neumann_entropy,
)
from .states import (
    PureState,
    SqueezedPairSpec,
    StateFileError,
    StateNormError,
    basis_state,
    com_squeezed_state,
    generalized_ghz,
    product_state,
    read_state_file,
    write_state_file,
)
from .truncation import BudgetInfeasibleError, TruncationBudget, select_nmax, tail_weight

__version__ = "0.1.0"

__all__ = [
    "BudgetInfeasibleError",
    "CapacityError",
    "DensityOperator",
    "MeasureReport",
    "ModeRegister",
    "OccupationVector",
    "PureState",
    "SplitResult",
    "SplitSpec",
    "SqueezedPairSpec",
    "StateFileError",
    "StateNormError",
    "TruncationBudget",
    "basis_state",
    "check_mway_entanglement",
    "com_coefficient",
    "com_split_purity",
    "com_squeezed_state",
    "enumerate_compositions",
    "enumerate_splits",
    "generalized_ghz",
    "linear_entropy",
    "min_bipartite_entropy",
    "min_bipartite_entropy_bound",
    "mixture_density_operator",
    "npt_min_eigenvalue",
    "partial_trace",
    "product_state",
    "purity",
    "read_state_file",
    "select_nmax",
    "split_entropy",
    "tail_weight",
    "von_neumann_entropy",
    "write_state_file",
]
