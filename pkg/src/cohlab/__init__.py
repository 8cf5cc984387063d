"""cohlab: an exact Fock-space laboratory for boson and fermion coherence.

Small multimode quantum fields represented exactly: ladder operators,
displaced and coherent states, mode couplers, chaotic mixtures, spatial
correlators, and executable checks of the four coherence criteria.
"""

__version__ = "0.1.0"

from .chaotic import (
    ChaoticModeSpec,
    chaotic_first_order,
    chaotic_mixture,
    chaotic_nth_order,
    permanent,
)
from .coherent import (
    EpsilonReport,
    PermutationSpec,
    boson_coherent,
    boson_coherent_product,
    epsilon_residual,
    fermion_displaced,
    ordered_amplitude,
    permutation_averaged_state,
    permutation_ordered_state,
)
from .correlators import (
    CorrelatorResult,
    ModeBasis,
    PermutationOrderedSource,
    PointTuple,
    coherence_grid,
    correlator,
    degree_of_coherence,
    field_annihilate,
    first_order_closed_form,
    pair_coincidence_grid,
)
from .coupler import (
    CouplerSpec,
    SchmidtReport,
    couple,
    loss_channel,
    product_state_residual,
)
from .checks import (
    CheckReport,
    best_rank_one_fit,
    check_boson_equivalences,
    check_coincidence_vanishing,
    check_factorization_impossibility,
    check_mixture_order_invariance,
    check_pair_annihilation,
    check_single_particle_support,
    run_standard_suite,
)
from .fock import (
    BasisSet,
    GeneratorSpec,
    GeneratorTerm,
    StateVector,
    Statistics,
    TermKind,
    WeightedMixture,
    apply_annihilation,
    apply_creation,
    apply_generator_exponential,
    basis_vector,
    displacement_generator,
    enumerate_basis,
    inner_product,
    number_sector_weights,
    tensor_product,
    vacuum_state,
)
