"""Everything needed to build, run and certify embezzlement protocols, in one namespace."""
from .construction import (  # noqa: F401
    Construction, apply_C, apply_C_adj, apply_L, apply_L1, apply_L1_adj, apply_L2, apply_L2_adj,
    apply_L_adj, apply_LA, apply_LA_adj, apply_LB, apply_LB_adj, apply_SA, apply_SA_naive, apply_SB,
    apply_UA, apply_UB, bell_block, composite_state, exact_construction, resource_state,
)
from .kernel import Kernel, block, controlled, on_register, on_registers, on_resource  # noqa: F401
from .protocol import (  # noqa: F401
    Bounds, CheckReport, Protocol, WitnessReport, block_unitarity_check, commutation_check,
    embezzles_exactly, explicit_protocol, extract_block, find_commutation_witness, functional_matrix,
    general_protocol, identity_protocol, initial_state, isometry_witness, kernel_unitarity_check,
    naive_swap_protocol, reachable_labels, run_protocol, state_functional, target_state,
    truncation_residuals, verify,
)
