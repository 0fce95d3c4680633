"""rextosc: rationally-extended oscillator potentials, their spectra, and the
ladder operators that mix the added levels into the rest, all verified by
exact rational arithmetic against an independent numerical layer."""

from .exactmath import (
    Poly,
    Rat,
    RatFun,
    count_real_roots,
    log_second_derivative,
    poly_gcd,
    poly_wronskian,
    ratfun_sub_constant_check,
    sturm_sequence,
)
from .quasirational import (
    QuasiRat,
    qr_differentiate,
    qr_is_zero,
    qr_ratio_constant,
    qr_wronskian,
)
from .families import (
    AdmissibilityError,
    FamilyTag,
    IndexList,
    Potential,
    Seed,
    base_potential,
    hermite,
    ho_family,
    laguerre,
    pseudo_hermite,
    rho_family,
    seed_phi_ho,
    seed_phi_rho,
    seed_phi_tilde_rho,
    seed_psi_ho,
    seed_psi_rho,
)
from .extension import (
    AdmissibilityReport,
    ExtendedPotential,
    adding_deleting_shift,
    build_state_adding,
    build_state_deleting,
    build_tilde_rho,
    check_admissible,
    expected_shift,
)
from .ladder import (
    BaseLadder,
    DarbouxMap,
    LadderOperator,
    StateFactory,
    apply_hamiltonian,
    build_combined_ladder,
    build_transferred_ladder,
    darboux_apply,
    eigenvalue_of,
    extended_state,
    structure_polynomial,
    verify_action_coefficients,
    verify_pha,
    verify_transferred_singlets,
    verify_zero_modes,
    zero_mode_labels,
    action_coefficient_squared,
)
from .numerics import (
    Grid,
    SolverError,
    SpectrumTable,
    default_grid,
    evaluate,
    fd_eigenvalues,
    quadrature_norm2,
    spectrum_table,
)

__version__ = "0.1.0"
