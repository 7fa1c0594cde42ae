//! Security bounds for the hiding schemes.
//!
//! Every value that is a bound (rather than an achievable rate) comes with an
//! independent route in the tests: the linear program against the closed
//! form, the `L_p` recursion against the Stirling sum, the Pauli expansion
//! against dense traces.

pub mod info;
pub mod lp;
pub mod multi;
pub mod single;
pub mod tau;
pub mod theorem1;

pub use info::{
    binary_entropy, channel_mutual_info, channel_mutual_info_by_outcome, decoding_advantage, mutual_info_cap, InfoCap,
};
pub use lp::{LinearProgram, LpSolution, LP_TOL};
pub use multi::{
    asymptotic_n, l_recursion, l_stirling, multi_bit_bound, multi_bit_contours, required_n, stirling2_table,
    ContourPoint, MultiBitBound,
};
pub use single::{
    bell_diag_lp, single_bit_bound, sum_objective, unit_grid, werner_feasible_region, werner_kink, werner_max_p11,
    BellDiagPovm, RegionPoint, SingleBitBound, WernerPovm,
};
pub use tau::{
    emin_lower_bound, tau_max_sum, CutPolicy, tau_max_sum_cutting_plane, tau_multisets, tau_overlaps, tau_ppt_region,
    tau_repetition_bound, tau_symmetrized_basis, TauPovmParam, TauRegionPoint, TauSolve,
};
pub use theorem1::{
    best_pauli_distinguisher, pauli_coefficients, theorem1_curve, PauliCoeffs, PauliDistinguisher,
};
