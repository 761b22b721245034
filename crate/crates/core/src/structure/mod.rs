//! Diophantine and inverse Littlewood–Offord machinery.

mod bounds;
mod lcd;
mod rkstar;
mod witness;

pub use bounds::{
    b_set_membership, check_halasz_constraints, counting_bound, halasz_bound, halasz_rhs, BSetParams,
    HalaszParams, Membership, SearchBudget,
};
pub use lcd::{
    classify_against, classify_gamma, is_admissible, lattice_distance, lcd_estimate, GammaClass, LcdParams,
    LcdResult, LcdStatus, LCD_WORK_CAP,
};
pub use rkstar::{
    enough_distinct, r_k_star, r_k_star_brute, r_k_star_ie, r_k_star_trivial_bound, BRUTE_FORCE_CAP, IE_MAX_K,
};
pub use witness::{
    compute_t_v, compute_t_v_profile, is_witnessing_pair, row_score, witnessing_pair, RowScore, StructureReport,
};
