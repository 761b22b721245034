//! Exact laws of random sums and their anti-concentration functionals.

mod dist;
mod levy;
mod sums;
mod two_step;

pub use dist::{DistTable, ExactProb, Mode, Probability};
pub use levy::{levy_concentration, levy_from_outcomes, levy_monte_carlo, LevyEstimate, LevyMethod};
pub use sums::{
    atom_probability, atom_probability_mod_p, auto_mode, signed_sum_distribution,
    signed_sum_distribution_mod_p, slice_sum_distribution, RANGE_CAP,
};
pub use two_step::{two_step_row_atom, TwoStepAtom};

pub(crate) use sums::binomial_u128;
