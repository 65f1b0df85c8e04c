//! Verlinde numbers, their refinements, and the identities tying them together.

mod admissible;
mod checks;
mod engine;
mod epsilon;
mod reduced;
mod refined;
mod structure;

pub use admissible::{
    coho_admissible_su, coho_admissible_with_step, pu_spin_admissible, spin_admissible_su,
    spin_admissible_with_step, spin_criterion_closed_form, Admissibility,
};
pub use checks::{level_rank_check, split_check, LevelRankReport, LevelRankRow, SplitReport};
pub use engine::{pu_prefactor, su_prefactor, TermCache, WeightedSum};
pub use epsilon::{epsilon, epsilon_coho, EpsilonWeight};
pub use reduced::{
    alpha_beta, alpha_beta_with, pu_orbit_info, AlphaBeta, AmbiguousPrimes, DottedWeight, PuOrbitInfo,
};
pub use refined::{
    coho_verlinde, pu_spin_verlinde, pu_verlinde, spin_verlinde, spin_verlinde_with_step, verlinde,
    verlinde_sum, Flavor, Refinement,
};
pub use structure::SpinStructure;
