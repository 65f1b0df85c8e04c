//! Certified real arithmetic: mid-rad balls over big integers, enclosures of
//! π and of sines at rational multiples of π, and integer rounding with
//! precision escalation.

mod ball;
mod policy;
mod qdim;
mod trig;

pub use ball::CertifiedReal;
pub use policy::{certified_round, evaluate_integer, Certified, PrecisionPolicy, Rounding};
pub use qdim::{kirby_numerator, qdim_hook, qdim_sine, staircase_norm};
pub use trig::{cos_pi_ratio, pi, sin_pi_ratio, two_sin, SineTable};

pub(crate) use qdim::sine_product;
