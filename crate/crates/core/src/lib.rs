//! Exact type-A Verlinde numbers and their spin and cohomological refinements.
//!
//! All results are integers. Genus-one values are computed with exact
//! rationals; higher genera go through certified ball arithmetic and are
//! rounded only once an enclosure isolates a single integer.

pub mod alcove;
pub mod arith;
pub mod error;
pub mod oracle;
pub mod surfaces;
pub mod surgery;
pub mod verlinde;

pub use alcove::{AlcoveContext, Cell, OrbitInfo, Partition};
pub use arith::{Certified, CertifiedReal, PrecisionPolicy};
pub use error::{Error, Result};
