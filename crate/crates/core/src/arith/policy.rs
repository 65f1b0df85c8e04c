use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use super::ball::CertifiedReal;
use crate::error::{Error, Result};

/// Working-precision schedule for certified evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub initial_bits: u32,
    pub max_bits: u32,
    /// Largest enclosure radius accepted when rounding to an integer.
    pub integrality_gap: f64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            initial_bits: 128,
            max_bits: 8192,
            integrality_gap: 0.25,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(initial_bits: u32, max_bits: u32, integrality_gap: f64) -> Result<Self> {
        let policy = Self {
            initial_bits,
            max_bits,
            integrality_gap,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial_bits == 0 || self.initial_bits > self.max_bits {
            return Err(Error::InvalidParameters(format!(
                "precision policy needs 0 < initial_bits ≤ max_bits (got {} and {})",
                self.initial_bits, self.max_bits
            )));
        }
        if !(self.integrality_gap > 0.0 && self.integrality_gap < 0.5) {
            return Err(Error::InvalidParameters(format!(
                "integrality gap must lie in (0, 0.5), got {}",
                self.integrality_gap
            )));
        }
        Ok(())
    }

    fn gap(&self) -> BigRational {
        BigRational::from_f64(self.integrality_gap).expect("finite gap")
    }

    /// Precisions tried in order: initial, doubled, …, capped at `max_bits`.
    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let max = self.max_bits;
        let mut next = Some(self.initial_bits);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current >= max {
                None
            } else {
                Some(current.saturating_mul(2).min(max))
            };
            Some(current)
        })
    }
}

/// Outcome of rounding one enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rounding {
    /// The enclosure isolates exactly this integer.
    Integer(BigInt),
    /// The radius is not below the integrality gap; recompute at higher precision.
    NeedsPrecision,
}

/// Rounds an enclosure of a value known to be an integer.
///
/// Fails with [`Error::NonIntegral`] when a tight enclosure contains no
/// integer at all.
pub fn certified_round(x: &CertifiedReal, policy: &PrecisionPolicy) -> Result<Rounding> {
    if x.radius() >= policy.gap() {
        return Ok(Rounding::NeedsPrecision);
    }
    // radius < 1/2: the ball holds at most one integer
    let (lo, hi) = x.integer_range();
    if lo <= hi {
        debug_assert_eq!(lo, hi);
        Ok(Rounding::Integer(lo))
    } else {
        Err(Error::NonIntegral(format!("{x}")))
    }
}

/// An integer certified from an enclosure, with the precision that isolated it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified {
    pub value: BigInt,
    /// `None` when the value came from exact rational arithmetic.
    pub precision_bits: Option<u32>,
}

impl Certified {
    pub fn exact(value: BigInt) -> Self {
        Self {
            value,
            precision_bits: None,
        }
    }
}

/// Re-evaluates `f` at increasing precision until its enclosure isolates an integer.
pub fn evaluate_integer<F>(policy: &PrecisionPolicy, mut f: F) -> Result<Certified>
where
    F: FnMut(u32) -> Result<CertifiedReal>,
{
    policy.validate()?;
    for bits in policy.schedule() {
        let x = f(bits)?;
        if let Rounding::Integer(value) = certified_round(&x, policy)? {
            return Ok(Certified {
                value,
                precision_bits: Some(bits),
            });
        }
    }
    Err(Error::PrecisionExhausted {
        max_bits: policy.max_bits,
    })
}
