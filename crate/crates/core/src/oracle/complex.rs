use num_bigint::BigInt;

use crate::arith::{cos_pi_ratio, sin_pi_ratio, CertifiedReal};

/// A rectangular complex ball `re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: CertifiedReal,
    pub im: CertifiedReal,
}

impl ComplexBall {
    pub fn zero(precision: u32) -> Self {
        Self {
            re: CertifiedReal::zero(precision),
            im: CertifiedReal::zero(precision),
        }
    }

    /// exp(iπk/m)
    pub fn root_of_unity(k: i64, m: i64, precision: u32) -> Self {
        Self {
            re: cos_pi_ratio(k, m, precision),
            im: sin_pi_ratio(k, m, precision),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self {
            re: self.re.mul_int(k),
            im: self.im.mul_int(k),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// |z|²
    pub fn norm_sqr(&self) -> CertifiedReal {
        self.re.square().add(&self.im.square())
    }

    /// Division; `None` unless the divisor is certified nonzero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let den = other.norm_sqr();
        let num = self.mul(&other.conj());
        Some(Self {
            re: num.re.div(&den)?,
            im: num.im.div(&den)?,
        })
    }
}
