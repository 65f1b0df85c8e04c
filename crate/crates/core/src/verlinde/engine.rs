//! Evaluation of sums of the shape
//!
//! ```text
//! scale · Σ_λ w_λ · (P / S_λ)^{g−1},   S_λ = ∏_{i<j} (2 sin((λ_i − i − λ_j + j)π/(N+K)))²
//! ```
//!
//! with rational weights `w_λ`. Every Verlinde-type number in this crate is
//! one of these.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::alcove::{AlcoveContext, Partition};
use crate::arith::{
    evaluate_integer, sine_product, Certified, CertifiedReal, PrecisionPolicy, SineTable,
};
use crate::error::{Error, Result};

/// Per-precision enclosures of `(P / S_λ)^e` for every alcove weight,
/// shared between evaluations with the same context and prefactor `P`.
pub struct TermCache {
    ctx: AlcoveContext,
    prefactor: BigInt,
    weights: Vec<Partition>,
    powers: Mutex<HashMap<(u32, i64), Arc<Vec<CertifiedReal>>>>,
}

impl TermCache {
    pub fn new(ctx: &AlcoveContext, prefactor: BigInt) -> Self {
        Self {
            ctx: *ctx,
            prefactor,
            weights: ctx.weights(),
            powers: Mutex::new(HashMap::new()),
        }
    }

    pub fn context(&self) -> &AlcoveContext {
        &self.ctx
    }

    pub fn prefactor(&self) -> &BigInt {
        &self.prefactor
    }

    fn powers(&self, bits: u32, exponent: i64) -> Arc<Vec<CertifiedReal>> {
        if let Some(hit) = self.powers.lock().expect("cache lock").get(&(bits, exponent)) {
            return hit.clone();
        }
        let table = SineTable::new(self.ctx.shifted_level(), bits);
        let p = CertifiedReal::from_integer(self.prefactor.clone(), bits);
        let values: Vec<CertifiedReal> = self
            .weights
            .par_iter()
            .map(|w| {
                let s = sine_product(w, &self.ctx, &table).square();
                p.div(&s)
                    .and_then(|base| base.powi(exponent))
                    .expect("sine products of alcove weights are nonzero")
            })
            .collect();
        let values = Arc::new(values);
        self.powers
            .lock()
            .expect("cache lock")
            .insert((bits, exponent), values.clone());
        values
    }
}

/// `scale · Σ w_λ (P/S_λ)^{g−1}` over alcove indices with nonzero weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSum {
    pub genus: u32,
    pub scale: BigRational,
    /// `(index into AlcoveContext::weights, w_λ)`, sorted by index.
    pub terms: Vec<(usize, BigRational)>,
}

impl WeightedSum {
    /// Builds a sum from possibly repeated or zero terms.
    pub fn new(genus: u32, scale: BigRational, terms: impl IntoIterator<Item = (usize, BigRational)>) -> Self {
        let mut merged: Vec<(usize, BigRational)> = Vec::new();
        let mut sorted: Vec<_> = terms.into_iter().collect();
        sorted.sort_by_key(|(i, _)| *i);
        for (i, w) in sorted {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += w,
                _ => merged.push((i, w)),
            }
        }
        merged.retain(|(_, w)| !w.is_zero());
        Self {
            genus,
            scale,
            terms: merged,
        }
    }

    /// The exact genus-one value `scale · Σ w_λ`.
    pub fn exact_genus_one(&self) -> Result<BigInt> {
        if self.genus != 1 {
            return Err(Error::InvalidParameters(format!(
                "exact path is only available at genus 1, not {}",
                self.genus
            )));
        }
        let total: BigRational = self.terms.iter().map(|(_, w)| w).sum::<BigRational>() * &self.scale;
        if !total.is_integer() {
            return Err(Error::NonIntegral(total.to_string()));
        }
        Ok(total.to_integer())
    }

    /// Certified evaluation through ball arithmetic, at any genus.
    pub fn certified(&self, cache: &TermCache, policy: &PrecisionPolicy) -> Result<Certified> {
        if self.terms.is_empty() {
            return Ok(Certified {
                value: BigInt::zero(),
                precision_bits: Some(policy.initial_bits),
            });
        }
        let exponent = i64::from(self.genus) - 1;
        let exact_weights = self.terms.iter().all(|(_, w)| w.is_one()) && self.scale.is_one();
        evaluate_integer(policy, |bits| {
            let powers = cache.powers(bits, exponent);
            let mut acc = CertifiedReal::zero(bits);
            for (i, w) in &self.terms {
                let term = if exact_weights {
                    powers[*i].clone()
                } else {
                    powers[*i].mul_rational(w)
                };
                acc = acc.add(&term);
            }
            Ok(if self.scale.is_one() {
                acc
            } else {
                acc.mul_rational(&self.scale)
            })
        })
    }

    /// Exact at genus 1, certified otherwise.
    pub fn evaluate(&self, cache: &TermCache, policy: &PrecisionPolicy) -> Result<Certified> {
        if self.genus == 1 {
            self.exact_genus_one().map(Certified::exact)
        } else {
            self.certified(cache, policy)
        }
    }
}

/// N·(N+K)^{N−1}, the prefactor of the unrefined and SU-refined sums.
pub fn su_prefactor(ctx: &AlcoveContext) -> BigInt {
    BigInt::from(ctx.rank()) * BigInt::from(ctx.shifted_level()).pow(ctx.rank() - 1)
}

/// d·(N+K)^{N−1}, the prefactor of the PU-refined sum.
pub fn pu_prefactor(ctx: &AlcoveContext) -> BigInt {
    BigInt::from(ctx.gcd()) * BigInt::from(ctx.shifted_level()).pow(ctx.rank() - 1)
}

pub(crate) fn require_nonnegative(value: Certified, what: impl FnOnce() -> String) -> Result<Certified> {
    if value.value.is_negative() {
        return Err(Error::Negative(format!("{} = {}", what(), value.value)));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn terms_are_merged_and_sorted() {
        let s = WeightedSum::new(1, q(1, 1), [(2, q(1, 2)), (0, q(1, 1)), (2, q(1, 2)), (1, q(0, 1))]);
        assert_eq!(s.terms, vec![(0, q(1, 1)), (2, q(1, 1))]);
        assert_eq!(s.exact_genus_one().unwrap(), BigInt::from(2));
    }

    #[test]
    fn exact_path_rejects_fractions() {
        let s = WeightedSum::new(1, q(1, 3), [(0, q(1, 1))]);
        assert!(matches!(s.exact_genus_one(), Err(Error::NonIntegral(_))));
        let s = WeightedSum::new(2, q(1, 1), [(0, q(1, 1))]);
        assert!(s.exact_genus_one().is_err());
    }

    #[test]
    fn ball_path_agrees_at_genus_one() {
        let ctx = AlcoveContext::new(3, 4).unwrap();
        let cache = TermCache::new(&ctx, su_prefactor(&ctx));
        let n = ctx.alcove_size() as usize;
        let s = WeightedSum::new(1, q(1, 1), (0..n).map(|i| (i, q(1, 1))));
        let policy = PrecisionPolicy::default();
        let balls = s.certified(&cache, &policy).unwrap();
        assert_eq!(balls.value, BigInt::from(n));
        assert_eq!(s.evaluate(&cache, &policy).unwrap(), Certified::exact(BigInt::from(n)));
    }
}
