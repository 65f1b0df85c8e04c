use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::admissible::{coho_admissible_with_step, pu_spin_admissible, spin_admissible_with_step};
use super::engine::{pu_prefactor, require_nonnegative, su_prefactor, TermCache, WeightedSum};
use super::epsilon::{epsilon, epsilon_coho};
use super::reduced::{alpha_beta, pu_orbit_table, AlphaBeta};
use super::structure::SpinStructure;
use crate::alcove::{orbit_table, AlcoveContext};
use crate::arith::{Certified, PrecisionPolicy};
use crate::error::{Error, Result};

/// Which refinement of the Verlinde number to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "flavor", rename_all = "snake_case")]
pub enum Flavor {
    /// SU(N) spin refinement for the order-N/j group; modulus N/j.
    Spin { step_power: u32 },
    /// SU(N) cohomological refinement; modulus N/j.
    Coho { step_power: u32 },
    /// PU(N) spin refinement; modulus d.
    PuSpin,
}

#[derive(Debug, Clone, Copy)]
struct Label {
    index: usize,
    orbit_size: u32,
    stab_order: u32,
}

/// Orbit data and prefactors of one refinement, reusable across structures σ.
pub struct Refinement {
    flavor: Flavor,
    modulus: u32,
    scale: BigRational,
    labels: Vec<Label>,
    cache: TermCache,
}

impl Refinement {
    pub fn new(ctx: &AlcoveContext, flavor: Flavor) -> Result<Self> {
        match flavor {
            Flavor::Spin { step_power } => {
                let adm = spin_admissible_with_step(ctx, step_power).ok_or_else(|| {
                    Error::Inadmissible(format!("{ctx} has no spin refinement with step power {step_power}"))
                })?;
                Self::su(ctx, flavor, step_power, adm.modulus)
            }
            Flavor::Coho { step_power } => {
                let adm = coho_admissible_with_step(ctx, step_power).ok_or_else(|| {
                    Error::Inadmissible(format!(
                        "{ctx} has no cohomological refinement with step power {step_power}"
                    ))
                })?;
                Self::su(ctx, flavor, step_power, adm.modulus)
            }
            Flavor::PuSpin => Self::pu_spin(ctx, &alpha_beta(ctx)),
        }
    }

    fn su(ctx: &AlcoveContext, flavor: Flavor, step_power: u32, modulus: u32) -> Result<Self> {
        let labels = orbit_table(ctx, step_power)?
            .iter()
            .enumerate()
            .map(|(index, o)| Label {
                index,
                orbit_size: o.orbit_size,
                stab_order: o.stab_order,
            })
            .collect();
        Ok(Self {
            flavor,
            modulus,
            scale: BigRational::one(),
            labels,
            cache: TermCache::new(ctx, su_prefactor(ctx)),
        })
    }

    /// The PU spin refinement for an explicit splitting d = αβ.
    pub fn pu_spin(ctx: &AlcoveContext, ab: &AlphaBeta) -> Result<Self> {
        if !pu_spin_admissible(ctx) {
            return Err(Error::Inadmissible(format!(
                "{ctx}: the PU spin refinement needs d even with N' and K' odd"
            )));
        }
        let ab = AlphaBeta::new(ctx, ab.alpha, ab.beta)?;
        let labels = pu_orbit_table(ctx, &ab)?
            .into_iter()
            .enumerate()
            .flat_map(|(index, row)| {
                row.into_iter().map(move |o| Label {
                    index,
                    orbit_size: o.orbit_size,
                    stab_order: o.stab_order,
                })
            })
            .collect();
        Ok(Self {
            flavor: Flavor::PuSpin,
            modulus: ctx.gcd(),
            scale: BigRational::new(BigInt::one(), BigInt::from(ab.alpha * ctx.reduced_rank())),
            labels,
            cache: TermCache::new(ctx, pu_prefactor(ctx)),
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// The modulus of the spin structures this refinement splits over.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn context(&self) -> &AlcoveContext {
        self.cache.context()
    }

    fn weight(&self, label: &Label, sigma: &SpinStructure) -> Result<BigRational> {
        let mut w = BigRational::one();
        for &(a, b) in sigma.pairs() {
            let (a, b) = (i64::from(a), i64::from(b));
            let e = match self.flavor {
                Flavor::Coho { .. } => epsilon_coho(label.stab_order, a, b)?,
                _ => epsilon(label.orbit_size.is_multiple_of(2), label.stab_order, a, b)?,
            };
            if e.is_zero() {
                return Ok(BigRational::zero());
            }
            w *= e.to_rational();
        }
        let orb = BigInt::from(label.orbit_size).pow(2 * sigma.genus() as u32);
        Ok(w / orb)
    }

    /// The refined sum for σ, before evaluation.
    pub fn weighted_sum(&self, sigma: &SpinStructure) -> Result<WeightedSum> {
        if sigma.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                expected: self.modulus,
                actual: sigma.modulus(),
            });
        }
        let terms = self
            .labels
            .iter()
            .map(|l| Ok((l.index, self.weight(l, sigma)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightedSum::new(sigma.genus() as u32, self.scale.clone(), terms))
    }

    /// Exact at genus 1, certified otherwise.
    pub fn evaluate(&self, sigma: &SpinStructure, policy: &PrecisionPolicy) -> Result<Certified> {
        let value = self.weighted_sum(sigma)?.evaluate(&self.cache, policy)?;
        require_nonnegative(value, || format!("{:?} at σ = {sigma}", self.flavor))
    }

    /// Always through ball arithmetic, even at genus 1.
    pub fn evaluate_certified(&self, sigma: &SpinStructure, policy: &PrecisionPolicy) -> Result<Certified> {
        let value = self.weighted_sum(sigma)?.certified(&self.cache, policy)?;
        require_nonnegative(value, || format!("{:?} at σ = {sigma}", self.flavor))
    }
}

/// The unrefined sum Σ_λ (N(N+K)^{N−1}/S_λ)^{g−1}.
pub fn verlinde_sum(ctx: &AlcoveContext, g: u32) -> WeightedSum {
    let n = ctx.alcove_size() as usize;
    WeightedSum::new(g, BigRational::one(), (0..n).map(|i| (i, BigRational::one())))
}

/// d_{N,K}(g). Genus 1 is the alcove size; other genera are certified.
pub fn verlinde(ctx: &AlcoveContext, g: u32, policy: &PrecisionPolicy) -> Result<Certified> {
    if g == 1 {
        return Ok(Certified::exact(BigInt::from(ctx.alcove_size())));
    }
    let cache = TermCache::new(ctx, su_prefactor(ctx));
    verlinde_sum(ctx, g).certified(&cache, policy)
}

/// d̃_{N,K}(g) = d_{N,K}(g)/N'^g.
pub fn pu_verlinde(ctx: &AlcoveContext, g: u32, policy: &PrecisionPolicy) -> Result<Certified> {
    let total = verlinde(ctx, g, policy)?;
    let divisor = BigInt::from(ctx.reduced_rank()).pow(g);
    if !(&total.value % &divisor).is_zero() {
        return Err(Error::NonIntegral(format!(
            "d_{{{},{}}}({g}) = {} is not divisible by N'^g = {divisor}",
            ctx.rank(),
            ctx.level(),
            total.value
        )));
    }
    Ok(Certified {
        value: total.value / divisor,
        precision_bits: total.precision_bits,
    })
}

/// d_{N,K}(g, σ) in the default spin case (N even, K/N odd, modulus N).
pub fn spin_verlinde(ctx: &AlcoveContext, sigma: &SpinStructure, policy: &PrecisionPolicy) -> Result<Certified> {
    spin_verlinde_with_step(ctx, 1, sigma, policy)
}

/// Spin refinement for the group generated by the `j`-th iterate of the rotation.
pub fn spin_verlinde_with_step(
    ctx: &AlcoveContext,
    j: u32,
    sigma: &SpinStructure,
    policy: &PrecisionPolicy,
) -> Result<Certified> {
    Refinement::new(ctx, Flavor::Spin { step_power: j })?.evaluate(sigma, policy)
}

pub fn coho_verlinde(
    ctx: &AlcoveContext,
    j: u32,
    sigma: &SpinStructure,
    policy: &PrecisionPolicy,
) -> Result<Certified> {
    Refinement::new(ctx, Flavor::Coho { step_power: j })?.evaluate(sigma, policy)
}

/// d̃_{N,K}(g, σ) for the canonical (α, β).
pub fn pu_spin_verlinde(ctx: &AlcoveContext, sigma: &SpinStructure, policy: &PrecisionPolicy) -> Result<Certified> {
    Refinement::new(ctx, Flavor::PuSpin)?.evaluate(sigma, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32, k: u32) -> AlcoveContext {
        AlcoveContext::new(n, k).unwrap()
    }

    fn sigma(m: u32, pairs: &[(i64, i64)]) -> SpinStructure {
        SpinStructure::new(m, pairs).unwrap()
    }

    fn int(x: &Certified) -> i64 {
        i64::try_from(&x.value).unwrap()
    }

    #[test]
    fn small_totals() {
        let p = PrecisionPolicy::default();
        assert_eq!(int(&verlinde(&ctx(2, 2), 2, &p).unwrap()), 10);
        assert_eq!(int(&verlinde(&ctx(2, 6), 2, &p).unwrap()), 84);
        assert_eq!(int(&verlinde(&ctx(3, 3), 0, &p).unwrap()), 1);
        assert_eq!(int(&pu_verlinde(&ctx(4, 2), 1, &p).unwrap()), 5);
        assert_eq!(int(&pu_verlinde(&ctx(2, 4), 1, &p).unwrap()), 5);
    }

    #[test]
    fn small_spin_values() {
        let p = PrecisionPolicy::default();
        let c = ctx(2, 2);
        assert_eq!(int(&spin_verlinde(&c, &sigma(2, &[(0, 0)]), &p).unwrap()), 1);
        assert_eq!(int(&spin_verlinde(&c, &sigma(2, &[(1, 1)]), &p).unwrap()), 0);
        assert_eq!(int(&spin_verlinde(&c, &sigma(2, &[(0, 0), (1, 1)]), &p).unwrap()), 0);
        let err = spin_verlinde(&ctx(3, 3), &sigma(3, &[(0, 0)]), &p).unwrap_err();
        assert!(matches!(err, Error::Inadmissible(_)));
        let err = spin_verlinde(&c, &sigma(4, &[(0, 0)]), &p).unwrap_err();
        assert_eq!(err, Error::ModulusMismatch { expected: 2, actual: 4 });
    }

    #[test]
    fn coho_examples() {
        let p = PrecisionPolicy::default();
        let c = ctx(2, 4);
        assert_eq!(int(&coho_verlinde(&c, 1, &sigma(2, &[(0, 0)]), &p).unwrap()), 2);
        assert_eq!(int(&coho_verlinde(&c, 1, &sigma(2, &[(1, 0)]), &p).unwrap()), 1);
        // trivial group: one class, the unrefined number
        let c = ctx(3, 4);
        let one = coho_verlinde(&c, 3, &sigma(1, &[(0, 0), (0, 0)]), &p).unwrap();
        assert_eq!(one.value, verlinde(&c, 2, &p).unwrap().value);
    }

    #[test]
    fn pu_spin_examples() {
        let p = PrecisionPolicy::default();
        let c = ctx(2, 2);
        assert_eq!(int(&pu_spin_verlinde(&c, &sigma(2, &[(0, 0)]), &p).unwrap()), 1);
        assert_eq!(int(&pu_spin_verlinde(&c, &sigma(2, &[(1, 1)]), &p).unwrap()), 0);
        assert!(pu_spin_verlinde(&ctx(2, 4), &sigma(2, &[(0, 0)]), &p).is_err());
    }

    #[test]
    fn general_step_power() {
        let p = PrecisionPolicy::default();
        let c = ctx(8, 2);
        let r = Refinement::new(&c, Flavor::Spin { step_power: 2 }).unwrap();
        assert_eq!(r.modulus(), 4);
        let total: i64 = SpinStructure::enumerate(4, 1)
            .unwrap()
            .iter()
            .map(|s| int(&r.evaluate(s, &p).unwrap()))
            .sum();
        assert_eq!(total, c.alcove_size() as i64);
        assert!(Refinement::new(&c, Flavor::Spin { step_power: 1 }).is_err());
    }
}
