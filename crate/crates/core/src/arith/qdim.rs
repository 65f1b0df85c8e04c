//! Quantum dimensions at the principal root s = exp(iπ/(N+K)).

use num_bigint::BigInt;

use super::ball::CertifiedReal;
use super::trig::SineTable;
use crate::alcove::{AlcoveContext, Partition};
use crate::error::Result;

/// ∏_{i<j} 2·sin((λ_i − i − λ_j + j)π/(N+K)) for a normalized weight.
pub(crate) fn sine_product(lambda: &Partition, ctx: &AlcoveContext, table: &SineTable) -> CertifiedReal {
    let n = ctx.rank() as usize;
    let mut acc = CertifiedReal::one(table.get(1).precision());
    for i in 0..n {
        for j in i + 1..n {
            let gap = i64::from(lambda.part(i)) - i64::from(lambda.part(j)) + (j - i) as i64;
            acc = acc.mul(table.get(gap));
        }
    }
    acc
}

/// ⟨λ⟩ as a ratio of sine products.
pub fn qdim_sine(lambda: &Partition, ctx: &AlcoveContext, precision: u32) -> Result<CertifiedReal> {
    let table = SineTable::new(ctx.shifted_level(), precision);
    qdim_sine_with(lambda, ctx, &table)
}

pub(crate) fn qdim_sine_with(
    lambda: &Partition,
    ctx: &AlcoveContext,
    table: &SineTable,
) -> Result<CertifiedReal> {
    let lambda = ctx.normalize(lambda)?;
    let rho = Partition::empty();
    let num = sine_product(&lambda, ctx, table);
    let den = sine_product(&rho, ctx, table);
    Ok(num.div(&den).expect("staircase sine product is positive"))
}

/// ⟨λ⟩ as the hook-content product ∏_cells [N + cn(c)] / [hl(c)].
pub fn qdim_hook(lambda: &Partition, ctx: &AlcoveContext, precision: u32) -> Result<CertifiedReal> {
    let lambda = ctx.normalize(lambda)?;
    let table = SineTable::new(ctx.shifted_level(), precision);
    let n = i64::from(ctx.rank());
    let mut num = CertifiedReal::one(precision);
    let mut den = CertifiedReal::one(precision);
    // [x] = 2 sin(xπ/(N+K)) / 2 sin(π/(N+K)); the common factor cancels
    // because there are as many numerator as denominator cells.
    for cell in lambda.cells() {
        num = num.mul(table.get(n + cell.content));
        den = den.mul(table.get(i64::from(cell.hook)));
    }
    Ok(num.div(&den).expect("hook sines are positive"))
}

/// a_ρ·ā_ρ = ∏_{i<j} (2 sin((j − i)π/(N+K)))².
pub fn staircase_norm(ctx: &AlcoveContext, precision: u32) -> CertifiedReal {
    let table = SineTable::new(ctx.shifted_level(), precision);
    sine_product(&Partition::empty(), ctx, &table).square()
}

/// N·(N+K)^{N−1}, the numerator of the global dimension ⟨Ω⟩ = N(N+K)^{N−1}/(a_ρ ā_ρ).
pub fn kirby_numerator(ctx: &AlcoveContext) -> BigInt {
    BigInt::from(ctx.rank()) * BigInt::from(ctx.shifted_level()).pow(ctx.rank() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sine_route_examples() {
        let ctx = AlcoveContext::new(2, 2).unwrap();
        assert!(qdim_sine(&p(&[]), &ctx, 128).unwrap().contains(&int(1)));
        assert!(qdim_sine(&p(&[1]), &ctx, 128).unwrap().square().contains(&int(2)));
        assert!(qdim_sine(&p(&[2]), &ctx, 128).unwrap().contains(&int(1)));
        let ctx = AlcoveContext::new(5, 3).unwrap();
        assert!(qdim_sine(&p(&[]), &ctx, 128).unwrap().contains(&int(1)));
    }

    #[test]
    fn hook_route_examples() {
        let ctx = AlcoveContext::new(2, 2).unwrap();
        assert!(qdim_hook(&p(&[1]), &ctx, 128).unwrap().square().contains(&int(2)));
        assert!(qdim_hook(&Partition::empty(), &ctx, 128).unwrap().contains(&int(1)));
        for (n, k) in [(3, 4), (5, 2), (4, 6)] {
            let ctx = AlcoveContext::new(n, k).unwrap();
            let q = qdim_hook(&p(&[1]), &ctx, 128).unwrap();
            let m = f64::from(n + k);
            let expect = (f64::from(n) * std::f64::consts::PI / m).sin() / (std::f64::consts::PI / m).sin();
            assert!((q.to_f64() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn staircase_examples() {
        let two_two = staircase_norm(&AlcoveContext::new(2, 2).unwrap(), 128);
        assert!(two_two.contains(&int(2)));
        let three_three = staircase_norm(&AlcoveContext::new(3, 3).unwrap(), 128);
        assert!(three_three.contains(&int(3)));
        let two_six = staircase_norm(&AlcoveContext::new(2, 6).unwrap(), 128);
        let expect = (2.0 * (std::f64::consts::PI / 8.0).sin()).powi(2);
        assert!((two_six.to_f64() - expect).abs() < 1e-14);
    }
}
