//! Unnormalized S-matrix entries as exact integer combinations of roots of unity.
//!
//! With x = λ + ρ, y = μ + ρ, ρ = (N−1, …, 1, 0) and n = N + K,
//!
//! ```text
//! T_{λμ} = det(exp(−2πi x_i y_j / n)) · exp(2πi |x||y| / (N n)).
//! ```
//!
//! Every Leibniz term is a power of exp(iπ/(N n)), so the entry is stored as
//! an integer coefficient vector over those powers and evaluated once per
//! precision.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::complex::ComplexBall;
use crate::alcove::{AlcoveContext, Partition};
use crate::arith::CertifiedReal;
use crate::error::Result;

/// Σ_k c_k · exp(iπk/m), k = 0..2m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSum {
    m: i64,
    coeffs: Vec<i64>,
}

impl RootSum {
    fn new(m: i64) -> Self {
        Self {
            m,
            coeffs: vec![0; 2 * m as usize],
        }
    }

    fn push(&mut self, k: i64, sign: i64) {
        self.coeffs[k.rem_euclid(2 * self.m) as usize] += sign;
    }

    pub fn evaluate(&self, roots: &[ComplexBall], precision: u32) -> ComplexBall {
        debug_assert_eq!(roots.len(), self.coeffs.len());
        let mut acc = ComplexBall::zero(precision);
        for (c, z) in self.coeffs.iter().zip(roots) {
            if *c != 0 {
                acc = acc.add(&z.mul_int(&BigInt::from(*c)));
            }
        }
        acc
    }
}

/// exp(iπk/m) for k = 0..2m.
pub(crate) fn root_table(m: i64, precision: u32) -> Vec<ComplexBall> {
    (0..2 * m)
        .into_par_iter()
        .map(|k| ComplexBall::root_of_unity(k, m, precision))
        .collect()
}

/// Calls `f(permutation, sign)` for every permutation of 0..n (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], i64)) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1;
    f(&p, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            sign = -sign;
            f(&p, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn shifted(lambda: &Partition, n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| i64::from(lambda.part(i)) + (n - 1 - i) as i64)
        .collect()
}

/// Exact form of T_{λμ} over powers of exp(iπ/(N(N+K))).
pub fn s_entry_exact(lambda: &Partition, mu: &Partition, ctx: &AlcoveContext) -> Result<RootSum> {
    let lambda = ctx.normalize(lambda)?;
    let mu = ctx.normalize(mu)?;
    let n = ctx.rank() as usize;
    let nn = i64::from(ctx.rank());
    let m = nn * i64::from(ctx.shifted_level());
    let x = shifted(&lambda, n);
    let y = shifted(&mu, n);
    let phase = 2 * x.iter().sum::<i64>() * y.iter().sum::<i64>();
    let mut out = RootSum::new(m);
    for_each_permutation(n, |p, sign| {
        let pairing: i64 = (0..n).map(|i| x[i] * y[p[i]]).sum();
        out.push(phase - 2 * nn * pairing, sign);
    });
    Ok(out)
}

/// Certified enclosure of the unnormalized entry T_{λμ}.
pub fn s_entry(lambda: &Partition, mu: &Partition, ctx: &AlcoveContext, precision: u32) -> Result<ComplexBall> {
    let exact = s_entry_exact(lambda, mu, ctx)?;
    Ok(exact.evaluate(&root_table(exact.m, precision), precision))
}

/// a_l = det(s^{2(i−1) l_j}) at s = exp(iπ/(N+K)), for l = λ + ρ.
fn alternant(lambda: &Partition, ctx: &AlcoveContext, roots: &[ComplexBall], precision: u32) -> Result<ComplexBall> {
    let lambda = ctx.normalize(lambda)?;
    let n = ctx.rank() as usize;
    let l = shifted(&lambda, n);
    let mut out = RootSum::new(i64::from(ctx.shifted_level()));
    for_each_permutation(n, |p, sign| {
        let k: i64 = (0..n).map(|i| 2 * i as i64 * l[p[i]]).sum();
        out.push(k, sign);
    });
    Ok(out.evaluate(roots, precision))
}

/// ⟨λ⟩² = a_{ρ+λ} ā_{ρ+λ} / a_ρ ā_ρ, from the alternants by Leibniz expansion.
pub fn alternant_qdim_squared(lambda: &Partition, ctx: &AlcoveContext, precision: u32) -> Result<CertifiedReal> {
    let roots = root_table(i64::from(ctx.shifted_level()), precision);
    let num = alternant(lambda, ctx, &roots, precision)?.norm_sqr();
    let den = alternant(&Partition::empty(), ctx, &roots, precision)?.norm_sqr();
    Ok(num.div(&den).expect("a_ρ is nonzero"))
}

/// All entries T_{λμ} at one precision, row-major in alcove order.
pub struct SMatrix {
    size: usize,
    entries: Vec<ComplexBall>,
}

impl SMatrix {
    pub(crate) fn from_exact(exact: &[RootSum], size: usize, precision: u32) -> Self {
        let roots = root_table(exact[0].m, precision);
        let entries = exact
            .par_iter()
            .map(|e| e.evaluate(&roots, precision))
            .collect();
        Self { size, entries }
    }

    pub fn new(ctx: &AlcoveContext, precision: u32) -> Result<Self> {
        let exact = exact_entries(ctx)?;
        Ok(Self::from_exact(&exact, ctx.alcove_size() as usize, precision))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &ComplexBall {
        &self.entries[i * self.size + j]
    }
}

pub(crate) fn exact_entries(ctx: &AlcoveContext) -> Result<Vec<RootSum>> {
    let weights = ctx.weights();
    let pairs: Vec<(usize, usize)> = (0..weights.len())
        .flat_map(|i| (0..weights.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| s_entry_exact(&weights[i], &weights[j], ctx))
        .collect()
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
    fn permutations_and_signs() {
        let mut seen = Vec::new();
        for_each_permutation(3, |q, s| seen.push((q.to_vec(), s)));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.iter().map(|(_, s)| s).sum::<i64>(), 0);
        for (q, s) in &seen {
            let inversions = (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .filter(|&(i, j)| q[i] > q[j])
                .count();
            assert_eq!(*s, if inversions % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn alternant_examples() {
        let ctx = AlcoveContext::new(2, 2).unwrap();
        assert!(alternant_qdim_squared(&p(&[]), &ctx, 128).unwrap().contains(&int(1)));
        assert!(alternant_qdim_squared(&p(&[1]), &ctx, 128).unwrap().contains(&int(2)));
        let total = ctx
            .weights()
            .iter()
            .map(|w| alternant_qdim_squared(w, &ctx, 128).unwrap())
            .fold(CertifiedReal::zero(128), |a, b| a.add(&b));
        assert!(total.contains(&int(4)));
    }

    #[test]
    fn symmetric_entries() {
        let ctx = AlcoveContext::new(3, 2).unwrap();
        let s = SMatrix::new(&ctx, 96).unwrap();
        for i in 0..s.size() {
            for j in 0..s.size() {
                assert!(s.get(i, j).re.overlaps(&s.get(j, i).re));
                assert!(s.get(i, j).im.overlaps(&s.get(j, i).im));
            }
        }
    }
}
