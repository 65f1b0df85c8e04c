//! Data of the reduced (PU) theory: the factorization d = αβ and the action
//! of Z/α × Z/N on dotted weights (ι, λ).

use std::collections::VecDeque;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::alcove::{rotate, AlcoveContext, Partition};
use crate::error::{Error, Result};

/// A factorization d = αβ with gcd(α, K') = gcd(β, N') = gcd(α, β) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphaBeta {
    pub alpha: u32,
    pub beta: u32,
}

/// Where primes of d dividing neither N' nor K' go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum AmbiguousPrimes {
    ToAlpha,
    #[default]
    ToBeta,
}

impl AlphaBeta {
    /// Checks the product and coprimality conditions against `ctx`.
    pub fn new(ctx: &AlcoveContext, alpha: u32, beta: u32) -> Result<Self> {
        let ok = u64::from(alpha) * u64::from(beta) == u64::from(ctx.gcd())
            && alpha.gcd(&ctx.reduced_level()) == 1
            && beta.gcd(&ctx.reduced_rank()) == 1
            && alpha.gcd(&beta) == 1;
        if !ok {
            return Err(Error::InvalidParameters(format!(
                "(α, β) = ({alpha}, {beta}) is not a valid splitting of d = {} for {ctx}",
                ctx.gcd()
            )));
        }
        Ok(Self { alpha, beta })
    }
}

fn prime_powers(mut x: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            let mut q = 1;
            while x.is_multiple_of(p) {
                x /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if x > 1 {
        out.push((x, x));
    }
    out
}

/// The canonical splitting: ambiguous primes go to β.
pub fn alpha_beta(ctx: &AlcoveContext) -> AlphaBeta {
    alpha_beta_with(ctx, AmbiguousPrimes::ToBeta)
}

pub fn alpha_beta_with(ctx: &AlcoveContext, rule: AmbiguousPrimes) -> AlphaBeta {
    let (np, kp) = (ctx.reduced_rank(), ctx.reduced_level());
    let (mut alpha, mut beta) = (1, 1);
    for (p, q) in prime_powers(ctx.gcd()) {
        let to_alpha = if np % p == 0 {
            true
        } else if kp % p == 0 {
            false
        } else {
            rule == AmbiguousPrimes::ToAlpha
        };
        if to_alpha {
            alpha *= q;
        } else {
            beta *= q;
        }
    }
    AlphaBeta { alpha, beta }
}

/// (1^N)^{⊗ι} ⊗ λ, with ι ∈ Z/α.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DottedWeight {
    pub twist: u32,
    pub weight: Partition,
}

/// Orbit data of a dotted weight under Z/α × Z/N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuOrbitInfo {
    /// ♯Orb(V)
    pub full_orbit_size: u32,
    /// ♯orb(V) = ♯Orb(V)/(αN')
    pub orbit_size: u32,
    /// d/♯orb(V)
    pub stab_order: u32,
}

/// Full orbit sizes ♯Orb, indexed by `[alcove index][twist]`.
pub(crate) fn full_orbit_sizes(ctx: &AlcoveContext, ab: &AlphaBeta) -> Result<Vec<Vec<u32>>> {
    let weights = ctx.weights();
    let n = ctx.rank() as usize;
    let alpha = ab.alpha as usize;
    let rot: Vec<usize> = weights
        .iter()
        .map(|w| ctx.index_of(&rotate(w, ctx)))
        .collect::<Result<_>>()?;
    let shift: Vec<usize> = weights.iter().map(|w| w.part(n - 2) as usize).collect();
    let states = weights.len() * alpha;
    let mut sizes = vec![0u32; states];
    let mut queue = VecDeque::new();
    let mut members = Vec::new();
    for start in 0..states {
        if sizes[start] != 0 {
            continue;
        }
        // Mark visited with a placeholder, then fill in the size.
        members.clear();
        sizes[start] = u32::MAX;
        queue.push_back(start);
        while let Some(s) = queue.pop_front() {
            members.push(s);
            let (l, i) = (s / alpha, s % alpha);
            let a = l * alpha + (i + 1) % alpha;
            let b = rot[l] * alpha + (i + shift[l]) % alpha;
            for t in [a, b] {
                if sizes[t] == 0 {
                    sizes[t] = u32::MAX;
                    queue.push_back(t);
                }
            }
        }
        let size = members.len() as u32;
        for &m in &members {
            sizes[m] = size;
        }
    }
    Ok(sizes.chunks(alpha).map(<[u32]>::to_vec).collect())
}

fn derive_orbit(ctx: &AlcoveContext, ab: &AlphaBeta, full: u32) -> Result<PuOrbitInfo> {
    let unit = ab.alpha * ctx.reduced_rank();
    if !full.is_multiple_of(unit) || !ctx.gcd().is_multiple_of(full / unit) {
        return Err(Error::Mismatch(format!(
            "orbit of size {full} is incompatible with αN' = {unit} and d = {}",
            ctx.gcd()
        )));
    }
    let orbit_size = full / unit;
    Ok(PuOrbitInfo {
        full_orbit_size: full,
        orbit_size,
        stab_order: ctx.gcd() / orbit_size,
    })
}

pub(crate) fn pu_orbit_table(ctx: &AlcoveContext, ab: &AlphaBeta) -> Result<Vec<Vec<PuOrbitInfo>>> {
    full_orbit_sizes(ctx, ab)?
        .into_iter()
        .map(|row| row.into_iter().map(|f| derive_orbit(ctx, ab, f)).collect())
        .collect()
}

pub fn pu_orbit_info(v: &DottedWeight, ctx: &AlcoveContext, ab: &AlphaBeta) -> Result<PuOrbitInfo> {
    if v.twist >= ab.alpha {
        return Err(Error::InvalidParameters(format!(
            "twist {} is not reduced modulo α = {}",
            v.twist, ab.alpha
        )));
    }
    let start = (ctx.normalize(&v.weight)?, v.twist);
    let n = ctx.rank() as usize;
    let mut seen = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some((l, i)) = queue.pop_front() {
        let next = [
            (l.clone(), (i + 1) % ab.alpha),
            (rotate(&l, ctx), (i + l.part(n - 2)) % ab.alpha),
        ];
        for x in next {
            if !seen.contains(&x) {
                seen.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    derive_orbit(ctx, ab, seen.len() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32, k: u32) -> AlcoveContext {
        AlcoveContext::new(n, k).unwrap()
    }

    fn dotted(twist: u32, parts: &[u32]) -> DottedWeight {
        DottedWeight {
            twist,
            weight: Partition::new(parts.to_vec()).unwrap(),
        }
    }

    #[test]
    fn alpha_beta_examples() {
        assert_eq!(alpha_beta(&ctx(4, 4)), AlphaBeta { alpha: 1, beta: 4 });
        assert_eq!(alpha_beta(&ctx(6, 4)), AlphaBeta { alpha: 1, beta: 2 });
        assert_eq!(alpha_beta(&ctx(6, 9)), AlphaBeta { alpha: 1, beta: 3 });
        assert_eq!(alpha_beta(&ctx(8, 12)), AlphaBeta { alpha: 4, beta: 1 });
        assert_eq!(
            alpha_beta_with(&ctx(4, 4), AmbiguousPrimes::ToAlpha),
            AlphaBeta { alpha: 4, beta: 1 }
        );
    }

    #[test]
    fn alpha_beta_always_valid() {
        for n in 2..=30 {
            for k in 2..=30 {
                let c = ctx(n, k);
                for rule in [AmbiguousPrimes::ToAlpha, AmbiguousPrimes::ToBeta] {
                    let ab = alpha_beta_with(&c, rule);
                    assert!(AlphaBeta::new(&c, ab.alpha, ab.beta).is_ok(), "{c}");
                }
            }
        }
        assert!(AlphaBeta::new(&ctx(6, 4), 2, 1).is_err());
    }

    #[test]
    fn pu_orbit_examples() {
        let c = ctx(2, 2);
        let ab = alpha_beta(&c);
        let fixed = pu_orbit_info(&dotted(0, &[1]), &c, &ab).unwrap();
        assert_eq!((fixed.full_orbit_size, fixed.orbit_size, fixed.stab_order), (1, 1, 2));
        let pair = pu_orbit_info(&dotted(0, &[]), &c, &ab).unwrap();
        assert_eq!((pair.full_orbit_size, pair.orbit_size, pair.stab_order), (2, 2, 1));
    }

    #[test]
    fn table_matches_single_orbits() {
        for (n, k, rule) in [(4, 4, AmbiguousPrimes::ToAlpha), (6, 2, AmbiguousPrimes::ToBeta), (4, 6, AmbiguousPrimes::ToAlpha)] {
            let c = ctx(n, k);
            let ab = alpha_beta_with(&c, rule);
            let table = pu_orbit_table(&c, &ab).unwrap();
            for (w, row) in c.weights().iter().zip(&table) {
                for (i, info) in row.iter().enumerate() {
                    let v = dotted(i as u32, w.parts());
                    assert_eq!(pu_orbit_info(&v, &c, &ab).unwrap(), *info);
                    assert!(info.full_orbit_size <= ab.alpha * n);
                }
            }
        }
    }

    #[test]
    fn unreduced_twist_is_rejected() {
        let c = ctx(2, 2);
        assert!(pu_orbit_info(&dotted(1, &[]), &c, &alpha_beta(&c)).is_err());
    }
}
