//! Which (N, K, j) carry spin or cohomological refinements.
//!
//! Let a be a primitive 2N(N+K)-th root of unity, written a = exp(iπt/(N(N+K)))
//! with gcd(t, 2N(N+K)) = 1. Then (−a^{N+K})^{K j²} = exp(iπ (N+t) K j²/N),
//! so the twist condition is an integrality-and-parity condition on
//! (N+t)·K·j²/N that can be decided by scanning t.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::alcove::AlcoveContext;

/// An admissible choice of step power `j`, with the resulting modulus `l = N/j`
/// and a framing parameter `t` witnessing admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub step_power: u32,
    pub modulus: u32,
    pub framing: u64,
}

fn framing_witness(ctx: &AlcoveContext, j: u32, want_odd: bool) -> Option<u64> {
    let n = u128::from(ctx.rank());
    let k = u128::from(ctx.level());
    let j = u128::from(j);
    let period = 2 * n * (n + k);
    (1..period)
        .filter(|t| t.gcd(&period) == 1)
        .find(|&t| {
            let num = (n + t) * k * j * j;
            num % n == 0 && ((num / n) % 2 == 1) == want_odd
        })
        .map(|t| t as u64)
}

fn smallest_step(ctx: &AlcoveContext, want_odd: bool) -> Option<Admissibility> {
    let n = ctx.rank();
    (1..=n).filter(|j| n.is_multiple_of(*j)).find_map(|j| {
        framing_witness(ctx, j, want_odd).map(|t| Admissibility {
            step_power: j,
            modulus: n / j,
            framing: t,
        })
    })
}

/// Whether the order-N/j simple current group yields a spin refinement.
pub fn spin_admissible_with_step(ctx: &AlcoveContext, j: u32) -> Option<Admissibility> {
    if j == 0 || !ctx.rank().is_multiple_of(j) {
        return None;
    }
    framing_witness(ctx, j, true).map(|t| Admissibility {
        step_power: j,
        modulus: ctx.rank() / j,
        framing: t,
    })
}

/// Spin admissibility of SU(N) at level K, witnessed by the smallest `j`.
///
/// When N is even and K/N is an odd integer the witness is `j = 1`, modulus N.
pub fn spin_admissible_su(n: u32, k: u32) -> Option<Admissibility> {
    let ctx = AlcoveContext::new(n, k).ok()?;
    smallest_step(&ctx, true)
}

/// The 2-adic closed form: d even, N' odd and v₂(K') even; or d odd and
/// v₂(N) even and positive.
///
/// This differs from [`spin_admissible_su`] on some parameters, e.g. (8, 2)
/// and (2, 8); the search is authoritative.
pub fn spin_criterion_closed_form(n: u32, k: u32) -> bool {
    let d = n.gcd(&k);
    let (np, kp) = (n / d, k / d);
    let v2 = |x: u32| x.trailing_zeros();
    if d.is_multiple_of(2) {
        np % 2 == 1 && v2(kp) % 2 == 0
    } else {
        v2(n) > 0 && v2(n) % 2 == 0
    }
}

/// Whether the order-N/j group yields a cohomological refinement.
pub fn coho_admissible_with_step(ctx: &AlcoveContext, j: u32) -> Option<Admissibility> {
    if j == 0 || !ctx.rank().is_multiple_of(j) {
        return None;
    }
    framing_witness(ctx, j, false).map(|t| Admissibility {
        step_power: j,
        modulus: ctx.rank() / j,
        framing: t,
    })
}

/// Cohomological admissibility modulo N: N divides K, and N is odd or K/N is even.
pub fn coho_admissible_su(n: u32, k: u32) -> bool {
    k.is_multiple_of(n) && (n % 2 == 1 || (k / n).is_multiple_of(2))
}

/// The PU spin refinement needs d even with N' and K' odd.
pub fn pu_spin_admissible(ctx: &AlcoveContext) -> bool {
    ctx.gcd().is_multiple_of(2) && ctx.reduced_rank() % 2 == 1 && ctx.reduced_level() % 2 == 1
}
