use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::refined::{pu_verlinde, verlinde, Flavor, Refinement};
use super::structure::SpinStructure;
use crate::alcove::AlcoveContext;
use crate::arith::PrecisionPolicy;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRankRow {
    pub genus: u32,
    /// d̃_{N,K}(g)
    pub left: BigInt,
    /// d̃_{K,N}(g)
    pub right: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRankReport {
    pub rank: u32,
    pub level: u32,
    pub rows: Vec<LevelRankRow>,
}

/// Compares d̃_{N,K}(g) with d̃_{K,N}(g) for g = 0..=g_max.
pub fn level_rank_check(n: u32, k: u32, g_max: u32, policy: &PrecisionPolicy) -> Result<LevelRankReport> {
    let ctx = AlcoveContext::new(n, k)?;
    let dual = ctx.dual();
    let rows = (0..=g_max)
        .map(|g| {
            let left = pu_verlinde(&ctx, g, policy)?.value;
            let right = pu_verlinde(&dual, g, policy)?.value;
            if left != right {
                return Err(Error::Mismatch(format!(
                    "level-rank duality fails at g={g}: d̃_{{{n},{k}}} = {left}, d̃_{{{k},{n}}} = {right}"
                )));
            }
            Ok(LevelRankRow { genus: g, left, right })
        })
        .collect::<Result<_>>()?;
    Ok(LevelRankReport { rank: n, level: k, rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub flavor: Flavor,
    pub genus: u32,
    pub modulus: u32,
    /// Refined values, one per structure, in enumeration order.
    pub values: Vec<(SpinStructure, BigInt)>,
    pub sum: BigInt,
    /// The unrefined number (d̃ for the PU flavor).
    pub total: BigInt,
}

/// Sums a refinement over all structures and compares with the unrefined total.
pub fn split_check(ctx: &AlcoveContext, g: u32, flavor: Flavor, policy: &PrecisionPolicy) -> Result<SplitReport> {
    if g == 0 {
        return Err(Error::InvalidParameters("splitting needs genus ≥ 1".into()));
    }
    let refinement = Refinement::new(ctx, flavor)?;
    let structures = SpinStructure::enumerate(refinement.modulus(), g as usize)?;
    // Warm the sine cache once before fanning out.
    let first = refinement.evaluate(&structures[0], policy)?.value;
    let rest = structures[1..]
        .par_iter()
        .map(|s| refinement.evaluate(s, policy).map(|c| c.value))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<(SpinStructure, BigInt)> =
        structures.into_iter().zip(std::iter::once(first).chain(rest)).collect();
    let sum: BigInt = values.iter().map(|(_, v)| v).sum();
    let total = match flavor {
        Flavor::PuSpin => pu_verlinde(ctx, g, policy)?.value,
        _ => verlinde(ctx, g, policy)?.value,
    };
    if sum != total {
        return Err(Error::Mismatch(format!(
            "{flavor:?} refinement of {ctx} at genus {g} sums to {sum}, expected {total}"
        )));
    }
    Ok(SplitReport {
        flavor,
        genus: g,
        modulus: refinement.modulus(),
        values,
        sum,
        total,
    })
}
