//! Young diagram combinatorics on the alcove Γ_{N,K}.
//!
//! The alcove is the set of partitions `λ = (λ_1, …, λ_N)` with
//! `K ≥ λ_1 ≥ … ≥ λ_{N-1} ≥ λ_N = 0`. It carries an action of `Z/N` by the
//! simple current rotation
//!
//! ```text
//! (λ_1, …, λ_{N-1}, 0) ↦ (K, λ_1, …, λ_{N-1}) − (λ_{N-1}, …, λ_{N-1})
//! ```
//!
//! whose orbits and stabilizers drive every refined dimension formula.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of non-negative integers.
///
/// Trailing zeros are insignificant for equality and ordering.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameters(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero rows.
    pub fn rows(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    /// |λ| = Σ λ_i.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn transpose(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Cells in row-major order with their content and hook length.
    pub fn cells(&self) -> Vec<Cell> {
        let conj = self.transpose();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len as usize {
                let row = i + 1;
                let col = j + 1;
                let hook = self.parts[i] as i64 + conj.part(j) as i64 - row as i64 - col as i64 + 1;
                out.push(Cell {
                    row: row as u32,
                    col: col as u32,
                    content: col as i64 - row as i64,
                    hook: hook as u32,
                });
            }
        }
        out
    }

    /// Same partition padded with zeros (or trimmed of zeros) to exactly `len` entries.
    fn with_len(&self, len: usize) -> Option<Partition> {
        if self.rows() > len {
            return None;
        }
        let mut parts: Vec<u32> = self.parts.iter().copied().take(len).collect();
        parts.resize(len, 0);
        Some(Partition { parts })
    }

    fn significant(&self) -> &[u32] {
        &self.parts[..self.rows()]
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.significant() == other.significant()
    }
}

impl Eq for Partition {}

impl std::hash::Hash for Partition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.significant().hash(state);
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.parts.len().max(other.parts.len());
        (0..n)
            .map(|i| self.part(i).cmp(&other.part(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A box `(row, col)` of a Young diagram, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
    /// cn(c) = col − row
    pub content: i64,
    /// hl(c) = λ_row + λ^∨_col − row − col + 1
    pub hook: u32,
}

/// Content and hook length of every cell of `lambda`.
///
/// Fails if `lambda` has more than `n` rows.
pub fn cell_stats(lambda: &Partition, n: u32) -> Result<Vec<(i64, u32)>> {
    if lambda.rows() > n as usize {
        return Err(Error::InvalidParameters(format!("{lambda} has more than {n} rows")));
    }
    Ok(lambda.cells().iter().map(|c| (c.content, c.hook)).collect())
}

/// Rank `N` and level `K` together with `d = gcd(N, K)`, `N' = N/d`, `K' = K/d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct AlcoveContext {
    rank: u32,
    level: u32,
    gcd: u32,
}

impl AlcoveContext {
    pub fn new(rank: u32, level: u32) -> Result<Self> {
        if rank < 2 || level < 2 {
            return Err(Error::InvalidParameters(format!(
                "rank and level must be at least 2 (got N={rank}, K={level})"
            )));
        }
        Ok(Self {
            rank,
            level,
            gcd: rank.gcd(&level),
        })
    }

    /// N
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// K
    pub fn level(&self) -> u32 {
        self.level
    }

    /// N + K, the order of the quantum parameter q = s².
    pub fn shifted_level(&self) -> u32 {
        self.rank + self.level
    }

    /// d = gcd(N, K)
    pub fn gcd(&self) -> u32 {
        self.gcd
    }

    /// N' = N / d
    pub fn reduced_rank(&self) -> u32 {
        self.rank / self.gcd
    }

    /// K' = K / d
    pub fn reduced_level(&self) -> u32 {
        self.level / self.gcd
    }

    /// The level-rank dual context `(K, N)`.
    pub fn dual(&self) -> AlcoveContext {
        AlcoveContext::new(self.level, self.rank).expect("dual of a valid context")
    }

    /// |Γ_{N,K}| = C(N+K−1, N−1).
    pub fn alcove_size(&self) -> u64 {
        num_integer::binomial(u64::from(self.rank + self.level - 1), u64::from(self.rank - 1))
    }

    /// Pads `lambda` to exactly N entries and checks membership in Γ_{N,K}.
    pub fn normalize(&self, lambda: &Partition) -> Result<Partition> {
        let out = lambda
            .with_len(self.rank as usize)
            .filter(|p| p.part(self.rank as usize - 1) == 0 && p.part(0) <= self.level)
            .ok_or_else(|| Error::NotInAlcove(lambda.to_string(), self.rank, self.level))?;
        Ok(out)
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        self.normalize(lambda).is_ok()
    }

    /// Every element of Γ_{N,K}, each with exactly N entries, in ascending
    /// lexicographic order of `(λ_1, …, λ_{N−1})`.
    pub fn weights(&self) -> Vec<Partition> {
        let n = self.rank as usize;
        let mut out = Vec::with_capacity(self.alcove_size() as usize);
        let mut current = vec![0u32; n];
        fill(&mut current, 0, self.level, &mut out);
        out
    }

    /// Index of a (normalized) weight in [`AlcoveContext::weights`] order.
    pub fn index_of(&self, lambda: &Partition) -> Result<usize> {
        let lambda = self.normalize(lambda)?;
        // Count weights lexicographically smaller than lambda.
        let n = self.rank as usize;
        let mut index = 0u64;
        for i in 0..n - 1 {
            let remaining = (n - 2 - i) as u64;
            for v in 0..lambda.part(i) {
                // sequences of length `remaining` bounded by v
                index += num_integer::binomial(u64::from(v) + remaining, remaining);
            }
        }
        Ok(index as usize)
    }
}

fn fill(current: &mut Vec<u32>, pos: usize, bound: u32, out: &mut Vec<Partition>) {
    let n = current.len();
    if pos == n - 1 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for v in 0..=bound {
        current[pos] = v;
        fill(current, pos + 1, v, out);
    }
    current[pos] = 0;
}

impl TryFrom<(u32, u32)> for AlcoveContext {
    type Error = Error;

    fn try_from((n, k): (u32, u32)) -> Result<Self> {
        AlcoveContext::new(n, k)
    }
}

impl From<AlcoveContext> for (u32, u32) {
    fn from(ctx: AlcoveContext) -> Self {
        (ctx.rank, ctx.level)
    }
}

impl fmt::Display for AlcoveContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, K={})", self.rank, self.level)
    }
}

/// One step of the simple current rotation on Γ_{N,K}.
pub fn rho_step(lambda: &Partition, ctx: &AlcoveContext) -> Result<Partition> {
    let lambda = ctx.normalize(lambda)?;
    Ok(rotate(&lambda, ctx))
}

// `lambda` must already be normalized.
pub(crate) fn rotate(lambda: &Partition, ctx: &AlcoveContext) -> Partition {
    let n = ctx.rank() as usize;
    let shift = lambda.parts[n - 2];
    let mut parts = Vec::with_capacity(n);
    parts.push(ctx.level() - shift);
    parts.extend(lambda.parts[..n - 1].iter().map(|&p| p - shift));
    Partition { parts }
}

/// Orbit of a weight under the cyclic group generated by the `step_power`-th
/// iterate of [`rho_step`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    /// Members in the order visited, starting from the input weight.
    pub orbit: Vec<Partition>,
    pub orbit_size: u32,
    pub stab_order: u32,
}

impl OrbitInfo {
    /// Lexicographically smallest orbit member.
    pub fn representative(&self) -> &Partition {
        self.orbit.iter().min().expect("orbits are nonempty")
    }
}

pub fn orbit_info(lambda: &Partition, ctx: &AlcoveContext, step_power: u32) -> Result<OrbitInfo> {
    let group_order = acting_group_order(ctx, step_power)?;
    let start = ctx.normalize(lambda)?;
    let mut orbit = vec![start.clone()];
    let mut x = start.clone();
    loop {
        for _ in 0..step_power {
            x = rotate(&x, ctx);
        }
        if x == start {
            break;
        }
        orbit.push(x.clone());
    }
    let orbit_size = orbit.len() as u32;
    debug_assert_eq!(group_order % orbit_size, 0);
    Ok(OrbitInfo {
        orbit,
        orbit_size,
        stab_order: group_order / orbit_size,
    })
}

/// Order `N/j` of the group generated by the `j`-th iterate.
pub fn acting_group_order(ctx: &AlcoveContext, step_power: u32) -> Result<u32> {
    if step_power == 0 || !ctx.rank().is_multiple_of(step_power) {
        return Err(Error::StepDoesNotDivide {
            step: step_power,
            rank: ctx.rank(),
        });
    }
    Ok(ctx.rank() / step_power)
}

/// Orbit data for every alcove weight, in [`AlcoveContext::weights`] order.
pub fn orbit_table(ctx: &AlcoveContext, step_power: u32) -> Result<Vec<OrbitInfo>> {
    ctx.weights().iter().map(|w| orbit_info(w, ctx, step_power)).collect()
}

/// One [`OrbitInfo`] per orbit, keyed by its lexicographically smallest member,
/// sorted by representative.
pub fn orbit_transversal(ctx: &AlcoveContext, step_power: u32) -> Result<Vec<OrbitInfo>> {
    let mut out: Vec<OrbitInfo> = Vec::new();
    for w in ctx.weights() {
        let info = orbit_info(&w, ctx, step_power)?;
        if info.representative() == &w {
            out.push(info);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_small_alcove() {
        let ctx = AlcoveContext::new(2, 2).unwrap();
        assert_eq!(ctx.weights(), vec![p(&[0, 0]), p(&[1, 0]), p(&[2, 0])]);
        assert_eq!(AlcoveContext::new(6, 6).unwrap().weights().len(), 462);
    }

    #[test]
    fn context_rejects_small_parameters() {
        assert!(AlcoveContext::new(2, 0).is_err());
        assert!(AlcoveContext::new(1, 5).is_err());
    }

    #[test]
    fn reduced_parameters() {
        let ctx = AlcoveContext::new(6, 4).unwrap();
        assert_eq!((ctx.gcd(), ctx.reduced_rank(), ctx.reduced_level()), (2, 3, 2));
    }

    #[test]
    fn weights_are_sorted_and_indexed() {
        for (n, k) in [(2, 5), (3, 4), (4, 3), (5, 2)] {
            let ctx = AlcoveContext::new(n, k).unwrap();
            let ws = ctx.weights();
            assert!(ws.windows(2).all(|w| w[0] < w[1]));
            for (i, w) in ws.iter().enumerate() {
                assert_eq!(ctx.index_of(w).unwrap(), i);
            }
        }
    }

    #[test]
    fn cell_statistics() {
        assert_eq!(cell_stats(&p(&[1]), 3).unwrap(), vec![(0, 1)]);
        assert!(cell_stats(&Partition::empty(), 3).unwrap().is_empty());

        let stats = cell_stats(&p(&[2, 1]), 3).unwrap();
        let mut hooks: Vec<u32> = stats.iter().map(|s| s.1).collect();
        let mut contents: Vec<i64> = stats.iter().map(|s| s.0).collect();
        hooks.sort();
        contents.sort();
        assert_eq!(hooks, vec![1, 1, 3]);
        assert_eq!(contents, vec![-1, 0, 1]);

        assert!(cell_stats(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn transpose_is_involutive() {
        let lam = p(&[4, 2, 2, 1]);
        assert_eq!(lam.transpose(), p(&[4, 3, 1, 1]));
        assert_eq!(lam.transpose().transpose(), lam);
    }

    #[test]
    fn rho_step_examples() {
        let ctx = AlcoveContext::new(2, 2).unwrap();
        assert_eq!(rho_step(&p(&[1, 0]), &ctx).unwrap(), p(&[1, 0]));
        assert_eq!(rho_step(&p(&[0, 0]), &ctx).unwrap(), p(&[2, 0]));
        let ctx = AlcoveContext::new(2, 6).unwrap();
        assert_eq!(rho_step(&p(&[3]), &ctx).unwrap(), p(&[3, 0]));
        assert!(rho_step(&p(&[7]), &ctx).is_err());
    }

    #[test]
    fn orbit_examples() {
        let ctx = AlcoveContext::new(2, 2).unwrap();
        let fixed = orbit_info(&p(&[1]), &ctx, 1).unwrap();
        assert_eq!((fixed.orbit_size, fixed.stab_order), (1, 2));
        let pair = orbit_info(&p(&[]), &ctx, 1).unwrap();
        assert_eq!(pair.orbit, vec![p(&[0, 0]), p(&[2, 0])]);
        assert_eq!((pair.orbit_size, pair.stab_order), (2, 1));
        let trivial = orbit_info(&p(&[]), &ctx, 2).unwrap();
        assert_eq!((trivial.orbit_size, trivial.stab_order), (1, 1));
        assert!(matches!(
            orbit_info(&p(&[]), &AlcoveContext::new(4, 2).unwrap(), 3),
            Err(Error::StepDoesNotDivide { .. })
        ));
    }

    #[test]
    fn transversal_covers_alcove() {
        for (n, k) in [(2, 4), (3, 3), (4, 4), (6, 2)] {
            let ctx = AlcoveContext::new(n, k).unwrap();
            for j in (1..=n).filter(|j| n % j == 0) {
                let reps = orbit_transversal(&ctx, j).unwrap();
                let total: u64 = reps.iter().map(|o| u64::from(o.orbit_size)).sum();
                assert_eq!(total, ctx.alcove_size());
                for o in &reps {
                    assert_eq!((n / j) % o.orbit_size, 0);
                    assert_eq!(o.orbit_size * o.stab_order, n / j);
                }
            }
        }
    }
}
