use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::ComplexBall;
use super::smatrix::{exact_entries, SMatrix};
use crate::alcove::AlcoveContext;
use crate::arith::{certified_round, CertifiedReal, PrecisionPolicy, Rounding};
use crate::error::{Error, Result};

/// Largest alcove the oracle will diagonalize.
pub const FUSION_GUARD: u64 = 2000;

/// Fusion coefficients N_{ab}^c over an alcove, indexed in alcove order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTensor", into = "RawTensor")]
pub struct FusionTensor {
    ctx: AlcoveContext,
    size: usize,
    coeffs: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawTensor {
    rank: u32,
    level: u32,
    coeffs: Vec<u32>,
}

impl TryFrom<RawTensor> for FusionTensor {
    type Error = Error;

    fn try_from(raw: RawTensor) -> Result<Self> {
        let ctx = AlcoveContext::new(raw.rank, raw.level)?;
        let size = ctx.alcove_size() as usize;
        if raw.coeffs.len() != size * size * size {
            return Err(Error::InvalidParameters(format!(
                "fusion tensor for {ctx} needs {} entries, found {}",
                size * size * size,
                raw.coeffs.len()
            )));
        }
        Ok(Self {
            ctx,
            size,
            coeffs: raw.coeffs,
        })
    }
}

impl From<FusionTensor> for RawTensor {
    fn from(t: FusionTensor) -> Self {
        RawTensor {
            rank: t.ctx.rank(),
            level: t.ctx.level(),
            coeffs: t.coeffs,
        }
    }
}

impl FusionTensor {
    pub fn context(&self) -> &AlcoveContext {
        &self.ctx
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// N_{ab}^c
    pub fn get(&self, a: usize, b: usize, c: usize) -> u32 {
        self.coeffs[(a * self.size + b) * self.size + c]
    }

    /// The index of a*, the unique b with N_{ab}^0 = 1.
    pub fn dual(&self, a: usize) -> Result<usize> {
        let mut hits = (0..self.size).filter(|&b| self.get(a, b, 0) != 0);
        match (hits.next(), hits.next()) {
            (Some(b), None) if self.get(a, b, 0) == 1 => Ok(b),
            _ => Err(Error::Mismatch(format!("weight #{a} has no unique dual"))),
        }
    }

    /// Product in the fusion ring, on coefficient vectors.
    pub fn multiply(&self, x: &[u128], y: &[u128]) -> Result<Vec<u128>> {
        let mut out = vec![0u128; self.size];
        for (a, &xa) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (b, &yb) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                let ab = xa.checked_mul(yb).ok_or(Error::Overflow("fusion product"))?;
                for (c, slot) in out.iter_mut().enumerate() {
                    let n = u128::from(self.get(a, b, c));
                    if n != 0 {
                        let add = ab.checked_mul(n).ok_or(Error::Overflow("fusion product"))?;
                        *slot = slot.checked_add(add).ok_or(Error::Overflow("fusion product"))?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The handle element Σ_λ λ ⊗ λ*, as a coefficient vector.
    pub fn handle_element(&self) -> Result<Vec<u128>> {
        let mut h = vec![0u128; self.size];
        for a in 0..self.size {
            let b = self.dual(a)?;
            for (c, slot) in h.iter_mut().enumerate() {
                *slot += u128::from(self.get(a, b, c));
            }
        }
        Ok(h)
    }

    /// Multiplicity of the unit in the g-th power of the handle element.
    pub fn genus_dimension(&self, g: u32) -> Result<u128> {
        let h = self.handle_element()?;
        let mut x = vec![0u128; self.size];
        x[0] = 1;
        for _ in 0..g {
            x = self.multiply(&x, &h)?;
        }
        Ok(x[0])
    }
}

enum Attempt {
    Done(Vec<u32>),
    Retry,
}

fn round_entry(z: &ComplexBall, policy: &PrecisionPolicy) -> Result<Option<u32>> {
    let im = certified_round(&z.im, policy)?;
    let re = certified_round(&z.re, policy)?;
    match (re, im) {
        (Rounding::Integer(re), Rounding::Integer(im)) => {
            if im != 0.into() {
                return Err(Error::NonIntegral(format!("fusion coefficient {} + {}i", z.re, z.im)));
            }
            u32::try_from(&re)
                .map(Some)
                .map_err(|_| Error::Negative(format!("fusion coefficient {re}")))
        }
        _ => Ok(None),
    }
}

fn attempt(s: &SMatrix, policy: &PrecisionPolicy, bits: u32) -> Result<Attempt> {
    let n = s.size();
    let norm = (0..n)
        .map(|j| s.get(0, j).norm_sqr())
        .fold(CertifiedReal::zero(bits), |acc, x| acc.add(&x));
    let norm = ComplexBall {
        re: norm,
        im: CertifiedReal::zero(bits),
    };
    let scaled_inverse: Vec<ComplexBall> = (0..n)
        .map(|j| s.get(0, j).mul(&norm))
        .map(|d| {
            ComplexBall {
                re: CertifiedReal::one(bits),
                im: CertifiedReal::zero(bits),
            }
            .div(&d)
            .ok_or_else(|| Error::Mismatch("quantum dimension enclosure contains zero".into()))
        })
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let rows: Vec<Option<Vec<u32>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let p: Vec<ComplexBall> = (0..n)
                .map(|j| s.get(a, j).mul(s.get(b, j)).mul(&scaled_inverse[j]))
                .collect();
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                let v = (0..n).fold(ComplexBall::zero(bits), |acc, j| acc.add(&p[j].mul(&s.get(c, j).conj())));
                match round_entry(&v, policy)? {
                    Some(x) => row.push(x),
                    None => return Ok(None),
                }
            }
            Ok(Some(row))
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(Option::is_none) {
        return Ok(Attempt::Retry);
    }
    let mut coeffs = vec![0u32; n * n * n];
    for (&(a, b), row) in pairs.iter().zip(rows) {
        let row = row.expect("checked above");
        for (c, v) in row.into_iter().enumerate() {
            coeffs[(a * n + b) * n + c] = v;
            coeffs[(b * n + a) * n + c] = v;
        }
    }
    Ok(Attempt::Done(coeffs))
}

/// Fusion coefficients by Verlinde diagonalization of the certified S-matrix.
pub fn fusion_coeffs(ctx: &AlcoveContext, policy: &PrecisionPolicy) -> Result<FusionTensor> {
    policy.validate()?;
    let size = ctx.alcove_size();
    if size > FUSION_GUARD {
        return Err(Error::GuardExceeded(format!(
            "|Γ| = {size} exceeds the fusion oracle limit {FUSION_GUARD}"
        )));
    }
    let size = size as usize;
    let exact = exact_entries(ctx)?;
    for bits in policy.schedule() {
        let s = SMatrix::from_exact(&exact, size, bits);
        if let Attempt::Done(coeffs) = attempt(&s, policy, bits)? {
            return Ok(FusionTensor {
                ctx: *ctx,
                size,
                coeffs,
            });
        }
    }
    Err(Error::PrecisionExhausted {
        max_bits: policy.max_bits,
    })
}

/// d_{N,K}(g) through integer fusion data only.
pub fn handle_trace_dimension(ctx: &AlcoveContext, g: u32, policy: &PrecisionPolicy) -> Result<u128> {
    fusion_coeffs(ctx, policy)?.genus_dimension(g)
}

/// JSON file of fusion tensors keyed by `"N,K"`.
#[derive(Debug, Clone)]
pub struct FusionCache {
    path: PathBuf,
}

impl FusionCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn key(ctx: &AlcoveContext) -> String {
        format!("{},{}", ctx.rank(), ctx.level())
    }

    fn read(&self) -> Result<BTreeMap<String, FusionTensor>> {
        match fs::read_to_string(&self.path) {
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| Error::InvalidParameters(format!("fusion cache {}: {e}", self.path.display()))),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(BTreeMap::new()),
            Err(e) => Err(Error::InvalidParameters(format!("fusion cache {}: {e}", self.path.display()))),
        }
    }

    pub fn load(&self, ctx: &AlcoveContext) -> Result<Option<FusionTensor>> {
        Ok(self.read()?.remove(&Self::key(ctx)))
    }

    pub fn store(&self, tensor: &FusionTensor) -> Result<()> {
        let mut all = self.read()?;
        all.insert(Self::key(tensor.context()), tensor.clone());
        let text = serde_json::to_string(&all).expect("tensors serialize");
        let tmp = self.path.with_extension("tmp");
        let io = |e: std::io::Error| Error::InvalidParameters(format!("fusion cache {}: {e}", self.path.display()));
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &self.path).map_err(io)
    }

    pub fn get_or_compute(&self, ctx: &AlcoveContext, policy: &PrecisionPolicy) -> Result<FusionTensor> {
        if let Some(t) = self.load(ctx)? {
            return Ok(t);
        }
        let t = fusion_coeffs(ctx, policy)?;
        self.store(&t)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_two_su2() {
        let ctx = AlcoveContext::new(2, 2).unwrap();
        let t = fusion_coeffs(&ctx, &PrecisionPolicy::default()).unwrap();
        // alcove order (0), (1), (2)
        assert_eq!(t.get(1, 1, 0), 1);
        assert_eq!(t.get(1, 1, 2), 1);
        assert_eq!(t.get(1, 1, 1), 0);
        assert_eq!(t.get(2, 2, 0), 1);
        for a in 0..3 {
            for c in 0..3 {
                assert_eq!(t.get(a, 0, c), u32::from(a == c));
            }
        }
        assert_eq!(t.genus_dimension(1).unwrap(), 3);
        assert_eq!(t.genus_dimension(2).unwrap(), 10);
    }

    #[test]
    fn guard_is_enforced() {
        let ctx = AlcoveContext::new(8, 9).unwrap();
        assert!(matches!(
            fusion_coeffs(&ctx, &PrecisionPolicy::default()),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FusionCache::new(dir.path().join("fusion.json"));
        let ctx = AlcoveContext::new(2, 3).unwrap();
        let policy = PrecisionPolicy::default();
        assert!(cache.load(&ctx).unwrap().is_none());
        let t = cache.get_or_compute(&ctx, &policy).unwrap();
        assert_eq!(cache.load(&ctx).unwrap(), Some(t.clone()));
        let other = AlcoveContext::new(3, 2).unwrap();
        cache.get_or_compute(&other, &policy).unwrap();
        assert_eq!(cache.load(&ctx).unwrap(), Some(t));
    }
}
