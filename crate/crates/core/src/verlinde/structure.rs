use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A modulo-d spin structure on a closed genus-g surface, given by the values
/// `(a_ν, b_ν) = (q(α_ν), q(β_ν))` of its quadratic form on a symplectic basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct SpinStructure {
    modulus: u32,
    pairs: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    modulus: u32,
    pairs: Vec<(i64, i64)>,
}

impl TryFrom<RawStructure> for SpinStructure {
    type Error = Error;

    fn try_from(raw: RawStructure) -> Result<Self> {
        SpinStructure::new(raw.modulus, &raw.pairs)
    }
}

impl From<SpinStructure> for RawStructure {
    fn from(s: SpinStructure) -> Self {
        RawStructure {
            modulus: s.modulus,
            pairs: s
                .pairs
                .iter()
                .map(|&(a, b)| (i64::from(a), i64::from(b)))
                .collect(),
        }
    }
}

impl SpinStructure {
    /// Reduces every entry modulo `modulus`. The genus is the number of pairs.
    pub fn new(modulus: u32, pairs: &[(i64, i64)]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameters("modulus must be positive".into()));
        }
        if pairs.is_empty() {
            return Err(Error::InvalidParameters("genus must be at least 1".into()));
        }
        let m = i64::from(modulus);
        let pairs = pairs
            .iter()
            .map(|&(a, b)| (a.rem_euclid(m) as u32, b.rem_euclid(m) as u32))
            .collect();
        Ok(Self { modulus, pairs })
    }

    /// The structure with all basis values zero.
    pub fn zero(modulus: u32, genus: usize) -> Result<Self> {
        Self::new(modulus, &vec![(0, 0); genus])
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// σ ↦ −σ
    pub fn negated(&self) -> Self {
        let m = self.modulus;
        Self {
            modulus: m,
            pairs: self
                .pairs
                .iter()
                .map(|&(a, b)| ((m - a) % m, (m - b) % m))
                .collect(),
        }
    }

    /// All `modulus^(2·genus)` structures, in lexicographic order of
    /// `(a_1, b_1, …, a_g, b_g)`.
    pub fn enumerate(modulus: u32, genus: usize) -> Result<Vec<Self>> {
        if modulus == 0 || genus == 0 {
            return Err(Error::InvalidParameters(format!(
                "need modulus ≥ 1 and genus ≥ 1 (got {modulus}, {genus})"
            )));
        }
        let count = u64::from(modulus)
            .checked_pow(2 * genus as u32)
            .filter(|&c| c <= 1 << 24)
            .ok_or_else(|| Error::GuardExceeded(format!("{modulus}^{} structures", 2 * genus)))?;
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0u32; 2 * genus];
        for _ in 0..count {
            out.push(Self {
                modulus,
                pairs: digits.chunks(2).map(|c| (c[0], c[1])).collect(),
            });
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < modulus {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SpinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{a},{b}]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_display() {
        let s = SpinStructure::new(4, &[(5, -1), (0, 2)]).unwrap();
        assert_eq!(s.pairs(), &[(1, 3), (0, 2)]);
        assert_eq!(s.to_string(), "[[1,3],[0,2]]");
        assert_eq!(s.negated().pairs(), &[(3, 1), (0, 2)]);
        assert!(SpinStructure::new(4, &[]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(SpinStructure::enumerate(2, 1).unwrap().len(), 4);
        assert_eq!(SpinStructure::enumerate(4, 2).unwrap().len(), 256);
        let six = SpinStructure::enumerate(6, 1).unwrap();
        assert_eq!(six.len(), 36);
        assert_eq!(six[7].pairs(), &[(1, 1)]);
    }

    #[test]
    fn serde_roundtrip() {
        let s = SpinStructure::new(6, &[(3, 3), (0, 0)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"modulus":6,"pairs":[[3,3],[0,0]]}"#);
        assert_eq!(serde_json::from_str::<SpinStructure>(&json).unwrap(), s);
    }
}
