//! Modulo-d spin structures on a closed surface, viewed as quadratic
//! refinements q(x + y) = q(x) + q(y) + (d/2)·x·y of the intersection form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verlinde::SpinStructure;

/// Quadratic forms are stored by their values on a symplectic basis.
pub type QuadraticForm = SpinStructure;

/// An element of H_1(Σ_g; Z/d) in the basis α_1, β_1, …, α_g, β_g.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    modulus: u32,
    coeffs: Vec<(u32, u32)>,
}

impl HomologyClass {
    pub fn new(modulus: u32, coeffs: &[(i64, i64)]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameters("modulus must be positive".into()));
        }
        let m = i64::from(modulus);
        Ok(Self {
            modulus,
            coeffs: coeffs
                .iter()
                .map(|&(x, y)| (x.rem_euclid(m) as u32, y.rem_euclid(m) as u32))
                .collect(),
        })
    }

    pub fn zero(modulus: u32, genus: usize) -> Result<Self> {
        Self::new(modulus, &vec![(0, 0); genus])
    }

    /// α_ν (1-based handle index)
    pub fn alpha(modulus: u32, genus: usize, nu: usize) -> Result<Self> {
        Self::basis(modulus, genus, nu, (1, 0))
    }

    /// β_ν (1-based handle index)
    pub fn beta(modulus: u32, genus: usize, nu: usize) -> Result<Self> {
        Self::basis(modulus, genus, nu, (0, 1))
    }

    fn basis(modulus: u32, genus: usize, nu: usize, v: (i64, i64)) -> Result<Self> {
        if nu == 0 || nu > genus {
            return Err(Error::InvalidParameters(format!("handle {nu} outside 1..={genus}")));
        }
        let mut c = vec![(0, 0); genus];
        c[nu - 1] = v;
        Self::new(modulus, &c)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[(u32, u32)] {
        &self.coeffs
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                expected: self.modulus,
                actual: other.modulus,
            });
        }
        if self.genus() != other.genus() {
            return Err(Error::GenusMismatch {
                expected: self.genus(),
                actual: other.genus(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let m = self.modulus;
        Ok(Self {
            modulus: m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&(x, y), &(u, v))| ((x + u) % m, (y + v) % m))
                .collect(),
        })
    }

    /// x·y = Σ (x_ν y'_ν − y_ν x'_ν) mod d
    pub fn intersection(&self, other: &Self) -> Result<u32> {
        self.check_same(other)?;
        let m = u64::from(self.modulus);
        let mut acc = 0u64;
        for (&(x, y), &(u, v)) in self.coeffs.iter().zip(&other.coeffs) {
            acc += u64::from(x) * u64::from(v) % m;
            acc += m - u64::from(y) * u64::from(u) % m;
        }
        Ok((acc % m) as u32)
    }
}

fn require_even(modulus: u32) -> Result<()> {
    if !modulus.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "quadratic refinements need an even modulus, got {modulus}"
        )));
    }
    Ok(())
}

/// q(z) = Σ_ν (x_ν a_ν + y_ν b_ν + (d/2) x_ν y_ν) mod d.
pub fn evaluate(q: &QuadraticForm, z: &HomologyClass) -> Result<u32> {
    require_even(q.modulus())?;
    if z.modulus() != q.modulus() {
        return Err(Error::ModulusMismatch {
            expected: q.modulus(),
            actual: z.modulus(),
        });
    }
    if z.genus() != q.genus() {
        return Err(Error::GenusMismatch {
            expected: q.genus(),
            actual: z.genus(),
        });
    }
    let d = u64::from(q.modulus());
    let half = d / 2;
    let value = q
        .pairs()
        .iter()
        .zip(z.coeffs())
        .map(|(&(a, b), &(x, y))| {
            let (a, b, x, y) = (u64::from(a), u64::from(b), u64::from(x), u64::from(y));
            (x * a + y * b + half * (x * y % d)) % d
        })
        .sum::<u64>()
        % d;
    Ok(value as u32)
}

/// All d^{2g} refinements of the genus-g intersection form.
pub fn enumerate_structures(genus: usize, modulus: u32) -> Result<Vec<QuadraticForm>> {
    require_even(modulus)?;
    SpinStructure::enumerate(modulus, genus)
}

/// Σ a_ν b_ν mod 2 for a mod-2 form.
pub fn arf(q: &QuadraticForm) -> Result<u8> {
    if q.modulus() != 2 {
        return Err(Error::InvalidParameters(format!(
            "the Arf invariant is defined for d = 2, got {}",
            q.modulus()
        )));
    }
    Ok((q.pairs().iter().map(|&(a, b)| a * b).sum::<u32>() % 2) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_examples() {
        let q = QuadraticForm::new(2, &[(1, 1)]).unwrap();
        assert_eq!(evaluate(&q, &HomologyClass::zero(2, 1).unwrap()).unwrap(), 0);
        assert_eq!(evaluate(&q, &HomologyClass::alpha(2, 1, 1).unwrap()).unwrap(), 1);
        let z = HomologyClass::new(2, &[(1, 1)]).unwrap();
        assert_eq!(evaluate(&q, &z).unwrap(), 1);
        let q6 = QuadraticForm::new(6, &[(1, 4)]).unwrap();
        assert_eq!(evaluate(&q6, &HomologyClass::beta(6, 1, 1).unwrap()).unwrap(), 4);
    }

    #[test]
    fn mismatches() {
        let q = QuadraticForm::new(4, &[(1, 1)]).unwrap();
        let z = HomologyClass::zero(2, 1).unwrap();
        assert!(matches!(evaluate(&q, &z), Err(Error::ModulusMismatch { .. })));
        let z = HomologyClass::zero(4, 2).unwrap();
        assert!(matches!(evaluate(&q, &z), Err(Error::GenusMismatch { .. })));
        let odd = QuadraticForm::new(3, &[(1, 1)]).unwrap();
        assert!(evaluate(&odd, &HomologyClass::zero(3, 1).unwrap()).is_err());
        assert!(enumerate_structures(1, 3).is_err());
    }

    #[test]
    fn intersection_is_symplectic() {
        let a = HomologyClass::alpha(4, 2, 1).unwrap();
        let b = HomologyClass::beta(4, 2, 1).unwrap();
        assert_eq!(a.intersection(&b).unwrap(), 1);
        assert_eq!(b.intersection(&a).unwrap(), 3);
        assert_eq!(a.intersection(&a).unwrap(), 0);
        let b2 = HomologyClass::beta(4, 2, 2).unwrap();
        assert_eq!(a.intersection(&b2).unwrap(), 0);
    }

    #[test]
    fn arf_examples() {
        let f = |p: &[(i64, i64)]| arf(&QuadraticForm::new(2, p).unwrap()).unwrap();
        assert_eq!(f(&[(0, 0)]), 0);
        assert_eq!(f(&[(1, 1)]), 1);
        assert_eq!(f(&[(1, 1), (1, 1)]), 0);
        assert!(arf(&QuadraticForm::new(4, &[(1, 1)]).unwrap()).is_err());
    }

    #[test]
    fn structure_counts() {
        assert_eq!(enumerate_structures(1, 2).unwrap().len(), 4);
        assert_eq!(enumerate_structures(2, 4).unwrap().len(), 256);
        assert_eq!(enumerate_structures(1, 6).unwrap().len(), 36);
    }
}
