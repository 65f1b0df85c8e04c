use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ball::CertifiedReal;
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 32;

/// atan(1/n) · 2^w, returned with an error bound in units of 2^-w.
fn atan_inv_fixed(n: u32, w: u64) -> (BigInt, u64) {
    let n = BigUint::from(n);
    let n2 = &n * &n;
    let mut power = (BigUint::one() << w) / &n;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        if power.is_zero() {
            break;
        }
        let term = BigInt::from(&power / (2 * k + 1));
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
    }
    // Each `power` carries < 2 units of accumulated floor error, each term
    // one more from its own floor; the first omitted term is < 2 units.
    (sum, 3 * k + 2)
}

/// Enclosure of π at `precision` bits (Machin's formula).
pub fn pi(precision: u32) -> CertifiedReal {
    let w = u64::from(precision + GUARD_BITS);
    let (a5, e5) = atan_inv_fixed(5, w);
    let (a239, e239) = atan_inv_fixed(239, w);
    let mid = a5 * 16 - a239 * 4;
    let rad = BigUint::from(16 * e5 + 4 * e239);
    CertifiedReal::from_parts(mid, rad, -(w as i64), precision)
}

/// sin(x) for a ball `x` with |x| ≤ 2, by Taylor series with a tail bound.
fn sin_taylor(x: &CertifiedReal, precision: u32) -> CertifiedReal {
    let work = precision + GUARD_BITS;
    let x = x.clone().with_precision(work);
    let x2 = x.square();
    let mut term = x.clone();
    let mut sum = x;
    let cutoff = BigRational::new(BigInt::one(), BigInt::one() << u64::from(work + 8));
    let mut n: u64 = 1;
    loop {
        term = term
            .mul(&x2)
            .div_int(&BigInt::from((2 * n) * (2 * n + 1)))
            .neg();
        sum = sum.add(&term);
        n += 1;
        let size = term.abs().upper();
        if size < cutoff {
            // Alternating series with decreasing terms once n ≥ 2 and |x| ≤ 2:
            // the remainder is bounded by the next term, itself below |term|.
            return sum.inflate(&size).with_precision(precision);
        }
    }
}

/// Enclosure of sin(kπ/m), `m > 0`.
pub fn sin_pi_ratio(k: i64, m: i64, precision: u32) -> CertifiedReal {
    assert!(m > 0, "denominator must be positive");
    let period = 2 * m;
    let mut k = k.mod_floor(&period);
    let mut negate = false;
    if k >= m {
        k -= m;
        negate = true;
    }
    if 2 * k > m {
        k = m - k;
    }
    if k == 0 {
        return CertifiedReal::zero(precision);
    }
    if 2 * k == m {
        let one = CertifiedReal::one(precision);
        return if negate { one.neg() } else { one };
    }
    let work = precision + GUARD_BITS;
    let x = pi(work)
        .mul_int(&BigInt::from(k))
        .div_int(&BigInt::from(m));
    let s = sin_taylor(&x, precision);
    if negate {
        s.neg()
    } else {
        s
    }
}

/// Enclosure of cos(kπ/m), `m > 0`.
pub fn cos_pi_ratio(k: i64, m: i64, precision: u32) -> CertifiedReal {
    sin_pi_ratio(m - 2 * k, 2 * m, precision)
}

/// Enclosure of 2·sin(kπ/m) for `0 < k < m`; certified positive.
pub fn two_sin(k: i64, m: i64, precision: u32) -> Result<CertifiedReal> {
    if m < 2 {
        return Err(Error::InvalidParameters(format!("two_sin: modulus {m} < 2")));
    }
    if k.rem_euclid(m) == 0 {
        return Err(Error::InvalidParameters(format!(
            "two_sin: sin({k}π/{m}) vanishes"
        )));
    }
    if k <= 0 || k >= m {
        return Err(Error::InvalidParameters(format!(
            "two_sin: need 0 < k < m, got k={k}, m={m}"
        )));
    }
    let v = sin_pi_ratio(k, m, precision).mul_int(&BigInt::from(2));
    debug_assert!(v.is_positive());
    Ok(v)
}

/// Table of 2·sin(kπ/m) for k = 0..m (entry 0 is unused and zero).
#[derive(Debug, Clone)]
pub struct SineTable {
    modulus: i64,
    values: Vec<CertifiedReal>,
}

impl SineTable {
    pub fn new(modulus: u32, precision: u32) -> Self {
        let m = i64::from(modulus);
        let mut values = Vec::with_capacity(modulus as usize);
        values.push(CertifiedReal::zero(precision));
        for k in 1..m {
            // sin(kπ/m) = sin((m−k)π/m): reuse the mirrored entry.
            if 2 * k > m {
                let mirrored = values[(m - k) as usize].clone();
                values.push(mirrored);
            } else {
                values.push(two_sin(k, m, precision).expect("0 < k < m"));
            }
        }
        Self { modulus: m, values }
    }

    /// 2·sin(|k|π/m) with `0 < |k| < m`.
    pub fn get(&self, k: i64) -> &CertifiedReal {
        let k = k.abs();
        debug_assert!(k > 0 && k < self.modulus);
        &self.values[k as usize]
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn approx(x: f64) -> BigRational {
        BigRational::from_f64(x).unwrap()
    }

    #[test]
    fn pi_digits() {
        let p = pi(256);
        let lo = BigRational::new(
            "314159265358979323846264338327950288419".parse().unwrap(),
            BigInt::from(10u32).pow(38),
        );
        let hi = &lo + BigRational::new(BigInt::one(), BigInt::from(10u32).pow(38));
        assert!(p.lower() >= lo && p.upper() <= hi, "{p:?}");
        assert!(p.radius() < BigRational::new(BigInt::one(), BigInt::one() << 250u32));
    }

    #[test]
    fn two_sin_examples() {
        let r2 = two_sin(1, 4, 128).unwrap();
        // √2 squared is 2
        assert!(r2.square().contains(&BigRational::from_integer(2.into())));
        assert!(r2.to_f64() - std::f64::consts::SQRT_2 < 1e-15);
        assert!(two_sin(2, 4, 128)
            .unwrap()
            .contains(&BigRational::from_integer(2.into())));
        assert!(two_sin(3, 4, 128).unwrap().overlaps(&r2));
        assert!(two_sin(4, 4, 128).is_err());
        assert!(two_sin(0, 4, 128).is_err());
    }

    #[test]
    fn sine_matches_f64() {
        for m in 2..20i64 {
            for k in -3 * m..3 * m {
                let s = sin_pi_ratio(k, m, 96);
                let f = (k as f64 * std::f64::consts::PI / m as f64).sin();
                assert!((s.to_f64() - f).abs() < 1e-12, "k={k} m={m}");
                assert!(s.radius() < approx(1e-25));
            }
        }
    }

    #[test]
    fn cosine_matches_f64() {
        for m in 1..12i64 {
            for k in 0..2 * m {
                let c = cos_pi_ratio(k, m, 96);
                let f = (k as f64 * std::f64::consts::PI / m as f64).cos();
                assert!((c.to_f64() - f).abs() < 1e-12, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn pythagoras_holds_in_enclosure() {
        for (k, m) in [(1, 7), (3, 11), (5, 13)] {
            let s = sin_pi_ratio(k, m, 200);
            let c = cos_pi_ratio(k, m, 200);
            let one = s.square().add(&c.square());
            assert!(one.contains(&BigRational::one()));
            assert!(one.radius() < approx(1e-50));
        }
    }

    #[test]
    fn high_precision_sine() {
        let s = sin_pi_ratio(1, 6, 4096);
        assert!(s.contains(&BigRational::new(1.into(), 2.into())));
        let bound = BigRational::new(BigInt::one(), BigInt::one() << 4000u32);
        assert!(s.radius() < bound);
    }
}
