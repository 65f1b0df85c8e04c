use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A real number enclosed by the ball `[mid − rad, mid + rad] · 2^exp`.
///
/// Every operation returns a ball containing the exact result of the same
/// operation applied to any points of the input balls. Midpoints are kept to
/// roughly `precision` significant bits; the truncation error is folded into
/// the radius.
#[derive(Clone, PartialEq, Eq)]
pub struct CertifiedReal {
    mid: BigInt,
    rad: BigUint,
    exp: i64,
    precision: u32,
}

fn shr_floor(x: &BigInt, shift: u64) -> BigInt {
    // `>>` on negative BigInt rounds toward −∞, which is what we want.
    x >> shift
}

fn shr_ceil(x: &BigUint, shift: u64) -> BigUint {
    let q = x >> shift;
    if (&q << shift) == *x {
        q
    } else {
        q + 1u32
    }
}

fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

impl CertifiedReal {
    pub fn from_integer(value: impl Into<BigInt>, precision: u32) -> Self {
        Self {
            mid: value.into(),
            rad: BigUint::zero(),
            exp: 0,
            precision,
        }
        .normalized()
    }

    /// Encloses the rational `num / den` (`den ≠ 0`).
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, precision: u32) -> Self {
        let num = Self::from_integer(num, precision);
        let den = Self::from_integer(den, precision);
        num.div(&den).expect("nonzero denominator")
    }

    pub fn from_rational(q: &BigRational, precision: u32) -> Self {
        Self::from_ratio(q.numer().clone(), q.denom().clone(), precision)
    }

    /// Raw constructor for the ball `[mid − rad, mid + rad] · 2^exp`.
    pub fn from_parts(mid: BigInt, rad: BigUint, exp: i64, precision: u32) -> Self {
        Self {
            mid,
            rad,
            exp,
            precision,
        }
        .normalized()
    }

    pub fn zero(precision: u32) -> Self {
        Self::from_integer(0, precision)
    }

    pub fn one(precision: u32) -> Self {
        Self::from_integer(1, precision)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn midpoint_parts(&self) -> (&BigInt, i64) {
        (&self.mid, self.exp)
    }

    pub fn radius_parts(&self) -> (&BigUint, i64) {
        (&self.rad, self.exp)
    }

    /// Exact midpoint as a rational.
    pub fn midpoint(&self) -> BigRational {
        dyadic(self.mid.clone(), self.exp)
    }

    /// Exact radius as a rational.
    pub fn radius(&self) -> BigRational {
        dyadic(BigInt::from(self.rad.clone()), self.exp)
    }

    pub fn lower(&self) -> BigRational {
        dyadic(&self.mid - BigInt::from(self.rad.clone()), self.exp)
    }

    pub fn upper(&self) -> BigRational {
        dyadic(&self.mid + BigInt::from(self.rad.clone()), self.exp)
    }

    /// Approximate midpoint, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let m = self.mid.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(self.exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Certified strictly positive: `mid − rad > 0`.
    pub fn is_positive(&self) -> bool {
        self.mid.is_positive() && self.mid.magnitude() > &self.rad
    }

    /// Certified strictly negative.
    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && self.mid.magnitude() > &self.rad
    }

    /// Certified nonzero.
    pub fn is_nonzero(&self) -> bool {
        self.mid.magnitude() > &self.rad
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower() <= x && x <= &self.upper()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_nonzero()
    }

    /// The two enclosures share at least one point.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Compares the radius with `bound` exactly.
    pub fn radius_cmp(&self, bound: &BigRational) -> Ordering {
        self.radius().cmp(bound)
    }

    pub fn with_precision(mut self, precision: u32) -> Self {
        self.precision = precision;
        self.normalized()
    }

    fn normalized(mut self) -> Self {
        let prec = u64::from(self.precision.max(8));
        let mid_excess = self.mid.bits().saturating_sub(prec);
        let rad_excess = self.rad.bits().saturating_sub(prec);
        let shift = mid_excess.max(rad_excess);
        if shift > 0 {
            let mid = shr_floor(&self.mid, shift);
            let lost = !(&mid << shift == self.mid);
            self.mid = mid;
            self.rad = shr_ceil(&self.rad, shift) + u32::from(lost);
            self.exp += shift as i64;
        }
        if self.mid.is_zero() && self.rad.is_zero() {
            self.exp = 0;
        }
        self
    }

    fn aligned(a: &Self, b: &Self) -> (BigInt, BigUint, BigInt, BigUint, i64) {
        let exp = a.exp.min(b.exp);
        let sa = (a.exp - exp) as u64;
        let sb = (b.exp - exp) as u64;
        (
            &a.mid << sa,
            &a.rad << sa,
            &b.mid << sb,
            &b.rad << sb,
            exp,
        )
    }

    fn result_precision(&self, other: &Self) -> u32 {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.mid.is_zero() && other.rad.is_zero() {
            return self.clone().with_precision(self.result_precision(other));
        }
        if self.mid.is_zero() && self.rad.is_zero() {
            return other.clone().with_precision(self.result_precision(other));
        }
        let (am, ar, bm, br, exp) = Self::aligned(self, other);
        Self::from_parts(am + bm, ar + br, exp, self.result_precision(other))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            mid: -&self.mid,
            rad: self.rad.clone(),
            exp: self.exp,
            precision: self.precision,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mid: self.mid.abs(),
            rad: self.rad.clone(),
            exp: self.exp,
            precision: self.precision,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let am = self.mid.magnitude();
        let bm = other.mid.magnitude();
        let rad = am * &other.rad + bm * &self.rad + &self.rad * &other.rad;
        Self::from_parts(
            &self.mid * &other.mid,
            rad,
            self.exp + other.exp,
            self.result_precision(other),
        )
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::from_parts(
            &self.mid * k,
            &self.rad * k.magnitude(),
            self.exp,
            self.precision,
        )
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.mul_int(q.numer()).div_int(q.denom())
    }

    /// Multiplies by `2^k`, exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !(out.mid.is_zero() && out.rad.is_zero()) {
            out.exp += k;
        }
        out
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "division by zero");
        let divisor = k.magnitude();
        let extra = u64::from(self.precision) + divisor.bits() + 2;
        let shifted: BigInt = &self.mid << extra;
        let (mut q, r) = shifted.div_mod_floor(&BigInt::from(divisor.clone()));
        let lost = !r.is_zero();
        let rad = ceil_div(&(&self.rad << extra), divisor) + u32::from(lost);
        if k.is_negative() {
            q = -q;
        }
        Self::from_parts(q, rad, self.exp - extra as i64, self.precision)
    }

    /// Certified division. Returns `None` unless the divisor is certified nonzero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.is_nonzero() {
            return None;
        }
        let prec = self.result_precision(other);
        let my = other.mid.magnitude();
        let mx = self.mid.magnitude();
        // Scale so the quotient carries about `prec` bits.
        let s = (i64::from(prec) + 4 + my.bits() as i64 - mx.bits() as i64).max(0) as u64
            + other.rad.bits().min(64);
        let num: BigInt = &self.mid << s;
        let (mut q, r) = num.magnitude().div_rem(my);
        let lost = !r.is_zero();
        // |x/y − mx/my| ≤ (rx·|my| + |mx|·ry) / (|my| (|my| − ry))
        let err_num = (&self.rad * my + mx * &other.rad) << s;
        let err_den = my * (my - &other.rad);
        let rad = ceil_div(&err_num, &err_den) + u32::from(lost);
        let negative = self.mid.is_negative() != other.mid.is_negative();
        let mut qi = BigInt::from_biguint(Sign::Plus, std::mem::take(&mut q));
        if negative {
            qi = -qi;
        }
        Some(Self::from_parts(
            qi,
            rad,
            self.exp - other.exp - s as i64,
            prec,
        ))
    }

    pub fn recip(&self) -> Option<Self> {
        Self::one(self.precision).div(self)
    }

    /// Integer power; negative exponents require a certified nonzero base.
    pub fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.precision);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.square();
            }
        }
        Some(acc)
    }

    /// The ball enlarged by `extra` (an absolute error bound).
    pub fn inflate(&self, extra: &BigRational) -> Self {
        if extra.is_zero() {
            return self.clone();
        }
        let (n, d) = (extra.numer().magnitude(), extra.denom().magnitude());
        // Work at an exponent fine enough to represent `extra` to ~32 bits.
        let target = self.exp.min(n.bits() as i64 - d.bits() as i64 - 32);
        let shift = (self.exp - target) as u64;
        let mid = &self.mid << shift;
        let rad = &self.rad << shift;
        // `extra` in units of 2^target, rounded up
        let units = if target >= 0 {
            ceil_div(n, &(d << target as u64))
        } else {
            ceil_div(&(n << (-target) as u64), d)
        };
        Self::from_parts(mid, rad + units, target, self.precision)
    }

    /// `ceil(lower)` and `floor(upper)`: the smallest and largest integers in
    /// the ball (the first exceeds the second when there are none).
    pub(crate) fn integer_range(&self) -> (BigInt, BigInt) {
        let lo = &self.mid - BigInt::from(self.rad.clone());
        let hi = &self.mid + BigInt::from(self.rad.clone());
        if self.exp >= 0 {
            let s = self.exp as u64;
            (lo << s, hi << s)
        } else {
            let d = BigInt::one() << (-self.exp) as u64;
            (lo.div_ceil(&d), hi.div_floor(&d))
        }
    }
}

pub(crate) fn dyadic(m: BigInt, exp: i64) -> BigRational {
    if exp >= 0 {
        BigRational::from_integer(m << exp as u64)
    } else {
        BigRational::new(m, BigInt::one() << (-exp) as u64)
    }
}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CertifiedReal({} ± {:e} @{}b)",
            self.to_f64(),
            self.radius().to_f64().unwrap_or(f64::NAN),
            self.precision
        )
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {:e}",
            self.to_f64(),
            self.radius().to_f64().unwrap_or(f64::NAN)
        )
    }
}
