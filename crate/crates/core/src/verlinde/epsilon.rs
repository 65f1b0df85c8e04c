use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The weight ε_λ(a, b) ∈ {0, 1, 1/2, −1/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EpsilonWeight {
    Zero,
    One,
    Half,
    MinusHalf,
}

impl EpsilonWeight {
    pub fn to_rational(self) -> BigRational {
        let (n, d) = match self {
            Self::Zero => (0, 1),
            Self::One => (1, 1),
            Self::Half => (1, 2),
            Self::MinusHalf => (-1, 2),
        };
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn is_zero(self) -> bool {
        self == Self::Zero
    }
}

impl fmt::Display for EpsilonWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Zero => "0",
            Self::One => "1",
            Self::Half => "1/2",
            Self::MinusHalf => "-1/2",
        })
    }
}

/// Spin weight of a weight whose orbit has the given parity and stabilizer order.
///
/// Residues may be any integers; only their classes modulo `stab_order`
/// (and, on odd orbits, the parity of `2a/stab_order`) matter, so any
/// representative modulo a multiple of `stab_order` gives the same answer.
pub fn epsilon(orbit_parity_even: bool, stab_order: u32, a: i64, b: i64) -> Result<EpsilonWeight> {
    if stab_order == 0 {
        return Err(Error::InvalidParameters("stabilizer order 0".into()));
    }
    let s = i64::from(stab_order);
    if orbit_parity_even {
        let hit = a.rem_euclid(s) == 0 && b.rem_euclid(s) == 0;
        return Ok(if hit { EpsilonWeight::One } else { EpsilonWeight::Zero });
    }
    if s % 2 == 1 {
        return Err(Error::OddStabilizer(stab_order));
    }
    let h = s / 2;
    if a.rem_euclid(h) != 0 || b.rem_euclid(h) != 0 {
        return Ok(EpsilonWeight::Zero);
    }
    // 2a/|Stab| = a/h; only its parity matters and that is well defined mod 2h.
    let odd = (a.div_euclid(h) * b.div_euclid(h)).rem_euclid(2) == 1;
    Ok(if odd {
        EpsilonWeight::MinusHalf
    } else {
        EpsilonWeight::Half
    })
}

/// Cohomological weight: 1 iff both residues vanish modulo `stab_order`.
pub fn epsilon_coho(stab_order: u32, a: i64, b: i64) -> Result<EpsilonWeight> {
    if stab_order == 0 {
        return Err(Error::InvalidParameters("stabilizer order 0".into()));
    }
    let s = i64::from(stab_order);
    Ok(if a.rem_euclid(s) == 0 && b.rem_euclid(s) == 0 {
        EpsilonWeight::One
    } else {
        EpsilonWeight::Zero
    })
}
