//! Randomized properties of the certified arithmetic and the combinatorics.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use verlinde_core::alcove::{orbit_info, rho_step, AlcoveContext};
use verlinde_core::arith::{certified_round, sin_pi_ratio, Rounding};
use verlinde_core::verlinde::{epsilon, epsilon_coho};
use verlinde_core::{CertifiedReal, PrecisionPolicy};

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..5_000).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    rational().prop_filter("nonzero", |q| *q != BigRational::from_integer(0.into()))
}

proptest! {
    #[test]
    fn field_operations_enclose(x in rational(), y in nonzero_rational(), prec in 24u32..200) {
        let (bx, by) = (CertifiedReal::from_rational(&x, prec), CertifiedReal::from_rational(&y, prec));
        prop_assert!(bx.contains(&x));
        prop_assert!(bx.add(&by).contains(&(&x + &y)));
        prop_assert!(bx.sub(&by).contains(&(&x - &y)));
        prop_assert!(bx.mul(&by).contains(&(&x * &y)));
        prop_assert!(bx.div(&by).unwrap().contains(&(&x / &y)));
        prop_assert!(by.powi(-3).unwrap().contains(&(BigRational::from_integer(1.into()) / (&y * &y * &y))));
    }

    #[test]
    fn sine_enclosures_nest(k in -200i64..200, m in 1i64..100, prec in 32u32..256) {
        let coarse = sin_pi_ratio(k, m, prec);
        let fine = sin_pi_ratio(k, m, 4 * prec);
        prop_assert!(coarse.overlaps(&fine));
        prop_assert!(fine.radius() <= coarse.radius());
    }

    #[test]
    fn rounding_stays_inside(mid in -1_000_000i64..1_000_000, rad in 0u64..600, den in 1u64..1000) {
        let ball = CertifiedReal::from_rational(&BigRational::new(mid.into(), BigInt::from(den)), 96)
            .inflate(&BigRational::new(rad.into(), 1000u32.into()));
        if let Ok(Rounding::Integer(v)) = certified_round(&ball, &PrecisionPolicy::default()) {
            prop_assert!(ball.contains(&BigRational::from_integer(v)));
        }
    }

    #[test]
    fn epsilon_depends_on_residues(odd in any::<bool>(), half_stab in 1u32..5, a in -20i64..20, b in -20i64..20, shift in -3i64..3) {
        let stab = 2 * half_stab;
        let modulus = i64::from(stab) * 3;
        let w = epsilon(!odd, stab, a, b).unwrap();
        prop_assert_eq!(w, epsilon(!odd, stab, a + shift * modulus, b - shift * modulus).unwrap());
        prop_assert_eq!(epsilon_coho(stab, a, b).unwrap(), epsilon_coho(stab, a + shift * modulus, b).unwrap());
    }

    #[test]
    fn orbits_are_closed(n in 2u32..7, k in 2u32..7, pick in 0usize..1000) {
        let ctx = AlcoveContext::new(n, k).unwrap();
        let weights = ctx.weights();
        let w = &weights[pick % weights.len()];
        let info = orbit_info(w, &ctx, 1).unwrap();
        prop_assert_eq!(n % info.orbit_size, 0);
        for x in &info.orbit {
            let image = rho_step(x, &ctx).unwrap();
            prop_assert!(info.orbit.contains(&image));
        }
    }
}
