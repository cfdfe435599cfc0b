//! Exact rational multiples of π.
//!
//! Every angle in the dihedral layer has the form `(p/q)·π` with small `p` and
//! `q`, so the whole group computation can be carried out on reduced fractions.
//! Floating point only appears in [`Angle::cos_sin`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical interval an angle is reduced into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleRange {
    /// `[0, 2π)`: rotation angles.
    FullTurn,
    /// `[0, π)`: inclination of a reflection axis.
    Axis,
    /// `[0, π)`: real projective qubit states, where `φ` and `φ + π` coincide.
    Projective,
}

impl AngleRange {
    /// Period of the range in units of π.
    fn period(self) -> i64 {
        match self {
            AngleRange::FullTurn => 2,
            AngleRange::Axis | AngleRange::Projective => 1,
        }
    }
}

/// The angle `(numerator / denominator)·π`, stored as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Angle {
    numerator: i64,
    denominator: i64,
}

impl Angle {
    pub const ZERO: Angle = Angle {
        numerator: 0,
        denominator: 1,
    };

    /// Builds `(numerator/denominator)·π` reduced into `range`.
    pub fn new(numerator: i64, denominator: i64, range: AngleRange) -> Result<Angle> {
        if denominator == 0 {
            return Err(Error::Parse("angle denominator must be non-zero".into()));
        }
        let (mut num, mut den) = (numerator, denominator);
        if den < 0 {
            num = num.checked_neg().ok_or(Error::ExactArithmeticOverflow)?;
            den = den.checked_neg().ok_or(Error::ExactArithmeticOverflow)?;
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let modulus = den
            .checked_mul(range.period())
            .ok_or(Error::ExactArithmeticOverflow)?;
        Ok(Angle {
            numerator: num.rem_euclid(modulus),
            denominator: den,
        })
    }

    pub fn full_turn(numerator: i64, denominator: i64) -> Result<Angle> {
        Angle::new(numerator, denominator, AngleRange::FullTurn)
    }

    pub fn axis(numerator: i64, denominator: i64) -> Result<Angle> {
        Angle::new(numerator, denominator, AngleRange::Axis)
    }

    pub fn projective(numerator: i64, denominator: i64) -> Result<Angle> {
        Angle::new(numerator, denominator, AngleRange::Projective)
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Re-reduces an existing angle into another range.
    pub fn normalized(self, range: AngleRange) -> Result<Angle> {
        Angle::new(self.numerator, self.denominator, range)
    }

    pub fn add(self, rhs: Angle, range: AngleRange) -> Result<Angle> {
        let lcm = (self.denominator / self.denominator.gcd(&rhs.denominator))
            .checked_mul(rhs.denominator)
            .ok_or(Error::ExactArithmeticOverflow)?;
        let lhs_num = self
            .numerator
            .checked_mul(lcm / self.denominator)
            .ok_or(Error::ExactArithmeticOverflow)?;
        let rhs_num = rhs
            .numerator
            .checked_mul(lcm / rhs.denominator)
            .ok_or(Error::ExactArithmeticOverflow)?;
        let num = lhs_num
            .checked_add(rhs_num)
            .ok_or(Error::ExactArithmeticOverflow)?;
        Angle::new(num, lcm, range)
    }

    pub fn sub(self, rhs: Angle, range: AngleRange) -> Result<Angle> {
        self.add(rhs.negate(range)?, range)
    }

    pub fn negate(self, range: AngleRange) -> Result<Angle> {
        let num = self
            .numerator
            .checked_neg()
            .ok_or(Error::ExactArithmeticOverflow)?;
        Angle::new(num, self.denominator, range)
    }

    pub fn scale(self, k: i64, range: AngleRange) -> Result<Angle> {
        let num = self
            .numerator
            .checked_mul(k)
            .ok_or(Error::ExactArithmeticOverflow)?;
        Angle::new(num, self.denominator, range)
    }

    /// Exact half of the angle.
    pub fn halve(self, range: AngleRange) -> Result<Angle> {
        let den = self
            .denominator
            .checked_mul(2)
            .ok_or(Error::ExactArithmeticOverflow)?;
        Angle::new(self.numerator, den, range)
    }

    /// Value in radians. Lossy; use only at the evaluation boundary.
    pub fn radians(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64 * std::f64::consts::PI
    }

    /// Cosine and sine of the angle.
    ///
    /// Multiples of π/4 map to the literal values `0`, `±1` and `±√2/2`, so
    /// these come out bit-identical on every platform.
    pub fn cos_sin(&self) -> (f64, f64) {
        const H: f64 = std::f64::consts::FRAC_1_SQRT_2;
        if matches!(self.denominator, 1 | 2 | 4) {
            let eighths = (self.numerator * (4 / self.denominator)).rem_euclid(8);
            return match eighths {
                0 => (1.0, 0.0),
                1 => (H, H),
                2 => (0.0, 1.0),
                3 => (-H, H),
                4 => (-1.0, 0.0),
                5 => (-H, -H),
                6 => (0.0, -1.0),
                _ => (H, -H),
            };
        }
        let reduced = (self.numerator.rem_euclid(2 * self.denominator)) as f64
            / self.denominator as f64
            * std::f64::consts::PI;
        (reduced.cos(), reduced.sin())
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as i128 * other.denominator as i128;
        let rhs = other.numerator as i128 * self.denominator as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}·π", self.numerator, self.denominator)
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Parses `p/q·π` (also `p/q*pi`, `p·π`, `π`, `0`). The result is reduced
    /// into [`AngleRange::FullTurn`]; callers re-normalize as needed.
    fn from_str(s: &str) -> Result<Angle> {
        let bad = || Error::Parse(format!("invalid angle `{s}`"));
        let trimmed = s.trim();
        if trimmed == "0" {
            return Ok(Angle::ZERO);
        }
        let body = ["·π", "*π", "π", "*pi", "pi"]
            .iter()
            .find_map(|suffix| trimmed.strip_suffix(suffix))
            .ok_or_else(bad)?
            .trim();
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (body, "1"),
        };
        let num: i64 = match num {
            "" => 1,
            "-" => -1,
            other => other.parse().map_err(|_| bad())?,
        };
        let den: i64 = den.parse().map_err(|_| bad())?;
        if den <= 0 {
            return Err(bad());
        }
        Angle::full_turn(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ft(p: i64, q: i64) -> Angle {
        Angle::full_turn(p, q).unwrap()
    }

    #[test]
    fn adds_dyadic_angles() {
        let quarter = ft(1, 4);
        assert_eq!(quarter.add(quarter, AngleRange::FullTurn).unwrap(), ft(1, 2));
    }

    #[test]
    fn wraps_to_zero() {
        let sum = ft(1, 8).add(ft(15, 8), AngleRange::FullTurn).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum, Angle::ZERO);
    }

    #[test]
    fn adds_mixed_denominators() {
        let sum = ft(2, 3).add(ft(2, 5), AngleRange::FullTurn).unwrap();
        assert_eq!((sum.numerator(), sum.denominator()), (16, 15));
        // floating oracle, independent of the fraction arithmetic
        let expected = 2.0 * std::f64::consts::PI / 3.0 + 2.0 * std::f64::consts::PI / 5.0;
        assert!((sum.radians() - expected).abs() < 1e-12);
    }

    #[test]
    fn negates_and_scales() {
        assert_eq!(ft(1, 4).negate(AngleRange::FullTurn).unwrap(), ft(7, 4));
        assert!(ft(2, 8).scale(8, AngleRange::FullTurn).unwrap().is_zero());
        assert!(ft(2, 7).scale(7, AngleRange::FullTurn).unwrap().is_zero());
    }

    #[test]
    fn ranges_reduce_differently() {
        let a = Angle::new(5, 4, AngleRange::FullTurn).unwrap();
        assert_eq!((a.numerator(), a.denominator()), (5, 4));
        let b = Angle::new(5, 4, AngleRange::Axis).unwrap();
        assert_eq!((b.numerator(), b.denominator()), (1, 4));
        let c = Angle::new(-1, 4, AngleRange::Projective).unwrap();
        assert_eq!((c.numerator(), c.denominator()), (3, 4));
        let d = Angle::new(6, -8, AngleRange::FullTurn).unwrap();
        assert_eq!((d.numerator(), d.denominator()), (5, 4));
    }

    #[test]
    fn overflow_is_reported() {
        let big = Angle::full_turn(1, i64::MAX / 2).unwrap();
        let other = Angle::full_turn(1, i64::MAX / 2 - 1).unwrap();
        assert_eq!(
            big.add(other, AngleRange::FullTurn),
            Err(Error::ExactArithmeticOverflow)
        );
        assert_eq!(
            big.halve(AngleRange::FullTurn).and_then(|a| a.halve(AngleRange::FullTurn)),
            Err(Error::ExactArithmeticOverflow)
        );
    }

    #[test]
    fn exact_trig_shortcuts() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(ft(1, 4).cos_sin(), (h, h));
        assert_eq!(Angle::ZERO.cos_sin(), (1.0, 0.0));
        assert_eq!(ft(1, 2).cos_sin(), (0.0, 1.0));
        assert_eq!(ft(1, 1).cos_sin(), (-1.0, 0.0));
        assert_eq!(ft(7, 4).cos_sin(), (h, -h));
        assert_eq!(h, 2f64.sqrt() / 2.0);
    }

    /// Taylor series evaluated after reduction to [-π, π]; an oracle that
    /// shares nothing with `f64::sin_cos`.
    fn series_cos_sin(x: f64) -> (f64, f64) {
        let (mut cos, mut sin) = (0.0, 0.0);
        let mut term = 1.0;
        for k in 0..40u32 {
            match k % 4 {
                0 => cos += term,
                1 => sin += term,
                2 => cos -= term,
                _ => sin -= term,
            }
            term *= x / (k as f64 + 1.0);
        }
        (cos, sin)
    }

    #[test]
    fn seventh_turn_matches_series() {
        let (c, s) = ft(2, 7).cos_sin();
        let (sc, ss) = series_cos_sin(2.0 * std::f64::consts::PI / 7.0);
        assert!((c - sc).abs() < 1e-12 && (s - ss).abs() < 1e-12);
        assert!((c - 0.623_489_801_858_733_5).abs() < 1e-12);
        assert!((s - 0.781_831_482_468_029_8).abs() < 1e-12);
    }

    #[test]
    fn renders_and_parses() {
        assert_eq!(ft(3, 8).to_string(), "3/8·π");
        assert_eq!(Angle::ZERO.to_string(), "0/1·π");
        for s in ["3/8·π", "3/8*pi", "11/8π", "-5/8·π"] {
            let a: Angle = s.parse().unwrap();
            let again: Angle = a.to_string().parse().unwrap();
            assert_eq!(a, again);
        }
        assert_eq!("π".parse::<Angle>().unwrap(), ft(1, 1));
        assert_eq!("0".parse::<Angle>().unwrap(), Angle::ZERO);
        assert!("3/0·π".parse::<Angle>().is_err());
        assert!("abc".parse::<Angle>().is_err());
    }

    #[test]
    fn ordering_is_by_value() {
        assert!(ft(1, 8) < ft(1, 4));
        assert!(ft(3, 4) > ft(2, 3));
        assert_eq!(ft(2, 4).cmp(&ft(1, 2)), Ordering::Equal);
    }

    fn small_angle() -> impl Strategy<Value = Angle> {
        (-200i64..200, 1i64..64).prop_map(|(p, q)| Angle::full_turn(p, q).unwrap())
    }

    proptest! {
        #[test]
        fn addition_commutes(a in small_angle(), b in small_angle()) {
            prop_assert_eq!(
                a.add(b, AngleRange::FullTurn).unwrap(),
                b.add(a, AngleRange::FullTurn).unwrap()
            );
        }

        #[test]
        fn negation_cancels(a in small_angle()) {
            let n = a.negate(AngleRange::FullTurn).unwrap();
            prop_assert!(a.add(n, AngleRange::FullTurn).unwrap().is_zero());
            let axis = a.normalized(AngleRange::Axis).unwrap();
            let n = axis.negate(AngleRange::Axis).unwrap();
            prop_assert!(axis.add(n, AngleRange::Axis).unwrap().is_zero());
        }

        #[test]
        fn full_period_scaling_vanishes(a in small_angle()) {
            let q = a.denominator();
            prop_assert!(a.scale(2 * q, AngleRange::FullTurn).unwrap().is_zero());
        }

        #[test]
        fn reduced_and_in_range(p in -10_000i64..10_000, q in 1i64..500) {
            for range in [AngleRange::FullTurn, AngleRange::Axis, AngleRange::Projective] {
                let a = Angle::new(p, q, range).unwrap();
                prop_assert!(a.numerator() == 0 || a.numerator().gcd(&a.denominator()) == 1);
                prop_assert!(a.numerator() >= 0);
                prop_assert!(a.numerator() < a.denominator() * range.period());
            }
        }
    }

    #[test]
    fn pythagorean_identity_on_random_rationals() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let p = rng.random_range(-1000..1000);
            let q = rng.random_range(1..1000);
            let (c, s) = ft(p, q).cos_sin();
            assert!((c * c + s * s - 1.0).abs() < 1e-12);
        }
    }
}
