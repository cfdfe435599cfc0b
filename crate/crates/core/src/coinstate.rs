//! Real projective coin states and the dihedral action on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angle::{Angle, AngleRange};
use crate::dihedral::PlanarIsometry;
use crate::error::{Error, Result};

/// The state `cos φ|0⟩ + sin φ|1⟩` with `φ ∈ [0, π)`.
///
/// `|ψ⟩` and `−|ψ⟩` are the same state, so `φ` is only meaningful mod π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoinState {
    phi: Angle,
}

impl CoinState {
    pub fn from_angle(phi: Angle) -> Result<CoinState> {
        Ok(CoinState {
            phi: phi.normalized(AngleRange::Projective)?,
        })
    }

    fn eighths(k: i64) -> CoinState {
        CoinState {
            phi: Angle::projective(k, 4).expect("quarter turns are small"),
        }
    }

    /// Heads, `|0⟩`.
    pub fn zero() -> CoinState {
        CoinState::eighths(0)
    }

    /// Tails, `|1⟩`.
    pub fn one() -> CoinState {
        CoinState::eighths(2)
    }

    pub fn plus() -> CoinState {
        CoinState::eighths(1)
    }

    /// `|−⟩`, stored as `3π/4` because `cos(3π/4)|0⟩ + sin(3π/4)|1⟩ = −|−⟩`.
    pub fn minus() -> CoinState {
        CoinState::eighths(3)
    }

    pub fn basis(bit: bool) -> CoinState {
        if bit {
            CoinState::one()
        } else {
            CoinState::zero()
        }
    }

    pub fn phi(&self) -> Angle {
        self.phi
    }

    pub fn is_basis(&self) -> bool {
        *self == CoinState::zero() || *self == CoinState::one()
    }

    /// The orthogonal state; for basis states this is the other basis state.
    pub fn orthogonal(&self) -> CoinState {
        let half = Angle::projective(1, 2).expect("π/2");
        CoinState {
            phi: self.phi.add(half, AngleRange::Projective).expect("small angles"),
        }
    }

    /// Real amplitudes `(cos φ, sin φ)`.
    pub fn amplitudes(&self) -> (f64, f64) {
        self.phi.cos_sin()
    }

    /// Applies an isometry: `R_α` shifts `φ` by `α`, `S_β` maps `φ ↦ 2β − φ`.
    pub fn act(&self, p: &PlanarIsometry) -> Result<CoinState> {
        let phi = match p {
            PlanarIsometry::Rotor(alpha) => self.phi.add(*alpha, AngleRange::Projective)?,
            PlanarIsometry::Reflector(beta) => beta
                .scale(2, AngleRange::Projective)?
                .sub(self.phi, AngleRange::Projective)?,
        };
        Ok(CoinState { phi })
    }

    /// Applies moves left to right (the first element acts first).
    pub fn act_all<'a>(&self, moves: impl IntoIterator<Item = &'a PlanarIsometry>) -> Result<CoinState> {
        moves.into_iter().try_fold(*self, |state, p| state.act(p))
    }
}

/// Free-function form of [`CoinState::act`].
pub fn act(p: &PlanarIsometry, x: &CoinState) -> Result<CoinState> {
    x.act(p)
}

/// Probability of measuring `target` when the coin is in `state`: `cos²(Δφ)`.
///
/// Differences that are multiples of π/4 return the literal `1.0`, `0.5` or
/// `0.0`.
pub fn win_probability(state: &CoinState, target: &CoinState) -> f64 {
    let diff = state
        .phi
        .sub(target.phi, AngleRange::Projective)
        .expect("projective angles are small");
    match (diff.numerator(), diff.denominator()) {
        (0, _) => 1.0,
        (1, 2) => 0.0,
        (_, 4) => 0.5,
        _ => {
            let (c, _) = diff.cos_sin();
            c * c
        }
    }
}

impl fmt::Display for CoinState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == CoinState::zero() {
            f.write_str("|0⟩")
        } else if *self == CoinState::one() {
            f.write_str("|1⟩")
        } else if *self == CoinState::plus() {
            f.write_str("|+⟩")
        } else if *self == CoinState::minus() {
            f.write_str("|−⟩")
        } else {
            write!(f, "cos({0})|0⟩+sin({0})|1⟩", self.phi)
        }
    }
}

impl FromStr for CoinState {
    type Err = Error;

    /// Accepts `0`, `1`, `+`, `-` (optionally in ket brackets) or an angle.
    fn from_str(s: &str) -> Result<CoinState> {
        let inner = s
            .trim()
            .trim_start_matches('|')
            .trim_end_matches('⟩')
            .trim_end_matches('>');
        match inner {
            "0" => Ok(CoinState::zero()),
            "1" => Ok(CoinState::one()),
            "+" => Ok(CoinState::plus()),
            "-" | "−" => Ok(CoinState::minus()),
            other => {
                if let Some(rest) = other.strip_prefix("cos(") {
                    let angle = rest.split(')').next().unwrap_or_default();
                    return CoinState::from_angle(angle.parse()?);
                }
                other
                    .parse::<Angle>()
                    .and_then(CoinState::from_angle)
                    .map_err(|_| Error::Parse(format!("invalid coin state `{s}`")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::isometries;

    fn amp_close(x: &CoinState, amps: (f64, f64)) -> bool {
        // projective comparison: equal up to sign
        let (a, b) = x.amplitudes();
        let same = (a - amps.0).abs() < 1e-12 && (b - amps.1).abs() < 1e-12;
        let flipped = (a + amps.0).abs() < 1e-12 && (b + amps.1).abs() < 1e-12;
        same || flipped
    }

    #[test]
    fn hadamard_sends_heads_to_plus() {
        let h = PlanarIsometry::hadamard();
        assert_eq!(CoinState::zero().act(&h).unwrap(), CoinState::plus());
        assert_eq!(CoinState::one().act(&h).unwrap(), CoinState::minus());
    }

    #[test]
    fn identity_and_flip() {
        for x in [CoinState::zero(), CoinState::one(), CoinState::plus(), CoinState::minus()] {
            assert_eq!(x.act(&PlanarIsometry::identity()).unwrap(), x);
        }
        let f = PlanarIsometry::flip();
        assert_eq!(CoinState::minus().act(&f).unwrap(), CoinState::minus());
        assert_eq!(CoinState::plus().act(&f).unwrap(), CoinState::plus());
        assert_eq!(CoinState::zero().act(&f).unwrap(), CoinState::one());
    }

    #[test]
    fn probabilities() {
        assert_eq!(win_probability(&CoinState::zero(), &CoinState::zero()), 1.0);
        assert_eq!(win_probability(&CoinState::plus(), &CoinState::zero()), 0.5);
        assert_eq!(win_probability(&CoinState::minus(), &CoinState::one()), 0.5);
        assert_eq!(win_probability(&CoinState::one(), &CoinState::zero()), 0.0);
        // inner-product oracle for |−⟩ against |1⟩
        let (a, b) = CoinState::minus().amplitudes();
        let overlap = a * 0.0 + b * 1.0;
        assert!((overlap * overlap - 0.5).abs() < 1e-15);
        let x = CoinState::from_angle(Angle::full_turn(1, 6).unwrap()).unwrap();
        assert!((win_probability(&x, &CoinState::zero()) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn rendering() {
        assert_eq!(CoinState::zero().to_string(), "|0⟩");
        assert_eq!(CoinState::minus().to_string(), "|−⟩");
        let x = CoinState::from_angle(Angle::full_turn(1, 6).unwrap()).unwrap();
        assert_eq!(x.to_string(), "cos(1/6·π)|0⟩+sin(1/6·π)|1⟩");
        assert_eq!(x.to_string().parse::<CoinState>().unwrap(), x);
        let parsed: Vec<CoinState> = ["0", "|1>", "+", "|−⟩"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(parsed, [CoinState::zero(), CoinState::one(), CoinState::plus(), CoinState::minus()]);
        assert!("x".parse::<CoinState>().is_err());
    }

    #[test]
    fn antipodal_states_coincide() {
        let a = CoinState::from_angle(Angle::full_turn(5, 4).unwrap()).unwrap();
        assert_eq!(a, CoinState::plus());
        let b = CoinState::from_angle(Angle::full_turn(-1, 4).unwrap()).unwrap();
        assert_eq!(b, CoinState::minus());
    }

    #[test]
    fn action_matches_matrix_oracle() {
        for n in [3, 5, 8, 12, 16] {
            for p in isometries(n).unwrap() {
                let m = p.matrix();
                for k in 0..(2 * n as i64) {
                    let x = CoinState::from_angle(Angle::full_turn(k, n as i64).unwrap()).unwrap();
                    let (a, b) = x.amplitudes();
                    let image = (m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b);
                    assert!(amp_close(&x.act(&p).unwrap(), image), "{p} on {x}");
                }
            }
        }
    }

    #[test]
    fn action_axioms_and_invariants() {
        for n in [4u32, 8, 12, 16] {
            let pool = isometries(n).unwrap();
            let states: Vec<CoinState> = (0..n as i64)
                .map(|k| CoinState::from_angle(Angle::full_turn(k, n as i64).unwrap()).unwrap())
                .collect();
            for x in &states {
                assert_eq!(x.act(&PlanarIsometry::identity()).unwrap(), *x);
                let total = win_probability(x, &CoinState::zero()) + win_probability(x, &CoinState::one());
                assert!((total - 1.0).abs() < 1e-12);
                for p in &pool {
                    let y = x.act(p).unwrap();
                    assert!(y.phi().numerator() < y.phi().denominator());
                    if p.is_reflector() {
                        assert_eq!(y.act(p).unwrap(), *x);
                    }
                    for q in &pool {
                        assert_eq!(x.act(&p.compose(q).unwrap()).unwrap(), x.act(q).unwrap().act(p).unwrap());
                    }
                }
            }
        }
    }
}
