//! Complex 2×2 unitaries for the analysis outside the dihedral groups.
//!
//! Everything here is double precision. Membership and unitarity use
//! [`TOLERANCE`]; algebraic identities use [`ALGEBRAIC_TOLERANCE`].

use std::f64::consts::TAU;
use std::fmt;

pub use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::coinstate::CoinState;
use crate::dihedral::PlanarIsometry;
use crate::error::{Error, Result};

pub const TOLERANCE: f64 = 1e-9;
pub const ALGEBRAIC_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A pair of complex amplitudes over `|0⟩, |1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexState2(pub [Complex64; 2]);

impl ComplexState2 {
    pub fn new(a: Complex64, b: Complex64) -> ComplexState2 {
        ComplexState2([a, b])
    }

    /// Real embedding `cos φ|0⟩ + sin φ|1⟩` of a coin state.
    pub fn from_coin(x: &CoinState) -> ComplexState2 {
        let (c, s) = x.amplitudes();
        ComplexState2::new(Complex64::new(c, 0.0), Complex64::new(s, 0.0))
    }

    pub fn norm(&self) -> f64 {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr()).sqrt()
    }

    pub fn normalized(&self) -> ComplexState2 {
        self.scale(Complex64::new(1.0 / self.norm(), 0.0))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &ComplexState2) -> Complex64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    pub fn scale(&self, c: Complex64) -> ComplexState2 {
        ComplexState2([self.0[0] * c, self.0[1] * c])
    }

    pub fn distance(&self, other: &ComplexState2) -> f64 {
        ((self.0[0] - other.0[0]).norm_sqr() + (self.0[1] - other.0[1]).norm_sqr()).sqrt()
    }

    /// `min_θ ‖self − e^{iθ}·other‖`, attained at `θ = arg⟨other|self⟩`.
    pub fn projective_distance(&self, other: &ComplexState2) -> f64 {
        let overlap = other.inner(self);
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
        self.distance(&other.scale(phase))
    }

    pub fn is_phase_multiple_of(&self, other: &ComplexState2) -> bool {
        self.projective_distance(other) <= TOLERANCE
    }

    pub fn is_phase_multiple_within(&self, other: &ComplexState2, tolerance: f64) -> bool {
        self.projective_distance(other) <= tolerance
    }
}

impl fmt::Display for ComplexState2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})|0⟩ + ({})|1⟩", self.0[0], self.0[1])
    }
}

/// Row-major complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex2x2(pub [[Complex64; 2]; 2]);

impl Complex2x2 {
    pub fn identity() -> Complex2x2 {
        Complex2x2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn from_isometry(p: &PlanarIsometry) -> Complex2x2 {
        let m = p.matrix();
        let c = |x: f64| Complex64::new(x, 0.0);
        Complex2x2([[c(m[0][0]), c(m[0][1])], [c(m[1][0]), c(m[1][1])]])
    }

    pub fn from_columns(first: ComplexState2, second: ComplexState2) -> Complex2x2 {
        Complex2x2([[first.0[0], second.0[0]], [first.0[1], second.0[1]]])
    }

    pub fn scale(&self, c: Complex64) -> Complex2x2 {
        Complex2x2(self.0.map(|row| row.map(|x| x * c)))
    }

    pub fn mul(&self, rhs: &Complex2x2) -> Complex2x2 {
        let (a, b) = (&self.0, &rhs.0);
        let entry = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Complex2x2([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    pub fn apply(&self, v: &ComplexState2) -> ComplexState2 {
        let m = &self.0;
        ComplexState2([m[0][0] * v.0[0] + m[0][1] * v.0[1], m[1][0] * v.0[0] + m[1][1] * v.0[1]])
    }

    pub fn adjoint(&self) -> Complex2x2 {
        let m = &self.0;
        Complex2x2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn column(&self, j: usize) -> ComplexState2 {
        ComplexState2([self.0[0][j], self.0[1][j]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn determinant(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Largest entry of `|A − B|`.
    pub fn max_difference(&self, other: &Complex2x2) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entry of `|U†U − I|`.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint().mul(self).max_difference(&Complex2x2::identity())
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_residual() <= TOLERANCE
    }
}

/// `e^{iθ}` times one of the named real isometries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseFamilyTag {
    pub base: PlanarIsometry,
    pub theta: f64,
}

impl fmt::Display for PhaseFamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(θ={:.6})", self.base, self.theta)
    }
}

/// The eight real moves that take `|0⟩` to `|+⟩` or `|−⟩`, in the order
/// `H, R_{2π/8}, S_{5π/8}, R_{10π/8}` then `S_{7π/8}, R_{14π/8}, S_{3π/8}, R_{6π/8}`.
/// Second moves of winning strategies are drawn from the same eight.
pub fn first_move_bases() -> [PlanarIsometry; 8] {
    [
        PlanarIsometry::reflector_eighths(1),
        PlanarIsometry::rotor_eighths(2),
        PlanarIsometry::reflector_eighths(5),
        PlanarIsometry::rotor_eighths(10),
        PlanarIsometry::reflector_eighths(7),
        PlanarIsometry::rotor_eighths(14),
        PlanarIsometry::reflector_eighths(3),
        PlanarIsometry::rotor_eighths(6),
    ]
}

/// `A(θ) = e^{iθ}·A`.
pub fn phase_family(base: &PlanarIsometry, theta: f64) -> Complex2x2 {
    Complex2x2::from_isometry(base).scale(Complex64::from_polar(1.0, theta))
}

fn canonical_phase(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU - ALGEBRAIC_TOLERANCE {
        0.0
    } else {
        t
    }
}

/// Eigenpairs of `F`, from its characteristic polynomial `λ² − tr·λ + det`.
///
/// Returns the `+1` pair first.
pub fn eigensystem_f() -> ((f64, ComplexState2), (f64, ComplexState2)) {
    let f = Complex2x2::from_isometry(&PlanarIsometry::flip());
    let tr = f.trace().re;
    let det = f.determinant().re;
    let disc = (tr * tr - 4.0 * det).sqrt();
    let pair = |lambda: f64| {
        // (F − λI)v = 0 with v = (b, λ − a)
        let (a, b) = (f.0[0][0].re, f.0[0][1].re);
        let v = ComplexState2::new(Complex64::new(b, 0.0), Complex64::new(lambda - a, 0.0));
        (lambda, v.normalized())
    };
    (pair((tr + disc) / 2.0), pair((tr - disc) / 2.0))
}

/// Which winning first moves a unitary matches.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirstMoveClass {
    /// `|+⟩` or `|−⟩` when `U|0⟩` is a phase multiple of it.
    pub target: Option<CoinState>,
    /// Every phase family `e^{iθ}·base` equal to `U`. Families overlap
    /// (`S_{5π/8} = −H`), so a match usually carries two tags.
    pub families: Vec<PhaseFamilyTag>,
}

impl FirstMoveClass {
    pub fn tag(&self) -> Option<&PhaseFamilyTag> {
        self.families.first()
    }

    pub fn tag_for(&self, base: &PlanarIsometry) -> Option<&PhaseFamilyTag> {
        self.families.iter().find(|t| t.base == *base)
    }
}

/// `θ` such that `U = e^{iθ}·base`, read off the first non-zero base entry.
fn recover_theta(u: &Complex2x2, base: &Complex2x2) -> f64 {
    let (i, j) = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .find(|&(i, j)| base.0[i][j].norm() > 0.5)
        .expect("an orthogonal matrix has an entry of modulus ≥ 1/√2");
    canonical_phase((u.0[i][j] / base.0[i][j]).arg())
}

pub fn classify_winning_first_move(u: &Complex2x2) -> Result<FirstMoveClass> {
    let residual = u.unitarity_residual();
    if residual > TOLERANCE {
        return Err(Error::NotUnitary { residual });
    }
    let image = u.column(0);
    let target = [CoinState::plus(), CoinState::minus()]
        .into_iter()
        .find(|t| image.is_phase_multiple_of(&ComplexState2::from_coin(t)));
    let mut families = Vec::new();
    if target.is_some() {
        for base in first_move_bases() {
            let m = Complex2x2::from_isometry(&base);
            let theta = recover_theta(u, &m);
            if phase_family(&base, theta).max_difference(u) <= TOLERANCE {
                families.push(PhaseFamilyTag { base, theta });
            }
        }
    }
    Ok(FirstMoveClass { target, families })
}

fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random unitary from four complex normals: the columns are orthonormalized
/// by Gram–Schmidt and a random global phase is applied.
pub fn sample_unitary(seed: u64) -> Complex2x2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v1 = ComplexState2::new(complex_normal(&mut rng), complex_normal(&mut rng));
    let v2 = ComplexState2::new(complex_normal(&mut rng), complex_normal(&mut rng));
    let u1 = v1.normalized();
    let overlap = u1.inner(&v2);
    let w = ComplexState2([v2.0[0] - overlap * u1.0[0], v2.0[1] - overlap * u1.0[1]]);
    let u2 = w.normalized();
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..TAU));
    Complex2x2::from_columns(u1, u2).scale(phase)
}

/// Random normalized state, from a stream independent of [`sample_unitary`].
pub fn sample_state(seed: u64) -> ComplexState2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    ComplexState2::new(complex_normal(&mut rng), complex_normal(&mut rng)).normalized()
}

/// `F·ψ` is a phase multiple of `ψ`.
pub fn fixed_by_f_projective(psi: &ComplexState2) -> bool {
    fixed_by_f_within(psi, TOLERANCE)
}

pub fn fixed_by_f_within(psi: &ComplexState2, tolerance: f64) -> bool {
    let f = Complex2x2::from_isometry(&PlanarIsometry::flip());
    f.apply(psi).is_phase_multiple_within(psi, tolerance)
}

/// `ψ` is a phase multiple of `|+⟩` or `|−⟩`.
pub fn is_f_eigenstate(psi: &ComplexState2, tolerance: f64) -> bool {
    [CoinState::plus(), CoinState::minus()]
        .iter()
        .any(|t| psi.is_phase_multiple_within(&ComplexState2::from_coin(t), tolerance))
}

/// Counts from a batch of sampled unitaries or states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FalsificationReport {
    pub samples: u64,
    pub hits: u64,
    /// Samples where the two sides of the checked equivalence disagree.
    pub violations: u64,
    pub max_residual: f64,
}

/// Samples unitaries with seeds `seed..seed + samples` and counts those whose
/// `U|0⟩` lands on `|±⟩`. A hit that is not fixed by `F` is a violation.
pub fn falsify_first_moves(seed: u64, samples: u64, tolerance: f64) -> FalsificationReport {
    let outcomes: Vec<(bool, bool, f64)> = (seed..seed.saturating_add(samples))
        .into_par_iter()
        .map(|s| {
            let u = sample_unitary(s);
            let residual = u.unitarity_residual();
            let hit = classify_winning_first_move(&u).is_ok_and(|c| c.target.is_some());
            let violation = hit && !fixed_by_f_within(&u.column(0), tolerance);
            (hit, violation, residual)
        })
        .collect();
    summarize(samples, &outcomes)
}

/// Samples states and checks that being fixed by `F` coincides with being
/// `|+⟩` or `|−⟩` up to phase.
pub fn falsify_fixed_states(seed: u64, samples: u64, tolerance: f64) -> FalsificationReport {
    let outcomes: Vec<(bool, bool, f64)> = (seed..seed.saturating_add(samples))
        .into_par_iter()
        .map(|s| {
            let psi = sample_state(s);
            let fixed = fixed_by_f_within(&psi, tolerance);
            (fixed, fixed != is_f_eigenstate(&psi, tolerance), (psi.norm() - 1.0).abs())
        })
        .collect();
    summarize(samples, &outcomes)
}

fn summarize(samples: u64, outcomes: &[(bool, bool, f64)]) -> FalsificationReport {
    FalsificationReport {
        samples,
        hits: outcomes.iter().filter(|o| o.0).count() as u64,
        violations: outcomes.iter().filter(|o| o.1).count() as u64,
        max_residual: outcomes.iter().map(|o| o.2).fold(0.0, f64::max),
    }
}
