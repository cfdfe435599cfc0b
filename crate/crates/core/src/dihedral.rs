//! The dihedral group `D_n` and its standard two-dimensional representation.
//!
//! Elements are kept in the normal form `r^k s^l`. The representation maps
//! `r^k ↦ R_{2πk/n}` and `r^k s ↦ S_{πk/n}`, where `R_α` rotates by `α` and
//! `S_β` reflects about the line through the origin at inclination `β`. Both
//! sides are exact: a [`PlanarIsometry`] carries an [`Angle`], and products
//! are computed with the rotor/reflector composition identities instead of
//! floating matrix multiplication.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angle::{Angle, AngleRange};
use crate::error::{Error, Result};

/// `r^k s^l` in `D_n`, with `reflect` standing for `l = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralElement {
    n: u32,
    k: u32,
    reflect: bool,
}

fn check_order(n: u32) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidOrder(n))
    } else {
        Ok(())
    }
}

impl DihedralElement {
    pub fn new(n: u32, k: u32, reflect: bool) -> Result<Self> {
        check_order(n)?;
        Ok(DihedralElement {
            n,
            k: k % n,
            reflect,
        })
    }

    pub fn identity(n: u32) -> Result<Self> {
        DihedralElement::new(n, 0, false)
    }

    pub fn rotation(n: u32, k: u32) -> Result<Self> {
        DihedralElement::new(n, k, false)
    }

    pub fn reflection(n: u32, k: u32) -> Result<Self> {
        DihedralElement::new(n, k, true)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_reflection(&self) -> bool {
        self.reflect
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && !self.reflect
    }

    /// Product `self · other` using `r^n = s² = 1` and `s r = r⁻¹ s`.
    pub fn compose(&self, other: &DihedralElement) -> Result<DihedralElement> {
        if self.n != other.n {
            return Err(Error::MismatchedGroup {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        // r^a s^x · r^b s^y = r^(a ± b) s^(x + y)
        let k = if self.reflect {
            (self.k + n - other.k) % n
        } else {
            (self.k + other.k) % n
        };
        Ok(DihedralElement {
            n,
            k,
            reflect: self.reflect ^ other.reflect,
        })
    }

    pub fn inverse(&self) -> DihedralElement {
        if self.reflect {
            *self
        } else {
            DihedralElement {
                k: (self.n - self.k) % self.n,
                ..*self
            }
        }
    }

    /// Image under the standard representation.
    pub fn represent(&self) -> PlanarIsometry {
        let (k, n) = (i64::from(self.k), i64::from(self.n));
        if self.reflect {
            PlanarIsometry::Reflector(small_angle(k, n, AngleRange::Axis))
        } else {
            PlanarIsometry::Rotor(small_angle(2 * k, n, AngleRange::FullTurn))
        }
    }
}

/// Angles built from group parameters (`k < n ≤ u32::MAX`) cannot overflow.
fn small_angle(num: i64, den: i64, range: AngleRange) -> Angle {
    Angle::new(num, den, range).expect("dihedral angle parameters fit in i64")
}

impl Ord for DihedralElement {
    /// Rotations by ascending `k`, then reflections by ascending `k`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.reflect, self.k).cmp(&(other.n, other.reflect, other.k))
    }
}

impl PartialOrd for DihedralElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.reflect) {
            (0, false) => write!(f, "e"),
            (0, true) => write!(f, "s"),
            (1, false) => write!(f, "r"),
            (1, true) => write!(f, "rs"),
            (k, false) => write!(f, "r^{k}"),
            (k, true) => write!(f, "r^{k} s"),
        }
    }
}

/// All `2n` elements of `D_n` in canonical order.
pub fn elements(n: u32) -> Result<Vec<DihedralElement>> {
    check_order(n)?;
    let rotations = (0..n).map(|k| DihedralElement { n, k, reflect: false });
    let reflections = (0..n).map(|k| DihedralElement { n, k, reflect: true });
    Ok(rotations.chain(reflections).collect())
}

/// A rotor `R_α` or a reflector `S_β` of the plane.
///
/// Rotor angles live in `[0, 2π)`, reflector axes in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "angle", rename_all = "lowercase")]
pub enum PlanarIsometry {
    Rotor(Angle),
    Reflector(Angle),
}

impl PlanarIsometry {
    pub fn rotor(angle: Angle) -> Result<Self> {
        Ok(PlanarIsometry::Rotor(angle.normalized(AngleRange::FullTurn)?))
    }

    pub fn reflector(axis: Angle) -> Result<Self> {
        Ok(PlanarIsometry::Reflector(axis.normalized(AngleRange::Axis)?))
    }

    /// `I = R_0`.
    pub fn identity() -> Self {
        PlanarIsometry::Rotor(Angle::ZERO)
    }

    /// The coin flip `F = S_{π/4}`.
    pub fn flip() -> Self {
        PlanarIsometry::Reflector(small_angle(1, 4, AngleRange::Axis))
    }

    /// The Hadamard operator `H = S_{π/8}`.
    pub fn hadamard() -> Self {
        PlanarIsometry::Reflector(small_angle(1, 8, AngleRange::Axis))
    }

    /// `R_{kπ/8}`, handy for the named moves of the original game.
    pub fn rotor_eighths(k: i64) -> Self {
        PlanarIsometry::Rotor(small_angle(k, 8, AngleRange::FullTurn))
    }

    /// `S_{kπ/8}`.
    pub fn reflector_eighths(k: i64) -> Self {
        PlanarIsometry::Reflector(small_angle(k, 8, AngleRange::Axis))
    }

    pub fn angle(&self) -> Angle {
        match self {
            PlanarIsometry::Rotor(a) | PlanarIsometry::Reflector(a) => *a,
        }
    }

    pub fn is_reflector(&self) -> bool {
        matches!(self, PlanarIsometry::Reflector(_))
    }

    /// Exact matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &PlanarIsometry) -> Result<PlanarIsometry> {
        use PlanarIsometry::{Reflector, Rotor};
        use AngleRange::{Axis, FullTurn};
        Ok(match (*self, *other) {
            (Rotor(a), Rotor(b)) => Rotor(a.add(b, FullTurn)?),
            (Reflector(a), Reflector(b)) => Rotor(a.sub(b, FullTurn)?.scale(2, FullTurn)?),
            (Rotor(a), Reflector(b)) => Reflector(b.add(a.halve(FullTurn)?, Axis)?),
            (Reflector(b), Rotor(a)) => Reflector(b.sub(a.halve(FullTurn)?, Axis)?),
        })
    }

    pub fn inverse(&self) -> Result<PlanarIsometry> {
        match *self {
            PlanarIsometry::Rotor(a) => Ok(PlanarIsometry::Rotor(a.negate(AngleRange::FullTurn)?)),
            reflector => Ok(reflector),
        }
    }

    pub fn pow(&self, exponent: u32) -> Result<PlanarIsometry> {
        let mut acc = PlanarIsometry::identity();
        for _ in 0..exponent {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// The real 2×2 matrix, row-major.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        match self {
            PlanarIsometry::Rotor(a) => {
                let (c, s) = a.cos_sin();
                [[c, -s], [s, c]]
            }
            PlanarIsometry::Reflector(b) => {
                let doubled = b.scale(2, AngleRange::FullTurn).expect("axis angles stay small");
                let (c, s) = doubled.cos_sin();
                [[c, s], [s, -c]]
            }
        }
    }

    /// Short name for the three moves of the original game.
    pub fn name(&self) -> Option<&'static str> {
        if *self == PlanarIsometry::identity() {
            Some("I")
        } else if *self == PlanarIsometry::flip() {
            Some("F")
        } else if *self == PlanarIsometry::hadamard() {
            Some("H")
        } else {
            None
        }
    }

    /// `R_{..}` / `S_{..}` notation without substituting `I`, `F`, `H`.
    ///
    /// Multiples of π/8 are written over 8, as in the `D_8` tables.
    pub fn subscript_notation(&self) -> String {
        self.subscript(true)
    }

    /// Notation used when listing elements of `D_n`: eighths for `n = 8`,
    /// reduced fractions otherwise.
    pub fn notation_in(&self, n: u32) -> String {
        match self.name() {
            Some(name) => name.to_string(),
            None => self.subscript(n == 8),
        }
    }

    fn subscript(&self, over_eight: bool) -> String {
        let (prefix, angle) = match self {
            PlanarIsometry::Rotor(a) => ('R', *a),
            PlanarIsometry::Reflector(a) => ('S', *a),
        };
        let (p, q) = (angle.numerator(), angle.denominator());
        if p == 0 {
            return format!("{prefix}_0");
        }
        if p == 1 && q == 1 {
            return format!("{prefix}_π");
        }
        let (p, q) = if over_eight && 8 % q == 0 { (p * (8 / q), 8) } else { (p, q) };
        let coeff = if p == 1 { String::new() } else { p.to_string() };
        if q == 1 {
            format!("{prefix}_{{{coeff}π}}")
        } else {
            format!("{prefix}_{{{coeff}π/{q}}}")
        }
    }
}

impl fmt::Display for PlanarIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(name) => f.write_str(name),
            None => f.write_str(&self.subscript_notation()),
        }
    }
}

impl FromStr for PlanarIsometry {
    type Err = Error;

    /// Accepts `I`, `F`, `H`, `FH`, `R_0`, `R_π`, `R_{2π/8}`, `S_{5π/8}`, with
    /// `pi` allowed in place of `π`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid isometry `{s}`"));
        let s = s.trim();
        match s {
            "I" => return Ok(PlanarIsometry::identity()),
            "F" => return Ok(PlanarIsometry::flip()),
            "H" => return Ok(PlanarIsometry::hadamard()),
            "FH" => return PlanarIsometry::flip().compose(&PlanarIsometry::hadamard()),
            _ => {}
        }
        let (is_rotor, rest) = match s.split_at_checked(2) {
            Some(("R_", rest)) => (true, rest),
            Some(("S_", rest)) => (false, rest),
            _ => return Err(bad()),
        };
        let inner = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(rest)
            .replace("pi", "π");
        let angle = if inner == "0" {
            Angle::ZERO
        } else {
            let (coeff, den) = inner.split_once("π").ok_or_else(bad)?;
            let num: i64 = match coeff.trim() {
                "" => 1,
                "-" => -1,
                c => c.parse().map_err(|_| bad())?,
            };
            let den: i64 = match den.trim() {
                "" => 1,
                d => d.strip_prefix('/').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?,
            };
            if den <= 0 {
                return Err(bad());
            }
            Angle::full_turn(num, den)?
        };
        if is_rotor {
            PlanarIsometry::rotor(angle)
        } else {
            PlanarIsometry::reflector(angle)
        }
    }
}

/// Whether `p` is the image of some element of `D_n`.
pub fn contains_isometry(n: u32, p: &PlanarIsometry) -> bool {
    element_for(n, p).is_some()
}

/// Preimage of `p` under the (faithful) standard representation of `D_n`.
pub fn element_for(n: u32, p: &PlanarIsometry) -> Option<DihedralElement> {
    if n < 3 {
        return None;
    }
    let angle = p.angle();
    let (num, den) = (i128::from(angle.numerator()), i128::from(angle.denominator()));
    let n_wide = i128::from(n);
    // R_α with α = 2πk/n  ⇔  k = α·n/2;  S_β with β = πk/n  ⇔  k = β·n.
    let (scaled, divisor) = match p {
        PlanarIsometry::Rotor(_) => (num * n_wide, 2 * den),
        PlanarIsometry::Reflector(_) => (num * n_wide, den),
    };
    if scaled % divisor != 0 {
        return None;
    }
    let k = u32::try_from(scaled / divisor).ok()?;
    DihedralElement::new(n, k, p.is_reflector()).ok()
}

/// Represented image of `D_n`: all `2n` isometries in canonical element order.
pub fn isometries(n: u32) -> Result<Vec<PlanarIsometry>> {
    Ok(elements(n)?.iter().map(DihedralElement::represent).collect())
}

/// Closure of a generating set under composition, sorted.
pub fn closure(generators: &[PlanarIsometry]) -> Result<Vec<PlanarIsometry>> {
    let mut seen = BTreeSet::from([PlanarIsometry::identity()]);
    let mut queue = VecDeque::from([PlanarIsometry::identity()]);
    while let Some(current) = queue.pop_front() {
        for g in generators {
            let next = current.compose(g)?;
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Outcome of checking `⟨s, t | s² = t² = (st)^n = 1⟩` for concrete reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationCheck {
    pub n: u32,
    pub s: PlanarIsometry,
    pub t: PlanarIsometry,
    pub s_involution: bool,
    pub t_involution: bool,
    pub product_relation: bool,
    pub closure_size: usize,
    pub closure_is_image: bool,
}

impl PresentationCheck {
    pub fn holds(&self) -> bool {
        self.s_involution
            && self.t_involution
            && self.product_relation
            && self.closure_size == 2 * self.n as usize
            && self.closure_is_image
    }
}

pub fn check_presentation(n: u32, s: PlanarIsometry, t: PlanarIsometry) -> Result<PresentationCheck> {
    check_order(n)?;
    let identity = PlanarIsometry::identity();
    let generated = closure(&[s, t])?;
    let mut image = isometries(n)?;
    image.sort();
    Ok(PresentationCheck {
        n,
        s,
        t,
        s_involution: s.compose(&s)? == identity,
        t_involution: t.compose(&t)? == identity,
        product_relation: s.compose(&t)?.pow(n)? == identity,
        closure_size: generated.len(),
        closure_is_image: generated == image,
    })
}

/// Verifies the two-reflection presentation of `D_n`.
///
/// For `n = 8` the generators are `F` and `H`, the moves of the original
/// game. Every other `n` uses the adjacent axes `S_0` and `S_{π/n}`; `F` and
/// `H` only ever generate `D_8`.
pub fn verify_presentation(n: u32) -> Result<bool> {
    let (s, t) = if n == 8 {
        (PlanarIsometry::flip(), PlanarIsometry::hadamard())
    } else {
        (
            PlanarIsometry::Reflector(Angle::ZERO),
            PlanarIsometry::Reflector(small_angle(1, i64::from(n.max(1)), AngleRange::Axis)),
        )
    };
    Ok(check_presentation(n, s, t)?.holds())
}
