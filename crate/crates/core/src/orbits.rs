//! Orbits, stabilizers and fixed sets of `D_n` acting on coin states.
//!
//! All sets are computed by enumeration over the `2n` group elements. Fixed
//! sets are taken over the finite domain `D_n ⋆ B`, the states reachable from
//! the computational basis.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::angle::Angle;
use crate::coinstate::CoinState;
use crate::dihedral::{elements, element_for, DihedralElement, PlanarIsometry};
use crate::error::{Error, Result};

/// Coin states in ascending angle order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct StateSet(BTreeSet<CoinState>);

impl StateSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &CoinState) -> bool {
        self.0.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &CoinState> {
        self.0.iter()
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        StateSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<CoinState> for StateSet {
    fn from_iter<I: IntoIterator<Item = CoinState>>(iter: I) -> Self {
        StateSet(iter.into_iter().collect())
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let items: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Group elements in canonical order (rotations, then reflections).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ElementSet(BTreeSet<DihedralElement>);

impl ElementSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: &DihedralElement) -> bool {
        self.0.contains(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = &DihedralElement> {
        self.0.iter()
    }

    pub fn isometries(&self) -> Vec<PlanarIsometry> {
        self.0.iter().map(DihedralElement::represent).collect()
    }

    /// Closed under products and inverses (and non-empty).
    pub fn is_subgroup(&self) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|g| {
                self.0.contains(&g.inverse())
                    && self
                        .0
                        .iter()
                        .all(|h| g.compose(h).is_ok_and(|gh| self.0.contains(&gh)))
            })
    }
}

impl FromIterator<DihedralElement> for ElementSet {
    fn from_iter<I: IntoIterator<Item = DihedralElement>>(iter: I) -> Self {
        ElementSet(iter.into_iter().collect())
    }
}

impl fmt::Display for ElementSet {
    /// Written through the standard representation, e.g. `{I, R_π, F, S_{6π/8}}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let items: Vec<String> = self.0.iter().map(|g| g.represent().notation_in(g.n())).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// `D_n ⋆ x`, by applying every element.
pub fn orbit(n: u32, x: CoinState) -> Result<StateSet> {
    elements(n)?
        .iter()
        .map(|g| x.act(&g.represent()))
        .collect::<Result<_>>()
}

/// `D_n ⋆ x` as the closure of `x` under the generators `r` and `s`.
pub fn orbit_by_generators(n: u32, x: CoinState) -> Result<StateSet> {
    let generators = [
        DihedralElement::rotation(n, 1)?.represent(),
        DihedralElement::reflection(n, 0)?.represent(),
    ];
    let mut seen = BTreeSet::from([x]);
    let mut queue = VecDeque::from([x]);
    while let Some(current) = queue.pop_front() {
        for g in &generators {
            let next = current.act(g)?;
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(StateSet(seen))
}

/// `D_n ⋆ B`, the union of the orbits of `|0⟩` and `|1⟩`.
pub fn orbit_of_basis(n: u32) -> Result<StateSet> {
    Ok(orbit(n, CoinState::zero())?.union(&orbit(n, CoinState::one())?))
}

/// `D_n(x)`: the elements fixing `x`.
pub fn stabilizer(n: u32, x: CoinState) -> Result<ElementSet> {
    let mut out = BTreeSet::new();
    for g in elements(n)? {
        if x.act(&g.represent())? == x {
            out.insert(g);
        }
    }
    Ok(ElementSet(out))
}

/// `Fix(X)` over `D_n ⋆ B`: states fixed by every element of `elems`.
pub fn fixed_set(n: u32, elems: &ElementSet) -> Result<StateSet> {
    if let Some(g) = elems.iter().find(|g| g.n() != n) {
        return Err(Error::MismatchedGroup { left: n, right: g.n() });
    }
    let isometries = elems.isometries();
    let mut out = BTreeSet::new();
    for x in orbit_of_basis(n)?.iter() {
        let mut fixed = true;
        for p in &isometries {
            if x.act(p)? != *x {
                fixed = false;
                break;
            }
        }
        if fixed {
            out.insert(*x);
        }
    }
    Ok(StateSet(out))
}

/// Looks up each isometry in `D_n`, failing when one is not represented.
pub fn elements_for_isometries(n: u32, isometries: &[PlanarIsometry]) -> Result<ElementSet> {
    isometries
        .iter()
        .map(|p| {
            element_for(n, p).ok_or_else(|| {
                if *p == PlanarIsometry::flip() {
                    Error::FNotInGroup { n }
                } else {
                    Error::NotInGroup {
                        n,
                        isometry: p.to_string(),
                    }
                }
            })
        })
        .collect()
}

pub fn fixed_set_of_isometries(n: u32, isometries: &[PlanarIsometry]) -> Result<StateSet> {
    let elems = elements_for_isometries(n, isometries)?;
    fixed_set(n, &elems)
}

/// `Fix({I, F})` in `D_n`; fails with [`Error::FNotInGroup`] when `4 ∤ n`.
pub fn picard_fixed_set(n: u32) -> Result<StateSet> {
    fixed_set_of_isometries(n, &[PlanarIsometry::identity(), PlanarIsometry::flip()])
}

/// How the basis orbits behave, by residue of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitCase {
    /// `4 | n`: `|0⟩` and `|1⟩` share one orbit of `n/2` states.
    FourMultiple,
    /// `n` even, `4 ∤ n`: two disjoint orbits of `n/2` states each.
    EvenNotFourMultiple,
    /// `n` odd: two disjoint orbits of `n` states each.
    Odd,
}

pub fn orbit_case(n: u32) -> OrbitCase {
    if n % 4 == 0 {
        OrbitCase::FourMultiple
    } else if n % 2 == 0 {
        OrbitCase::EvenNotFourMultiple
    } else {
        OrbitCase::Odd
    }
}

/// Closed forms for `(D_n ⋆ |0⟩, D_n ⋆ |1⟩)`.
///
/// For even `n` the orbits are `{cos(2πk/n)|0⟩ + sin(2πk/n)|1⟩ : k < n/2}` and
/// `{−sin(2πk/n)|0⟩ + cos(2πk/n)|1⟩ : k < n/2}`. Odd `n` has no antipodal
/// coincidences, so all `n` kets of each sequence are kept.
pub fn closed_form_basis_orbits(n: u32) -> Result<(StateSet, StateSet)> {
    if n < 3 {
        return Err(Error::InvalidOrder(n));
    }
    let count = if n % 2 == 0 { n / 2 } else { n };
    let n = i64::from(n);
    let mut zero = BTreeSet::new();
    let mut one = BTreeSet::new();
    for k in 0..i64::from(count) {
        let phi = Angle::projective(2 * k, n)?;
        zero.insert(CoinState::from_angle(phi)?);
        // (−sin θ, cos θ) is the ket at angle θ + π/2
        one.insert(CoinState::from_angle(phi)?.orthogonal());
    }
    Ok((StateSet(zero), StateSet(one)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn states(eighths: &[i64]) -> StateSet {
        eighths
            .iter()
            .map(|&k| CoinState::from_angle(Angle::full_turn(k, 8).unwrap()).unwrap())
            .collect()
    }

    fn at(p: i64, q: i64) -> CoinState {
        CoinState::from_angle(Angle::full_turn(p, q).unwrap()).unwrap()
    }

    #[test]
    fn d8_orbits() {
        let expected: StateSet = [CoinState::zero(), CoinState::plus(), CoinState::one(), CoinState::minus()]
            .into_iter()
            .collect();
        assert_eq!(orbit(8, CoinState::zero()).unwrap(), expected);
        assert_eq!(orbit(8, CoinState::one()).unwrap(), expected);
        assert_eq!(orbit_of_basis(8).unwrap(), expected);
        assert_eq!(expected.to_string(), "{|0⟩, |+⟩, |1⟩, |−⟩}");
    }

    #[test]
    fn small_and_mid_orbits() {
        let d4: StateSet = [CoinState::zero(), CoinState::one()].into_iter().collect();
        assert_eq!(orbit(4, CoinState::zero()).unwrap(), d4);
        assert_eq!(orbit_of_basis(4).unwrap(), d4);

        let d12: StateSet = (0..6).map(|k| at(k, 6)).collect();
        assert_eq!(orbit(12, CoinState::zero()).unwrap(), d12);

        let d6: StateSet = [at(0, 1), at(1, 3), at(2, 3), at(1, 2), at(5, 6), at(1, 6)]
            .into_iter()
            .collect();
        assert_eq!(orbit_of_basis(6).unwrap(), d6);
        assert!(orbit(6, CoinState::zero())
            .unwrap()
            .is_disjoint(&orbit(6, CoinState::one()).unwrap()));
    }

    #[test]
    fn d8_stabilizers() {
        assert_eq!(stabilizer(8, CoinState::plus()).unwrap().to_string(), "{I, R_π, F, S_{6π/8}}");
        assert_eq!(stabilizer(8, CoinState::minus()).unwrap().to_string(), "{I, R_π, F, S_{6π/8}}");
        assert_eq!(stabilizer(8, CoinState::zero()).unwrap().to_string(), "{I, R_π, S_0, S_{4π/8}}");
        assert_eq!(stabilizer(8, CoinState::one()).unwrap().to_string(), "{I, R_π, S_0, S_{4π/8}}");
        let d6: ElementSet = [
            DihedralElement::identity(6).unwrap(),
            DihedralElement::rotation(6, 3).unwrap(),
            DihedralElement::reflection(6, 0).unwrap(),
            DihedralElement::reflection(6, 3).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(stabilizer(6, CoinState::zero()).unwrap(), d6);
        assert_eq!(d6.to_string(), "{I, R_π, S_0, S_{π/2}}");
    }

    #[test]
    fn fixed_sets() {
        assert_eq!(picard_fixed_set(8).unwrap(), states(&[2, 6]));
        let identity: ElementSet = [DihedralElement::identity(8).unwrap()].into_iter().collect();
        assert_eq!(fixed_set(8, &identity).unwrap(), orbit_of_basis(8).unwrap());
        assert!(picard_fixed_set(12).unwrap().is_empty());
        assert_eq!(picard_fixed_set(7), Err(Error::FNotInGroup { n: 7 }));
        assert_eq!(picard_fixed_set(6), Err(Error::FNotInGroup { n: 6 }));
        assert_eq!(
            fixed_set_of_isometries(4, &[PlanarIsometry::hadamard()]),
            Err(Error::NotInGroup { n: 4, isometry: "H".into() })
        );
        let foreign: ElementSet = [DihedralElement::identity(6).unwrap()].into_iter().collect();
        assert!(matches!(fixed_set(8, &foreign), Err(Error::MismatchedGroup { .. })));
        assert_eq!(StateSet::default().to_string(), "∅");
    }

    #[test]
    fn fixed_set_dichotomy() {
        for n in 3..=64 {
            match picard_fixed_set(n) {
                Ok(fixed) if n % 8 == 0 => assert_eq!(fixed, states(&[2, 6]), "D_{n}"),
                Ok(fixed) => {
                    assert_eq!(n % 4, 0);
                    assert!(fixed.is_empty(), "D_{n}");
                }
                Err(e) => {
                    assert_ne!(n % 4, 0);
                    assert_eq!(e, Error::FNotInGroup { n });
                }
            }
        }
    }

    #[test]
    fn orbit_structure_and_orbit_stabilizer() {
        for n in 3..=64 {
            let zero = orbit(n, CoinState::zero()).unwrap();
            let one = orbit(n, CoinState::one()).unwrap();
            let (cf_zero, cf_one) = closed_form_basis_orbits(n).unwrap();
            assert_eq!(zero, cf_zero, "D_{n}");
            assert_eq!(one, cf_one, "D_{n}");
            match orbit_case(n) {
                OrbitCase::FourMultiple => {
                    assert_eq!(zero, one);
                    assert_eq!(zero.len(), n as usize / 2);
                }
                OrbitCase::EvenNotFourMultiple => {
                    assert!(zero.is_disjoint(&one));
                    assert_eq!((zero.len(), one.len()), (n as usize / 2, n as usize / 2));
                }
                OrbitCase::Odd => {
                    assert!(zero.is_disjoint(&one));
                    assert_eq!((zero.len(), one.len()), (n as usize, n as usize));
                }
            }
            for x in orbit_of_basis(n).unwrap().iter() {
                let orb = orbit(n, *x).unwrap();
                let stab = stabilizer(n, *x).unwrap();
                assert_eq!(orb.len() * stab.len(), 2 * n as usize);
                assert!(stab.is_subgroup());
                assert_eq!(orb, orbit_by_generators(n, *x).unwrap());
            }
        }
    }
}
