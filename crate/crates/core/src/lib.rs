//! Group-theoretic analysis of the quantum penny flip game.
//!
//! The crate models the game between a classical player (Picard, moves `I`
//! and `F`) and a quantum player (Q) on a single coin. Everything in the
//! dihedral layer is exact: angles are reduced rational multiples of π, group
//! elements are normal forms `r^k s^l`, and coin states are real projective
//! angles. The [`unitary`] module adds a floating-point U(2) layer for the
//! parts of the analysis that leave the dihedral groups.
//!
//! ```
//! use pennyflip::{CoinState, GameSpec};
//!
//! let pqg = GameSpec::pqg();
//! let winners = pennyflip::games::enumerate_winning_strategies(&pqg, 8).unwrap();
//! assert_eq!(winners.len(), 32);
//! let classes = pennyflip::games::classify_strategies(&winners, CoinState::zero());
//! assert_eq!(classes.len(), 2);
//! ```

pub mod angle;
pub mod coinstate;
pub mod dihedral;
pub mod error;
pub mod games;
pub mod orbits;
pub mod unitary;

pub use angle::{Angle, AngleRange};
pub use coinstate::CoinState;
pub use dihedral::{DihedralElement, PlanarIsometry};
pub use error::{Error, Result};

pub use orbits::{ElementSet, StateSet};
pub use games::{Decision, GameSpec, Player, StatePath, Strategy, StrategyClass};
