use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exact arithmetic overflowed 64-bit integers")]
    ExactArithmeticOverflow,
    #[error("elements belong to different groups (D_{left} and D_{right})")]
    MismatchedGroup { left: u32, right: u32 },
    #[error("dihedral groups need n ≥ 3, got {0}")]
    InvalidOrder(u32),
    #[error("F ∉ D_{n}")]
    FNotInGroup { n: u32 },
    #[error("{isometry} ∉ D_{n}")]
    NotInGroup { n: u32, isometry: String },
    #[error("strategy has {actual} moves but the game gives its owner {expected} turns")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("Fix({{I, F}}) is empty in D_{n}; no intermediate state to aim for")]
    EmptyFixedSet { n: u32 },
    #[error("game has {rounds} rounds, search bound is {bound}")]
    SearchBudgetExceeded { rounds: usize, bound: usize },
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("{0}")]
    Parse(String),
}
