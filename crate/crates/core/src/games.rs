//! Games between Picard (moves `I`, `F`) and Q (moves from `D_n`).
//!
//! Strategies are pure and fixed in advance: a strategy is one move per owned
//! turn. Q wins when the coin ends in Q's target with probability 1, which in
//! the exact layer means the final state equals the target.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::AngleRange;
use crate::coinstate::{win_probability, CoinState};
use crate::dihedral::{isometries, PlanarIsometry};
use crate::error::{Error, Result};
use crate::orbits::picard_fixed_set;

/// Default bound on the number of rounds for exhaustive searches.
pub const DEFAULT_MAX_ROUNDS: usize = 9;

/// Largest number of candidate strategies an enumeration will scan.
pub const ENUMERATION_BUDGET: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    P,
    Q,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P => Player::Q,
            Player::Q => Player::P,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::P => "P",
            Player::Q => "Q",
        })
    }
}

/// Turn order, initial coin and the two players' targets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameSpec {
    turns: Vec<Player>,
    initial: CoinState,
    target_q: CoinState,
    target_p: CoinState,
}

impl GameSpec {
    pub fn new(turns: Vec<Player>, initial: CoinState, target_q: CoinState, target_p: CoinState) -> Result<GameSpec> {
        if turns.len() < 2 {
            return Err(Error::InvalidGame("a game needs at least two turns".into()));
        }
        if turns.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGame("players must alternate".into()));
        }
        for (label, state) in [("initial", initial), ("Q target", target_q), ("P target", target_p)] {
            if !state.is_basis() {
                return Err(Error::InvalidGame(format!("{label} {state} is not a basis state")));
            }
        }
        if target_q == target_p {
            return Err(Error::InvalidGame("Q and P need different targets".into()));
        }
        Ok(GameSpec {
            turns,
            initial,
            target_q,
            target_p,
        })
    }

    /// `(Q, P, Q)` from `|0⟩`, Q aiming for `|0⟩` and Picard for `|1⟩`.
    pub fn pqg() -> GameSpec {
        GameSpec::with_turns(vec![Player::Q, Player::P, Player::Q], CoinState::zero(), CoinState::zero())
            .expect("the three-round game is valid")
    }

    /// Picard's target is the basis state Q does not aim for.
    pub fn with_turns(turns: Vec<Player>, initial: CoinState, target_q: CoinState) -> Result<GameSpec> {
        GameSpec::new(turns, initial, target_q, target_q.orthogonal())
    }

    /// Parses `QPQ`, `Q,P,Q` or `(Q, P, Q)`.
    pub fn parse_turns(s: &str) -> Result<Vec<Player>> {
        s.chars()
            .filter(|c| !matches!(c, ' ' | ',' | '(' | ')'))
            .map(|c| match c.to_ascii_uppercase() {
                'P' => Ok(Player::P),
                'Q' => Ok(Player::Q),
                other => Err(Error::Parse(format!("unknown player `{other}` in turn order"))),
            })
            .collect()
    }

    pub fn turns(&self) -> &[Player] {
        &self.turns
    }

    pub fn initial(&self) -> CoinState {
        self.initial
    }

    pub fn target_q(&self) -> CoinState {
        self.target_q
    }

    pub fn target_p(&self) -> CoinState {
        self.target_p
    }

    pub fn target(&self, player: Player) -> CoinState {
        match player {
            Player::P => self.target_p,
            Player::Q => self.target_q,
        }
    }

    pub fn rounds(&self) -> usize {
        self.turns.len()
    }

    pub fn turn_count(&self, player: Player) -> usize {
        self.turns.iter().filter(|&&t| t == player).count()
    }

    /// Turn order as a compact string such as `QPQ`.
    pub fn turn_string(&self) -> String {
        self.turns.iter().map(ToString::to_string).collect()
    }

    fn is_three_round(&self) -> bool {
        self.turns == [Player::Q, Player::P, Player::Q]
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let turns: Vec<String> = self.turns.iter().map(ToString::to_string).collect();
        write!(
            f,
            "({}) from {}, Q→{}, P→{}",
            turns.join(", "),
            self.initial,
            self.target_q,
            self.target_p
        )
    }
}

/// One move per owned turn, in turn order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Strategy {
    owner: Player,
    moves: Vec<PlanarIsometry>,
}

impl Strategy {
    pub fn new(owner: Player, moves: Vec<PlanarIsometry>) -> Strategy {
        Strategy { owner, moves }
    }

    pub fn q(moves: Vec<PlanarIsometry>) -> Strategy {
        Strategy::new(Player::Q, moves)
    }

    pub fn p(moves: Vec<PlanarIsometry>) -> Strategy {
        Strategy::new(Player::P, moves)
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn moves(&self) -> &[PlanarIsometry] {
        &self.moves
    }

    /// Parses a comma separated move list such as `H,H` or `(R_{2π/8}, R_{14π/8})`.
    pub fn parse(owner: Player, s: &str) -> Result<Strategy> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let moves = inner
            .split(',')
            .map(str::trim)
            .filter(|m| !m.is_empty())
            .map(PlanarIsometry::from_str)
            .collect::<Result<_>>()?;
        Ok(Strategy::new(owner, moves))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moves: Vec<String> = self.moves.iter().map(ToString::to_string).collect();
        write!(f, "({})", moves.join(", "))
    }
}

/// States visited by composing the owner's moves only, starting from the
/// initial state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StatePath(Vec<CoinState>);

impl StatePath {
    pub fn of(strategy: &Strategy, initial: CoinState) -> Result<StatePath> {
        let mut states = vec![initial];
        let mut current = initial;
        for m in strategy.moves() {
            current = current.act(m)?;
            states.push(current);
        }
        Ok(StatePath(states))
    }

    pub fn states(&self) -> &[CoinState] {
        &self.0
    }
}

impl fmt::Display for StatePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let states: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", states.join(", "))
    }
}

/// Strategies sharing one state path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyClass {
    pub representative: Strategy,
    pub members: BTreeSet<Strategy>,
    pub path: StatePath,
}

fn check_strategy(spec: &GameSpec, sigma: &Strategy, owner: Player) -> Result<()> {
    if sigma.owner != owner {
        return Err(Error::InvalidGame(format!("expected a strategy for {owner}, got one for {}", sigma.owner)));
    }
    let expected = spec.turn_count(owner);
    if sigma.moves.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            actual: sigma.moves.len(),
        });
    }
    Ok(())
}

fn picard_moves() -> [PlanarIsometry; 2] {
    [PlanarIsometry::identity(), PlanarIsometry::flip()]
}

/// Coin states after each turn, starting with the initial state.
pub fn trace(spec: &GameSpec, sigma_q: &Strategy, sigma_p: &Strategy) -> Result<Vec<CoinState>> {
    check_strategy(spec, sigma_q, Player::Q)?;
    check_strategy(spec, sigma_p, Player::P)?;
    let mut q_moves = sigma_q.moves.iter();
    let mut p_moves = sigma_p.moves.iter();
    let mut states = vec![spec.initial];
    let mut current = spec.initial;
    for turn in &spec.turns {
        let m = match turn {
            Player::Q => q_moves.next(),
            Player::P => p_moves.next(),
        }
        .expect("lengths checked");
        current = current.act(m)?;
        states.push(current);
    }
    Ok(states)
}

/// Final coin state after both players follow their strategies.
pub fn play_out(spec: &GameSpec, sigma_q: &Strategy, sigma_p: &Strategy) -> Result<CoinState> {
    Ok(*trace(spec, sigma_q, sigma_p)?.last().expect("trace is never empty"))
}

/// Every move sequence of length `len` over `pool`, in lexicographic pool order.
pub fn sequences(pool: &[PlanarIsometry], len: usize) -> Vec<Vec<PlanarIsometry>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |m| {
                    let mut next = prefix.clone();
                    next.push(*m);
                    next
                })
            })
            .collect();
    }
    out
}

fn budget_check(spec: &GameSpec, pool_size: usize, len: usize) -> Result<()> {
    let count = (pool_size as u64).checked_pow(len as u32);
    match count {
        Some(c) if c <= ENUMERATION_BUDGET => Ok(()),
        _ => {
            // largest turn count that would still fit
            let mut fits = 0;
            while (pool_size as u64).checked_pow(fits + 1).is_some_and(|c| c <= ENUMERATION_BUDGET) {
                fits += 1;
            }
            Err(Error::SearchBudgetExceeded {
                rounds: spec.rounds(),
                bound: fits as usize,
            })
        }
    }
}

/// All of Picard's strategies for `spec`, from `(I, …, I)` to `(F, …, F)`.
pub fn picard_strategies(spec: &GameSpec) -> Vec<Strategy> {
    sequences(&picard_moves(), spec.turn_count(Player::P))
        .into_iter()
        .map(Strategy::p)
        .collect()
}

/// True when `sigma` reaches its owner's target against every opponent
/// strategy built from `opponent_pool`.
pub fn beats_every(spec: &GameSpec, sigma: &Strategy, opponent_pool: &[PlanarIsometry]) -> Result<bool> {
    check_strategy(spec, sigma, sigma.owner)?;
    let opponent = sigma.owner.opponent();
    budget_check(spec, opponent_pool.len(), spec.turn_count(opponent))?;
    for moves in sequences(opponent_pool, spec.turn_count(opponent)) {
        let other = Strategy::new(opponent, moves);
        let (q, p) = match sigma.owner {
            Player::Q => (sigma, &other),
            Player::P => (&other, sigma),
        };
        if play_out(spec, q, p)? != spec.target(sigma.owner) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Q wins with certainty against all `2^m` Picard strategies.
pub fn is_winning_strategy(spec: &GameSpec, sigma_q: &Strategy) -> Result<bool> {
    check_strategy(spec, sigma_q, Player::Q)?;
    beats_every(spec, sigma_q, &picard_moves())
}

/// The two conditions every winning strategy of the three-round game meets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacteristicProperties {
    /// `A₁` applied to the initial state.
    pub intermediate: CoinState,
    /// `A₂ I A₁` and `A₂ F A₁` applied to the initial state.
    pub after_identity: CoinState,
    pub after_flip: CoinState,
    /// `F` fixes the intermediate state.
    pub intermediate_fixed_by_flip: bool,
    pub target: CoinState,
}

impl CharacteristicProperties {
    pub fn holds(&self) -> bool {
        self.after_identity == self.target && self.after_flip == self.target && self.intermediate_fixed_by_flip
    }
}

pub fn verify_characteristic_properties(spec: &GameSpec, sigma_q: &Strategy) -> Result<CharacteristicProperties> {
    if !spec.is_three_round() {
        return Err(Error::InvalidGame("characteristic properties apply to (Q, P, Q)".into()));
    }
    check_strategy(spec, sigma_q, Player::Q)?;
    let (a1, a2) = (&sigma_q.moves[0], &sigma_q.moves[1]);
    let intermediate = spec.initial.act(a1)?;
    let flipped = intermediate.act(&PlanarIsometry::flip())?;
    Ok(CharacteristicProperties {
        intermediate,
        after_identity: intermediate.act(a2)?,
        after_flip: flipped.act(a2)?,
        intermediate_fixed_by_flip: flipped == intermediate,
        target: spec.target_q,
    })
}

/// Q's moves in `D_n`, in canonical order.
pub fn q_pool(n: u32) -> Result<Vec<PlanarIsometry>> {
    let mut pool = isometries(n)?;
    pool.sort();
    pool.dedup();
    Ok(pool)
}

fn require_flip(n: u32) -> Result<()> {
    isometries(n)?;
    if n % 4 != 0 {
        return Err(Error::FNotInGroup { n });
    }
    Ok(())
}

/// Every winning strategy for Q with moves drawn from `D_n`, sorted.
///
/// The scan is split by first move and run in parallel.
pub fn enumerate_winning_strategies(spec: &GameSpec, n: u32) -> Result<Vec<Strategy>> {
    require_flip(n)?;
    let pool = q_pool(n)?;
    let k = spec.turn_count(Player::Q);
    budget_check(spec, pool.len(), k)?;
    if k == 0 {
        let empty = Strategy::q(Vec::new());
        return Ok(if is_winning_strategy(spec, &empty)? { vec![empty] } else { Vec::new() });
    }
    let tails = sequences(&pool, k - 1);
    let per_first: Vec<Vec<Strategy>> = pool
        .par_iter()
        .map(|first| {
            let mut found = Vec::new();
            for tail in &tails {
                let mut moves = Vec::with_capacity(k);
                moves.push(*first);
                moves.extend_from_slice(tail);
                let sigma = Strategy::q(moves);
                if is_winning_strategy(spec, &sigma)? {
                    found.push(sigma);
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<Strategy> = per_first.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// Partitions strategies by state path from `initial`; classes come out in
/// path order and each representative is the smallest member.
pub fn classify_strategies(strategies: &[Strategy], initial: CoinState) -> Vec<StrategyClass> {
    let mut by_path: BTreeMap<StatePath, BTreeSet<Strategy>> = BTreeMap::new();
    for sigma in strategies {
        let path = StatePath::of(sigma, initial).expect("moves of a finite pool stay in range");
        by_path.entry(path).or_default().insert(sigma.clone());
    }
    by_path
        .into_iter()
        .map(|(path, members)| StrategyClass {
            representative: members.first().expect("classes are non-empty").clone(),
            members,
            path,
        })
        .collect()
}

/// Probability that `owner` wins when the strategies are played.
pub fn win_probability_for(spec: &GameSpec, owner: Player, sigma_q: &Strategy, sigma_p: &Strategy) -> Result<f64> {
    Ok(win_probability(&play_out(spec, sigma_q, sigma_p)?, &spec.target(owner)))
}

/// True when no alternative from `own_pool` does better than `sigma` against
/// any opponent strategy from `opp_pool`.
pub fn is_dominant(
    spec: &GameSpec,
    sigma: &Strategy,
    own_pool: &[PlanarIsometry],
    opp_pool: &[PlanarIsometry],
) -> Result<bool> {
    let owner = sigma.owner;
    check_strategy(spec, sigma, owner)?;
    let opponent = owner.opponent();
    budget_check(spec, own_pool.len(), spec.turn_count(owner))?;
    budget_check(spec, opp_pool.len(), spec.turn_count(opponent))?;
    let alternatives = sequences(own_pool, spec.turn_count(owner));
    for moves in sequences(opp_pool, spec.turn_count(opponent)) {
        let other = Strategy::new(opponent, moves);
        let score = |mine: &Strategy| match owner {
            Player::Q => win_probability_for(spec, owner, mine, &other),
            Player::P => win_probability_for(spec, owner, &other, mine),
        };
        let own_score = score(sigma)?;
        for alt in &alternatives {
            if score(&Strategy::new(owner, alt.clone()))? > own_score + 1e-12 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of an extended game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "strategy")]
pub enum Decision {
    QWins(Strategy),
    /// Never produced by [`decide_extended_game`]; exhaustive search reports
    /// it if it ever finds a Picard strategy that always wins.
    PicardWins(Strategy),
    NoWinningStrategyForEither,
}

impl Decision {
    pub fn q_wins(&self) -> bool {
        matches!(self, Decision::QWins(_))
    }

    pub fn picard_wins(&self) -> bool {
        matches!(self, Decision::PicardWins(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Decision::QWins(_) => "QWins",
            Decision::PicardWins(_) => "PicardWins",
            Decision::NoWinningStrategyForEither => "NoWinningStrategyForEither",
        }
    }

    pub fn strategy(&self) -> Option<&Strategy> {
        match self {
            Decision::QWins(s) | Decision::PicardWins(s) => Some(s),
            Decision::NoWinningStrategyForEither => None,
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.strategy() {
            Some(s) => write!(f, "{} {s}", self.label()),
            None => f.write_str(self.label()),
        }
    }
}

/// Q wins exactly when Q moves first and last.
///
/// The witness is `(H, I, …, I, H)` if Q starts on its target and
/// `(H, I, …, I, FH)` otherwise. Picard never has a winning strategy.
pub fn decide_extended_game(spec: &GameSpec) -> Decision {
    let turns = spec.turns();
    if turns.first() != Some(&Player::Q) || turns.last() != Some(&Player::Q) {
        return Decision::NoWinningStrategyForEither;
    }
    let k = spec.turn_count(Player::Q);
    let last = if spec.initial == spec.target_q {
        PlanarIsometry::hadamard()
    } else {
        PlanarIsometry::flip()
            .compose(&PlanarIsometry::hadamard())
            .expect("FH is a rotor by π/4")
    };
    let mut moves = vec![PlanarIsometry::hadamard()];
    moves.extend(std::iter::repeat_n(PlanarIsometry::identity(), k - 2));
    moves.push(last);
    Decision::QWins(Strategy::q(moves))
}

type StateBag = BTreeSet<CoinState>;

struct QSearch<'a> {
    turns: &'a [Player],
    pool: &'a [PlanarIsometry],
    target: CoinState,
    memo: HashMap<(usize, Vec<CoinState>), Option<Vec<PlanarIsometry>>>,
}

impl QSearch<'_> {
    /// A move sequence for Q's remaining turns that lands every reachable
    /// state on the target, if one exists.
    fn solve(&mut self, idx: usize, bag: &StateBag) -> Result<Option<Vec<PlanarIsometry>>> {
        if idx == self.turns.len() {
            let won = bag.len() == 1 && bag.contains(&self.target);
            return Ok(won.then(Vec::new));
        }
        let key = (idx, bag.iter().copied().collect::<Vec<_>>());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let answer = match self.turns[idx] {
            Player::P => {
                let mut next = bag.clone();
                for x in bag {
                    next.insert(x.act(&PlanarIsometry::flip())?);
                }
                self.solve(idx + 1, &next)?
            }
            Player::Q => {
                let mut found = None;
                for m in self.pool {
                    let next = bag.iter().map(|x| x.act(m)).collect::<Result<StateBag>>()?;
                    if let Some(mut rest) = self.solve(idx + 1, &next)? {
                        rest.insert(0, *m);
                        found = Some(rest);
                        break;
                    }
                }
                found
            }
        };
        self.memo.insert(key, answer.clone());
        Ok(answer)
    }
}

/// A Picard strategy that reaches Picard's target against every Q strategy
/// over `pool`, if one exists.
fn picard_search(spec: &GameSpec, pool: &[PlanarIsometry]) -> Result<Option<Strategy>> {
    for sigma_p in picard_strategies(spec) {
        let mut p_moves = sigma_p.moves.iter();
        let mut bag = StateBag::from([spec.initial]);
        for turn in &spec.turns {
            bag = match turn {
                Player::P => {
                    let m = p_moves.next().expect("one move per Picard turn");
                    bag.iter().map(|x| x.act(m)).collect::<Result<_>>()?
                }
                Player::Q => {
                    let mut next = StateBag::new();
                    for x in &bag {
                        for m in pool {
                            next.insert(x.act(m)?);
                        }
                    }
                    next
                }
            };
        }
        if bag.len() == 1 && bag.contains(&spec.target_p) {
            return Ok(Some(sigma_p));
        }
    }
    Ok(None)
}

/// Exhaustive decision over Q's pool `D_n` and Picard's `{I, F}`.
///
/// Q's side is searched over sets of reachable coin states, one set per
/// prefix of Q's moves, which covers all Picard replies at once. Picard's
/// side propagates every Q move for each of Picard's `2^m` strategies.
pub fn brute_force_extended_check(spec: &GameSpec, n: u32, max_rounds: usize) -> Result<Decision> {
    if spec.rounds() > max_rounds {
        return Err(Error::SearchBudgetExceeded {
            rounds: spec.rounds(),
            bound: max_rounds,
        });
    }
    require_flip(n)?;
    let pool = q_pool(n)?;
    let mut search = QSearch {
        turns: spec.turns(),
        pool: &pool,
        target: spec.target_q,
        memo: HashMap::new(),
    };
    if let Some(moves) = search.solve(0, &StateBag::from([spec.initial]))? {
        return Ok(Decision::QWins(Strategy::q(moves)));
    }
    Ok(match picard_search(spec, &pool)? {
        Some(sigma_p) => Decision::PicardWins(sigma_p),
        None => Decision::NoWinningStrategyForEither,
    })
}

/// Moves in `D_n` sending `from` to `to`.
pub fn moves_between(n: u32, from: CoinState, to: CoinState) -> Result<Vec<PlanarIsometry>> {
    let mut out = Vec::new();
    for m in q_pool(n)? {
        if from.act(&m)? == to {
            out.push(m);
        }
    }
    Ok(out)
}

/// Winning strategies of the three-round game built through the states
/// Picard cannot move: `A₁` reaches a fixed state, `A₂` brings it to the target.
pub fn synthesize_by_algorithm1(spec: &GameSpec, n: u32) -> Result<Vec<Strategy>> {
    if !spec.is_three_round() {
        return Err(Error::InvalidGame("synthesis applies to (Q, P, Q)".into()));
    }
    let fixed = picard_fixed_set(n)?;
    if fixed.is_empty() {
        return Err(Error::EmptyFixedSet { n });
    }
    let mut out = BTreeSet::new();
    for s in fixed.iter() {
        let firsts = moves_between(n, spec.initial, *s)?;
        let seconds = moves_between(n, *s, spec.target_q)?;
        for a1 in &firsts {
            for a2 in &seconds {
                out.insert(Strategy::q(vec![*a1, *a2]));
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn mirrored(m: &PlanarIsometry) -> PlanarIsometry {
    match m {
        PlanarIsometry::Rotor(a) => PlanarIsometry::Rotor(a.negate(AngleRange::FullTurn).expect("small angle")),
        PlanarIsometry::Reflector(a) => PlanarIsometry::Reflector(a.negate(AngleRange::Axis).expect("small angle")),
    }
}

/// Members whose moves undo each other (`A₂ = A₁⁻¹`), in table order.
///
/// Classes whose intermediate state lies above `|1⟩` are listed as the
/// mirror image (conjugation by `S_0`) of the class below it, so that the
/// `|+⟩` and `|−⟩` rows line up.
pub fn display_representatives(class: &StrategyClass) -> Vec<Strategy> {
    let mirror = class
        .path
        .states()
        .get(1)
        .is_some_and(|s| *s > CoinState::one());
    let mut out: Vec<Strategy> = class
        .members
        .iter()
        .filter(|s| {
            s.moves.len() == 2
                && s.moves[1]
                    .compose(&s.moves[0])
                    .is_ok_and(|p| p == PlanarIsometry::identity())
        })
        .cloned()
        .collect();
    out.sort_by_key(|s| {
        let first = if mirror { mirrored(&s.moves[0]) } else { s.moves[0] };
        first.angle()
    });
    out
}

/// Summary of a game in `D_n`, as reported by the command line tool.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GameAnalysis {
    pub n: u32,
    pub turns: String,
    pub initial: String,
    pub targets: Targets,
    pub decision: String,
    pub witness: Option<String>,
    pub strategy_count: Option<usize>,
    pub classes: Vec<ClassSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Targets {
    #[serde(rename = "Q")]
    pub q: String,
    #[serde(rename = "P")]
    pub p: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassSummary {
    pub path: Vec<String>,
    pub size: usize,
    pub representative: String,
}

/// Decides the game exhaustively in `D_n` and, when the strategy space is
/// small enough, lists Q's winning strategies by class.
pub fn analyze(spec: &GameSpec, n: u32, max_rounds: usize) -> Result<GameAnalysis> {
    let decision = brute_force_extended_check(spec, n, max_rounds)?;
    let winners = match enumerate_winning_strategies(spec, n) {
        Ok(w) => Some(w),
        Err(Error::SearchBudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let classes = winners
        .as_deref()
        .map(|w| classify_strategies(w, spec.initial))
        .unwrap_or_default()
        .into_iter()
        .map(|c| ClassSummary {
            path: c.path.states().iter().map(ToString::to_string).collect(),
            size: c.members.len(),
            representative: c.representative.to_string(),
        })
        .collect();
    Ok(GameAnalysis {
        n,
        turns: spec.turn_string(),
        initial: spec.initial.to_string(),
        targets: Targets {
            q: spec.target_q.to_string(),
            p: spec.target_p.to_string(),
        },
        decision: decision.label().to_string(),
        witness: decision.strategy().map(ToString::to_string),
        strategy_count: winners.map(|w| w.len()),
        classes,
    })
}
