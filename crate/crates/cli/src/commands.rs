//! Subcommand implementations. Each builds one serializable payload; the JSON
//! output is that payload and the Markdown output is rendered from it.

use pennyflip::games::{
    analyze as analyze_game, brute_force_extended_check, classify_strategies, decide_extended_game,
    display_representatives, enumerate_winning_strategies, trace, GameAnalysis, StrategyClass,
};
use pennyflip::orbits::{elements_for_isometries, fixed_set, orbit, orbit_of_basis, stabilizer};
use pennyflip::unitary::{falsify_first_moves, falsify_fixed_states, FalsificationReport};
use pennyflip::{CoinState, Error, GameSpec, PlanarIsometry, Player, Strategy};
use serde::Serialize;

use crate::checks::run_checks;
use crate::config::{Config, OutputFormat};
use crate::report::SuiteReport;
use crate::{md_cell, CliError, SCHEMA_VERSION};

/// A command's result in both output formats.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: String,
    pub markdown: String,
    /// Ids of failed verifications; non-empty makes the process exit with 1.
    pub failed: Vec<String>,
}

impl Output {
    pub fn render(&self, format: OutputFormat) -> &str {
        match format {
            OutputFormat::Json => &self.json,
            OutputFormat::Markdown => &self.markdown,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    payload: &'a T,
}

fn output<T: Serialize>(command: &str, payload: &T, markdown: String) -> Output {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        payload,
    };
    let mut json = serde_json::to_string_pretty(&envelope).expect("payloads are plain data");
    json.push('\n');
    Output {
        json,
        markdown,
        failed: Vec::new(),
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitPayload {
    pub n: u32,
    pub state: String,
    pub orbit: Vec<String>,
    pub size: usize,
    pub rendered: String,
}

pub fn orbit_cmd(config: &Config, n: u32, state: CoinState) -> Result<Output, CliError> {
    config.check_n(n)?;
    let set = orbit(n, state)?;
    let payload = OrbitPayload {
        n,
        state: state.to_string(),
        orbit: strings(set.iter()),
        size: set.len(),
        rendered: set.to_string(),
    };
    let md = format!("D_{} ⋆ {} = {}\n", n, payload.state, payload.rendered);
    Ok(output("orbit", &payload, md))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilizerPayload {
    pub n: u32,
    pub state: String,
    pub elements: Vec<String>,
    pub isometries: Vec<String>,
    pub size: usize,
    pub rendered: String,
}

pub fn stabilizer_cmd(config: &Config, n: u32, state: CoinState) -> Result<Output, CliError> {
    config.check_n(n)?;
    let set = stabilizer(n, state)?;
    let payload = StabilizerPayload {
        n,
        state: state.to_string(),
        elements: strings(set.iter()),
        isometries: set.iter().map(|g| g.represent().notation_in(n)).collect(),
        size: set.len(),
        rendered: set.to_string(),
    };
    let md = format!("D_{}({}) = {}\n", n, payload.state, payload.rendered);
    Ok(output("stabilizer", &payload, md))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FixedSetPayload {
    pub n: u32,
    pub elems: Vec<String>,
    pub domain: Vec<String>,
    pub fixed_set: Vec<String>,
    pub rendered: String,
}

pub fn fixed_set_cmd(config: &Config, n: u32, elems: &[PlanarIsometry]) -> Result<Output, CliError> {
    config.check_n(n)?;
    let group = elements_for_isometries(n, elems)?;
    let fixed = fixed_set(n, &group)?;
    let payload = FixedSetPayload {
        n,
        elems: strings(elems),
        domain: strings(orbit_of_basis(n)?.iter()),
        fixed_set: strings(fixed.iter()),
        rendered: fixed.to_string(),
    };
    let md = format!("Fix({{{}}}) in D_{} = {}\n", payload.elems.join(", "), n, payload.rendered);
    Ok(output("fixed-set", &payload, md))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumeratePayload {
    #[serde(flatten)]
    pub analysis: GameAnalysis,
    pub strategies: Vec<String>,
}

/// Strategies shown in a table row: inverse pairs in table order when the
/// class has them, otherwise the first members.
fn row_strategies(class: &StrategyClass) -> Vec<Strategy> {
    let shown = display_representatives(class);
    if shown.is_empty() {
        class.members.iter().take(3).cloned().collect()
    } else {
        shown
    }
}

fn strategy_cell(strategies: &[Strategy], limit: usize, more: bool) -> String {
    let mut parts = strings(strategies.iter().take(limit));
    if more || strategies.len() > limit {
        parts.push("…".into());
    }
    parts.join(", ")
}

/// Round-by-round coin states of a class representative against an idle Picard.
fn round_states(spec: &GameSpec, class: &StrategyClass) -> Result<Vec<CoinState>, Error> {
    let idle = Strategy::p(vec![PlanarIsometry::identity(); spec.turn_count(Player::P)]);
    trace(spec, &class.representative, &idle)
}

fn evolution_header(title: &str, rounds: usize) -> String {
    let mut head = format!("| {} | Initial state |", md_cell(title));
    let mut rule = String::from("|---|---|");
    for r in 1..=rounds {
        head.push_str(&format!(" Round {r} |"));
        rule.push_str("---|");
    }
    format!("{head}\n{rule}\n")
}

fn evolution_row(label: &str, states: &[CoinState]) -> String {
    let cells: Vec<String> = states.iter().map(|s| md_cell(&s.to_string())).collect();
    format!("| {} | {} |\n", md_cell(label), cells.join(" | "))
}

fn evolution_table(spec: &GameSpec, n: u32, classes: &[StrategyClass]) -> Result<String, Error> {
    let mut md = evolution_header(&format!("The evolution of the {} game in D_{n}", turn_tuple(spec)), spec.rounds());
    for class in classes {
        let shown = row_strategies(class);
        let label = strategy_cell(&shown, 3, class.members.len() > shown.len().min(3));
        md.push_str(&evolution_row(&label, &round_states(spec, class)?));
    }
    Ok(md)
}

fn turn_tuple(spec: &GameSpec) -> String {
    format!("({})", strings(spec.turns()).join(", "))
}

pub fn enumerate_cmd(config: &Config, n: u32, spec: &GameSpec) -> Result<Output, CliError> {
    config.check_n(n)?;
    let winners = enumerate_winning_strategies(spec, n)?;
    let analysis = analyze_game(spec, n, config.max_rounds)?;
    let classes = classify_strategies(&winners, spec.initial());
    let mut md = evolution_table(spec, n, &classes)?;
    md.push_str(&format!(
        "\n{} winning strategies in {} classes ({})\n",
        winners.len(),
        classes.len(),
        classes.iter().map(|c| c.members.len().to_string()).collect::<Vec<_>>().join(" + ")
    ));
    let payload = EnumeratePayload {
        analysis,
        strategies: strings(&winners),
    };
    Ok(output("enumerate", &payload, md))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassPayload {
    pub path: Vec<String>,
    pub size: usize,
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifyPayload {
    pub initial: String,
    pub classes: Vec<ClassPayload>,
}

pub fn classify_cmd(initial: CoinState, strategies: &[Strategy]) -> Result<Output, CliError> {
    if let Some(len) = strategies.first().map(|s| s.moves().len()) {
        if let Some(bad) = strategies.iter().find(|s| s.moves().len() != len) {
            return Err(CliError::Usage(format!("strategy {bad} has a different length from the others")));
        }
    }
    let classes = classify_strategies(strategies, initial);
    let payload = ClassifyPayload {
        initial: initial.to_string(),
        classes: classes
            .iter()
            .map(|c| ClassPayload {
                path: strings(c.path.states()),
                size: c.members.len(),
                representative: c.representative.to_string(),
                members: strings(&c.members),
            })
            .collect(),
    };
    let mut md = String::from("| Path | Size | Members |\n|---|---|---|\n");
    for c in &classes {
        md.push_str(&format!(
            "| {} | {} | {} |\n",
            md_cell(&c.path.to_string()),
            c.members.len(),
            strings(&c.members).join(", ")
        ));
    }
    Ok(output("classify", &payload, md))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BruteForcePayload {
    pub n: u32,
    pub decision: String,
    pub witness: Option<String>,
    pub agrees: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalyzePayload {
    pub turns: String,
    pub initial: String,
    pub targets: pennyflip::games::Targets,
    pub decision: String,
    pub strategy: Option<String>,
    /// Coin states of the winning strategy against an idle Picard.
    pub states: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<BruteForcePayload>,
}

pub fn analyze_cmd(config: &Config, spec: &GameSpec, brute_force_n: Option<u32>) -> Result<Output, CliError> {
    let decision = decide_extended_game(spec);
    let states = match decision.strategy() {
        Some(sigma) => {
            let idle = Strategy::p(vec![PlanarIsometry::identity(); spec.turn_count(Player::P)]);
            Some(strings(trace(spec, sigma, &idle)?))
        }
        None => None,
    };
    let brute_force = match brute_force_n {
        Some(n) => {
            config.check_n(n)?;
            let searched = brute_force_extended_check(spec, n, config.max_rounds)?;
            Some(BruteForcePayload {
                n,
                decision: searched.label().into(),
                witness: searched.strategy().map(ToString::to_string),
                agrees: searched.q_wins() == decision.q_wins() && !searched.picard_wins(),
            })
        }
        None => None,
    };
    let payload = AnalyzePayload {
        turns: spec.turn_string(),
        initial: spec.initial().to_string(),
        targets: pennyflip::games::Targets {
            q: spec.target_q().to_string(),
            p: spec.target_p().to_string(),
        },
        decision: decision.label().into(),
        strategy: decision.strategy().map(ToString::to_string),
        states,
        brute_force,
    };
    let mut md = format!("Game {}\n\nDecision: {}\n", turn_tuple(spec), payload.decision);
    if let (Some(s), Some(path)) = (&payload.strategy, &payload.states) {
        md.push_str(&format!("\nQ plays {s}; coin states {}\n", path.join(" → ")));
    }
    if let Some(b) = &payload.brute_force {
        md.push_str(&format!(
            "\nExhaustive search in D_{}: {} ({})\n",
            b.n,
            b.decision,
            if b.agrees { "agrees" } else { "DISAGREES" }
        ));
    }
    let mut out = output("analyze", &payload, md);
    if payload.brute_force.as_ref().is_some_and(|b| !b.agrees) {
        out.failed.push("analyze-brute-force".into());
    }
    Ok(out)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SamplePayload {
    pub seed: u64,
    pub tolerance: f64,
    pub samples: u64,
    /// Sampled unitaries with `U|0⟩` on `|+⟩` or `|−⟩` up to phase.
    pub hits: u64,
    pub max_residual: f64,
    pub first_moves: FalsificationReport,
    pub fixed_states: FalsificationReport,
}

pub fn sample_u2_cmd(config: &Config) -> Result<Output, CliError> {
    let first_moves = falsify_first_moves(config.seed, config.samples, config.tolerance);
    let fixed_states = falsify_fixed_states(config.seed, config.samples, config.tolerance);
    let payload = SamplePayload {
        seed: config.seed,
        tolerance: config.tolerance,
        samples: config.samples,
        hits: first_moves.hits,
        max_residual: first_moves.max_residual,
        first_moves,
        fixed_states,
    };
    let md = format!(
        "| Sample set | Samples | Hits | Violations | Max residual |\n|---|---|---|---|---|\n\
         | unitaries, U\\|0⟩ ∝ \\|±⟩ | {} | {} | {} | {:e} |\n\
         | states fixed by F | {} | {} | {} | {:e} |\n",
        first_moves.samples,
        first_moves.hits,
        first_moves.violations,
        first_moves.max_residual,
        fixed_states.samples,
        fixed_states.hits,
        fixed_states.violations,
        fixed_states.max_residual
    );
    let mut out = output("sample-u2", &payload, md);
    if first_moves.violations + fixed_states.violations > 0 {
        out.failed.push("sample-u2".into());
    }
    Ok(out)
}

pub fn verify_all_cmd(config: &Config, only: &[String], timing: bool) -> Output {
    let suite = SuiteReport::new(config.clone(), run_checks(config, only, timing));
    let mut json = serde_json::to_string_pretty(&suite).expect("reports are plain data");
    json.push('\n');
    Output {
        json,
        markdown: suite.to_markdown(),
        failed: suite.failing_ids(),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PlayabilityRow {
    pub n: u32,
    pub playable: bool,
    pub classical: bool,
    pub picard_wins: Option<bool>,
    pub q_wins: Option<bool>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EvolutionRow {
    pub strategies: Vec<String>,
    pub states: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TablePayload {
    pub table: u8,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<EvolutionRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub playability: Vec<PlayabilityRow>,
}

fn evolution_rows(n: u32) -> Result<(GameSpec, Vec<StrategyClass>, Vec<EvolutionRow>), Error> {
    let pqg = GameSpec::pqg();
    let classes = classify_strategies(&enumerate_winning_strategies(&pqg, n)?, pqg.initial());
    let mut rows = Vec::new();
    for class in &classes {
        rows.push(EvolutionRow {
            strategies: strings(row_strategies(class)),
            states: strings(round_states(&pqg, class)?),
        });
    }
    Ok((pqg, classes, rows))
}

/// The winning classes of the three-round game in `D_8`.
pub fn table1() -> Result<Output, CliError> {
    let (pqg, classes, rows) = evolution_rows(8)?;
    let md = evolution_table(&pqg, 8, &classes)?;
    let payload = TablePayload {
        table: 1,
        groups: vec![8],
        rows,
        playability: Vec::new(),
    };
    Ok(output("table", &payload, md))
}

/// Playability and winners in `D_3` to `D_7`.
pub fn table2() -> Result<Output, CliError> {
    let pqg = GameSpec::pqg();
    let mut rows = Vec::new();
    for n in 3..=7 {
        rows.push(match brute_force_extended_check(&pqg, n, pqg.rounds()) {
            Ok(decision) => PlayabilityRow {
                n,
                playable: true,
                classical: orbit_of_basis(n)?.len() == 2,
                picard_wins: Some(decision.picard_wins()),
                q_wins: Some(decision.q_wins()),
            },
            Err(Error::FNotInGroup { .. }) => PlayabilityRow {
                n,
                playable: false,
                classical: false,
                picard_wins: None,
                q_wins: None,
            },
            Err(e) => return Err(e.into()),
        });
    }
    let yes_no = |b: Option<bool>| match b {
        Some(true) => "Yes",
        Some(false) => "No",
        None => "---",
    };
    let mut md = String::from(
        "| Ambient group | Is PQG playable | Winning strategy for Picard | Winning strategy for Q |\n|---|---|---|---|\n",
    );
    for r in &rows {
        let playable = match (r.playable, r.classical) {
            (false, _) => "No (F ∉ M_P)",
            (true, true) => "Yes (classical coin tossing)",
            (true, false) => "Yes",
        };
        md.push_str(&format!(
            "| D_{} | {} | {} | {} |\n",
            r.n,
            playable,
            yes_no(r.picard_wins),
            yes_no(r.q_wins)
        ));
    }
    let payload = TablePayload {
        table: 2,
        groups: (3..=7).collect(),
        rows: Vec::new(),
        playability: rows,
    };
    Ok(output("table", &payload, md))
}

/// The winning classes in `D_{8n}` and their phase families in `U(2)`.
pub fn table3() -> Result<Output, CliError> {
    let (pqg, classes, rows) = evolution_rows(8)?;
    let groups = vec![8, 16, 24, 32];
    let reference = enumerate_winning_strategies(&pqg, 8)?;
    for &n in &groups[1..] {
        if enumerate_winning_strategies(&pqg, n)? != reference {
            return Err(CliError::Failed(vec![format!("table3-D{n}")]));
        }
    }
    let mut md = evolution_header("The ambient group is D_{8n}, n ≥ 1", pqg.rounds());
    for class in &classes {
        let shown = row_strategies(class);
        md.push_str(&evolution_row(&strategy_cell(&shown, 3, true), &round_states(&pqg, class)?));
    }
    md.push('\n');
    md.push_str(&evolution_header("The ambient group is U(2) (θ ∈ ℝ)", pqg.rounds()));
    let subscripts = [("θ₁", "θ₂"), ("θ₃", "θ₄")];
    for (class, (t1, t2)) in classes.iter().zip(subscripts) {
        let shown: Vec<String> = row_strategies(class)
            .iter()
            .take(2)
            .map(|s| format!("({} ({t1}), {} ({t2}))", s.moves()[0], s.moves()[1]))
            .chain(std::iter::once("…".to_string()))
            .collect();
        md.push_str(&evolution_row(&shown.join(", "), &round_states(&pqg, class)?));
    }
    let payload = TablePayload {
        table: 3,
        groups,
        rows,
        playability: Vec::new(),
    };
    Ok(output("table", &payload, md))
}
