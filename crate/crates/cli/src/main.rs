use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pennyflip::games::Player;
use pennyflip::{CoinState, GameSpec, PlanarIsometry, Strategy};
use pennyflip_cli::commands::{self, Output};
use pennyflip_cli::config::{parse_n_range, Config, OutputFormat, Overrides};
use pennyflip_cli::CliError;

/// Group-theoretic analysis of the quantum penny flip game.
#[derive(Parser)]
#[command(name = "pennyflip", version)]
struct Cli {
    /// key=value config file; defaults to $PENNYFLIP_CONFIG
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Inclusive range of group orders, e.g. 3..64
    #[arg(long, global = true, value_parser = parse_n_range)]
    n_range: Option<(u32, u32)>,
    #[arg(long, global = true)]
    max_rounds: Option<usize>,
    #[arg(long, global = true)]
    samples: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit of a coin state under D_n
    Orbit {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "0")]
        state: CoinState,
    },
    /// Elements of D_n fixing a coin state
    Stabilizer {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "0")]
        state: CoinState,
    },
    /// States of D_n ⋆ {|0⟩, |1⟩} fixed by every listed move
    FixedSet {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', default_value = "I,F")]
        elems: Vec<PlanarIsometry>,
    },
    /// All winning strategies of Q in D_n, grouped by state path
    Enumerate {
        #[arg(long, default_value_t = 8)]
        n: u32,
        #[command(flatten)]
        game: GameArgs,
    },
    /// Groups the given strategies by the states they pass through
    Classify {
        #[arg(long, default_value = "0")]
        initial: CoinState,
        /// Comma separated moves, e.g. "H,H"; repeat for each strategy
        #[arg(long = "strategy", required = true)]
        strategies: Vec<String>,
    },
    /// Decides an extended game from its turn order
    Analyze {
        #[command(flatten)]
        game: GameArgs,
        /// Cross-check by exhaustive search in D_n
        #[arg(long)]
        brute_force: bool,
        #[arg(long, default_value_t = 8)]
        n: u32,
    },
    /// Random U(2) falsification runs
    SampleU2,
    /// Runs every verification check
    VerifyAll {
        /// Only run checks whose id starts with this prefix
        #[arg(long)]
        only: Vec<String>,
        /// Include elapsedMs in reports
        #[arg(long)]
        timing: bool,
    },
    /// Reproduces one of the summary tables (1, 2 or 3)
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
    },
}

#[derive(clap::Args)]
struct GameArgs {
    #[arg(long, default_value = "QPQ")]
    turns: String,
    #[arg(long, default_value = "0")]
    initial: CoinState,
    #[arg(long, default_value = "0")]
    target_q: CoinState,
}

impl GameArgs {
    fn spec(&self) -> Result<GameSpec, CliError> {
        Ok(GameSpec::with_turns(GameSpec::parse_turns(&self.turns)?, self.initial, self.target_q)?)
    }
}

fn run(cli: Cli) -> Result<(Output, OutputFormat), CliError> {
    let flags = Overrides {
        n_range: cli.n_range,
        max_rounds: cli.max_rounds,
        samples: cli.samples,
        seed: cli.seed,
        tolerance: cli.tolerance,
        output_format: cli.format,
    };
    let config = Config::resolve(cli.config.as_deref(), &flags)?;
    let out = match cli.command {
        Command::Orbit { n, state } => commands::orbit_cmd(&config, n, state)?,
        Command::Stabilizer { n, state } => commands::stabilizer_cmd(&config, n, state)?,
        Command::FixedSet { n, elems } => commands::fixed_set_cmd(&config, n, &elems)?,
        Command::Enumerate { n, game } => commands::enumerate_cmd(&config, n, &game.spec()?)?,
        Command::Classify { initial, strategies } => {
            let parsed = strategies
                .iter()
                .map(|s| Strategy::parse(Player::Q, s))
                .collect::<Result<Vec<_>, _>>()?;
            commands::classify_cmd(initial, &parsed)?
        }
        Command::Analyze { game, brute_force, n } => {
            commands::analyze_cmd(&config, &game.spec()?, brute_force.then_some(n))?
        }
        Command::SampleU2 => commands::sample_u2_cmd(&config)?,
        Command::VerifyAll { only, timing } => commands::verify_all_cmd(&config, &only, timing),
        Command::Table { id } => match id {
            1 => commands::table1()?,
            2 => commands::table2()?,
            _ => commands::table3()?,
        },
    };
    Ok((out, config.output_format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, format)) => {
            print!("{}", out.render(format));
            if out.failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                let err = CliError::Failed(out.failed);
                eprintln!("error: {err}");
                ExitCode::from(err.exit_code() as u8)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
