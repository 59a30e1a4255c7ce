//! Subcommand definitions and dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use celebrity::analysis::{classify, price_report, verify_theorems, AnalysisError, CheckStatus};
use celebrity::bestresponse::{best_response, build_reduction, min_dominating_set, Method, SolverError};
use celebrity::equilibrium::{
    enumerate_ne, is_ne, run_dynamics, DynamicsOutcome, EnumerationOptions, EquilibriumError, EquilibriumSet,
    NeCertificate, Schedule,
};
use celebrity::game::{player_cost, social_cost, CelebrityGame, StrategyProfile};
use celebrity::Rational;
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::format::{
    enumerate_csv, parse_graph, parse_instance, parse_profile, poa_csv, verify_csv, write_instance, write_profile,
    FormatError,
};
use crate::generate::{random_game, GenError, GenSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "celebrity", version, about = "Analyse celebrity network creation games")]
pub struct Cli {
    /// Maximum number of worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Beta1,
    Greedy,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exact => Method::Exact,
            MethodArg::Beta1 => Method::Beta1,
            MethodArg::Greedy => Method::Greedy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    Roundrobin,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Rational,
        #[arg(long)]
        beta: u32,
        #[arg(long)]
        wmin: Rational,
        #[arg(long)]
        wmax: Rational,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Cost of every player (or one) and the social cost.
    Eval {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        player: Option<usize>,
    },
    /// Best response of one player.
    BestResponse {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        player: usize,
        #[arg(long, value_enum, default_value = "exact")]
        method: MethodArg,
    },
    /// Decide whether a profile is a Nash equilibrium.
    CheckNe {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        profile: PathBuf,
    },
    /// Enumerate all equilibria (n <= 5, or 6 with --allow-n6).
    Enumerate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        allow_n6: bool,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Optimum, best and worst equilibrium cost, PoS and PoA.
    Poa {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        allow_n6: bool,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Run best-response dynamics.
    Dynamics {
        #[arg(long)]
        instance: PathBuf,
        /// Starting profile (default: nobody buys anything).
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "roundrobin")]
        schedule: ScheduleArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
        #[arg(long, value_enum, default_value = "exact")]
        method: MethodArg,
    },
    /// Star-celebrity / unique-empty classification.
    Classify {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Enumerate equilibria and run checks C1..C20.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        allow_n6: bool,
        /// Self-test: add a profile in which players 0 and 1 buy each other.
        #[arg(long)]
        inject_fault: bool,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Build the dominating-set reduction for a graph and solve it.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Equilibrium(#[from] EquilibriumError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{0}")]
    Usage(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_instance(path: &Path) -> Result<CelebrityGame, CliError> {
    parse_instance(&read(path)?).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

fn load_profile(path: &Path, n: usize) -> Result<StrategyProfile, CliError> {
    parse_profile(&read(path)?, n).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

fn check_player(game: &CelebrityGame, u: usize) -> Result<(), CliError> {
    if u >= game.n() {
        return Err(CliError::Usage(format!("player {u} outside 0..{}", game.n())));
    }
    Ok(())
}

/// Report text and exit code of a successful command.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

/// Writes `csv` to `output` and returns `summary`, or returns `csv` itself
/// when there is no output file.
fn csv_or_file(csv: String, output: Option<&Path>, summary: String) -> Result<String, CliError> {
    match output {
        Some(path) => {
            write_file(path, &csv)?;
            Ok(summary)
        }
        None => Ok(csv),
    }
}

fn enumerate(game: &CelebrityGame, allow_n6: bool) -> Result<EquilibriumSet, CliError> {
    Ok(enumerate_ne(game, EnumerationOptions { allow_n6 })?)
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Gen {
            n,
            alpha,
            beta,
            wmin,
            wmax,
            seed,
            output,
        } => {
            let game = random_game(&GenSpec {
                n,
                beta,
                alpha,
                weight_min: wmin,
                weight_max: wmax,
                seed,
            })?;
            let text = write_instance(&game);
            match output {
                Some(path) => {
                    write_file(&path, &text)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Eval {
            instance,
            profile,
            player,
        } => {
            let game = load_instance(&instance)?;
            let profile = load_profile(&profile, game.n())?;
            let players: Vec<usize> = match player {
                Some(u) => {
                    check_player(&game, u)?;
                    vec![u]
                }
                None => (0..game.n()).collect(),
            };
            let mut text = String::new();
            for u in players {
                let c = player_cost(&game, &profile, u);
                writeln!(
                    text,
                    "player {u}: links {} distance {} total {}",
                    c.link_cost, c.distance_penalty, c.total
                )
                .unwrap();
            }
            let graph = profile.outcome_graph();
            writeln!(text, "edges {}", graph.edge_count()).unwrap();
            writeln!(text, "social_cost {}", social_cost(&game, &graph)).unwrap();
            if !profile.is_orientation() {
                writeln!(text, "note: some links are bought twice").unwrap();
            }
            Ok(Outcome::ok(text))
        }
        Command::BestResponse {
            instance,
            profile,
            player,
            method,
        } => {
            let game = load_instance(&instance)?;
            let profile = load_profile(&profile, game.n())?;
            check_player(&game, player)?;
            let current = player_cost(&game, &profile, player).total;
            let br = best_response(&game, &profile, player, method.into())?;
            Ok(Outcome::ok(format!(
                "method {}\nplayer {player}\ncurrent {} cost {current}\nbest {} cost {}\n",
                br.method,
                profile.strategy(player),
                br.strategy,
                br.cost
            )))
        }
        Command::CheckNe { instance, profile } => {
            let game = load_instance(&instance)?;
            let profile = load_profile(&profile, game.n())?;
            let text = match is_ne(&game, &profile)? {
                NeCertificate::IsNe => "NE\n".to_string(),
                NeCertificate::NotNe(d) => format!(
                    "not NE: player {} deviates from {} to {} with delta {}\n",
                    d.player,
                    profile.strategy(d.player),
                    d.strategy,
                    d.delta
                ),
            };
            Ok(Outcome::ok(text))
        }
        Command::Enumerate {
            instance,
            allow_n6,
            output,
        } => {
            let game = load_instance(&instance)?;
            let eq = enumerate(&game, allow_n6)?;
            let summary = format!("profiles {}\ngraphs {}\n", eq.profiles.len(), eq.graphs.len());
            Ok(Outcome::ok(csv_or_file(enumerate_csv(&eq), output.as_deref(), summary)?))
        }
        Command::Poa {
            instance,
            allow_n6,
            output,
        } => {
            let game = load_instance(&instance)?;
            let eq = enumerate(&game, allow_n6)?;
            let report = price_report(&game, &eq)?;
            let summary = format!("pos {}\npoa {}\n", report.pos, report.poa);
            Ok(Outcome::ok(csv_or_file(poa_csv(&report), output.as_deref(), summary)?))
        }
        Command::Dynamics {
            instance,
            profile,
            schedule,
            seed,
            max_rounds,
            method,
        } => {
            let game = load_instance(&instance)?;
            let initial = match profile {
                Some(path) => load_profile(&path, game.n())?,
                None => StrategyProfile::empty(game.n()),
            };
            let schedule = match schedule {
                ScheduleArg::Roundrobin => Schedule::round_robin(game.n()),
                ScheduleArg::Random => Schedule::Random { seed },
            };
            let trace = run_dynamics(&game, &initial, &schedule, max_rounds, method.into())?;
            let mut text = format!("schedule {}\nmethod {}\n", trace.schedule, Method::from(method));
            for m in &trace.moves {
                writeln!(
                    text,
                    "round {} player {}: {} -> {} delta {}",
                    m.round, m.player, m.old, m.new, m.delta
                )
                .unwrap();
            }
            let label = match &trace.outcome {
                DynamicsOutcome::Converged(_) => "converged",
                DynamicsOutcome::LocalOptimum(_) => "local_optimum",
                DynamicsOutcome::MaxRoundsReached(_) => "max_rounds_reached",
            };
            let final_profile = trace.outcome.profile();
            writeln!(text, "outcome {label} after {} rounds", trace.rounds).unwrap();
            writeln!(
                text,
                "social_cost {}",
                social_cost(&game, &final_profile.outcome_graph())
            )
            .unwrap();
            text.push_str("profile\n");
            text.push_str(&write_profile(final_profile));
            Ok(Outcome::ok(text))
        }
        Command::Classify { instance } => {
            let game = load_instance(&instance)?;
            let c = classify(&game);
            Ok(Outcome::ok(format!(
                "star_celebrity {}\nunique_empty {}\ncelebrities {}\nhigh_weight_players {}\n",
                c.is_star_celebrity, c.in_unique, c.celebrities, c.high_weight_players
            )))
        }
        Command::Verify {
            instance,
            allow_n6,
            inject_fault,
            output,
        } => {
            let game = load_instance(&instance)?;
            let mut eq = enumerate(&game, allow_n6)?;
            if inject_fault {
                let mut lists = vec![Vec::new(); game.n()];
                lists[0].push(1);
                lists[1].push(0);
                let faulty = StrategyProfile::from_lists(&lists).expect("valid profile");
                let mut profiles = eq.profiles;
                profiles.push(faulty);
                eq = EquilibriumSet::from_profiles(game.clone(), profiles, true);
            }
            let report = verify_theorems(&game, &eq)?;
            let mut summary = String::new();
            for r in &report.records {
                write!(summary, "{} {}", r.id, r.status).unwrap();
                if let Some(w) = &r.witness {
                    write!(summary, " {w}").unwrap();
                }
                summary.push('\n');
            }
            for m in &report.measurements {
                writeln!(summary, "measurement {} {}", m.name, m.value).unwrap();
            }
            let code = if report.records.iter().any(|r| r.status == CheckStatus::Fail) {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            };
            let text = match output {
                Some(path) => {
                    write_file(&path, &verify_csv(&report))?;
                    summary
                }
                None => verify_csv(&report),
            };
            Ok(Outcome { text, code })
        }
        Command::Reduce { graph } => {
            let g = parse_graph(&read(&graph)?).map_err(|source| CliError::Format { path: graph, source })?;
            let red = build_reduction(&g);
            let br = best_response(&red.game, &red.profile, red.target_player, Method::Exact)?;
            let dominating = min_dominating_set(&g)?;
            let mut text = String::from("instance\n");
            text.push_str(&write_instance(&red.game));
            text.push_str("profile\n");
            text.push_str(&write_profile(&red.profile));
            writeln!(text, "target {}", red.target_player).unwrap();
            writeln!(text, "best_response {} cost {}", br.strategy, br.cost).unwrap();
            writeln!(text, "min_dominating_set {} size {}", dominating, dominating.len()).unwrap();
            Ok(Outcome::ok(text))
        }
    }
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit code: 0 on success, 1 when a check fails, 2 on usage, input, or
/// size errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            let _ = writeln!(err, "error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(jobs);
    }
    let result = match builder.build() {
        Ok(pool) => pool.install(|| execute(cli.command)),
        Err(e) => Err(CliError::Usage(format!("cannot start worker pool: {e}"))),
    };
    match result {
        Ok(outcome) => {
            if out.write_all(outcome.text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
