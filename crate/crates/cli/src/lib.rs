//! The `fftp-lab` command line: argument parsing, dispatch and JSON reports.

pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use fftp_core::alphabet::Letter;
use fftp_core::bounds::{second_order_bound, DrumConstants, IsoperimetricProfile};
use fftp_core::convexity::ac_constant;
use fftp_core::fellow::{async_distance, sync_distance};
use fftp_core::fftp::{
    certify_fftp_in, cone_census, min_fftp_constant_in, CertificateStatus, CertifyOptions,
    TravelMode, DEFAULT_WORD_CAP,
};
use fftp_core::filling::{check_filling_radius, fill_loop, Filling};
use fftp_core::{Ball, Error, GroupElement, GroupSpec, PathTrace, Word};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

const DEFAULT_BALL_CAP: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "fftp-lab",
    version,
    about = "Desk-scale FFTP, almost convexity and filling checks"
)]
#[command(arg_required_else_help = true)]
pub struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Group spec file (JSON).
    #[arg(long)]
    pub spec: PathBuf,
    /// Ball radius.
    #[arg(long)]
    pub radius: usize,
    /// Vertex cap for ball construction.
    #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
    pub cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build B(n) and report its size.
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        /// Write the ball as a DOT graph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List geodesic words to the element of a word.
    Geodesics {
        #[command(flatten)]
        group: GroupArgs,
        /// Word naming the target element.
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 1000)]
        max_count: usize,
    },
    /// Synchronous and asynchronous fellow-traveler distances of two paths from 1.
    FtDist {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        w: String,
        #[arg(long)]
        u: String,
        /// Also compute the monotone-matching distance.
        #[arg(long = "async")]
        asynchronous: bool,
    },
    /// Certify FFTP at constant k for words of length at most L.
    FftpCheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_len: usize,
        #[arg(long = "async")]
        asynchronous: bool,
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        word_cap: usize,
    },
    /// Smallest certified FFTP constant up to k-max.
    FftpMinK {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        k_max: usize,
        #[arg(long = "async")]
        asynchronous: bool,
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        word_cap: usize,
    },
    /// Truncated cone-type census.
    ConeTypes {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        depth: usize,
        /// Write the class transition graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Almost-convexity constants C(i, n) for n = 0..=radius.
    Ac {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        i: usize,
    },
    /// Fill a loop by iterated shortening.
    Fill {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        k: usize,
        /// Loop to fill.
        #[arg(
            long = "loop",
            conflicts_with = "random",
            required_unless_present = "random"
        )]
        loop_word: Option<String>,
        /// Fill this many seeded random loops instead.
        #[arg(long)]
        random: Option<usize>,
        /// Half-length bound for random loops.
        #[arg(long, default_value_t = 5)]
        half_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ball radius (default: loop length + 2k).
        #[arg(long)]
        radius: Option<usize>,
        /// Check corridor vertices against B(R + (2k+2)ρ(|w|)) with ρ(s) = s².
        #[arg(long)]
        check_radius: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        cap: usize,
    },
    /// Drum-construction constants.
    DrumConsts {
        #[arg(long)]
        k: u64,
        /// Defaults to the smallest integer above k/2.
        #[arg(long)]
        eps: Option<u64>,
        #[arg(long)]
        c: u64,
        /// `quad` or `table:FILE` (JSON array of integers).
        #[arg(long, default_value = "quad")]
        rho: String,
        /// Also evaluate the second-order sum for a sphere of this area.
        #[arg(long)]
        area: Option<u64>,
    },
}

/// Exit code with the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report<T: Serialize>(code: i32, body: &T) -> Self {
        let mut stdout = serde_json::to_string_pretty(body).expect("reports serialize");
        stdout.push('\n');
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, message: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

enum Failure {
    Usage(String),
    Engine(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Run = std::result::Result<Outcome, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return Outcome::error(EXIT_USAGE, "--threads must be at least 1");
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(Failure::Usage(m)) => Outcome::error(EXIT_USAGE, m),
        Err(Failure::Engine(e)) => Outcome::error(EXIT_ERROR, e.to_string()),
        Err(Failure::Io(m)) => Outcome::error(EXIT_ERROR, m),
    }
}

fn load_spec(path: &Path) -> std::result::Result<GroupSpec, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(GroupSpec::from_json(&text)?)
}

fn load_ball(group: &GroupArgs) -> std::result::Result<Ball, Failure> {
    let spec = load_spec(&group.spec)?;
    Ok(Ball::build_with_cap(&spec, group.radius, group.cap)?)
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn mode_of(asynchronous: bool) -> TravelMode {
    if asynchronous {
        TravelMode::Async
    } else {
        TravelMode::Sync
    }
}

fn mode_name(mode: TravelMode) -> String {
    match mode {
        TravelMode::Sync => "sync".into(),
        TravelMode::Async => "async".into(),
    }
}

/// Shortlex-least geodesic naming a ball element.
fn label(ball: &Ball, g: &GroupElement) -> std::result::Result<String, Failure> {
    let w = ball.enumerate_geodesics(g, 1)?.pop().unwrap_or_default();
    Ok(ball.spec().format_word(&w))
}

fn dispatch(command: Command) -> Run {
    match command {
        Command::Ball { group, dot } => {
            let ball = load_ball(&group)?;
            if let Some(path) = dot {
                write_file(&path, &ball.to_dot())?;
            }
            let sphere_sizes = (0..=ball.radius()).map(|m| ball.sphere(m).len()).collect();
            Ok(Outcome::report(
                EXIT_OK,
                &BallReport {
                    radius: ball.radius(),
                    vertices: ball.len(),
                    sphere_sizes,
                },
            ))
        }
        Command::Geodesics {
            group,
            to,
            max_count,
        } => {
            let ball = load_ball(&group)?;
            let spec = ball.spec();
            let target = spec.eval_word(&spec.parse_word(&to)?)?;
            let mut words = ball.enumerate_geodesics(&target, max_count.saturating_add(1))?;
            let truncated = words.len() > max_count;
            words.truncate(max_count);
            Ok(Outcome::report(
                EXIT_OK,
                &GeodesicsReport {
                    target: to,
                    length: ball.norm(&target)?,
                    geodesics: words.iter().map(|w| spec.format_word(w)).collect(),
                    truncated,
                },
            ))
        }
        Command::FtDist {
            group,
            w,
            u,
            asynchronous,
        } => {
            let ball = load_ball(&group)?;
            let spec = ball.spec();
            let tw = PathTrace::from_identity(spec, spec.parse_word(&w)?)?;
            let tu = PathTrace::from_identity(spec, spec.parse_word(&u)?)?;
            let sync = sync_distance(&ball, &tw, &tu)?;
            let asy = if asynchronous {
                Some(async_distance(&ball, &tw, &tu)?)
            } else {
                None
            };
            Ok(Outcome::report(
                EXIT_OK,
                &FtDistReport {
                    w: spec.format_word(tw.word()),
                    u: spec.format_word(tu.word()),
                    k_sync: sync.distance,
                    sync_witness_time: sync.witness_time,
                    k_async: asy.as_ref().map(|a| a.distance),
                    matching: asy.map(|a| a.matching),
                },
            ))
        }
        Command::FftpCheck {
            group,
            k,
            max_len,
            asynchronous,
            word_cap,
        } => {
            require_radius(group.radius, max_len, k)?;
            let ball = load_ball(&group)?;
            let options = CertifyOptions {
                mode: mode_of(asynchronous),
                word_cap,
            };
            let cert = certify_fftp_in(&ball, k, max_len, options)?;
            let spec = ball.spec();
            let (status, counterexample, reason) = match &cert.status {
                CertificateStatus::Certified => ("certified", None, None),
                CertificateStatus::Refuted { counterexample } => {
                    ("refuted", Some(spec.format_word(counterexample)), None)
                }
                CertificateStatus::Inconclusive { reason } => {
                    ("inconclusive", None, Some(reason.clone()))
                }
            };
            let code = if counterexample.is_some() {
                EXIT_REFUTED
            } else {
                EXIT_OK
            };
            Ok(Outcome::report(
                code,
                &CertificateReport {
                    k,
                    max_len,
                    radius: ball.radius(),
                    mode: mode_name(cert.mode),
                    status: status.into(),
                    counterexample,
                    reason,
                    words_checked: cert.words_checked,
                    words_skipped: cert.words_skipped,
                },
            ))
        }
        Command::FftpMinK {
            group,
            max_len,
            k_max,
            asynchronous,
            word_cap,
        } => {
            require_radius(group.radius, max_len, k_max)?;
            let ball = load_ball(&group)?;
            let mode = mode_of(asynchronous);
            let k = min_fftp_constant_in(&ball, max_len, k_max, CertifyOptions { mode, word_cap })?;
            Ok(Outcome::report(
                if k.is_some() { EXIT_OK } else { EXIT_REFUTED },
                &MinKReport {
                    max_len,
                    radius: ball.radius(),
                    k_max,
                    mode: mode_name(mode),
                    k,
                },
            ))
        }
        Command::ConeTypes { group, depth, dot } => {
            let ball = load_ball(&group)?;
            let census = cone_census(&ball, depth)?;
            if let Some(path) = dot {
                write_file(&path, &census.to_dot(ball.spec()))?;
            }
            let al = ball.spec().alphabet();
            let representatives = census
                .classes
                .iter()
                .map(|members| label(&ball, ball.element(members[0])))
                .collect::<std::result::Result<_, _>>()?;
            let transitions = census
                .transitions
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter_map(|(x, t)| t.map(|t| (al.name(Letter(x as u16)).to_string(), t)))
                        .collect::<BTreeMap<_, _>>()
                })
                .collect();
            Ok(Outcome::report(
                EXIT_OK,
                &ConeTypesReport {
                    depth,
                    radius: ball.radius(),
                    max_distance: census.max_distance,
                    classes: census.class_count(),
                    class_sizes: census.classes.iter().map(Vec::len).collect(),
                    representatives,
                    transitions,
                },
            ))
        }
        Command::Ac { group, i } => {
            if i == 0 || i > group.radius {
                return Err(Failure::Usage(format!(
                    "--i must lie in 1..={}",
                    group.radius
                )));
            }
            let ball = load_ball(&group)?;
            let mut values = Vec::new();
            for n in 0..=ball.radius() {
                let report = ac_constant(&ball, i, n)?;
                let witness_pair = match report.witness_pair {
                    Some((g, h)) => Some((
                        label(&ball, ball.element(g))?,
                        label(&ball, ball.element(h))?,
                    )),
                    None => None,
                };
                values.push(AcEntry {
                    n,
                    c_val: report.c_val,
                    witness_pair,
                });
            }
            Ok(Outcome::report(
                EXIT_OK,
                &AcRunReport {
                    i,
                    radius: ball.radius(),
                    values,
                },
            ))
        }
        Command::Fill {
            spec,
            k,
            loop_word,
            random,
            half_len,
            seed,
            radius,
            check_radius,
            cap,
        } => {
            let spec = load_spec(&spec)?;
            let loops = match (loop_word, random) {
                (Some(text), _) => vec![spec.parse_word(&text)?],
                (None, Some(count)) => random_loops(&spec, count, half_len, seed),
                (None, None) => return Err(Failure::Usage("give --loop or --random".into())),
            };
            let longest = loops.iter().map(Word::len).max().unwrap_or(0);
            let radius = radius.unwrap_or(longest + 2 * k);
            let needed = longest / 2 + k;
            if radius < needed {
                return Err(Failure::Usage(format!(
                    "--radius {radius} is below |w|/2 + k = {needed}"
                )));
            }
            let ball = Ball::build_with_cap(&spec, radius, cap)?;
            let mut reports = Vec::new();
            let mut code = EXIT_OK;
            for w in &loops {
                let filling = match fill_loop(&ball, k, w) {
                    Ok(f) => f,
                    Err(e @ Error::WitnessNotFound { .. }) => {
                        return Ok(Outcome::error(
                            EXIT_REFUTED,
                            format!("{}: {e}", spec.format_word(w)),
                        ))
                    }
                    Err(e) => return Err(e.into()),
                };
                let radius_check = match check_radius {
                    Some(r) => {
                        let holds = check_filling_radius(
                            &ball,
                            &filling,
                            r,
                            &IsoperimetricProfile::Quadratic,
                        )?;
                        if !holds {
                            code = EXIT_REFUTED;
                        }
                        Some(RadiusCheck { r, holds })
                    }
                    None => None,
                };
                reports.push(fill_report(&spec, &filling, radius_check));
            }
            Ok(match random {
                Some(_) => Outcome::report(
                    code,
                    &FillBatchReport {
                        seed,
                        fillings: reports,
                    },
                ),
                None => Outcome::report(code, &reports[0]),
            })
        }
        Command::DrumConsts {
            k,
            eps,
            c,
            rho,
            area,
        } => {
            let profile = parse_rho(&rho)?;
            let constants = DrumConstants::compute(k, eps, c, &profile)?;
            let second = match area {
                Some(n) => Some(second_order_bound(n, k, &constants.b)?.to_string()),
                None => None,
            };
            Ok(Outcome::report(
                EXIT_OK,
                &DrumConstsReport {
                    constants,
                    area,
                    second_order_bound: second,
                },
            ))
        }
    }
}

fn require_radius(radius: usize, max_len: usize, k: usize) -> std::result::Result<(), Failure> {
    if radius < max_len + k {
        return Err(Failure::Usage(format!(
            "--radius {radius} is below max-len + k = {}",
            max_len + k
        )));
    }
    Ok(())
}

fn fill_report(
    spec: &GroupSpec,
    filling: &Filling,
    radius_check: Option<RadiusCheck>,
) -> FillReport {
    FillReport {
        k: filling.k,
        ladder: filling.ladder.iter().map(|w| spec.format_word(w)).collect(),
        cells: filling.cells,
        max_perimeter: filling.max_perimeter,
        max_vertex_radius: filling.max_vertex_radius,
        radius_check,
    }
}

/// Loops `v·v'` where `v'` is the letterwise inverse of `v` in shuffled order; these
/// are loops whenever the generators commute.
pub fn random_loops(spec: &GroupSpec, count: usize, half_len: usize, seed: u64) -> Vec<Word> {
    let al = spec.alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let half = rng.gen_range(0..=half_len);
            let v: Vec<Letter> = (0..half)
                .map(|_| Letter(rng.gen_range(0..al.len() as u16)))
                .collect();
            let mut back: Vec<Letter> = v.iter().map(|&x| al.inverse(x)).collect();
            back.shuffle(&mut rng);
            Word(v.into_iter().chain(back).collect())
        })
        .collect()
}

fn parse_rho(text: &str) -> std::result::Result<IsoperimetricProfile, Failure> {
    if text == "quad" {
        return Ok(IsoperimetricProfile::Quadratic);
    }
    let Some(path) = text.strip_prefix("table:") else {
        return Err(Failure::Usage(format!(
            "--rho must be quad or table:FILE, got {text:?}"
        )));
    };
    let body =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {path}: {e}")))?;
    let raw: Vec<serde_json::Value> =
        serde_json::from_str(&body).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    let values = raw
        .iter()
        .map(|v| match v {
            serde_json::Value::Number(n) => n.as_u64().map(BigUint::from),
            serde_json::Value::String(s) => s.parse::<BigUint>().ok(),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Failure::Io(format!("{path}: entries must be nonnegative integers")))?;
    Ok(IsoperimetricProfile::Table(values))
}
