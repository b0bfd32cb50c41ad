//! Command-line front end.
//!
//! [`run`] parses arguments and returns the exit code together with the text
//! destined for stdout and stderr, so the binary stays a thin wrapper and the
//! commands can be exercised directly from tests.
//!
//! Exit codes: 0 ok, 2 invalid pair, 3 precondition violation, 4 undefined
//! query, 5 falsification found.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::lattice_path::{count_between, PathPair};
use crate::matroid::{self, ColineReport};
use crate::orient::{self, FalsificationArtifact, OrientError, SearchSpace};
use crate::set::ElementSet;
use crate::structure::{self, QscCase, QuiteSimpleColine, StructureError};
use crate::transversal::{self, build_lpm, StrongLpm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_PAIR: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_UNDEFINED: i32 = 4;
pub const EXIT_FALSIFIED: i32 = 5;

/// Environment variable overriding `--verify`.
pub const ORACLE_LEVEL_ENV: &str = "LPMKIT_ORACLE_LEVEL";
/// Ground sets above this size skip full-subset oracle checks.
pub const ORACLE_FULL_LIMIT: usize = 14;

#[derive(Debug, Parser)]
#[command(name = "lpmkit", version, about = "Lattice path matroid toolkit")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for representation synthesis.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cross-check fast results against brute-force oracles.
    #[arg(long, value_enum, global = true, default_value_t = Level::Fast)]
    pub verify: Level,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Fast,
    Oracle,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Lower path, a word over {N, E}.
    #[arg(long)]
    pub p: String,
    /// Upper path, a word over {N, E}.
    #[arg(long)]
    pub q: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the bases of M[p, q], one per lattice path between p and q.
    Bases(PairArgs),
    /// Loops, coloops, parallel pairs, the Western coline and a quite simple coline.
    Structure {
        #[command(flatten)]
        pair: PairArgs,
        /// Fail with exit code 3 unless the matroid is simple of rank >= 2.
        #[arg(long)]
        require_simple: bool,
    },
    /// Emit a nowhere-zero coflow with entries in {±1, ±2}.
    Certify(PairArgs),
    /// Check every simple minor for a {0, ±1} coflow with one or two nonzeros.
    Gsp {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = orient::DEFAULT_GSP_BUDGET)]
        budget: usize,
    },
    /// Presentation, JSON dump and a text picture of the corridor.
    Dump(PairArgs),
    /// Check the quite simple coline and 3-coflow claims on every pair up to a size.
    Sweep {
        #[arg(long)]
        nmax: usize,
        /// Largest ground set on which the coflow certificate is also checked.
        #[arg(long, default_value_t = 8)]
        budget: usize,
        /// Negate the quite-simple test (harness self-test).
        #[arg(long, hide = true)]
        inject_mutation: bool,
    },
}

/// Resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub seed: u64,
    pub level: Level,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text.trim_end())
            };
        }
    };
    let level = match std::env::var(ORACLE_LEVEL_ENV).ok().as_deref() {
        Some("oracle") => Level::Oracle,
        Some("fast") => Level::Fast,
        _ => cli.verify,
    };
    let config = RunConfig {
        format: cli.format,
        seed: cli.seed,
        level,
    };
    match &cli.command {
        Command::Bases(pair) => with_lpm(pair, |m| cmd_bases(&config, m)),
        Command::Structure {
            pair,
            require_simple,
        } => with_lpm(pair, |m| cmd_structure(&config, m, *require_simple)),
        Command::Certify(pair) => with_lpm(pair, |m| cmd_certify(&config, m)),
        Command::Gsp { pair, budget } => with_lpm(pair, |m| cmd_gsp(&config, m, *budget)),
        Command::Dump(pair) => with_lpm(pair, |m| cmd_dump(&config, m)),
        Command::Sweep {
            nmax,
            budget,
            inject_mutation,
        } => cmd_sweep(&config, *nmax, *budget, *inject_mutation),
    }
}

fn with_lpm(args: &PairArgs, f: impl FnOnce(&StrongLpm) -> Outcome) -> Outcome {
    match PathPair::parse(&args.p, &args.q)
        .map_err(transversal::LpmError::from)
        .and_then(build_lpm)
    {
        Ok(m) => f(&m),
        Err(e) => Outcome::fail(EXIT_INVALID_PAIR, format!("invalid pair: {e}")),
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

pub fn cmd_bases(config: &RunConfig, m: &StrongLpm) -> Outcome {
    let bases = transversal::bases(m);
    let count = match count_between(m.pair()) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(EXIT_PRECONDITION, e.to_string()),
    };
    if config.level == Level::Oracle && m.n() <= ORACLE_FULL_LIMIT {
        let mut sorted = bases.clone();
        sorted.sort();
        if sorted != matroid::bases(m) || count != bases.len() as u128 {
            return Outcome::fail(
                EXIT_FALSIFIED,
                "path enumeration disagrees with the matching oracle",
            );
        }
    }
    let out = match config.format {
        Format::Json => json_line(&json!({
            "p": m.p().to_string(),
            "q": m.q().to_string(),
            "count": count as u64,
            "bases": bases,
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "p = {}\nq = {}\n|P[p,q]| = {count}", m.p(), m.q());
            for b in &bases {
                let path = crate::lattice_path::base_to_path(*b, m.n()).expect("in range");
                let _ = writeln!(s, "{path}  {b}");
            }
            s
        }
    };
    Outcome::ok(out)
}

#[derive(Debug, Serialize)]
struct StructureReport {
    n: usize,
    rank: usize,
    p: String,
    q: String,
    presentation: Vec<[usize; 2]>,
    loops: ElementSet,
    coloops: ElementSet,
    parallel_pairs: Vec<(usize, usize)>,
    simple: bool,
    western_coline: Option<structure::WesternColineJson>,
    quite_simple_coline: Option<QuiteSimpleColine>,
    quite_simple_report: Option<ColineReport>,
}

pub fn cmd_structure(config: &RunConfig, m: &StrongLpm, require_simple: bool) -> Outcome {
    let loops: ElementSet = (1..=m.n())
        .filter(|&j| structure::is_loop_fast(m, j).unwrap_or(false))
        .collect();
    let mut parallel_pairs = Vec::new();
    for j in 1..=m.n() {
        for k in j + 1..=m.n() {
            if structure::is_parallel_fast(m, j, k).unwrap_or(false) {
                parallel_pairs.push((j, k));
            }
        }
    }
    let simple = loops.is_empty() && parallel_pairs.is_empty();
    if require_simple && (!simple || m.m() < 2) {
        return Outcome::fail(
            EXIT_PRECONDITION,
            format!(
                "precondition violated: need a simple matroid of rank >= 2 (loops {loops}, {} parallel pairs, rank {})",
                parallel_pairs.len(),
                m.m()
            ),
        );
    }
    let western = structure::western_coline(m).ok();
    let qsc = match structure::quite_simple_coline(m) {
        Ok(q) => Some(q),
        Err(
            StructureError::HasLoop(_)
            | StructureError::HasParallel(..)
            | StructureError::RankTooSmall(_),
        ) => None,
        Err(e) => {
            return Outcome::fail(
                EXIT_FALSIFIED,
                format!("quite simple coline construction failed: {e}"),
            )
        }
    };
    let qsc_report = match &qsc {
        Some(q) => match matroid::coline_report(m, q.coline) {
            Ok(r) if r.quite_simple => Some(r),
            Ok(_) | Err(_) => {
                return Outcome::fail(
                    EXIT_FALSIFIED,
                    format!(
                        "{} is not a quite simple coline of M[{}, {}]",
                        q.coline,
                        m.p(),
                        m.q()
                    ),
                )
            }
        },
        None => None,
    };
    let coloops = matroid::coloops(m);
    if config.level == Level::Oracle && m.n() <= ORACLE_FULL_LIMIT {
        let oracle_pairs = matroid::parallel_pairs(m);
        let mismatch = matroid::loops(m) != loops
            || (loops.is_empty() && oracle_pairs != parallel_pairs)
            || western
                .as_ref()
                .is_some_and(|w| matroid::coline_report(m, w.coline).ok() != Some(w.report()));
        if mismatch {
            return Outcome::fail(
                EXIT_FALSIFIED,
                "fast structure disagrees with the rank oracle",
            );
        }
    }
    let report = StructureReport {
        n: m.n(),
        rank: m.m(),
        p: m.p().to_string(),
        q: m.q().to_string(),
        presentation: m.presentation().iter().map(|a| [a.lo, a.hi]).collect(),
        loops,
        coloops,
        parallel_pairs,
        simple,
        western_coline: western.as_ref().map(|w| w.to_json()),
        quite_simple_coline: qsc,
        quite_simple_report: qsc_report,
    };
    let out = match config.format {
        Format::Json => json_line(&report),
        Format::Text => structure_text(&report),
    };
    Outcome::ok(out)
}

fn structure_text(r: &StructureReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "M[{}, {}]  n = {}  rank = {}", r.p, r.q, r.n, r.rank);
    let levels: Vec<String> = r
        .presentation
        .iter()
        .enumerate()
        .map(|(i, [lo, hi])| format!("A_{} = [{lo},{hi}]", i + 1))
        .collect();
    let _ = writeln!(s, "presentation: {}", levels.join(", "));
    let _ = writeln!(s, "loops: {}", r.loops);
    let _ = writeln!(s, "coloops: {}", r.coloops);
    let pairs: Vec<String> = r
        .parallel_pairs
        .iter()
        .map(|(j, k)| format!("({j},{k})"))
        .collect();
    let _ = writeln!(
        s,
        "parallel pairs: {}",
        if pairs.is_empty() {
            "none".into()
        } else {
            pairs.join(" ")
        }
    );
    let _ = writeln!(s, "simple: {}", r.simple);
    match &r.western_coline {
        Some(w) => {
            let _ = writeln!(
                s,
                "western coline: W = {}  (j1 = {}, j2 = {})",
                w.coline, w.j1, w.j2
            );
            write_copoints(&mut s, &w.copoints);
        }
        None => {
            let _ = writeln!(s, "western coline: n/a");
        }
    }
    match (&r.quite_simple_coline, &r.quite_simple_report) {
        (Some(q), Some(rep)) => {
            let _ = writeln!(
                s,
                "quite simple coline: {}  ({})  quite_simple = {}",
                q.coline,
                case_text(q.case),
                rep.quite_simple
            );
            write_copoints(&mut s, &rep.copoints);
        }
        _ => {
            let _ = writeln!(s, "quite simple coline: n/a");
        }
    }
    s
}

fn case_text(case: QscCase) -> String {
    match case {
        QscCase::Western => "western".into(),
        QscCase::TwoColoops { e1 } => format!("two coloops, e1 = {e1}"),
        QscCase::ContractLast { depth } => format!("after contracting {depth} final coloop(s)"),
    }
}

fn write_copoints(s: &mut String, copoints: &[matroid::CopointOnColine]) {
    for c in copoints {
        let kind = match c.kind {
            matroid::CopointKind::Simple => "simple",
            matroid::CopointKind::Multiple => "multiple",
        };
        let _ = writeln!(s, "  copoint {}  {kind}", c.set);
    }
}

fn orient_failure(e: OrientError) -> Outcome {
    match e {
        OrientError::HasLoop(l) => Outcome::fail(
            EXIT_UNDEFINED,
            format!("chromatic number undefined on loops (loops {l})"),
        ),
        OrientError::Falsified(artifact) => Outcome {
            code: EXIT_FALSIFIED,
            stdout: json_line(&artifact),
            stderr: format!("falsification: {}\n", artifact.detail),
        },
        OrientError::OverBudget { .. } => Outcome::fail(EXIT_PRECONDITION, e.to_string()),
        other => Outcome::fail(EXIT_FALSIFIED, other.to_string()),
    }
}

pub fn cmd_certify(config: &RunConfig, m: &StrongLpm) -> Outcome {
    let loops = matroid::loops(m);
    if !loops.is_empty() {
        return orient_failure(OrientError::HasLoop(loops));
    }
    let rep = match orient::synthesize_representation(m, config.seed) {
        Ok(r) => r,
        Err(e) => return orient_failure(e),
    };
    let cert = match orient::nowhere_zero_3_coflow(m, &rep) {
        Ok(c) => c,
        Err(e) => return orient_failure(e),
    };
    if !cert.verified {
        return Outcome::fail(EXIT_FALSIFIED, "certificate failed re-verification");
    }
    let out = match config.format {
        Format::Json => json_line(&cert),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "M[{}, {}]  representation seed {}",
                m.p(),
                m.q(),
                rep.seed().unwrap_or(config.seed)
            );
            let _ = writeln!(s, "F = {:?}", cert.values);
            let _ = writeln!(s, "coefficients = {:?}", cert.coefficients);
            let _ = writeln!(
                s,
                "max |F(e)| = {}  verified = {}",
                cert.max_abs, cert.verified
            );
            s
        }
    };
    Outcome::ok(out)
}

pub fn cmd_gsp(config: &RunConfig, m: &StrongLpm, budget: usize) -> Outcome {
    let rep = match orient::synthesize_representation(m, config.seed) {
        Ok(r) => r,
        Err(e) => return orient_failure(e),
    };
    let report = match orient::gsp_check(m, &rep, budget) {
        Ok(r) => r,
        Err(e) => return orient_failure(e),
    };
    let out = match config.format {
        Format::Json => json_line(&report),
        Format::Text => format!(
            "M[{}, {}]: {} nonempty simple minors checked, {} empty minors skipped, 0 failures\n",
            m.p(),
            m.q(),
            report.minors_checked,
            report.skipped_empty
        ),
    };
    Outcome::ok(out)
}

pub fn cmd_dump(config: &RunConfig, m: &StrongLpm) -> Outcome {
    let out = match config.format {
        Format::Json => json_line(&m.to_json()),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "M[{}, {}]", m.p(), m.q());
            let _ = writeln!(s, "step  p  q  corridor");
            for k in 1..=m.n() {
                let (lo, hi) = (m.p().height(k), m.q().height(k));
                let bar: String = (0..=m.m())
                    .map(|h| if (lo..=hi).contains(&h) { '#' } else { '.' })
                    .collect();
                let _ = writeln!(
                    s,
                    "{k:>4}  {}  {}  {bar}  [{lo},{hi}]",
                    m.p().step(k).symbol(),
                    m.q().step(k).symbol()
                );
            }
            for (i, a) in m.presentation().iter().enumerate() {
                let _ = writeln!(s, "A_{} = {}", i + 1, a.to_set());
            }
            s
        }
    };
    Outcome::ok(out)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepSummary {
    pub nmax: usize,
    pub instances: usize,
    pub simple_rank_two: usize,
    pub quite_simple_checked: usize,
    pub coflow_checked: usize,
    pub failures: Vec<FalsificationArtifact>,
}

/// Run the sweep checks on one instance, appending any failures.
pub fn sweep_instance(
    m: &StrongLpm,
    seed: u64,
    coflow_budget: usize,
    inject_mutation: bool,
    summary: &mut SweepSummary,
) {
    summary.instances += 1;
    if m.m() < 2 || !structure::is_simple_fast(m) {
        return;
    }
    summary.simple_rank_two += 1;
    let qsc = structure::quite_simple_coline(m).ok().and_then(|q| {
        matroid::coline_report(m, q.coline)
            .ok()
            .map(|r| (q.coline, r))
    });
    summary.quite_simple_checked += 1;
    let passes = qsc
        .as_ref()
        .is_some_and(|(_, r)| r.quite_simple != inject_mutation);
    if !passes {
        summary.failures.push(FalsificationArtifact {
            check: "quite_simple_coline".into(),
            instance: Some(m.to_json()),
            seed: None,
            matrix: Vec::new(),
            detail: format!(
                "no quite simple coline confirmed for M[{}, {}]",
                m.p(),
                m.q()
            ),
            search_space: SearchSpace::QuiteSimpleColine {
                coline: qsc.map(|(w, _)| w),
            },
        });
    }
    if m.n() > coflow_budget {
        return;
    }
    summary.coflow_checked += 1;
    let outcome = orient::synthesize_representation(m, seed)
        .and_then(|rep| orient::nowhere_zero_3_coflow(m, &rep).map(|c| (rep, c)));
    match outcome {
        Ok((_, cert)) if cert.verified => {}
        Ok((rep, _)) => summary.failures.push(FalsificationArtifact::new(
            "nowhere_zero_3_coflow",
            Some(m),
            &rep,
            "certificate failed re-verification".into(),
            SearchSpace::Box {
                bound: 2,
                lattice_rank: m.m(),
                pivots: Vec::new(),
            },
        )),
        Err(OrientError::Falsified(artifact)) => summary.failures.push(*artifact),
        Err(e) => summary.failures.push(FalsificationArtifact {
            check: "nowhere_zero_3_coflow".into(),
            instance: Some(m.to_json()),
            seed: Some(seed),
            matrix: Vec::new(),
            detail: e.to_string(),
            search_space: SearchSpace::Box {
                bound: 2,
                lattice_rank: m.m(),
                pivots: Vec::new(),
            },
        }),
    }
}

pub fn sweep(nmax: usize, seed: u64, coflow_budget: usize, inject_mutation: bool) -> SweepSummary {
    let mut summary = SweepSummary {
        nmax,
        ..Default::default()
    };
    for n in 1..=nmax {
        for pair in PathPair::all_of_length(n) {
            let m = build_lpm(pair).expect("n <= 64");
            sweep_instance(&m, seed, coflow_budget, inject_mutation, &mut summary);
        }
    }
    summary
}

pub fn cmd_sweep(config: &RunConfig, nmax: usize, budget: usize, inject_mutation: bool) -> Outcome {
    if nmax > crate::set::MAX_ELEMENTS {
        return Outcome::fail(EXIT_PRECONDITION, format!("nmax {nmax} exceeds 64"));
    }
    let summary = sweep(nmax, config.seed, budget, inject_mutation);
    let stdout = match config.format {
        Format::Json => json_line(&summary),
        Format::Text => {
            let mut s = format!(
                "sweep n <= {}: {} instances, {} simple of rank >= 2, {} quite simple colines checked, {} coflow certificates checked\n{} failures\n",
                summary.nmax,
                summary.instances,
                summary.simple_rank_two,
                summary.quite_simple_checked,
                summary.coflow_checked,
                summary.failures.len()
            );
            for f in &summary.failures {
                s.push_str(&json_line(f));
            }
            s
        }
    };
    Outcome {
        code: if summary.failures.is_empty() {
            EXIT_OK
        } else {
            EXIT_FALSIFIED
        },
        stdout,
        stderr: String::new(),
    }
}
