//! Command-line front end: exact coefficient tables, transforms and their
//! inverses, norms, membership probes, basis vectors, dual tests, and
//! matrix-class verdicts, with json/csv/pretty output.
//!
//! Exit codes: 0 satisfied/ok, 1 violated or error, 2 inconclusive.

mod render;
mod selfcheck;
mod source;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fracseq::*;
use num_rational::BigRational;

use render::Format;
use source::{load_weights, resolve_mode, MatrixSource, SeqSource};

#[derive(Parser)]
#[command(
    name = "fracseq",
    version,
    about = "Exact fractional difference operators, sequence-space transforms, duals, and matrix classes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rational,
    Float,
}

impl ModeArg {
    fn to_mode(self) -> Mode {
        match self {
            ModeArg::Rational => Mode::Rational,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Pretty,
}

impl FormatArg {
    fn to_format(self) -> Format {
        match self {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Pretty => Format::Pretty,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Difference order: "p/q" or an integer (rational mode), or a
    /// decimal like "0.35" (float mode)
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Scalar mode; defaults to rational unless the order is a decimal
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Truncation length
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Output format
    #[arg(long, value_enum, default_value = "pretty")]
    format: FormatArg,
    /// Weight sequence source (every entry must be nonzero)
    #[arg(long, default_value = "family:constant:1")]
    u: String,
}

#[derive(Args)]
struct ProbeArgs {
    /// Probe window length
    #[arg(long, default_value_t = 8)]
    window: usize,
    /// Probe tolerance
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Exhaustive column-subset cap for the absolute-summability test
    #[arg(long, default_value_t = 16)]
    cap: usize,
}

impl ProbeArgs {
    fn build(&self, n: usize) -> Result<Probe> {
        if self.cap > 20 {
            bail!("subset cap must be at most 20");
        }
        if n < 2 * self.window {
            bail!("truncation {n} is below twice the window {}", self.window);
        }
        Ok(Probe::new(self.window, self.tol)?.with_subset_cap(self.cap))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the coefficient table of one order
    Coeffs {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, value_enum, default_value = "pretty")]
        format: FormatArg,
    },
    /// Apply the weighted difference partial-sum transform to a sequence
    Transform {
        #[command(flatten)]
        common: CommonArgs,
        /// Input sequence source
        #[arg(long)]
        x: String,
    },
    /// Apply the exact inverse transform to a sequence
    Invert {
        #[command(flatten)]
        common: CommonArgs,
        /// Input sequence source
        #[arg(long)]
        x: String,
    },
    /// Sup norm of the transform over the prefix (a lower bound)
    Norm {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        x: String,
    },
    /// Probe membership of a sequence in a domain space
    Member {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        x: String,
        /// Target space: c0 or c
        #[arg(long)]
        space: String,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Basis vector of the domain space (preimage of a unit vector)
    Basis {
        #[command(flatten)]
        common: CommonArgs,
        /// Basis index
        #[arg(long, conflicts_with = "limit")]
        j: Option<usize>,
        /// The extra direction for the convergent-target space
        #[arg(long)]
        limit: bool,
    },
    /// Test membership of a sequence in the dual of a domain space
    Betadual {
        #[command(flatten)]
        common: CommonArgs,
        /// Dual candidate sequence source
        #[arg(long)]
        a: String,
        /// Source space: c0 or c
        #[arg(long)]
        space: String,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Classify a matrix mapping between a domain space and a classical one
    Classify {
        #[command(flatten)]
        common: CommonArgs,
        /// Matrix source
        #[arg(long)]
        matrix: String,
        /// Direction: from (domain source) or into (domain target)
        #[arg(long)]
        direction: String,
        /// Source space (from: c0|c, into: c0|c|linf|l1)
        #[arg(long)]
        source: String,
        /// Target space (from: c0|c|linf|l1, into: c0|c)
        #[arg(long)]
        target: String,
        /// Evaluate one published rule only (into direction)
        #[arg(long)]
        rule: Option<String>,
        /// Cross-check the verdict against this many sampled members
        #[arg(long)]
        crosscheck: Option<usize>,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Run the built-in exact identity suite
    Selfcheck {
        /// Seed for the randomized checks (FRACSEQ_SEED otherwise)
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn env_seed() -> u64 {
    std::env::var("FRACSEQ_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn parse_space_tag(s: &str) -> Result<SpaceTag> {
    match s {
        "c0" => Ok(SpaceTag::Null),
        "c" => Ok(SpaceTag::Convergent),
        other => bail!("domain space must be c0 or c, got {other:?}"),
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes, like other unix tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Coeffs {
            alpha,
            mode,
            n,
            format,
        } => cmd_coeffs(&alpha, mode, n, format.to_format()),
        Cmd::Transform { common, x } => dispatch_seq_op(&common, &x, SeqOp::Transform),
        Cmd::Invert { common, x } => dispatch_seq_op(&common, &x, SeqOp::Invert),
        Cmd::Norm { common, x } => dispatch_seq_op(&common, &x, SeqOp::Norm),
        Cmd::Member {
            common,
            x,
            space,
            probe,
        } => cmd_member(&common, &x, &space, &probe),
        Cmd::Basis { common, j, limit } => cmd_basis(&common, j, limit),
        Cmd::Betadual {
            common,
            a,
            space,
            probe,
        } => cmd_betadual(&common, &a, &space, &probe),
        Cmd::Classify {
            common,
            matrix,
            direction,
            source,
            target,
            rule,
            crosscheck,
            probe,
        } => cmd_classify(
            &common, &matrix, &direction, &source, &target, rule, crosscheck, &probe,
        ),
        Cmd::Selfcheck { seed } => {
            let failures = selfcheck::run(seed.unwrap_or_else(env_seed));
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

fn cmd_coeffs(alpha: &str, mode: Option<ModeArg>, n: usize, format: Format) -> Result<u8> {
    if n == 0 {
        bail!("table length must be positive");
    }
    match resolve_mode(alpha, mode.map(ModeArg::to_mode)) {
        Mode::Rational => {
            let a = BigRational::parse_str(alpha)?;
            let table = coeff_table(&a, n);
            render::print_seq(&Seq::new(table.entries().to_vec()), format)?;
        }
        Mode::Float => {
            let a = f64::parse_str(alpha)?;
            let table = coeff_table(&a, n);
            render::print_seq(&Seq::new(table.entries().to_vec()), format)?;
        }
    }
    Ok(0)
}

enum SeqOp {
    Transform,
    Invert,
    Norm,
}

fn dispatch_seq_op(common: &CommonArgs, x: &str, op: SeqOp) -> Result<u8> {
    match resolve_mode(&common.alpha, common.mode.map(ModeArg::to_mode)) {
        Mode::Rational => seq_op::<BigRational>(common, x, op),
        Mode::Float => seq_op::<f64>(common, x, op),
    }
}

fn seq_op<S: Scalar>(common: &CommonArgs, x: &str, op: SeqOp) -> Result<u8> {
    let seed = env_seed();
    let alpha = S::parse_str(&common.alpha)?;
    let xs = SeqSource::parse(x)?.load::<S>(common.n, seed)?;
    let u = load_weights::<S>(&SeqSource::parse(&common.u)?, common.n, seed)?;
    let format = common.format.to_format();
    match op {
        SeqOp::Transform => render::print_seq(&transform(&xs, &alpha, &u)?, format)?,
        SeqOp::Invert => render::print_seq(&inverse_transform(&xs, &alpha, &u)?, format)?,
        SeqOp::Norm => {
            let norm = bk_norm(&xs, &alpha, &u)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "value": norm.value.to_json(),
                        "lower_bound": norm.lower_bound,
                        "truncation": norm.truncation,
                    }))?
                ),
                Format::Csv => {
                    println!("value,lower_bound,truncation");
                    println!("{},{},{}", norm.value, norm.lower_bound, norm.truncation);
                }
                Format::Pretty => println!(
                    "norm = {} (lower bound over the first {} terms)",
                    norm.value, norm.truncation
                ),
            }
        }
    }
    Ok(0)
}

fn cmd_member(common: &CommonArgs, x: &str, space: &str, probe: &ProbeArgs) -> Result<u8> {
    let space = parse_space_tag(space)?;
    probe.build(common.n)?;
    let mprobe = MembershipProbe::new(space, probe.window, probe.tol)?;
    let seed = env_seed();
    let report = match resolve_mode(&common.alpha, common.mode.map(ModeArg::to_mode)) {
        Mode::Rational => {
            let alpha = BigRational::parse_str(&common.alpha)?;
            let xs = SeqSource::parse(x)?.load::<BigRational>(common.n, seed)?;
            let u = load_weights::<BigRational>(&SeqSource::parse(&common.u)?, common.n, seed)?;
            membership(&xs, &alpha, &u, &mprobe)?
        }
        Mode::Float => {
            let alpha = f64::parse_str(&common.alpha)?;
            let xs = SeqSource::parse(x)?.load::<f64>(common.n, seed)?;
            let u = load_weights::<f64>(&SeqSource::parse(&common.u)?, common.n, seed)?;
            membership(&xs, &alpha, &u, &mprobe)?
        }
    };
    render::print_report(&report, common.format.to_format())?;
    Ok(report.verdict.exit_code() as u8)
}

fn cmd_basis(common: &CommonArgs, j: Option<usize>, limit: bool) -> Result<u8> {
    if j.is_none() && !limit {
        bail!("pass --j <index> or --limit");
    }
    let seed = env_seed();
    match resolve_mode(&common.alpha, common.mode.map(ModeArg::to_mode)) {
        Mode::Rational => {
            let alpha = BigRational::parse_str(&common.alpha)?;
            let u = load_weights::<BigRational>(&SeqSource::parse(&common.u)?, common.n, seed)?;
            let b = match j {
                Some(j) => schauder_basis(j, &alpha, &u, common.n)?,
                None => schauder_limit_vector(&alpha, &u, common.n)?,
            };
            render::print_seq(&b, common.format.to_format())?;
        }
        Mode::Float => {
            let alpha = f64::parse_str(&common.alpha)?;
            let u = load_weights::<f64>(&SeqSource::parse(&common.u)?, common.n, seed)?;
            let b = match j {
                Some(j) => schauder_basis(j, &alpha, &u, common.n)?,
                None => schauder_limit_vector(&alpha, &u, common.n)?,
            };
            render::print_seq(&b, common.format.to_format())?;
        }
    }
    Ok(0)
}

fn cmd_betadual(common: &CommonArgs, a: &str, space: &str, probe: &ProbeArgs) -> Result<u8> {
    let space = parse_space_tag(space)?;
    let p = probe.build(common.n)?;
    let seed = env_seed();
    let verdict = match resolve_mode(&common.alpha, common.mode.map(ModeArg::to_mode)) {
        Mode::Rational => {
            let alpha = BigRational::parse_str(&common.alpha)?;
            let aa = SeqSource::parse(a)?.load::<BigRational>(common.n, seed)?;
            let u = load_weights::<BigRational>(&SeqSource::parse(&common.u)?, common.n, seed)?;
            beta_dual_test(&aa, &alpha, &u, space, &p)?
        }
        Mode::Float => {
            let alpha = f64::parse_str(&common.alpha)?;
            let aa = SeqSource::parse(a)?.load::<f64>(common.n, seed)?;
            let u = load_weights::<f64>(&SeqSource::parse(&common.u)?, common.n, seed)?;
            beta_dual_test(&aa, &alpha, &u, space, &p)?
        }
    };
    render::print_class_verdict(&verdict, common.format.to_format())?;
    Ok(verdict.verdict.exit_code() as u8)
}

#[allow(clippy::too_many_arguments)]
fn cmd_classify(
    common: &CommonArgs,
    matrix: &str,
    direction: &str,
    source: &str,
    target: &str,
    rule: Option<String>,
    crosscheck: Option<usize>,
    probe: &ProbeArgs,
) -> Result<u8> {
    let p = probe.build(common.n)?;
    match resolve_mode(&common.alpha, common.mode.map(ModeArg::to_mode)) {
        Mode::Rational => classify_in_mode::<BigRational>(
            common, matrix, direction, source, target, rule, crosscheck, &p,
        ),
        Mode::Float => classify_in_mode::<f64>(
            common, matrix, direction, source, target, rule, crosscheck, &p,
        ),
    }
}

#[allow(clippy::too_many_arguments)]
fn classify_in_mode<S: Scalar>(
    common: &CommonArgs,
    matrix: &str,
    direction: &str,
    source: &str,
    target: &str,
    rule: Option<String>,
    crosscheck: Option<usize>,
    probe: &Probe,
) -> Result<u8> {
    let seed = env_seed();
    let alpha = S::parse_str(&common.alpha)?;
    let a = MatrixSource::parse(matrix)?.load::<S>(common.n, common.n)?;
    let u = load_weights::<S>(&SeqSource::parse(&common.u)?, common.n.max(a.rows()), seed)?;
    let format = common.format.to_format();

    let directions: Vec<ClassDirection> = match direction {
        "from" => {
            let source = parse_space_tag(source)?;
            let target = BaseSpace::parse(target)?;
            vec![ClassDirection::FromDomain { source, target }]
        }
        "into" => {
            let source = BaseSpace::parse(source)?;
            let target = parse_space_tag(target)?;
            let rules = match &rule {
                Some(id) => {
                    let found = IntoDomainRule::all()
                        .into_iter()
                        .find(|r| r.id() == id)
                        .ok_or_else(|| anyhow!("unknown rule id {id:?}"))?;
                    vec![found]
                }
                None => IntoDomainRule::for_pair(source, target),
            };
            if rules.is_empty() {
                return Err(Error::NoCharacterization {
                    from: source.label().to_string(),
                    to: format!("{}-domain", target.label()),
                }
                .into());
            }
            rules
                .into_iter()
                .map(|rule| ClassDirection::IntoDomain { rule })
                .collect()
        }
        other => bail!("direction must be from or into, got {other:?}"),
    };

    let mut worst = Verdict::Satisfied;
    for dir in directions {
        let verdict =
            match crosscheck {
                Some(samples) => {
                    let report = oracle_crosscheck(&a, &alpha, &u, dir, samples, probe, seed)?;
                    println!(
                    "crosscheck: {} samples, {} certified outside the target, {} inconclusive{}",
                    report.samples.len(),
                    report.violations,
                    report.inconclusive,
                    if report.consistent { "" } else { "  [DISAGREES with the satisfied verdict]" }
                );
                    report.class
                }
                None => match dir {
                    ClassDirection::FromDomain { source, target } => {
                        classify_from_domain(&a, &alpha, &u, source, target, probe)?
                    }
                    ClassDirection::IntoDomain { rule } => {
                        classify_into_domain(&a, &alpha, &u, rule, probe)?
                    }
                },
            };
        render::print_class_verdict(&verdict, format)?;
        worst = worst.and(verdict.verdict);
    }
    Ok(worst.exit_code() as u8)
}
