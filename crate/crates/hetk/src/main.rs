use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hetk::config::{parse_resolution, ExperimentConfig, Format, VariantChoice};
use hetk::generator::{Generator, Source};
use hetk::pointfile;
use hetk::report::{run_bound, run_discrepancy, write_bound, write_discrepancy};
use hetk::verify::{run_suite, Suite};
use hetk::{Error, Result};
use hetk_core::oracle::OracleCaps;

#[derive(Parser)]
#[command(
    name = "hetk",
    version,
    about = "Discrepancy bounds from Walsh and b-adic exponential sums, with exact discrepancies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point file.
    Gen(GenArgs),
    /// Evaluate the bound for one or more resolutions.
    Bound(ExperimentArgs),
    /// Exact discrepancy of a small point set.
    Discrepancy(ExperimentArgs),
    /// Run verification suites; exits with 2 on any failure.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Vdc,
    Halton,
    Digital,
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    Identity,
    Random,
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    /// Base of a van der Corput or digital sequence.
    #[arg(long)]
    base: Option<u32>,
    /// Halton bases, e.g. `2,3`.
    #[arg(long)]
    bases: Option<String>,
    /// Dimension of a digital sequence.
    #[arg(long, default_value_t = 1)]
    dims: usize,
    #[arg(long, value_enum, default_value = "identity")]
    matrix: MatrixKind,
    /// Digits per generator matrix.
    #[arg(long)]
    m: Option<usize>,
    /// Seed for random generator matrices.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generator for the Walsh block of a hybrid sequence.
    #[arg(long)]
    walsh: Option<String>,
    /// Generator for the b-adic block of a hybrid sequence.
    #[arg(long)]
    badic: Option<String>,
    /// Coordinate order of a hybrid sequence, e.g. `w,b,w`.
    #[arg(long)]
    tags: Option<String>,
    #[arg(long)]
    n: usize,
    /// Index of the first point.
    #[arg(long, default_value_t = 0)]
    start: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON experiment config; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Point file to read.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Generator string such as `halton:2,3`.
    #[arg(long)]
    generator: Option<String>,
    #[arg(long)]
    walsh: Option<String>,
    #[arg(long)]
    badic: Option<String>,
    /// Expected bases of the points.
    #[arg(long)]
    bases: Option<String>,
    /// Per-coordinate systems, e.g. `w,w,b`.
    #[arg(long)]
    tags: Option<String>,
    /// Resolution such as `3` or `2,3`; repeat for several rows.
    #[arg(long = "g")]
    g: Vec<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    start: Option<u64>,
    #[arg(long, value_enum)]
    variant: Option<VariantChoice>,
    /// Add the exact discrepancy and the margin to every row.
    #[arg(long)]
    oracle: bool,
    /// Dump the per-index table.
    #[arg(long)]
    per_k: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed recorded in the report.
    #[arg(long)]
    seed: Option<u64>,
    /// Largest number of indices a bound may enumerate.
    #[arg(long, env = "HETK_BUDGET")]
    budget: Option<u64>,
    #[arg(long)]
    chunk_size: Option<u64>,
    /// Report zero runtimes so that output is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Randomized trials per variant in the domination suite.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

impl ExperimentArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = &self.$field {
                    cfg.$field = Some(v.clone());
                }
            )*};
        }
        set!(points, generator, walsh, badic, bases, tags, n, budget, chunk_size, seed);
        if self.points.is_some() {
            cfg.generator = None;
            cfg.walsh = None;
            cfg.badic = None;
        } else if self.generator.is_some() || self.walsh.is_some() || self.badic.is_some() {
            cfg.points = None;
            if self.generator.is_some() {
                cfg.walsh = None;
                cfg.badic = None;
            } else {
                cfg.generator = None;
            }
        }
        if let Some(s) = self.start {
            cfg.start = s;
        }
        if !self.g.is_empty() {
            cfg.g = self
                .g
                .iter()
                .map(|g| parse_resolution(g))
                .collect::<Result<_>>()?;
        }
        if let Some(v) = self.variant {
            cfg.variant = v;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        cfg.oracle |= self.oracle;
        cfg.per_k |= self.per_k;
        Ok(cfg)
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::io(p, e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn gen(args: &GenArgs) -> Result<()> {
    let need = |v: Option<u32>, what: &str| {
        v.ok_or_else(|| Error::Config(format!("--{what} is required for this generator")))
    };
    let single = |text: String| -> Result<Source> { Ok(Source::Single(Generator::parse(&text)?)) };
    let source = match args.kind {
        GenKind::Vdc => single(format!("vdc:{}", need(args.base, "base")?))?,
        GenKind::Halton => single(format!(
            "halton:{}",
            args.bases
                .as_deref()
                .ok_or_else(|| Error::Config("--bases is required for halton".into()))?
        ))?,
        GenKind::Digital => {
            let base = need(args.base, "base")?;
            let mut text = match args.matrix {
                MatrixKind::Identity => format!("digital:{base}:identity:{}", args.dims),
                MatrixKind::Random => format!("digital:{base}:random:{}:{}", args.dims, args.seed),
            };
            if let Some(m) = args.m {
                text.push_str(&format!(":{m}"));
            }
            single(text)?
        }
        GenKind::Hybrid => {
            if args.walsh.is_none() && args.badic.is_none() {
                return Err(Error::Config("hybrid needs --walsh and/or --badic".into()));
            }
            Source::Hybrid {
                walsh: args.walsh.as_deref().map(Generator::parse).transpose()?,
                badic: args.badic.as_deref().map(Generator::parse).transpose()?,
            }
        }
    };
    let tags = args
        .tags
        .as_deref()
        .map(hetk::generator::parse_tags)
        .transpose()?;
    let spec = source.spec(tags.as_deref())?;
    let points = source.points(&spec, args.start, args.n)?;
    let mut out = output(args.out.as_deref())?;
    out.write_all(pointfile::write_string(&points)?.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn bound(args: &ExperimentArgs) -> Result<()> {
    let cfg = args.config()?;
    let ex = cfg.experiment()?;
    let report = run_bound(&ex, cfg.oracle, cfg.seed, !args.no_timing)?;
    let mut out = output(args.out.as_deref())?;
    write_bound(&report, cfg.format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn discrepancy(args: &ExperimentArgs) -> Result<()> {
    let mut cfg = args.config()?;
    if cfg.g.is_empty() {
        // the oracle does not use a resolution
        cfg.g = vec![vec![1]];
    }
    let ex = cfg.experiment()?;
    let report = run_discrepancy(&ex, &OracleCaps::default(), !args.no_timing)?;
    let mut out = output(args.out.as_deref())?;
    write_discrepancy(&report, cfg.format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn verify(args: &VerifyArgs) -> bool {
    println!("seed {} trials {}", args.seed, args.trials);
    let reports = run_suite(args.suite, args.trials, args.seed);
    let mut ok = true;
    for r in &reports {
        print!("{r}");
        ok &= r.passed();
    }
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: usize = reports
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| !c.passed())
        .count();
    println!("{} checks, {failed} failed", checks);
    ok
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Bound(a) => bound(a),
        Command::Discrepancy(a) => discrepancy(a),
        Command::Verify(a) => {
            return if verify(a) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
