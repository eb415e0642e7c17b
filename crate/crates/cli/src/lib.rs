//! `threegap` command-line front end.
//!
//! Exit codes: 0 ok, 2 usage or parse error, 3 domain error (point
//! collision, empty circle), 4 internal inconsistency or failed
//! verification, 5 I/O error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use threegap::gap::{CircleConfig, Orbit};
use threegap::oracle::{verify_sweep, Depth, SweepOptions, DEFAULT_MAX_LEMMA_N};
use threegap::report::{after_rows, render_after, render_gaps, OutputFormat};
use threegap::svg::{render_svg, RenderStyle};
use threegap::{parse_angle, Angle, GapError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "threegap", version, about = "Exact three-gap structure of n*alpha mod 1")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gap classes, exact lengths and counts for one angle and N.
    Gaps(GapsArgs),
    /// Successor after(N, m) for one point or the whole circle.
    After(AfterArgs),
    /// Check every construction against the sorted orbit over a grid of N.
    Verify(VerifyArgs),
    /// Draw the circle as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => OutputFormat::HumanTable,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Args, Debug)]
pub struct GapsArgs {
    /// Angle: `p/q`, `(a+b*sqrt(d))/c` or `golden`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct AfterArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub n: usize,
    /// Single point; omit for the full table.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Repeatable.
    #[arg(long, required = true, allow_hyphen_values = true)]
    pub alpha: Vec<String>,
    #[arg(long)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    /// Also run the size-M stability checks and the middle-band scan.
    #[arg(long)]
    pub lemmas: bool,
    /// Above this N only the census checks run.
    #[arg(long, default_value_t = DEFAULT_MAX_LEMMA_N)]
    pub max_lemma_n: usize,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub n: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 480)]
    pub size: u32,
    #[arg(long)]
    pub no_labels: bool,
    #[arg(long, default_value = "#1f77b4")]
    pub first_color: String,
    #[arg(long, default_value = "#d62728")]
    pub last_color: String,
    #[arg(long, default_value = "#2ca02c")]
    pub combined_color: String,
}

/// Result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn exit_code(e: &GapError) -> i32 {
    if matches!(e, GapError::PointCollision { .. } | GapError::EmptyCircle | GapError::TooFewPoints(_)) {
        EXIT_DOMAIN
    } else {
        EXIT_USAGE
    }
}

impl From<GapError> for Outcome {
    fn from(e: GapError) -> Self {
        Outcome::fail(exit_code(&e), e)
    }
}

fn config(alpha: &str, n: usize) -> Result<CircleConfig, GapError> {
    CircleConfig::new(parse_angle(alpha)?, n)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Outcome::fail(EXIT_USAGE, "--jobs must be at least 1");
        }
        builder = builder.num_threads(jobs);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return Outcome::fail(EXIT_INTERNAL, e),
    };
    pool.install(|| execute(cli.command))
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Gaps(a) => cmd_gaps(&a),
        Command::After(a) => cmd_after(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Render(a) => cmd_render(&a),
    }
}

pub fn cmd_gaps(args: &GapsArgs) -> Outcome {
    let result = config(&args.alpha, args.n).and_then(|cfg| Orbit::new(&cfg).census(false));
    match result {
        Ok(report) => Outcome::ok(render_gaps(&report, args.format.into())),
        Err(e) => e.into(),
    }
}

pub fn cmd_after(args: &AfterArgs) -> Outcome {
    let cfg = match config(&args.alpha, args.n) {
        Ok(c) => c,
        Err(e) => return e.into(),
    };
    match after_rows(&Orbit::new(&cfg), args.m) {
        Ok(Ok(table)) => Outcome::ok(render_after(&table, args.format.into())),
        Ok(Err(d)) => Outcome::fail(
            EXIT_INTERNAL,
            format!(
                "internal inconsistency at m={}: closed form gives {}, induction gives {}",
                d.m, d.closed_form, d.inductive
            ),
        ),
        Err(e) => e.into(),
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let angles: Vec<Angle> = match args.alpha.iter().map(|a| parse_angle(a)).collect() {
        Ok(a) => a,
        Err(e) => return e.into(),
    };
    if args.n_min < 2 || args.n_min > args.n_max {
        return Outcome::fail(
            EXIT_USAGE,
            format!("empty grid: need 2 <= n-min <= n-max, got {}..{}", args.n_min, args.n_max),
        );
    }
    let options = SweepOptions {
        depth: if args.lemmas { Depth::Lemmas } else { Depth::Census },
        max_lemma_n: args.max_lemma_n,
    };
    let summary = match verify_sweep(&angles, args.n_min, args.n_max, options) {
        Ok(s) => s,
        Err(e) => return e.into(),
    };
    let mut text = format!(
        "configs {}\npassed  {}\nfailed  {}\nskipped {}\n",
        summary.cells.len(),
        summary.passed(),
        summary.failed(),
        summary.skipped()
    );
    match summary.first_failure() {
        None => Outcome::ok(text),
        Some((cell, check)) => {
            text.push_str(&format!(
                "first failure: alpha {} N {} check {}: {}\n",
                cell.angle,
                cell.n,
                check.check,
                check.witness.as_deref().unwrap_or("")
            ));
            Outcome { code: EXIT_INTERNAL, stdout: text, stderr: String::new() }
        }
    }
}

pub fn cmd_render(args: &RenderArgs) -> Outcome {
    let style = RenderStyle {
        size_px: args.size,
        label_points: !args.no_labels,
        class_colors: [
            args.first_color.clone(),
            args.last_color.clone(),
            args.combined_color.clone(),
        ],
    };
    let svg = match config(&args.alpha, args.n).and_then(|cfg| render_svg(&cfg, &style)) {
        Ok(s) => s,
        Err(e) => return e.into(),
    };
    match &args.out {
        None => Outcome::ok(svg),
        Some(path) => match std::fs::write(path, svg) {
            Ok(()) => Outcome::ok(String::new()),
            Err(e) => Outcome::fail(EXIT_IO, format!("cannot write {}: {e}", path.display())),
        },
    }
}
