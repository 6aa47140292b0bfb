//! Batch front-end for `.rcp` specs: point classification, decision-region
//! rendering, equivalence verification, separability census and truth-table
//! synthesis.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 spec parse error,
//! 3 I/O or argument error.

use std::ffi::OsString;
use std::fmt::{self, Write as _};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use receptron::dsl::{self, format_number, Artifact};
use receptron::harness::verify_document;
use receptron::par::{self, Exec};
use receptron::unit::pattern_inputs;
use receptron::{census, synthesize_digital, ThresholdMode, TruthTable, WeightFunction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "receptron", version, about = "Receptron specs: classify, render, verify, census, synth")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the points of a CSV file against the spec's `main` entry.
    Classify(ClassifyArgs),
    /// Render a 2-D slice of the decision region as an ASCII PGM.
    Render(RenderArgs),
    /// Check every unit and network against its oracle on seeded samples.
    Verify(VerifyArgs),
    /// Count linearly separable truth tables.
    Census(CensusArgs),
    /// Synthesize a lookup-weight unit for a truth table.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub points: PathBuf,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// The points file starts with a header row.
    #[arg(long)]
    pub header: bool,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// The two free axes, e.g. `0,1`.
    #[arg(long)]
    pub axes: String,
    /// Values of every other axis, e.g. `2=10`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub slice: String,
    /// `lo1:hi1,lo2:hi2`; defaults to the spec's padded bounding box.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub res: usize,
    /// Output PGM (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the grid as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Arity 1..=4; all four when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Output bits in ascending pattern order, e.g. `0110`.
    #[arg(long)]
    pub table: String,
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Io(String),
    Mismatch,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Io(_) => EXIT_IO,
            CliError::Mismatch => EXIT_MISMATCH,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Io(m) => f.write_str(m),
            CliError::Mismatch => f.write_str("verification found mismatches"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn io_err(context: impl fmt::Display) -> impl FnOnce(io::Error) -> CliError {
    move |e| CliError::Io(format!("{context}: {e}"))
}

fn lib_err(e: receptron::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn run_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match run(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            if !matches!(e, CliError::Mismatch) {
                let _ = writeln!(stderr, "error: {e}");
            }
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Classify(args) => cmd_classify(&args, stdout),
        Command::Render(args) => cmd_render(&args, stdout),
        Command::Verify(args) => cmd_verify(&args, stdout),
        Command::Census(args) => cmd_census(&args, stdout),
        Command::Synth(args) => cmd_synth(&args, stdout),
    }
    .map(|()| EXIT_OK)
}

pub fn load_spec(path: &Path) -> CliResult<dsl::SpecDocument> {
    let text = fs::read_to_string(path).map_err(io_err(path.display()))?;
    dsl::parse(&text).map_err(|e| CliError::Parse(format!("{}:{e}", path.display())))
}

fn emit(out: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(io_err(path.display())),
        None => stdout.write_all(bytes).map_err(io_err("stdout")),
    }
}

pub fn cmd_classify(args: &ClassifyArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let doc = load_spec(&args.spec)?;
    let artifact = doc.main_artifact().map_err(lib_err)?;
    let n = artifact.arity();

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(args.header)
        .flexible(true)
        .from_path(&args.points)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.points.display())))?;
    let mut header: Vec<String> = if args.header {
        reader
            .headers()
            .map_err(|e| CliError::Io(format!("{}: {e}", args.points.display())))?
            .iter()
            .map(str::to_string)
            .collect()
    } else {
        Vec::new()
    };
    if header.is_empty() {
        header = (0..n).map(|i| format!("x{i}")).collect();
    } else if header.len() != n {
        return Err(CliError::Io(format!(
            "arity mismatch: header has {} columns, spec expects {n} inputs",
            header.len()
        )));
    }

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Io(format!("{}: {e}", args.points.display())))?;
        if record.len() != n {
            return Err(CliError::Io(format!(
                "arity mismatch: row {} has {} columns, spec expects {n} inputs",
                i + 1,
                record.len()
            )));
        }
        let values = record
            .iter()
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Io(format!("row {}: {f:?} is not a finite number", i + 1)))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push((record, values));
    }

    let bits = par::with_workers(args.workers, || {
        par::map_range(Exec::default(), rows.len(), |i| artifact.eval(&rows[i].1))
    });

    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut out_header = header;
    out_header.push("output".into());
    writer.write_record(&out_header).map_err(|e| CliError::Io(e.to_string()))?;
    for ((record, _), bit) in rows.iter().zip(bits) {
        let bit = bit.map_err(lib_err)?;
        let mut fields: Vec<&str> = record.iter().collect();
        fields.push(if bit { "1" } else { "0" });
        writer.write_record(&fields).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    emit(args.out.as_deref(), &bytes, stdout)
}

/// A rendering request resolved against an artifact.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderPlan {
    pub axes: (usize, usize),
    /// Coordinates of the fixed axes (free axes hold a placeholder).
    pub base: Vec<f64>,
    pub range: ((f64, f64), (f64, f64)),
    pub res: usize,
}

impl RenderPlan {
    pub fn from_args(args: &RenderArgs, artifact: &Artifact) -> CliResult<Self> {
        let n = artifact.arity();
        let bad = |m: String| CliError::Io(m);

        let axes: Vec<usize> = args
            .axes
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad(format!("--axes {:?}: expected I,J", args.axes)))?;
        let [i, j] = axes[..] else {
            return Err(bad(format!("--axes {:?}: expected exactly two axes", args.axes)));
        };
        if i == j || i >= n || j >= n {
            return Err(bad(format!(
                "--axes {i},{j}: need two distinct axes below the spec arity {n}"
            )));
        }

        let mut base: Vec<Option<f64>> = vec![None; n];
        base[i] = Some(0.0);
        base[j] = Some(0.0);
        for part in args.slice.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("--slice entry {part:?}: expected K=V")))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| bad(format!("--slice entry {part:?}: bad axis")))?;
            let v: f64 = v
                .trim()
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| bad(format!("--slice entry {part:?}: bad value")))?;
            if k >= n || k == i || k == j || base[k].is_some() {
                return Err(bad(format!("--slice axis {k} is free, repeated or out of range")));
            }
            base[k] = Some(v);
        }
        let base = base
            .iter()
            .enumerate()
            .map(|(k, v)| v.ok_or_else(|| bad(format!("--slice is missing a value for axis {k}"))))
            .collect::<CliResult<Vec<f64>>>()?;

        let range = match &args.range {
            Some(text) => {
                let parts: Vec<(f64, f64)> = text
                    .split(',')
                    .map(|r| {
                        let (lo, hi) = r.split_once(':')?;
                        let (lo, hi) = (lo.trim().parse::<f64>().ok()?, hi.trim().parse::<f64>().ok()?);
                        (lo.is_finite() && hi.is_finite() && lo < hi).then_some((lo, hi))
                    })
                    .collect::<Option<_>>()
                    .ok_or_else(|| bad(format!("--range {text:?}: expected lo1:hi1,lo2:hi2")))?;
                let [a, b] = parts[..] else {
                    return Err(bad(format!("--range {text:?}: expected two ranges")));
                };
                (a, b)
            }
            None => {
                let bounds = artifact.bounds();
                (bounds[i], bounds[j])
            }
        };
        if args.res < 2 {
            return Err(bad(format!("--res {} must be at least 2", args.res)));
        }
        Ok(Self {
            axes: (i, j),
            base,
            range,
            res: args.res,
        })
    }

    /// Sample point at the center of pixel `(row, col)`. Row 0 is the top
    /// (largest value of the second axis); column 0 the smallest value of
    /// the first.
    pub fn point(&self, row: usize, col: usize) -> Vec<f64> {
        let ((lo1, hi1), (lo2, hi2)) = self.range;
        let res = self.res as f64;
        let mut x = self.base.clone();
        x[self.axes.0] = lo1 + (col as f64 + 0.5) * (hi1 - lo1) / res;
        x[self.axes.1] = hi2 - (row as f64 + 0.5) * (hi2 - lo2) / res;
        x
    }
}

/// Row-major pixel bits.
pub fn render_grid(artifact: &Artifact, plan: &RenderPlan, exec: Exec) -> receptron::Result<Vec<bool>> {
    let res = plan.res;
    par::map_range(exec, res * res, |k| artifact.eval(&plan.point(k / res, k % res)))
        .into_iter()
        .collect()
}

/// ASCII PGM (P2, maxval 255), lines at most 70 characters.
pub fn pgm(bits: &[bool], res: usize) -> String {
    let mut out = format!("P2\n{res} {res}\n255\n");
    for row in bits.chunks(res) {
        let mut line = String::new();
        for &b in row {
            let v = if b { "255" } else { "0" };
            if !line.is_empty() && line.len() + 1 + v.len() > 70 {
                out.push_str(&line);
                out.push('\n');
                line.clear();
            }
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(v);
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn grid_csv(bits: &[bool], plan: &RenderPlan) -> String {
    let (i, j) = plan.axes;
    let mut out = format!("row,col,x{i},x{j},output\n");
    for (k, &b) in bits.iter().enumerate() {
        let (row, col) = (k / plan.res, k % plan.res);
        let x = plan.point(row, col);
        let _ = writeln!(
            out,
            "{row},{col},{},{},{}",
            format_number(x[i]),
            format_number(x[j]),
            u8::from(b)
        );
    }
    out
}

pub fn cmd_render(args: &RenderArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let doc = load_spec(&args.spec)?;
    let artifact = doc.main_artifact().map_err(lib_err)?;
    let plan = RenderPlan::from_args(args, &artifact)?;
    let bits = par::with_workers(args.workers, || render_grid(&artifact, &plan, Exec::default()))
        .map_err(lib_err)?;
    if let Some(path) = &args.csv {
        fs::write(path, grid_csv(&bits, &plan)).map_err(io_err(path.display()))?;
    }
    emit(args.out.as_deref(), pgm(&bits, plan.res).as_bytes(), stdout)
}

fn point_text(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|&v| format_number(v)).collect();
    format!("({})", parts.join(", "))
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> CliResult<()> {
    if args.samples == 0 {
        return Err(CliError::Io("--samples must be at least 1".into()));
    }
    let doc = load_spec(&args.spec)?;
    let results = par::with_workers(args.workers, || {
        verify_document(&doc, args.samples, args.seed, Exec::default())
    })
    .map_err(lib_err)?;

    let mut report = String::new();
    let _ = writeln!(report, "spec: {}", args.spec.display());
    let _ = writeln!(report, "seed: {}", args.seed);
    let _ = writeln!(report, "samples: {}", args.samples);
    let mut total = 0;
    for r in &results {
        let _ = writeln!(report, "suite {}: {}", r.name, r.description);
        let _ = writeln!(report, "  tested: {}", r.report.tested);
        let _ = writeln!(report, "  mismatches: {}", r.report.mismatches);
        if r.report.errors > 0 {
            let _ = writeln!(report, "  errors: {}", r.report.errors);
        }
        for c in &r.report.counterexamples {
            let actual: Vec<String> = c.actual.iter().map(|&b| u8::from(b).to_string()).collect();
            let _ = writeln!(
                report,
                "  counterexample #{}: x = {} expected {} got [{}]",
                c.index,
                point_text(&c.point),
                u8::from(c.expected),
                actual.join(", ")
            );
        }
        total += r.report.mismatches + r.report.errors;
    }
    let _ = writeln!(report, "total mismatches: {total}");
    emit(args.out.as_deref(), report.as_bytes(), stdout)?;
    if total > 0 {
        return Err(CliError::Mismatch);
    }
    Ok(())
}

pub fn cmd_census(args: &CensusArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let arities = match args.n {
        Some(n) if (1..=4).contains(&n) => vec![n],
        Some(n) => return Err(CliError::Io(format!("--n {n} is outside 1..=4"))),
        None => (1..=4).collect(),
    };
    let mut out = String::from("n,separable,total,ratio\n");
    for n in arities {
        let c = par::with_workers(args.workers, || census(n)).map_err(lib_err)?;
        let _ = writeln!(out, "{},{},{},{:.6}", c.arity, c.separable, c.total, c.ratio());
    }
    emit(None, out.as_bytes(), stdout)
}

pub fn cmd_synth(args: &SynthArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let table: TruthTable = args
        .table
        .parse()
        .map_err(|e: receptron::Error| CliError::Io(format!("--table {:?}: {e}", args.table)))?;
    let unit = synthesize_digital(&table);
    let n = table.arity();

    let mut out = format!("unit T = truth({table});\n");
    if let ThresholdMode::Double { low, high } = unit.mode() {
        let _ = writeln!(out, "# thresholds: ({}, {}]", format_number(low), format_number(high));
    }
    for (j, w) in unit.weights().iter().enumerate() {
        if let WeightFunction::Lookup(lookup) = w {
            let nonzero: Vec<String> = lookup
                .iter()
                .filter(|&(_, v)| v != 0.0)
                .map(|(p, v)| format!("{p:0n$b}->{}", format_number(v)))
                .collect();
            let listed = if nonzero.is_empty() { "all 0".to_string() } else { nonzero.join(" ") };
            let _ = writeln!(out, "# input {}: {listed}", j + 1);
        }
    }
    let total = 1u64 << n;
    let ok = (0..total)
        .filter(|&p| unit.activate(&pattern_inputs(p, n)).ok() == Some(table.get(p)))
        .count();
    let _ = writeln!(out, "verified {ok}/{total} patterns");
    emit(None, out.as_bytes(), stdout)?;
    if ok as u64 != total {
        return Err(CliError::Mismatch);
    }
    Ok(())
}
