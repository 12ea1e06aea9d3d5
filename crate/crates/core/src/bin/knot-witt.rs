use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use knot_witt::fixtures;
use knot_witt::records::{self, FileFormat, IngestMode, IngestOptions, KnotRecord};
use knot_witt::report::{self, Batch, ReportRow};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// Rational Witt class obstructions to small unknotting numbers.
#[derive(Parser, Debug)]
#[command(name = "knot-witt", version)]
struct Cli {
    /// Machine-readable JSON instead of the aligned table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for batch commands.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// φ, σ and det for every record.
    Compute(InputArgs),
    /// Unknotting-number-one test for every record with a matrix.
    ObstructU1(InputArgs),
    /// Intermediate knots of a possible two-step unknotting.
    ObstructU2(U2Args),
    /// Pretzel knot classes and the two family checks.
    Pretzel(PretzelArgs),
    /// Lickorish's congruence test.
    Lickorish(LickorishArgs),
    /// Every command over the bundled fixtures, with assertions.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Record file; the bundled knots are used when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Defaults to the file extension.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Treat every matrix as a symmetrized V + Vᵀ.
    #[arg(long)]
    symmetric: bool,
    /// Reject Seifert matrices with det(V − Vᵀ) ≠ 1.
    #[arg(long)]
    strict_seifert: bool,
}

#[derive(Args, Debug)]
struct U2Args {
    #[command(flatten)]
    input: InputArgs,
    /// Odd determinants to test, e.g. 1..75.
    #[arg(long, value_parser = parse_range)]
    d_range: Option<RangeInclusive<u64>>,
    /// Candidate knot table (name, det, sigma, u1).
    #[arg(long)]
    candidates: Option<PathBuf>,
    /// Use the bundled table of knots with at most nine crossings.
    #[arg(long, conflicts_with = "candidates")]
    bundled_candidates: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "family")]
struct PretzelSelect {
    /// P(p1, p2, p3).
    #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["P1", "P2", "P3"])]
    three: Option<Vec<i64>>,
    /// P(p1, p2, p3, p4).
    #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["P1", "P2", "P3", "P4"])]
    four: Option<Vec<i64>>,
    /// Any strand list reducing to three or four strands.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    strands: Option<Vec<i64>>,
    /// P(B, 4 − B, 2k·B^(ℓ+1)) over the grid.
    #[arg(long, value_name = "B", requires = "grid")]
    three_family: Option<i64>,
    /// P(p, p, p, −3p − 1) with p = 2 + (2k+1)·B^(ℓ+1) over the grid.
    #[arg(long, value_name = "B", requires = "grid")]
    four_family: Option<i64>,
}

#[derive(Args, Debug)]
struct PretzelArgs {
    #[command(flatten)]
    select: PretzelSelect,
    /// KxL: k takes K values, ℓ takes L values starting at 0.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(u32, u32)>,
}

#[derive(Args, Debug)]
struct LickorishArgs {
    /// Order of the lens space L(p, q).
    #[arg(long, allow_negative_numbers = true, requires_all = ["q", "det"])]
    p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<i64>,
    #[arg(long)]
    det: Option<u64>,
    /// Records with a `lens` field, tested one by one.
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Extra records checked alongside the bundled ones.
    #[command(flatten)]
    input: InputArgs,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

fn parse_grid(s: &str) -> Result<(u32, u32), String> {
    let (k, l) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected KxL, got {s:?}"))?;
    let k: u32 = k.parse().map_err(|e| format!("{k:?}: {e}"))?;
    let l: u32 = l.parse().map_err(|e| format!("{l:?}: {e}"))?;
    Ok((k, l))
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(String),
    Data(String),
    Mismatch,
}

impl From<knot_witt::Error> for Failure {
    fn from(e: knot_witt::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn load(args: &InputArgs, path: &Path) -> Result<records::Ingested, Failure> {
    let format = match args.format {
        Some(Format::Json) => FileFormat::Json,
        Some(Format::Csv) => FileFormat::Csv,
        None => FileFormat::from_path(path),
    };
    let opts = IngestOptions {
        mode: if args.symmetric {
            IngestMode::Symmetric
        } else {
            IngestMode::Auto
        },
        strict_seifert: args.strict_seifert,
    };
    Ok(records::ingest(path, format, opts)?)
}

/// Records from `--input`, or the bundled knots. Invalid records are
/// reported on stderr and flag the run as a data failure.
fn records_from(args: &InputArgs, bad: &mut bool) -> Result<Vec<KnotRecord>, Failure> {
    let Some(path) = &args.input else {
        let mut all = fixtures::worked_knots();
        all.extend(fixtures::extra_knots());
        return Ok(all);
    };
    let got = load(args, path)?;
    for issue in &got.issues {
        eprintln!("invalid {issue}");
        *bad = true;
    }
    Ok(got.records)
}

fn emit(rows: &[ReportRow], json: bool) {
    let text = if json {
        report::render_json(rows)
    } else {
        report::render_table(rows)
    };
    // A closed pipe (e.g. `| head`) is not an error.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn notices(batch: &Batch, bad: &mut bool) {
    for n in &batch.notices {
        eprintln!("notice: {n}");
        if !n.ends_with("skipped") {
            *bad = true;
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let jobs = usize::from(cli.jobs);
    let mut bad = false;
    let batch = match &cli.command {
        Command::Compute(args) => report::compute(&records_from(args, &mut bad)?, jobs),
        Command::ObstructU1(args) => report::obstruct_u1(&records_from(args, &mut bad)?, jobs),
        Command::ObstructU2(args) => {
            let records = records_from(&args.input, &mut bad)?;
            let candidates = match (&args.candidates, args.bundled_candidates) {
                (Some(path), _) => {
                    let opts = IngestOptions::default();
                    let got = records::ingest(path, FileFormat::from_path(path), opts)?;
                    for issue in &got.issues {
                        eprintln!("invalid candidate {issue}");
                        bad = true;
                    }
                    Some(got.records)
                }
                (None, true) => Some(fixtures::candidate_table()),
                (None, false) => None,
            };
            if args.d_range.is_none() && candidates.is_none() {
                return Err(Failure::Usage(
                    "obstruct-u2 needs --d-range, --candidates or --bundled-candidates".into(),
                ));
            }
            report::obstruct_u2(&records, args.d_range.clone(), candidates.as_deref(), jobs)
        }
        Command::Pretzel(args) => pretzel(args, jobs)?,
        Command::Lickorish(args) => match (args.p, args.q, args.det) {
            (Some(p), Some(q), Some(det)) => Batch {
                rows: vec![report::lickorish_row(p, q, det, None)?],
                notices: Vec::new(),
            },
            _ => report::lickorish(&records_from(&args.input, &mut bad)?, jobs),
        },
        Command::Report(args) => {
            let extra = match &args.input.input {
                Some(_) => records_from(&args.input, &mut bad)?,
                None => Vec::new(),
            };
            let report = report::fixture_report(&extra, jobs)?;
            emit(&report.batch.rows, cli.json);
            notices(&report.batch, &mut bad);
            for a in &report.assertions {
                let mark = if a.passed { "ok" } else { "MISMATCH" };
                eprintln!("{mark}: {} [{}]", a.name, a.observed);
            }
            if !report.all_passed() {
                return Err(Failure::Mismatch);
            }
            return Ok(!bad);
        }
    };
    emit(&batch.rows, cli.json);
    notices(&batch, &mut bad);
    Ok(!bad)
}

fn pretzel(args: &PretzelArgs, jobs: usize) -> Result<Batch, Failure> {
    let s = &args.select;
    let mut batch = Batch::default();
    if let Some(strands) = s.three.as_ref().or(s.four.as_ref()).or(s.strands.as_ref()) {
        batch.rows.push(report::pretzel_row(strands)?);
        return Ok(batch);
    }
    let (ks, ls) = args.grid.expect("clap requires --grid for families");
    let results = if let Some(base) = s.three_family {
        let grid = report::family3_grid(base, ks, ls);
        report::run_parallel(&grid, jobs, |&(p1, p3)| report::pretzel_family3_row(p1, p3))
    } else {
        let base = s.four_family.expect("clap requires one family");
        let grid = report::family4_grid(base, ks, ls);
        report::run_parallel(&grid, jobs, |&p| report::pretzel_family4_row(p))
    };
    for row in results {
        batch.rows.push(row?);
    }
    Ok(batch)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_DATA),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DATA)
        }
        Err(Failure::Mismatch) => ExitCode::from(EXIT_MISMATCH),
    }
}
