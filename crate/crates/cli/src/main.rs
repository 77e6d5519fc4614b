use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use lineclip::bench::{render_report, run_bench, BenchConfig, ReportFormat};
use lineclip::verify::VerifyReport;
use lineclip::workload::parse_record;
use lineclip::{clip, clip_oracle, verify_batch, AlgorithmId, ClipWindow, ScenarioId};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(
    name = "lineclip",
    version,
    about = "Clip 2D lines against a rectangle, verify and benchmark clippers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clip `xA yA xB yB` records read from a file or stdin
    Clip {
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: ClipWindow,
        /// lb, sf, msf, msf1, lsa or oracle
        #[arg(long, value_parser = parse_clipper)]
        algo: Clipper,
        /// Input file; stdin when omitted
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Check every algorithm against the brute-force oracle on generated lines
    Verify {
        #[command(flatten)]
        workload: WorkloadArgs,
    },
    /// Time the clippers and print the efficiency table
    Bench {
        #[command(flatten)]
        workload: WorkloadArgs,
        /// Comma-separated algorithms or `all`; LB is always included
        #[arg(long, default_value = "all", value_parser = parse_algorithms)]
        algos: AlgorithmList,
        /// Timed passes per cell (median is reported)
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// csv or md
        #[arg(long, default_value = "md")]
        format: ReportFormat,
        /// Also time the MSF-1 kernel on axis-parallel scenarios
        #[arg(long)]
        force_msf1: bool,
    },
}

#[derive(Args)]
struct WorkloadArgs {
    /// Comma-separated scenarios (P1..P12 or 1..12) or `all`
    #[arg(long, default_value = "all", value_parser = parse_scenarios)]
    scenarios: ScenarioList,
    /// Lines per scenario
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true, default_value = "-1,-1,1,1")]
    window: ClipWindow,
}

#[derive(Clone, Copy)]
enum Clipper {
    Algorithm(AlgorithmId),
    Oracle,
}

// Newtypes so clap treats a whole comma list as one value.
#[derive(Clone)]
struct ScenarioList(Vec<ScenarioId>);

#[derive(Clone)]
struct AlgorithmList(Vec<AlgorithmId>);

fn parse_window(s: &str) -> Result<ClipWindow, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|f| f.trim().parse::<f64>().map_err(|e| format!("`{f}`: {e}")))
        .collect::<Result<_, _>>()?;
    let [x_min, y_min, x_max, y_max] = v[..] else {
        return Err(format!("expected XMIN,YMIN,XMAX,YMAX, got {} values", v.len()));
    };
    ClipWindow::new(x_min, y_min, x_max, y_max).map_err(|e| e.to_string())
}

fn parse_clipper(s: &str) -> Result<Clipper, String> {
    if s.eq_ignore_ascii_case("oracle") {
        Ok(Clipper::Oracle)
    } else {
        AlgorithmId::from_str(s).map(Clipper::Algorithm).map_err(|e| e.to_string())
    }
}

fn parse_list<T>(s: &str, all: &[T]) -> Result<Vec<T>, String>
where
    T: FromStr + Copy,
    T::Err: ToString,
{
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(all.to_vec());
    }
    s.split(',')
        .filter(|f| !f.trim().is_empty())
        .map(|f| f.parse::<T>().map_err(|e| e.to_string()))
        .collect()
}

fn parse_scenarios(s: &str) -> Result<ScenarioList, String> {
    parse_list(s, &ScenarioId::ALL).map(ScenarioList)
}

fn parse_algorithms(s: &str) -> Result<AlgorithmList, String> {
    parse_list(s, &AlgorithmId::ALL).map(AlgorithmList)
}

fn run_clip(window: ClipWindow, clipper: Clipper, input: Option<PathBuf>) -> Result<(), String> {
    let reader: Box<dyn BufRead> = match &input {
        Some(path) => {
            let file = fs::File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Box::new(io::BufReader::new(file))
        }
        None => Box::new(io::stdin().lock()),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    for (i, raw) in reader.lines().enumerate() {
        let line_no = i + 1;
        let raw = raw.map_err(|e| format!("line {line_no}: {e}"))?;
        let Some(line) = parse_record(&raw).map_err(|e| format!("line {line_no}: {e}"))? else {
            continue;
        };
        let outcome = match clipper {
            Clipper::Oracle => clip_oracle(&line, &window),
            Clipper::Algorithm(a) => {
                clip(a, &line, &window).map_err(|e| format!("line {line_no}: {e}"))?
            }
        };
        writeln!(out, "{outcome}").map_err(|e| e.to_string())?;
    }
    out.flush().map_err(|e| e.to_string())
}

fn print_verify(scenario: ScenarioId, report: &VerifyReport) {
    println!(
        "{scenario}: {} lines, {} comparisons, {} matches, {} mismatches, {} degenerate skips, max deviation {:.3e}",
        report.lines,
        report.total,
        report.matches,
        report.mismatches,
        report.degenerate_skips,
        report.max_endpoint_deviation
    );
    for t in &report.per_algorithm {
        println!(
            "  {:<6} {:>9} matches {:>6} mismatches {:>9} skips  max dev {:.3e}",
            t.algorithm.label(),
            t.matches,
            t.mismatches,
            t.degenerate_skips,
            t.max_endpoint_deviation
        );
    }
    for f in &report.first_failures {
        let (a, b) = (f.line.a(), f.line.b());
        println!(
            "  mismatch #{} {}: line {} {} {} {}: expected {}, got {:?}",
            f.index,
            f.algorithm.label(),
            a.x,
            a.y,
            b.x,
            b.y,
            f.expected,
            f.got
        );
    }
}

fn run_verify(args: WorkloadArgs) -> Result<bool, String> {
    let mut clean = true;
    let mut mismatches = 0;
    for &s in &args.scenarios.0 {
        let report = verify_batch(s, args.seed, args.n, &args.window).map_err(|e| e.to_string())?;
        print_verify(s, &report);
        mismatches += report.mismatches;
        clean &= report.is_clean();
    }
    println!(
        "{}",
        if clean { "OK".to_string() } else { format!("FAILED: {mismatches} mismatches") }
    );
    Ok(clean)
}

fn run_bench_cmd(
    args: WorkloadArgs,
    algos: AlgorithmList,
    reps: usize,
    format: ReportFormat,
    force_msf1: bool,
) -> Result<(), String> {
    let mut cfg = BenchConfig::new(args.window);
    cfg.scenarios = args.scenarios.0;
    cfg.algorithms = algos.0;
    cfg.n = args.n;
    cfg.repetitions = reps;
    cfg.seed = args.seed;
    cfg.format = format;
    cfg.force_msf1 = force_msf1;
    let report = run_bench(&cfg).map_err(|e| e.to_string())?;
    print!("{}", render_report(&report, format));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Clip { window, algo, input } => run_clip(window, algo, input).map(|()| true),
        Command::Verify { workload } => run_verify(workload),
        Command::Bench { workload, algos, reps, format, force_msf1 } => {
            run_bench_cmd(workload, algos, reps, format, force_msf1).map(|()| true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_MISMATCH),
        Err(msg) => {
            eprintln!("lineclip: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
