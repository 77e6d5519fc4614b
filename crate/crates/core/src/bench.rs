//! Batch timing and operation counts, with efficiency coefficients
//! `v_ALG = T_LB / T_ALG` per scenario.

use std::fmt::Write as _;
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use thiserror::Error;

use crate::clip::{
    clip_lb, clip_lsa, clip_msf, clip_msf1_unchecked, clip_sf, clip_with_unchecked, AlgorithmId,
    ClipOutcome, OpCounts, OpMeans,
};
use crate::geometry::{ClipWindow, Line};
use crate::workload::{gen_batch, Fnv64, ScenarioId, WorkloadError};

/// Coordinates are rounded to this grid before entering the outcome checksum.
pub const CHECKSUM_QUANTUM: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("no scenarios selected")]
    EmptyScenarios,
    #[error("no algorithms selected")]
    EmptyAlgorithms,
    #[error("lines per scenario must be at least 1")]
    EmptyBatch,
    #[error("at least 3 repetitions are required, got {0}")]
    TooFewRepetitions(usize),
    #[error(transparent)]
    Workload(#[from] WorkloadError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown format `{other}` (expected csv or md)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub scenarios: Vec<ScenarioId>,
    pub algorithms: Vec<AlgorithmId>,
    pub n: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub window: ClipWindow,
    pub format: ReportFormat,
    /// Time MSF-1 on P8..P12 too, using the unchecked kernel. Those cells
    /// measure the bare kernel on inputs it does not support; their
    /// outcomes are meaningless and excluded from checksum agreement.
    pub force_msf1: bool,
}

impl BenchConfig {
    pub fn new(window: ClipWindow) -> Self {
        BenchConfig {
            scenarios: ScenarioId::ALL.to_vec(),
            algorithms: AlgorithmId::ALL.to_vec(),
            n: 100_000,
            repetitions: 5,
            seed: 1,
            window,
            format: ReportFormat::Markdown,
            force_msf1: false,
        }
    }

    fn validate(&self) -> Result<(), BenchError> {
        if self.scenarios.is_empty() {
            return Err(BenchError::EmptyScenarios);
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::EmptyAlgorithms);
        }
        if self.n == 0 {
            return Err(BenchError::EmptyBatch);
        }
        if self.repetitions < 3 {
            return Err(BenchError::TooFewRepetitions(self.repetitions));
        }
        Ok(())
    }

    /// Algorithms to run: LB always first (it is the reference), then the
    /// rest in canonical order, without duplicates.
    fn algorithm_set(&self) -> Vec<AlgorithmId> {
        AlgorithmId::ALL
            .into_iter()
            .filter(|a| *a == AlgorithmId::Lb || self.algorithms.contains(a))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchCell {
    pub ns_per_line: f64,
    pub v: f64,
    pub ops: OpMeans,
    pub checksum: u64,
    pub forced: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub scenario: ScenarioId,
    pub algorithm: AlgorithmId,
    /// `None` when the pair is excluded (MSF-1 on an axis-parallel scenario).
    pub cell: Option<BenchCell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchMeta {
    pub timestamp_unix: u64,
    pub build: String,
}

impl BenchMeta {
    pub fn capture() -> Self {
        let timestamp_unix =
            SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
        let parallel = if cfg!(feature = "parallel") { "on" } else { "off" };
        BenchMeta {
            timestamp_unix,
            build: format!("{profile} build, parallel feature {parallel}, single-threaded timing"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub scenarios: Vec<ScenarioId>,
    pub algorithms: Vec<AlgorithmId>,
    pub rows: Vec<BenchRow>,
    pub n: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub window: ClipWindow,
    pub meta: BenchMeta,
}

impl BenchReport {
    pub fn cell(&self, scenario: ScenarioId, algo: AlgorithmId) -> Option<&BenchCell> {
        self.rows
            .iter()
            .find(|r| r.scenario == scenario && r.algorithm == algo)
            .and_then(|r| r.cell.as_ref())
    }

    /// The common outcome checksum of a scenario, or `None` if the
    /// (non-forced) algorithms disagree.
    pub fn agreed_checksum(&self, scenario: ScenarioId) -> Option<u64> {
        let mut sums = self
            .rows
            .iter()
            .filter(|r| r.scenario == scenario)
            .filter_map(|r| r.cell.as_ref())
            .filter(|c| !c.forced)
            .map(|c| c.checksum);
        let first = sums.next()?;
        sums.all(|s| s == first).then_some(first)
    }
}

/// Order-insensitive digest of one outcome, folded into `hash`.
pub fn hash_outcome(hash: &mut Fnv64, outcome: &ClipOutcome) {
    match outcome {
        ClipOutcome::Rejected => hash.write(&[0]),
        ClipOutcome::Accepted { p, q } => {
            let quant = |v: f64| (v / CHECKSUM_QUANTUM).round() as i64;
            let mut ends = [(quant(p.x), quant(p.y)), (quant(q.x), quant(q.y))];
            ends.sort_unstable();
            hash.write(&[1]);
            for (x, y) in ends {
                hash.write(&x.to_le_bytes());
                hash.write(&y.to_le_bytes());
            }
        }
    }
}

pub fn outcome_checksum<'a>(outcomes: impl IntoIterator<Item = &'a ClipOutcome>) -> u64 {
    let mut h = Fnv64::default();
    for o in outcomes {
        hash_outcome(&mut h, o);
    }
    h.finish()
}

/// Efficiency coefficient of an algorithm against the LB time.
pub fn efficiency(t_lb: f64, t_alg: f64) -> f64 {
    t_lb / t_alg
}

#[inline(always)]
fn timed_pass<F>(kernel: F, lines: &[Line], win: &ClipWindow) -> (f64, f64)
where
    F: Fn(&Line, &ClipWindow) -> ClipOutcome,
{
    let start = Instant::now();
    let mut acc = 0.0;
    for line in lines {
        match kernel(black_box(line), win) {
            ClipOutcome::Accepted { p, q } => acc += p.x + p.y + q.x + q.y,
            ClipOutcome::Rejected => acc += 1.0,
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    (elapsed, black_box(acc))
}

/// Warmup pass (which also produces the outcome checksum) followed by
/// `reps` timed passes. Returns the median pass time in seconds.
fn time_kernel<F>(kernel: F, lines: &[Line], win: &ClipWindow, reps: usize) -> (f64, u64)
where
    F: Fn(&Line, &ClipWindow) -> ClipOutcome + Copy,
{
    let mut h = Fnv64::default();
    for line in lines {
        hash_outcome(&mut h, &kernel(black_box(line), win));
    }
    let checksum = black_box(h.finish());

    let mut times: Vec<f64> = (0..reps).map(|_| timed_pass(kernel, lines, win).0).collect();
    times.sort_by(f64::total_cmp);
    (times[times.len() / 2], checksum)
}

fn time_algorithm(algo: AlgorithmId, lines: &[Line], win: &ClipWindow, reps: usize) -> (f64, u64) {
    match algo {
        AlgorithmId::Lb => time_kernel(clip_lb, lines, win, reps),
        AlgorithmId::Sf => time_kernel(clip_sf, lines, win, reps),
        AlgorithmId::Msf => time_kernel(clip_msf, lines, win, reps),
        AlgorithmId::Msf1 => time_kernel(clip_msf1_unchecked, lines, win, reps),
        AlgorithmId::Lsa => time_kernel(clip_lsa, lines, win, reps),
    }
}

fn count_algorithm(algo: AlgorithmId, lines: &[Line], win: &ClipWindow) -> OpMeans {
    let mut total = OpCounts::default();
    for line in lines {
        let mut k = OpCounts::default();
        clip_with_unchecked(algo, line, win, &mut k);
        total += k;
    }
    OpMeans::from_total(total, lines.len())
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    cfg.validate()?;
    let algorithms = cfg.algorithm_set();
    let win = cfg.window;
    let mut rows = Vec::with_capacity(cfg.scenarios.len() * algorithms.len());

    for &scenario in &cfg.scenarios {
        let batch = gen_batch(scenario, cfg.seed, cfg.n, &win)?;
        let mut measured = Vec::with_capacity(algorithms.len());
        for &algo in &algorithms {
            let forced = algo == AlgorithmId::Msf1 && scenario.is_axis_parallel();
            if forced && !cfg.force_msf1 {
                measured.push((algo, None));
                continue;
            }
            let (seconds, checksum) = time_algorithm(algo, &batch.lines, &win, cfg.repetitions);
            let ops = count_algorithm(algo, &batch.lines, &win);
            measured.push((algo, Some((seconds, checksum, ops, forced))));
        }
        let t_lb = measured
            .iter()
            .find(|(a, _)| *a == AlgorithmId::Lb)
            .and_then(|(_, m)| m.map(|m| m.0))
            .expect("LB is always measured");
        for (algo, m) in measured {
            let cell = m.map(|(seconds, checksum, ops, forced)| BenchCell {
                ns_per_line: seconds * 1e9 / batch.len() as f64,
                v: if algo == AlgorithmId::Lb { 1.0 } else { efficiency(t_lb, seconds) },
                ops,
                checksum,
                forced,
            });
            rows.push(BenchRow { scenario, algorithm: algo, cell });
        }
    }

    Ok(BenchReport {
        scenarios: cfg.scenarios.clone(),
        algorithms,
        rows,
        n: cfg.n,
        repetitions: cfg.repetitions,
        seed: cfg.seed,
        window: win,
        meta: BenchMeta::capture(),
    })
}

/// Shortest decimal of `v` rounded to three places.
fn num(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

const NA: &str = "n/a";

// Column order of the coefficient table: the three measured columns of the
// historical table first, then SF.
const V_COLUMNS: [AlgorithmId; 4] =
    [AlgorithmId::Lsa, AlgorithmId::Msf, AlgorithmId::Msf1, AlgorithmId::Sf];

pub fn render_report(report: &BenchReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Markdown => render_markdown(report),
    }
}

fn render_csv(report: &BenchReport) -> String {
    let mut out = String::from(
        "scenario,algorithm,ns_per_line,v,divisions,multiplications,sign_tests,intersections\n",
    );
    for row in &report.rows {
        let fields = match &row.cell {
            Some(c) => [
                num(c.ns_per_line),
                num(c.v),
                num(c.ops.divisions),
                num(c.ops.multiplications),
                num(c.ops.sign_tests),
                num(c.ops.intersections_computed),
            ],
            None => std::array::from_fn(|_| NA.to_string()),
        };
        let _ = writeln!(out, "{},{},{}", row.scenario, row.algorithm, fields.join(","));
    }
    out
}

fn render_markdown(report: &BenchReport) -> String {
    let v_cols: Vec<AlgorithmId> =
        V_COLUMNS.into_iter().filter(|a| report.algorithms.contains(a)).collect();
    let t_cols = &report.algorithms;

    let mut header = vec!["Case".to_string()];
    header.extend(v_cols.iter().map(|a| format!("v_{}", a.label())));
    header.extend(t_cols.iter().map(|a| format!("T_{} ns", a.label())));
    header.push("checksum".into());

    let mut out = String::new();
    table_line(&mut out, &header);
    let mut rule = vec!["---".to_string()];
    rule.extend(std::iter::repeat_n("---:".to_string(), header.len() - 2));
    rule.push("---".into());
    table_line(&mut out, &rule);

    for &s in &report.scenarios {
        let mut cells = vec![s.to_string()];
        cells.extend(v_cols.iter().map(|&a| report.cell(s, a).map_or(NA.into(), |c| num(c.v))));
        cells.extend(
            t_cols.iter().map(|&a| report.cell(s, a).map_or(NA.into(), |c| num(c.ns_per_line))),
        );
        cells.push(report.agreed_checksum(s).map_or("mismatch".into(), |h| format!("{h:016x}")));
        table_line(&mut out, &cells);
    }

    out.push_str("\nMean divisions / intersections per line:\n\n");
    let mut header = vec!["Case".to_string()];
    header.extend(t_cols.iter().map(|a| a.label().to_string()));
    table_line(&mut out, &header);
    let mut rule = vec!["---".to_string()];
    rule.extend(std::iter::repeat_n("---:".to_string(), t_cols.len()));
    table_line(&mut out, &rule);
    for &s in &report.scenarios {
        let mut cells = vec![s.to_string()];
        cells.extend(t_cols.iter().map(|&a| {
            report.cell(s, a).map_or(NA.into(), |c| {
                format!("{} / {}", num(c.ops.divisions), num(c.ops.intersections_computed))
            })
        }));
        table_line(&mut out, &cells);
    }

    let w = &report.window;
    let _ = writeln!(
        out,
        "\nn = {} lines per scenario, median of {} passes, seed {}, window ({},{},{},{}); {}; unix time {}",
        report.n,
        report.repetitions,
        report.seed,
        w.x_min(),
        w.y_min(),
        w.x_max(),
        w.y_max(),
        report.meta.build,
        report.meta.timestamp_unix,
    );
    out
}

fn table_line(out: &mut String, cells: &[String]) {
    out.push('|');
    for c in cells {
        out.push(' ');
        out.push_str(c);
        out.push_str(" |");
    }
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn unit_window() -> ClipWindow {
        ClipWindow::new(-1.0, -1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn config_validation() {
        let mut cfg = BenchConfig::new(unit_window());
        cfg.scenarios.clear();
        assert_eq!(run_bench(&cfg), Err(BenchError::EmptyScenarios));
        let mut cfg = BenchConfig::new(unit_window());
        cfg.algorithms.clear();
        assert_eq!(run_bench(&cfg), Err(BenchError::EmptyAlgorithms));
        let mut cfg = BenchConfig::new(unit_window());
        cfg.repetitions = 2;
        assert_eq!(run_bench(&cfg), Err(BenchError::TooFewRepetitions(2)));
        let mut cfg = BenchConfig::new(unit_window());
        cfg.n = 0;
        assert_eq!(run_bench(&cfg), Err(BenchError::EmptyBatch));
    }

    #[test]
    fn lb_is_always_the_reference() {
        let mut cfg = BenchConfig::new(unit_window());
        cfg.algorithms = vec![AlgorithmId::Msf];
        cfg.scenarios = vec![ScenarioId::P2];
        cfg.n = 200;
        cfg.repetitions = 3;
        let r = run_bench(&cfg).unwrap();
        assert_eq!(r.algorithms, vec![AlgorithmId::Lb, AlgorithmId::Msf]);
        assert_eq!(r.cell(ScenarioId::P2, AlgorithmId::Lb).unwrap().v, 1.0);
    }

    #[test]
    fn msf1_excluded_on_axis_parallel_unless_forced() {
        let mut cfg = BenchConfig::new(unit_window());
        cfg.scenarios = vec![ScenarioId::P9];
        cfg.n = 100;
        cfg.repetitions = 3;
        let r = run_bench(&cfg).unwrap();
        assert!(r.cell(ScenarioId::P9, AlgorithmId::Msf1).is_none());
        assert!(r.agreed_checksum(ScenarioId::P9).is_some());

        cfg.force_msf1 = true;
        let r = run_bench(&cfg).unwrap();
        let c = r.cell(ScenarioId::P9, AlgorithmId::Msf1).unwrap();
        assert!(c.forced);
        assert!(r.agreed_checksum(ScenarioId::P9).is_some());
    }

    #[test]
    fn coefficient_is_time_ratio() {
        assert_eq!(efficiency(2.0, 1.0), 2.0);
        assert_eq!(efficiency(3.0, 3.0), 1.0);
    }

    #[test]
    fn outcome_hash_ignores_endpoint_order() {
        let a = ClipOutcome::Accepted { p: Point::new(0.0, 1.0), q: Point::new(9.0, 10.0) };
        let b = ClipOutcome::Accepted { p: Point::new(9.0, 10.0), q: Point::new(0.0, 1.0) };
        assert_eq!(outcome_checksum([&a]), outcome_checksum([&b]));
        assert_ne!(outcome_checksum([&a]), outcome_checksum([&ClipOutcome::Rejected]));
    }

    #[test]
    fn csv_row_format() {
        let report = BenchReport {
            scenarios: vec![ScenarioId::P1, ScenarioId::P9],
            algorithms: vec![AlgorithmId::Lb, AlgorithmId::Msf, AlgorithmId::Msf1],
            rows: vec![
                BenchRow {
                    scenario: ScenarioId::P1,
                    algorithm: AlgorithmId::Msf,
                    cell: Some(BenchCell {
                        ns_per_line: 12.5,
                        v: 1.6,
                        ops: OpMeans {
                            divisions: 2.0,
                            multiplications: 9.0,
                            sign_tests: 5.0,
                            intersections_computed: 2.0,
                        },
                        checksum: 7,
                        forced: false,
                    }),
                },
                BenchRow { scenario: ScenarioId::P9, algorithm: AlgorithmId::Msf1, cell: None },
            ],
            n: 1,
            repetitions: 3,
            seed: 0,
            window: unit_window(),
            meta: BenchMeta { timestamp_unix: 0, build: "test".into() },
        };
        let csv = render_report(&report, ReportFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "scenario,algorithm,ns_per_line,v,divisions,multiplications,sign_tests,intersections"
        );
        assert_eq!(lines[1], "P1,msf,12.5,1.6,2,9,5,2");
        assert_eq!(lines[2], "P9,msf1,n/a,n/a,n/a,n/a,n/a,n/a");
    }

    #[test]
    fn number_formatting() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(1.23456), "1.235");
        assert_eq!(num(-0.0001), "0");
    }
}
