//! Brute-force oracle and the differential harness.
//!
//! The oracle never forms line coefficients or vertex codes. It intersects
//! the line with each of the four edge segments by solving the 2x2 system
//! `A + t(B - A) = P0 + s(P1 - P0)` and keeps the solutions with `s` in the
//! closed unit interval.

use crate::clip::{clip, finalize_outcome, AlgorithmId, ClipError, ClipOutcome, EPS_GEOM};
use crate::exec::{map_chunks, Execution};
use crate::geometry::{ClipWindow, EdgeId, Line, Point};
use crate::workload::{gen_batch, ScenarioId, WorkloadError};

/// Failures retained in a report.
pub const MAX_FAILURES: usize = 16;

// Slack on the edge parameter so a crossing that lands on a corner is not
// lost to round-off on both adjacent edges.
const EDGE_PARAM_SLACK: f64 = 1e-12;

fn cross(ux: f64, uy: f64, vx: f64, vy: f64) -> f64 {
    ux * vy - uy * vx
}

pub fn clip_oracle(line: &Line, win: &ClipWindow) -> ClipOutcome {
    let a = line.a();
    let b = line.b();
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let tol = EPS_GEOM * win.diagonal();

    let mut hits: Vec<Point> = Vec::with_capacity(8);
    for edge in EdgeId::ALL {
        let (p0, p1) = win.edge_segment(edge);
        let (ex, ey) = (p1.x - p0.x, p1.y - p0.y);
        let (wx, wy) = (p0.x - a.x, p0.y - a.y);
        let denom = cross(dx, dy, ex, ey);
        if denom == 0.0 {
            if cross(wx, wy, dx, dy) == 0.0 {
                // collinear with the edge: the whole edge
                hits.push(p0);
                hits.push(p1);
            }
            continue;
        }
        let s = cross(wx, wy, dx, dy) / denom;
        if (-EDGE_PARAM_SLACK..=1.0 + EDGE_PARAM_SLACK).contains(&s) {
            let s = s.clamp(0.0, 1.0);
            hits.push(Point::new(p0.x + s * ex, p0.y + s * ey));
        }
    }

    let mut distinct: Vec<Point> = Vec::with_capacity(4);
    for h in hits {
        if distinct.iter().all(|d| d.distance(&h) > tol) {
            distinct.push(h);
        }
    }
    if distinct.len() < 2 {
        return ClipOutcome::Rejected;
    }
    let mut best = (distinct[0], distinct[1]);
    for (i, p) in distinct.iter().enumerate() {
        for q in &distinct[i + 1..] {
            if p.distance(q) > best.0.distance(&best.1) {
                best = (*p, *q);
            }
        }
    }
    finalize_outcome(best.0, best.1, win)
}

/// Largest endpoint distance under the better of the two pairings, or
/// `None` unless both outcomes are accepted.
pub fn endpoint_deviation(o1: &ClipOutcome, o2: &ClipOutcome) -> Option<f64> {
    let ((p1, q1), (p2, q2)) = (o1.endpoints()?, o2.endpoints()?);
    let straight = p1.distance(&p2).max(q1.distance(&q2));
    let crossed = p1.distance(&q2).max(q1.distance(&p2));
    Some(straight.min(crossed))
}

pub fn outcomes_equal(o1: &ClipOutcome, o2: &ClipOutcome, tol: f64) -> bool {
    match (o1, o2) {
        (ClipOutcome::Rejected, ClipOutcome::Rejected) => true,
        (ClipOutcome::Accepted { .. }, ClipOutcome::Accepted { .. }) => {
            endpoint_deviation(o1, o2).is_some_and(|d| d <= tol)
        }
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub index: usize,
    pub line: Line,
    pub window: ClipWindow,
    pub algorithm: AlgorithmId,
    pub expected: ClipOutcome,
    pub got: Result<ClipOutcome, ClipError>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmTally {
    pub algorithm: AlgorithmId,
    pub total: u64,
    pub matches: u64,
    pub mismatches: u64,
    pub degenerate_skips: u64,
    pub max_endpoint_deviation: f64,
}

impl AlgorithmTally {
    fn new(algorithm: AlgorithmId) -> Self {
        AlgorithmTally {
            algorithm,
            total: 0,
            matches: 0,
            mismatches: 0,
            degenerate_skips: 0,
            max_endpoint_deviation: 0.0,
        }
    }

    fn merge(&mut self, other: &AlgorithmTally) {
        debug_assert_eq!(self.algorithm, other.algorithm);
        self.total += other.total;
        self.matches += other.matches;
        self.mismatches += other.mismatches;
        self.degenerate_skips += other.degenerate_skips;
        self.max_endpoint_deviation = self.max_endpoint_deviation.max(other.max_endpoint_deviation);
    }
}

/// Outcome of comparing a set of algorithms against the oracle.
///
/// `total` counts (line, algorithm) comparisons; each lands in exactly one of
/// `matches`, `mismatches` or `degenerate_skips` (MSF-1 on axis-parallel
/// lines).
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub lines: u64,
    pub total: u64,
    pub matches: u64,
    pub mismatches: u64,
    pub degenerate_skips: u64,
    pub max_endpoint_deviation: f64,
    pub per_algorithm: Vec<AlgorithmTally>,
    pub first_failures: Vec<Failure>,
}

impl VerifyReport {
    fn empty(algos: &[AlgorithmId]) -> Self {
        VerifyReport {
            lines: 0,
            total: 0,
            matches: 0,
            mismatches: 0,
            degenerate_skips: 0,
            max_endpoint_deviation: 0.0,
            per_algorithm: algos.iter().map(|&a| AlgorithmTally::new(a)).collect(),
            first_failures: Vec::new(),
        }
    }

    fn tally_mut(&mut self, algo: AlgorithmId) -> &mut AlgorithmTally {
        self.per_algorithm
            .iter_mut()
            .find(|t| t.algorithm == algo)
            .expect("algorithm registered in report")
    }

    pub fn tally(&self, algo: AlgorithmId) -> Option<&AlgorithmTally> {
        self.per_algorithm.iter().find(|t| t.algorithm == algo)
    }

    /// Appends `other`, which must cover later line indices.
    pub fn merge(&mut self, other: VerifyReport) {
        self.lines += other.lines;
        self.total += other.total;
        self.matches += other.matches;
        self.mismatches += other.mismatches;
        self.degenerate_skips += other.degenerate_skips;
        self.max_endpoint_deviation = self.max_endpoint_deviation.max(other.max_endpoint_deviation);
        for t in &other.per_algorithm {
            match self.per_algorithm.iter_mut().find(|s| s.algorithm == t.algorithm) {
                Some(s) => s.merge(t),
                None => self.per_algorithm.push(*t),
            }
        }
        let room = MAX_FAILURES.saturating_sub(self.first_failures.len());
        self.first_failures.extend(other.first_failures.into_iter().take(room));
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches == 0
    }
}

fn verify_chunk(
    start: usize,
    lines: &[Line],
    win: &ClipWindow,
    algos: &[AlgorithmId],
) -> VerifyReport {
    let tol = EPS_GEOM * win.diagonal();
    let mut report = VerifyReport::empty(algos);
    for (offset, line) in lines.iter().enumerate() {
        let expected = clip_oracle(line, win);
        report.lines += 1;
        for &algo in algos {
            report.total += 1;
            let got = clip(algo, line, win);
            let tally = report.tally_mut(algo);
            tally.total += 1;
            let outcome = match got {
                Err(ClipError::AxisParallelNotSupported)
                    if algo == AlgorithmId::Msf1 && line.is_axis_parallel() =>
                {
                    tally.degenerate_skips += 1;
                    report.degenerate_skips += 1;
                    continue;
                }
                Err(_) => None,
                Ok(o) => Some(o),
            };
            let dev = outcome.and_then(|o| endpoint_deviation(&expected, &o));
            if let Some(d) = dev {
                tally.max_endpoint_deviation = tally.max_endpoint_deviation.max(d);
                report.max_endpoint_deviation = report.max_endpoint_deviation.max(d);
            }
            let ok = outcome.is_some_and(|o| outcomes_equal(&expected, &o, tol));
            let tally = report.tally_mut(algo);
            if ok {
                tally.matches += 1;
                report.matches += 1;
            } else {
                tally.mismatches += 1;
                report.mismatches += 1;
                if report.first_failures.len() < MAX_FAILURES {
                    report.first_failures.push(Failure {
                        index: start + offset,
                        line: *line,
                        window: *win,
                        algorithm: algo,
                        expected,
                        got,
                    });
                }
            }
        }
    }
    report
}

/// Differential check of `algos` against the oracle over `lines`.
pub fn verify_lines(
    lines: &[Line],
    win: &ClipWindow,
    algos: &[AlgorithmId],
    exec: Execution,
) -> VerifyReport {
    let parts = map_chunks(lines, exec, |start, chunk| verify_chunk(start, chunk, win, algos));
    let mut report = VerifyReport::empty(algos);
    for part in parts {
        report.merge(part);
    }
    report
}

/// Generates a scenario batch and checks all five algorithms against the oracle.
pub fn verify_batch(
    scenario: ScenarioId,
    seed: u64,
    n: usize,
    win: &ClipWindow,
) -> Result<VerifyReport, WorkloadError> {
    verify_batch_with(scenario, seed, n, win, Execution::default())
}

pub fn verify_batch_with(
    scenario: ScenarioId,
    seed: u64,
    n: usize,
    win: &ClipWindow,
    exec: Execution,
) -> Result<VerifyReport, WorkloadError> {
    let batch = gen_batch(scenario, seed, n, win)?;
    Ok(verify_lines(&batch.lines, win, &AlgorithmId::ALL, exec))
}
