//! The five clippers and their shared outcome contract.
//!
//! | id     | algorithm                                              |
//! |--------|--------------------------------------------------------|
//! | `lb`   | Liang-Barsky for infinite lines                        |
//! | `sf`   | separation-function clipper, direct vertex codes      |
//! | `msf`  | SF with incremental codes and code-derived crossings   |
//! | `msf1` | MSF without the horizontal/vertical pre-tests          |
//! | `lsa`  | dominant-edge-family clipper driven by direction tests |
//!
//! Every clipper routes its raw endpoints through [`finalize_outcome`].

mod lb;
mod lsa;
mod msf;
mod sf;
pub mod tally;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::{
    edge_intersection, line_coefficients, vertex_codes_incremental, CaseLabel, ClipWindow,
    GeomError, Line, Point,
};
pub use tally::{CaseProbe, NoTally, OpCounts, OpMeans, Tally};

/// Relative geometric tolerance; multiply by the window diagonal.
pub const EPS_GEOM: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClipOutcome {
    Rejected,
    /// Unordered pair of chord endpoints on the window boundary.
    Accepted {
        p: Point,
        q: Point,
    },
}

impl ClipOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ClipOutcome::Accepted { .. })
    }

    pub fn endpoints(&self) -> Option<(Point, Point)> {
        match *self {
            ClipOutcome::Accepted { p, q } => Some((p, q)),
            ClipOutcome::Rejected => None,
        }
    }
}

impl fmt::Display for ClipOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClipOutcome::Rejected => f.write_str("REJECT"),
            ClipOutcome::Accepted { p, q } => write!(f, "ACCEPT {} {} {} {}", p.x, p.y, q.x, q.y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ClipError {
    #[error("line defining points coincide")]
    DegenerateLine,
    #[error("MSF-1 requires a line that is neither horizontal nor vertical")]
    AxisParallelNotSupported,
}

impl From<GeomError> for ClipError {
    fn from(_: GeomError) -> Self {
        ClipError::DegenerateLine
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmId {
    Lb,
    Sf,
    Msf,
    Msf1,
    Lsa,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 5] =
        [AlgorithmId::Lb, AlgorithmId::Sf, AlgorithmId::Msf, AlgorithmId::Msf1, AlgorithmId::Lsa];

    /// Lower-case identifier used on the command line and in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Lb => "lb",
            AlgorithmId::Sf => "sf",
            AlgorithmId::Msf => "msf",
            AlgorithmId::Msf1 => "msf1",
            AlgorithmId::Lsa => "lsa",
        }
    }

    /// Display label, e.g. `MSF-1`.
    pub fn label(self) -> &'static str {
        match self {
            AlgorithmId::Lb => "LB",
            AlgorithmId::Sf => "SF",
            AlgorithmId::Msf => "MSF",
            AlgorithmId::Msf1 => "MSF-1",
            AlgorithmId::Lsa => "LSA",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lb" => Ok(AlgorithmId::Lb),
            "sf" => Ok(AlgorithmId::Sf),
            "msf" => Ok(AlgorithmId::Msf),
            "msf1" | "msf-1" => Ok(AlgorithmId::Msf1),
            "lsa" => Ok(AlgorithmId::Lsa),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// Normalizes raw chord endpoints.
///
/// Rejects when either endpoint lies outside the window by more than
/// `EPS_GEOM * diagonal` (non-finite endpoints count as outside), or when the
/// chord is no longer than that tolerance.
pub fn finalize_outcome(raw_p: Point, raw_q: Point, win: &ClipWindow) -> ClipOutcome {
    let tol = EPS_GEOM * win.diagonal();
    if !win.contains(raw_p, tol) || !win.contains(raw_q, tol) {
        return ClipOutcome::Rejected;
    }
    if raw_p.distance(&raw_q) <= tol {
        return ClipOutcome::Rejected;
    }
    ClipOutcome::Accepted { p: raw_p, q: raw_q }
}

/// Recovery for the separation-function clippers when a case arm produced
/// an invalid chord.
///
/// The strict product tests send a zero vertex code (the line passes exactly
/// through a corner) to the else arm, which can name an edge the line never
/// reaches. Here each code is classified by its sign bit instead, so a zero
/// code counts as positive: the case of an infinitesimally shifted line. The
/// crossing on the edge next to the zero corner then evaluates to the corner
/// itself. Without a zero code the arm's rejection was genuine.
#[cold]
pub(crate) fn corner_fallback<T: Tally>(
    line: &Line,
    win: &ClipWindow,
    tally: &mut T,
) -> ClipOutcome {
    let coeffs = line_coefficients(line);
    if coeffs.dx == 0.0 || coeffs.dy == 0.0 {
        return ClipOutcome::Rejected;
    }
    let codes = vertex_codes_incremental(&coeffs, win);
    tally.mul(7);
    tally.test(4);
    if !codes.has_zero() {
        return ClipOutcome::Rejected;
    }
    let neg = codes.as_array().map(|c| c < 0.0);
    let opp = |i: usize, j: usize| neg[i] != neg[j];
    tally.test(3);
    let case = if opp(0, 2) {
        match (opp(1, 3), opp(0, 1)) {
            (false, false) => CaseLabel::A,
            (false, true) => CaseLabel::B,
            (true, false) => CaseLabel::C,
            (true, true) => CaseLabel::D,
        }
    } else if opp(0, 1) {
        CaseLabel::E
    } else if !opp(0, 3) {
        CaseLabel::F
    } else {
        CaseLabel::G
    };
    tally.case(case);
    let Some((e1, e2)) = case.edges() else {
        return ClipOutcome::Rejected;
    };
    tally.div(2);
    tally.intersection(2);
    match (edge_intersection(&coeffs, &codes, win, e1), edge_intersection(&coeffs, &codes, win, e2))
    {
        (Ok(p), Ok(q)) => finalize_outcome(p, q, win),
        _ => ClipOutcome::Rejected,
    }
}

pub fn clip_lb(line: &Line, win: &ClipWindow) -> ClipOutcome {
    lb::clip(line, win, &mut NoTally)
}

pub fn clip_sf(line: &Line, win: &ClipWindow) -> ClipOutcome {
    sf::clip(line, win, &mut NoTally)
}

pub fn clip_msf(line: &Line, win: &ClipWindow) -> ClipOutcome {
    msf::clip::<_, true>(line, win, &mut NoTally)
}

/// MSF without the horizontal/vertical pre-tests.
///
/// Axis-parallel input is refused with [`ClipError::AxisParallelNotSupported`].
pub fn clip_msf1(line: &Line, win: &ClipWindow) -> Result<ClipOutcome, ClipError> {
    if line.is_axis_parallel() {
        return Err(ClipError::AxisParallelNotSupported);
    }
    Ok(msf::clip::<_, false>(line, win, &mut NoTally))
}

/// The bare MSF-1 kernel with no precondition check at all.
///
/// For lines that are neither horizontal nor vertical this is exactly
/// [`clip_msf1`]. For axis-parallel lines it divides by zero and the result
/// is meaningless (it never panics). Used by the benchmark on batches whose
/// lines are known to be oblique.
pub fn clip_msf1_unchecked(line: &Line, win: &ClipWindow) -> ClipOutcome {
    msf::clip::<_, false>(line, win, &mut NoTally)
}

pub fn clip_lsa(line: &Line, win: &ClipWindow) -> ClipOutcome {
    lsa::clip(line, win, &mut NoTally)
}

pub fn clip(algo: AlgorithmId, line: &Line, win: &ClipWindow) -> Result<ClipOutcome, ClipError> {
    clip_with(algo, line, win, &mut NoTally)
}

/// Runs `algo` with an arbitrary tally attached.
pub fn clip_with<T: Tally>(
    algo: AlgorithmId,
    line: &Line,
    win: &ClipWindow,
    tally: &mut T,
) -> Result<ClipOutcome, ClipError> {
    Ok(match algo {
        AlgorithmId::Lb => lb::clip(line, win, tally),
        AlgorithmId::Sf => sf::clip(line, win, tally),
        AlgorithmId::Msf => msf::clip::<_, true>(line, win, tally),
        AlgorithmId::Msf1 => {
            if line.is_axis_parallel() {
                return Err(ClipError::AxisParallelNotSupported);
            }
            msf::clip::<_, false>(line, win, tally)
        }
        AlgorithmId::Lsa => lsa::clip(line, win, tally),
    })
}

/// Like [`clip_with`], but MSF-1 runs its bare kernel even on axis-parallel
/// lines.
pub(crate) fn clip_with_unchecked<T: Tally>(
    algo: AlgorithmId,
    line: &Line,
    win: &ClipWindow,
    tally: &mut T,
) -> ClipOutcome {
    match algo {
        AlgorithmId::Msf1 => msf::clip::<_, false>(line, win, tally),
        other => clip_with(other, line, win, tally).expect("only MSF-1 can refuse a line"),
    }
}

pub fn clip_counted(
    algo: AlgorithmId,
    line: &Line,
    win: &ClipWindow,
) -> Result<(ClipOutcome, OpCounts), ClipError> {
    let mut counts = OpCounts::default();
    let outcome = clip_with(algo, line, win, &mut counts)?;
    Ok((outcome, counts))
}
