//! Seeded line generators for the twelve benchmark scenarios.
//!
//! | id      | lines                                                        |
//! |---------|--------------------------------------------------------------|
//! | P1..P7  | oblique lines whose vertex codes classify as case A..G       |
//! | P8      | horizontal, `y` inside `(y_min, y_max)`                      |
//! | P9      | horizontal, `y` outside the window, within one height        |
//! | P10     | vertical, `x` outside the window, within one width           |
//! | P11     | vertical, `x` inside `(x_min, x_max)`                        |
//! | P12     | per-line uniform choice among P8..P11                        |
//!
//! Randomness is ChaCha8 seeded with `seed` via `seed_from_u64`, with the
//! scenario index selecting the stream. A `u64` becomes a unit value as
//! `(u >> 11) * 2^-53`, so batches are bit-identical on every platform.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::geometry::{
    classify_case, line_coefficients, vertex_codes_direct, CaseLabel, ClipWindow, GeomError, Line,
};

/// Rejection-sampling give-up point, per accepted line.
pub const MAX_ATTEMPTS_PER_LINE: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WorkloadError {
    #[error("batch size must be at least 1")]
    EmptyBatch,
    #[error("{scenario}: rejection sampling exceeded {attempts} attempts for line {index}")]
    NonTerminating { scenario: ScenarioId, index: usize, attempts: u64 },
    #[error("line {line_no}: {reason}")]
    Parse { line_no: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScenarioId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
    P12,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 12] = [
        ScenarioId::P1,
        ScenarioId::P2,
        ScenarioId::P3,
        ScenarioId::P4,
        ScenarioId::P5,
        ScenarioId::P6,
        ScenarioId::P7,
        ScenarioId::P8,
        ScenarioId::P9,
        ScenarioId::P10,
        ScenarioId::P11,
        ScenarioId::P12,
    ];

    pub const COMMON: [ScenarioId; 7] = [
        ScenarioId::P1,
        ScenarioId::P2,
        ScenarioId::P3,
        ScenarioId::P4,
        ScenarioId::P5,
        ScenarioId::P6,
        ScenarioId::P7,
    ];

    /// 1-based scenario number.
    pub fn number(self) -> u64 {
        self as u64 + 1
    }

    /// The case label every line of a common-case scenario classifies to.
    pub fn target_case(self) -> Option<CaseLabel> {
        let n = self as usize;
        CaseLabel::ALL.get(n).copied()
    }

    /// P8..P12 produce only horizontal or vertical lines.
    pub fn is_axis_parallel(self) -> bool {
        self.target_case().is_none()
    }

    /// Membership predicate for lines of this scenario, evaluated from
    /// scratch (used to re-verify batches).
    pub fn admits(self, line: &Line, win: &ClipWindow) -> bool {
        let (a, b) = (line.a(), line.b());
        let horizontal = a.y == b.y;
        let vertical = a.x == b.x;
        let y_in = a.y > win.y_min() && a.y < win.y_max();
        let x_in = a.x > win.x_min() && a.x < win.x_max();
        let y_out = (a.y < win.y_min() && a.y >= win.y_min() - win.height())
            || (a.y > win.y_max() && a.y <= win.y_max() + win.height());
        let x_out = (a.x < win.x_min() && a.x >= win.x_min() - win.width())
            || (a.x > win.x_max() && a.x <= win.x_max() + win.width());
        match self {
            ScenarioId::P8 => horizontal && y_in,
            ScenarioId::P9 => horizontal && y_out,
            ScenarioId::P10 => vertical && x_out,
            ScenarioId::P11 => vertical && x_in,
            ScenarioId::P12 => (horizontal && (y_in || y_out)) || (vertical && (x_in || x_out)),
            common => {
                let codes = vertex_codes_direct(&line_coefficients(line), win);
                !horizontal
                    && !vertical
                    && !codes.has_zero()
                    && Some(classify_case(&codes)) == common.target_case()
            }
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.number())
    }
}

impl FromStr for ScenarioId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digits = t.strip_prefix(['P', 'p']).unwrap_or(t);
        match digits.parse::<usize>() {
            Ok(n @ 1..=12) => Ok(ScenarioId::ALL[n - 1]),
            _ => Err(format!("unknown scenario `{t}` (expected P1..P12)")),
        }
    }
}

/// Uniform sampler over the fixed ChaCha8 stream.
#[derive(Debug, Clone)]
pub struct UnitRng {
    inner: ChaCha8Rng,
}

impl UnitRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        UnitRng { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform in the open interval `(lo, hi)`.
    pub fn open_range(&mut self, lo: f64, hi: f64) -> f64 {
        loop {
            let v = self.range(lo, hi);
            if v > lo && v < hi {
                return v;
            }
        }
    }

    pub fn index(&mut self, n: u64) -> u64 {
        // n is tiny here; modulo bias is irrelevant but the mapping must be fixed
        self.next_u64() % n
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineBatch {
    pub scenario: ScenarioId,
    pub seed: u64,
    pub lines: Vec<Line>,
    pub checksum: u64,
}

impl LineBatch {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// One record per line, `x_A y_A x_B y_B`, shortest round-trip decimals.
    pub fn to_text(&self) -> String {
        lines_to_text(&self.lines)
    }
}

pub fn lines_to_text(lines: &[Line]) -> String {
    let mut out = String::with_capacity(lines.len() * 48);
    for l in lines {
        let (a, b) = (l.a(), l.b());
        out.push_str(&format!("{} {} {} {}\n", a.x, a.y, b.x, b.y));
    }
    out
}

/// Parses one `x_A y_A x_B y_B` record. Blank lines and `#` comments give `Ok(None)`.
pub fn parse_record(text: &str) -> Result<Option<Line>, String> {
    let body = text.split('#').next().unwrap_or("").trim();
    if body.is_empty() {
        return Ok(None);
    }
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(format!("expected 4 numbers, found {}", fields.len()));
    }
    let mut v = [0.0; 4];
    for (slot, f) in v.iter_mut().zip(&fields) {
        *slot = f.parse::<f64>().map_err(|e| format!("`{f}`: {e}"))?;
    }
    Line::from_coords(v[0], v[1], v[2], v[3]).map(Some).map_err(|e: GeomError| e.to_string())
}

pub fn parse_lines(text: &str) -> Result<Vec<Line>, WorkloadError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        match parse_record(raw) {
            Ok(Some(l)) => out.push(l),
            Ok(None) => {}
            Err(reason) => return Err(WorkloadError::Parse { line_no: i + 1, reason }),
        }
    }
    Ok(out)
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a.
#[derive(Debug, Clone, Copy)]
pub struct Fnv64(u64);

impl Default for Fnv64 {
    fn default() -> Self {
        Fnv64(FNV_OFFSET)
    }
}

impl Fnv64 {
    pub fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(FNV_PRIME);
        }
    }

    pub fn write_u64(&mut self, v: u64) {
        self.write(&v.to_le_bytes());
    }

    pub fn write_f64(&mut self, v: f64) {
        self.write_u64(v.to_bits());
    }

    pub fn finish(&self) -> u64 {
        self.0
    }
}

/// FNV-1a over the IEEE bit patterns of every coordinate, in batch order.
pub fn batch_checksum(lines: &[Line]) -> u64 {
    let mut h = Fnv64::default();
    for l in lines {
        let (a, b) = (l.a(), l.b());
        for v in [a.x, a.y, b.x, b.y] {
            h.write_f64(v);
        }
    }
    h.finish()
}

pub fn gen_batch(
    scenario: ScenarioId,
    seed: u64,
    n: usize,
    win: &ClipWindow,
) -> Result<LineBatch, WorkloadError> {
    if n == 0 {
        return Err(WorkloadError::EmptyBatch);
    }
    let mut rng = UnitRng::new(seed, scenario.number());
    let mut lines = Vec::with_capacity(n);
    for index in 0..n {
        let line = match scenario.target_case() {
            Some(target) => {
                sample_case(&mut rng, win, target).ok_or(WorkloadError::NonTerminating {
                    scenario,
                    index,
                    attempts: MAX_ATTEMPTS_PER_LINE,
                })?
            }
            None => sample_axis_parallel(&mut rng, win, scenario),
        };
        lines.push(line);
    }
    let checksum = batch_checksum(&lines);
    Ok(LineBatch { scenario, seed, lines, checksum })
}

/// Draws from the box enlarged by one window size on each side.
fn sample_box_line(rng: &mut UnitRng, win: &ClipWindow) -> Option<Line> {
    let (x0, x1) = (win.x_min() - win.width(), win.x_max() + win.width());
    let (y0, y1) = (win.y_min() - win.height(), win.y_max() + win.height());
    let xa = rng.range(x0, x1);
    let ya = rng.range(y0, y1);
    let xb = rng.range(x0, x1);
    let yb = rng.range(y0, y1);
    Line::from_coords(xa, ya, xb, yb).ok()
}

/// Unconstrained draw from the enclosing box, also used for coverage checks.
pub fn sample_unconstrained(rng: &mut UnitRng, win: &ClipWindow) -> Line {
    loop {
        if let Some(l) = sample_box_line(rng, win) {
            return l;
        }
    }
}

fn sample_case(rng: &mut UnitRng, win: &ClipWindow, target: CaseLabel) -> Option<Line> {
    for _ in 0..MAX_ATTEMPTS_PER_LINE {
        let Some(line) = sample_box_line(rng, win) else { continue };
        if line.is_axis_parallel() {
            continue;
        }
        let codes = vertex_codes_direct(&line_coefficients(&line), win);
        if codes.has_zero() {
            continue;
        }
        if classify_case(&codes) == target {
            return Some(line);
        }
    }
    None
}

fn sample_axis_parallel(rng: &mut UnitRng, win: &ClipWindow, scenario: ScenarioId) -> Line {
    let kind = match scenario {
        ScenarioId::P12 => ScenarioId::ALL[7 + rng.index(4) as usize],
        s => s,
    };
    let (x0, x1) = (win.x_min() - win.width(), win.x_max() + win.width());
    let (y0, y1) = (win.y_min() - win.height(), win.y_max() + win.height());
    loop {
        let line = match kind {
            ScenarioId::P8 => {
                let y = rng.open_range(win.y_min(), win.y_max());
                Line::from_coords(rng.range(x0, x1), y, rng.range(x0, x1), y)
            }
            ScenarioId::P9 => {
                let y = outside(rng, win.y_min(), win.y_max(), win.height());
                Line::from_coords(rng.range(x0, x1), y, rng.range(x0, x1), y)
            }
            ScenarioId::P10 => {
                let x = outside(rng, win.x_min(), win.x_max(), win.width());
                Line::from_coords(x, rng.range(y0, y1), x, rng.range(y0, y1))
            }
            ScenarioId::P11 => {
                let x = rng.open_range(win.x_min(), win.x_max());
                Line::from_coords(x, rng.range(y0, y1), x, rng.range(y0, y1))
            }
            _ => unreachable!("common-case scenarios are sampled by case"),
        };
        if let Ok(l) = line {
            return l;
        }
    }
}

/// A value in `[lo - span, lo)` or `(hi, hi + span]`, side chosen uniformly.
fn outside(rng: &mut UnitRng, lo: f64, hi: f64, span: f64) -> f64 {
    let below = rng.next_u64() & 1 == 0;
    loop {
        let offset = span * (1.0 - rng.unit()); // (0, span]
        let v = if below { lo - offset } else { hi + offset };
        if v < lo || v > hi {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win10() -> ClipWindow {
        ClipWindow::new(0.0, 0.0, 10.0, 10.0).unwrap()
    }

    #[test]
    fn scenario_names() {
        assert_eq!("P7".parse::<ScenarioId>(), Ok(ScenarioId::P7));
        assert_eq!("p12".parse::<ScenarioId>(), Ok(ScenarioId::P12));
        assert_eq!("3".parse::<ScenarioId>(), Ok(ScenarioId::P3));
        assert!("P13".parse::<ScenarioId>().is_err());
        assert!("P0".parse::<ScenarioId>().is_err());
        assert_eq!(ScenarioId::P10.to_string(), "P10");
        assert_eq!(ScenarioId::P6.target_case(), Some(CaseLabel::F));
        assert_eq!(ScenarioId::P8.target_case(), None);
    }

    #[test]
    fn p6_lines_are_rejects() {
        let batch = gen_batch(ScenarioId::P6, 99, 100, &win10()).unwrap();
        for l in &batch.lines {
            let c = vertex_codes_direct(&line_coefficients(l), &win10()).as_array();
            assert!(c.iter().all(|&v| v > 0.0) || c.iter().all(|&v| v < 0.0));
        }
    }

    #[test]
    fn p8_lines_horizontal_inside() {
        let batch = gen_batch(ScenarioId::P8, 1, 100, &win10()).unwrap();
        for l in &batch.lines {
            assert_eq!(l.a().y, l.b().y);
            assert!(l.a().y > 0.0 && l.a().y < 10.0);
        }
    }

    #[test]
    fn empty_batch_is_an_error() {
        assert_eq!(gen_batch(ScenarioId::P1, 1, 0, &win10()), Err(WorkloadError::EmptyBatch));
    }

    #[test]
    fn unit_conversion_is_fixed() {
        let mut rng = UnitRng::new(5, 0);
        let mut again = UnitRng::new(5, 0);
        let u = rng.next_u64();
        assert_eq!(again.unit(), (u >> 11) as f64 / 9007199254740992.0);
        let mut other_stream = UnitRng::new(5, 1);
        assert_ne!(other_stream.next_u64(), u);
    }

    #[test]
    fn record_parsing() {
        assert_eq!(parse_record("   # comment"), Ok(None));
        assert_eq!(parse_record(""), Ok(None));
        let l = parse_record("0 1 1 2 # trailing").unwrap().unwrap();
        assert_eq!(l, Line::from_coords(0.0, 1.0, 1.0, 2.0).unwrap());
        assert!(parse_record("0 1 1").is_err());
        assert!(parse_record("0 1 1 x").is_err());
        assert!(parse_record("1 1 1 1").is_err());
        let err = parse_lines("0 0 1 1\nbad\n").unwrap_err();
        assert!(matches!(err, WorkloadError::Parse { line_no: 2, .. }));
    }

    #[test]
    fn text_export_round_trips() {
        let batch = gen_batch(ScenarioId::P3, 17, 50, &win10()).unwrap();
        let back = parse_lines(&batch.to_text()).unwrap();
        assert_eq!(back, batch.lines);
        assert_eq!(batch_checksum(&back), batch.checksum);
    }

    #[test]
    fn fnv_reference_vector() {
        let mut h = Fnv64::default();
        h.write(b"a");
        assert_eq!(h.finish(), 0xaf63dc4c8601ec8c);
    }
}
