//! Arithmetic tallies for the clippers.
//!
//! Every clipper is written once, generic over [`Tally`]. The uncounted entry
//! points use [`NoTally`], whose methods compile away, so a counted run
//! executes exactly the same floating-point operations as an uncounted one.
//!
//! Counting rules:
//! - `multiplications`: every `*` on coordinates or codes, including the
//!   products formed only to test a sign.
//! - `divisions`: every `/`, including reciprocals.
//! - `sign_tests`: every comparison that decides a branch (against zero or
//!   against a window bound).
//! - `intersections_computed`: every boundary crossing whose location was
//!   evaluated, either as a coordinate or as a line parameter.

use std::ops::AddAssign;

use crate::geometry::CaseLabel;

pub trait Tally {
    fn mul(&mut self, n: u64);
    fn div(&mut self, n: u64);
    fn test(&mut self, n: u64);
    fn intersection(&mut self, n: u64);
    /// Records which case branch a code-based clipper took.
    fn case(&mut self, _label: CaseLabel) {}
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoTally;

impl Tally for NoTally {
    #[inline(always)]
    fn mul(&mut self, _: u64) {}
    #[inline(always)]
    fn div(&mut self, _: u64) {}
    #[inline(always)]
    fn test(&mut self, _: u64) {}
    #[inline(always)]
    fn intersection(&mut self, _: u64) {}
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub divisions: u64,
    pub multiplications: u64,
    pub sign_tests: u64,
    pub intersections_computed: u64,
}

impl Tally for OpCounts {
    #[inline]
    fn mul(&mut self, n: u64) {
        self.multiplications += n;
    }
    #[inline]
    fn div(&mut self, n: u64) {
        self.divisions += n;
    }
    #[inline]
    fn test(&mut self, n: u64) {
        self.sign_tests += n;
    }
    #[inline]
    fn intersection(&mut self, n: u64) {
        self.intersections_computed += n;
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: OpCounts) {
        self.divisions += rhs.divisions;
        self.multiplications += rhs.multiplications;
        self.sign_tests += rhs.sign_tests;
        self.intersections_computed += rhs.intersections_computed;
    }
}

/// Per-line averages of [`OpCounts`] over a batch.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OpMeans {
    pub divisions: f64,
    pub multiplications: f64,
    pub sign_tests: f64,
    pub intersections_computed: f64,
}

impl OpMeans {
    pub fn from_total(total: OpCounts, lines: usize) -> OpMeans {
        let n = lines.max(1) as f64;
        OpMeans {
            divisions: total.divisions as f64 / n,
            multiplications: total.multiplications as f64 / n,
            sign_tests: total.sign_tests as f64 / n,
            intersections_computed: total.intersections_computed as f64 / n,
        }
    }
}

/// Records the case label alongside the counts (test and diagnostics use).
#[derive(Debug, Clone, Copy, Default)]
pub struct CaseProbe {
    pub counts: OpCounts,
    pub case: Option<CaseLabel>,
}

impl Tally for CaseProbe {
    fn mul(&mut self, n: u64) {
        self.counts.mul(n)
    }
    fn div(&mut self, n: u64) {
        self.counts.div(n)
    }
    fn test(&mut self, n: u64) {
        self.counts.test(n)
    }
    fn intersection(&mut self, n: u64) {
        self.counts.intersection(n)
    }
    fn case(&mut self, label: CaseLabel) {
        self.case = Some(label);
    }
}
