//! Core value types and the separation-function machinery.
//!
//! Window convention used everywhere in this crate:
//!
//! ```text
//!          e1 (top)
//!   V1 ---------------- V2      V1 = (x_min, y_max)   V2 = (x_max, y_max)
//!    |                  |       V4 = (x_min, y_min)   V3 = (x_max, y_min)
//!  e4|                  |e2
//!    |                  |
//!   V4 ---------------- V3
//!         e3 (bottom)
//! ```
//!
//! The separation function of a line through `A` and `B` is
//! `F(x, y) = a*x + b*y + c` with `a = dy`, `b = -dx`, `c = x_B*y_A - x_A*y_B`.
//! Its values at the four corners are the vertex codes `c1..c4`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("line defining points coincide")]
    DegenerateLine,
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("clip window must satisfy x_min < x_max and y_min < y_max")]
    InvalidWindow,
    #[error("line is parallel to the requested edge")]
    AxisParallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An infinite line through two distinct finite points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    a: Point,
    b: Point,
}

impl Line {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if a == b {
            return Err(GeomError::DegenerateLine);
        }
        Ok(Line { a, b })
    }

    pub fn from_coords(xa: f64, ya: f64, xb: f64, yb: f64) -> Result<Self, GeomError> {
        Line::new(Point::new(xa, ya), Point::new(xb, yb))
    }

    #[inline]
    pub fn a(&self) -> Point {
        self.a
    }

    #[inline]
    pub fn b(&self) -> Point {
        self.b
    }

    /// Same line, defining points swapped.
    pub fn reversed(&self) -> Line {
        Line { a: self.b, b: self.a }
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Result<Line, GeomError> {
        Line::new(self.a.translate(dx, dy), self.b.translate(dx, dy))
    }

    #[inline]
    pub fn is_axis_parallel(&self) -> bool {
        self.a.x == self.b.x || self.a.y == self.b.y
    }
}

/// Coefficients of the separation function, plus the anchor point `A`
/// needed by the fused corner-code form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineCoefficients {
    pub dx: f64,
    pub dy: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub anchor: Point,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClipWindow {
    x_min: f64,
    y_min: f64,
    x_max: f64,
    y_max: f64,
    w: f64,
    h: f64,
}

impl ClipWindow {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Result<Self, GeomError> {
        if ![x_min, y_min, x_max, y_max].iter().all(|v| v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if !(x_min < x_max && y_min < y_max) {
            return Err(GeomError::InvalidWindow);
        }
        Ok(ClipWindow { x_min, y_min, x_max, y_max, w: x_max - x_min, h: y_max - y_min })
    }

    #[inline]
    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    #[inline]
    pub fn y_min(&self) -> f64 {
        self.y_min
    }
    #[inline]
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    #[inline]
    pub fn y_max(&self) -> f64 {
        self.y_max
    }
    #[inline]
    pub fn width(&self) -> f64 {
        self.w
    }
    #[inline]
    pub fn height(&self) -> f64 {
        self.h
    }

    pub fn diagonal(&self) -> f64 {
        self.w.hypot(self.h)
    }

    /// Corners in V1..V4 order (top-left, top-right, bottom-right, bottom-left).
    pub fn vertices(&self) -> [Point; 4] {
        [
            Point::new(self.x_min, self.y_max),
            Point::new(self.x_max, self.y_max),
            Point::new(self.x_max, self.y_min),
            Point::new(self.x_min, self.y_min),
        ]
    }

    /// Edge endpoints, `(start, end)`, following the V1 -> V2 -> V3 -> V4 walk.
    pub fn edge_segment(&self, edge: EdgeId) -> (Point, Point) {
        let v = self.vertices();
        match edge {
            EdgeId::Top => (v[0], v[1]),
            EdgeId::Right => (v[1], v[2]),
            EdgeId::Bottom => (v[2], v[3]),
            EdgeId::Left => (v[3], v[0]),
        }
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Result<ClipWindow, GeomError> {
        ClipWindow::new(self.x_min + dx, self.y_min + dy, self.x_max + dx, self.y_max + dy)
    }

    /// Closed-rectangle containment with a slack of `tol` on every side.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        p.x >= self.x_min - tol
            && p.x <= self.x_max + tol
            && p.y >= self.y_min - tol
            && p.y <= self.y_max + tol
    }

    /// Distance from `p` to the nearest of the four boundary lines.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        (p.x - self.x_min)
            .abs()
            .min((p.x - self.x_max).abs())
            .min((p.y - self.y_min).abs())
            .min((p.y - self.y_max).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexCodes {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl VertexCodes {
    pub fn as_array(&self) -> [f64; 4] {
        [self.c1, self.c2, self.c3, self.c4]
    }

    pub fn has_zero(&self) -> bool {
        self.as_array().contains(&0.0)
    }
}

impl std::ops::Neg for VertexCodes {
    type Output = VertexCodes;
    fn neg(self) -> VertexCodes {
        VertexCodes { c1: -self.c1, c2: -self.c2, c3: -self.c3, c4: -self.c4 }
    }
}

/// The seven sign-pattern categories of a line against the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 7] = [
        CaseLabel::A,
        CaseLabel::B,
        CaseLabel::C,
        CaseLabel::D,
        CaseLabel::E,
        CaseLabel::F,
        CaseLabel::G,
    ];

    /// The two edges the line crosses in this case, or `None` for the reject case.
    pub fn edges(self) -> Option<(EdgeId, EdgeId)> {
        use EdgeId::*;
        match self {
            CaseLabel::A => Some((Right, Bottom)),
            CaseLabel::B => Some((Top, Left)),
            CaseLabel::C => Some((Right, Left)),
            CaseLabel::D => Some((Top, Bottom)),
            CaseLabel::E => Some((Right, Top)),
            CaseLabel::F => None,
            CaseLabel::G => Some((Bottom, Left)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeId {
    /// e1, V1V2
    Top,
    /// e2, V2V3
    Right,
    /// e3, V3V4
    Bottom,
    /// e4, V4V1
    Left,
}

impl EdgeId {
    pub const ALL: [EdgeId; 4] = [EdgeId::Top, EdgeId::Right, EdgeId::Bottom, EdgeId::Left];
}

pub fn line_coefficients(line: &Line) -> LineCoefficients {
    let (pa, pb) = (line.a(), line.b());
    let dx = pb.x - pa.x;
    let dy = pb.y - pa.y;
    LineCoefficients { dx, dy, a: dy, b: -dx, c: pb.x * pa.y - pa.x * pb.y, anchor: pa }
}

#[inline]
pub fn separation_value(coeffs: &LineCoefficients, p: Point) -> f64 {
    coeffs.a * p.x + coeffs.b * p.y + coeffs.c
}

/// Corner codes by the direct formulas `c_i = dy*x - dx*y + c`.
pub fn vertex_codes_direct(coeffs: &LineCoefficients, win: &ClipWindow) -> VertexCodes {
    let &LineCoefficients { dx, dy, c, .. } = coeffs;
    VertexCodes {
        c1: dy * win.x_min - dx * win.y_max + c,
        c2: dy * win.x_max - dx * win.y_max + c,
        c3: dy * win.x_max - dx * win.y_min + c,
        c4: dy * win.x_min - dx * win.y_min + c,
    }
}

/// Corner codes from the fused `c1` and the window width/height increments.
pub fn vertex_codes_incremental(coeffs: &LineCoefficients, win: &ClipWindow) -> VertexCodes {
    let &LineCoefficients { dx, dy, anchor, .. } = coeffs;
    let c1 = dy * (win.x_min - anchor.x) - dx * (win.y_max - anchor.y);
    let c2 = c1 + dy * win.w;
    VertexCodes { c1, c2, c3: c2 + dx * win.h, c4: c1 + dx * win.h }
}

/// Strict-inequality decision tree; zero products fall through to the else arm.
pub fn classify_case(codes: &VertexCodes) -> CaseLabel {
    let &VertexCodes { c1, c2, c3, c4 } = codes;
    if c1 * c3 < 0.0 {
        if c2 * c4 > 0.0 {
            if c1 * c2 > 0.0 {
                CaseLabel::A
            } else {
                CaseLabel::B
            }
        } else if c1 * c2 > 0.0 {
            CaseLabel::C
        } else {
            CaseLabel::D
        }
    } else if c1 * c2 < 0.0 {
        CaseLabel::E
    } else if c1 * c4 > 0.0 {
        CaseLabel::F
    } else {
        CaseLabel::G
    }
}

/// Intersection of the line with the boundary line carrying `edge`, read off
/// the vertex codes.
pub fn edge_intersection(
    coeffs: &LineCoefficients,
    codes: &VertexCodes,
    win: &ClipWindow,
    edge: EdgeId,
) -> Result<Point, GeomError> {
    let &LineCoefficients { dx, dy, .. } = coeffs;
    let needs_dy = matches!(edge, EdgeId::Top | EdgeId::Bottom);
    if (needs_dy && dy == 0.0) || (!needs_dy && dx == 0.0) {
        return Err(GeomError::AxisParallel);
    }
    Ok(match edge {
        EdgeId::Top => Point::new(win.x_min - codes.c1 / dy, win.y_max),
        EdgeId::Right => Point::new(win.x_max, win.y_max + codes.c2 / dx),
        EdgeId::Bottom => Point::new(win.x_min - codes.c4 / dy, win.y_min),
        EdgeId::Left => Point::new(win.x_min, win.y_max + codes.c1 / dx),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win10() -> ClipWindow {
        ClipWindow::new(0.0, 0.0, 10.0, 10.0).unwrap()
    }

    fn coeffs(xa: f64, ya: f64, xb: f64, yb: f64) -> LineCoefficients {
        line_coefficients(&Line::from_coords(xa, ya, xb, yb).unwrap())
    }

    // Independent corner evaluation for the code tests: F(V) written out from
    // the two-point form (x - x_A)*dy - (y - y_A)*dx.
    fn brute_codes(xa: f64, ya: f64, xb: f64, yb: f64, win: &ClipWindow) -> [f64; 4] {
        let (dx, dy) = (xb - xa, yb - ya);
        win.vertices().map(|v| (v.x - xa) * dy - (v.y - ya) * dx)
    }

    #[test]
    fn coefficients_examples() {
        let k = coeffs(0.0, 0.0, 1.0, 1.0);
        assert_eq!((k.dx, k.dy, k.a, k.b, k.c), (1.0, 1.0, 1.0, -1.0, 0.0));

        let k = coeffs(2.0, 3.0, 5.0, 7.0);
        assert_eq!((k.dx, k.dy, k.a, k.b, k.c), (3.0, 4.0, 4.0, -3.0, 1.0));
        assert_eq!(separation_value(&k, Point::new(2.0, 3.0)), 0.0);
        assert_eq!(separation_value(&k, Point::new(5.0, 7.0)), 0.0);

        let k = coeffs(1.0, 0.0, 0.0, 1.0);
        assert_eq!((k.dx, k.dy, k.a, k.b, k.c), (-1.0, 1.0, 1.0, 1.0, -1.0));
        assert_eq!(separation_value(&k, Point::new(1.0, 0.0)), 0.0);
        assert_eq!(separation_value(&k, Point::new(0.0, 1.0)), 0.0);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert_eq!(Line::from_coords(1.0, 1.0, 1.0, 1.0), Err(GeomError::DegenerateLine));
        assert_eq!(Line::from_coords(f64::NAN, 1.0, 1.0, 1.0), Err(GeomError::NonFinite));
        assert_eq!(ClipWindow::new(0.0, 0.0, 0.0, 1.0), Err(GeomError::InvalidWindow));
        assert_eq!(ClipWindow::new(0.0, 2.0, 1.0, 1.0), Err(GeomError::InvalidWindow));
        assert_eq!(ClipWindow::new(0.0, 0.0, f64::INFINITY, 1.0), Err(GeomError::NonFinite));
    }

    #[test]
    fn separation_examples() {
        let k = coeffs(0.0, 0.0, 1.0, 1.0);
        assert_eq!(separation_value(&k, Point::new(5.0, 5.0)), 0.0);
        let k = coeffs(0.0, 1.0, 1.0, 2.0);
        assert_eq!((k.a, k.b, k.c), (1.0, -1.0, 1.0));
        assert_eq!(separation_value(&k, Point::new(0.0, 10.0)), -9.0);
        assert_eq!(separation_value(&k, Point::new(10.0, 0.0)), 11.0);
    }

    #[test]
    fn direct_codes_examples() {
        let w = win10();
        let cases = [
            ((0.0, 1.0, 1.0, 2.0), [-9.0, 1.0, 11.0, 1.0]),
            ((5.0, 0.0, 6.0, 1.0), [-15.0, -5.0, 5.0, -5.0]),
            ((0.0, 0.0, 1.0, 1.0), [-10.0, 0.0, 10.0, 0.0]),
        ];
        for ((xa, ya, xb, yb), expected) in cases {
            assert_eq!(brute_codes(xa, ya, xb, yb, &w), expected);
            let got = vertex_codes_direct(&coeffs(xa, ya, xb, yb), &w);
            assert_eq!(got.as_array(), expected);
        }
    }

    #[test]
    fn incremental_codes_examples() {
        let w = win10();
        let got = vertex_codes_incremental(&coeffs(0.0, 1.0, 1.0, 2.0), &w);
        assert_eq!(got.as_array(), [-9.0, 1.0, 11.0, 1.0]);

        assert_eq!(brute_codes(0.0, 5.0, 10.0, 6.0, &w), [-50.0, -40.0, 60.0, 50.0]);
        let got = vertex_codes_incremental(&coeffs(0.0, 5.0, 10.0, 6.0), &w);
        assert_eq!(got.as_array(), [-50.0, -40.0, 60.0, 50.0]);

        let got = vertex_codes_incremental(&coeffs(5.0, 0.0, 6.0, 1.0), &w);
        assert_eq!(got.c3, got.c2 + 1.0 * 10.0);
        assert_eq!(got.c3, 5.0);
    }

    #[test]
    fn classify_examples() {
        let codes = |c: [f64; 4]| VertexCodes { c1: c[0], c2: c[1], c3: c[2], c4: c[3] };
        assert_eq!(classify_case(&codes([-15.0, -5.0, 5.0, -5.0])), CaseLabel::A);
        assert_eq!(classify_case(&codes([-30.0, -20.0, -10.0, -20.0])), CaseLabel::F);
        assert_eq!(classify_case(&codes([-50.0, -40.0, 60.0, 50.0])), CaseLabel::C);
        // main diagonal: c2 = c4 = 0 falls through to the top/bottom case
        assert_eq!(classify_case(&codes([-10.0, 0.0, 10.0, 0.0])), CaseLabel::D);
        // every code zero is impossible for a real line, but the tree stays total
        assert_eq!(classify_case(&codes([0.0; 4])), CaseLabel::G);
    }

    #[test]
    fn edge_intersection_examples() {
        let w = win10();
        let k = coeffs(0.0, 1.0, 1.0, 2.0);
        let c = vertex_codes_incremental(&k, &w);
        assert_eq!(edge_intersection(&k, &c, &w, EdgeId::Top), Ok(Point::new(9.0, 10.0)));
        assert_eq!(edge_intersection(&k, &c, &w, EdgeId::Left), Ok(Point::new(0.0, 1.0)));

        let k = coeffs(10.0, 8.0, 8.0, 10.0);
        let c = vertex_codes_direct(&k, &w);
        assert_eq!(edge_intersection(&k, &c, &w, EdgeId::Right), Ok(Point::new(10.0, 8.0)));
    }

    #[test]
    fn edge_intersection_axis_parallel() {
        let w = win10();
        let k = coeffs(-5.0, 5.0, -1.0, 5.0);
        let c = vertex_codes_direct(&k, &w);
        assert_eq!(edge_intersection(&k, &c, &w, EdgeId::Top), Err(GeomError::AxisParallel));
        assert_eq!(edge_intersection(&k, &c, &w, EdgeId::Left), Ok(Point::new(0.0, 5.0)));
        let k = coeffs(3.0, 0.0, 3.0, 1.0);
        let c = vertex_codes_direct(&k, &w);
        assert_eq!(edge_intersection(&k, &c, &w, EdgeId::Right), Err(GeomError::AxisParallel));
    }

    #[test]
    fn case_edges_match_window_convention() {
        // case b: top and left, the corner at V1 is cut off
        let w = win10();
        let k = coeffs(0.0, 1.0, 1.0, 2.0);
        let c = vertex_codes_direct(&k, &w);
        assert_eq!(classify_case(&c), CaseLabel::B);
        let (e1, e2) = CaseLabel::B.edges().unwrap();
        assert_eq!((e1, e2), (EdgeId::Top, EdgeId::Left));
        assert_eq!(w.edge_segment(EdgeId::Right), (Point::new(10.0, 10.0), Point::new(10.0, 0.0)));
    }
}
