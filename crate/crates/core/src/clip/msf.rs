use super::{corner_fallback, finalize_outcome, ClipOutcome, Tally};
use crate::geometry::{CaseLabel, ClipWindow, Line, Point};

/// Modified SF clipper. `AXIS_TESTS = false` is MSF-1: the horizontal and
/// vertical pre-tests are compiled out and nothing else changes.
///
/// Differences from SF: `c1` is formed in one step relative to `A`, the
/// other codes are increments of `c1` by `dy*w` and `dx*h`, the top-level
/// test uses `c1 * (c2 + dx*h)` in place of `c1 * c3`, and every crossing is
/// read off a code (`x_min - c/dy` on horizontal edges, `y_max + c/dx` on
/// vertical edges).
pub(super) fn clip<T: Tally, const AXIS_TESTS: bool>(
    line: &Line,
    win: &ClipWindow,
    tally: &mut T,
) -> ClipOutcome {
    let a = line.a();
    let b = line.b();
    let (x_min, y_min, x_max, y_max) = (win.x_min(), win.y_min(), win.x_max(), win.y_max());
    let (w, h) = (win.width(), win.height());

    let dx = b.x - a.x;
    if AXIS_TESTS {
        tally.test(1);
        if dx == 0.0 {
            tally.test(2);
            if a.x < x_min || a.x > x_max {
                return ClipOutcome::Rejected;
            }
            return finalize_outcome(Point::new(a.x, y_min), Point::new(a.x, y_max), win);
        }
    }
    let dy = b.y - a.y;
    if AXIS_TESTS {
        tally.test(1);
        if dy == 0.0 {
            tally.test(2);
            if a.y < y_min || a.y > y_max {
                return ClipOutcome::Rejected;
            }
            return finalize_outcome(Point::new(x_min, a.y), Point::new(x_max, a.y), win);
        }
    }

    let c1 = dy * (x_min - a.x) - dx * (y_max - a.y);
    let c2 = c1 + dy * w;
    tally.mul(3);

    let (p, q);
    tally.mul(2);
    tally.test(1);
    if c1 * (c2 + dx * h) < 0.0 {
        let c4 = c1 + dx * h;
        tally.mul(2);
        tally.test(2);
        if c2 * c4 > 0.0 {
            tally.mul(1);
            if c1 * c2 > 0.0 {
                tally.case(CaseLabel::A);
                q = Point::new(x_max, y_max + c2 / dx);
                p = Point::new(x_min - c4 / dy, y_min);
            } else {
                tally.case(CaseLabel::B);
                q = Point::new(x_min - c1 / dy, y_max);
                p = Point::new(x_min, y_max + c1 / dx);
            }
            tally.div(2);
        } else {
            tally.mul(3);
            if c1 * c2 > 0.0 {
                tally.case(CaseLabel::C);
                let t = 1.0 / dx;
                q = Point::new(x_max, y_max + c2 * t);
                p = Point::new(x_min, y_max + c1 * t);
            } else {
                tally.case(CaseLabel::D);
                let t = 1.0 / dy;
                q = Point::new(x_min - c1 * t, y_max);
                p = Point::new(x_min - c4 * t, y_min);
            }
            tally.div(1);
        }
        tally.intersection(2);
    } else {
        tally.mul(1);
        tally.test(1);
        if c1 * c2 < 0.0 {
            tally.case(CaseLabel::E);
            q = Point::new(x_max, y_max + c2 / dx);
            p = Point::new(x_min - c1 / dy, y_max);
        } else {
            let c4 = c1 + dx * h;
            tally.mul(2);
            tally.test(1);
            if c1 * c4 > 0.0 {
                tally.case(CaseLabel::F);
                return ClipOutcome::Rejected;
            }
            tally.case(CaseLabel::G);
            q = Point::new(x_min - c4 / dy, y_min);
            p = Point::new(x_min, y_max + c1 / dx);
        }
        tally.div(2);
        tally.intersection(2);
    }
    match finalize_outcome(p, q, win) {
        ClipOutcome::Rejected => corner_fallback(line, win, tally),
        accepted => accepted,
    }
}
