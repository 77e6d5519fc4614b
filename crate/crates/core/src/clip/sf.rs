use super::{corner_fallback, finalize_outcome, ClipOutcome, Tally};
use crate::geometry::{CaseLabel, ClipWindow, Line, Point};

/// Separation-function clipper with directly evaluated vertex codes.
///
/// Branch structure follows the original SF procedure: horizontal and
/// vertical lines are handled up front, then `c1..c3` are evaluated, `c4`
/// only on the branches that read it, and exactly the two crossings named by
/// the case are computed. A chord that fails the window check goes through
/// `corner_fallback` (only lines through a corner can change there).
pub(super) fn clip<T: Tally>(line: &Line, win: &ClipWindow, tally: &mut T) -> ClipOutcome {
    let a = line.a();
    let b = line.b();
    let (x_min, y_min, x_max, y_max) = (win.x_min(), win.y_min(), win.x_max(), win.y_max());

    let dx = b.x - a.x;
    tally.test(1);
    if dx == 0.0 {
        tally.test(2);
        if a.x < x_min || a.x > x_max {
            return ClipOutcome::Rejected;
        }
        return finalize_outcome(Point::new(a.x, y_min), Point::new(a.x, y_max), win);
    }
    let dy = b.y - a.y;
    tally.test(1);
    if dy == 0.0 {
        tally.test(2);
        if a.y < y_min || a.y > y_max {
            return ClipOutcome::Rejected;
        }
        return finalize_outcome(Point::new(x_min, a.y), Point::new(x_max, a.y), win);
    }

    let c = b.x * a.y - a.x * b.y;
    let c1 = dy * x_min - dx * y_max + c;
    let c2 = dy * x_max - dx * y_max + c;
    let c3 = dy * x_max - dx * y_min + c;
    tally.mul(8);

    // (start, end) of the clipped chord
    let (p, q);
    tally.mul(1);
    tally.test(1);
    if c1 * c3 < 0.0 {
        let c4 = dy * x_min - dx * y_min + c;
        tally.mul(4);
        tally.test(2);
        if c2 * c4 > 0.0 {
            if c1 * c2 > 0.0 {
                tally.case(CaseLabel::A);
                q = Point::new(x_max, a.y + (x_max - a.x) * dy / dx);
                p = Point::new(a.x + (y_min - a.y) * dx / dy, y_min);
            } else {
                tally.case(CaseLabel::B);
                q = Point::new(a.x + (y_max - a.y) * dx / dy, y_max);
                p = Point::new(x_min, a.y + (x_min - a.x) * dy / dx);
            }
            tally.mul(2);
            tally.div(2);
        } else {
            if c1 * c2 > 0.0 {
                tally.case(CaseLabel::C);
                let t = dy / dx;
                q = Point::new(x_max, a.y + (x_max - a.x) * t);
                p = Point::new(x_min, a.y + (x_min - a.x) * t);
            } else {
                tally.case(CaseLabel::D);
                let t = dx / dy;
                q = Point::new(a.x + (y_max - a.y) * t, y_max);
                p = Point::new(a.x + (y_min - a.y) * t, y_min);
            }
            tally.mul(2);
            tally.div(1);
        }
        tally.intersection(2);
    } else {
        tally.mul(1);
        tally.test(1);
        if c1 * c2 < 0.0 {
            tally.case(CaseLabel::E);
            q = Point::new(x_max, a.y + (x_max - a.x) * dy / dx);
            p = Point::new(a.x + (y_max - a.y) * dx / dy, y_max);
        } else {
            let c4 = dy * x_min - dx * y_min + c;
            tally.mul(3);
            tally.test(1);
            if c1 * c4 > 0.0 {
                tally.case(CaseLabel::F);
                return ClipOutcome::Rejected;
            }
            tally.case(CaseLabel::G);
            q = Point::new(a.x + (y_min - a.y) * dx / dy, y_min);
            p = Point::new(x_min, a.y + (x_min - a.x) * dy / dx);
        }
        tally.mul(2);
        tally.div(2);
        tally.intersection(2);
    }
    match finalize_outcome(p, q, win) {
        ClipOutcome::Rejected => corner_fallback(line, win, tally),
        accepted => accepted,
    }
}
