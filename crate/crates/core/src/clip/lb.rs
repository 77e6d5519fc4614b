use super::{finalize_outcome, ClipOutcome, Tally};
use crate::geometry::{ClipWindow, Line, Point};

/// Liang-Barsky for an infinite line: `t` starts unbounded and every
/// boundary with a nonzero direction component curtails it. No early exit
/// between boundaries, so an oblique line always pays four divisions.
pub(super) fn clip<T: Tally>(line: &Line, win: &ClipWindow, tally: &mut T) -> ClipOutcome {
    let a = line.a();
    let b = line.b();
    let dx = b.x - a.x;
    let dy = b.y - a.y;

    let p = [-dx, dx, -dy, dy];
    let q = [a.x - win.x_min(), win.x_max() - a.x, a.y - win.y_min(), win.y_max() - a.y];

    let mut t_min = f64::NEG_INFINITY;
    let mut t_max = f64::INFINITY;
    for i in 0..4 {
        tally.test(1);
        if p[i] != 0.0 {
            let r = q[i] / p[i];
            tally.div(1);
            tally.intersection(1);
            tally.test(2);
            if p[i] < 0.0 {
                if r > t_min {
                    t_min = r;
                }
            } else if r < t_max {
                t_max = r;
            }
        } else {
            tally.test(1);
            if q[i] < 0.0 {
                return ClipOutcome::Rejected;
            }
        }
    }

    tally.test(1);
    if t_min > t_max {
        return ClipOutcome::Rejected;
    }
    tally.mul(4);
    let start = Point::new(a.x + t_min * dx, a.y + t_min * dy);
    let end = Point::new(a.x + t_max * dx, a.y + t_max * dy);
    finalize_outcome(start, end, win)
}
