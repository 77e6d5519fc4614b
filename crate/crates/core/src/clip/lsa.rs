use super::{finalize_outcome, ClipOutcome, Tally};
use crate::geometry::{ClipWindow, Line, Point};

/// Where a crossing of one boundary line falls relative to the window's
/// extent along that line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Span {
    Below,
    Inside,
    Above,
}

#[inline]
fn locate<T: Tally>(u: f64, lo: f64, hi: f64, tally: &mut T) -> Span {
    tally.test(1);
    if u < lo {
        return Span::Below;
    }
    tally.test(1);
    if u > hi {
        Span::Above
    } else {
        Span::Inside
    }
}

/// Direction-comparison clipper.
///
/// Comparing `|dy|*w` with `|dx|*h` tells whether the line is steeper than
/// the window diagonal. A steep line cannot cross both vertical edges, so
/// the horizontal boundary lines are tried first; a shallow line tries the
/// vertical ones first (ties go to the shallow branch).
///
/// Whether a crossing of a boundary line falls inside the window's extent
/// is decided by comparing the line direction against the directions from
/// `A` to the window bounds (cross products, no division). Only the two
/// output points are then evaluated, one division each.
pub(super) fn clip<T: Tally>(line: &Line, win: &ClipWindow, tally: &mut T) -> ClipOutcome {
    let a = line.a();
    let b = line.b();
    let (x_min, y_min, x_max, y_max) = (win.x_min(), win.y_min(), win.x_max(), win.y_max());
    let (w, h) = (win.width(), win.height());

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

    tally.mul(2);
    tally.test(1);
    if dy.abs() * w > dx.abs() * h {
        // Steep. Orient the direction upwards; the line is unchanged.
        tally.test(1);
        let (dx, dy) = if dy < 0.0 { (-dx, -dy) } else { (dx, dy) };
        // x of the crossing with y = Y is a.x + (Y - a.y)*dx/dy; scaled by
        // dy these are compared against (X - a.x)*dy.
        let u_bot = (y_min - a.y) * dx;
        let u_top = u_bot + h * dx;
        let lo = (x_min - a.x) * dy;
        let hi = lo + w * dy;
        tally.mul(4);

        let bot = locate(u_bot, lo, hi, tally);
        let top = locate(u_top, lo, hi, tally);
        tally.test(1);
        if bot == top && bot != Span::Inside {
            return ClipOutcome::Rejected;
        }
        let end = |u: f64, y: f64, span: Span, tally: &mut T| {
            tally.div(1);
            tally.intersection(1);
            match span {
                Span::Inside => Point::new(a.x + u / dy, y),
                Span::Below => Point::new(x_min, a.y + lo / dx),
                Span::Above => Point::new(x_max, a.y + hi / dx),
            }
        };
        let p = end(u_bot, y_min, bot, tally);
        let q = end(u_top, y_max, top, tally);
        finalize_outcome(p, q, win)
    } else {
        // Shallow. Orient the direction rightwards.
        tally.test(1);
        let (dx, dy) = if dx < 0.0 { (-dx, -dy) } else { (dx, dy) };
        let v_left = (x_min - a.x) * dy;
        let v_right = v_left + w * dy;
        let lo = (y_min - a.y) * dx;
        let hi = lo + h * dx;
        tally.mul(4);

        let left = locate(v_left, lo, hi, tally);
        let right = locate(v_right, lo, hi, tally);
        tally.test(1);
        if left == right && left != Span::Inside {
            return ClipOutcome::Rejected;
        }
        let end = |v: f64, x: f64, span: Span, tally: &mut T| {
            tally.div(1);
            tally.intersection(1);
            match span {
                Span::Inside => Point::new(x, a.y + v / dx),
                Span::Below => Point::new(a.x + lo / dy, y_min),
                Span::Above => Point::new(a.x + hi / dy, y_max),
            }
        };
        let p = end(v_left, x_min, left, tally);
        let q = end(v_right, x_max, right, tally);
        finalize_outcome(p, q, win)
    }
}
