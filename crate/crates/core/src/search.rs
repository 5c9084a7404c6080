//! Derivative-free bounded minimisation for piecewise smooth objectives.
//!
//! A uniform grid brackets every discrete local minimum (including the
//! endpoints), and golden-section search refines each bracket.

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_ITERATIONS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Candidate {
    pub x: f64,
    pub value: f64,
    pub at_boundary: bool,
}

/// Golden-section search on `[a, b]`, stopping once the bracket is no wider
/// than `tol`. Returns the bracket midpoint and its value.
pub(crate) fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_ITERATIONS {
        if b - a <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Root of a continuous `f` with a sign change on `[a, b]`, to width `tol`.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Option<f64> {
    let fa = f(a);
    if fa == 0.0 {
        return Some(a);
    }
    if fa.signum() == f(b).signum() {
        return None;
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (a + b);
        if b - a <= tol || mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}

/// All local minima of `f` on `[lo, hi]` found by bracketing on a grid of
/// `grid_points` samples, sorted by `x`.
pub(crate) fn local_minima(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    grid_points: usize,
    tol: f64,
) -> Vec<Candidate> {
    debug_assert!(grid_points >= 3 && hi > lo);
    let last = grid_points - 1;
    let xs: Vec<f64> = (0..grid_points)
        .map(|i| {
            if i == last {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last as f64
            }
        })
        .collect();
    let values: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    let mut found: Vec<Candidate> = Vec::new();
    if values[0] <= values[1] {
        found.push(refine_at_end(&f, xs[0], xs[1], tol, true));
    }
    for i in 1..last {
        // strict on the left so a flat run yields a single bracket
        if values[i] < values[i - 1] && values[i] <= values[i + 1] {
            let (x, value) = golden_section(&f, xs[i - 1], xs[i + 1], tol);
            found.push(Candidate {
                x,
                value,
                at_boundary: x - lo <= tol || hi - x <= tol,
            });
        }
    }
    if values[last] < values[last - 1] {
        found.push(refine_at_end(&f, xs[last - 1], xs[last], tol, false));
    }

    found.sort_by(|a, b| a.x.total_cmp(&b.x));
    let mut merged: Vec<Candidate> = Vec::with_capacity(found.len());
    for c in found {
        match merged.last_mut() {
            Some(prev) if (c.x - prev.x).abs() <= 2.0 * tol => {
                if c.value < prev.value {
                    *prev = c;
                }
            }
            _ => merged.push(c),
        }
    }
    merged
}

fn refine_at_end(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, left: bool) -> Candidate {
    let end = if left { a } else { b };
    let end_value = f(end);
    let (x, value) = golden_section(&f, a, b, tol);
    if end_value <= value {
        Candidate {
            x: end,
            value: end_value,
            at_boundary: true,
        }
    } else {
        Candidate {
            x,
            value,
            at_boundary: (x - end).abs() <= tol,
        }
    }
}

/// Index of the smallest value; values within `tie` of each other go to the
/// smaller `x`.
pub(crate) fn global_index(candidates: &[Candidate], tie: f64) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in candidates.iter().enumerate() {
        best = match best {
            None => Some(i),
            Some(b) => {
                let cur = &candidates[b];
                let better = c.value < cur.value - tie
                    || ((c.value - cur.value).abs() <= tie && c.x < cur.x);
                Some(if better { i } else { b })
            }
        };
    }
    best
}
