//! Independent numerical reference routines for the fnn test suites.
//!
//! Nothing in here knows about the engine types: every function works on
//! plain closures and point slices, so the test suites can check closed-form
//! results against brute-force numerics that share no code path with the
//! implementation under test.

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// `tol` is an absolute error budget for the whole interval; recursion stops
/// when the Richardson estimate of the local error is below the local share
/// of the budget, or at a depth of 40 subdivisions.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson_rule(a, b, fa, fm, fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 40)
}

fn simpson_rule(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(a, m, fa, flm, fm);
    let right = simpson_rule(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Signed area of a closed polygon by the shoelace formula.
///
/// The polygon is implicitly closed (last vertex joins back to the first).
pub fn shoelace_area(points: &[(f64, f64)]) -> f64 {
    let n = points.len();
    let mut twice_area = 0.0;
    for i in 0..n {
        let (x0, y0) = points[i];
        let (x1, y1) = points[(i + 1) % n];
        twice_area += x0 * y1 - x1 * y0;
    }
    0.5 * twice_area
}

/// Central finite difference of `f` at `x` with step `h`.
pub fn central_diff<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Arc length of a parametric curve over `[a, b]`, with the speed taken from
/// central finite differences of the point function itself.
pub fn arc_length_fd<F: Fn(f64) -> (f64, f64)>(point: &F, a: f64, b: f64, tol: f64) -> f64 {
    let h = 1e-6;
    let speed = |t: f64| {
        let (x0, y0) = point(t - h);
        let (x1, y1) = point(t + h);
        ((x1 - x0) / (2.0 * h)).hypot((y1 - y0) / (2.0 * h))
    };
    adaptive_simpson(&speed, a, b, tol)
}

/// Distance between `a` and `b` on a circle of circumference `period`.
pub fn circular_diff(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn simpson_integrates_sine() {
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn shoelace_unit_square() {
        let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        assert!((shoelace_area(&square) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fd_arc_length_of_circle() {
        let circ = arc_length_fd(&|t: f64| (t.cos(), t.sin()), 0.0, TAU, 1e-10);
        assert!((circ - TAU).abs() < 1e-7);
    }

    #[test]
    fn circular_diff_wraps() {
        assert!(circular_diff(0.001, TAU - 0.001, TAU) - 0.002 < 1e-12);
        assert!((circular_diff(1.0, 1.0, TAU)).abs() < 1e-15);
    }
}
