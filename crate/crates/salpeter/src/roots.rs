//! Bracketed root refinement and one-dimensional minimization.

use crate::error::SalpeterError;
use crate::Result;

/// Find a root of `f` in the bracket [lo, hi] to absolute tolerance `tol`.
///
/// The endpoints must straddle a sign change. Each iteration proposes a
/// secant step from the current bracket endpoints and falls back to bisection
/// whenever the proposal leaves the bracket or fails to shrink it quickly
/// enough, so convergence is guaranteed and typically superlinear.
pub fn bisect_secant<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(SalpeterError::domain("bisect_secant", format!("invalid bracket [{lo}, {hi}]")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SalpeterError::domain("bisect_secant", format!("invalid tolerance {tol}")));
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(SalpeterError::domain(
            "bisect_secant",
            format!("no sign change on [{lo}, {hi}]: f(lo) = {fa:.3e}, f(hi) = {fb:.3e}"),
        ));
    }

    for _ in 0..max_iter {
        let width = b - a;
        if width <= tol {
            // Return the endpoint with the smaller residual.
            return Ok(if fa.abs() <= fb.abs() { a } else { b });
        }
        // Secant proposal from the bracket endpoints.
        let mut x = b - fb * width / (fb - fa);
        // Demand real progress from the endpoints; otherwise bisect.
        let margin = 0.01 * width;
        if !x.is_finite() || x <= a + margin || x >= b - margin {
            x = a + 0.5 * width;
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Err(SalpeterError::numerical(
        "bisect_secant",
        format!("no convergence after {max_iter} iterations, bracket [{a}, {b}]"),
    ))
}

/// Golden-section minimization of `f` on [a, b] to abscissa tolerance `tol`.
///
/// Returns `(x_min, f(x_min))`. The function is assumed unimodal on the
/// interval; for a merely continuous function the result is a local minimum.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(SalpeterError::domain("golden_min", format!("invalid interval [{a}, {b}]")));
    }
    const INVPHI: f64 = 0.618033988749894848;
    let mut lo = a;
    let mut hi = b;
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2);
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}
