//! Adaptive Gauss-Kronrod quadrature.
//!
//! A 15-point Kronrod rule with its embedded 7-point Gauss rule supplies a
//! value and an error estimate per segment; the segment with the largest
//! estimated error is bisected until the accumulated error meets the
//! requested tolerance. Semi-infinite integrals are mapped to [0, 1) with a
//! rational transform whose scale the caller chooses to match the decay
//! length of the integrand.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::SalpeterError;
use crate::Result;

/// Default absolute tolerance for kernel-level integrals.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
/// Default relative tolerance for kernel-level integrals.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Maximum number of segments before the subdivision gives up.
const MAX_SEGMENTS: usize = 4000;

/// Kronrod abscissae on [0, 1]; the rule is symmetric about the midpoint.
/// Even indices are also Gauss abscissae.
const XGK: [f64; 8] = [
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

/// Gauss weights for the abscissae at even indices of `XGK`.
const WG: [f64; 4] = [
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

/// One 15-point Kronrod evaluation on [a, b]: returns (value, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[0] * fc;
    let mut gauss = WG[0] * fc;
    for i in 1..8 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 0 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, (kronrod - gauss).abs() * h)
}

/// Segment of the adaptive subdivision, ordered by error estimate.
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrate `f` over the finite interval [a, b].
///
/// Requires finite bounds with a <= b. Stops once the summed error estimate
/// falls below `max(abs_tol, rel_tol * |integral|)`; returns a `Numerical`
/// error when the segment budget is exhausted first or the integrand produced
/// a non-finite value.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() {
        return Err(SalpeterError::domain("integrate", format!("bounds must be finite, got [{a}, {b}]")));
    }
    if a > b {
        return Err(SalpeterError::domain("integrate", format!("bounds must be ordered, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }

    let (v0, e0) = gk15(&f, a, b);
    let mut heap = BinaryHeap::with_capacity(64);
    heap.push(Segment { a, b, value: v0, error: e0 });
    let mut total = v0;
    let mut total_err = e0;

    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_SEGMENTS {
            return Err(SalpeterError::numerical(
                "integrate",
                format!("segment budget exhausted with error estimate {total_err:.3e}"),
            ));
        }
        let worst = heap.pop().expect("heap cannot be empty while error is nonzero");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at machine resolution; its error estimate cannot improve.
            total_err -= worst.error;
            total -= worst.value;
            let (v, e) = (worst.value, 0.0);
            total += v;
            total_err += e;
            heap.push(Segment { a: worst.a, b: worst.b, value: v, error: e });
            continue;
        }
        let (vl, el) = gk15(&f, worst.a, mid);
        let (vr, er) = gk15(&f, mid, worst.b);
        total += vl + vr - worst.value;
        total_err += el + er - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: vl, error: el });
        heap.push(Segment { a: mid, b: worst.b, value: vr, error: er });
    }

    // Re-sum in positional order: removes drift accumulated by the
    // incremental updates and keeps the result independent of heap history.
    let mut segments = heap.into_vec();
    segments.sort_by(|s, t| s.a.total_cmp(&t.a));
    let sum: f64 = segments.iter().map(|s| s.value).sum();
    if !sum.is_finite() {
        return Err(SalpeterError::numerical("integrate", "integrand produced a non-finite value"));
    }
    Ok(sum)
}

/// Integrate `f` over [a, infinity).
///
/// Uses the substitution t = a + scale * u / (1 - u), which maps [0, 1) to
/// the half line; `scale` should be of the order of the decay length of the
/// integrand so the transformed integrand is resolved near u = 0.
pub fn integrate_half_line<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    scale: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(SalpeterError::domain("integrate_half_line", format!("scale must be positive, got {scale}")));
    }
    if !a.is_finite() {
        return Err(SalpeterError::domain("integrate_half_line", format!("lower bound must be finite, got {a}")));
    }
    integrate(
        |u| {
            let rest = 1.0 - u;
            if rest <= 0.0 {
                return 0.0;
            }
            let t = a + scale * u / rest;
            if !t.is_finite() {
                return 0.0;
            }
            let ft = f(t);
            if ft == 0.0 {
                // Avoid 0 * inf once the Jacobian overflows in the far tail.
                0.0
            } else {
                ft * scale / (rest * rest)
            }
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
    )
}
