//! Self-contained special functions: modified Bessel functions K0 and K1,
//! sine and cosine integrals with their auxiliary functions, the exponential
//! integral E1, and the principal branch of the Lambert W function.
//!
//! All routines target close to machine accuracy over the argument ranges the
//! rest of the crate uses and return `Domain` errors outside them.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::SalpeterError;
use crate::quad;
use crate::Result;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// Modified Bessel function K of order 0 or 1.
///
/// Positive finite argument required. For very large x the value underflows
/// to zero, which is the correct limit of e^{-x} scaling.
pub fn bessel_k(order: u8, x: f64) -> Result<f64> {
    if order > 1 {
        return Err(SalpeterError::domain("bessel_k", format!("order must be 0 or 1, got {order}")));
    }
    let (k0, k1) = bessel_k01(x)?;
    Ok(if order == 0 { k0 } else { k1 })
}

/// K0(x) and K1(x) together; both orders come from one evaluation.
///
/// Power series with logarithmic terms below x = 2, a Steed-style continued
/// fraction above.
pub fn bessel_k01(x: f64) -> Result<(f64, f64)> {
    if !(x.is_finite() && x > 0.0) {
        return Err(SalpeterError::domain("bessel_k01", format!("argument must be positive, got {x}")));
    }
    if x <= 2.0 {
        Ok(k0_k1_series(x))
    } else {
        let (s0, s1) = k0_k1_cf(x)?;
        let damp = (-x).exp();
        Ok((s0 * damp, s1 * damp))
    }
}

/// Exponentially scaled pair e^x (K0(x), K1(x)).
///
/// Finite for every positive x, unlike the bare functions which underflow
/// near x ~ 700; use it whenever K is multiplied by a growing exponential so
/// the exponents can be combined analytically.
pub fn bessel_k01_scaled(x: f64) -> Result<(f64, f64)> {
    if !(x.is_finite() && x > 0.0) {
        return Err(SalpeterError::domain("bessel_k01_scaled", format!("argument must be positive, got {x}")));
    }
    if x <= 2.0 {
        let (k0, k1) = k0_k1_series(x);
        let grow = x.exp();
        Ok((k0 * grow, k1 * grow))
    } else {
        k0_k1_cf(x)
    }
}

/// Ascending series for K0, K1 (x <= 2).
fn k0_k1_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let lnh = (0.5 * x).ln();

    // K0 = -(ln(x/2) + gamma) I0 + sum_{k>=1} H_k q^k / (k!)^2
    let mut i0 = 1.0;
    let mut s0 = 0.0;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        s0 += term * harmonic;
        if term < 1e-19 * i0 {
            break;
        }
    }
    let k0 = -(lnh + EULER_GAMMA) * i0 + s0;

    // K1 = ln(x/2) I1 + 1/x - (x/4) sum_{k>=0} [psi(k+1) + psi(k+2)] q^k / (k!(k+1)!)
    let mut i1h = 1.0; // I1 divided by x/2
    let mut s1 = 1.0 - 2.0 * EULER_GAMMA;
    let mut t1 = 1.0;
    let mut psi_a = -EULER_GAMMA;
    let mut psi_b = 1.0 - EULER_GAMMA;
    for k in 1..60 {
        let kf = k as f64;
        t1 *= q / (kf * (kf + 1.0));
        psi_a += 1.0 / kf;
        psi_b += 1.0 / (kf + 1.0);
        i1h += t1;
        s1 += t1 * (psi_a + psi_b);
        if t1 < 1e-19 * i1h {
            break;
        }
    }
    let i1 = 0.5 * x * i1h;
    let k1 = lnh * i1 + 1.0 / x - 0.25 * x * s1;
    (k0, k1)
}

/// Continued-fraction evaluation of the scaled pair e^x (K0, K1) for x > 2,
/// Thompson-Barnett style.
fn k0_k1_cf(x: f64) -> Result<(f64, f64)> {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10000u32 {
        let fi = f64::from(i);
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-16 {
            let k0 = (PI / (2.0 * x)).sqrt() / s;
            let k1 = k0 * (x + 0.5 - a1 * h) / x;
            return Ok((k0, k1));
        }
    }
    Err(SalpeterError::numerical("bessel_k01", format!("continued fraction stalled at x = {x}")))
}

/// Sine and cosine integrals Si(x), Ci(x).
///
/// Si is odd and Si(0) = 0, but x = 0 is rejected here because Ci diverges
/// logarithmically; for negative x the real part Ci(|x|) is returned.
pub fn sin_cos_integral(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(SalpeterError::domain("sin_cos_integral", format!("argument must be finite, got {x}")));
    }
    if x == 0.0 {
        return Err(SalpeterError::domain("sin_cos_integral", "Ci(0) diverges"));
    }
    let ax = x.abs();
    let (si, ci) = if ax <= 4.0 {
        si_ci_series(ax)
    } else {
        let (fa, ga) = auxiliary_fg(ax)?;
        let (s, c) = ax.sin_cos();
        (FRAC_PI_2 - fa * c - ga * s, fa * s - ga * c)
    };
    Ok((si * x.signum(), ci))
}

/// Taylor series for Si and Ci, adequate up to x = 4.
fn si_ci_series(x: f64) -> (f64, f64) {
    let x2 = x * x;
    let mut si = x;
    let mut term = x;
    for n in 1..40 {
        let k = 2.0 * n as f64;
        term *= -x2 / (k * (k + 1.0));
        let add = term / (k + 1.0);
        si += add;
        if add.abs() < 1e-18 {
            break;
        }
    }
    let mut cin = 0.0;
    let mut t = 1.0;
    for n in 1..40 {
        let k = 2.0 * n as f64;
        t *= -x2 / (k * (k - 1.0));
        let add = t / k;
        cin += add;
        if add.abs() < 1e-18 {
            break;
        }
    }
    (si, EULER_GAMMA + x.ln() + cin)
}

/// Auxiliary functions of the sine and cosine integrals for x > 0:
///
/// f(x) = int_0^inf e^{-xt}/(1+t^2) dt,  g(x) = int_0^inf t e^{-xt}/(1+t^2) dt.
///
/// They satisfy Si = pi/2 - f cos - g sin and Ci = f sin - g cos, are
/// positive and decreasing, f ~ 1/x and g ~ 1/x^2 at large x, and g diverges
/// like -ln x as x -> 0+.
pub fn auxiliary_fg(x: f64) -> Result<(f64, f64)> {
    if !(x.is_finite() && x > 0.0) {
        return Err(SalpeterError::domain("auxiliary_fg", format!("argument must be positive, got {x}")));
    }
    if x <= 4.0 {
        let (si, ci) = si_ci_series(x);
        let (s, c) = x.sin_cos();
        let d = FRAC_PI_2 - si;
        Ok((ci * s + d * c, -ci * c + d * s))
    } else if x < 40.0 {
        // Laplace-type integrals after u = x t; the integrand decays as e^{-u}.
        let fx = quad::integrate_half_line(
            |u| (-u).exp() / (1.0 + (u / x) * (u / x)),
            0.0,
            1.0,
            1e-15,
            1e-13,
        )? / x;
        let gx = quad::integrate_half_line(
            |u| u * (-u).exp() / (1.0 + (u / x) * (u / x)),
            0.0,
            1.0,
            1e-15,
            1e-13,
        )? / (x * x);
        Ok((fx, gx))
    } else {
        // Asymptotic series truncated at the smallest term.
        let x2 = x * x;
        let mut fsum = 1.0;
        let mut term = 1.0;
        for n in 1..40 {
            let k = 2.0 * n as f64;
            let next = -term * k * (k - 1.0) / x2;
            if next.abs() >= term.abs() {
                break;
            }
            term = next;
            fsum += next;
            if next.abs() < 1e-18 {
                break;
            }
        }
        let mut gsum = 1.0;
        let mut t = 1.0;
        for n in 1..40 {
            let k = 2.0 * n as f64;
            let next = -t * k * (k + 1.0) / x2;
            if next.abs() >= t.abs() {
                break;
            }
            t = next;
            gsum += next;
            if next.abs() < 1e-18 {
                break;
            }
        }
        Ok((fsum / x, gsum / x2))
    }
}

/// Exponential integral E1(x) = int_x^inf e^{-t}/t dt for x > 0.
pub fn exp_e1(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(SalpeterError::domain("exp_e1", format!("argument must be positive, got {x}")));
    }
    if x <= 1.0 {
        Ok(-EULER_GAMMA - x.ln() + ein_series(x))
    } else {
        // Continued fraction e^{-x} / (x+1 - 1/(x+3 - 4/(x+5 - ...))), modified Lentz.
        let mut b = x + 1.0;
        let mut c = 1e308;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..300u32 {
            let a = -f64::from(i) * f64::from(i);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                return Ok(h * (-x).exp());
            }
        }
        Err(SalpeterError::numerical("exp_e1", format!("continued fraction stalled at x = {x}")))
    }
}

/// Entire exponential integral Ein(x) = int_0^x (1 - e^{-t})/t dt for x >= 0.
pub fn ein(x: f64) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(SalpeterError::domain("ein", format!("argument must be nonnegative, got {x}")));
    }
    if x == 0.0 {
        Ok(0.0)
    } else if x <= 1.0 {
        Ok(ein_series(x))
    } else {
        Ok(EULER_GAMMA + x.ln() + exp_e1(x)?)
    }
}

/// Series sum_{k>=1} (-1)^{k+1} x^k / (k k!), converging fast for x <= 1.
fn ein_series(x: f64) -> f64 {
    let mut s = 0.0;
    let mut t = 1.0;
    for k in 1..40 {
        let kf = k as f64;
        t *= -x / kf;
        s -= t / kf;
        if t.abs() < 1e-18 * kf {
            break;
        }
    }
    s
}

/// Principal branch W0 of the Lambert W function: the solution of w e^w = x
/// with w >= -1, defined for x >= -1/e.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(SalpeterError::domain("lambert_w0", format!("argument must be finite, got {x}")));
    }
    let branch = -(-1.0f64).exp();
    if x < branch {
        return Err(SalpeterError::domain("lambert_w0", format!("argument {x} below the branch point -1/e")));
    }

    // Expansion around the branch point in p = sqrt(2(e x + 1)).
    let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
    if p < 1e-4 {
        // Series error is O(p^4), already below machine precision here.
        return Ok(-1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0);
    }

    let mut w = if x < -0.25 {
        -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
    } else if x <= std::f64::consts::E {
        (1.0 + x.max(-0.25)).ln()
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };

    // Halley iteration on (w - x e^{-w}) / (stuff), overflow-safe for large x.
    for _ in 0..60 {
        let u = x * (-w).exp();
        let r = w - u;
        let denom = (w + 1.0) - (w + 2.0) * r / (2.0 * (w + 1.0));
        let step = r / denom;
        w -= step;
        if step.abs() <= 1e-15 * (1.0 + w.abs()) {
            return Ok(w);
        }
    }
    Err(SalpeterError::numerical("lambert_w0", format!("no convergence for x = {x}")))
}
