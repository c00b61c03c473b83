//! Heat kernel and free resolvent of the one-dimensional Salpeter operator
//! sqrt(P^2 + m^2).
//!
//! The bound-regime resolvent kernel G(d; E) below threshold and its
//! scattering counterpart are the building blocks of the principal matrix.
//! Both are evaluated from the branch-cut representation: the integration
//! variable is substituted as mu = m cosh(theta), which removes the
//! square-root singularity at mu = m, and the overall factor e^{-m d} is
//! pulled out so the quadrature keeps relative accuracy even deep in the
//! exponential tail.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::SalpeterError;
use crate::quad;
use crate::specfun;
use crate::Result;

/// Checks shared by the kernel evaluators.
fn check_distance(op: &'static str, d: f64) -> Result<()> {
    if !(d.is_finite() && d > 0.0) {
        return Err(SalpeterError::domain(op, format!("distance must be positive, got {d}")));
    }
    Ok(())
}

fn check_mass(op: &'static str, m: f64) -> Result<()> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(SalpeterError::domain(op, format!("mass must be nonnegative, got {m}")));
    }
    Ok(())
}

/// Heat kernel K_t(x, y) of sqrt(P^2 + m^2) at distance d = |x - y|.
///
/// For m > 0 this is (m t / (pi s)) K_1(m s) with s = sqrt(d^2 + t^2); for
/// m = 0 it degenerates to the Poisson kernel t / (pi (t^2 + d^2)). Strictly
/// positive, though for m s beyond ~700 the value underflows to zero.
pub fn heat_kernel(t: f64, d: f64, m: f64) -> Result<f64> {
    check_mass("heat_kernel", m)?;
    if !(t.is_finite() && t > 0.0) {
        return Err(SalpeterError::domain("heat_kernel", format!("time must be positive, got {t}")));
    }
    if !(d.is_finite() && d >= 0.0) {
        return Err(SalpeterError::domain("heat_kernel", format!("distance must be nonnegative, got {d}")));
    }
    if m == 0.0 {
        return Ok(t / (PI * (t * t + d * d)));
    }
    let s = d.hypot(t);
    let k1 = specfun::bessel_k(1, m * s)?;
    Ok(m * t / (PI * s) * k1)
}

/// Upper limit for the theta integrals: beyond it the factor
/// e^{-m d (cosh(theta) - 1)} is far below the underflow threshold.
fn theta_cutoff(md: f64) -> f64 {
    (745.0 / md).max(2.0).acosh() + 1.0
}

/// Heat kernel times Boltzmann weight, K_t(d) e^{t E}, for E below the
/// continuum edge. This is the integrand of the time representations of the
/// resolvent; computing it as a single product would overflow where K_t is
/// subnormal while e^{t E} is huge, so the exponentials are combined into
/// e^{t E - m s} <= e^{-t (m - E)}, which is always damped. Here d = 0 is
/// allowed (the diagonal of the kernel matrix is finite).
pub fn heat_kernel_weighted(t: f64, d: f64, m: f64, e: f64) -> Result<f64> {
    check_mass("heat_kernel_weighted", m)?;
    if !(t.is_finite() && t > 0.0) {
        return Err(SalpeterError::domain("heat_kernel_weighted", format!("time must be positive, got {t}")));
    }
    if !(d.is_finite() && d >= 0.0) {
        return Err(SalpeterError::domain("heat_kernel_weighted", format!("distance must be nonnegative, got {d}")));
    }
    let edge = if m == 0.0 { 0.0 } else { m };
    if !(e.is_finite() && e < edge) {
        return Err(SalpeterError::domain(
            "heat_kernel_weighted",
            format!("energy must lie below the continuum edge, got E = {e}"),
        ));
    }
    if m == 0.0 {
        return Ok(t / (PI * (t * t + d * d)) * (t * e).exp());
    }
    let s = d.hypot(t);
    let ms = m * s;
    let weight = (t * e - ms).exp();
    if weight == 0.0 {
        return Ok(0.0);
    }
    let (_, k1s) = specfun::bessel_k01_scaled(ms)?;
    Ok(m * t / (PI * s) * k1s * weight)
}

/// Bound-regime free resolvent kernel G(d; E) = <x| (H_0 - E)^{-1} |y> at
/// distance d = |x - y| > 0, for energies below the continuum, E < m.
///
/// Massive case: the branch-cut integral
/// (1/pi) int_m^inf e^{-mu d} sqrt(mu^2 - m^2) / (mu^2 - m^2 + E^2) d mu,
/// plus, for 0 < E < m, the pole contribution (E/kappa) e^{-kappa d} with
/// kappa = sqrt(m^2 - E^2). Massless case (requires E < 0): g(-E d)/pi with
/// g the auxiliary function of the sine and cosine integrals.
///
/// G is positive, decreasing in d, increasing in E, and diverges like
/// -ln(d)/pi as d -> 0.
pub fn free_resolvent_bound(d: f64, e: f64, m: f64) -> Result<f64> {
    check_distance("free_resolvent_bound", d)?;
    check_mass("free_resolvent_bound", m)?;
    if !e.is_finite() {
        return Err(SalpeterError::domain("free_resolvent_bound", format!("energy must be finite, got {e}")));
    }
    if m == 0.0 {
        if e >= 0.0 {
            return Err(SalpeterError::domain(
                "free_resolvent_bound",
                format!("massless bound regime requires E < 0, got {e}"),
            ));
        }
        let (_, g) = specfun::auxiliary_fg(-e * d)?;
        return Ok(g / PI);
    }
    if e >= m {
        return Err(SalpeterError::domain(
            "free_resolvent_bound",
            format!("bound regime requires E < m, got E = {e}, m = {m}"),
        ));
    }

    let md = m * d;
    let theta_max = theta_cutoff(md);
    let e2 = e * e;
    let integral = quad::integrate(
        |theta| {
            let ch1 = 2.0 * (0.5 * theta).sinh().powi(2); // cosh(theta) - 1
            let damp = (-md * ch1).exp();
            if e == 0.0 {
                damp
            } else {
                let s = m * theta.sinh();
                damp * s * s / (s * s + e2)
            }
        },
        0.0,
        theta_max,
        1e-14,
        1e-11,
    )?;
    let mut g = (-md).exp() * integral / PI;
    if e > 0.0 {
        let kappa = ((m - e) * (m + e)).sqrt();
        g += e / kappa * (-kappa * d).exp();
    }
    Ok(g)
}

/// Energy derivative dG/dE of the bound-regime resolvent kernel.
///
/// Massive case via the time representation dG/dE = int_0^inf t K_t(d) e^{tE} dt,
/// which stays smooth across E = 0 where the differentiated branch-cut
/// integral develops a stiff peak. Massless case in closed form from the
/// auxiliary functions: dG/dE = (d/pi)(1/x - f(x)) at x = -E d. Positive
/// throughout the bound regime.
pub fn free_resolvent_bound_denergy(d: f64, e: f64, m: f64) -> Result<f64> {
    check_distance("free_resolvent_bound_denergy", d)?;
    check_mass("free_resolvent_bound_denergy", m)?;
    if m == 0.0 {
        if e >= 0.0 {
            return Err(SalpeterError::domain(
                "free_resolvent_bound_denergy",
                format!("massless bound regime requires E < 0, got {e}"),
            ));
        }
        let x = -e * d;
        let (f, _) = specfun::auxiliary_fg(x)?;
        return Ok(d / PI * (1.0 / x - f));
    }
    if e >= m {
        return Err(SalpeterError::domain(
            "free_resolvent_bound_denergy",
            format!("bound regime requires E < m, got E = {e}, m = {m}"),
        ));
    }
    // The relative tolerance is capped by the error estimator's rounding
    // floor, ~1e-16 times the integrated mass, which near the continuum edge
    // (value ~ (m - E)^{-3/2}) leaves no room below ~1e-9.
    let rate = m - e;
    quad::integrate_half_line(
        |t| t * heat_kernel_weighted(t, d, m, e).unwrap_or(0.0),
        0.0,
        1.0 / rate,
        1e-13,
        1e-9,
    )
}

/// Damped (branch-cut) part of the scattering-regime resolvent kernel:
/// (1/pi) int_m^inf e^{-mu d} sqrt(mu^2 - m^2) / (mu^2 + k^2) d mu.
///
/// Real, positive, and decaying like e^{-m d} (m > 0) or algebraically
/// (m = 0, where it equals g(k d)/pi). Exposed separately because the
/// large-separation asymptotic replacement drops exactly this term.
pub fn scatter_damped(d: f64, k: f64, m: f64) -> Result<f64> {
    check_distance("scatter_damped", d)?;
    check_mass("scatter_damped", m)?;
    if !(k.is_finite() && k > 0.0) {
        return Err(SalpeterError::domain("scatter_damped", format!("momentum must be positive, got {k}")));
    }
    if m == 0.0 {
        let (_, g) = specfun::auxiliary_fg(k * d)?;
        return Ok(g / PI);
    }
    let md = m * d;
    let theta_max = theta_cutoff(md);
    let denom_shift = m * m + k * k;
    let integral = quad::integrate(
        |theta| {
            let ch1 = 2.0 * (0.5 * theta).sinh().powi(2);
            let s = m * theta.sinh();
            (-md * ch1).exp() * s * s / (s * s + denom_shift)
        },
        0.0,
        theta_max,
        1e-14,
        1e-11,
    )?;
    Ok((-md).exp() * integral / PI)
}

/// Scattering-regime free resolvent kernel at real momentum k > 0 with
/// outgoing-wave boundary conditions:
///
/// R_0(d; k) = i (E_k / k) e^{i k d} + damped(d, k),  E_k = sqrt(k^2 + m^2).
///
/// The oscillatory term carries the flux; the damped term is the same
/// branch-cut integral as in `scatter_damped`.
pub fn free_resolvent_scatter(d: f64, k: f64, m: f64) -> Result<Complex64> {
    let damped = scatter_damped(d, k, m)?;
    let beta = k.hypot(m) / k;
    let phase = Complex64::new(0.0, k * d).exp();
    Ok(Complex64::new(0.0, beta) * phase + damped)
}
