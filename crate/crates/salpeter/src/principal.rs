//! Principal matrix Phi(E) of the renormalized N-center problem.
//!
//! Each delta coupling is renormalized by prescribing the binding energy
//! E_B^i the center would have in isolation; the heat-kernel subtraction then
//! leaves the finite N x N matrix
//!
//!   Phi_ii(E) = F(E_B^i) - F(E),      Phi_ij(E) = -G(|a_i - a_j|; E),
//!
//! whose kernel determines bound states and whose inverse determines
//! scattering amplitudes. F is the regularized diagonal resolvent and G the
//! free resolvent kernel from [`crate::kernels`]. Massless and
//! nonrelativistic counterparts replace F and G by their limits.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::SalpeterError;
use crate::kernels;
use crate::Result;

/// Validated model data: mass, delta-center positions, and the prescribed
/// single-center binding energies used for renormalization.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    mass: f64,
    centers: Vec<f64>,
    bindings: Vec<f64>,
}

impl ModelConfig {
    /// Validate and build a model.
    ///
    /// Requirements: finite nonnegative mass; at least one center; centers
    /// finite and pairwise distinct; one finite binding energy per center,
    /// each below the continuum edge (E_B < m for massive models, E_B < 0
    /// for massless ones).
    pub fn new(mass: f64, centers: Vec<f64>, bindings: Vec<f64>) -> Result<Self> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(SalpeterError::Config(format!("mass must be finite and nonnegative, got {mass}")));
        }
        if centers.is_empty() {
            return Err(SalpeterError::Config("centers must contain at least one position".into()));
        }
        if centers.len() != bindings.len() {
            return Err(SalpeterError::Config(format!(
                "centers and bindings must have equal length, got {} and {}",
                centers.len(),
                bindings.len()
            )));
        }
        for (i, &a) in centers.iter().enumerate() {
            if !a.is_finite() {
                return Err(SalpeterError::Config(format!("centers[{i}] must be finite, got {a}")));
            }
        }
        for i in 0..centers.len() {
            for j in (i + 1)..centers.len() {
                if centers[i] == centers[j] {
                    return Err(SalpeterError::Config(format!(
                        "centers[{i}] and centers[{j}] coincide at {}",
                        centers[i]
                    )));
                }
            }
        }
        for (i, &eb) in bindings.iter().enumerate() {
            if !eb.is_finite() {
                return Err(SalpeterError::Config(format!("bindings[{i}] must be finite, got {eb}")));
            }
            if mass > 0.0 && eb >= mass {
                return Err(SalpeterError::Config(format!(
                    "bindings[{i}] = {eb} must lie below the continuum edge m = {mass}"
                )));
            }
            if mass == 0.0 && eb >= 0.0 {
                return Err(SalpeterError::Config(format!(
                    "bindings[{i}] = {eb} must be negative for a massless model"
                )));
            }
        }
        Ok(ModelConfig { mass, centers, bindings })
    }

    /// Particle mass m >= 0.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Delta-center positions, in input order.
    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    /// Prescribed single-center binding energies, aligned with `centers`.
    pub fn bindings(&self) -> &[f64] {
        &self.bindings
    }

    /// Number of centers N.
    pub fn n_centers(&self) -> usize {
        self.centers.len()
    }

    /// True for m = 0 models.
    pub fn is_massless(&self) -> bool {
        self.mass == 0.0
    }

    /// Smallest distance between two centers; `None` for N = 1.
    pub fn min_separation(&self) -> Option<f64> {
        let mut sorted = self.centers.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.windows(2).map(|w| w[1] - w[0]).min_by(f64::total_cmp)
    }

    /// Distance |a_i - a_j|.
    fn distance(&self, i: usize, j: usize) -> f64 {
        (self.centers[i] - self.centers[j]).abs()
    }
}

/// Physical regime a principal-matrix value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    MassiveBound,
    MassiveScatter,
    MasslessBound,
    MasslessScatter,
    /// Nonrelativistic limit; energies are measured from the threshold m.
    NonRel,
}

/// Energy argument a principal matrix was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergyTag {
    /// Real energy below the continuum edge.
    Bound { e: f64 },
    /// Real momentum k > 0 on the continuum, outgoing waves.
    Scatter { k: f64 },
}

/// Principal matrix together with its evaluation context.
#[derive(Debug, Clone)]
pub struct PrincipalMatrixValue {
    pub entries: DMatrix<Complex64>,
    pub tag: EnergyTag,
    pub regime: Regime,
}

/// Off-diagonal treatment for scattering matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffdiagMode {
    /// Exact free resolvent kernel.
    Exact,
    /// Large-separation replacement: the damped branch-cut term is traded for
    /// its leading Watson-lemma asymptotics. Massive models only; intended
    /// for m d of order a few or larger.
    Asymptotic,
}

/// Regularized diagonal resolvent F(E) for m > 0, E < m:
///
///   |E| < m:  F = E (pi/2 + arcsin(E/m)) / (pi sqrt(m^2 - E^2)),
///   E = -m:   F = -1/pi,
///   E < -m:   F = E arccosh(-E/m) / (pi sqrt(E^2 - m^2)).
///
/// Strictly increasing; F -> 0 as E -> -inf and F -> +inf as E -> m.
pub fn diagonal_f(e: f64, m: f64) -> Result<f64> {
    if !(m.is_finite() && m > 0.0) {
        return Err(SalpeterError::regime("diagonal_f", format!("requires m > 0, got {m}")));
    }
    if !(e.is_finite() && e < m) {
        return Err(SalpeterError::domain("diagonal_f", format!("requires E < m, got E = {e}")));
    }
    if e == -m {
        return Ok(-1.0 / PI);
    }
    if e.abs() < m {
        let root = ((m - e) * (m + e)).sqrt();
        Ok(e * (PI / 2.0 + (e / m).asin()) / (PI * root))
    } else {
        let root = ((-e - m) * (-e + m)).sqrt();
        Ok(e * (-e / m).acosh() / (PI * root))
    }
}

/// Derivative F'(E), positive everywhere on E < m.
pub fn diagonal_f_prime(e: f64, m: f64) -> Result<f64> {
    if !(m.is_finite() && m > 0.0) {
        return Err(SalpeterError::regime("diagonal_f_prime", format!("requires m > 0, got {m}")));
    }
    if !(e.is_finite() && e < m) {
        return Err(SalpeterError::domain("diagonal_f_prime", format!("requires E < m, got E = {e}")));
    }
    if (e + m).abs() < 1e-7 * m {
        // Near E = -m the two closed-form terms cancel catastrophically
        // (their sum tends to 13/(24 pi m)); fall back to a central
        // difference of the continuous F. Near E = +m both terms are
        // positive, so the closed form stays accurate while it diverges.
        let h = 1e-6 * m;
        return Ok((diagonal_f(e + h, m)? - diagonal_f(e - h, m)?) / (2.0 * h));
    }
    if e.abs() < m {
        let q = (m - e) * (m + e);
        Ok((m * m / q.powf(1.5) * (PI / 2.0 + (e / m).asin()) + e / q) / PI)
    } else {
        let q = (e - m) * (e + m);
        Ok((-m * m / q.powf(1.5) * (-e / m).acosh() - e / q) / PI)
    }
}

/// Real symmetric principal matrix in the bound regime (E below the
/// continuum edge: E < m for massive, E < 0 for massless models).
pub fn phi_bound_matrix(cfg: &ModelConfig, e: f64) -> Result<DMatrix<f64>> {
    let n = cfg.n_centers();
    let m = cfg.mass();
    if cfg.is_massless() {
        if !(e.is_finite() && e < 0.0) {
            return Err(SalpeterError::domain(
                "phi_bound_matrix",
                format!("massless bound regime requires E < 0, got {e}"),
            ));
        }
    } else if !(e.is_finite() && e < m) {
        return Err(SalpeterError::domain(
            "phi_bound_matrix",
            format!("bound regime requires E < m, got E = {e}, m = {m}"),
        ));
    }
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        let diag = if cfg.is_massless() {
            (e / cfg.bindings()[i]).ln() / PI
        } else {
            diagonal_f(cfg.bindings()[i], m)? - diagonal_f(e, m)?
        };
        out[(i, i)] = diag;
        for j in (i + 1)..n {
            let g = kernels::free_resolvent_bound(cfg.distance(i, j), e, m)?;
            out[(i, j)] = -g;
            out[(j, i)] = -g;
        }
    }
    Ok(out)
}

/// Bound-regime principal matrix wrapped with its context.
pub fn phi_bound(cfg: &ModelConfig, e: f64) -> Result<PrincipalMatrixValue> {
    let real = phi_bound_matrix(cfg, e)?;
    let entries = real.map(|v| Complex64::new(v, 0.0));
    Ok(PrincipalMatrixValue {
        entries,
        tag: EnergyTag::Bound { e },
        regime: if cfg.is_massless() { Regime::MasslessBound } else { Regime::MassiveBound },
    })
}

/// Entry-level derivative dPhi/dE of the bound-regime matrix. Every entry is
/// strictly negative: the diagonal is -F'(E) and the off-diagonal -dG/dE.
pub fn phi_derivative(cfg: &ModelConfig, e: f64) -> Result<DMatrix<f64>> {
    let n = cfg.n_centers();
    let m = cfg.mass();
    if cfg.is_massless() {
        if !(e.is_finite() && e < 0.0) {
            return Err(SalpeterError::domain(
                "phi_derivative",
                format!("massless bound regime requires E < 0, got {e}"),
            ));
        }
    } else if !(e.is_finite() && e < m) {
        return Err(SalpeterError::domain(
            "phi_derivative",
            format!("bound regime requires E < m, got E = {e}, m = {m}"),
        ));
    }
    let mut out = DMatrix::zeros(n, n);
    let diag = if cfg.is_massless() { 1.0 / (PI * e) } else { -diagonal_f_prime(e, m)? };
    for i in 0..n {
        out[(i, i)] = diag;
        for j in (i + 1)..n {
            let dg = kernels::free_resolvent_bound_denergy(cfg.distance(i, j), e, m)?;
            out[(i, j)] = -dg;
            out[(j, i)] = -dg;
        }
    }
    Ok(out)
}

/// Scattering-regime principal matrix at momentum k > 0 (energy E_k =
/// sqrt(k^2 + m^2) + i0, outgoing waves), with selectable off-diagonal mode.
///
/// Massive entries:
///   Phi_ii = (E_k / pi k) artanh(k / E_k) + F(E_B^i) - i E_k / k,
///   Phi_ij = -R_0(|a_i - a_j|; k).
/// Massless entries:
///   Phi_ii = ln(k / |E_B^i|) / pi - i,
///   Phi_ij = -(i e^{i k d} + g(k d)/pi).
pub fn phi_scatter_matrix(
    cfg: &ModelConfig,
    k: f64,
    mode: OffdiagMode,
) -> Result<PrincipalMatrixValue> {
    if !(k.is_finite() && k > 0.0) {
        return Err(SalpeterError::domain("phi_scatter_matrix", format!("momentum must be positive, got {k}")));
    }
    if cfg.is_massless() && mode == OffdiagMode::Asymptotic {
        return Err(SalpeterError::regime(
            "phi_scatter_matrix",
            "asymptotic off-diagonal replacement is defined for massive models only",
        ));
    }
    let n = cfg.n_centers();
    let m = cfg.mass();
    let mut entries = DMatrix::zeros(n, n);
    for i in 0..n {
        let diag = if cfg.is_massless() {
            Complex64::new((k / cfg.bindings()[i].abs()).ln() / PI, -1.0)
        } else {
            let ek = k.hypot(m);
            let real = ek / (PI * k) * (k / ek).atanh() + diagonal_f(cfg.bindings()[i], m)?;
            Complex64::new(real, -ek / k)
        };
        entries[(i, i)] = diag;
        for j in (i + 1)..n {
            let d = cfg.distance(i, j);
            let off = match mode {
                OffdiagMode::Exact => -kernels::free_resolvent_scatter(d, k, m)?,
                OffdiagMode::Asymptotic => phi_offdiag_asymptotic(d, k, m)?,
            };
            entries[(i, j)] = off;
            entries[(j, i)] = off;
        }
    }
    Ok(PrincipalMatrixValue {
        entries,
        tag: EnergyTag::Scatter { k },
        regime: if cfg.is_massless() { Regime::MasslessScatter } else { Regime::MassiveScatter },
    })
}

/// Scattering-regime principal matrix with exact off-diagonal entries.
pub fn phi_scatter(cfg: &ModelConfig, k: f64) -> Result<PrincipalMatrixValue> {
    phi_scatter_matrix(cfg, k, OffdiagMode::Exact)
}

/// Large-separation asymptotic form of a scattering off-diagonal entry:
///
///   Phi_ij ~ -( i (E_k/k) e^{i k d} + A(d, k) ),
///   A(d, k) = m^2 / (sqrt(2 pi) (k^2 + m^2)) e^{-m d} / (m d)^{3/2},
///
/// the Watson-lemma leading term of the damped branch-cut integral. Massive
/// models only; the replacement is quantitatively good once m d exceeds a
/// few (the relative error of A is O(1/(m d)) and still ~30% at m d = 1).
pub fn phi_offdiag_asymptotic(d: f64, k: f64, m: f64) -> Result<Complex64> {
    if !(m.is_finite() && m > 0.0) {
        return Err(SalpeterError::regime("phi_offdiag_asymptotic", format!("requires m > 0, got {m}")));
    }
    if !(d.is_finite() && d > 0.0) {
        return Err(SalpeterError::domain("phi_offdiag_asymptotic", format!("distance must be positive, got {d}")));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(SalpeterError::domain("phi_offdiag_asymptotic", format!("momentum must be positive, got {k}")));
    }
    let beta = k.hypot(m) / k;
    let oscillating = Complex64::new(0.0, beta) * Complex64::new(0.0, k * d).exp();
    let damped = m * m / ((2.0 * PI).sqrt() * (k * k + m * m)) * (-m * d).exp() / (m * d).powf(1.5);
    Ok(-(oscillating + damped))
}

/// Nonrelativistic coupling constant lambda_i from a binding energy measured
/// relative to the threshold: 1/lambda = m / sqrt(-2 m dE), dE < 0.
pub fn nonrel_coupling(delta_e: f64, m: f64) -> Result<f64> {
    if !(m.is_finite() && m > 0.0) {
        return Err(SalpeterError::regime("nonrel_coupling", format!("requires m > 0, got {m}")));
    }
    if !(delta_e.is_finite() && delta_e < 0.0) {
        return Err(SalpeterError::domain(
            "nonrel_coupling",
            format!("binding energy relative to threshold must be negative, got {delta_e}"),
        ));
    }
    Ok((-2.0 * m * delta_e).sqrt() / m)
}

/// Principal matrix of the nonrelativistic (Schroedinger) limit. Energies in
/// the tag are measured from the threshold m: bound probes use dE < 0,
/// scattering probes a momentum k > 0 with dE_k = k^2 / 2m.
///
///   bound:    Phi_ii = 1/lambda_i - m/sqrt(-2 m dE),
///             Phi_ij = -(m/sqrt(-2 m dE)) e^{-sqrt(-2 m dE) d};
///   scatter:  Phi_ii = 1/lambda_i - i m/k,
///             Phi_ij = -(i m/k) e^{i k d}.
///
/// The couplings are taken from the model bindings via `nonrel_coupling`
/// applied to E_B^i - m.
pub fn phi_nonrelativistic(cfg: &ModelConfig, tag: EnergyTag) -> Result<PrincipalMatrixValue> {
    let m = cfg.mass();
    if cfg.is_massless() {
        return Err(SalpeterError::regime(
            "phi_nonrelativistic",
            "nonrelativistic limit requires a massive model",
        ));
    }
    let n = cfg.n_centers();
    let inv_lambda: Vec<f64> = cfg
        .bindings()
        .iter()
        .map(|&eb| nonrel_coupling(eb - m, m).map(|l| 1.0 / l))
        .collect::<Result<_>>()?;
    let mut entries = DMatrix::zeros(n, n);
    match tag {
        EnergyTag::Bound { e } => {
            if !(e.is_finite() && e < 0.0) {
                return Err(SalpeterError::domain(
                    "phi_nonrelativistic",
                    format!("bound probe requires dE < 0, got {e}"),
                ));
            }
            let kappa = (-2.0 * m * e).sqrt();
            for i in 0..n {
                entries[(i, i)] = Complex64::new(inv_lambda[i] - m / kappa, 0.0);
                for j in (i + 1)..n {
                    let v = -(m / kappa) * (-kappa * cfg.distance(i, j)).exp();
                    entries[(i, j)] = Complex64::new(v, 0.0);
                    entries[(j, i)] = Complex64::new(v, 0.0);
                }
            }
        }
        EnergyTag::Scatter { k } => {
            if !(k.is_finite() && k > 0.0) {
                return Err(SalpeterError::domain(
                    "phi_nonrelativistic",
                    format!("scattering probe requires k > 0, got {k}"),
                ));
            }
            for i in 0..n {
                entries[(i, i)] = Complex64::new(inv_lambda[i], -m / k);
                for j in (i + 1)..n {
                    let v = -Complex64::new(0.0, m / k) * Complex64::new(0.0, k * cfg.distance(i, j)).exp();
                    entries[(i, j)] = v;
                    entries[(j, i)] = v;
                }
            }
        }
    }
    Ok(PrincipalMatrixValue { entries, tag, regime: Regime::NonRel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twin() -> ModelConfig {
        ModelConfig::new(1.0, vec![-0.5, 0.5], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(ModelConfig::new(1.0, vec![0.0], vec![0.5]).is_ok());
        assert!(ModelConfig::new(-1.0, vec![0.0], vec![0.5]).is_err());
        assert!(ModelConfig::new(1.0, vec![], vec![]).is_err());
        assert!(ModelConfig::new(1.0, vec![0.0, 0.0], vec![0.5, 0.5]).is_err());
        assert!(ModelConfig::new(1.0, vec![0.0, 1.0], vec![0.5]).is_err());
        assert!(ModelConfig::new(1.0, vec![0.0], vec![1.0]).is_err());
        assert!(ModelConfig::new(0.0, vec![0.0], vec![0.5]).is_err());
        assert!(ModelConfig::new(0.0, vec![0.0], vec![-0.5]).is_ok());
    }

    #[test]
    fn diagonal_vanishes_at_binding() {
        // Phi_ii(E_B^i) = 0 is the renormalization condition.
        let cfg = ModelConfig::new(1.0, vec![0.0], vec![-0.3]).unwrap();
        let phi = phi_bound_matrix(&cfg, -0.3).unwrap();
        assert!(phi[(0, 0)].abs() < 1e-15);
    }

    #[test]
    fn diagonal_f_continuous_at_negative_mass() {
        let m = 1.0;
        let f_at = diagonal_f(-m, m).unwrap();
        assert!((f_at + 1.0 / PI).abs() < 1e-16);
        assert!((diagonal_f(-m + 1e-9, m).unwrap() - f_at).abs() < 1e-8);
        assert!((diagonal_f(-m - 1e-9, m).unwrap() - f_at).abs() < 1e-8);
    }

    #[test]
    fn diagonal_f_monotone() {
        let mut prev = f64::NEG_INFINITY;
        let mut e = -30.0;
        while e < 0.999 {
            let f = diagonal_f(e, 1.0).unwrap();
            assert!(f > prev, "F not increasing at E = {e}");
            prev = f;
            e += 0.173;
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &e in &[-5.0, -1.2, -0.9, 0.0, 0.6, 0.95] {
            let h = 1e-6;
            let fd = (diagonal_f(e + h, 1.0).unwrap() - diagonal_f(e - h, 1.0).unwrap()) / (2.0 * h);
            let an = diagonal_f_prime(e, 1.0).unwrap();
            assert!((fd - an).abs() < 1e-6 * an.max(1.0), "E = {e}: {fd} vs {an}");
        }
    }

    #[test]
    fn bound_matrix_symmetric_with_negative_offdiag() {
        let cfg = ModelConfig::new(1.0, vec![-0.7, 0.1, 0.9], vec![0.3, -0.4, 0.7]).unwrap();
        let phi = phi_bound_matrix(&cfg, -0.2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(phi[(i, j)], phi[(j, i)]);
                if i != j {
                    assert!(phi[(i, j)] < 0.0);
                }
            }
        }
    }

    #[test]
    fn derivative_entries_all_negative() {
        let cfg = twin();
        for &e in &[-1.5, -0.2, 0.4, 0.9] {
            let d = phi_derivative(&cfg, e).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!(d[(i, j)] < 0.0, "entry ({i},{j}) at E = {e}: {}", d[(i, j)]);
                }
            }
        }
    }

    #[test]
    fn scatter_matrix_structure() {
        let v = phi_scatter(&twin(), 0.75).unwrap();
        assert_eq!(v.regime, Regime::MassiveScatter);
        let ek = 0.75f64.hypot(1.0);
        assert!((v.entries[(0, 0)].im + ek / 0.75).abs() < 1e-14);
        assert_eq!(v.entries[(0, 1)], v.entries[(1, 0)]);
    }

    #[test]
    fn massless_scatter_diagonal_imaginary_part() {
        let cfg = ModelConfig::new(0.0, vec![-1.0, 1.0], vec![-0.5, -0.5]).unwrap();
        let v = phi_scatter(&cfg, 1.0).unwrap();
        assert!((v.entries[(0, 0)].im + 1.0).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_offdiag_oscillating_part_matches_exact() {
        // The i beta e^{ikd} piece is common; the forms differ only in the
        // exponentially damped real term.
        let exact = -kernels::free_resolvent_scatter(6.0, 1.3, 1.0).unwrap();
        let asym = phi_offdiag_asymptotic(6.0, 1.3, 1.0).unwrap();
        assert!((exact.im - asym.im).abs() < 1e-15);
        assert!((exact.re - asym.re).abs() < 1e-4 * exact.re.abs().max(1e-3));
    }

    #[test]
    fn nonrel_matrix_finite_difference_consistency() {
        // The NR bound matrix should be the stationarity condition of the
        // standard Schroedinger delta-well problem: for one center the root
        // of Phi_11 sits at dE = -m lambda^2 / 2.
        let m = 1.0;
        let cfg = ModelConfig::new(m, vec![0.0], vec![0.8]).unwrap();
        let lambda = nonrel_coupling(0.8 - m, m).unwrap();
        let e_star = -0.5 * m * lambda * lambda;
        let phi = phi_nonrelativistic(&cfg, EnergyTag::Bound { e: e_star }).unwrap();
        assert!(phi.entries[(0, 0)].norm() < 1e-13);
    }

    #[test]
    fn massless_asymptotic_mode_rejected() {
        let cfg = ModelConfig::new(0.0, vec![-1.0, 1.0], vec![-0.5, -0.5]).unwrap();
        assert!(phi_scatter_matrix(&cfg, 1.0, OffdiagMode::Asymptotic).is_err());
    }
}
