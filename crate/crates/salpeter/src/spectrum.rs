//! Bound-state spectrum from the eigenvalue flows of the principal matrix.
//!
//! For E below the continuum edge the matrix Phi(E) is real symmetric with
//! strictly decreasing eigenvalue branches omega^k(E) (the entrywise
//! derivative matrix is negative definite because the heat-kernel matrix is
//! positive definite). Bound states sit exactly where a branch crosses zero,
//! so there are at most N of them and each branch carries at most one. The
//! search walks a geometric energy grid, brackets each branch's sign change,
//! refines by safeguarded secant, and cross-validates the count parity per
//! grid cell against an LU determinant of Phi.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::SalpeterError;
use crate::kernels;
use crate::principal::{self, ModelConfig};
use crate::quad;
use crate::roots;
use crate::specfun;
use crate::Result;

/// Spectral class of a bound state by its energy range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateClass {
    /// 0 < E < m.
    Weak,
    /// -m <= E <= 0.
    Strong,
    /// E < -m (for massless models every state falls here).
    Ultrastrong,
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateClass::Weak => write!(f, "weak"),
            StateClass::Strong => write!(f, "strong"),
            StateClass::Ultrastrong => write!(f, "ultrastrong"),
        }
    }
}

impl StateClass {
    fn of(e: f64, m: f64) -> StateClass {
        if e > 0.0 {
            StateClass::Weak
        } else if e >= -m && m > 0.0 {
            StateClass::Strong
        } else {
            StateClass::Ultrastrong
        }
    }
}

/// Eigenvalue flow of Phi at a single energy: branches sorted ascending with
/// their eigenvectors and Feynman-Hellmann derivatives.
#[derive(Debug, Clone)]
pub struct EigenFlow {
    /// Energy the matrix was evaluated at.
    pub e: f64,
    /// Eigenvalues omega^k, ascending.
    pub omegas: Vec<f64>,
    /// Orthonormal eigenvectors, `vectors[k]` belonging to `omegas[k]`;
    /// sign-fixed so the largest-magnitude component is positive.
    pub vectors: Vec<Vec<f64>>,
    /// Branch derivatives d omega^k / dE = A^k . Phi'(E) A^k, all negative.
    pub domegas: Vec<f64>,
}

/// One bound state.
#[derive(Debug, Clone)]
pub struct BoundState {
    /// Energy, below the continuum edge.
    pub energy: f64,
    /// Index of the eigenvalue branch whose zero this is (0 = lowest).
    pub branch: usize,
    /// Spectral class.
    pub class: StateClass,
    /// Branch slope d omega / dE at the root (negative).
    pub slope: f64,
    /// Eigenvector A of Phi at the root, sign-fixed as in [`EigenFlow`].
    pub vector: Vec<f64>,
    /// Multiplying constant that makes the resolvent superposition
    /// normalized; equals 1 up to quadrature accuracy.
    pub norm_const: f64,
    /// True when the root lies within the threshold resolution window.
    pub near_threshold: bool,
}

/// Sorted eigenvalues and sign-fixed eigenvectors of a symmetric matrix.
fn sorted_eigen(mat: DMatrix<f64>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = mat.nrows();
    let se = SymmetricEigen::new(mat);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].total_cmp(&se.eigenvalues[j]));
    let mut omegas = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for &k in &order {
        omegas.push(se.eigenvalues[k]);
        let col = se.eigenvectors.column(k);
        let mut v: Vec<f64> = col.iter().copied().collect();
        // Deterministic sign: the largest-magnitude component positive,
        // first such component on ties.
        let mut lead = 0;
        for (i, &c) in v.iter().enumerate() {
            if c.abs() > v[lead].abs() + 0.0 {
                lead = i;
            }
        }
        if v[lead] < 0.0 {
            for c in v.iter_mut() {
                *c = -*c;
            }
        }
        vectors.push(v);
    }
    (omegas, vectors)
}

/// Branches only, no derivatives: the cheap evaluation used on search grids.
fn eigen_branches(cfg: &ModelConfig, e: f64) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    Ok(sorted_eigen(principal::phi_bound_matrix(cfg, e)?))
}

/// Eigenvalue flow of the principal matrix at energy E, including the
/// Feynman-Hellmann branch derivatives.
pub fn eigen_flow(cfg: &ModelConfig, e: f64) -> Result<EigenFlow> {
    let (omegas, vectors) = eigen_branches(cfg, e)?;
    let dphi = principal::phi_derivative(cfg, e)?;
    let domegas = vectors
        .iter()
        .map(|v| {
            let a = DMatrix::from_column_slice(v.len(), 1, v);
            (a.transpose() * &dphi * &a)[(0, 0)]
        })
        .collect();
    Ok(EigenFlow { e, omegas, vectors, domegas })
}

/// Lower bound on the spectrum from a Gershgorin estimate of Phi (m > 0).
///
/// For N = 1 the bound is the binding energy itself. For N > 1 the
/// off-diagonal rows are bounded through C = 1/(pi d^2) + m/(2 pi d) at the
/// minimal separation d, giving
///
///   E >= m - sqrt(x / W(x / (m - mu)^2)),  x = 2 pi (N - 1) C,
///
/// with mu the smallest binding energy and W the Lambert function.
pub fn gershgorin_lower_bound(cfg: &ModelConfig) -> Result<f64> {
    if cfg.is_massless() {
        return Err(SalpeterError::regime(
            "gershgorin_lower_bound",
            "defined for massive models only",
        ));
    }
    let m = cfg.mass();
    let mu = cfg.bindings().iter().copied().fold(f64::INFINITY, f64::min);
    let n = cfg.n_centers();
    if n == 1 {
        return Ok(mu);
    }
    let d = cfg.min_separation().expect("N > 1 has a separation");
    let c = 1.0 / (PI * d * d) + m / (2.0 * PI * d);
    let x = 2.0 * PI * (n - 1) as f64 * c;
    let w = specfun::lambert_w0(x / ((m - mu) * (m - mu)))?;
    Ok(m - (x / w).sqrt())
}

/// Default search floor: one mass below the Gershgorin bound (massive), or
/// an expanding scan starting from three times the deepest binding until all
/// branches are positive (massless).
pub fn default_e_floor(cfg: &ModelConfig) -> Result<f64> {
    if !cfg.is_massless() {
        return Ok(gershgorin_lower_bound(cfg)? - cfg.mass());
    }
    let deepest = cfg.bindings().iter().copied().fold(0.0, f64::min);
    let mut floor = 3.0 * deepest;
    for _ in 0..60 {
        let (omegas, _) = eigen_branches(cfg, floor)?;
        if omegas[0] > 0.0 {
            return Ok(floor);
        }
        floor *= 2.0;
    }
    Err(SalpeterError::numerical(
        "default_e_floor",
        "could not bracket the massless spectrum from below",
    ))
}

/// Ceiling of the bound-state search, just below the continuum edge.
fn search_ceiling(cfg: &ModelConfig) -> f64 {
    if cfg.is_massless() {
        let closest = cfg.bindings().iter().fold(f64::INFINITY, |acc, &b| acc.min(b.abs()));
        -1e-12 * closest
    } else {
        cfg.mass() * (1.0 - 1e-8)
    }
}

/// Count bound states between the floor and the continuum edge using branch
/// monotonicity: only the endpoint signs matter.
pub fn count_bound_states(cfg: &ModelConfig, e_floor: Option<f64>) -> Result<usize> {
    let floor = match e_floor {
        Some(f) => f,
        None => default_e_floor(cfg)?,
    };
    let (lo, _) = eigen_branches(cfg, floor)?;
    let (hi, _) = eigen_branches(cfg, search_ceiling(cfg))?;
    Ok(lo.iter().zip(hi.iter()).filter(|&(&a, &b)| a > 0.0 && b < 0.0).count())
}

/// Number of points on the geometric search grid.
const GRID_POINTS: usize = 240;

/// Find every bound state between `e_floor` (default [`default_e_floor`])
/// and the continuum edge, to absolute energy tolerance `tol` times the
/// model scale (mass, or deepest binding for massless models).
///
/// States within the threshold resolution window (continuum edge minus
/// ~1e-8 of the scale) are flagged `near_threshold`; nearly degenerate roots
/// on different branches are both reported. The per-cell parity of branch
/// sign changes is cross-validated against the sign of det Phi computed by
/// LU factorization; a mismatch aborts with a `Numerical` error.
pub fn find_bound_states(
    cfg: &ModelConfig,
    e_floor: Option<f64>,
    tol: f64,
) -> Result<Vec<BoundState>> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SalpeterError::domain("find_bound_states", format!("tolerance must be positive, got {tol}")));
    }
    let m = cfg.mass();
    let scale = if cfg.is_massless() {
        cfg.bindings().iter().fold(0.0f64, |acc, &b| acc.max(b.abs()))
    } else {
        m
    };
    let floor = match e_floor {
        Some(f) => f,
        None => default_e_floor(cfg)?,
    };
    let ceiling = search_ceiling(cfg);
    if floor >= ceiling {
        return Err(SalpeterError::domain(
            "find_bound_states",
            format!("floor {floor} must lie below the search ceiling {ceiling}"),
        ));
    }

    // Geometric grid in the distance-to-edge variable, ascending in E.
    let edge = if cfg.is_massless() { 0.0 } else { m };
    let u_hi = edge - floor;
    let u_lo = edge - ceiling;
    let ratio = (u_hi / u_lo).powf(1.0 / (GRID_POINTS as f64 - 1.0));
    let energies: Vec<f64> = (0..GRID_POINTS)
        .map(|i| edge - u_hi * ratio.powi(-(i as i32)))
        .collect();

    let n = cfg.n_centers();
    let mut branch_values: Vec<Vec<f64>> = Vec::with_capacity(GRID_POINTS);
    let mut dets: Vec<f64> = Vec::with_capacity(GRID_POINTS);
    for &e in &energies {
        let phi = principal::phi_bound_matrix(cfg, e)?;
        dets.push(phi.clone().lu().determinant());
        let (omegas, _) = sorted_eigen(phi);
        branch_values.push(omegas);
    }

    // Cross-validate sign-change parity per cell against the determinant.
    for cell in 0..GRID_POINTS - 1 {
        let flips = (0..n)
            .filter(|&k| {
                let a = branch_values[cell][k];
                let b = branch_values[cell + 1][k];
                a.signum() != b.signum()
            })
            .count();
        let scale_det = dets[cell].abs().max(dets[cell + 1].abs());
        if scale_det == 0.0 || dets[cell].abs() < 1e-12 * scale_det || dets[cell + 1].abs() < 1e-12 * scale_det {
            continue; // grid point landed on a root; parity is ill-defined
        }
        let det_flip = dets[cell].signum() != dets[cell + 1].signum();
        if det_flip != (flips % 2 == 1) {
            return Err(SalpeterError::numerical(
                "find_bound_states",
                format!(
                    "eigenvalue/determinant parity mismatch in cell [{:.6e}, {:.6e}]",
                    energies[cell],
                    energies[cell + 1]
                ),
            ));
        }
    }

    let mut states = Vec::new();
    for k in 0..n {
        // Each branch is strictly decreasing: at most one sign change.
        let mut bracket = None;
        for cell in 0..GRID_POINTS - 1 {
            let a = branch_values[cell][k];
            let b = branch_values[cell + 1][k];
            if a == 0.0 {
                bracket = Some((energies[cell], energies[cell]));
                break;
            }
            if a > 0.0 && b <= 0.0 {
                bracket = Some((energies[cell], energies[cell + 1]));
                break;
            }
        }
        let Some((lo, hi)) = bracket else { continue };
        let root = if lo == hi {
            lo
        } else {
            roots::bisect_secant(
                |e| eigen_branches(cfg, e).map(|(o, _)| o[k]).unwrap_or(f64::NAN),
                lo,
                hi,
                tol * scale,
                200,
            )?
        };
        let flow = eigen_flow(cfg, root)?;
        let near_threshold = (edge - root).abs() <= 1.5e-8 * scale.max(edge.abs());
        let vector = flow.vectors[k].clone();
        let slope = flow.domegas[k];
        let norm_integral = normalization_integral(cfg, root, &vector, slope)?;
        states.push(BoundState {
            energy: root,
            branch: k,
            class: StateClass::of(root, m),
            slope,
            vector,
            norm_const: 1.0 / norm_integral.sqrt(),
            near_threshold,
        });
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(states)
}

/// Half-width of the hole cut out around each center when integrating the
/// squared wave function, in units of the model length scale.
const HOLE_EPS: f64 = 1e-6;

/// Integral of the squared resolvent superposition
/// psi_tilde(x) = (-slope)^{-1/2} sum_i A_i G(|x - a_i|; E) over the line.
///
/// The logarithmic spikes at the centers are cut out with half-width
/// `HOLE_EPS` times the natural length and restored analytically from the
/// local model psi_tilde = -L ln(u) + beta + O(u ln u); the exponential or
/// algebraic tails are integrated far enough that the truncation error is
/// below 1e-9. For the exact eigenvector and slope the result is 1 up to
/// quadrature error, which is the normalization identity of the resolvent
/// representation.
fn normalization_integral(cfg: &ModelConfig, e: f64, vector: &[f64], slope: f64) -> Result<f64> {
    let m = cfg.mass();
    if !(slope < 0.0) {
        return Err(SalpeterError::numerical(
            "normalization_integral",
            format!("branch slope must be negative, got {slope}"),
        ));
    }
    let w = 1.0 / (-slope).sqrt();
    let psi = |x: f64| -> f64 {
        let mut s = 0.0;
        for (i, &a) in cfg.centers().iter().enumerate() {
            let d = (x - a).abs();
            s += vector[i] * kernels::free_resolvent_bound(d, e, m).unwrap_or(f64::NAN);
        }
        w * s
    };

    let length = if cfg.is_massless() { 1.0 / (-e) } else { 1.0 / m };
    let eps = HOLE_EPS * length;
    // Decay length of psi^2 in the tails; for near-threshold states this is
    // 1/(2 kappa), far longer than any other scale in the problem.
    let tail_scale = if cfg.is_massless() {
        length
    } else {
        let rate = if e > 0.0 { ((m - e) * (m + e)).sqrt() } else { m };
        0.5 / rate
    };

    let mut sorted = cfg.centers().to_vec();
    sorted.sort_by(f64::total_cmp);
    for pair in sorted.windows(2) {
        if pair[1] - pair[0] <= 2.0 * eps {
            return Err(SalpeterError::numerical(
                "normalization_integral",
                format!("centers {} and {} are closer than the hole width", pair[0], pair[1]),
            ));
        }
    }

    // The tail tolerances are limited by the noise of the nested resolvent
    // quadratures, which near-threshold pole amplitudes magnify to ~1e-7
    // relative; the identity itself is only needed to ~1e-6.
    let first = sorted[0];
    let last = sorted[sorted.len() - 1];
    let mut total = quad::integrate_half_line(
        |t| {
            let p = psi(first - eps - t);
            p * p
        },
        0.0,
        tail_scale,
        1e-9,
        1e-6,
    )?;
    total += quad::integrate_half_line(
        |t| {
            let p = psi(last + eps + t);
            p * p
        },
        0.0,
        tail_scale,
        1e-9,
        1e-6,
    )?;
    for pair in sorted.windows(2) {
        total += quad::integrate(|x| psi(x) * psi(x), pair[0] + eps, pair[1] - eps, 1e-10, 1e-8)?;
    }

    // Analytic hole contributions.
    let le = eps.ln();
    for (i, &a) in cfg.centers().iter().enumerate() {
        let l_coef = w * vector[i] / PI;
        for side in [-1.0, 1.0] {
            let beta = psi(a + side * eps) + l_coef * le;
            total += l_coef * l_coef * eps * (le * le - 2.0 * le + 2.0)
                + 2.0 * l_coef * beta * eps * (1.0 - le)
                + beta * beta * eps;
        }
    }
    if !total.is_finite() || total <= 0.0 {
        return Err(SalpeterError::numerical(
            "normalization_integral",
            format!("integral evaluated to {total}"),
        ));
    }
    Ok(total)
}

/// Normalized bound-state wave function at position x:
///
///   psi(x) = norm_const (-slope)^{-1/2} sum_i A_i G(|x - a_i|; E).
///
/// Positions must avoid the centers, where psi has a logarithmic spike;
/// hitting one exactly returns a `Singularity` error.
pub fn bound_wavefunction(cfg: &ModelConfig, state: &BoundState, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(SalpeterError::domain("bound_wavefunction", format!("position must be finite, got {x}")));
    }
    for (i, &a) in cfg.centers().iter().enumerate() {
        if x == a {
            return Err(SalpeterError::Singularity { x, index: i });
        }
    }
    let w = state.norm_const / (-state.slope).sqrt();
    let mut s = 0.0;
    for (i, &a) in cfg.centers().iter().enumerate() {
        s += state.vector[i] * kernels::free_resolvent_bound((x - a).abs(), state.energy, cfg.mass())?;
    }
    Ok(w * s)
}

/// Ground-state positivity diagnostics.
#[derive(Debug, Clone)]
pub struct PositivityReport {
    /// True when every eigenvector component is strictly positive.
    pub ok: bool,
    /// Smallest component of the sign-fixed ground eigenvector.
    pub min_component: f64,
    /// Eigenvalue gap omega^1 - omega^0 at the ground energy (None for N = 1).
    pub gap: Option<f64>,
    /// Ground-state energy.
    pub energy: f64,
}

/// Check that the ground state is nondegenerate with a strictly positive
/// eigenvector (hence a strictly positive wave function). A violation is
/// reported in the result, not silently ignored.
pub fn check_ground_positivity(cfg: &ModelConfig) -> Result<PositivityReport> {
    let states = find_bound_states(cfg, None, 1e-10)?;
    let Some(ground) = states.first() else {
        return Err(SalpeterError::numerical("check_ground_positivity", "model has no bound states"));
    };
    let flow = eigen_flow(cfg, ground.energy)?;
    let min_component = ground.vector.iter().copied().fold(f64::INFINITY, f64::min);
    let gap = if cfg.n_centers() > 1 { Some(flow.omegas[1] - flow.omegas[0]) } else { None };
    Ok(PositivityReport {
        ok: min_component > 0.0,
        min_component,
        gap,
        energy: ground.energy,
    })
}
