//! Scattering observables on the continuum: reflection and transmission
//! amplitudes from the inverse principal matrix, phase shifts with branch
//! unwrapping, threshold-anomaly scans over the twin separation, and
//! Kronig-Penney band scans.
//!
//! For a plane wave incident from the left the amplitudes are
//!
//!   r = sum_ij i beta [Phi^{-1}]_ij e^{i k (a_i + a_j)},
//!   t = 1 + sum_ij i beta [Phi^{-1}]_ij e^{i k (a_j - a_i)},
//!
//! with beta = sqrt(k^2 + m^2)/k (beta = 1 massless). Flux conservation
//! R + T = 1 holds for every configuration; r + t is unimodular only for
//! parity-symmetric ones, which is where the phase shift delta = arg(r+t)/2
//! carries its usual meaning.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::SalpeterError;
use crate::kernels;
use crate::principal::{self, ModelConfig, OffdiagMode};
use crate::roots;
use crate::spectrum;
use crate::Result;

/// Refuse to invert Phi when the infinity-norm condition estimate exceeds
/// this; at real k the matrix should never be singular.
const CONDITION_LIMIT: f64 = 1e14;

/// Amplitudes and coefficients at a single momentum.
#[derive(Debug, Clone)]
pub struct ScatteringPoint {
    /// Momentum k > 0.
    pub k: f64,
    /// Reflection amplitude.
    pub r: Complex64,
    /// Transmission amplitude.
    pub t: Complex64,
    /// Reflection coefficient |r|^2.
    pub big_r: f64,
    /// Transmission coefficient |t|^2.
    pub big_t: f64,
    /// Phase arg(r + t)/2 on the principal branch; [`phase_shift_sweep`]
    /// rebases it to delta(0+) in (0, pi] and unwraps along the sweep.
    pub delta: f64,
}

fn inf_norm(mat: &DMatrix<Complex64>) -> f64 {
    (0..mat.nrows())
        .map(|i| (0..mat.ncols()).map(|j| mat[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn invert_phi(entries: &DMatrix<Complex64>, op: &'static str, k: f64) -> Result<DMatrix<Complex64>> {
    let inv = entries
        .clone()
        .try_inverse()
        .ok_or_else(|| SalpeterError::numerical(op, format!("principal matrix singular at k = {k}")))?;
    let cond = inf_norm(entries) * inf_norm(&inv);
    if cond > CONDITION_LIMIT {
        return Err(SalpeterError::numerical(
            op,
            format!("principal matrix ill-conditioned at k = {k}: condition estimate {cond:.3e}"),
        ));
    }
    Ok(inv)
}

/// Scattering amplitudes and coefficients at momentum k.
pub fn scatter_point(cfg: &ModelConfig, k: f64, mode: OffdiagMode) -> Result<ScatteringPoint> {
    let phi = principal::phi_scatter_matrix(cfg, k, mode)?;
    let inv = invert_phi(&phi.entries, "scatter_point", k)?;
    let beta = if cfg.is_massless() { 1.0 } else { k.hypot(cfg.mass()) / k };
    let ib = Complex64::new(0.0, beta);
    let mut r = Complex64::new(0.0, 0.0);
    let mut t = Complex64::new(1.0, 0.0);
    for (i, &ai) in cfg.centers().iter().enumerate() {
        for (j, &aj) in cfg.centers().iter().enumerate() {
            let g = ib * inv[(i, j)];
            r += g * Complex64::new(0.0, k * (ai + aj)).exp();
            t += g * Complex64::new(0.0, k * (aj - ai)).exp();
        }
    }
    Ok(ScatteringPoint {
        k,
        r,
        t,
        big_r: r.norm_sqr(),
        big_t: t.norm_sqr(),
        delta: 0.5 * (r + t).arg(),
    })
}

/// Sweep over a strictly increasing momentum grid with the phase shift
/// unwrapped: delta at the first point is moved into (0, pi], every later
/// point takes the representative of its principal phase (mod pi) nearest
/// to its predecessor.
pub fn phase_shift_sweep(
    cfg: &ModelConfig,
    ks: &[f64],
    mode: OffdiagMode,
) -> Result<Vec<ScatteringPoint>> {
    if let Some(&first) = ks.first() {
        if !(first.is_finite() && first > 0.0) {
            return Err(SalpeterError::domain(
                "phase_shift_sweep",
                format!("momenta must be positive, got {first}"),
            ));
        }
    }
    for pair in ks.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(SalpeterError::domain(
                "phase_shift_sweep",
                format!("momentum grid must be strictly increasing at {} -> {}", pair[0], pair[1]),
            ));
        }
    }
    let mut points = ks
        .iter()
        .map(|&k| scatter_point(cfg, k, mode))
        .collect::<Result<Vec<_>>>()?;
    unwrap_deltas(&mut points);
    Ok(points)
}

/// Unwrap the phase shifts of an already computed sweep in place: delta at
/// the first point is moved into (0, pi], every later point takes the
/// representative of its principal phase (mod pi) nearest to its predecessor.
pub fn unwrap_deltas(points: &mut [ScatteringPoint]) {
    let Some(first) = points.first() else {
        return;
    };
    let mut prev = first.delta;
    while prev <= 0.0 {
        prev += PI;
    }
    while prev > PI {
        prev -= PI;
    }
    points[0].delta = prev;
    for point in points.iter_mut().skip(1) {
        let shift = ((prev - point.delta) / PI).round();
        point.delta += shift * PI;
        prev = point.delta;
    }
}

/// Scattering wave function for a unit plane wave incident from the left:
///
///   psi_k(x) = e^{i k x} + sum_ij R0(|x - a_i|; k) [Phi^{-1}]_ij e^{i k a_j},
///
/// with R0 the outgoing free resolvent kernel including its damped part, so
/// the result is exact at every x away from the centers.
pub fn scatter_wavefunction(cfg: &ModelConfig, k: f64, x: f64) -> Result<Complex64> {
    if !x.is_finite() {
        return Err(SalpeterError::domain("scatter_wavefunction", format!("position must be finite, got {x}")));
    }
    for (i, &a) in cfg.centers().iter().enumerate() {
        if x == a {
            return Err(SalpeterError::Singularity { x, index: i });
        }
    }
    let phi = principal::phi_scatter(cfg, k)?;
    let inv = invert_phi(&phi.entries, "scatter_wavefunction", k)?;
    let mut psi = Complex64::new(0.0, k * x).exp();
    for (i, &ai) in cfg.centers().iter().enumerate() {
        let r0 = kernels::free_resolvent_scatter((x - ai).abs(), k, cfg.mass())?;
        for (j, &aj) in cfg.centers().iter().enumerate() {
            psi += r0 * inv[(i, j)] * Complex64::new(0.0, k * aj).exp();
        }
    }
    Ok(psi)
}

/// Result of a threshold-anomaly scan over the twin separation parameter.
#[derive(Debug, Clone)]
pub struct AnomalyScan {
    /// (parameter, R) rows in grid order; the parameter is 2 m a for massive
    /// twins and a |E_B| for massless ones.
    pub curve: Vec<(f64, f64)>,
    /// Parameter at the golden-section-refined minimum of R.
    pub dip_param: f64,
    /// Reflection coefficient at the refined minimum.
    pub dip_r: f64,
    /// True when the refined minimum is deep enough to count as the
    /// anomaly (R below 0.1 at the probe momentum).
    pub dip_present: bool,
    /// Parameter at which the bound-state count flips, when the flip lies
    /// inside the scanned range.
    pub flip_param: Option<f64>,
}

/// Build the twin configuration at the given separation parameter.
fn twin_at(template: &ModelConfig, param: f64) -> Result<ModelConfig> {
    let eb = template.bindings()[0];
    let half = if template.is_massless() {
        param / eb.abs()
    } else {
        0.5 * param / template.mass()
    };
    ModelConfig::new(template.mass(), vec![-half, half], template.bindings().to_vec())
}

/// Scan the reflection coefficient of a symmetric twin at a fixed small
/// probe momentum as a function of the separation parameter (2 m a for
/// massive models, a |E_B| massless), refine the dip by golden section, and
/// locate the bound-state count flip inside the scanned range.
pub fn anomaly_scan(
    template: &ModelConfig,
    k_probe: f64,
    grid: &[f64],
    mode: OffdiagMode,
) -> Result<AnomalyScan> {
    if template.n_centers() != 2 || template.bindings()[0] != template.bindings()[1] {
        return Err(SalpeterError::Config(
            "anomaly scan requires a symmetric two-center template".into(),
        ));
    }
    if grid.len() < 3 {
        return Err(SalpeterError::domain(
            "anomaly_scan",
            format!("separation grid needs at least 3 points, got {}", grid.len()),
        ));
    }
    for pair in grid.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(SalpeterError::domain(
                "anomaly_scan",
                format!("separation grid must be strictly increasing at {} -> {}", pair[0], pair[1]),
            ));
        }
    }
    if !(grid[0] > 0.0) {
        return Err(SalpeterError::domain(
            "anomaly_scan",
            format!("separation parameters must be positive, got {}", grid[0]),
        ));
    }

    let r_at = |param: f64| -> Result<f64> {
        Ok(scatter_point(&twin_at(template, param)?, k_probe, mode)?.big_r)
    };
    let mut curve = Vec::with_capacity(grid.len());
    for &param in grid {
        curve.push((param, r_at(param)?));
    }

    let arg = curve
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1).1.total_cmp(&(b.1).1))
        .map(|(i, _)| i)
        .expect("grid is non-empty");
    let lo = grid[arg.saturating_sub(1)];
    let hi = grid[(arg + 1).min(grid.len() - 1)];
    let (dip_param, dip_r) = roots::golden_min(
        |p| r_at(p).unwrap_or(f64::INFINITY),
        lo,
        hi,
        1e-10 * (grid[grid.len() - 1] - grid[0]),
    )?;

    let count_at = |param: f64| -> Result<usize> {
        spectrum::count_bound_states(&twin_at(template, param)?, None)
    };
    let (mut c_lo, mut c_hi) = (grid[0], grid[grid.len() - 1]);
    let flip_param = if count_at(c_lo)? == count_at(c_hi)? {
        None
    } else {
        let n_lo = count_at(c_lo)?;
        for _ in 0..60 {
            let mid = 0.5 * (c_lo + c_hi);
            if count_at(mid)? == n_lo {
                c_lo = mid;
            } else {
                c_hi = mid;
            }
        }
        Some(0.5 * (c_lo + c_hi))
    };

    Ok(AnomalyScan {
        curve,
        dip_param,
        dip_r,
        dip_present: dip_r < 0.1,
        flip_param,
    })
}

/// First band-gap window of the evenly spaced array: k in [0.8, 1.2] pi/spacing.
pub fn gap_window(spacing: f64) -> (f64, f64) {
    let k0 = PI / spacing;
    (0.8 * k0, 1.2 * k0)
}

/// Transmission sweep of the Kronig-Penney array: n centers a fixed spacing
/// apart, all with binding energy eb, arranged symmetrically about the origin.
pub fn kp_scan(n: usize, spacing: f64, eb: f64, m: f64, k_grid: &[f64]) -> Result<Vec<ScatteringPoint>> {
    if n == 0 {
        return Err(SalpeterError::domain("kp_scan", "need at least one center"));
    }
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(SalpeterError::domain("kp_scan", format!("spacing must be positive, got {spacing}")));
    }
    let centers: Vec<f64> = (0..n)
        .map(|i| (i as f64 - 0.5 * (n as f64 - 1.0)) * spacing)
        .collect();
    let cfg = ModelConfig::new(m, centers, vec![eb; n])?;
    phase_shift_sweep(&cfg, k_grid, OffdiagMode::Exact)
}

/// Minimum transmission over a sweep and the momentum where it occurs.
pub fn min_transmission(points: &[ScatteringPoint]) -> Option<(f64, f64)> {
    points
        .iter()
        .map(|p| (p.k, p.big_t))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}
