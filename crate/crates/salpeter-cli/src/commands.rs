//! Implementations of the subcommands: configuration loading, sweep
//! orchestration on a local thread pool, and table assembly.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use salpeter::principal::{self, ModelConfig, OffdiagMode};
use salpeter::scatter;
use salpeter::spectrum::{self, StateClass};
use salpeter::{rgflow, SalpeterError};

use crate::config;
use crate::error::CliError;
use crate::grid;
use crate::output::{format_float, write_text, Table};
use crate::{Cli, Command, Common};

/// Dispatch a parsed invocation.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Phi { common } => phi(&common),
        Command::Bound { common } => bound(&common),
        Command::Wavefunction { common, state } => wavefunction(&common, state),
        Command::Scatter { common } => scatter_cmd(&common),
        Command::Phase { common } => phase(&common),
        Command::Anomaly { common, k_probe, asymptotic } => anomaly(&common, k_probe, asymptotic),
        Command::Kp { common, spacing } => kp(&common, spacing),
        Command::Rg { common } => rg(&common),
    }
}

/// Natural unit of the configuration: the mass, or |E_B^1| when massless.
fn unit_of(cfg: &ModelConfig) -> f64 {
    if cfg.is_massless() {
        cfg.bindings()[0].abs()
    } else {
        cfg.mass()
    }
}

/// Column label appropriate to the mass regime.
fn pick(massless: bool, massive: &'static str, massless_label: &'static str) -> &'static str {
    if massless {
        massless_label
    } else {
        massive
    }
}

/// The user grid if given, otherwise the command default.
fn resolve_grid(common: &Common, default: &str) -> Result<Vec<f64>, CliError> {
    match &common.grid {
        Some(grid) => Ok(grid.0.clone()),
        None => grid::parse_grid(default).map(|g| g.0).map_err(CliError::Input),
    }
}

/// Row-identifying numerical failure.
fn row_err(command: &str, column: &str, value: f64, err: SalpeterError) -> CliError {
    CliError::Numerical(format!("{command}: {column}={value}: {err}"))
}

/// Evaluate one item per grid point on a local thread pool, preserving grid
/// order; the lowest-index failing row wins.
fn sweep<T, F>(values: &[f64], threads: usize, row: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(f64) -> Result<T, CliError> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|err| CliError::Input(format!("cannot build thread pool: {err}")))?;
    let results: Vec<Result<T, CliError>> =
        pool.install(|| values.par_iter().map(|&v| row(v)).collect());
    let mut rows = Vec::with_capacity(results.len());
    for result in results {
        rows.push(result?);
    }
    Ok(rows)
}

/// Assemble and emit a plain sweep table.
fn emit(columns: Vec<String>, rows: Vec<Vec<String>>, common: &Common) -> Result<(), CliError> {
    let mut table = Table::new(columns);
    table.extend_rows(rows);
    write_text(&table.render(), common.out.as_deref())
}

/// `phi`: principal matrix entries (upper triangle) and ascending eigenvalue
/// flows over an energy sweep below the continuum edge.
fn phi(common: &Common) -> Result<(), CliError> {
    let cfg = config::load(&common.config)?;
    let massless = cfg.is_massless();
    let unit = unit_of(&cfg);
    let label = pick(massless, "e_over_m", "e_over_abs_eb1");
    let values = resolve_grid(common, pick(massless, "-2:0.99:150", "-3:-0.01:150"))?;
    let n = cfg.n_centers();
    let mut columns = vec![label.to_string()];
    for i in 1..=n {
        for j in i..=n {
            columns.push(format!("phi_{i}{j}"));
        }
    }
    for i in 1..=n {
        columns.push(format!("omega_{i}"));
    }
    let precision = common.precision;
    let rows = sweep(&values, common.threads, |v| {
        let e = v * unit;
        let matrix =
            principal::phi_bound_matrix(&cfg, e).map_err(|err| row_err("phi", label, v, err))?;
        let flow = spectrum::eigen_flow(&cfg, e).map_err(|err| row_err("phi", label, v, err))?;
        let mut row = vec![format_float(v, precision)];
        for i in 0..n {
            for j in i..n {
                row.push(format_float(matrix[(i, j)], precision));
            }
        }
        for &omega in &flow.omegas {
            row.push(format_float(omega, precision));
        }
        Ok(row)
    })?;
    emit(columns, rows, common)
}

/// `bound`: bound-state count, weak-class count, and energies. Without a grid
/// one row is emitted at the native geometry; with a grid every center is
/// rescaled so the geometry parameter (2m a_max, massless a_max |E_B^1|)
/// takes each grid value.
fn bound(common: &Common) -> Result<(), CliError> {
    let cfg = config::load(&common.config)?;
    let massless = cfg.is_massless();
    let unit = unit_of(&cfg);
    let label = pick(massless, "two_m_a", "a_abs_eb1");
    let a_max = cfg.centers().iter().fold(0.0f64, |acc, &a| acc.max(a.abs()));
    let native = if massless { a_max * unit } else { 2.0 * cfg.mass() * a_max };
    let values = match &common.grid {
        Some(grid) => {
            if native == 0.0 {
                return Err(CliError::Input(
                    "bound: all centers sit at the origin, so a geometry sweep cannot rescale them"
                        .into(),
                ));
            }
            grid.0.clone()
        }
        None => vec![native],
    };
    let n = cfg.n_centers();
    let mut columns = vec![label.to_string(), "count".to_string(), "weak_count".to_string()];
    for i in 1..=n {
        columns.push(format!("e_{i}"));
    }
    let precision = common.precision;
    let rows = sweep(&values, common.threads, |v| {
        let model = if native > 0.0 && v != native {
            let scale = v / native;
            let centers = cfg.centers().iter().map(|&a| a * scale).collect();
            ModelConfig::new(cfg.mass(), centers, cfg.bindings().to_vec())
                .map_err(|err| row_err("bound", label, v, err))?
        } else {
            cfg.clone()
        };
        let states = spectrum::find_bound_states(&model, None, 1e-12)
            .map_err(|err| row_err("bound", label, v, err))?;
        let weak = states.iter().filter(|s| s.class == StateClass::Weak).count();
        let mut row =
            vec![format_float(v, precision), states.len().to_string(), weak.to_string()];
        for i in 0..n {
            row.push(match states.get(i) {
                Some(state) => format_float(state.energy / unit, precision),
                None => String::new(),
            });
        }
        Ok(row)
    })?;
    emit(columns, rows, common)
}

/// `wavefunction`: one normalized bound state sampled on a position grid.
fn wavefunction(common: &Common, state_index: usize) -> Result<(), CliError> {
    let cfg = config::load(&common.config)?;
    let massless = cfg.is_massless();
    let unit = unit_of(&cfg);
    let x_label = pick(massless, "x_times_m", "x_times_abs_eb1");
    let psi_label = pick(massless, "psi_over_sqrt_m", "psi_over_sqrt_abs_eb1");
    let values = resolve_grid(common, "-10:10:400")?;
    let states = spectrum::find_bound_states(&cfg, None, 1e-12)
        .map_err(|err| CliError::Numerical(format!("wavefunction: {err}")))?;
    let state = states.get(state_index).ok_or_else(|| {
        CliError::Input(format!(
            "wavefunction: --state {state_index} out of range: model has {} bound states",
            states.len()
        ))
    })?;
    let precision = common.precision;
    let rows = sweep(&values, common.threads, |v| {
        let x = v / unit;
        let psi = spectrum::bound_wavefunction(&cfg, state, x)
            .map_err(|err| row_err("wavefunction", x_label, v, err))?;
        Ok(vec![format_float(v, precision), format_float(psi / unit.sqrt(), precision)])
    })?;
    emit(vec![x_label.to_string(), psi_label.to_string()], rows, common)
}

/// `scatter`: reflection and transmission coefficients over a momentum sweep.
fn scatter_cmd(common: &Common) -> Result<(), CliError> {
    let cfg = config::load(&common.config)?;
    let massless = cfg.is_massless();
    let unit = unit_of(&cfg);
    let label = pick(massless, "k_over_m", "k_over_abs_eb1");
    let values = resolve_grid(common, "1e-3:3:300")?;
    let precision = common.precision;
    let rows = sweep(&values, common.threads, |v| {
        let point = scatter::scatter_point(&cfg, v * unit, OffdiagMode::Exact)
            .map_err(|err| row_err("scatter", label, v, err))?;
        Ok(vec![
            format_float(v, precision),
            format_float(point.big_r, precision),
            format_float(point.big_t, precision),
            format_float(point.big_r + point.big_t, precision),
        ])
    })?;
    emit(
        vec![label.to_string(), "R".to_string(), "T".to_string(), "R_plus_T".to_string()],
        rows,
        common,
    )
}

/// `phase`: unwrapped scattering phase shift over a momentum sweep. Points
/// are computed in parallel; unwrapping runs over the finished sweep.
fn phase(common: &Common) -> Result<(), CliError> {
    let cfg = config::load(&common.config)?;
    let massless = cfg.is_massless();
    let unit = unit_of(&cfg);
    let label = pick(massless, "k_over_m", "k_over_abs_eb1");
    let values = resolve_grid(common, "1e-3:3:300")?;
    let precision = common.precision;
    let mut points = sweep(&values, common.threads, |v| {
        scatter::scatter_point(&cfg, v * unit, OffdiagMode::Exact)
            .map_err(|err| row_err("phase", label, v, err))
    })?;
    scatter::unwrap_deltas(&mut points);
    let rows = values
        .iter()
        .zip(&points)
        .map(|(&v, point)| vec![format_float(v, precision), format_float(point.delta, precision)])
        .collect();
    emit(vec![label.to_string(), "delta".to_string()], rows, common)
}

/// `anomaly`: twin-center reflection against separation at a fixed probe
/// momentum, with the resonance dip and the bound-state count flip located in
/// a trailing comment.
fn anomaly(common: &Common, k_probe: f64, asymptotic: bool) -> Result<(), CliError> {
    let cfg = config::load(&common.config)?;
    let massless = cfg.is_massless();
    let unit = unit_of(&cfg);
    let label = pick(massless, "two_m_a", "a_abs_eb");
    let values = resolve_grid(common, pick(massless, "0.5:1.2:141", "0.05:1.0:96"))?;
    let mode = if asymptotic { OffdiagMode::Asymptotic } else { OffdiagMode::Exact };
    let scan = scatter::anomaly_scan(&cfg, k_probe * unit, &values, mode).map_err(|err| match err
    {
        SalpeterError::Config(_) | SalpeterError::Domain { .. } => {
            CliError::Input(format!("anomaly: {err}"))
        }
        other => CliError::Numerical(format!("anomaly: {other}")),
    })?;
    let precision = common.precision;
    let mut table = Table::new([label.to_string(), "R".to_string()]);
    for &(param, r) in &scan.curve {
        table.push_row(vec![format_float(param, precision), format_float(r, precision)]);
    }
    let flip = match scan.flip_param {
        Some(param) => format_float(param, precision),
        None => "none".to_string(),
    };
    table.set_trailer(format!(
        "# dip_{label}={} r_min={} flip_{label}={flip}",
        format_float(scan.dip_param, precision),
        format_float(scan.dip_r, precision),
    ));
    write_text(&table.render(), common.out.as_deref())
}

/// `kp`: Kronig-Penney transmission tables for 1, 2, 4, and 8 equally spaced
/// identical centers, one file per center count plus a gap summary. The
/// momentum grid defaults to the first-gap window of the spacing.
fn kp(common: &Common, spacing: f64) -> Result<(), CliError> {
    let cfg = config::load(&common.config)?;
    let massless = cfg.is_massless();
    let unit = unit_of(&cfg);
    let label = pick(massless, "k_over_m", "k_over_abs_eb1");
    let out = common.out.clone().ok_or_else(|| {
        CliError::Input(
            "kp: --out is required (one table per center count plus a gap summary)".into(),
        )
    })?;
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(CliError::Input(format!("kp: --spacing must be positive, got {spacing}")));
    }
    let d = spacing / unit;
    let values = match &common.grid {
        Some(grid) => grid.0.clone(),
        None => {
            let (lo, hi) = scatter::gap_window(d);
            grid::linspace(lo / unit, hi / unit, 121).map_err(CliError::Input)?
        }
    };
    let ks: Vec<f64> = values.iter().map(|&v| v * unit).collect();
    let eb = cfg.bindings()[0];
    let stem = stem_of(&out);
    let precision = common.precision;
    let mut gaps =
        Table::new(vec!["n".to_string(), "min_t".to_string(), format!("{label}_at_min")]);
    for n in [1usize, 2, 4, 8] {
        let points = scatter::kp_scan(n, d, eb, cfg.mass(), &ks)
            .map_err(|err| CliError::Numerical(format!("kp: n={n}: {err}")))?;
        let mut table = Table::new([label.to_string(), "R".to_string(), "T".to_string()]);
        for (&v, point) in values.iter().zip(&points) {
            table.push_row(vec![
                format_float(v, precision),
                format_float(point.big_r, precision),
                format_float(point.big_t, precision),
            ]);
        }
        write_text(&table.render(), Some(Path::new(&format!("{stem}_n{n}.csv"))))?;
        if let Some((k_min, t_min)) = scatter::min_transmission(&points) {
            gaps.push_row(vec![
                n.to_string(),
                format_float(t_min, precision),
                format_float(k_min / unit, precision),
            ]);
        }
    }
    write_text(&gaps.render(), Some(Path::new(&format!("{stem}_gaps.csv"))))
}

/// Output stem: the path with any extension removed.
fn stem_of(path: &PathBuf) -> String {
    path.with_extension("").to_string_lossy().into_owned()
}

/// `rg`: running coupling of every center over a renormalization-scale sweep.
fn rg(common: &Common) -> Result<(), CliError> {
    let cfg = config::load(&common.config)?;
    let massless = cfg.is_massless();
    let unit = unit_of(&cfg);
    let label = pick(massless, "big_m_over_m", "big_m_over_abs_eb1");
    let values = resolve_grid(common, pick(massless, "1:1000:60", "1.1:1000:60"))?;
    let n = cfg.n_centers();
    let mut columns = vec![label.to_string()];
    for i in 1..=n {
        columns.push(format!("lambda_r_{i}"));
    }
    let precision = common.precision;
    let rows = sweep(&values, common.threads, |v| {
        let big_m = v * unit;
        let mut row = vec![format_float(v, precision)];
        for &eb in cfg.bindings() {
            let lambda = if massless {
                rgflow::running_coupling_massless(big_m, eb)
            } else {
                rgflow::running_coupling(big_m, eb, cfg.mass(), 0.0)
            }
            .map_err(|err| row_err("rg", label, v, err))?;
            row.push(format_float(lambda, precision));
        }
        Ok(row)
    })?;
    emit(columns, rows, common)
}
