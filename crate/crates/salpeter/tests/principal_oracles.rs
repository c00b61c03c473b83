//! Principal-matrix entries checked against high-precision reference values
//! in every regime, plus scaling identities and the quantitative error
//! profile of the large-separation asymptotic replacement.

use num_complex::Complex64;
use salpeter::kernels;
use salpeter::principal::*;

fn close(got: f64, want: f64, rel: f64) {
    assert!(
        (got - want).abs() <= rel * want.abs().max(1e-300),
        "got {got:.17e}, want {want:.17e}, rel err {:.3e}",
        (got - want).abs() / want.abs().max(1e-300)
    );
}

#[test]
fn diagonal_f_reference_values() {
    close(diagonal_f(0.5, 1.0).unwrap(), 0.3849001794597505096728, 1e-13);
    close(diagonal_f(-1.5, 1.0).unwrap(), -0.4110102630322140120542, 1e-13);
    close(diagonal_f(0.9999, 1.0).unwrap(), 70.38708604241848390107, 1e-11);
    close(diagonal_f(-1.0, 1.0).unwrap(), -0.3183098861837906715378, 1e-14);
    close(diagonal_f(-3.0, 1.0).unwrap(), -0.59513626576770715241, 1e-13);
    close(diagonal_f(0.3, 1.0).unwrap(), 0.18774362657513285157, 1e-13);
    close(diagonal_f(1.3, 2.0).unwrap(), 0.620317159333701952634, 1e-13);
}

#[test]
fn diagonal_f_scale_invariance() {
    // F depends only on E/m.
    close(diagonal_f(0.65, 1.0).unwrap(), diagonal_f(1.3, 2.0).unwrap(), 1e-14);
    close(diagonal_f(-4.2, 3.0).unwrap(), diagonal_f(-1.4, 1.0).unwrap(), 1e-14);
}

#[test]
fn diagonal_f_prime_reference_values() {
    close(diagonal_f_prime(0.5, 1.0).unwrap(), 1.238607069348528473486, 1e-12);
    close(diagonal_f_prime(-0.9, 1.0).unwrap(), 0.2257093021398514567633, 1e-8);
    close(diagonal_f_prime(0.3, 1.0).unwrap(), 0.79264291696583887182, 1e-12);
}

#[test]
fn twin_bound_matrix_reference() {
    let cfg = ModelConfig::new(1.0, vec![-0.5, 0.5], vec![0.5, 0.5]).unwrap();
    let phi = phi_bound_matrix(&cfg, 0.2).unwrap();
    close(phi[(0, 0)], 0.2697549296151776851599, 1e-12);
    close(phi[(0, 1)], -0.1802786512857170376640, 1e-10);
    assert_eq!(phi[(0, 0)], phi[(1, 1)]);
}

#[test]
fn twin_scatter_matrix_reference() {
    let cfg = ModelConfig::new(1.0, vec![-0.5, 0.5], vec![0.5, 0.5]).unwrap();
    let v = phi_scatter(&cfg, 0.75).unwrap();
    let d00 = v.entries[(0, 0)];
    let d01 = v.entries[(0, 1)];
    close(d00.re, 0.7526261797141698320002, 1e-12);
    close(d00.im, -5.0 / 3.0, 1e-15);
    close(d01.re, 1.097571090196261210836, 1e-11);
    close(d01.im, -1.219481448123034810520, 1e-12);
}

#[test]
fn massless_matrices_reference() {
    let cfg = ModelConfig::new(0.0, vec![-1.0, 1.0], vec![-0.5, -0.5]).unwrap();
    let v = phi_scatter(&cfg, 1.0).unwrap();
    close(v.entries[(0, 0)].re, 0.2206356001526515933965, 1e-13);
    close(v.entries[(0, 0)].im, -1.0, 1e-15);
    close(v.entries[(0, 1)].re, 0.8632872278674668805828, 1e-12);
    close(v.entries[(0, 1)].im, 0.4161468365471423869976, 1e-12);
}

#[test]
fn asymptotic_damped_term_error_profile() {
    // The Watson-lemma replacement A(d, k) of the damped integral carries an
    // O(1/(m d)) relative error; the ratio damped/A at k -> 0 is a frozen
    // diagnostic of exactly how rough the replacement is at small m d.
    let k = 1e-9;
    for &(d, want_ratio, tol) in &[(0.9, 0.298, 2e-3), (3.0, 0.5675, 1e-3), (10.0, 0.8026, 1e-3)] {
        let damped = kernels::scatter_damped(d, k, 1.0).unwrap();
        // Recover A from the asymptotic entry: Re = beta sin(kd) - A.
        let asym = phi_offdiag_asymptotic(d, k, 1.0).unwrap();
        let beta = k.hypot(1.0) / k;
        let a = beta * (k * d).sin() - asym.re;
        let ratio = damped / a;
        assert!(
            (ratio - want_ratio).abs() < tol,
            "d = {d}: ratio {ratio} vs {want_ratio}"
        );
    }
    // Spot value of A itself at threshold.
    let asym = phi_offdiag_asymptotic(0.9, k, 1.0).unwrap();
    let beta = k.hypot(1.0) / k;
    let a = beta * (k * 0.9).sin() - asym.re;
    close(a, 0.189968357585, 1e-6);
}

#[test]
fn nonrel_scatter_unitarity_structure() {
    // For one NR center, r = i(m/k) / (1/lambda - i m/k) gives
    // R = m^2 lambda^2 / (k^2 + lambda^2 m^2); check |r|^2 + |t|^2 = 1.
    let m = 1.0;
    let cfg = ModelConfig::new(m, vec![0.0], vec![0.9]).unwrap();
    let lambda = nonrel_coupling(0.9 - m, m).unwrap();
    for &k in &[0.05, 0.3, 1.0] {
        let phi = phi_nonrelativistic(&cfg, EnergyTag::Scatter { k }).unwrap();
        let inv = phi.entries[(0, 0)].inv();
        let r = Complex64::new(0.0, m / k) * inv;
        let t = 1.0 + r;
        let sum = r.norm_sqr() + t.norm_sqr();
        assert!((sum - 1.0).abs() < 1e-13, "k = {k}: R + T = {sum}");
        let r_closed = m * m * lambda * lambda / (k * k + lambda * lambda * m * m);
        close(r.norm_sqr(), r_closed, 1e-12);
    }
}

#[test]
fn massive_and_nonrel_agree_deep_in_the_well() {
    // For E_B just below m and small k the relativistic matrix approaches
    // the NR one: compare single-center reflection coefficients.
    let m = 1.0;
    let eb = m - 1e-4;
    let cfg = ModelConfig::new(m, vec![0.0], vec![eb]).unwrap();
    let k = 1e-3;
    let rel = phi_scatter(&cfg, k).unwrap().entries[(0, 0)];
    let nr = phi_nonrelativistic(&cfg, EnergyTag::Scatter { k }).unwrap().entries[(0, 0)];
    let r_rel = (Complex64::new(0.0, k.hypot(m) / k) * rel.inv()).norm_sqr();
    let r_nr = (Complex64::new(0.0, m / k) * nr.inv()).norm_sqr();
    assert!((r_rel - r_nr).abs() < 2e-3, "R rel {r_rel} vs NR {r_nr}");
}
