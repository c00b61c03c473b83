//! Renormalization-group flow against frozen references, the closed form,
//! and an independent ODE integration of the beta function.

use std::f64::consts::PI;

use salpeter::principal::{self, ModelConfig};
use salpeter::rgflow;

#[test]
fn inverse_coupling_reference_values() {
    let expected = [
        (-0.5, 1.0, 0.02818551042277634),
        (0.5, 1.0, 0.6055357796124021),
        (0.5, 10.0, 1.33847137849183),
        (-1.5, 2.0, 0.03026093727308917),
    ];
    for &(eb, big_m, j) in &expected {
        let measured = rgflow::inv_coupling_integral(big_m, eb, 1.0).unwrap();
        assert!((measured - j).abs() < 1e-9, "eb = {eb}, M = {big_m}: {measured}");
    }
}

#[test]
fn quadrature_matches_the_logarithmic_closed_form() {
    // 1/lambda_R(M) = F(E_B) + (1/pi) ln(2M/m), exactly.
    for &eb in &[-1.5, -0.5, 0.2, 0.9] {
        for &big_m in &[0.5, 1.0, 10.0, 1e3, 1e6] {
            let j = rgflow::inv_coupling_integral(big_m, eb, 1.0).unwrap();
            let closed = principal::diagonal_f(eb, 1.0).unwrap() + (2.0 * big_m).ln() / PI;
            assert!(
                (j - closed).abs() < 1e-9 * closed.abs().max(1.0),
                "eb = {eb}, M = {big_m}: {j} vs {closed}"
            );
        }
    }
}

#[test]
fn scale_differences_follow_frullani() {
    // The E_B-dependent parts cancel, leaving (1/pi) ln(M2/M1).
    for &(m1, m2) in &[(0.3, 7.0), (2.0, 2e3), (1.0, 1e6)] {
        let diff = rgflow::inv_coupling_integral(m2, 0.5, 1.0).unwrap()
            - rgflow::inv_coupling_integral(m1, 0.5, 1.0).unwrap();
        assert!((diff - (m2 / m1).ln() / PI).abs() < 1e-8, "M {m1} -> {m2}");
    }
}

#[test]
fn coupling_pole_location() {
    // 1/lambda_R vanishes at M = (m/2) e^{-pi F(E_B)}; for E_B = 0.5 m that
    // is M = 0.14921802959614 m, with the strong-coupling side below it.
    let m_pole = 0.14921802959614;
    assert!(rgflow::inv_coupling_integral(m_pole, 0.5, 1.0).unwrap().abs() < 1e-9);
    assert!(rgflow::inv_coupling_integral(m_pole * 1.01, 0.5, 1.0).unwrap() > 0.0);
    assert!(rgflow::inv_coupling_integral(m_pole * 0.99, 0.5, 1.0).unwrap() < 0.0);
}

#[test]
fn asymptotic_freedom_is_logarithmic() {
    // lambda_R decreases along a log grid in M, but only like pi/ln M:
    // still about 0.2 at M = 1e6 m and first below 0.1 near M = 4e12 m.
    let mut previous = f64::INFINITY;
    for &big_m in &[1.0, 1e2, 1e4, 1e6, 1e9, 1e15] {
        let lam = rgflow::running_coupling(big_m, 0.5, 1.0, 0.0).unwrap();
        assert!(lam > 0.0 && lam < previous, "M = {big_m}");
        previous = lam;
    }
    let at_1e6 = rgflow::running_coupling(1e6, 0.5, 1.0, 0.0).unwrap();
    assert!((at_1e6 - 0.1999).abs() < 5e-3, "lambda(1e6) = {at_1e6}");
    assert!(at_1e6 < 0.25);
    assert!(rgflow::running_coupling(1e15, 0.5, 1.0, 0.0).unwrap() < 0.1);
}

#[test]
fn flow_reference_values_and_semigroup() {
    assert!((rgflow::flow(1.2, 2.0).unwrap() - 0.94879456901307).abs() < 1e-12);
    assert!((rgflow::flow(1.2, 100.0).unwrap() - 0.43493303291507).abs() < 1e-12);
    assert!((rgflow::flow(-0.8, 10.0).unwrap() - -1.93399506489485).abs() < 1e-12);
    for &(lam, a1, a2) in &[(0.7, 3.0, 7.0), (1.2, 0.5, 40.0), (-0.3, 2.0, 9.0)] {
        let two_step = rgflow::flow(rgflow::flow(lam, a1).unwrap(), a2).unwrap();
        let one_step = rgflow::flow(lam, a1 * a2).unwrap();
        assert!((two_step - one_step).abs() < 1e-12, "lam = {lam}");
    }
}

#[test]
fn flow_matches_ode_integration_of_beta() {
    // Fourth-order Runge-Kutta in s = ln alpha for ds lambda = beta(lambda).
    let lambda0 = rgflow::running_coupling(1.0, 0.5, 1.0, 0.0).unwrap();
    let s_end = 1e6_f64.ln();
    let steps = 20_000;
    let h = s_end / steps as f64;
    let mut lam = lambda0;
    let mut checked = 0;
    for i in 0..steps {
        let k1 = rgflow::beta(lam);
        let k2 = rgflow::beta(lam + 0.5 * h * k1);
        let k3 = rgflow::beta(lam + 0.5 * h * k2);
        let k4 = rgflow::beta(lam + h * k3);
        lam += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (i + 1) % (steps / 4) == 0 {
            let alpha = ((i + 1) as f64 * h).exp();
            let closed = rgflow::flow(lambda0, alpha).unwrap();
            assert!(
                ((lam - closed) / closed).abs() < 1e-8,
                "alpha = {alpha}: ode {lam} vs closed {closed}"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 4);
}

#[test]
fn beta_matches_the_scale_derivative_of_the_coupling() {
    let h = 1e-4_f64;
    for &big_m in &[0.5, 1.0, 20.0] {
        let lam = rgflow::running_coupling(big_m, 0.5, 1.0, 0.0).unwrap();
        let plus = rgflow::running_coupling(big_m * h.exp(), 0.5, 1.0, 0.0).unwrap();
        let minus = rgflow::running_coupling(big_m * (-h).exp(), 0.5, 1.0, 0.0).unwrap();
        let derivative = (plus - minus) / (2.0 * h);
        assert!((derivative - rgflow::beta(lam)).abs() < 1e-6, "M = {big_m}");
    }
}

#[test]
fn sigma_offsets_close_every_renormalization_condition() {
    let cfg = ModelConfig::new(1.0, vec![-0.6, 0.6], vec![0.5, -0.4]).unwrap();
    let sigma = rgflow::sigma_offsets(&cfg, 3.0).unwrap();
    assert_eq!(sigma[0], 0.0);
    // Scale independence of the offsets.
    let sigma10 = rgflow::sigma_offsets(&cfg, 10.0).unwrap();
    assert!((sigma[1] - sigma10[1]).abs() < 1e-9);
    // Phi^R_22(E_B^2) = 0 through the explicit running-coupling route.
    let inv2 = rgflow::running_coupling(3.0, cfg.bindings()[0], 1.0, sigma[1])
        .map(|l| 1.0 / l)
        .unwrap();
    let j2 = rgflow::inv_coupling_integral(3.0, cfg.bindings()[1], 1.0).unwrap();
    assert!((inv2 - j2).abs() < 1e-8);
    let phir = rgflow::phi_renormalized(&cfg, cfg.bindings()[1], 3.0).unwrap();
    assert!(phir[(1, 1)].abs() < 1e-8);
}

#[test]
fn renormalized_matrix_is_scale_free_and_matches_bound_form() {
    let cfg = ModelConfig::new(1.0, vec![-0.6, 0.6], vec![0.5, -0.4]).unwrap();
    let bound = principal::phi_bound_matrix(&cfg, -0.3).unwrap();
    for &big_m in &[0.4, 3.0, 50.0] {
        let phir = rgflow::phi_renormalized(&cfg, -0.3, big_m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((phir[(i, j)] - bound[(i, j)]).abs() < 1e-8, "M = {big_m}");
            }
        }
    }
}

#[test]
fn no_anomalous_scaling() {
    // Phi^R built from (M, alpha E, alpha m, d/alpha) equals Phi^R built
    // from (M/alpha, E, m, d).
    let e = -0.3;
    let big_m = 3.0;
    let cfg = ModelConfig::new(1.0, vec![-0.6, 0.6], vec![0.5, -0.4]).unwrap();
    for &alpha in &[2.0, 5.0, 10.0] {
        let base = rgflow::phi_renormalized(&cfg, e, big_m / alpha).unwrap();
        let scaled_cfg = ModelConfig::new(
            alpha,
            vec![-0.6 / alpha, 0.6 / alpha],
            vec![0.5 * alpha, -0.4 * alpha],
        )
        .unwrap();
        let scaled = rgflow::phi_renormalized(&scaled_cfg, e * alpha, big_m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((base[(i, j)] - scaled[(i, j)]).abs() < 1e-6, "alpha = {alpha}");
            }
        }
    }
}

#[test]
fn massless_coupling_and_beta() {
    let lam = rgflow::running_coupling_massless(2.0, -1.0).unwrap();
    assert!((lam - PI / std::f64::consts::LN_2).abs() < 1e-12);
    // beta_massless is -lambda^2/pi identically.
    for &big_m in &[0.2, 0.9, 3.0, 1e4] {
        let l = rgflow::running_coupling_massless(big_m, -1.0).unwrap();
        let b = rgflow::beta_massless(big_m, -1.0).unwrap();
        assert_eq!(b, rgflow::beta(l), "M = {big_m}");
        assert!(b < 0.0);
    }
    // M = e |E_B| gives ln = 1 and beta = -pi.
    assert!((rgflow::beta_massless(std::f64::consts::E, -1.0).unwrap() + PI).abs() < 1e-12);
    // Fixed points on both ends of the flow.
    assert!(rgflow::beta_massless(1e8, -1.0).unwrap().abs() < 1e-2);
    assert!(rgflow::beta_massless(1e-8, -1.0).unwrap().abs() < 1e-2);
}
