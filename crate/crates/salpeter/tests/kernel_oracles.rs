//! Resolvent and heat-kernel values checked against high-precision references
//! and against independent integral representations: the momentum-space
//! integral and the time (Laplace) integral must reproduce the branch-cut
//! evaluation used by the library.

use std::f64::consts::PI;

use salpeter::kernels::*;
use salpeter::quad;

fn close(got: f64, want: f64, rel: f64) {
    assert!(
        (got - want).abs() <= rel * want.abs(),
        "got {got:.17e}, want {want:.17e}, rel err {:.3e}",
        (got - want).abs() / want.abs()
    );
}

/// Momentum-space representation of the bound resolvent kernel:
/// (1/pi) int_0^inf cos(p d) / (sqrt(p^2 + m^2) - E) dp, evaluated between
/// consecutive zeros of the cosine and accelerated by repeated averaging of
/// partial sums (Euler transformation).
fn momentum_resolvent(d: f64, e: f64, m: f64) -> f64 {
    let half = PI / d;
    let mut partial = Vec::with_capacity(60);
    let mut acc = 0.0;
    for n in 0..60 {
        let a = n as f64 * half;
        let seg = quad::integrate(
            |p| (p * d).cos() / (p.hypot(m) - e),
            a,
            a + half,
            1e-14,
            1e-12,
        )
        .unwrap();
        acc += seg;
        partial.push(acc);
    }
    // Repeated pairwise averaging of the oscillating partial sums.
    let mut s = partial;
    while s.len() > 1 {
        s = s.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    s[0] / PI
}

/// Time representation: G(d; E) = int_0^inf K_t(d) e^{t E} dt.
fn time_resolvent(d: f64, e: f64, m: f64) -> f64 {
    quad::integrate_half_line(
        |t| {
            let k = heat_kernel(t, d, m).unwrap();
            if k == 0.0 {
                0.0
            } else {
                k * (t * e).exp()
            }
        },
        0.0,
        1.0 / (m - e),
        1e-14,
        1e-11,
    )
    .unwrap()
}

#[test]
fn resolvent_reference_values() {
    close(free_resolvent_bound(1.0, 0.5, 1.0).unwrap(), 0.3171448281664337437272, 1e-10);
    close(free_resolvent_bound(1.0, -1.5, 1.0).unwrap(), 0.03209683164803749501211, 1e-10);
    close(free_resolvent_bound(0.3, 0.9, 1.0).unwrap(), 2.05203681924423026728, 1e-10);
    close(free_resolvent_bound(2.0, 0.0, 1.0).unwrap(), 0.03625354567193512581248, 1e-10);
    close(free_resolvent_bound(0.775, 0.99, 1.0).unwrap(), 6.364253714140955402729, 1e-10);
    close(free_resolvent_bound(5.0, -0.25, 1.0).unwrap(), 6.185515584029829743059e-4, 1e-10);
    close(free_resolvent_bound(0.7, 1.3, 2.0).unwrap(), 0.3283451167343898296660, 1e-10);
    close(free_resolvent_bound(2.0, -0.7, 0.0).unwrap(), 0.07367810144042754955741, 1e-10);
}

#[test]
fn scatter_damped_reference_values() {
    close(scatter_damped(1.0, 0.75, 1.0).unwrap(), 0.03849350984262906705232, 1e-10);
    close(scatter_damped(1.0, 1.0, 1.0).unwrap(), 0.03410565447574951731447, 1e-10);
    // k -> 0 limit (the threshold combination).
    close(scatter_damped(0.9, 1e-9, 1.0).unwrap(), 0.0566817632187, 1e-9);
    close(scatter_damped(3.0, 1e-9, 1.0).unwrap(), 0.00216925678603, 1e-9);
    close(scatter_damped(10.0, 1e-9, 1.0).unwrap(), 4.59676703743e-7, 1e-9);
}

#[test]
fn heat_kernel_semigroup_property() {
    // int dz K_s(x - z) K_t(z - y) = K_{s+t}(x - y); here s = 0.3, t = 0.9,
    // |x - y| = 1, m = 1, and the z integral runs over the whole line.
    let (s, t, m) = (0.3, 0.9, 1.0);
    let f = |z: f64| {
        let d1 = (1.0 - z).abs().max(1e-300);
        let d2 = z.abs().max(1e-300);
        heat_kernel(s, d1, m).unwrap() * heat_kernel(t, d2, m).unwrap()
    };
    let inner = quad::integrate(f, -8.0, 9.0, 1e-13, 1e-11).unwrap();
    let left = quad::integrate_half_line(|u| f(-u), 8.0, 1.0, 1e-14, 1e-11).unwrap();
    let right = quad::integrate_half_line(f, 9.0, 1.0, 1e-14, 1e-11).unwrap();
    let conv = inner + left + right;
    close(conv, 0.062081280873234907387, 1e-9);
    close(heat_kernel(1.2, 1.0, 1.0).unwrap(), 0.062081280873234907387, 1e-12);
}

#[test]
fn three_representations_agree() {
    for &(d, e, m) in &[
        (1.0, 0.5, 1.0),
        (0.6, -0.8, 1.0),
        (2.3, 0.1, 1.0),
        (0.9, -2.0, 1.5),
        (1.4, 0.0, 1.0),
    ] {
        let branch = free_resolvent_bound(d, e, m).unwrap();
        let momentum = momentum_resolvent(d, e, m);
        let time = time_resolvent(d, e, m);
        assert!(
            (momentum - branch).abs() < 1e-8 * branch.abs(),
            "momentum vs branch at d = {d}, E = {e}, m = {m}: {momentum} vs {branch}"
        );
        assert!(
            (time - branch).abs() < 1e-9 * branch.abs(),
            "time vs branch at d = {d}, E = {e}, m = {m}: {time} vs {branch}"
        );
    }
}

#[test]
fn massless_resolvent_is_massive_limit() {
    // Small but nonzero mass should approach the massless closed form.
    let exact = free_resolvent_bound(2.0, -0.7, 0.0).unwrap();
    let nearly = free_resolvent_bound(2.0, -0.7, 1e-7).unwrap();
    assert!((exact - nearly).abs() < 1e-6 * exact);
}
