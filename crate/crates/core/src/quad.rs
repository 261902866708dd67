//! Numerical integration helpers.
//!
//! The workhorse is an adaptive scheme in the Gauss-Kronrod tradition: a
//! 21-point Gauss-Legendre rule gives the panel estimate, a 10-point rule the
//! error estimate, and panels are bisected until the estimates agree within
//! tolerance. Integrands here (metric factors, gaussian spectra times a
//! complex fringe phasor) are analytic, so convergence per panel is fast and
//! the bisection mainly tracks oscillation from large time shifts.
//!
//! Also provided: fixed-order Gauss-Legendre rules (used for per-bin averages
//! in the discrete oracle) and runtime node generation for arbitrary order
//! (used to discretize internal spectra of toy-model clocks).

use num_complex::Complex64;

const GL10_NODES: [f64; 10] = [
    -0.9739065285171717,
    -0.8650633666889845,
    -0.6794095682990244,
    -0.4333953941292472,
    -0.14887433898163122,
    0.14887433898163122,
    0.4333953941292472,
    0.6794095682990244,
    0.8650633666889845,
    0.9739065285171717,
];
const GL10_WEIGHTS: [f64; 10] = [
    0.06667134430868807,
    0.14945134915058036,
    0.219086362515982,
    0.2692667193099965,
    0.295524224714753,
    0.295524224714753,
    0.2692667193099965,
    0.219086362515982,
    0.14945134915058036,
    0.06667134430868807,
];
const GL21_NODES: [f64; 21] = [
    -0.9937521706203895,
    -0.9672268385663063,
    -0.9200993341504008,
    -0.8533633645833173,
    -0.7684399634756779,
    -0.6671388041974123,
    -0.5516188358872198,
    -0.4243421202074388,
    -0.2880213168024011,
    -0.1455618541608951,
    0.0,
    0.1455618541608951,
    0.2880213168024011,
    0.4243421202074388,
    0.5516188358872198,
    0.6671388041974123,
    0.7684399634756779,
    0.8533633645833173,
    0.9200993341504008,
    0.9672268385663063,
    0.9937521706203895,
];
const GL21_WEIGHTS: [f64; 21] = [
    0.016017228257774137,
    0.03695378977085292,
    0.057134425426857156,
    0.07610011362837935,
    0.09344442345603382,
    0.10879729916714831,
    0.12183141605372842,
    0.13226893863333739,
    0.13988739479107312,
    0.14452440398997007,
    0.14608113364969047,
    0.14452440398997007,
    0.13988739479107312,
    0.13226893863333739,
    0.12183141605372842,
    0.10879729916714831,
    0.09344442345603382,
    0.07610011362837935,
    0.057134425426857156,
    0.03695378977085292,
    0.016017228257774137,
];

/// 5-point Gauss-Legendre nodes on [-1, 1]; exact through degree 9.
pub const GL5_NODES: [f64; 5] = [
    -0.906179845938664,
    -0.5384693101056831,
    0.0,
    0.5384693101056831,
    0.906179845938664,
];
/// Weights matching [`GL5_NODES`]; they sum to 2.
pub const GL5_WEIGHTS: [f64; 5] = [
    0.23692688505618942,
    0.4786286704993662,
    0.568888888888889,
    0.4786286704993662,
    0.23692688505618942,
];

/// Tolerances for the adaptive integrator. The accepted panel error is
/// `max(abs_tol_panel, rel_tol * |estimate|)` with the absolute budget spread
/// over panels proportionally to their width.
#[derive(Debug, Clone, Copy)]
pub struct QuadTol {
    pub abs: f64,
    pub rel: f64,
}

impl QuadTol {
    pub const fn new(abs: f64, rel: f64) -> Self {
        QuadTol { abs, rel }
    }
}

impl Default for QuadTol {
    fn default() -> Self {
        // Generic default for O(1) integrands.
        QuadTol { abs: 1e-13, rel: 1e-12 }
    }
}

const MAX_DEPTH: u32 = 52;

fn gl_pair<F>(f: &F, a: f64, b: f64) -> (Complex64, Complex64)
where
    F: Fn(f64) -> Complex64,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut hi = Complex64::new(0.0, 0.0);
    for (x, w) in GL21_NODES.iter().zip(GL21_WEIGHTS.iter()) {
        hi += *w * f(mid + half * x);
    }
    let mut lo = Complex64::new(0.0, 0.0);
    for (x, w) in GL10_NODES.iter().zip(GL10_WEIGHTS.iter()) {
        lo += *w * f(mid + half * x);
    }
    (hi * half, lo * half)
}

fn adapt<F>(f: &F, a: f64, b: f64, whole_width: f64, tol: QuadTol, depth: u32) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (hi, lo) = gl_pair(f, a, b);
    let err = (hi - lo).norm();
    let budget = (tol.abs * ((b - a) / whole_width).max(f64::MIN_POSITIVE)).max(tol.rel * hi.norm());
    if err <= budget || depth >= MAX_DEPTH || (b - a) < f64::EPSILON * whole_width {
        return hi;
    }
    let mid = 0.5 * (a + b);
    adapt(f, a, mid, whole_width, tol, depth + 1) + adapt(f, mid, b, whole_width, tol, depth + 1)
}

/// Adaptive integral of a complex-valued function over [a, b].
pub fn integrate_complex<F>(f: F, a: f64, b: f64, tol: QuadTol) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    adapt(&f, a, b, (b - a).abs(), tol, 0)
}

/// Adaptive integral of a real-valued function over [a, b].
pub fn integrate<F>(f: F, a: f64, b: f64, tol: QuadTol) -> f64
where
    F: Fn(f64) -> f64,
{
    integrate_complex(|x| Complex64::new(f(x), 0.0), a, b, tol).re
}

/// Fixed 5-point Gauss-Legendre integral over [a, b]. Used where the interval
/// is already known to be a small fraction of the integrand's scale.
pub fn gl5_complex<F>(f: F, a: f64, b: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
        acc += *w * f(mid + half * x);
    }
    acc * half
}

/// Gauss-Legendre nodes and weights of arbitrary order on [a, b], computed by
/// Newton iteration on the Legendre recurrence. Nodes are accurate to a few
/// ulp for n up to several thousand.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let m = n.div_ceil(2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let xm = 0.5 * (b + a);
    let xl = 0.5 * (b - a);
    for i in 0..m {
        // Chebyshev-like initial guess, then Newton on P_n(x).
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                let jf = j as f64;
                p0 = ((2.0 * jf + 1.0) * z * p1 - jf * p2) / (jf + 1.0);
            }
            pp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                // One clean-up step keeps the node at full precision.
                let mut q0 = 1.0;
                let mut q1 = 0.0;
                for j in 0..n {
                    let q2 = q1;
                    q1 = q0;
                    let jf = j as f64;
                    q0 = ((2.0 * jf + 1.0) * z * q1 - jf * q2) / (jf + 1.0);
                }
                pp = n as f64 * (z * q0 - q1) / (z * z - 1.0);
                z -= q0 / pp;
                break;
            }
        }
        nodes[i] = xm - xl * z;
        nodes[n - 1 - i] = xm + xl * z;
        let w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // Central node of an odd rule sits exactly at the midpoint.
        nodes[n / 2] = xm;
    }
    (nodes, weights)
}

/// Compensated sum of an iterator of f64 terms (Neumaier's variant, which
/// unlike plain Kahan also survives terms that dwarf the running sum).
pub fn kahan_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
    }
    sum + carry
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, QuadTol::default());
        assert_relative_eq!(v, 8.0, epsilon = 1e-14);
    }

    #[test]
    fn gaussian_integral() {
        // int_-inf^inf e^{-x^2} = sqrt(pi); the tails beyond +-8 are < 1e-28.
        let v = integrate(|x| (-x * x).exp(), -8.0, 8.0, QuadTol::new(1e-15, 1e-14));
        assert_relative_eq!(v, std::f64::consts::PI.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn oscillatory_complex_integral() {
        // int_0^1 e^{i w x} dx = (e^{iw} - 1) / (i w), here with ~80 periods.
        let w = 500.0;
        let v = integrate_complex(
            |x| Complex64::new(0.0, w * x).exp(),
            0.0,
            1.0,
            QuadTol::new(1e-14, 1e-13),
        );
        let exact = (Complex64::new(0.0, w).exp() - 1.0) / Complex64::new(0.0, w);
        assert!((v - exact).norm() < 1e-12);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(integrate(|x| x.exp(), 1.0, 1.0, QuadTol::default()), 0.0);
    }

    #[test]
    fn runtime_nodes_match_frozen_low_order() {
        let (x, w) = gauss_legendre(5, -1.0, 1.0);
        for (a, b) in x.iter().zip(GL5_NODES.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
        for (a, b) in w.iter().zip(GL5_WEIGHTS.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn high_order_rule_integrates_oscillation() {
        let (x, w) = gauss_legendre(257, 0.0, 1.0);
        let val: f64 = x.iter().zip(w.iter()).map(|(xi, wi)| wi * (40.0 * xi).sin()).sum();
        let exact = (1.0 - (40.0f64).cos()) / 40.0;
        assert_relative_eq!(val, exact, epsilon = 1e-13);
    }

    #[test]
    fn kahan_handles_adversarial_terms() {
        let terms = [1.0, 1e16, 1.0, -1e16];
        assert_eq!(kahan_sum(terms.iter().copied()), 2.0);
    }
}
