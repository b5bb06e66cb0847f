//! Gauss-Legendre quadrature with composite panels and a simple
//! refinement-based error estimate.

use std::sync::OnceLock;

/// Nodes and weights for n-point Gauss-Legendre on [-1, 1].
///
/// Computed by Newton iteration on the Legendre polynomial; cached per order.
pub fn gauss_legendre(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Vec<OnceLock<(Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=64).map(|_| OnceLock::new()).collect());
    assert!(n >= 1 && n <= 64, "supported orders: 1..=64");
    cache[n].get_or_init(|| compute_gauss_legendre(n))
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Initial guess: Chebyshev-like approximation to the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, dp) = legendre_and_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integrate f over [a, b] with a single n-point Gauss-Legendre rule.
pub fn integrate_gl<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let c = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut s = 0.0;
    for (x, w) in nodes.iter().zip(weights.iter()) {
        s += w * f(mid + c * x);
    }
    s * c
}

/// Composite Gauss-Legendre over uniform panels.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut s = 0.0;
    for i in 0..panels {
        s += integrate_gl(f, a + i as f64 * h, a + (i + 1) as f64 * h, order);
    }
    s
}

/// Adaptive panel doubling until the relative change drops below `rtol`.
///
/// Returns (value, achieved relative error estimate).
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rtol: f64,
    max_panels: usize,
) -> (f64, f64) {
    let mut panels = 4;
    let mut prev = integrate_panels(f, a, b, panels, 16);
    loop {
        panels *= 2;
        let next = integrate_panels(f, a, b, panels, 16);
        let scale = next.abs().max(prev.abs()).max(1e-300);
        let err = (next - prev).abs() / scale;
        if err < rtol || panels >= max_panels {
            return (next, err);
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_exact_for_polynomials() {
        // 8-point rule is exact through degree 15.
        let f = |x: f64| 3.0 * x.powi(7) - x.powi(4) + 2.0 * x - 5.0;
        let exact = |x: f64| 3.0 / 8.0 * x.powi(8) - x.powi(5) / 5.0 + x * x - 5.0 * x;
        let got = integrate_gl(&f, -1.3, 2.1, 8);
        assert!((got - (exact(2.1) - exact(-1.3))).abs() < 1e-12);
    }

    #[test]
    fn adaptive_converges_on_oscillatory() {
        let f = |x: f64| (10.0 * x).sin();
        let (got, err) = integrate_adaptive(&f, 0.0, 2.0, 1e-12, 1 << 14);
        let exact = (1.0 - (20.0_f64).cos()) / 10.0;
        assert!(err < 1e-10);
        assert!((got - exact).abs() < 1e-11);
    }
}
