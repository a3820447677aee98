//! One-dimensional rules: Gauss-Legendre and the periodic trapezoid.

use std::f64::consts::PI;

/// `n`-point Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n > 0, "need at least one node");
    let mut out = vec![(0.0, 0.0); n];
    for i in 0..(n + 1) / 2 {
        // Chebyshev-like initial guess, refined by Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss-Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| (mid + half * x, half * w))
        .collect()
}

/// `n` equispaced nodes on `[0, 2π)` with equal weights.
pub fn periodic_trapezoid(n: usize) -> Vec<(f64, f64)> {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|k| (k as f64 * h, h)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules() {
        let r = gauss_legendre(2);
        let a = 1.0 / 3f64.sqrt();
        assert!((r[0].0 + a).abs() < 1e-15 && (r[1].0 - a).abs() < 1e-15);
        assert!((r[0].1 - 1.0).abs() < 1e-15);
        let r = gauss_legendre(1);
        assert_eq!(r[0].0, 0.0);
        assert!((r[0].1 - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        for n in [3, 8, 17, 48] {
            let rule = gauss_legendre(n);
            let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert!((wsum - 2.0).abs() < 1e-13, "n={n}");
            for k in 0..2 * n {
                let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
                let want = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn mapped_interval_and_trapezoid() {
        let rule = gauss_legendre_on(12, 0.0, PI);
        let s: f64 = rule.iter().map(|&(x, w)| w * x.sin().powi(2)).sum();
        assert!((s - PI / 2.0).abs() < 1e-12);
        let trap = periodic_trapezoid(16);
        let c: f64 = trap.iter().map(|&(x, w)| w * (3.0 * x).cos().powi(2)).sum();
        assert!((c - PI).abs() < 1e-13);
    }
}
