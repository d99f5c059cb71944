use alloc::vec::Vec;

use crate::math::{self, PI};

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `f` over `[-1, 1]`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate_on(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        half * self.integrate(|t| f(mid + half * t))
    }
}

/// Legendre `P_n(x)` and `P_{n-1}(x)` by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// `points`-node Gauss-Legendre rule; exact for polynomials of degree
/// `2·points − 1`. Nodes come out sorted ascending.
///
/// # Panics
/// If `points == 0`.
pub fn gauss_legendre(points: usize) -> QuadratureRule {
    assert!(points >= 1, "gauss_legendre needs at least one node");
    let n = points;
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi initial guess, descending in i
        let mut x = math::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, p_prev) = legendre_pair(n, x);
            dp = nf * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if math::abs(dx) <= 1e-16 {
                break;
            }
        }
        let (p, p_prev) = legendre_pair(n, x);
        dp = if dp == 0.0 { 1.0 } else { nf * (x * p - p_prev) / (x * x - 1.0) };
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    nodes.reverse();
    weights.reverse();
    QuadratureRule { nodes, weights }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_and_two_points() {
        let r = gauss_legendre(1);
        assert_eq!(r.nodes, [0.0]);
        assert!((r.weights[0] - 2.0).abs() < 1e-15);

        let r = gauss_legendre(2);
        let s = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + s).abs() < 1e-15 && (r.nodes[1] - s).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sixteen_points_x30() {
        let r = gauss_legendre(16);
        let v = r.integrate(|x| x.powi(30));
        assert!((v - 2.0 / 31.0).abs() < 1e-14, "{v}");
    }

    #[test]
    fn exactness_on_monomials() {
        for n in 1..=40 {
            let r = gauss_legendre(n);
            assert!(r.weights.iter().all(|&w| w > 0.0));
            assert!(r.nodes.windows(2).all(|p| p[0] < p[1]));
            for deg in 0..(2 * n) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let got = r.integrate(|x| x.powi(deg as i32));
                assert!((got - exact).abs() < 1e-13, "n={n} deg={deg}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn mapped_interval() {
        let r = gauss_legendre(5);
        let v = r.integrate_on(0.0, 2.0, |x| x * x * x);
        assert!((v - 4.0).abs() < 1e-13);
    }
}
