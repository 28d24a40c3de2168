//! Gauss–Legendre quadrature: fixed rules and an adaptive panel-doubling
//! integrator (32 nodes per panel, stop when the relative change between
//! refinements drops below the budget, hard cap 2^20 nodes).
//!
//! A plain composite Simpson rule is provided as the independent path for the
//! half-plane grid oracle.

use crate::error::{CoreError, Result};
use crate::C64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Values that can be accumulated by the integrators: scalars and small
/// fixed-size bundles of kernels sharing one integrand evaluation.
pub trait Integrand: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, w: f64) -> Self;
    /// Magnitude used by the relative stopping criterion.
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, w: f64) -> Self {
        self * w
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, w: f64) -> Self {
        self * w
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

impl<const K: usize> Integrand for [f64; K] {
    fn zero() -> Self {
        [0.0; K]
    }
    fn add(mut self, other: Self) -> Self {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b;
        }
        self
    }
    fn scale(mut self, w: f64) -> Self {
        for a in self.iter_mut() {
            *a *= w;
        }
        self
    }
    fn magnitude(self) -> f64 {
        self.into_iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// An n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "rule needs at least two nodes");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Newton iteration from the Chebyshev-angle initial guess.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_pair(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_pair(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Single-panel integral of `f` over [a, b].
    pub fn panel<T: Integrand>(&self, f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> T {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc.add(f(mid + half * x).scale(w));
        }
        acc.scale(half)
    }

    /// Composite integral with `panels` equal panels over [a, b].
    pub fn composite<T: Integrand>(
        &self,
        f: &mut impl FnMut(f64) -> T,
        a: f64,
        b: f64,
        panels: usize,
    ) -> T {
        let mut acc = T::zero();
        let h = (b - a) / panels as f64;
        for p in 0..panels {
            let pa = a + h * p as f64;
            acc = acc.add(self.panel(f, pa, pa + h));
        }
        acc
    }
}

/// The shared 32-node rule used by the adaptive integrator.
pub fn gl32() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(32))
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveConfig {
    /// Stop when the change between refinements is below this, relatively.
    pub rel_tol: f64,
    /// Hard cap on total node count.
    pub max_nodes: usize,
    /// First refinement level; callers raise it for oscillatory integrands.
    pub initial_panels: usize,
}

impl Default for AdaptiveConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            max_nodes: 1 << 20,
            initial_panels: 1,
        }
    }
}

impl AdaptiveConfig {
    pub fn with_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_initial_panels(mut self, panels: usize) -> Self {
        self.initial_panels = panels.max(1);
        self
    }
}

/// Panel-doubling adaptive integration of `f` over [a, b].
pub fn integrate<T: Integrand>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    cfg: AdaptiveConfig,
) -> Result<T> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(CoreError::Input("non-finite integration bounds".into()));
    }
    if a == b {
        return Ok(T::zero());
    }
    let rule = gl32();
    let mut panels = cfg.initial_panels.max(1);
    let mut prev = rule.composite(&mut f, a, b, panels);
    loop {
        panels *= 2;
        let nodes = panels * rule.len();
        let cur = rule.composite(&mut f, a, b, panels);
        let scale = cur.magnitude().max(prev.magnitude());
        let change = cur.add(prev.scale(-1.0)).magnitude();
        if scale == 0.0 || change <= cfg.rel_tol * scale {
            return Ok(cur);
        }
        if nodes * 2 > cfg.max_nodes {
            return Err(CoreError::Accuracy {
                last_change: change / scale,
                nodes,
            });
        }
        prev = cur;
    }
}

/// Composite Simpson on a uniform grid with `count` points (made odd if
/// necessary). Independent of the Gauss–Legendre path.
pub fn simpson_uniform<T: Integrand>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    count: usize,
) -> T {
    let n = if count < 3 {
        3
    } else if count % 2 == 0 {
        count + 1
    } else {
        count
    };
    let h = (b - a) / (n - 1) as f64;
    let mut acc = f(a).add(f(b));
    for i in 1..n - 1 {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc = acc.add(f(a + h * i as f64).scale(w));
    }
    acc.scale(h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_nodes_integrate_polynomials_exactly() {
        let rule = GaussLegendre::new(8);
        // degree 15 is exact for an 8-point rule
        let exact = 2.0 / 15.0; // ∫_{-1}^{1} x^14 dx
        let got: f64 = rule.panel(&mut |x: f64| x.powi(14), -1.0, 1.0);
        assert!((got - exact).abs() < 1e-14, "got {got}");
    }

    #[test]
    fn adaptive_hits_smooth_targets() {
        let v: f64 = integrate(|x: f64| x.exp(), 0.0, 1.0, AdaptiveConfig::default()).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_boundary_layer() {
        // ∫_0^1 e^{-1000(1-x)} dx = (1 - e^{-1000})/1000
        let v: f64 = integrate(
            |x: f64| (-1000.0 * (1.0 - x)).exp(),
            0.0,
            1.0,
            AdaptiveConfig::default().with_initial_panels(8),
        )
        .unwrap();
        assert!((v - 1e-3).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn adaptive_zero_integrand() {
        let v: f64 = integrate(|_| 0.0, 0.0, 1.0, AdaptiveConfig::default()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn adaptive_reports_nonconvergence() {
        // A needle far below panel resolution with a tiny node budget.
        let cfg = AdaptiveConfig {
            rel_tol: 1e-14,
            max_nodes: 128,
            initial_panels: 1,
        };
        let r: Result<f64> = integrate(
            |x: f64| 1.0 / ((x - 0.123456).powi(2) + 1e-18),
            0.0,
            1.0,
            cfg,
        );
        assert!(matches!(r, Err(CoreError::Accuracy { .. })));
    }

    #[test]
    fn simpson_matches_known_integral() {
        let v: f64 = simpson_uniform(|x: f64| (x * x).sin(), 0.0, 2.0, 4001);
        let reference: f64 = integrate(
            |x: f64| (x * x).sin(),
            0.0,
            2.0,
            AdaptiveConfig::with_tol(1e-12),
        )
        .unwrap();
        assert!((v - reference).abs() < 1e-9);
    }

    #[test]
    fn array_bundles_accumulate_componentwise() {
        let v: [f64; 2] = integrate(
            |x: f64| [x, x * x],
            0.0,
            1.0,
            AdaptiveConfig::default(),
        )
        .unwrap();
        assert!((v[0] - 0.5).abs() < 1e-14);
        assert!((v[1] - 1.0 / 3.0).abs() < 1e-14);
    }
}
