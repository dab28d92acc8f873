use rayon::prelude::*;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::sum::NeumaierSum;
use crate::error::{Error, Result};
use crate::phase_space::PhaseSpacePoint;

/// Highest supported Gauss–Hermite order.
pub const MAX_GAUSS_HERMITE_ORDER: usize = 256;
/// Per-axis order used throughout the crate unless overridden.
pub const DEFAULT_ORDER: usize = 64;
/// Half-width of the interval covered by `make_rule(TrapezoidGrid, n)`.
pub const DEFAULT_TRAPEZOID_HALF_WIDTH: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    /// Nodes and weights for `∫ f(t) e^{-t²} dt`.
    GaussHermite,
    /// Equally spaced nodes on `[-h, h]` with trapezoid weights.
    TrapezoidGrid,
}

/// A one-dimensional quadrature rule on a reference axis.
///
/// When used through [`TensorGrid4`] the reference node `t` is mapped to
/// `center + scale · t`. For Gauss–Hermite rules the weight function is
/// divided back out, so integrands are integrated as-is.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: RuleKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// Weights for integrating `f` itself: `w e^{t²}` for Gauss–Hermite, `w` otherwise.
    plain_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn plain_weights(&self) -> &[f64] {
        &self.plain_weights
    }

    /// Gauss–Hermite rule of [`DEFAULT_ORDER`].
    pub fn default_gauss_hermite() -> Self {
        gauss_hermite(DEFAULT_ORDER)
    }

    /// Gauss–Hermite rule of the given order.
    pub fn gauss_hermite(order: usize) -> Result<Self> {
        make_rule(RuleKind::GaussHermite, order)
    }

    /// Trapezoid rule with `order` equally spaced nodes on `[-half_width, half_width]`.
    pub fn trapezoid(order: usize, half_width: f64) -> Result<Self> {
        if order < 2 {
            return Err(Error::Config(format!("trapezoid grid needs at least 2 nodes, got {order}")));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::Config(format!("trapezoid half width {half_width} must be positive")));
        }
        let h = 2.0 * half_width / (order - 1) as f64;
        let nodes: Vec<f64> = (0..order).map(|i| -half_width + h * i as f64).collect();
        let mut weights = vec![h; order];
        weights[0] = 0.5 * h;
        weights[order - 1] = 0.5 * h;
        Ok(Self { kind: RuleKind::TrapezoidGrid, nodes, plain_weights: weights.clone(), weights })
    }

    /// `Σ w_i f(t_i)` against the rule's own weight function.
    pub fn integrate_weighted<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut acc = NeumaierSum::new();
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(*t));
        }
        acc.total()
    }

    /// `∫ f(center + scale·t) scale dt` with the weight function removed.
    pub fn integrate_plain<F: Fn(f64) -> f64>(&self, center: f64, scale: f64, f: F) -> f64 {
        let mut acc = NeumaierSum::new();
        for (t, w) in self.nodes.iter().zip(&self.plain_weights) {
            acc.add(w * scale * f(center + scale * t));
        }
        acc.total()
    }
}

/// Builds a quadrature rule.
///
/// Gauss–Hermite orders must lie in `2..=256`; trapezoid grids cover
/// `[-8, 8]` and need at least 2 nodes.
pub fn make_rule(kind: RuleKind, order: usize) -> Result<QuadratureRule> {
    match kind {
        RuleKind::GaussHermite => {
            if !(2..=MAX_GAUSS_HERMITE_ORDER).contains(&order) {
                return Err(Error::Config(format!(
                    "Gauss-Hermite order must be in 2..={MAX_GAUSS_HERMITE_ORDER}, got {order}"
                )));
            }
            Ok(gauss_hermite(order))
        }
        RuleKind::TrapezoidGrid => QuadratureRule::trapezoid(order, DEFAULT_TRAPEZOID_HALF_WIDTH),
    }
}

/// Orthonormal Hermite recurrence at `z`; returns `(p_n(z), p_n'(z))` for
/// the Hermite functions normalized without the Gaussian factor.
fn hermite_normalized(n: usize, z: f64) -> (f64, f64) {
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut p1 = pim4;
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, (2.0 * n as f64).sqrt() * p2)
}

// Eigenvalues of the Jacobi matrix seed a Newton polish on the orthonormal
// recurrence. Weights come from the derivative of the orthonormal
// polynomial, which keeps them accurate in a relative sense even in the far
// tails where w ~ 1e-100.
fn gauss_hermite(n: usize) -> QuadratureRule {
    let half = n.div_ceil(2);
    let jacobi = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i.abs_diff(j) == 1 {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let mut seeds: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    seeds.sort_by(|a, b| b.total_cmp(a));

    let mut pos = vec![0.0f64; half];
    let mut log_w = vec![0.0f64; half];
    for i in 0..half {
        let mut z = seeds[i];
        for _ in 0..20 {
            let (p, dp) = hermite_normalized(n, z);
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        let (_, dp) = hermite_normalized(n, z);
        pos[i] = z;
        log_w[i] = std::f64::consts::LN_2 - 2.0 * dp.abs().ln();
    }

    // seeds are descending; store ascending
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let mut plain = vec![0.0; n];
    for i in 0..half {
        let lo = i;
        let hi = n - 1 - i;
        let t = pos[i].abs();
        let w = log_w[i].exp();
        let pw = (log_w[i] + t * t).exp();
        nodes[lo] = -t;
        nodes[hi] = t;
        weights[lo] = w;
        weights[hi] = w;
        plain[lo] = pw;
        plain[hi] = pw;
    }
    if n % 2 == 1 {
        nodes[half - 1] = 0.0;
    }
    QuadratureRule { kind: RuleKind::GaussHermite, nodes, weights, plain_weights: plain }
}

/// Tensor product of four one-dimensional rules over `(x, y, p_x, p_y)`.
///
/// Node coordinates are `center_k + scale_k · t`, and the stored weights
/// already include the axis scaling and, for Gauss–Hermite axes, the removed
/// Gaussian weight.
#[derive(Debug, Clone)]
pub struct TensorGrid4 {
    coords: [Vec<f64>; 4],
    weights: [Vec<f64>; 4],
}

impl TensorGrid4 {
    pub fn new(rules: [&QuadratureRule; 4], scaling: [f64; 4], center: PhaseSpacePoint) -> Result<Self> {
        if let Some(s) = scaling.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::Config(format!("axis scaling {s} must be positive")));
        }
        let c = center.to_array();
        let coords = std::array::from_fn(|k| rules[k].nodes().iter().map(|t| c[k] + scaling[k] * t).collect());
        let weights = std::array::from_fn(|k| rules[k].plain_weights().iter().map(|w| w * scaling[k]).collect());
        Ok(Self { coords, weights })
    }

    /// Node coordinates along axis `k` (0 = x, 1 = y, 2 = p_x, 3 = p_y).
    pub fn coords(&self, k: usize) -> &[f64] {
        &self.coords[k]
    }

    pub fn weights(&self, k: usize) -> &[f64] {
        &self.weights[k]
    }

    pub fn shape(&self) -> [usize; 4] {
        std::array::from_fn(|k| self.coords[k].len())
    }

    pub fn len(&self) -> usize {
        self.shape().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major flat index with `p_y` fastest.
    pub fn index(&self, i: [usize; 4]) -> usize {
        let s = self.shape();
        ((i[0] * s[1] + i[1]) * s[2] + i[2]) * s[3] + i[3]
    }

    pub fn point(&self, i: [usize; 4]) -> PhaseSpacePoint {
        PhaseSpacePoint::new(self.coords[0][i[0]], self.coords[1][i[1]], self.coords[2][i[2]], self.coords[3][i[3]])
    }

    pub fn weight(&self, i: [usize; 4]) -> f64 {
        self.weights[0][i[0]] * self.weights[1][i[1]] * self.weights[2][i[2]] * self.weights[3][i[3]]
    }

    /// Quadrature estimate of `∫ f`.
    ///
    /// Work is split across threads by the leading `x` index and the partial
    /// sums are combined in index order, so the result does not depend on
    /// the thread count.
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(PhaseSpacePoint) -> f64 + Sync,
    {
        let s = self.shape();
        let partials: Vec<Result<f64>> = (0..s[0])
            .into_par_iter()
            .map(|a| {
                let mut acc = NeumaierSum::new();
                for b in 0..s[1] {
                    for c in 0..s[2] {
                        for d in 0..s[3] {
                            let idx = [a, b, c, d];
                            let pt = self.point(idx);
                            let v = f(pt);
                            if !v.is_finite() {
                                return Err(Error::NonFinite { point: pt });
                            }
                            acc.add(self.weight(idx) * v);
                        }
                    }
                }
                Ok(acc.total())
            })
            .collect();
        let mut total = NeumaierSum::new();
        for p in partials {
            total.add(p?);
        }
        Ok(total.total())
    }

    /// `∫ g · values` where `values` is tabulated on the grid in [`Self::index`] order.
    pub fn integrate_tabulated<G>(&self, values: &[f64], g: G) -> f64
    where
        G: Fn(PhaseSpacePoint) -> f64 + Sync,
    {
        let s = self.shape();
        let partials: Vec<f64> = (0..s[0])
            .into_par_iter()
            .map(|a| {
                let mut acc = NeumaierSum::new();
                for b in 0..s[1] {
                    for c in 0..s[2] {
                        for d in 0..s[3] {
                            let idx = [a, b, c, d];
                            acc.add(self.weight(idx) * values[self.index(idx)] * g(self.point(idx)));
                        }
                    }
                }
                acc.total()
            })
            .collect();
        super::sum::neumaier_sum(partials)
    }
}

/// Tensor-product quadrature of `f` over the axis-scaled, center-shifted domain.
pub fn integrate_4d<F>(f: F, rules: [&QuadratureRule; 4], scaling: [f64; 4], center: PhaseSpacePoint) -> Result<f64>
where
    F: Fn(PhaseSpacePoint) -> f64 + Sync,
{
    TensorGrid4::new(rules, scaling, center)?.integrate(f)
}
