//! Symmetrized first and second moments and the 4×4 covariance matrix.
//!
//! Ordering of the phase-space vector is `(x, p_x, y, p_y)`, so
//! `Σ = [[α, μ], [μᵀ, β]]` with `α` the `(x, p_x)` block, `β` the `(y, p_y)`
//! block and `μ = [[⟨xy⟩, ⟨x p_y⟩], [⟨y p_x⟩, ⟨p_x p_y⟩]]` (all symmetrized).
//!
//! Two backends compute the moments independently:
//!
//! * `Wavefunction`: 2D Gauss–Hermite quadrature of `|ψ|²`, `ψ* x_j ∂_i ψ`
//!   and `∂_i ψ* ∂_j ψ` with analytic derivatives;
//! * `Wigner`: 4D Gauss–Hermite phase-space averages against the oracle
//!   Wigner function.
//!
//! Both are exact for these states once the order exceeds the polynomial
//! degree: every integrand is a polynomial times the state's Gaussian.

use nalgebra::Matrix4;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{det2_exact, neumaier_sum, DoubleDouble, NeumaierSum, QuadratureRule, TensorGrid4};
use crate::phase_space::PhaseSpacePoint;
use crate::state::NormalizedState;
use crate::wigner::{default_oracle_rule, wigner_closed_form, wigner_oracle_slab};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Wavefunction,
    /// Phase-space averages against the oracle Wigner function.
    Wigner,
    /// Phase-space averages against the rescaled closed-form Wigner
    /// function. Validation only.
    WignerClosedForm,
    /// Hand-constructed matrices (reference states, tests).
    Analytic,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Wavefunction => "wavefunction",
            Backend::Wigner => "wigner",
            Backend::WignerClosedForm => "wigner_closed_form",
            Backend::Analytic => "analytic",
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    X2,
    Px2,
    Y2,
    Py2,
    XPxSym,
    YPySym,
    XySym,
    XPySym,
    YPxSym,
    PxPySym,
    X,
    Y,
    Px,
    Py,
}

impl Observable {
    pub const ALL: [Observable; 14] = [
        Observable::X2,
        Observable::Px2,
        Observable::Y2,
        Observable::Py2,
        Observable::XPxSym,
        Observable::YPySym,
        Observable::XySym,
        Observable::XPySym,
        Observable::YPxSym,
        Observable::PxPySym,
        Observable::X,
        Observable::Y,
        Observable::Px,
        Observable::Py,
    ];

    /// Indices into `(x, p_x, y, p_y)`: one index for first moments, two for
    /// symmetrized products.
    fn indices(self) -> (usize, Option<usize>) {
        use Observable::*;
        match self {
            X2 => (0, Some(0)),
            Px2 => (1, Some(1)),
            Y2 => (2, Some(2)),
            Py2 => (3, Some(3)),
            XPxSym => (0, Some(1)),
            YPySym => (2, Some(3)),
            XySym => (0, Some(2)),
            XPySym => (0, Some(3)),
            YPxSym => (2, Some(1)),
            PxPySym => (1, Some(3)),
            X => (0, None),
            Px => (1, None),
            Y => (2, None),
            Py => (3, None),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentRequest {
    pub observable: Observable,
    pub backend: Backend,
}

/// Quadrature choices for the moment backends.
#[derive(Debug, Clone)]
pub struct MomentConfig {
    /// Per-axis rule for the 4D phase-space average.
    pub wigner_rule: QuadratureRule,
    /// `(u, v)` rule inside the oracle Wigner transform.
    pub oracle_rule: QuadratureRule,
}

impl MomentConfig {
    /// Defaults adequate for `state`: the 4D rule is exact for polynomial
    /// degree `2m + 2` with margin.
    pub fn for_state(state: &NormalizedState) -> Self {
        let order = 16usize.max(state.params().m() as usize + 6);
        Self {
            wigner_rule: QuadratureRule::gauss_hermite(order).expect("supported order"),
            oracle_rule: default_oracle_rule(),
        }
    }
}

/// Moments about the displacement center `r₀ = (x₀, p_x0, y₀, p_y0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ShiftedMoments {
    origin: [f64; 4],
    mean: [f64; 4],
    second: [[f64; 4]; 4],
}

impl ShiftedMoments {
    fn raw(&self, obs: Observable) -> f64 {
        let (i, j) = obs.indices();
        let (o, m) = (&self.origin, &self.mean);
        match j {
            None => o[i] + m[i],
            Some(j) => self.second[i][j] + o[i] * m[j] + o[j] * m[i] + o[i] * o[j],
        }
    }

    fn covariance(&self, i: usize, j: usize) -> f64 {
        self.second[i][j] - self.mean[i] * self.mean[j]
    }
}

fn origin(state: &NormalizedState) -> [f64; 4] {
    let p = state.params();
    [p.x0, p.px0, p.y0, p.py0]
}

fn wavefunction_moments(state: &NormalizedState) -> Result<ShiftedMoments> {
    let p = state.params();
    let (sx, sy) = (p.sigma_x(), p.sigma_y());
    let rule = QuadratureRule::gauss_hermite(state.order())?;
    let t = rule.nodes();
    let w = rule.plain_weights();
    let n2 = state.norm_factor().powi(2);

    // Integrals per x-row, combined in row order.
    const K: usize = 15;
    let rows: Vec<[f64; K]> = (0..t.len())
        .into_par_iter()
        .map(|a| {
            let dx = sx * t[a];
            let mut acc = [NeumaierSum::new(); K];
            for b in 0..t.len() {
                let dy = sy * t[b];
                let wt = w[a] * w[b] * sx * sy * n2;
                let (phi, gx, gy) = p.core_amplitude_and_gradient(dx, dy);
                let rho = phi.norm_sqr();
                let pgx = phi.conj() * gx;
                let pgy = phi.conj() * gy;
                let terms = [
                    rho,
                    rho * dx,
                    pgx.im,
                    rho * dy,
                    pgy.im,
                    rho * dx * dx,
                    rho * dy * dy,
                    rho * dx * dy,
                    gx.norm_sqr(),
                    gy.norm_sqr(),
                    (gx.conj() * gy).re,
                    pgx.im * dx,
                    pgy.im * dy,
                    pgy.im * dx,
                    pgx.im * dy,
                ];
                for (k, term) in terms.iter().enumerate() {
                    acc[k].add(wt * term);
                }
            }
            acc.map(|a| a.total())
        })
        .collect();

    let total = |k: usize| neumaier_sum(rows.iter().map(|r| r[k]));
    let norm = total(0);
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-8 {
        return Err(Error::Numerical(format!("wavefunction norm {norm} deviates from 1")));
    }
    let mean = [total(1), total(2), total(3), total(4)];
    let (xx, yy, xy) = (total(5), total(6), total(7));
    let (pxpx, pypy, pxpy) = (total(8), total(9), total(10));
    let (xpx, ypy, xpy, ypx) = (total(11), total(12), total(13), total(14));
    let second = [[xx, xpx, xy, xpy], [xpx, pxpx, ypx, pxpy], [xy, ypx, yy, ypy], [xpy, pxpy, ypy, pypy]];
    let out = ShiftedMoments { origin: origin(state), mean, second };
    check_finite(&out)?;
    Ok(out)
}

fn check_finite(m: &ShiftedMoments) -> Result<()> {
    for (i, obs) in Observable::ALL.iter().enumerate() {
        let v = m.raw(*obs);
        if !v.is_finite() {
            return Err(Error::Numerical(format!("moment {obs:?} (#{i}) is not finite")));
        }
    }
    Ok(())
}

fn phase_space_moments(state: &NormalizedState, closed_form: bool, cfg: &MomentConfig) -> Result<ShiftedMoments> {
    let p = state.params();
    let (sx, sy) = (p.sigma_x(), p.sigma_y());
    // The closed form's momentum Gaussian is exp(−σ²p²/2): its width is √2/σ.
    let pscale = if closed_form { std::f64::consts::SQRT_2 } else { 1.0 };
    let center = PhaseSpacePoint::new(p.x0, p.y0, p.px0, p.py0);
    let rule = &cfg.wigner_rule;
    let grid = TensorGrid4::new([rule, rule, rule, rule], [sx, sy, pscale / sx, pscale / sy], center)?;
    let s = grid.shape();

    let slabs: Vec<Result<Vec<f64>>> = (0..s[0] * s[1])
        .into_par_iter()
        .map(|k| {
            let x = grid.coords(0)[k / s[1]];
            let y = grid.coords(1)[k % s[1]];
            if closed_form {
                Ok(grid
                    .coords(2)
                    .iter()
                    .flat_map(|px| grid.coords(3).iter().map(move |py| (*px, *py)))
                    .map(|(px, py)| wigner_closed_form(p, PhaseSpacePoint::new(x, y, px, py)))
                    .collect())
            } else {
                wigner_oracle_slab(state, x, y, grid.coords(2), grid.coords(3), &cfg.oracle_rule).map(|(v, _)| v)
            }
        })
        .collect();
    let mut values = Vec::with_capacity(grid.len());
    for slab in slabs {
        values.extend(slab?);
    }

    let norm = grid.integrate_tabulated(&values, |_| 1.0);
    if !norm.is_finite() || norm.abs() < 1e-12 {
        return Err(Error::Numerical(format!("phase-space normalization {norm} is degenerate")));
    }
    if closed_form {
        values.iter_mut().for_each(|v| *v /= norm);
    }
    // shifted coordinates in (x, p_x, y, p_y) order
    let coord = |pt: PhaseSpacePoint, i: usize| match i {
        0 => pt.x - center.x,
        1 => pt.p_x - center.p_x,
        2 => pt.y - center.y,
        _ => pt.p_y - center.p_y,
    };
    let mean: [f64; 4] = std::array::from_fn(|i| grid.integrate_tabulated(&values, |pt| coord(pt, i)));
    let mut second = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let v = grid.integrate_tabulated(&values, |pt| coord(pt, i) * coord(pt, j));
            second[i][j] = v;
            second[j][i] = v;
        }
    }
    let out = ShiftedMoments { origin: origin(state), mean, second };
    check_finite(&out)?;
    Ok(out)
}

fn shifted_moments(state: &NormalizedState, backend: Backend, cfg: &MomentConfig) -> Result<ShiftedMoments> {
    match backend {
        Backend::Wavefunction => wavefunction_moments(state),
        Backend::Wigner => phase_space_moments(state, false, cfg),
        Backend::WignerClosedForm => phase_space_moments(state, true, cfg),
        Backend::Analytic => Err(Error::Config("the analytic backend has no moment quadrature".into())),
    }
}

/// Raw (uncentered) expectation value of one symmetrized observable.
pub fn moment(state: &NormalizedState, req: MomentRequest) -> Result<f64> {
    moment_with(state, req, &MomentConfig::for_state(state))
}

pub fn moment_with(state: &NormalizedState, req: MomentRequest, cfg: &MomentConfig) -> Result<f64> {
    Ok(shifted_moments(state, req.backend, cfg)?.raw(req.observable))
}

/// Covariance matrix `Σ = [[α, μ], [μᵀ, β]]` over `(x, p_x, y, p_y)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceMatrix {
    pub alpha: [[f64; 2]; 2],
    pub beta: [[f64; 2]; 2],
    pub mu: [[f64; 2]; 2],
    /// `(⟨x⟩, ⟨p_x⟩, ⟨y⟩, ⟨p_y⟩)`
    pub first_moments: [f64; 4],
    pub backend: Backend,
    pub centered: bool,
}

fn det2(m: &[[f64; 2]; 2]) -> f64 {
    det2_exact(m[0][0], m[0][1], m[1][0], m[1][1])
}

impl CovarianceMatrix {
    pub fn from_blocks(alpha: [[f64; 2]; 2], beta: [[f64; 2]; 2], mu: [[f64; 2]; 2]) -> Self {
        Self { alpha, beta, mu, first_moments: [0.0; 4], backend: Backend::Analytic, centered: true }
    }

    pub fn vacuum() -> Self {
        Self::from_blocks([[0.5, 0.0], [0.0, 0.5]], [[0.5, 0.0], [0.0, 0.5]], [[0.0; 2]; 2])
    }

    /// Two-mode squeezed vacuum with squeezing `r`.
    pub fn two_mode_squeezed(r: f64) -> Self {
        let c = 0.5 * (2.0 * r).cosh();
        let s = 0.5 * (2.0 * r).sinh();
        Self::from_blocks([[c, 0.0], [0.0, c]], [[c, 0.0], [0.0, c]], [[s, 0.0], [0.0, -s]])
    }

    /// Full 4×4 matrix.
    pub fn to_matrix4(&self) -> Matrix4<f64> {
        let (a, b, m) = (&self.alpha, &self.beta, &self.mu);
        Matrix4::new(
            a[0][0], a[0][1], m[0][0], m[0][1], //
            a[1][0], a[1][1], m[1][0], m[1][1], //
            m[0][0], m[1][0], b[0][0], b[0][1], //
            m[0][1], m[1][1], b[1][0], b[1][1],
        )
    }

    /// Reads the blocks back from a 4×4 matrix (upper off-diagonal block as `μ`).
    pub fn from_matrix4(s: &Matrix4<f64>) -> Self {
        Self::from_blocks(
            [[s[(0, 0)], s[(0, 1)]], [s[(1, 0)], s[(1, 1)]]],
            [[s[(2, 2)], s[(2, 3)]], [s[(3, 2)], s[(3, 3)]]],
            [[s[(0, 2)], s[(0, 3)]], [s[(1, 2)], s[(1, 3)]]],
        )
    }

    /// `S Σ Sᵀ`, keeping metadata.
    pub fn congruence(&self, s: &Matrix4<f64>) -> Self {
        let out = s * self.to_matrix4() * s.transpose();
        Self { first_moments: self.first_moments, backend: self.backend, centered: self.centered, ..Self::from_matrix4(&out) }
    }

    pub fn det_alpha(&self) -> f64 {
        det2(&self.alpha)
    }

    pub fn det_beta(&self) -> f64 {
        det2(&self.beta)
    }

    pub fn det_mu(&self) -> f64 {
        det2(&self.mu)
    }

    /// `det Σ` by the Leibniz expansion in double-double arithmetic.
    ///
    /// Each of the 24 products is unchanged by local squeezing
    /// `diag(s, 1/s, t, 1/t)`, so strongly squeezed matrices keep their
    /// accuracy where pivoted elimination would not; the extended precision
    /// absorbs the cancellation between products after rotations and shears.
    pub fn det(&self) -> f64 {
        let m = self.to_matrix4();
        let mut acc = DoubleDouble::default();
        let mut perm = [0usize, 1, 2, 3];
        for_each_permutation(&mut perm, 0, 1.0, &mut |p, sign| {
            let t = DoubleDouble::product(sign * m[(0, p[0])], m[(1, p[1])]).mul_f64(m[(2, p[2])]).mul_f64(m[(3, p[3])]);
            acc = acc.add(t);
        });
        acc.value()
    }

    pub fn sup_norm_mu(&self) -> f64 {
        self.mu.iter().flatten().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.alpha[0][1] - self.alpha[1][0]).abs() <= tol && (self.beta[0][1] - self.beta[1][0]).abs() <= tol
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn for_each_permutation<F: FnMut(&[usize; 4], f64)>(p: &mut [usize; 4], k: usize, sign: f64, f: &mut F) {
    if k == p.len() {
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        let s = if i == k { sign } else { -sign };
        for_each_permutation(p, k + 1, s, f);
        p.swap(k, i);
    }
}

/// Computes all moments with one backend and assembles the centered `Σ`.
pub fn assemble(state: &NormalizedState, backend: Backend) -> Result<CovarianceMatrix> {
    assemble_with(state, backend, &MomentConfig::for_state(state))
}

pub fn assemble_with(state: &NormalizedState, backend: Backend, cfg: &MomentConfig) -> Result<CovarianceMatrix> {
    let m = shifted_moments(state, backend, cfg)?;
    let c = |i, j| m.covariance(i, j);
    let cov = CovarianceMatrix {
        alpha: [[c(0, 0), c(0, 1)], [c(0, 1), c(1, 1)]],
        beta: [[c(2, 2), c(2, 3)], [c(2, 3), c(3, 3)]],
        mu: [[c(0, 2), c(0, 3)], [c(1, 2), c(1, 3)]],
        first_moments: [m.raw(Observable::X), m.raw(Observable::Px), m.raw(Observable::Y), m.raw(Observable::Py)],
        backend,
        centered: true,
    };
    for (k, v) in [cov.alpha[0][0], cov.alpha[1][1], cov.beta[0][0], cov.beta[1][1]].iter().enumerate() {
        if !(*v > 0.0) {
            return Err(Error::Numerical(format!("diagonal covariance entry #{k} = {v} is not positive")));
        }
    }
    Ok(cov)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentDiff {
    pub observable: Observable,
    pub wavefunction: f64,
    pub wigner: f64,
    pub diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub per_moment: Vec<MomentDiff>,
    pub max_diff: f64,
    pub tolerance: f64,
    pub consistent: bool,
}

pub const DEFAULT_CROSS_CHECK_TOL: f64 = 1e-5;

/// Compares all fourteen moments from the two backends.
pub fn cross_check(state: &NormalizedState, tolerance: f64) -> Result<CrossCheckReport> {
    cross_check_with(state, tolerance, &MomentConfig::for_state(state))
}

pub fn cross_check_with(state: &NormalizedState, tolerance: f64, cfg: &MomentConfig) -> Result<CrossCheckReport> {
    let a = shifted_moments(state, Backend::Wavefunction, cfg)?;
    let b = shifted_moments(state, Backend::Wigner, cfg)?;
    let per_moment: Vec<MomentDiff> = Observable::ALL
        .iter()
        .map(|&o| {
            let (wf, wg) = (a.raw(o), b.raw(o));
            MomentDiff { observable: o, wavefunction: wf, wigner: wg, diff: (wf - wg).abs() }
        })
        .collect();
    let max_diff = per_moment.iter().map(|d| d.diff).fold(0.0, f64::max);
    Ok(CrossCheckReport { per_moment, max_diff, tolerance, consistent: max_diff <= tolerance })
}

/// A deliberately truncated 4D rule (±3 widths) for negative controls.
pub fn truncated_config(state: &NormalizedState) -> MomentConfig {
    MomentConfig {
        wigner_rule: QuadratureRule::trapezoid(15, 3.0).expect("valid trapezoid"),
        ..MomentConfig::for_state(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{normalize, Chirality, VortexParams};
    use approx::assert_relative_eq;

    fn state(p: VortexParams) -> NormalizedState {
        normalize(&p, &QuadratureRule::default_gauss_hermite()).unwrap()
    }

    #[test]
    fn vacuum_moments_both_backends() {
        let s = state(VortexParams::from_widths(0, 1.0, 1.0).unwrap());
        for backend in [Backend::Wavefunction, Backend::Wigner] {
            let v = moment(&s, MomentRequest { observable: Observable::X2, backend }).unwrap();
            assert_relative_eq!(v, 0.5, epsilon = 1e-12);
            let c = assemble(&s, backend).unwrap();
            let diag = [c.alpha[0][0], c.alpha[1][1], c.beta[0][0], c.beta[1][1]];
            for d in diag {
                assert_relative_eq!(d, 0.5, epsilon = 1e-12);
            }
            assert!(c.sup_norm_mu() < 1e-12);
        }
    }

    #[test]
    fn squeezed_widths() {
        let s = state(VortexParams::from_widths(0, 2.0, 1.0).unwrap());
        for backend in [Backend::Wavefunction, Backend::Wigner] {
            let x2 = moment(&s, MomentRequest { observable: Observable::X2, backend }).unwrap();
            let p2 = moment(&s, MomentRequest { observable: Observable::Px2, backend }).unwrap();
            assert_relative_eq!(x2, 2.0, epsilon = 1e-10);
            assert_relative_eq!(p2, 0.125, epsilon = 1e-10);
        }
    }

    #[test]
    fn circular_vortex_blocks() {
        // (x+iy)e^{-r²/2}: α = β = I, μ = [[0, ½], [−½, 0]]
        let s = state(VortexParams::from_widths(1, 1.0, 1.0).unwrap());
        let c = assemble(&s, Backend::Wavefunction).unwrap();
        assert_relative_eq!(c.alpha[0][0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(c.alpha[1][1], 1.0, epsilon = 1e-12);
        assert_relative_eq!(c.mu[0][1], 0.5, epsilon = 1e-12);
        assert_relative_eq!(c.mu[1][0], -0.5, epsilon = 1e-12);
        assert!(c.mu[0][0].abs() < 1e-12 && c.mu[1][1].abs() < 1e-12);
        let w = assemble(&s, Backend::Wigner).unwrap();
        assert_relative_eq!(w.mu[0][1], -w.mu[1][0], epsilon = 1e-10);
        assert!(w.mu[0][1].abs() > 0.1);
    }

    #[test]
    fn raw_moments_include_displacement() {
        let p = VortexParams::from_widths(1, 0.8, 1.2).unwrap().with_displacement(1.5, -0.5, 0.25, 2.0);
        let s = state(p);
        let x = moment(&s, MomentRequest { observable: Observable::X, backend: Backend::Wavefunction }).unwrap();
        let py = moment(&s, MomentRequest { observable: Observable::Py, backend: Backend::Wavefunction }).unwrap();
        assert_relative_eq!(x, 1.5, epsilon = 1e-12);
        assert_relative_eq!(py, 2.0, epsilon = 1e-12);
        let c = assemble(&s, Backend::Wavefunction).unwrap();
        let x2 = moment(&s, MomentRequest { observable: Observable::X2, backend: Backend::Wavefunction }).unwrap();
        assert_relative_eq!(x2, c.alpha[0][0] + 2.25, epsilon = 1e-12);
    }

    #[test]
    fn momentum_moments_match_finite_difference_oracle() {
        // ⟨p_x²⟩ = ∫|∂_x ψ|² with ∂_x by central differences at step 1e-5
        let p = VortexParams::from_widths(2, 0.9, 1.4).unwrap().with_chirality(Chirality::Minus);
        let s = state(p);
        let rule = QuadratureRule::gauss_hermite(64).unwrap();
        let h = 1e-5;
        let (sx, sy) = (p.sigma_x(), p.sigma_y());
        let mut acc = 0.0;
        for (tx, wx) in rule.nodes().iter().zip(rule.plain_weights()) {
            for (ty, wy) in rule.nodes().iter().zip(rule.plain_weights()) {
                let (x, y) = (sx * tx, sy * ty);
                let d = (s.core_psi(x + h, y) - s.core_psi(x - h, y)) / (2.0 * h);
                acc += wx * wy * sx * sy * d.norm_sqr();
            }
        }
        let px2 = moment(&s, MomentRequest { observable: Observable::Px2, backend: Backend::Wavefunction }).unwrap();
        assert!((acc - px2).abs() < 1e-5, "{acc} vs {px2}");
    }

    #[test]
    fn leibniz_determinant_matches_nalgebra() {
        let c = CovarianceMatrix::from_blocks([[1.3, 0.2], [0.2, 0.9]], [[0.7, -0.1], [-0.1, 1.1]], [[0.3, 0.05], [-0.2, 0.1]]);
        assert_relative_eq!(c.det(), c.to_matrix4().determinant(), max_relative = 1e-13);
        let back = CovarianceMatrix::from_matrix4(&c.to_matrix4());
        assert_eq!(back, c);
    }

    #[test]
    fn json_schema() {
        let c = CovarianceMatrix::vacuum();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        for key in ["alpha", "beta", "mu", "first_moments", "backend", "centered"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["backend"], "analytic");
        assert_eq!(CovarianceMatrix::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn analytic_backend_has_no_moments() {
        let s = state(VortexParams::from_widths(0, 1.0, 1.0).unwrap());
        assert!(moment(&s, MomentRequest { observable: Observable::X, backend: Backend::Analytic }).is_err());
    }
}
