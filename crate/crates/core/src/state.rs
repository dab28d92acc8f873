//! Displaced quantum elliptic vortex states in the position representation.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gamma_half_integer, neumaier_sum, QuadratureRule, RuleKind, MAX_GAUSS_HERMITE_ORDER};

/// Sign of the imaginary unit in the vortex bracket `(X ± iY)^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chirality {
    #[default]
    Plus,
    Minus,
}

impl Chirality {
    pub fn sign(self) -> f64 {
        match self {
            Chirality::Plus => 1.0,
            Chirality::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }
}

/// On-disk form of [`VortexParams`]; widths are always derived on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VortexParamsFile {
    m: u32,
    zeta_x: f64,
    zeta_y: f64,
    #[serde(default)]
    x0: f64,
    #[serde(default)]
    y0: f64,
    #[serde(default)]
    px0: f64,
    #[serde(default)]
    py0: f64,
    #[serde(default)]
    chirality: Chirality,
}

/// Full parameterization of a displaced QEV state.
///
/// `sigma_i = exp(2 zeta_i)` and `eta_i = 1/(√2 sigma_i)` are derived and kept
/// consistent by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VortexParamsFile", into = "VortexParamsFile")]
pub struct VortexParams {
    m: u32,
    zeta_x: f64,
    zeta_y: f64,
    sigma_x: f64,
    sigma_y: f64,
    pub x0: f64,
    pub y0: f64,
    pub px0: f64,
    pub py0: f64,
    pub chirality: Chirality,
}

impl VortexParams {
    pub fn new(m: u32, zeta_x: f64, zeta_y: f64) -> Result<Self> {
        if !(zeta_x.is_finite() && zeta_y.is_finite()) {
            return Err(Error::Config(format!("squeezing parameters ({zeta_x}, {zeta_y}) must be finite")));
        }
        let sigma_x = (2.0 * zeta_x).exp();
        let sigma_y = (2.0 * zeta_y).exp();
        if !(sigma_x > 0.0 && sigma_y > 0.0 && sigma_x.is_finite() && sigma_y.is_finite()) {
            return Err(Error::Config(format!("widths ({sigma_x}, {sigma_y}) out of range")));
        }
        Ok(Self {
            m,
            zeta_x,
            zeta_y,
            sigma_x,
            sigma_y,
            x0: 0.0,
            y0: 0.0,
            px0: 0.0,
            py0: 0.0,
            chirality: Chirality::Plus,
        })
    }

    /// Panicking shorthand for [`Self::new`] with finite, moderate squeezings.
    pub fn from_squeezing(m: u32, zeta_x: f64, zeta_y: f64) -> Self {
        Self::new(m, zeta_x, zeta_y).expect("finite squeezing parameters")
    }

    /// Builds parameters from Gaussian widths, `zeta_i = ln(sigma_i)/2`.
    pub fn from_widths(m: u32, sigma_x: f64, sigma_y: f64) -> Result<Self> {
        if !(sigma_x > 0.0 && sigma_y > 0.0 && sigma_x.is_finite() && sigma_y.is_finite()) {
            return Err(Error::Config(format!("widths ({sigma_x}, {sigma_y}) must be positive and finite")));
        }
        let mut p = Self::new(m, 0.5 * sigma_x.ln(), 0.5 * sigma_y.ln())?;
        // keep the requested widths exactly rather than exp(ln(.)) round trips
        p.sigma_x = sigma_x;
        p.sigma_y = sigma_y;
        Ok(p)
    }

    pub fn with_displacement(mut self, x0: f64, y0: f64, px0: f64, py0: f64) -> Self {
        self.x0 = x0;
        self.y0 = y0;
        self.px0 = px0;
        self.py0 = py0;
        self
    }

    pub fn with_chirality(mut self, chirality: Chirality) -> Self {
        self.chirality = chirality;
        self
    }

    /// Exchanges the roles of the two modes (widths, displacements).
    pub fn mode_swapped(&self) -> Self {
        Self {
            m: self.m,
            zeta_x: self.zeta_y,
            zeta_y: self.zeta_x,
            sigma_x: self.sigma_y,
            sigma_y: self.sigma_x,
            x0: self.y0,
            y0: self.x0,
            px0: self.py0,
            py0: self.px0,
            chirality: self.chirality,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn zeta_x(&self) -> f64 {
        self.zeta_x
    }

    pub fn zeta_y(&self) -> f64 {
        self.zeta_y
    }

    pub fn sigma_x(&self) -> f64 {
        self.sigma_x
    }

    pub fn sigma_y(&self) -> f64 {
        self.sigma_y
    }

    pub fn eta_x(&self) -> f64 {
        1.0 / (SQRT_2 * self.sigma_x)
    }

    pub fn eta_y(&self) -> f64 {
        1.0 / (SQRT_2 * self.sigma_y)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }

    /// Unnormalized wavefunction without the momentum plane wave, at offsets
    /// `(dx, dy)` from the vortex core: `B^m G`.
    pub(crate) fn core_amplitude(&self, dx: f64, dy: f64) -> Complex64 {
        let b = self.bracket(dx, dy);
        let g = (-0.5 * ((dx / self.sigma_x).powi(2) + (dy / self.sigma_y).powi(2))).exp();
        b.powu(self.m) * g
    }

    /// `(B^m G, ∂_x(B^m G), ∂_y(B^m G))` at offsets from the core, by the product rule.
    pub(crate) fn core_amplitude_and_gradient(&self, dx: f64, dy: f64) -> (Complex64, Complex64, Complex64) {
        let (sx, sy) = (self.sigma_x, self.sigma_y);
        let b = self.bracket(dx, dy);
        let g = (-0.5 * ((dx / sx).powi(2) + (dy / sy).powi(2))).exp();
        let bm = b.powu(self.m);
        let dbm = if self.m == 0 { Complex64::new(0.0, 0.0) } else { f64::from(self.m) * b.powu(self.m - 1) };
        let db_dx = Complex64::new(1.0 / (SQRT_2 * sx), 0.0);
        let db_dy = Complex64::new(0.0, self.chirality.sign() / (SQRT_2 * sy));
        let phi = bm * g;
        let gx = dbm * db_dx * g - phi * (dx / (sx * sx));
        let gy = dbm * db_dy * g - phi * (dy / (sy * sy));
        (phi, gx, gy)
    }

    fn bracket(&self, dx: f64, dy: f64) -> Complex64 {
        Complex64::new(dx / (SQRT_2 * self.sigma_x), self.chirality.sign() * dy / (SQRT_2 * self.sigma_y))
    }
}

impl TryFrom<VortexParamsFile> for VortexParams {
    type Error = Error;

    fn try_from(f: VortexParamsFile) -> Result<Self> {
        let finite = [f.x0, f.y0, f.px0, f.py0].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::Config("displacements must be finite".into()));
        }
        Ok(Self::new(f.m, f.zeta_x, f.zeta_y)?
            .with_displacement(f.x0, f.y0, f.px0, f.py0)
            .with_chirality(f.chirality))
    }
}

impl From<VortexParams> for VortexParamsFile {
    fn from(p: VortexParams) -> Self {
        Self {
            m: p.m,
            zeta_x: p.zeta_x,
            zeta_y: p.zeta_y,
            x0: p.x0,
            y0: p.y0,
            px0: p.px0,
            py0: p.py0,
            chirality: p.chirality,
        }
    }
}

/// Beam-splitter / directional-coupler coefficients `(A₁, A₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsCoefficients {
    pub a1: Complex64,
    pub a2: Complex64,
}

/// Tolerance on both coupler constraints.
pub const BS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsConstraint {
    /// `|A₁|² + |A₂|² = 1`
    Unitarity,
    /// `A₁*A₂ + A₂*A₁ = 0`
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BsVerdict {
    Valid,
    Violated { constraint: BsConstraint, residual: f64 },
}

/// Checks the coupler unitarity constraints; the first violated one is reported.
pub fn validate_bs(c: BsCoefficients) -> BsVerdict {
    let unitarity = c.a1.norm_sqr() + c.a2.norm_sqr() - 1.0;
    if unitarity.abs() > BS_TOLERANCE {
        return BsVerdict::Violated { constraint: BsConstraint::Unitarity, residual: unitarity.abs() };
    }
    let phase = (c.a1.conj() * c.a2 + c.a2.conj() * c.a1).re;
    if phase.abs() > BS_TOLERANCE {
        return BsVerdict::Violated { constraint: BsConstraint::Phase, residual: phase.abs() };
    }
    BsVerdict::Valid
}

/// A QEV state with its numerically determined normalization constant.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedState {
    params: VortexParams,
    norm_factor: f64,
    printed_prefactor_ratio: f64,
    order: usize,
}

/// Relative change in N tolerated when the quadrature order is doubled.
pub const NORM_CONVERGENCE_TOL: f64 = 1e-8;

impl NormalizedState {
    pub fn params(&self) -> &VortexParams {
        &self.params
    }

    pub fn norm_factor(&self) -> f64 {
        self.norm_factor
    }

    /// `N²` divided by the square of the closed-form prefactor
    /// `2^{m−2} / (σ_x σ_y Γ(m+½) √π)`. Equals 4 for m = 0.
    pub fn printed_prefactor_ratio(&self) -> f64 {
        self.printed_prefactor_ratio
    }

    /// Gauss–Hermite order used for normalization; moment quadratures reuse it.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `ψ` with the plane wave removed, at offsets from the core.
    pub(crate) fn core_psi(&self, dx: f64, dy: f64) -> Complex64 {
        self.params.core_amplitude(dx, dy) * self.norm_factor
    }
}

fn norm_integral(params: &VortexParams, rule: &QuadratureRule) -> f64 {
    let (sx, sy) = (params.sigma_x(), params.sigma_y());
    let t = rule.nodes();
    let w = rule.plain_weights();
    let rows: Vec<f64> = t
        .iter()
        .zip(w)
        .map(|(ti, wi)| {
            let dx = sx * ti;
            neumaier_sum(t.iter().zip(w).map(|(tj, wj)| wi * wj * params.core_amplitude(dx, sy * tj).norm_sqr()))
        })
        .collect();
    neumaier_sum(rows) * sx * sy
}

/// Computes `N` such that `∫|ψ|² dx dy = 1`.
///
/// The integral is evaluated with `rule` on σ-scaled axes and again with
/// twice the order (or half, when doubling would exceed the supported
/// maximum); disagreement beyond [`NORM_CONVERGENCE_TOL`] is an error.
pub fn normalize(params: &VortexParams, rule: &QuadratureRule) -> Result<NormalizedState> {
    if rule.kind() != RuleKind::GaussHermite {
        return Err(Error::Config("normalization requires a Gauss-Hermite rule".into()));
    }
    let order = rule.order();
    let check_order = if 2 * order <= MAX_GAUSS_HERMITE_ORDER { 2 * order } else { order / 2 };
    let check_rule = QuadratureRule::gauss_hermite(check_order)?;

    let i1 = norm_integral(params, rule);
    let i2 = norm_integral(params, &check_rule);
    if !(i1.is_finite() && i1 > 0.0) {
        return Err(Error::Numerical(format!("normalization integral {i1} is not positive")));
    }
    let n1 = i1.sqrt().recip();
    let n2 = i2.sqrt().recip();
    if ((n1 - n2) / n1).abs() > NORM_CONVERGENCE_TOL {
        return Err(Error::Numerical(format!(
            "normalization not converged: N = {n1} at order {order}, {n2} at order {check_order}"
        )));
    }

    let m = params.m();
    let printed_sq = 2f64.powi(m as i32 - 2) / (params.sigma_x() * params.sigma_y() * gamma_half_integer(m) * PI.sqrt());
    Ok(NormalizedState { params: *params, norm_factor: n1, printed_prefactor_ratio: n1 * n1 / printed_sq, order })
}

/// Normalized wavefunction `ψ(x, y)` including the momentum plane wave.
pub fn psi(state: &NormalizedState, x: f64, y: f64) -> Complex64 {
    let p = &state.params;
    let phase = Complex64::from_polar(1.0, p.px0 * x + p.py0 * y);
    state.core_psi(x - p.x0, y - p.y0) * phase
}

/// `|ψ(x, y)|²`.
pub fn intensity(state: &NormalizedState, x: f64, y: f64) -> f64 {
    let p = &state.params;
    state.core_psi(x - p.x0, y - p.y0).norm_sqr()
}
