//! Symplectic spectrum, Gaussian PPT separability and logarithmic negativity.
//!
//! For a two-mode covariance matrix with blocks `α, β, μ`
//!
//! ```text
//! Δ̃ = det α + det β − 2 det μ          (partially transposed Σ)
//! Δ  = det α + det β + 2 det μ          (Σ itself)
//! ν±² = (Δ ± √(Δ² − 4 det Σ)) / 2
//! ```
//!
//! The state is PPT-entangled iff `ν̃< < 1/2`, and `E_N = max(0, −ln 2ν̃<)`.
//! Only the covariance matrix is used: for non-Gaussian inputs the result is
//! the Gaussian-PPT negativity of that matrix.

use serde::{Deserialize, Serialize};

use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};

/// Slack allowed on `Δ² − 4 det Σ` before it is treated as invalid.
pub const RADICAND_TOL: f64 = 1e-12;
/// Quadrature noise floor on `ν̃< ≥ 1/2`: within it the state is separable and `E_N = 0`.
pub const SEPARABILITY_TOL: f64 = 1e-10;
/// Slack on the uncertainty bound `ν_min ≥ 1/2` for accepting a matrix as physical.
pub const PHYSICALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    fn ln_factor(self) -> f64 {
        match self {
            LogBase::Natural => 1.0,
            LogBase::Two => std::f64::consts::LN_2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymplecticReport {
    pub delta_tilde: f64,
    pub delta_plain: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
    pub nu_min: f64,
    pub nu_min_plain: f64,
    pub separable: bool,
    pub log_negativity: f64,
    #[serde(default)]
    pub log_base: LogBase,
}

impl SymplecticReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }
}

/// `Δ` with `−2 det μ` when `transposed`, `+2 det μ` otherwise.
pub fn delta(sigma: &CovarianceMatrix, transposed: bool) -> f64 {
    let sign = if transposed { -2.0 } else { 2.0 };
    sigma.det_alpha() + sigma.det_beta() + sign * sigma.det_mu()
}

/// `(ν₊, ν₋)` with `ν₊ ≥ ν₋ ≥ 0`.
pub fn symplectic_eigenvalues(sigma: &CovarianceMatrix, transposed: bool) -> Result<(f64, f64)> {
    let d = delta(sigma, transposed);
    let det = sigma.det();
    if !(d.is_finite() && det.is_finite()) {
        return Err(Error::InvalidCovariance(format!("non-finite invariants Δ = {d}, det Σ = {det}")));
    }
    if det < -RADICAND_TOL {
        return Err(Error::InvalidCovariance(format!("det Σ = {det:e} is negative")));
    }
    let det = det.max(0.0);
    let mut disc = d * d - 4.0 * det;
    // Rounding error of the difference, from the magnitudes of the 2×2 products
    // that cancel in Δ and det Σ; √ would amplify it to ~1e-8 at degeneracy.
    let t = term_scale(sigma);
    if disc.abs() <= 64.0 * f64::EPSILON * (d.abs() * t + t * t) {
        disc = 0.0;
    }
    if disc < 0.0 {
        if disc < -RADICAND_TOL {
            return Err(Error::InvalidCovariance(format!("Δ² − 4 det Σ = {disc:e} is negative")));
        }
        disc = 0.0;
    }
    let root = disc.sqrt();
    let plus_sq = 0.5 * (d + root);
    if plus_sq < 0.0 {
        return Err(Error::InvalidCovariance(format!("ν₊² = {plus_sq:e} is negative")));
    }
    // ν₋² = (Δ − √disc)/2 = 2 det Σ / (Δ + √disc), free of cancellation
    let minus_sq = if plus_sq > 0.0 { det / plus_sq } else { 0.0 };
    Ok((plus_sq.sqrt(), minus_sq.sqrt()))
}

fn term_scale(sigma: &CovarianceMatrix) -> f64 {
    let abs_det = |a: &[[f64; 2]; 2]| (a[0][0] * a[1][1]).abs() + (a[0][1] * a[1][0]).abs();
    abs_det(&sigma.alpha) + abs_det(&sigma.beta) + 2.0 * abs_det(&sigma.mu)
}

/// Full symplectic analysis with natural-log negativity.
pub fn analyze(sigma: &CovarianceMatrix) -> Result<SymplecticReport> {
    analyze_with_base(sigma, LogBase::Natural)
}

pub fn analyze_with_base(sigma: &CovarianceMatrix, base: LogBase) -> Result<SymplecticReport> {
    let (_, nu_min_plain) = symplectic_eigenvalues(sigma, false)?;
    if nu_min_plain < 0.5 - PHYSICALITY_TOL {
        return Err(Error::Unphysical { nu_min_plain });
    }
    let (nu_plus, nu_minus) = symplectic_eigenvalues(sigma, true)?;
    let nu_min = nu_plus.min(nu_minus);
    let separable = nu_min >= 0.5 - SEPARABILITY_TOL;
    Ok(SymplecticReport {
        delta_tilde: delta(sigma, true),
        delta_plain: delta(sigma, false),
        nu_plus,
        nu_minus,
        nu_min,
        nu_min_plain,
        separable,
        log_negativity: if separable { 0.0 } else { log_negativity(nu_min) / base.ln_factor() },
        log_base: base,
    })
}

/// `max(0, −ln 2ν)`.
pub fn log_negativity(nu_min: f64) -> f64 {
    (-(2.0 * nu_min).ln()).max(0.0)
}
