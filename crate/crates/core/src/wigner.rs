//! Four-dimensional Wigner function of QEV states.
//!
//! Two independent evaluation paths are provided:
//!
//! * [`wigner_closed_form`], the compact Laguerre expression written in
//!   shifted and scaled phase-space variables, evaluated verbatim with its
//!   printed prefactor `K`;
//! * [`wigner_oracle`], the Wigner transform
//!   `W = (1/π²) ∬ ψ*(x+u, y+v) ψ(x−u, y−v) e^{2i(p_x u + p_y v)} du dv`
//!   computed by Gauss–Hermite quadrature directly from the wavefunction.
//!
//! The oracle is the ground truth used by the covariance module. The closed
//! form does not integrate to one and is only compared after rescaling; see
//! [`validate_wigner`].

use std::f64::consts::{PI, SQRT_2};
use std::io::{BufRead, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gamma_half_integer, laguerre_eval, neumaier_sum, LaguerreSpec, QuadratureRule, RuleKind};
pub use crate::phase_space::PhaseSpacePoint;
use crate::state::{intensity, normalize, NormalizedState, VortexParams};

/// Gauss–Hermite order of the oracle's `(u, v)` quadrature.
pub const DEFAULT_ORACLE_ORDER: usize = 96;
/// Largest tolerated `|Im W|` from the oracle.
pub const IMAG_RESIDUAL_TOL: f64 = 1e-9;

/// Shifted and scaled variables entering the closed-form Wigner function.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChangedVariables {
    pub x1: f64,
    pub y1: f64,
    pub px1: f64,
    pub py1: f64,
    pub x2: f64,
    pub y2: f64,
    pub px2: f64,
    pub py2: f64,
}

pub fn change_variables(params: &VortexParams, pt: PhaseSpacePoint) -> ChangedVariables {
    let (sx, sy) = (params.sigma_x(), params.sigma_y());
    let dx = pt.x - params.x0;
    let dy = pt.y - params.y0;
    let dpx = pt.p_x - params.px0;
    let dpy = pt.p_y - params.py0;
    ChangedVariables {
        x1: dx / sx,
        y1: dy / sy,
        px1: sx * dpx / SQRT_2,
        py1: sy * dpy / SQRT_2,
        x2: sy * dx / (2.0 * sx),
        y2: sx * dy / (2.0 * sy),
        px2: sy.powi(3) * dpx / SQRT_2,
        py2: sx.powi(3) * dpy / SQRT_2,
    }
}

/// The closed-form prefactor `K = 2^{m−4} m! / (π√π Γ(m+½)) · [−2(σ_x²+σ_y²)]^m`.
pub fn closed_form_prefactor(params: &VortexParams) -> f64 {
    let m = params.m();
    let s2 = params.sigma_x().powi(2) + params.sigma_y().powi(2);
    let fact: f64 = (1..=m).map(f64::from).product();
    2f64.powi(m as i32 - 4) * fact / (PI * PI.sqrt() * gamma_half_integer(m)) * (-2.0 * s2).powi(m as i32)
}

/// Evaluates the closed-form Wigner function verbatim (not normalized).
pub fn wigner_closed_form(params: &VortexParams, pt: PhaseSpacePoint) -> f64 {
    let v = change_variables(params, pt);
    let s2 = params.sigma_x().powi(2) + params.sigma_y().powi(2);
    let gauss = (-(v.x1 * v.x1 + v.y1 * v.y1 + v.px1 * v.px1 + v.py1 * v.py1)).exp();
    let arg = (v.px2 + v.py2 - v.x2 - v.y2).powi(2) / s2;
    let lag = laguerre_eval(LaguerreSpec::half(params.m()), arg).expect("finite Laguerre argument");
    closed_form_prefactor(params) * gauss * lag
}

pub fn default_oracle_rule() -> QuadratureRule {
    QuadratureRule::gauss_hermite(DEFAULT_ORACLE_ORDER).expect("supported order")
}

/// Wigner transform of the normalized wavefunction at one phase-space point.
pub fn wigner_oracle(state: &NormalizedState, pt: PhaseSpacePoint, rule: &QuadratureRule) -> Result<f64> {
    let (v, _) = wigner_oracle_slab(state, pt.x, pt.y, &[pt.p_x], &[pt.p_y], rule)?;
    Ok(v[0])
}

/// Oracle Wigner values at fixed `(x, y)` for every `(p_x, p_y)` in the
/// Cartesian product of the two momentum lists, `p_x` major.
///
/// The `(u, v)` kernel is tabulated once and the two Fourier sums are done
/// one axis at a time. Returns the values and the largest `|Im W|` seen.
pub fn wigner_oracle_slab(
    state: &NormalizedState,
    x: f64,
    y: f64,
    px: &[f64],
    py: &[f64],
    rule: &QuadratureRule,
) -> Result<(Vec<f64>, f64)> {
    if rule.kind() != RuleKind::GaussHermite {
        return Err(Error::Config("the Wigner oracle requires a Gauss-Hermite rule".into()));
    }
    let p = state.params();
    let (sx, sy) = (p.sigma_x(), p.sigma_y());
    let dx = x - p.x0;
    let dy = y - p.y0;
    let n = rule.order();
    let u: Vec<f64> = rule.nodes().iter().map(|t| sx * t).collect();
    let v: Vec<f64> = rule.nodes().iter().map(|t| sy * t).collect();
    let wu: Vec<f64> = rule.plain_weights().iter().map(|w| sx * w).collect();
    let wv: Vec<f64> = rule.plain_weights().iter().map(|w| sy * w).collect();

    // kernel[i][j] = w_i w_j φ*(dx+u_i, dy+v_j) φ(dx−u_i, dy−v_j); the plane
    // wave of the momentum displacement turns into the shift p → p − p₀.
    let mut kernel = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            let a = state.core_psi(dx + u[i], dy + v[j]).conj();
            let b = state.core_psi(dx - u[i], dy - v[j]);
            kernel[i * n + j] = a * b * (wu[i] * wv[j]);
        }
    }

    let qx: Vec<f64> = px.iter().map(|q| q - p.px0).collect();
    let qy: Vec<f64> = py.iter().map(|q| q - p.py0).collect();
    let nb = qy.len();
    let phase_y: Vec<Complex64> =
        v.iter().flat_map(|&vj| qy.iter().map(move |q| Complex64::from_polar(1.0, 2.0 * q * vj))).collect();
    let mut partial = vec![Complex64::new(0.0, 0.0); n * nb];
    for i in 0..n {
        for j in 0..n {
            let k = kernel[i * n + j];
            for b in 0..nb {
                partial[i * nb + b] += k * phase_y[j * nb + b];
            }
        }
    }

    let inv = 1.0 / (PI * PI);
    let mut out = Vec::with_capacity(qx.len() * nb);
    let mut max_imag = 0.0f64;
    for &q in &qx {
        let phase_x: Vec<Complex64> = u.iter().map(|ui| Complex64::from_polar(1.0, 2.0 * q * ui)).collect();
        for b in 0..nb {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                acc += phase_x[i] * partial[i * nb + b];
            }
            let w = acc * inv;
            if !(w.re.is_finite() && w.im.is_finite()) {
                return Err(Error::NonFinite { point: PhaseSpacePoint::new(x, y, q + p.px0, qy[b] + p.py0) });
            }
            max_imag = max_imag.max(w.im.abs());
            if w.im.abs() >= IMAG_RESIDUAL_TOL {
                return Err(Error::Numerical(format!(
                    "Wigner oracle imaginary residual {:e} at ({x}, {y}, {}, {}); raise the quadrature order",
                    w.im,
                    q + p.px0,
                    qy[b] + p.py0
                )));
            }
            out.push(w.re);
        }
    }
    Ok((out, max_imag))
}

/// Extent and resolution of a tabulation grid.
///
/// Each axis has `points` equally spaced nodes spanning `±widths` Gaussian
/// widths about the displacement: `σ_x, σ_y` for positions and
/// `1/σ_x, 1/σ_y` for momenta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxesSpec {
    pub points: usize,
    pub widths: f64,
}

impl Default for AxesSpec {
    fn default() -> Self {
        Self { points: 33, widths: 6.0 }
    }
}

impl std::str::FromStr for AxesSpec {
    type Err = Error;

    /// Accepts `N` or `N:W`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("axes spec '{s}' must look like N or N:W"));
        let mut it = s.split(':');
        let points = it.next().ok_or_else(bad)?.trim().parse::<usize>().map_err(|_| bad())?;
        let widths = match it.next() {
            Some(w) => w.trim().parse::<f64>().map_err(|_| bad())?,
            None => AxesSpec::default().widths,
        };
        if it.next().is_some() {
            return Err(bad());
        }
        Ok(Self { points, widths })
    }
}

impl AxesSpec {
    fn axes(&self, params: &VortexParams) -> Result<[Vec<f64>; 4]> {
        if self.points < 3 {
            return Err(Error::Config(format!("grid needs at least 3 points per axis, got {}", self.points)));
        }
        if !(self.widths >= 6.0 && self.widths.is_finite()) {
            return Err(Error::Config(format!("grid must cover at least 6 widths per axis, got {}", self.widths)));
        }
        let (sx, sy) = (params.sigma_x(), params.sigma_y());
        let centers = [params.x0, params.y0, params.px0, params.py0];
        let halves = [sx, sy, 1.0 / sx, 1.0 / sy].map(|s| self.widths * s);
        let n = self.points;
        Ok(std::array::from_fn(|k| {
            (0..n).map(|i| centers[k] - halves[k] + 2.0 * halves[k] * i as f64 / (n - 1) as f64).collect()
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WignerSource {
    ClosedForm,
    Oracle,
}

impl WignerSource {
    pub fn as_str(self) -> &'static str {
        match self {
            WignerSource::ClosedForm => "closed_form",
            WignerSource::Oracle => "oracle",
        }
    }
}

/// Wigner function tabulated on a 4D tensor grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    axes: [Vec<f64>; 4],
    values: Vec<f64>,
    normalization: f64,
    pre_rescale_normalization: f64,
    source: WignerSource,
    max_imag_residual: f64,
}

fn trapezoid_weights(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    if n < 2 {
        return vec![1.0; n];
    }
    let h = (axis[n - 1] - axis[0]) / (n - 1) as f64;
    let mut w = vec![h; n];
    w[0] *= 0.5;
    w[n - 1] *= 0.5;
    w
}

impl WignerGrid {
    pub fn axes(&self) -> &[Vec<f64>; 4] {
        &self.axes
    }

    /// Values in row-major order, `p_y` fastest.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn shape(&self) -> [usize; 4] {
        std::array::from_fn(|k| self.axes[k].len())
    }

    pub fn index(&self, i: [usize; 4]) -> usize {
        let s = self.shape();
        ((i[0] * s[1] + i[1]) * s[2] + i[2]) * s[3] + i[3]
    }

    pub fn value(&self, i: [usize; 4]) -> f64 {
        self.values[self.index(i)]
    }

    /// `∫W` of the stored values.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// `∫W` before rescaling; equals [`Self::normalization`] for the oracle.
    pub fn pre_rescale_normalization(&self) -> f64 {
        self.pre_rescale_normalization
    }

    pub fn source(&self) -> WignerSource {
        self.source
    }

    pub fn max_imag_residual(&self) -> f64 {
        self.max_imag_residual
    }

    /// Trapezoid-rule integral of the tabulated values.
    pub fn integral(&self) -> f64 {
        integrate_values(&self.axes, &self.values)
    }

    /// Momentum marginal `∫W dp_x dp_y` at every `(x, y)` node, `y` fastest.
    pub fn position_marginal(&self) -> Vec<f64> {
        let s = self.shape();
        let wpx = trapezoid_weights(&self.axes[2]);
        let wpy = trapezoid_weights(&self.axes[3]);
        let block = s[2] * s[3];
        (0..s[0] * s[1])
            .map(|ab| {
                let slab = &self.values[ab * block..(ab + 1) * block];
                let (wpx, wpy) = (&wpx, &wpy);
                neumaier_sum((0..s[2]).flat_map(|c| (0..s[3]).map(move |d| wpx[c] * wpy[d] * slab[c * s[3] + d])))
            })
            .collect()
    }

    /// Sup-norm of `∫W dp − |ψ|²` over the `(x, y)` nodes.
    pub fn marginal_max_diff(&self, state: &NormalizedState) -> f64 {
        let marg = self.position_marginal();
        let ny = self.axes[1].len();
        marg.iter()
            .enumerate()
            .map(|(k, m)| (m - intensity(state, self.axes[0][k / ny], self.axes[1][k % ny])).abs())
            .fold(0.0, f64::max)
    }

    /// Writes the grid as one `#` header line, a column line, then CSV rows
    /// `x,y,p_x,p_y,W` in row-major axis order.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        let s = self.shape();
        let range = |k: usize| format!("[{:.16e},{:.16e}]", self.axes[k][0], self.axes[k][s[k] - 1]);
        writeln!(
            out,
            "# wigner_grid source={} shape={}x{}x{}x{} x={} y={} p_x={} p_y={} normalization={:.16e} pre_rescale_normalization={:.16e}",
            self.source.as_str(),
            s[0],
            s[1],
            s[2],
            s[3],
            range(0),
            range(1),
            range(2),
            range(3),
            self.normalization,
            self.pre_rescale_normalization
        )?;
        writeln!(out, "x,y,p_x,p_y,W")?;
        for a in 0..s[0] {
            for b in 0..s[1] {
                for c in 0..s[2] {
                    for d in 0..s[3] {
                        writeln!(
                            out,
                            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                            self.axes[0][a],
                            self.axes[1][b],
                            self.axes[2][c],
                            self.axes[3][d],
                            self.value([a, b, c, d])
                        )?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses the format produced by [`Self::write_text`].
    pub fn read_text<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| Error::Config("empty Wigner grid file".into()))??;
        let field = |key: &str| -> Result<String> {
            header
                .split_whitespace()
                .find_map(|tok| tok.strip_prefix(&format!("{key}=")).map(str::to_owned))
                .ok_or_else(|| Error::Config(format!("header is missing '{key}'")))
        };
        let source = match field("source")?.as_str() {
            "closed_form" => WignerSource::ClosedForm,
            "oracle" => WignerSource::Oracle,
            s => return Err(Error::Config(format!("unknown source '{s}'"))),
        };
        let shape: Vec<usize> = field("shape")?
            .split('x')
            .map(|t| t.parse().map_err(|_| Error::Config(format!("bad shape entry '{t}'"))))
            .collect::<Result<_>>()?;
        if shape.len() != 4 {
            return Err(Error::Config("shape must have four entries".into()));
        }
        let parse_f = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad number '{t}'")));
        let normalization = parse_f(&field("normalization")?)?;
        let pre = parse_f(&field("pre_rescale_normalization")?)?;
        let columns = lines.next().ok_or_else(|| Error::Config("missing column line".into()))??;
        if columns.trim() != "x,y,p_x,p_y,W" {
            return Err(Error::Config(format!("unexpected column line '{columns}'")));
        }

        let total: usize = shape.iter().product();
        let mut axes: [Vec<f64>; 4] = std::array::from_fn(|k| vec![0.0; shape[k]]);
        let mut values = Vec::with_capacity(total);
        for (row, line) in lines.enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let nums: Vec<f64> = line.split(',').map(parse_f).collect::<Result<_>>()?;
            if nums.len() != 5 {
                return Err(Error::Config(format!("row {row} has {} fields", nums.len())));
            }
            let idx = [
                row / (shape[1] * shape[2] * shape[3]),
                (row / (shape[2] * shape[3])) % shape[1],
                (row / shape[3]) % shape[2],
                row % shape[3],
            ];
            if idx[0] >= shape[0] {
                return Err(Error::Config("more rows than the header shape".into()));
            }
            for k in 0..4 {
                axes[k][idx[k]] = nums[k];
            }
            values.push(nums[4]);
        }
        if values.len() != total {
            return Err(Error::Config(format!("expected {total} rows, found {}", values.len())));
        }
        Ok(Self { axes, values, normalization, pre_rescale_normalization: pre, source, max_imag_residual: 0.0 })
    }
}

fn integrate_values(axes: &[Vec<f64>; 4], values: &[f64]) -> f64 {
    let w: [Vec<f64>; 4] = std::array::from_fn(|k| trapezoid_weights(&axes[k]));
    let s: [usize; 4] = std::array::from_fn(|k| axes[k].len());
    let block = s[1] * s[2] * s[3];
    let partials: Vec<f64> = (0..s[0])
        .into_par_iter()
        .map(|a| {
            let mut acc = crate::numerics::NeumaierSum::new();
            for b in 0..s[1] {
                for c in 0..s[2] {
                    for d in 0..s[3] {
                        let v = values[a * block + (b * s[2] + c) * s[3] + d];
                        acc.add(w[0][a] * w[1][b] * w[2][c] * w[3][d] * v);
                    }
                }
            }
            acc.total()
        })
        .collect();
    neumaier_sum(partials)
}

/// Tabulates the Wigner function of `params` on the requested grid.
pub fn wigner_grid(params: &VortexParams, axes: AxesSpec, source: WignerSource) -> Result<WignerGrid> {
    let state = normalize(params, &QuadratureRule::default_gauss_hermite())?;
    wigner_grid_for_state(&state, axes, source, &default_oracle_rule())
}

/// As [`wigner_grid`] for an already normalized state and explicit oracle rule.
///
/// Closed-form grids are rescaled so that their integral is one; the raw
/// integral is kept as [`WignerGrid::pre_rescale_normalization`].
pub fn wigner_grid_for_state(
    state: &NormalizedState,
    axes: AxesSpec,
    source: WignerSource,
    oracle_rule: &QuadratureRule,
) -> Result<WignerGrid> {
    let params = state.params();
    let axes = axes.axes(params)?;
    let (nx, ny) = (axes[0].len(), axes[1].len());

    let slabs: Vec<Result<(Vec<f64>, f64)>> = (0..nx * ny)
        .into_par_iter()
        .map(|k| {
            let x = axes[0][k / ny];
            let y = axes[1][k % ny];
            match source {
                WignerSource::Oracle => wigner_oracle_slab(state, x, y, &axes[2], &axes[3], oracle_rule),
                WignerSource::ClosedForm => {
                    let vals = axes[2]
                        .iter()
                        .flat_map(|px| axes[3].iter().map(move |py| (*px, *py)))
                        .map(|(px, py)| wigner_closed_form(params, PhaseSpacePoint::new(x, y, px, py)))
                        .collect();
                    Ok((vals, 0.0))
                }
            }
        })
        .collect();

    let mut values = Vec::with_capacity(nx * ny * axes[2].len() * axes[3].len());
    let mut max_imag = 0.0f64;
    for s in slabs {
        let (v, im) = s?;
        max_imag = max_imag.max(im);
        values.extend(v);
    }

    let pre = integrate_values(&axes, &values);
    let normalization = match source {
        WignerSource::Oracle => pre,
        WignerSource::ClosedForm => {
            if pre.abs() < 1e-12 {
                return Err(Error::Numerical(format!("degenerate Wigner normalization {pre:e}")));
            }
            values.iter_mut().for_each(|v| *v /= pre);
            integrate_values(&axes, &values)
        }
    };
    Ok(WignerGrid { axes, values, normalization, pre_rescale_normalization: pre, source, max_imag_residual: max_imag })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

/// Pointwise comparison of the rescaled closed form against the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerValidation {
    pub m: u32,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub grid_points: usize,
    pub max_abs_diff: f64,
    pub rms_diff: f64,
    /// Sup-norm of the oracle's momentum marginal minus `|ψ|²`.
    pub marginal_max_diff: f64,
    pub closed_form_marginal_max_diff: f64,
    pub oracle_normalization: f64,
    pub closed_form_pre_rescale_normalization: f64,
    pub oracle_max_imag_residual: f64,
    pub oracle_center_value: f64,
    pub closed_form_center_value: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

pub fn validate_wigner(params: &VortexParams, tolerance: f64) -> Result<WignerValidation> {
    validate_wigner_with(params, tolerance, AxesSpec::default())
}

pub fn validate_wigner_with(params: &VortexParams, tolerance: f64, axes: AxesSpec) -> Result<WignerValidation> {
    let state = normalize(params, &QuadratureRule::default_gauss_hermite())?;
    let rule = default_oracle_rule();
    let oracle = wigner_grid_for_state(&state, axes, WignerSource::Oracle, &rule)?;
    let closed = wigner_grid_for_state(&state, axes, WignerSource::ClosedForm, &rule)?;

    let diffs: Vec<f64> = oracle.values.iter().zip(&closed.values).map(|(a, b)| (a - b).abs()).collect();
    let max_abs_diff = diffs.iter().copied().fold(0.0, f64::max);
    let rms_diff = (neumaier_sum(diffs.iter().map(|d| d * d)) / diffs.len() as f64).sqrt();
    let c = axes.points / 2;
    let center = [c; 4];
    Ok(WignerValidation {
        m: params.m(),
        sigma_x: params.sigma_x(),
        sigma_y: params.sigma_y(),
        grid_points: axes.points,
        max_abs_diff,
        rms_diff,
        marginal_max_diff: oracle.marginal_max_diff(&state),
        closed_form_marginal_max_diff: closed.marginal_max_diff(&state),
        oracle_normalization: oracle.normalization(),
        closed_form_pre_rescale_normalization: closed.pre_rescale_normalization(),
        oracle_max_imag_residual: oracle.max_imag_residual(),
        oracle_center_value: oracle.value(center),
        closed_form_center_value: closed.value(center),
        tolerance,
        verdict: if max_abs_diff <= tolerance { Verdict::Consistent } else { Verdict::Inconsistent },
    })
}
