//! Squeezing-parameter sweeps of the logarithmic negativity, crossing
//! detection between vortex orders, and CSV/SVG emission.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covariance::{assemble, Backend};
use crate::entanglement::analyze;
use crate::error::{Error, Result};
use crate::numerics::{QuadratureRule, MAX_GAUSS_HERMITE_ORDER};
use crate::state::{normalize, Chirality, VortexParams};

/// Largest vortex order accepted in a sweep.
pub const MAX_SWEEP_M: u32 = 10;
/// Reference critical point the crossing report is compared against.
pub const REFERENCE_CRITICAL_SIGMA_X: f64 = 0.002;

pub const CSV_HEADER: &str = "m,sigma_x,zeta_x,sigma_y,zeta_y,nu_min,E_N,backend,flag";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    #[default]
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl Default for SigmaRange {
    fn default() -> Self {
        Self { min: 1e-4, max: 1.0, count: 50, spacing: Spacing::Log }
    }
}

impl SigmaRange {
    /// Grid values in ascending order with exact endpoints.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == n - 1 {
                    return self.max;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + t * (self.max - self.min),
                    Spacing::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

/// How `σ_y` follows from `σ_x`.
///
/// JSON forms: `"sqrt5"`, `{"fixed_ratio": k}`, `{"independent": [σ_y, ...]}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaRelation {
    #[default]
    Sqrt5,
    FixedRatio(f64),
    Independent(Vec<f64>),
}

impl SigmaRelation {
    fn sigma_y(&self, index: usize, sigma_x: f64) -> f64 {
        match self {
            SigmaRelation::Sqrt5 => 5f64.sqrt() * sigma_x,
            SigmaRelation::FixedRatio(k) => k * sigma_x,
            SigmaRelation::Independent(v) => v[index],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub m_values: Vec<u32>,
    pub sigma_x_range: SigmaRange,
    pub sigma_relation: SigmaRelation,
    pub chirality: Chirality,
    pub backend: Backend,
    /// Gauss–Hermite order per axis for normalization and wavefunction moments.
    pub quadrature_order: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            m_values: (0..=5).collect(),
            sigma_x_range: SigmaRange::default(),
            sigma_relation: SigmaRelation::Sqrt5,
            chirality: Chirality::Plus,
            backend: Backend::Wavefunction,
            quadrature_order: 64,
        }
    }
}

impl SweepSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(s).map_err(|e| Error::Config(format!("sweep spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.sigma_x_range;
        if !(r.min > 0.0 && r.min.is_finite() && r.max.is_finite() && r.max >= r.min) {
            return Err(Error::Config(format!("sigma_x_range [{}, {}] must satisfy 0 < min <= max", r.min, r.max)));
        }
        if r.count < 2 {
            return Err(Error::Config(format!("sigma_x_range.count = {} must be at least 2", r.count)));
        }
        if self.m_values.is_empty() {
            return Err(Error::Config("m_values is empty".into()));
        }
        if let Some(m) = self.m_values.iter().find(|&&m| m > MAX_SWEEP_M) {
            return Err(Error::Config(format!("m = {m} exceeds {MAX_SWEEP_M}")));
        }
        match &self.sigma_relation {
            SigmaRelation::Sqrt5 => {}
            SigmaRelation::FixedRatio(k) => {
                if !(*k > 0.0 && k.is_finite()) {
                    return Err(Error::Config(format!("fixed_ratio {k} must be positive")));
                }
            }
            SigmaRelation::Independent(v) => {
                if v.len() != r.count {
                    return Err(Error::Config(format!("independent list has {} entries, expected {}", v.len(), r.count)));
                }
                if v.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
                    return Err(Error::Config("independent sigma_y values must be positive".into()));
                }
            }
        }
        if self.backend == Backend::Analytic {
            return Err(Error::Config("the analytic backend cannot evaluate states".into()));
        }
        if !(2..=MAX_GAUSS_HERMITE_ORDER).contains(&self.quadrature_order) {
            return Err(Error::Config(format!(
                "quadrature_order {} outside 2..={MAX_GAUSS_HERMITE_ORDER}",
                self.quadrature_order
            )));
        }
        Ok(())
    }

    fn m_sorted(&self) -> Vec<u32> {
        let mut m = self.m_values.clone();
        m.sort_unstable();
        m.dedup();
        m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: u32,
    pub sigma_x: f64,
    pub zeta_x: f64,
    pub sigma_y: f64,
    pub zeta_y: f64,
    pub nu_min: f64,
    pub nu_min_plain: f64,
    pub log_negativity: f64,
    pub backend: Backend,
    /// `None` when the row was computed; otherwise the failure message.
    pub flag: Option<String>,
}

impl SweepRow {
    pub fn is_flagged(&self) -> bool {
        self.flag.is_some()
    }

    fn flag_tag(&self) -> &'static str {
        match self.flag.as_deref() {
            None => "ok",
            Some(s) if s.starts_with("unphysical") => "unphysical",
            Some(s) if s.starts_with("invalid covariance") => "invalid_covariance",
            Some(s) if s.starts_with("non-finite") => "non_finite",
            Some(_) => "numerical",
        }
    }
}

/// Relative position of two curves on one side of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    HigherMLower,
    HigherMHigher,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub m_pair: (u32, u32),
    pub sigma_x: f64,
    /// Interpolated `E_N` of the lower-order curve at the crossing.
    pub log_negativity: f64,
    /// Ordering on the grid point just above the crossing.
    pub above: Ordering,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub crossings: Vec<Crossing>,
    pub notes: Vec<String>,
}

impl SweepResult {
    pub fn flagged(&self) -> usize {
        self.rows.iter().filter(|r| r.is_flagged()).count()
    }

    /// Plain-text summary of crossings and diagnostic notes.
    pub fn report(&self) -> String {
        let mut s = String::new();
        let ms: Vec<u32> = self.rows.iter().map(|r| r.m).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let _ = writeln!(s, "rows: {} (flagged {}), m values: {ms:?}", self.rows.len(), self.flagged());
        for m in &ms {
            let curve: Vec<&SweepRow> = self.rows.iter().filter(|r| r.m == *m && !r.is_flagged()).collect();
            let max = curve.iter().map(|r| r.log_negativity).fold(0.0, f64::max);
            let nu = curve.iter().map(|r| r.nu_min).fold(f64::INFINITY, f64::min);
            let _ = writeln!(s, "m = {m}: max E_N = {max:.6e}, min nu_min = {nu:.6e}");
        }
        if self.crossings.is_empty() {
            let _ = writeln!(s, "crossings: none");
        }
        for c in &self.crossings {
            let _ = writeln!(
                s,
                "crossing m = {} / {} at sigma_x = {:.6e} (E_N = {:.6e}), above: {:?}",
                c.m_pair.0, c.m_pair.1, c.sigma_x, c.log_negativity, c.above
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

fn evaluate(m: u32, sigma_x: f64, sigma_y: f64, spec: &SweepSpec, rule: &QuadratureRule) -> SweepRow {
    let mut row = SweepRow {
        m,
        sigma_x,
        zeta_x: 0.5 * sigma_x.ln(),
        sigma_y,
        zeta_y: 0.5 * sigma_y.ln(),
        nu_min: f64::NAN,
        nu_min_plain: f64::NAN,
        log_negativity: f64::NAN,
        backend: spec.backend,
        flag: None,
    };
    let result = VortexParams::from_widths(m, sigma_x, sigma_y).and_then(|p| {
        let state = normalize(&p.with_chirality(spec.chirality), rule)?;
        analyze(&assemble(&state, spec.backend)?)
    });
    match result {
        Ok(rep) => {
            row.nu_min = rep.nu_min;
            row.nu_min_plain = rep.nu_min_plain;
            row.log_negativity = rep.log_negativity;
        }
        Err(e) => row.flag = Some(e.to_string()),
    }
    row
}

/// Evaluates every `(m, σ_x)` grid point, m-major with σ ascending.
///
/// Points are computed in parallel; failures are recorded in the row's flag
/// and do not stop the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let rule = QuadratureRule::gauss_hermite(spec.quadrature_order)?;
    let sigmas = spec.sigma_x_range.values();
    let tasks: Vec<(u32, usize)> =
        spec.m_sorted().into_iter().flat_map(|m| (0..sigmas.len()).map(move |i| (m, i))).collect();
    let rows: Vec<SweepRow> = tasks
        .par_iter()
        .map(|&(m, i)| evaluate(m, sigmas[i], spec.sigma_relation.sigma_y(i, sigmas[i]), spec, &rule))
        .collect();

    let vortex_rows: Vec<SweepRow> = rows.iter().filter(|r| r.m >= 1).cloned().collect();
    let crossings = detect_crossings(&vortex_rows);
    let notes = sweep_notes(spec, &rows, &crossings);
    Ok(SweepResult { rows, crossings, notes })
}

fn sweep_notes(spec: &SweepSpec, rows: &[SweepRow], crossings: &[Crossing]) -> Vec<String> {
    let mut notes = Vec::new();
    if spec.sigma_relation == SigmaRelation::Sqrt5 {
        notes.push(
            "sigma_y = sqrt(5) sigma_x is applied to the widths; with sigma = exp(2 zeta) this is \
             zeta_y = ln(5)/4 + zeta_x, not zeta_y = ln(5)/4 + zeta_x/2"
                .into(),
        );
    }
    if spec.m_values.contains(&0) {
        notes.push("m = 0 rows are products of two squeezed vacua (mu = 0), so E_N = 0 there".into());
    }
    let vortex: Vec<&SweepRow> = rows.iter().filter(|r| r.m >= 1 && !r.is_flagged()).collect();
    if !vortex.is_empty() && vortex.iter().all(|r| r.log_negativity == 0.0) {
        let nu = vortex.iter().map(|r| r.nu_min).fold(f64::INFINITY, f64::min);
        notes.push(format!(
            "no m >= 1 row is PPT-entangled: smallest partially transposed eigenvalue is {nu:.12e} >= 1/2"
        ));
    }
    let reference = format!(
        "reference critical point sigma_x = {REFERENCE_CRITICAL_SIGMA_X} (zeta_x = {:.4})",
        0.5 * REFERENCE_CRITICAL_SIGMA_X.ln()
    );
    match crossings
        .iter()
        .min_by(|a, b| (a.sigma_x.ln() - REFERENCE_CRITICAL_SIGMA_X.ln()).abs().total_cmp(&(b.sigma_x.ln() - REFERENCE_CRITICAL_SIGMA_X.ln()).abs()))
    {
        None => notes.push(format!("{reference}: no crossing detected among m >= 1 curves")),
        Some(c) => notes.push(format!(
            "{reference}: nearest detected crossing m = {} / {} at sigma_x = {:.6e}, ratio {:.4}",
            c.m_pair.0,
            c.m_pair.1,
            c.sigma_x,
            c.sigma_x / REFERENCE_CRITICAL_SIGMA_X
        )),
    }
    let flagged = rows.iter().filter(|r| r.is_flagged()).count();
    if flagged > 0 {
        notes.push(format!("{flagged} rows flagged"));
    }
    notes
}

/// Sign changes of `E_N(m_i) − E_N(m_j)` between adjacent shared grid points,
/// for every pair `m_i < m_j`, with linearly interpolated `σ_x`.
///
/// Flagged rows are skipped. A run of exact zeros between opposite signs
/// counts as one crossing at its first point.
pub fn detect_crossings(rows: &[SweepRow]) -> Vec<Crossing> {
    let mut curves: BTreeMap<u32, Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows.iter().filter(|r| !r.is_flagged() && r.log_negativity.is_finite()) {
        curves.entry(r.m).or_default().push((r.sigma_x, r.log_negativity));
    }
    for c in curves.values_mut() {
        c.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    let ms: Vec<u32> = curves.keys().copied().collect();
    let mut out = Vec::new();
    for (a, &mi) in ms.iter().enumerate() {
        for &mj in &ms[a + 1..] {
            let other: HashMap<u64, f64> = curves[&mj].iter().map(|&(s, e)| (s.to_bits(), e)).collect();
            let shared: Vec<(f64, f64, f64)> = curves[&mi]
                .iter()
                .filter_map(|&(s, e)| other.get(&s.to_bits()).map(|&ej| (s, e, e - ej)))
                .collect();
            out.extend(pair_crossings(mi, mj, &shared));
        }
    }
    out
}

fn pair_crossings(mi: u32, mj: u32, pts: &[(f64, f64, f64)]) -> Vec<Crossing> {
    let mut out = Vec::new();
    // index of the last point with a nonzero difference
    let mut last: Option<usize> = None;
    for k in 0..pts.len() {
        let d = pts[k].2;
        if d == 0.0 {
            continue;
        }
        if let Some(l) = last {
            let dl = pts[l].2;
            if dl.signum() != d.signum() {
                let (sigma_x, e) = if k == l + 1 {
                    let t = dl / (dl - d);
                    (pts[l].0 + t * (pts[k].0 - pts[l].0), pts[l].1 + t * (pts[k].1 - pts[l].1))
                } else {
                    (pts[l + 1].0, pts[l + 1].1)
                };
                // d = E(m_i) − E(m_j) > 0 above means the higher order is lower
                let above = if d > 0.0 { Ordering::HigherMLower } else { Ordering::HigherMHigher };
                out.push(Crossing { m_pair: (mi, mj), sigma_x, log_negativity: e, above });
            }
        }
        last = Some(k);
    }
    out
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(result: &SweepResult, mut out: W) -> Result<()> {
    out.write_all(CSV_HEADER.as_bytes())?;
    out.write_all(b"\n")?;
    for r in &result.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.m,
            fmt_f(r.sigma_x),
            fmt_f(r.zeta_x),
            fmt_f(r.sigma_y),
            fmt_f(r.zeta_y),
            fmt_f(r.nu_min),
            fmt_f(r.log_negativity),
            r.backend.as_str(),
            r.flag_tag()
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_csv(result, BufWriter::new(File::create(path)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlotAxis {
    #[default]
    SigmaX,
    ZetaX,
}

impl std::str::FromStr for PlotAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma_x" => Ok(PlotAxis::SigmaX),
            "zeta_x" => Ok(PlotAxis::ZetaX),
            _ => Err(Error::Config(format!("unknown axis {s:?}, expected sigma_x or zeta_x"))),
        }
    }
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];
const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, v: f64) -> f64 {
        LEFT + (v - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn widen(lo: f64, hi: f64) -> (f64, f64) {
    if hi - lo > 1e-12 * hi.abs().max(lo.abs()).max(1e-300) {
        (lo, hi)
    } else if lo == 0.0 && hi == 0.0 {
        (0.0, 1.0)
    } else {
        (lo - 0.5 * lo.abs().max(1e-12), hi + 0.5 * hi.abs().max(1e-12))
    }
}

/// Renders the sweep as a standalone SVG line chart.
pub fn render_svg(result: &SweepResult, axis: PlotAxis) -> Result<String> {
    if result.rows.is_empty() {
        return Err(Error::Config("cannot plot an empty sweep".into()));
    }
    let xv = |r: &SweepRow| match axis {
        PlotAxis::SigmaX => r.sigma_x.log10(),
        PlotAxis::ZetaX => r.zeta_x,
    };
    let good: Vec<&SweepRow> = result.rows.iter().filter(|r| !r.is_flagged() && r.log_negativity.is_finite()).collect();
    let xs: Vec<f64> = result.rows.iter().map(xv).collect();
    let (xlo, xhi) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let (ylo, yhi) = good
        .iter()
        .map(|r| r.log_negativity)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let (ylo, yhi) = if good.is_empty() { (0.0, 1.0) } else { widen(ylo.min(0.0), yhi) };
    let frame = Frame { x: widen(xlo, xhi), y: (ylo, yhi) };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (TOP, HEIGHT - BOTTOM);
    let _ = writeln!(s, r#"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="black"/>"#, x1 - x0, y1 - y0);

    // x ticks: decades on a log axis, six even steps otherwise
    let xticks: Vec<(f64, String)> = match axis {
        PlotAxis::SigmaX => {
            let (a, b) = (frame.x.0.ceil() as i32, frame.x.1.floor() as i32);
            (a..=b).map(|e| (e as f64, format!("1e{e}"))).collect()
        }
        PlotAxis::ZetaX => (0..=5)
            .map(|i| {
                let v = frame.x.0 + (frame.x.1 - frame.x.0) * i as f64 / 5.0;
                (v, format!("{v:.3}"))
            })
            .collect(),
    };
    for (v, label) in &xticks {
        let p = frame.px(*v);
        let _ = writeln!(s, r#"<line x1="{p:.3}" y1="{y1}" x2="{p:.3}" y2="{:.3}" stroke="black"/>"#, y1 + 5.0);
        let _ = writeln!(s, r#"<text x="{p:.3}" y="{:.3}" text-anchor="middle">{label}</text>"#, y1 + 20.0);
    }
    for i in 0..=5 {
        let v = frame.y.0 + (frame.y.1 - frame.y.0) * i as f64 / 5.0;
        let p = frame.py(v);
        let _ = writeln!(s, r#"<line x1="{:.3}" y1="{p:.3}" x2="{x0}" y2="{p:.3}" stroke="black"/>"#, x0 - 5.0);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{v:.3e}</text>"#, x0 - 8.0, p + 4.0);
    }
    let xlabel = match axis {
        PlotAxis::SigmaX => "σ_x",
        PlotAxis::ZetaX => "ζ_x",
    };
    let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{xlabel}</text>"#, 0.5 * (x0 + x1), HEIGHT - 15.0);
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.3}" text-anchor="middle" transform="rotate(-90 20 {:.3})">E_N</text>"#,
        0.5 * (y0 + y1),
        0.5 * (y0 + y1)
    );

    let reference = match axis {
        PlotAxis::SigmaX => REFERENCE_CRITICAL_SIGMA_X.log10(),
        PlotAxis::ZetaX => 0.5 * REFERENCE_CRITICAL_SIGMA_X.ln(),
    };
    if (frame.x.0..=frame.x.1).contains(&reference) {
        let p = frame.px(reference);
        let _ = writeln!(s, r##"<line x1="{p:.3}" y1="{y0}" x2="{p:.3}" y2="{y1}" stroke="#888888" stroke-dasharray="4 4"/>"##);
        let _ = writeln!(s, r##"<text x="{:.3}" y="{:.3}" fill="#888888">reference</text>"##, p + 4.0, y0 + 14.0);
    }

    let mut ms: Vec<u32> = result.rows.iter().map(|r| r.m).collect();
    ms.sort_unstable();
    ms.dedup();
    for (k, m) in ms.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut curve: Vec<&SweepRow> = result.rows.iter().filter(|r| r.m == *m).collect();
        curve.sort_by(|a, b| a.sigma_x.total_cmp(&b.sigma_x));
        // flagged rows break the line into segments
        for seg in curve.split(|r| r.is_flagged() || !r.log_negativity.is_finite()) {
            if seg.is_empty() {
                continue;
            }
            let pts: Vec<String> =
                seg.iter().map(|r| format!("{:.3},{:.3}", frame.px(xv(r)), frame.py(r.log_negativity))).collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            );
        }
        let ly = y0 + 10.0 + 18.0 * k as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{ly:.3}" x2="{:.3}" y2="{ly:.3}" stroke="{color}" stroke-width="2"/>"#,
            x1 + 15.0,
            x1 + 40.0
        );
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}">m = {m}</text>"#, x1 + 45.0, ly + 4.0);
    }

    for c in &result.crossings {
        let xc = match axis {
            PlotAxis::SigmaX => c.sigma_x.log10(),
            PlotAxis::ZetaX => 0.5 * c.sigma_x.ln(),
        };
        let (px, py) = (frame.px(xc), frame.py(c.log_negativity));
        let _ = writeln!(s, r#"<circle cx="{px:.3}" cy="{py:.3}" r="4" fill="none" stroke="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="10">{}/{} at {:.3e}</text>"#,
            px + 6.0,
            py - 6.0,
            c.m_pair.0,
            c.m_pair.1,
            c.sigma_x
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_svg(result: &SweepResult, axis: PlotAxis, path: &Path) -> Result<()> {
    let svg = render_svg(result, axis)?;
    std::fs::write(path, svg)?;
    Ok(())
}
