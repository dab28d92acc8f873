//! Command-line front end: `negativity`, `wigner`, `sweep` and `validate`.
//!
//! Exit codes: 0 success, 1 validation failure or flagged sweep rows,
//! 2 I/O failure, 3 bad configuration or usage.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::Matrix4;
use serde::Serialize;

use crate::covariance::{assemble, cross_check, Backend, CovarianceMatrix, DEFAULT_CROSS_CHECK_TOL};
use crate::entanglement::analyze;
use crate::error::{Error, Result};
use crate::numerics::QuadratureRule;
use crate::state::{normalize, VortexParams};
use crate::sweep::{emit_csv, emit_svg, run_sweep, PlotAxis, SweepSpec};
use crate::wigner::{validate_wigner_with, wigner_grid, AxesSpec, WignerSource, IMAG_RESIDUAL_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qev", version, about = "Entanglement of quantum elliptic vortex states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SourceArg {
    #[value(alias = "closed_form")]
    Closed,
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    SigmaX,
    ZetaX,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Symplectic report of one state as JSON.
    Negativity {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, value_enum, default_value = "wavefunction")]
        backend: BackendArg,
    },
    /// Tabulate a Wigner function on a 4D grid.
    Wigner {
        #[arg(long)]
        params: PathBuf,
        /// `N` or `N:W`: N points per axis spanning ±W widths.
        #[arg(long, default_value = "33:6")]
        axes: String,
        #[arg(long, value_enum)]
        source: SourceArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep E_N over squeezing for several vortex orders.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out_csv: PathBuf,
        #[arg(long)]
        out_svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "sigma-x")]
        axis: AxisArg,
    },
    /// Oracle fidelity, backend cross-check and invariant checks.
    Validate {
        /// Vortex order; m = 0, 1, 2 when omitted.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Grid points per axis for the Wigner checks.
        #[arg(long, default_value_t = 33)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        sigma_x: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma_y: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Wavefunction,
    Wigner,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::Config(_) | Error::Json(_) | Error::Domain(_) | Error::Unsupported(_) => EXIT_CONFIG,
        _ => EXIT_VALIDATION,
    }
}

fn read_params(path: &PathBuf) -> Result<VortexParams> {
    VortexParams::from_json(&std::fs::read_to_string(path)?).map_err(|e| match e {
        Error::Json(j) => Error::Config(format!("{}: {j}", path.display())),
        other => other,
    })
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Negativity { params, backend } => {
            let p = read_params(&params)?;
            let state = normalize(&p, &QuadratureRule::default_gauss_hermite())?;
            let backend = match backend {
                BackendArg::Wavefunction => Backend::Wavefunction,
                BackendArg::Wigner => Backend::Wigner,
            };
            println!("{}", analyze(&assemble(&state, backend)?)?.to_json());
            Ok(EXIT_OK)
        }
        Command::Wigner { params, axes, source, out } => {
            let p = read_params(&params)?;
            let axes: AxesSpec = axes.parse()?;
            let source = match source {
                SourceArg::Closed => WignerSource::ClosedForm,
                SourceArg::Oracle => WignerSource::Oracle,
            };
            let grid = wigner_grid(&p, axes, source)?;
            grid.write_text(BufWriter::new(File::create(&out)?))?;
            println!(
                "wrote {} values to {} (integral {:.12e})",
                grid.values().len(),
                out.display(),
                grid.normalization()
            );
            Ok(EXIT_OK)
        }
        Command::Sweep { spec, out_csv, out_svg, axis } => {
            let spec = SweepSpec::from_json(&std::fs::read_to_string(&spec)?)?;
            let result = run_sweep(&spec)?;
            emit_csv(&result, &out_csv)?;
            if let Some(svg) = out_svg {
                let axis = match axis {
                    AxisArg::SigmaX => PlotAxis::SigmaX,
                    AxisArg::ZetaX => PlotAxis::ZetaX,
                };
                emit_svg(&result, axis, &svg)?;
            }
            print!("{}", result.report());
            Ok(if result.flagged() > 0 { EXIT_VALIDATION } else { EXIT_OK })
        }
        Command::Validate { m, tolerance, points, sigma_x, sigma_y } => {
            if !(tolerance > 0.0) {
                return Err(Error::Config(format!("tolerance {tolerance} must be positive")));
            }
            let orders = m.map(|m| vec![m]).unwrap_or_else(|| vec![0, 1, 2]);
            let axes = AxesSpec { points, ..AxesSpec::default() };
            let mut ok = true;
            for m in orders {
                let params = VortexParams::from_widths(m, sigma_x, sigma_y)?;
                let report = validation_suite(&params, tolerance, axes)?;
                print!("{}", report.render());
                ok &= report.passed();
            }
            println!("{}", if ok { "validation passed" } else { "validation FAILED" });
            Ok(if ok { EXIT_OK } else { EXIT_VALIDATION })
        }
    }
}

/// One gated or informational check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
    /// Diagnostics are reported but do not affect [`ValidationReport::passed`].
    pub diagnostic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub m: u32,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| !c.diagnostic).all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("m = {}, sigma_x = {}, sigma_y = {}\n", self.m, self.sigma_x, self.sigma_y);
        for c in &self.checks {
            let tag = match (c.diagnostic, c.passed) {
                (true, _) => "info",
                (false, true) => "pass",
                (false, false) => "FAIL",
            };
            s.push_str(&format!("  [{tag}] {}: {:.3e} (bound {:.1e})\n", c.name, c.value, c.bound));
        }
        s
    }
}

fn gated(name: &str, value: f64, bound: f64) -> Check {
    Check { name: name.into(), value, bound, passed: value <= bound, diagnostic: false }
}

fn diagnostic(name: &str, value: f64, bound: f64) -> Check {
    Check { name: name.into(), value, bound, passed: value <= bound, diagnostic: true }
}

/// `(E_N, ν̃<)` from the wavefunction backend.
fn negativity_of(params: &VortexParams) -> Result<(f64, f64)> {
    let state = normalize(params, &QuadratureRule::default_gauss_hermite())?;
    let rep = analyze(&assemble(&state, Backend::Wavefunction)?)?;
    Ok((rep.log_negativity, rep.nu_min))
}

fn pair_diff(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn max_abs_diff(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> f64 {
    (0..4).map(|k| (a[k / 2][k % 2] - b[k / 2][k % 2]).abs()).fold(0.0, f64::max)
}

fn transpose(a: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

/// Oracle fidelity, backend cross-check and invariance checks for one state.
///
/// The rescaled closed-form comparison is included as a diagnostic.
pub fn validation_suite(params: &VortexParams, tolerance: f64, axes: AxesSpec) -> Result<ValidationReport> {
    let mut checks = Vec::new();
    let w = validate_wigner_with(params, tolerance, axes)?;
    checks.push(gated("oracle imaginary residual", w.oracle_max_imag_residual, IMAG_RESIDUAL_TOL));
    checks.push(gated("oracle |integral W - 1|", (w.oracle_normalization - 1.0).abs(), tolerance));
    checks.push(gated("oracle marginal vs |psi|^2", w.marginal_max_diff, tolerance));
    checks.push(diagnostic("closed form vs oracle (rescaled)", w.max_abs_diff, tolerance));
    checks.push(diagnostic("closed form marginal vs |psi|^2", w.closed_form_marginal_max_diff, tolerance));
    checks.push(diagnostic(
        "closed form pre-rescale integral",
        w.closed_form_pre_rescale_normalization,
        f64::INFINITY,
    ));

    let state = normalize(params, &QuadratureRule::default_gauss_hermite())?;
    let cc = cross_check(&state, DEFAULT_CROSS_CHECK_TOL)?;
    checks.push(gated("wavefunction vs wigner moments", cc.max_diff, DEFAULT_CROSS_CHECK_TOL));

    let sigma = assemble(&state, Backend::Wavefunction)?;
    let rep = analyze(&sigma)?;
    checks.push(gated("physicality 1/2 - nu_min_plain", 0.5 - rep.nu_min_plain, 1e-6));
    let base = (rep.log_negativity, rep.nu_min);

    // E_N vanishes for these states, so the partially transposed ν̃< is compared as well
    let flipped = negativity_of(&params.with_chirality(params.chirality.flipped()))?;
    checks.push(gated("chirality flip |dE_N|, |dnu_min|", pair_diff(flipped, base), 1e-9));

    let moved = negativity_of(&params.with_displacement(0.7, -1.3, 0.4, 2.1))?;
    checks.push(gated("displacement |dE_N|, |dnu_min|", pair_diff(moved, base), 1e-6));

    let local = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.7, 1.0 / 1.7, 0.45, 1.0 / 0.45));
    let squeezed = analyze(&sigma.congruence(&local))?;
    checks.push(gated(
        "local symplectic |dE_N|, |dnu_min|",
        pair_diff((squeezed.log_negativity, squeezed.nu_min), base),
        1e-10,
    ));

    let swapped_params = params.mode_swapped().with_chirality(params.chirality.flipped());
    let swapped = assemble(&normalize(&swapped_params, &QuadratureRule::default_gauss_hermite())?, Backend::Wavefunction)?;
    let swap_err = max_abs_diff(&swapped.alpha, &sigma.beta)
        .max(max_abs_diff(&swapped.beta, &sigma.alpha))
        .max(max_abs_diff(&swapped.mu, &transpose(&sigma.mu)));
    checks.push(gated("mode swap block exchange", swap_err, 1e-9));

    Ok(ValidationReport { m: params.m(), sigma_x: params.sigma_x(), sigma_y: params.sigma_y(), checks })
}

/// Covariance matrix of `params` from the wavefunction backend.
pub fn covariance_of(params: &VortexParams) -> Result<CovarianceMatrix> {
    assemble(&normalize(params, &QuadratureRule::default_gauss_hermite())?, Backend::Wavefunction)
}
