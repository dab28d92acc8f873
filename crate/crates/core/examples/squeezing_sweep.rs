//! Logarithmic negativity over 50 log-spaced σ_x with σ_y = √5 σ_x for
//! m = 0..5, with CSV and SVG output in both axis modes.

use qev::sweep::{emit_csv, emit_svg, run_sweep, PlotAxis, SweepSpec};

fn main() {
    let spec = SweepSpec::default();
    let result = run_sweep(&spec).unwrap();
    print!("{}", result.report());

    let dir = std::env::temp_dir();
    emit_csv(&result, &dir.join("qev_sweep.csv")).unwrap();
    emit_svg(&result, PlotAxis::SigmaX, &dir.join("qev_sweep_sigma.svg")).unwrap();
    emit_svg(&result, PlotAxis::ZetaX, &dir.join("qev_sweep_zeta.svg")).unwrap();
    println!("outputs in {}", dir.display());
}
