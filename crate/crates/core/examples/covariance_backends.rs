//! Covariance matrix of an elliptic vortex from the wavefunction and from the
//! Wigner function, and the per-moment cross-check between them.

use qev::covariance::{assemble, cross_check, Backend, DEFAULT_CROSS_CHECK_TOL};
use qev::entanglement::analyze;
use qev::numerics::QuadratureRule;
use qev::state::{normalize, VortexParams};

fn print_blocks(label: &str, s: &qev::CovarianceMatrix) {
    println!("{label}");
    for row in s.to_matrix4().row_iter() {
        println!("  [{:>12.8} {:>12.8} {:>12.8} {:>12.8}]", row[0], row[1], row[2], row[3]);
    }
}

fn main() {
    let params = VortexParams::from_widths(2, 1.3, 0.6).unwrap().with_displacement(0.4, -0.2, 1.0, 0.3);
    let state = normalize(&params, &QuadratureRule::default_gauss_hermite()).unwrap();

    let wf = assemble(&state, Backend::Wavefunction).unwrap();
    let wg = assemble(&state, Backend::Wigner).unwrap();
    print_blocks("wavefunction backend (x, p_x, y, p_y):", &wf);
    print_blocks("wigner backend:", &wg);
    println!("first moments: {:?}", wf.first_moments);
    println!("det α = {:.12}, det β = {:.12}, det μ = {:.12}, det Σ = {:.12}", wf.det_alpha(), wf.det_beta(), wf.det_mu(), wf.det());

    let report = cross_check(&state, DEFAULT_CROSS_CHECK_TOL).unwrap();
    for d in &report.per_moment {
        println!("  {:<10} {:>20.14} {:>20.14} {:>9.1e}", format!("{:?}", d.observable), d.wavefunction, d.wigner, d.diff);
    }
    println!("max diff {:.2e}, consistent: {}", report.max_diff, report.consistent);
    println!("{}", analyze(&wf).unwrap().to_json());
}
