//! Two-mode squeezed vacuum: the one Gaussian reference where E_N = 2r is
//! known in closed form.

use qev::covariance::CovarianceMatrix;
use qev::entanglement::{analyze, analyze_with_base, LogBase};

fn main() {
    println!("{:>5} {:>14} {:>14} {:>10} {:>10}", "r", "nu_min", "E_N", "2r", "E_N (bits)");
    for r in [0.0, 0.1, 0.25, 0.5, 1.0, 2.0] {
        let sigma = CovarianceMatrix::two_mode_squeezed(r);
        let rep = analyze(&sigma).unwrap();
        let bits = analyze_with_base(&sigma, LogBase::Two).unwrap().log_negativity;
        println!("{r:>5} {:>14.10} {:>14.10} {:>10.6} {bits:>10.6}", rep.nu_min, rep.log_negativity, 2.0 * r);
    }
}
