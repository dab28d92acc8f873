//! The validation suite behind `qev validate` for a squeezed, displaced
//! elliptic vortex.

use qev::cli::validation_suite;
use qev::state::VortexParams;
use qev::wigner::AxesSpec;

fn main() {
    for (m, sx, sy) in [(0, 2.0, 1.0), (1, 1.0, 1.0), (2, 0.5, 1.2)] {
        let params = VortexParams::from_widths(m, sx, sy).unwrap();
        let report = validation_suite(&params, 1e-6, AxesSpec::default()).unwrap();
        print!("{}", report.render());
        println!("  passed: {}", report.passed());
    }
}
