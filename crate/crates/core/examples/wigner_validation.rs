//! Wigner function of vortex states from the quadrature oracle, compared with
//! the closed-form expression, and a small grid exported in the text format.

use qev::wigner::{validate_wigner_with, wigner_grid, AxesSpec, WignerSource};
use qev::state::VortexParams;

fn main() {
    let axes = AxesSpec { points: 21, widths: 6.0 };
    for m in 0..=2 {
        let params = VortexParams::from_widths(m, 1.0, 1.0).unwrap();
        let v = validate_wigner_with(&params, 1e-6, axes).unwrap();
        println!("m = {m}");
        println!("  oracle: ∫W = {:.12}, marginal err {:.1e}, imag {:.1e}, W(core) = {:+.6}", v.oracle_normalization, v.marginal_max_diff, v.oracle_max_imag_residual, v.oracle_center_value);
        println!("  closed form: raw ∫W = {:.9}, W(core) after rescale = {:+.6}", v.closed_form_pre_rescale_normalization, v.closed_form_center_value);
        println!("  sup |closed − oracle| = {:.3e}, rms {:.3e}: {:?}", v.max_abs_diff, v.rms_diff, v.verdict);
    }

    let params = VortexParams::from_widths(1, 1.0, 1.0).unwrap();
    let grid = wigner_grid(&params, AxesSpec { points: 9, widths: 6.0 }, WignerSource::Oracle).unwrap();
    let path = std::env::temp_dir().join("qev_wigner_m1.txt");
    grid.write_text(std::io::BufWriter::new(std::fs::File::create(&path).unwrap())).unwrap();
    let back = qev::wigner::WignerGrid::read_text(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!(back.values(), grid.values());
    println!("wrote {} ({} values, round trip exact)", path.display(), grid.values().len());
}
