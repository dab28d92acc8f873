//! Normalize vortex states of increasing order and look at their transverse
//! intensity: a zero of order m at the core and a ring of radius ~√m.

use qev::numerics::QuadratureRule;
use qev::state::{intensity, normalize, psi, validate_bs, BsCoefficients, BsVerdict, VortexParams};
use num_complex::Complex64;

fn main() {
    let rule = QuadratureRule::default_gauss_hermite();
    for m in 0..=4 {
        let params = VortexParams::from_widths(m, 1.0, 1.0).unwrap();
        let state = normalize(&params, &rule).unwrap();
        let ring = (0..400)
            .map(|i| 0.01 * i as f64)
            .max_by(|a, b| intensity(&state, *a, 0.0).total_cmp(&intensity(&state, *b, 0.0)))
            .unwrap();
        println!(
            "m = {m}: N = {:.10}, N²/printed² = {:.6}, |ψ(0,0)|² = {:.1e}, ring radius ≈ {ring:.2}",
            state.norm_factor(),
            state.printed_prefactor_ratio(),
            intensity(&state, 0.0, 0.0),
        );
    }

    // phase winds by 2πm around the core; opposite chirality winds the other way
    let params = VortexParams::from_widths(3, 1.5, 0.7).unwrap();
    let state = normalize(&params, &rule).unwrap();
    let mut winding = 0.0;
    let n = 720;
    let mut prev = psi(&state, 0.5, 0.0).arg();
    for k in 1..=n {
        let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let a = psi(&state, 0.5 * t.cos(), 0.5 * t.sin()).arg();
        let mut d = a - prev;
        d -= 2.0 * std::f64::consts::PI * (d / (2.0 * std::f64::consts::PI)).round();
        winding += d;
        prev = a;
    }
    println!("elliptic m = 3 winding number: {:.6}", winding / (2.0 * std::f64::consts::PI));

    let balanced = BsCoefficients {
        a1: Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        a2: Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
    };
    assert_eq!(validate_bs(balanced), BsVerdict::Valid);
    println!("50:50 coupler with a2 = i a1: {:?}", validate_bs(balanced));
}
