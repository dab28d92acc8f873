//! Generalized Laguerre polynomials L_m^{-1/2}: three-term recurrence against
//! the literal Rodrigues formula.

use qev::numerics::{laguerre_eval, laguerre_rodrigues_oracle, LaguerreSpec};

fn main() {
    println!("{:>3} {:>8} {:>24} {:>24} {:>10}", "m", "x", "recurrence", "rodrigues", "rel diff");
    for m in 0..=6 {
        let spec = LaguerreSpec::half(m);
        for x in [0.25, 1.0, 4.0, 12.0] {
            let a = laguerre_eval(spec, x).unwrap();
            let b = laguerre_rodrigues_oracle(spec, x).unwrap();
            let rel = (a - b).abs() / a.abs().max(b.abs()).max(1.0);
            println!("{m:>3} {x:>8} {a:>24.16e} {b:>24.16e} {rel:>10.1e}");
        }
    }
}
