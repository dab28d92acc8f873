use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest degree accepted by the Rodrigues-formula oracle.
pub const RODRIGUES_MAX_DEGREE: u32 = 12;

/// Degree and order of an associated Laguerre polynomial `L_m^α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreSpec {
    degree: u32,
    alpha: f64,
}

impl LaguerreSpec {
    /// Fails unless `alpha > -1`, the range where the weight `x^α e^{-x}` is integrable.
    pub fn new(degree: u32, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(Error::Domain(format!("Laguerre order alpha = {alpha} must be > -1")));
        }
        Ok(Self { degree, alpha })
    }

    /// `L_m^{-1/2}`, the family appearing in the vortex Wigner function.
    pub fn half(degree: u32) -> Self {
        Self { degree, alpha: -0.5 }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Evaluates `L_m^α(x)` by upward three-term recurrence.
pub fn laguerre_eval(spec: LaguerreSpec, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("Laguerre argument {x} is not finite")));
    }
    let a = spec.alpha;
    let m = spec.degree;
    if m == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + a - x;
    for k in 2..=m {
        let kf = f64::from(k);
        let next = ((2.0 * kf - 1.0 + a - x) * cur - (kf - 1.0 + a) * prev) / kf;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Evaluates `L_m^α(x)` from the Rodrigues formula
/// `L_m^α(x) = x^{-α} e^{x} / m! · dᵐ/dxᵐ [e^{-x} x^{m+α}]`.
///
/// The m-fold derivative is carried out symbolically: the running expression
/// is kept as `e^{-x} Σ_j c_j x^{α+j}` and each derivative applies the product
/// rule term by term. The result is then evaluated literally, prefactors
/// included, so `x = 0` with `α ≠ 0` hits a singular power and is rejected.
///
/// This is the standard (unsquared) form of the formula.
pub fn laguerre_rodrigues_oracle(spec: LaguerreSpec, x: f64) -> Result<f64> {
    let m = spec.degree;
    let a = spec.alpha;
    if m > RODRIGUES_MAX_DEGREE {
        return Err(Error::Unsupported(format!(
            "Rodrigues oracle supports degree <= {RODRIGUES_MAX_DEGREE}, got {m}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!("Laguerre argument {x} is not finite")));
    }
    if x == 0.0 && a != 0.0 {
        return Err(Error::Domain("Rodrigues form is singular at x = 0 for alpha != 0".into()));
    }
    if x < 0.0 && a.fract() != 0.0 {
        return Err(Error::Domain(format!("x^alpha undefined for x = {x} < 0 and alpha = {a}")));
    }

    let m = m as usize;
    // coeffs[j] multiplies e^{-x} x^{α+j}; start from x^{m+α}.
    let mut coeffs = vec![0.0; m + 1];
    coeffs[m] = 1.0;
    for _ in 0..m {
        let mut next = vec![0.0; m + 1];
        for j in 0..=m {
            // d/dx [e^{-x} x^{α+j}] = e^{-x} ((α+j) x^{α+j-1} − x^{α+j})
            next[j] -= coeffs[j];
            if j > 0 {
                next[j - 1] += coeffs[j] * (a + j as f64);
            }
        }
        coeffs = next;
    }

    let e_minus = (-x).exp();
    let derivative: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c * e_minus * x.powf(a + j as f64))
        .sum();
    let factorial: f64 = (1..=m).map(|k| k as f64).product();
    let value = x.powf(-a) * x.exp() * derivative / factorial;
    if !value.is_finite() {
        return Err(Error::Domain(format!("Rodrigues evaluation overflowed at x = {x}")));
    }
    Ok(value)
}

/// `Γ(m + ½)` via `Γ(k+½) = (k−½) Γ(k−½)` from `Γ(½) = √π`.
pub fn gamma_half_integer(m: u32) -> f64 {
    let mut g = PI.sqrt();
    for k in 1..=m {
        g *= f64::from(k) - 0.5;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Series form `Σ_k (−1)^k C(m+α, m−k) x^k / k!`, test oracle only.
    fn laguerre_series(m: u32, a: f64, x: f64) -> f64 {
        let m = m as usize;
        (0..=m)
            .map(|k| {
                let n = m - k;
                // generalized binomial C(m+α, n)
                let binom: f64 = (0..n).map(|i| (m as f64 + a - i as f64) / (i + 1) as f64).product();
                let kfact: f64 = (1..=k).map(|i| i as f64).product();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom * x.powi(k as i32) / kfact
            })
            .sum()
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(laguerre_eval(LaguerreSpec::half(0), 3.7).unwrap(), 1.0);
        assert_relative_eq!(laguerre_eval(LaguerreSpec::half(1), 1.0).unwrap(), -0.5, epsilon = 1e-15);
        assert_relative_eq!(laguerre_eval(LaguerreSpec::half(2), 1.0).unwrap(), -0.625, epsilon = 1e-15);
        assert_relative_eq!(laguerre_series(2, -0.5, 1.0), -0.625, epsilon = 1e-15);
    }

    #[test]
    fn rodrigues_examples() {
        let two = laguerre_rodrigues_oracle(LaguerreSpec::new(0, 1.3).unwrap(), 2.0).unwrap();
        assert_relative_eq!(two, 1.0, epsilon = 1e-15);
        let one = laguerre_rodrigues_oracle(LaguerreSpec::half(1), 1.0).unwrap();
        assert_relative_eq!(one, -0.5, epsilon = 1e-14);
        let r = laguerre_rodrigues_oracle(LaguerreSpec::half(3), 0.5).unwrap();
        let e = laguerre_eval(LaguerreSpec::half(3), 0.5).unwrap();
        assert_relative_eq!(r, e, max_relative = 1e-9);
    }

    #[test]
    fn rodrigues_rejects_bad_inputs() {
        assert!(matches!(
            laguerre_rodrigues_oracle(LaguerreSpec::half(13), 1.0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(laguerre_rodrigues_oracle(LaguerreSpec::half(2), 0.0), Err(Error::Domain(_))));
        // α = 0 is regular at the origin: L_2^0(0) = 1
        let v = laguerre_rodrigues_oracle(LaguerreSpec::new(2, 0.0).unwrap(), 0.0).unwrap();
        assert_relative_eq!(v, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn invalid_alpha_and_argument() {
        assert!(LaguerreSpec::new(2, -1.0).is_err());
        assert!(LaguerreSpec::new(2, f64::NAN).is_err());
        assert!(laguerre_eval(LaguerreSpec::half(2), f64::INFINITY).is_err());
    }

    #[test]
    fn gamma_values() {
        assert_relative_eq!(gamma_half_integer(0), PI.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(gamma_half_integer(1), PI.sqrt() / 2.0, epsilon = 1e-15);
        assert_relative_eq!(gamma_half_integer(4), 11.6317283966, epsilon = 1e-9);
        assert_relative_eq!(gamma_half_integer(4), 105.0 * PI.sqrt() / 16.0, max_relative = 1e-15);
        for m in 0..=10u32 {
            let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
            let ratio = gamma_half_integer(m) * 4f64.powi(m as i32) * fact(m) / fact(2 * m);
            assert_relative_eq!(ratio, PI.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn three_paths_agree_on_grid() {
        for m in 0..=10u32 {
            for i in 1..=200 {
                let x = 0.25 * f64::from(i);
                let rec = laguerre_eval(LaguerreSpec::half(m), x).unwrap();
                let rod = laguerre_rodrigues_oracle(LaguerreSpec::half(m), x).unwrap();
                let ser = laguerre_series(m, -0.5, x);
                let scale = rec.abs().max(ser.abs()).max(1.0);
                assert!((rec - ser).abs() <= 1e-9 * scale, "m={m} x={x}: {rec} vs {ser}");
                assert!((rec - rod).abs() <= 1e-9 * scale, "m={m} x={x}: {rec} vs {rod}");
            }
        }
    }
}
