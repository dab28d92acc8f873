//! Special functions and quadrature primitives.

mod quadrature;
mod special;
mod sum;

pub use quadrature::{
    integrate_4d, make_rule, QuadratureRule, RuleKind, TensorGrid4, DEFAULT_ORDER, DEFAULT_TRAPEZOID_HALF_WIDTH,
    MAX_GAUSS_HERMITE_ORDER,
};
pub use special::{gamma_half_integer, laguerre_eval, laguerre_rodrigues_oracle, LaguerreSpec};
pub use sum::{det2_exact, neumaier_sum, DoubleDouble, NeumaierSum};
