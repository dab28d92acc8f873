//! Entanglement of quantum optical elliptic vortex (QEV) states.
//!
//! A QEV state of vortex order `m` has the two-mode position wavefunction
//!
//! ```text
//! ψ(x, y) = N [ (x−x₀)/(√2σ_x) ± i (y−y₀)/(√2σ_y) ]^m
//!             · exp[ −½((x−x₀)²/σ_x² + (y−y₀)²/σ_y²) ] · exp[ i(p_x0 x + p_y0 y) ]
//! ```
//!
//! with squeezing widths `σ_i = exp(2ζ_i)`. The crate evaluates this state and
//! its Wigner function, computes the symmetrized covariance matrix by two
//! independent quadrature backends, and turns the covariance matrix into
//! symplectic eigenvalues, a Gaussian PPT separability verdict and the
//! logarithmic negativity `E_N = max(0, −ln 2ν<)`.
//!
//! Conventions: ħ = 1, `[x, p] = i`, vacuum quadrature variance 1/2, and
//! `W(x, p) = (1/π) ∫ ψ*(x+u) ψ(x−u) e^{2ipu} du` per mode.
//!
//! ```
//! use qev::{covariance, entanglement, state::{normalize, VortexParams}, numerics::QuadratureRule};
//!
//! let params = VortexParams::from_squeezing(0, 0.0, 0.0);
//! let state = normalize(&params, &QuadratureRule::default_gauss_hermite()).unwrap();
//! let sigma = covariance::assemble(&state, covariance::Backend::Wavefunction).unwrap();
//! let report = entanglement::analyze(&sigma).unwrap();
//! assert!(report.separable);
//! assert_eq!(report.log_negativity, 0.0);
//! ```

pub mod cli;
pub mod covariance;
pub mod entanglement;
pub mod error;
pub mod numerics;
pub mod phase_space;
pub mod state;
pub mod sweep;
pub mod wigner;

pub use covariance::{Backend, CovarianceMatrix};
pub use entanglement::SymplecticReport;
pub use error::{Error, Result};
pub use phase_space::PhaseSpacePoint;
pub use state::{Chirality, NormalizedState, VortexParams};
