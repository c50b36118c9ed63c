//! Determinant polynomials built from a coefficient sequence `f_0..f_n`.
//!
//! Every polynomial here has at least two independent constructions:
//! `build_p` (shifted defining sum), `build_p_via_phi` (the `Φ_k` pairing),
//! `coeff_p` (Stirling closed form, coefficient by coefficient),
//! `build_p_r` (multinomial sum of rising-factorial determinants) and
//! `series_oracle` (truncated power-series determinant).

mod build;
mod phi;
mod sequence;
mod toeplitz;

pub use build::{build_p, build_q, coeff_p};
pub use phi::{ab_coefficients, build_p_via_phi, phi, phi_definitional, PhiDecomposition};
pub use sequence::{reciprocal_pochhammer_sequence, validate_values, Provenance, Sequence};
pub use toeplitz::{build_p_r, compositions, series_oracle};
