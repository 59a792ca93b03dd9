//! Special functions underpinning the lattice sums.
//!
//! Everything here is dimensionless mathematics with no lattice knowledge:
//!
//! * [`exp_integral_e1`] — principal-branch exponential integral E1(z),
//!   the radial building block of the scalar dipole propagator.
//! * [`faddeeva_w`], [`erfc_complex`], [`erfcx_complex`], [`erfi_real`] —
//!   the complex error-function family used by the Ewald split, where
//!   erfc(r/η + iπαη) screens the real-space sum and erfc(πη √(|β+G|²-α²))
//!   screens the reciprocal one.
//! * [`log_gamma`] — Lanczos ln Γ(z), entering the closed-form 1D sum S0.
//! * [`jacobi_theta2`] / [`jacobi_theta3`] with the [`Nome`] type — theta
//!   functions for the exponentially convergent kernel representation of
//!   the 2D sums.
//! * [`lerch_phi`], [`lerch_phi_ds_at0`] — Lerch transcendents for the
//!   closed-form 1D sums, with Levin-u Abel summation on the unit circle
//!   ([`levin_u_sum`]) and an internal Euler-integral continuation for
//!   complex energies.
//!
//! Every function is validated against an independent oracle (quadrature
//! with different contours, brute-force series, known closed forms) and
//! satisfies the Schwarz reflection f(conj z) = conj f(z) on its real-
//! parameter domain; tests exercise both.

mod e1;
mod erf;
mod gamma;
mod lerch;
mod levin;
mod theta;

pub use e1::exp_integral_e1;
pub(crate) use e1::exp_e1_scaled;
pub use erf::{erfc_complex, erfcx_complex, erfi_real, faddeeva_w};
pub use gamma::log_gamma;
pub use lerch::{lerch_phi, lerch_phi_ds_at0};
pub(crate) use lerch::lerch_phi_s1;
pub use levin::{iterated_aitken, levin_u_sum, LEVIN_DEFAULT_TOL};
pub use theta::{jacobi_theta2, jacobi_theta3, jacobi_theta3_m1, Nome};
