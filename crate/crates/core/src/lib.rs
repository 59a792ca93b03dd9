//! # latticetopo-core
//!
//! Band structure, topological invariants, and domain-wall edge states of
//! one- and two-dimensional atomic lattices coupled by long-range radiation.
//!
//! ## Physical setting
//!
//! Identical two-level emitters sit on a Bravais lattice with a two-site
//! basis (an SSH chain in 1D, a honeycomb in 2D). Exchanging photons couples
//! every pair of sites through the free-space scalar Green's function, so
//! the Bloch Hamiltonian is a full lattice sum rather than a tight-binding
//! matrix. In units of the lattice period and the lattice resonance, the
//! collective modes at quasimomentum β solve the nonlinear 2x2 eigenproblem
//!
//!   H(β, α) ψ = α ψ,   H = h0 σ0 + h1 σ1 + h2 σ2 + h3 σ3,
//!
//! where the h-components combine the single-site resonances α_A, α_B and
//! linewidths κ_A, κ_B with three structure sums S0, S+, S- of the
//! propagator over the lattice. H is non-Hermitian (radiative loss), so
//! bands are complex, eigenvectors are biorthogonal, and the topological
//! invariants (1D winding number, 2D Chern number with a Haldane-type
//! complex mass) are built from left/right eigenvector pairs.
//!
//! ## What the crate provides
//!
//! | module       | content                                                       |
//! |--------------|---------------------------------------------------------------|
//! | [`specfun`]  | E1, Faddeeva/erfc family, log-gamma, Jacobi theta, Lerch      |
//! | [`greens`]   | scalar dipole propagator G(r; k)                              |
//! | [`latsum1d`] | closed-form 1D chain sums S0, S± and the damped-sum oracle    |
//! | [`latsum2d`] | honeycomb sums via theta kernel + Ewald split, and the oracle |
//! | [`bloch`]    | h-vector, complex bands, biorthogonal eigenvectors            |
//! | [`topology`] | winding number, Wilson berry phases, Chern numbers, phases    |
//! | [`diracedge`]| Dirac-point expansions and domain-wall edge states            |
//! | [`quadrature`]| adaptive Gauss pair integrator used across the crate         |
//! | [`validate`] | the full invariant suite behind the CLI `validate` command    |
//!
//! All quantities are dimensionless: lengths in units of the lattice period
//! `a`, energies/detunings in units of the single-emitter linewidth scale of
//! the model, quasimomenta as dimensionless Bloch phases (β ∈ [-1/2, 1/2) in
//! 1D, Cartesian two-vectors in units of 2π/a in 2D).

pub mod bloch;
pub mod error;
pub mod greens;
pub mod latsum1d;
pub mod latsum2d;
pub mod quadrature;
pub mod specfun;
pub mod topology;

pub use error::{Error, Result};
pub use latsum2d::Vec2;

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex<f64>;
