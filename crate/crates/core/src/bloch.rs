//! Effective two-band Bloch Hamiltonian of the diatomic radiative lattice.
//!
//! The coupled-dipole eigenproblem reduces, per Bloch momentum β, to a 2×2
//! non-Hermitian Hamiltonian decomposed over Pauli matrices,
//! H(α, β) = h₀σ₀ + **h**·**σ**, with
//!
//! ```text
//! h₀ = ½[α_A + α_B − 2iπ(κ_A+κ_B)α² − (κ_A+κ_B) S₀(α,β)]
//! h₁ = −½√(κ_Aκ_B) [S₊(α,β) + S₋(α,β)]
//! h₂ = (1/2i)√(κ_Aκ_B) [S₊(α,β) − S₋(α,β)]
//! h₃ = ½[α_A − α_B − 2iπ(κ_A−κ_B)α² − (κ_A−κ_B) S₀(α,β)]
//! ```
//!
//! where S₀ and S± are the same- and cross-sublattice lattice sums from
//! [`crate::latsum1d`] (chain with intracell offset δ) or
//! [`crate::latsum2d`] (honeycomb). The bands are α±(β) = h₀ ± |h| with
//! |h| = √(h₁² + h₂² + h₃²) on the principal branch, and the right/left
//! eigenvectors in biorthogonal normalization ⟨ψᵢᴸ|ψⱼᴿ⟩ = δᵢⱼ are
//!
//! ```text
//! |ψ±ᴿ⟩ = (h₁ − ih₂, ±|h| − h₃)ᵀ / √(2|h|(|h| ∓ h₃))
//! ⟨ψ±ᴸ| = (h₁ + ih₂, ±|h| − h₃)  / √(2|h|(|h| ∓ h₃))
//! ```
//!
//! (the left row is *not* conjugated when contracted with a right column).
//!
//! A synthetic gauge field in the honeycomb case adds a complex
//! next-nearest-neighbor hopping that shifts
//! h₀ → h₀ + 2t₂cosφ Σᵢcos(2πβ·aᵢ) and h₃ → h₃ − 2t₂sinφ Σᵢsin(2πβ·aᵢ).
//!
//! Because the lattice sums themselves depend on the energy α, the true
//! spectrum solves a nonlinear eigenvalue problem. The default follows the
//! single-linearization convention: H is evaluated once at the average
//! isolated-atom energy ᾱ = (α_A+α_B)/2 − iπ(κ_A+κ_B)(α_A+α_B)²/4.
//! [`Refine::FixedPoint`] iterates α⁽ⁿ⁺¹⁾ = h₀(α⁽ⁿ⁾) ± |h(α⁽ⁿ⁾)| per band.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::latsum1d::{s0_1d, s_pm_1d, Sum1DArgs, SumSign};
use crate::latsum2d::{geometry, s0_2d, s_pm_2d, Sum2DArgs, Vec2};

// ============================================================================
// Parameters and momenta
// ============================================================================

/// Default dimensionless resonance frequency used throughout the article's
/// figures (α_A = α_B = 2.4).
pub const DEFAULT_ALPHA: f64 = 2.4;
/// Default coupling parameter (κ_A = κ_B = 0.01).
pub const DEFAULT_KAPPA: f64 = 0.01;

/// Lattice dimensionality, carrying the 1D intracell offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LatticeDim {
    /// Diatomic chain with intracell offset δ ∈ (0, 1).
    One { delta: f64 },
    /// Honeycomb lattice (the offset is fixed by the geometry).
    Two,
}

/// Physical parameters of the diatomic lattice.
#[derive(Debug, Clone, Copy)]
pub struct LatticeParams {
    /// Renormalized resonance frequency of sublattice A (> 0).
    pub alpha_a: f64,
    /// Renormalized resonance frequency of sublattice B (> 0).
    pub alpha_b: f64,
    /// Coupling parameter of sublattice A (> 0).
    pub kappa_a: f64,
    /// Coupling parameter of sublattice B (> 0).
    pub kappa_b: f64,
    /// Chain or honeycomb.
    pub dim: LatticeDim,
    /// Haldane next-nearest-neighbor hopping amplitude (≥ 0, 2D only).
    pub t2: f64,
    /// Haldane gauge-field phase.
    pub phi: f64,
}

impl LatticeParams {
    /// Validated constructor.
    pub fn new(
        alpha_a: f64,
        alpha_b: f64,
        kappa_a: f64,
        kappa_b: f64,
        dim: LatticeDim,
        t2: f64,
        phi: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("alpha_a", alpha_a),
            ("alpha_b", alpha_b),
            ("kappa_a", kappa_a),
            ("kappa_b", kappa_b),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if !(t2 >= 0.0) || !t2.is_finite() {
            return Err(Error::Domain(format!("t2 must be ≥ 0 and finite, got {t2}")));
        }
        if !phi.is_finite() {
            return Err(Error::Domain(format!("phi must be finite, got {phi}")));
        }
        if let LatticeDim::One { delta } = dim {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(Error::Domain(format!(
                    "intracell offset must satisfy 0 < delta < 1, got {delta}"
                )));
            }
            if t2 != 0.0 {
                return Err(Error::Domain(
                    "the gauge-field hopping t2 is defined for the honeycomb lattice only".into(),
                ));
            }
        }
        Ok(Self { alpha_a, alpha_b, kappa_a, kappa_b, dim, t2, phi })
    }

    /// Diatomic chain at the article's default frequencies and couplings.
    pub fn chain(delta: f64) -> Result<Self> {
        Self::new(
            DEFAULT_ALPHA,
            DEFAULT_ALPHA,
            DEFAULT_KAPPA,
            DEFAULT_KAPPA,
            LatticeDim::One { delta },
            0.0,
            0.0,
        )
    }

    /// Honeycomb lattice at the default frequencies and couplings.
    pub fn honeycomb() -> Result<Self> {
        Self::new(
            DEFAULT_ALPHA,
            DEFAULT_ALPHA,
            DEFAULT_KAPPA,
            DEFAULT_KAPPA,
            LatticeDim::Two,
            0.0,
            0.0,
        )
    }

    /// Same lattice with the Haldane term switched on.
    pub fn with_gauge_field(mut self, t2: f64, phi: f64) -> Result<Self> {
        if matches!(self.dim, LatticeDim::One { .. }) && t2 != 0.0 {
            return Err(Error::Domain(
                "the gauge-field hopping t2 is defined for the honeycomb lattice only".into(),
            ));
        }
        if !(t2 >= 0.0) || !t2.is_finite() || !phi.is_finite() {
            return Err(Error::Domain(format!("invalid gauge field t2 = {t2}, phi = {phi}")));
        }
        self.t2 = t2;
        self.phi = phi;
        Ok(self)
    }

    /// Soft regime checks: the effective model assumes weak coupling and a
    /// small sublattice detuning. Violations degrade accuracy rather than
    /// invalidate the algebra, so they are reported instead of rejected.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.kappa_a > 0.1 || self.kappa_b > 0.1 {
            out.push(format!(
                "couplings (kappa_a = {}, kappa_b = {}) exceed the weak-coupling regime kappa <= 0.1",
                self.kappa_a, self.kappa_b
            ));
        }
        let asym = (self.alpha_a - self.alpha_b).abs();
        if asym > 0.1 * (self.alpha_a + self.alpha_b) {
            out.push(format!(
                "sublattice detuning |alpha_a - alpha_b| = {asym} is not small against alpha_a + alpha_b = {}",
                self.alpha_a + self.alpha_b
            ));
        }
        out
    }
}

/// Bloch momentum matching the lattice dimensionality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Momentum {
    /// Chain quasimomentum β (FBZ [-1/2, 1/2)).
    One(f64),
    /// Honeycomb quasimomentum β (Cartesian reciprocal coordinates).
    Two(Vec2),
}

// ============================================================================
// The h-vector
// ============================================================================

/// Pauli decomposition H = h₀σ₀ + h·σ of the Bloch Hamiltonian.
#[derive(Debug, Clone, Copy)]
pub struct HVector {
    pub h0: C64,
    pub h1: C64,
    pub h2: C64,
    pub h3: C64,
}

impl HVector {
    /// |h| = √(h₁² + h₂² + h₃²) on the principal branch (Re ≥ 0).
    pub fn norm_h(&self) -> C64 {
        (self.h1 * self.h1 + self.h2 * self.h2 + self.h3 * self.h3).sqrt()
    }

    /// Off-diagonal element H₁₂ = h₁ − ih₂ = −√(κ_Aκ_B) S₊.
    pub fn off_diag_upper(&self) -> C64 {
        self.h1 - C64::i() * self.h2
    }

    /// Off-diagonal element H₂₁ = h₁ + ih₂ = −√(κ_Aκ_B) S₋.
    pub fn off_diag_lower(&self) -> C64 {
        self.h1 + C64::i() * self.h2
    }

    /// Assemble the dense 2×2 matrix [[h₀+h₃, h₁−ih₂], [h₁+ih₂, h₀−h₃]].
    pub fn matrix(&self) -> [[C64; 2]; 2] {
        [
            [self.h0 + self.h3, self.off_diag_upper()],
            [self.off_diag_lower(), self.h0 - self.h3],
        ]
    }
}

/// Average isolated-atom energy: the frequency of two decoupled, decaying
/// atoms, ᾱ = (α_A+α_B)/2 − iπ(κ_A+κ_B)(α_A+α_B)²/4.
pub fn alpha_bar(params: &LatticeParams) -> C64 {
    let s = params.alpha_a + params.alpha_b;
    let k = params.kappa_a + params.kappa_b;
    C64::new(0.5 * s, 0.0) - C64::i() * std::f64::consts::PI * k * s * s / 4.0
}

/// The three lattice sums (S₀, S₊, S₋) entering the h-vector, evaluated at
/// the (generally complex) energy `alpha_eval`.
fn lattice_sums(params: &LatticeParams, momentum: Momentum, alpha_eval: C64) -> Result<[C64; 3]> {
    match (params.dim, momentum) {
        (LatticeDim::One { delta }, Momentum::One(beta)) => {
            let args = Sum1DArgs::new(alpha_eval, beta, delta)?;
            Ok([
                s0_1d(alpha_eval, args.beta)?,
                s_pm_1d(&args, SumSign::Plus)?,
                s_pm_1d(&args, SumSign::Minus)?,
            ])
        }
        (LatticeDim::Two, Momentum::Two(beta)) => {
            let args = Sum2DArgs::new(alpha_eval, beta)?;
            Ok([
                s0_2d(&args)?,
                s_pm_2d(&args, SumSign::Plus)?,
                s_pm_2d(&args, SumSign::Minus)?,
            ])
        }
        (LatticeDim::One { .. }, Momentum::Two(_)) | (LatticeDim::Two, Momentum::One(_)) => {
            Err(Error::Domain(
                "momentum dimensionality does not match the lattice dimensionality".into(),
            ))
        }
    }
}

/// The h-vector at momentum β, with the lattice sums and the explicit α²
/// radiation term evaluated at `alpha_eval`.
pub fn h_vector(params: &LatticeParams, momentum: Momentum, alpha_eval: C64) -> Result<HVector> {
    let [s0, sp, sm] = lattice_sums(params, momentum, alpha_eval)?;
    let ksum = params.kappa_a + params.kappa_b;
    let kdif = params.kappa_a - params.kappa_b;
    let kgeo = (params.kappa_a * params.kappa_b).sqrt();
    let rad = C64::new(0.0, 2.0 * std::f64::consts::PI) * alpha_eval * alpha_eval;

    let mut h0 = 0.5 * (C64::new(params.alpha_a + params.alpha_b, 0.0) - ksum * rad - ksum * s0);
    let h1 = -0.5 * kgeo * (sp + sm);
    let h2 = (sp - sm) * kgeo / (2.0 * C64::i());
    let mut h3 = 0.5 * (C64::new(params.alpha_a - params.alpha_b, 0.0) - kdif * rad - kdif * s0);

    // Synthetic gauge field (honeycomb only): complex next-nearest-neighbor
    // hopping over the three lattice vectors a₁, a₂, a₃.
    if params.t2 > 0.0 {
        if let Momentum::Two(beta) = momentum {
            let geo = geometry();
            let (mut csum, mut ssum) = (0.0, 0.0);
            for a in &geo.a {
                let arg = 2.0 * std::f64::consts::PI * beta.dot(*a);
                csum += arg.cos();
                ssum += arg.sin();
            }
            h0 += 2.0 * params.t2 * params.phi.cos() * csum;
            h3 -= 2.0 * params.t2 * params.phi.sin() * ssum;
        }
    }

    Ok(HVector { h0, h1, h2, h3 })
}

// ============================================================================
// Eigenvectors
// ============================================================================

/// Right/left eigenvector pairs in biorthogonal normalization.
///
/// Left vectors are stored as given by the closed form; the biorthogonal
/// inner product contracts them with right vectors *without* conjugation:
/// ⟨ψᴸ|ψᴿ⟩ = Σᵢ ψᴸᵢ ψᴿᵢ.
#[derive(Debug, Clone, Copy)]
pub struct BandEigvecs {
    pub right_plus: [C64; 2],
    pub right_minus: [C64; 2],
    pub left_plus: [C64; 2],
    pub left_minus: [C64; 2],
}

/// Biorthogonal inner product ⟨L|R⟩ = Σᵢ LᵢRᵢ (no conjugation).
pub fn biorthogonal_dot(left: &[C64; 2], right: &[C64; 2]) -> C64 {
    left[0] * right[0] + left[1] * right[1]
}

/// Relative degeneracy threshold: |h| below this times the component scale
/// marks the exceptional-point vicinity where the 2×2 Hamiltonian is
/// numerically defective.
const DEGENERACY_EPS: f64 = 1e-14;

fn h_component_scale(h: &HVector) -> f64 {
    h.h1.norm().max(h.h2.norm()).max(h.h3.norm()).max(1.0)
}

/// One band's eigenvector pair for eigenvalue branch λ (λ² = h₁²+h₂²+h₃²).
///
/// Two algebraically equivalent closed forms exist; both are exact
/// eigenvectors, and either choice stays exactly biorthogonal to the other
/// band. The form whose normalizer 2λ(λ∓h₃) is farther from zero is used,
/// which keeps the construction stable when h is nearly aligned with ±ẑ.
/// The residual scalar freedom |ψᴿ⟩ → c|ψᴿ⟩, ⟨ψᴸ| → ⟨ψᴸ|/c is fixed by
/// rotating the largest component of the right vector to the positive real
/// axis, so outputs are deterministic.
fn eig_pair_for(h: &HVector, lambda: C64) -> Result<([C64; 2], [C64; 2])> {
    let (am, ap) = (lambda - h.h3, lambda + h.h3);
    let (right, left, norm2) = if am.norm() >= ap.norm() {
        (
            [h.off_diag_upper(), am],
            [h.off_diag_lower(), am],
            2.0 * lambda * am,
        )
    } else {
        (
            [ap, h.off_diag_lower()],
            [ap, h.off_diag_upper()],
            2.0 * lambda * ap,
        )
    };
    if norm2.norm() < DEGENERACY_EPS * h_component_scale(h) {
        return Err(Error::Degeneracy(format!(
            "biorthogonal normalizer 2λ(λ∓h₃) = {norm2} vanishes at λ = {lambda}"
        )));
    }
    let n = norm2.sqrt();
    let (r, l) = ([right[0] / n, right[1] / n], [left[0] / n, left[1] / n]);
    let big = if r[0].norm() >= r[1].norm() { r[0] } else { r[1] };
    let phase = big / big.norm();
    Ok(([r[0] / phase, r[1] / phase], [l[0] * phase, l[1] * phase]))
}

/// Eigenvectors of h·σ for both bands, on the eigenvalue branches ±λ.
///
/// `lambda` defaults to the principal |h| in [`eigvecs`]; band-tracked sweeps
/// pass the sign-matched branch so eigenvectors follow their band.
pub fn eigvecs_on_branch(h: &HVector, lambda: C64) -> Result<BandEigvecs> {
    if lambda.norm() < DEGENERACY_EPS * h_component_scale(h) {
        return Err(Error::Degeneracy(format!(
            "|h| = {} is below the exceptional-point threshold",
            lambda.norm()
        )));
    }
    let (right_plus, left_plus) = eig_pair_for(h, lambda)?;
    let (right_minus, left_minus) = eig_pair_for(h, -lambda)?;
    Ok(BandEigvecs { right_plus, right_minus, left_plus, left_minus })
}

/// Eigenvectors of h·σ for both bands on the principal branch.
pub fn eigvecs(h: &HVector) -> Result<BandEigvecs> {
    eigvecs_on_branch(h, h.norm_h())
}

// ============================================================================
// Bands
// ============================================================================

/// Eigenvalue refinement strategy for the nonlinear problem α = h₀(α) ± |h(α)|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Refine {
    /// Single linearization at ᾱ (the article's convention).
    None,
    /// Fixed-point iteration per band until |α⁽ⁿ⁺¹⁾ − α⁽ⁿ⁾| < tol.
    FixedPoint { max_iters: usize, tol: f64 },
}

/// Band-structure sample at one momentum.
#[derive(Debug, Clone, Copy)]
pub struct BandPoint {
    pub momentum: Momentum,
    /// h-vector used for this sample (at ᾱ, or at the last refinement step).
    pub h: HVector,
    /// Signed eigenvalue branch assigned to the "+" band (principal |h| for
    /// single points; sign-matched along sweeps).
    pub lambda: C64,
    pub alpha_plus: C64,
    pub alpha_minus: C64,
    /// `None` within the exceptional-point vicinity (e.g. Dirac points),
    /// where the bands touch and eigenvectors are not defined.
    pub eig: Option<BandEigvecs>,
}

impl BandPoint {
    fn assemble(momentum: Momentum, h: HVector, lambda: C64) -> Self {
        let eig = eigvecs_on_branch(&h, lambda).ok();
        BandPoint {
            momentum,
            h,
            lambda,
            alpha_plus: h.h0 + lambda,
            alpha_minus: h.h0 - lambda,
            eig,
        }
    }
}

/// Band structure at one momentum: α±(β) = h₀ ± |h| evaluated at ᾱ, with
/// optional per-band fixed-point refinement of the nonlinear eigenproblem.
pub fn bands(params: &LatticeParams, momentum: Momentum, refine: Refine) -> Result<BandPoint> {
    let abar = alpha_bar(params);
    let h = h_vector(params, momentum, abar)?;
    match refine {
        Refine::None => Ok(BandPoint::assemble(momentum, h, h.norm_h())),
        Refine::FixedPoint { max_iters, tol } => {
            if !(tol > 0.0) {
                return Err(Error::Config(format!("fixed-point tol must be > 0, got {tol}")));
            }
            let mut refined = [C64::default(); 2];
            let mut h_last = h;
            for (slot, sign) in [(0usize, 1.0), (1, -1.0)] {
                let mut alpha = h.h0 + sign * h.norm_h();
                let mut converged = false;
                for _ in 0..max_iters {
                    let h_n = h_vector(params, momentum, alpha)?;
                    let next = h_n.h0 + sign * h_n.norm_h();
                    let delta = (next - alpha).norm();
                    alpha = next;
                    if slot == 0 {
                        h_last = h_n;
                    }
                    if delta < tol {
                        converged = true;
                        break;
                    }
                }
                if !converged {
                    return Err(Error::NonConvergence(format!(
                        "fixed-point band refinement did not reach tol = {tol} within {max_iters} iterations"
                    )));
                }
                refined[slot] = alpha;
            }
            // Report eigenvectors of the h evaluated at the refined "+" energy.
            let lambda = h_last.norm_h();
            let eig = eigvecs_on_branch(&h_last, lambda).ok();
            Ok(BandPoint {
                momentum,
                h: h_last,
                lambda,
                alpha_plus: refined[0],
                alpha_minus: refined[1],
                eig,
            })
        }
    }
}

// ============================================================================
// Grids and paths
// ============================================================================

/// Sweep specification for [`band_grid`].
#[derive(Debug, Clone, Copy)]
pub enum GridSpec {
    /// `n` evenly spaced chain momenta from `start` to `end` inclusive.
    Line1D { start: f64, end: f64, n: usize },
    /// `n1 × n2` fractional reciprocal grid β = (i/n1) b₁ + (j/n2) b₂,
    /// i-major ordering, covering the Brillouin torus once.
    Grid2D { n1: usize, n2: usize },
}

/// High-symmetry labels of the honeycomb path preset.
pub const PATH_LABELS: [&str; 5] = ["Gamma", "Sigma", "M", "K", "Lambda"];

/// Γ → Σ → M → K → Λ corner coordinates. Σ and Λ are the midpoints of Γ–M
/// and K–Γ respectively; M = (b₁+b₂)/2 is the zone-edge midpoint adjacent to
/// the K corner returned by the geometry.
pub fn path_corners() -> [Vec2; 5] {
    let geo = geometry();
    let m = Vec2::new(0.5 * (geo.b[0].x + geo.b[1].x), 0.5 * (geo.b[0].y + geo.b[1].y));
    let k = geo.k_point;
    [
        Vec2::new(0.0, 0.0),
        Vec2::new(0.5 * m.x, 0.5 * m.y),
        m,
        k,
        Vec2::new(0.5 * k.x, 0.5 * k.y),
    ]
}

/// One sample of a high-symmetry path: arc-length coordinate, momentum and,
/// at the segment corners, the corner label.
#[derive(Debug, Clone, Copy)]
pub struct PathSample {
    pub arc: f64,
    pub beta: Vec2,
    pub label: Option<&'static str>,
}

/// Sample the Γ → Σ → M → K → Λ preset with `per_segment` intervals per leg;
/// corner points are hit exactly.
pub fn path_preset(per_segment: usize) -> Result<Vec<PathSample>> {
    if per_segment == 0 {
        return Err(Error::Config("path needs at least one interval per segment".into()));
    }
    let corners = path_corners();
    let mut out = Vec::new();
    let mut arc = 0.0;
    for seg in 0..corners.len() - 1 {
        let (a, b) = (corners[seg], corners[seg + 1]);
        let len = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
        let last = if seg == corners.len() - 2 { per_segment } else { per_segment - 1 };
        for i in 0..=last {
            let t = i as f64 / per_segment as f64;
            // Hit corners exactly rather than through arithmetic on t.
            let beta = if i == 0 {
                a
            } else if i == per_segment {
                b
            } else {
                Vec2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
            };
            let label = if i == 0 {
                Some(PATH_LABELS[seg])
            } else if seg == corners.len() - 2 && i == per_segment {
                Some(PATH_LABELS[seg + 1])
            } else {
                None
            };
            out.push(PathSample { arc: arc + t * len, beta, label });
        }
        arc += len;
    }
    Ok(out)
}

/// Track the eigenvalue branch continuously along a sweep: pick the sign of
/// |h| closest to the previous branch value so bands keep their identity
/// across branch cuts of the complex square root.
pub(crate) fn tracked_lambda(h: &HVector, prev: Option<C64>) -> C64 {
    let lam = h.norm_h();
    match prev {
        Some(p) if (-lam - p).norm() < (lam - p).norm() => -lam,
        _ => lam,
    }
}

/// Band structure on a deterministic momentum grid, with band tracking.
///
/// Points that fall exactly on a light line are skipped (the lattice sums
/// are singular there); the output preserves the sweep order of the
/// surviving points.
pub fn band_grid(params: &LatticeParams, spec: GridSpec) -> Result<Vec<BandPoint>> {
    let momenta: Vec<Momentum> = match (params.dim, spec) {
        (LatticeDim::One { .. }, GridSpec::Line1D { start, end, n }) => {
            if n < 2 {
                return Err(Error::Config(format!("1D grid needs at least 2 points, got {n}")));
            }
            (0..n)
                .map(|i| {
                    let t = i as f64 / (n - 1) as f64;
                    Momentum::One(start + t * (end - start))
                })
                .collect()
        }
        (LatticeDim::Two, GridSpec::Grid2D { n1, n2 }) => {
            if n1 == 0 || n2 == 0 {
                return Err(Error::Config("2D grid needs n1, n2 >= 1".into()));
            }
            let geo = geometry();
            let mut v = Vec::with_capacity(n1 * n2);
            for i in 0..n1 {
                for j in 0..n2 {
                    let (f1, f2) = (i as f64 / n1 as f64, j as f64 / n2 as f64);
                    v.push(Momentum::Two(Vec2::new(
                        f1 * geo.b[0].x + f2 * geo.b[1].x,
                        f1 * geo.b[0].y + f2 * geo.b[1].y,
                    )));
                }
            }
            v
        }
        _ => {
            return Err(Error::Config(
                "grid specification does not match the lattice dimensionality".into(),
            ))
        }
    };
    band_sweep(params, momenta.into_iter())
}

/// Band structure along the 2D high-symmetry path preset, with tracking.
pub fn band_path(params: &LatticeParams, per_segment: usize) -> Result<Vec<(PathSample, BandPoint)>> {
    if params.dim != LatticeDim::Two {
        return Err(Error::Config("high-symmetry paths are defined for the honeycomb lattice".into()));
    }
    let samples = path_preset(per_segment)?;
    let points = band_sweep(params, samples.iter().map(|s| Momentum::Two(s.beta)))?;
    Ok(samples.into_iter().zip(points).collect())
}

fn band_sweep(
    params: &LatticeParams,
    momenta: impl Iterator<Item = Momentum>,
) -> Result<Vec<BandPoint>> {
    let abar = alpha_bar(params);
    let mut prev: Option<C64> = None;
    let mut out = Vec::new();
    for m in momenta {
        let h = match h_vector(params, m, abar) {
            Ok(h) => h,
            // A grid node exactly on a light line is an isolated singular
            // momentum, not a failure of the sweep.
            Err(Error::Resonance(_)) => continue,
            Err(e) => return Err(e),
        };
        let lambda = tracked_lambda(&h, prev);
        prev = Some(lambda);
        out.push(BandPoint::assemble(m, h, lambda));
    }
    Ok(out)
}

// ============================================================================
// Tests
// ============================================================================
