//! Closed-form lattice sums of the 1D dimerised chain (SSH geometry).
//!
//! A chain with two sites per cell at separation δ ∈ (0, 1) couples through
//! the scalar propagator G(r; 2πα). Bloch-transforming at quasimomentum
//! β ∈ [-1/2, 1/2) produces three structure sums:
//!
//!   S±(α, β, δ) = Σ_{n ∈ ℤ} G(|n ± δ|; 2πα) e^{-2πiβn},
//!   S0(α, β)    = Σ_{n ≠ 0} G(|n|;     2πα) e^{-2πiβn}.
//!
//! Rather than summing the conditionally convergent series, this module
//! evaluates exact closed forms obtained by splitting G into its 1/r²,
//! E1-bracket and outgoing-wave parts and resumming each by Poisson /
//! Lerch-transcendent techniques:
//!
//!   S1(δ) = e^{2πiβδ} [ 1/2 + cot²(πδ)/2 - |β| - iβ cot(πδ) ],
//!   S2(δ) = α e^{2πiβδ} ln(α + |β|)
//!         - α e^{2πiβδ} [ e^{2πiδ}  Φ_s(e^{2πiδ},  0, 1+α+β)
//!                       + e^{-2πiδ} Φ_s(e^{-2πiδ}, 0, 1+α-β) ],
//!   S3(δ) = α e^{2πiα|δ|}/|δ|
//!         + α [ e^{2πi(α(1+δ)-β)} Φ(e^{2πi(α-β)}, 1, 1+δ)
//!             + e^{2πi(α(1-δ)+β)} Φ(e^{2πi(α+β)}, 1, 1-δ) ],
//!
//! with Φ the Lerch transcendent and Φ_s its s-derivative at s = 0, and
//! S± = S1 + S2 + S3 evaluated at ±δ. The no-offset sum has its own form
//!
//!   S0 = B2(|β|) - 2α² + 2α² Log α + α Log(2π(α+|β|))
//!      - α ln Γ(1+α+β) - α ln Γ(1+α-β)
//!      - α Log(1 - e^{2πi(α+β)}) - α Log(1 - e^{2πi(α-β)}),
//!
//! where B2(x) = x² - x + 1/6. The factors 1 - e^{2πi(α±β)} vanish on the
//! light lines α ± β ∈ ℤ, where the physical sum diverges (real α) or
//! crosses a branch cut (complex α); both cases surface as
//! [`Error::Resonance`].
//!
//! Everything is validated against the damped direct sum
//! Σ G e^{-2πiβn} e^{-ε|n|} extrapolated to ε → 0 ([`oracle_direct_1d`]).

use crate::greens::{green_scalar, GreenArgs};
use crate::specfun::{lerch_phi_ds_at0, lerch_phi_s1, log_gamma};
use crate::{C64, Error, Result};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

// ============================================================================
// Arguments
// ============================================================================

/// Arguments of the dimerised-chain sums.
#[derive(Debug, Clone, Copy)]
pub struct Sum1DArgs {
    /// Dimensionless energy α (wavenumber k = 2πα); Re α > 0.
    pub alpha: C64,
    /// Bloch quasimomentum, stored reduced to [-1/2, 1/2).
    pub beta: f64,
    /// Intracell offset δ ∈ (0, 1), exclusive.
    pub delta: f64,
}

/// Reduce a 1D quasimomentum to the first Brillouin zone [-1/2, 1/2).
pub fn reduce_beta_1d(beta: f64) -> f64 {
    let r = (beta + 0.5).rem_euclid(1.0) - 0.5;
    // rem_euclid can return exactly 0.5 - 1 = -0.5 or land on 0.5 via rounding.
    if r >= 0.5 {
        r - 1.0
    } else {
        r
    }
}

impl Sum1DArgs {
    /// Validate and FBZ-reduce the arguments.
    pub fn new(alpha: C64, beta: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Domain(format!(
                "intracell offset must satisfy 0 < delta < 1, got {delta}"
            )));
        }
        if !(alpha.re > 0.0) {
            return Err(Error::Domain(format!("Re alpha must be positive, got alpha = {alpha}")));
        }
        if !beta.is_finite() {
            return Err(Error::Domain("beta must be finite".into()));
        }
        let beta = reduce_beta_1d(beta);
        if 1.0 + alpha.re + beta <= 0.0 || 1.0 + alpha.re - beta <= 0.0 {
            return Err(Error::Domain(format!(
                "require 1 + Re alpha ± beta > 0 (alpha = {alpha}, beta = {beta})"
            )));
        }
        Ok(Self { alpha, beta, delta })
    }

    fn validate(&self) -> Result<()> {
        Self::new(self.alpha, self.beta, self.delta).map(|_| ())
    }
}

/// Which of the two offset sums S± to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumSign {
    Plus,
    Minus,
}

// ============================================================================
// Closed-form components (signed offset)
// ============================================================================

/// e^{2πi w} for complex w.
fn cis_tau(w: C64) -> C64 {
    (C64::new(0.0, TWO_PI) * w).exp()
}

/// 1 - e^{2πi(α + sign·β)}, guarding the light line α ± β ∈ ℤ.
///
/// For real α the factor vanishes there (divergent sum); for complex α the
/// exponential becomes real and exceeds 1, putting the logarithm in S0 and
/// the Lerch continuation in S3 exactly on their branch cuts. Both are
/// rejected as resonant.
fn light_line_factor(alpha: C64, beta: f64, sign: f64) -> Result<C64> {
    let w = cis_tau(alpha + sign * beta);
    let f = 1.0 - w;
    if f.norm() < 1e-9 {
        return Err(Error::Resonance(format!(
            "momentum lies on the light line alpha {} beta in Z (alpha = {alpha}, beta = {beta})",
            if sign > 0.0 { "+" } else { "-" }
        )));
    }
    if w.im.abs() < 1e-9 * w.norm() && w.re > 1.0 {
        return Err(Error::Resonance(format!(
            "complex-energy light-line cut crossing at alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(f)
}

/// Static dipole part: S1 at signed offset d.
fn s1_signed(beta: f64, d: f64) -> C64 {
    let pd = std::f64::consts::PI * d;
    let cot = pd.cos() / pd.sin();
    let amp = C64::new(0.5 + 0.5 * cot * cot - beta.abs(), -beta * cot);
    cis_tau(C64::new(beta * d, 0.0)) * amp
}

/// E1-bracket part: S2 at signed offset d.
fn s2_signed(alpha: C64, beta: f64, d: f64) -> Result<C64> {
    let q_phase = cis_tau(C64::new(beta * d, 0.0));
    let zp = cis_tau(C64::new(d, 0.0));
    let zm = cis_tau(C64::new(-d, 0.0));
    let dp = lerch_phi_ds_at0(zp, 1.0 + alpha + beta)?;
    let dm = lerch_phi_ds_at0(zm, 1.0 + alpha - beta)?;
    let log_term = alpha * q_phase * (alpha + beta.abs()).ln();
    Ok(log_term - alpha * q_phase * (zp * dp + zm * dm))
}

/// Outgoing-wave part: S3 at signed offset d.
fn s3_signed(alpha: C64, beta: f64, d: f64) -> Result<C64> {
    let ad = d.abs();
    let n0 = alpha * cis_tau(alpha * ad) / ad;
    let zp = cis_tau(alpha - beta);
    let zm = cis_tau(alpha + beta);
    let fp = lerch_phi_s1(zp, 1.0 + d)?;
    let fm = lerch_phi_s1(zm, 1.0 - d)?;
    let php = cis_tau(alpha * (1.0 + d) - beta);
    let phm = cis_tau(alpha * (1.0 - d) + beta);
    Ok(n0 + alpha * (php * fp + phm * fm))
}

// ============================================================================
// Public operations
// ============================================================================

/// S1 component of S+ (static dipole tail).
pub fn s1_plus(args: &Sum1DArgs) -> Result<C64> {
    args.validate()?;
    Ok(s1_signed(args.beta, args.delta))
}

/// S2 component of S+ (E1-bracket part).
pub fn s2_plus(args: &Sum1DArgs) -> Result<C64> {
    args.validate()?;
    s2_signed(args.alpha, args.beta, args.delta)
}

/// S3 component of S+ (outgoing-wave part).
pub fn s3_plus(args: &Sum1DArgs) -> Result<C64> {
    args.validate()?;
    s3_signed(args.alpha, args.beta, args.delta)
}

/// Offset lattice sum S± = Σ_n G(|n ± δ|; 2πα) e^{-2πiβn}.
pub fn s_pm_1d(args: &Sum1DArgs, sign: SumSign) -> Result<C64> {
    args.validate()?;
    let d = match sign {
        SumSign::Plus => args.delta,
        SumSign::Minus => -args.delta,
    };
    Ok(s1_signed(args.beta, d) + s2_signed(args.alpha, args.beta, d)? + s3_signed(args.alpha, args.beta, d)?)
}

/// Same-sublattice sum S0 = Σ_{n ≠ 0} G(|n|; 2πα) e^{-2πiβn}.
pub fn s0_1d(alpha: C64, beta: f64) -> Result<C64> {
    if !(alpha.re > 0.0) {
        return Err(Error::Domain(format!("Re alpha must be positive, got alpha = {alpha}")));
    }
    let b = reduce_beta_1d(beta);
    let ab = b.abs();
    let b2 = ab * ab - ab + 1.0 / 6.0;
    let lp = light_line_factor(alpha, b, 1.0)?;
    let lm = light_line_factor(alpha, b, -1.0)?;
    let a2 = alpha * alpha;
    Ok(C64::new(b2, 0.0) - 2.0 * a2 + 2.0 * a2 * alpha.ln() + alpha * (TWO_PI * (alpha + ab)).ln()
        - alpha * log_gamma(1.0 + alpha + b)?
        - alpha * log_gamma(1.0 + alpha - b)?
        - alpha * lp.ln()
        - alpha * lm.ln())
}

/// Damped direct sum Σ_{|n| <= n_max} G(|n + d|; 2πα) e^{-2πiβn} e^{-ε|n|}.
///
/// `delta = None` evaluates the S0 configuration (offset 0, n = 0 skipped).
/// The raw sum converges only for ε > 0 (and Im α >= 0); callers extrapolate
/// a ladder of ε values to ε → 0 to recover the physical value. This is the
/// validation oracle — slow but with no shared machinery beyond the
/// propagator itself.
pub fn oracle_direct_1d(alpha: C64, beta: f64, delta: Option<f64>, eps: f64, n_max: usize) -> Result<C64> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("damping eps must be positive, got {eps}")));
    }
    let k = TWO_PI * alpha;
    let mut sum = C64::new(0.0, 0.0);
    for n in -(n_max as i64)..=(n_max as i64) {
        let nf = n as f64;
        let r = match delta {
            Some(d) => (nf + d).abs(),
            None => {
                if n == 0 {
                    continue;
                }
                nf.abs()
            }
        };
        let g = green_scalar(GreenArgs { r, k })?;
        let phase = (C64::new(0.0, -TWO_PI * beta * nf)).exp();
        sum += g * phase * (-eps * nf.abs()).exp();
    }
    Ok(sum)
}

// ============================================================================
// Tests
// ============================================================================
