//! Jacobi theta functions θ2 and θ3 of complex argument and real nome.
//!
//!   θ2(z, t) = Σ_{n ∈ ℤ} t^{(n+1/2)^2} e^{(2n+1) i z},
//!   θ3(z, t) = Σ_{n ∈ ℤ} t^{n^2}       e^{2 n i z}.
//!
//! The exponentially convergent theta-kernel representation of the 2D
//! lattice sums evaluates these with nomes of the form t = e^{-c} where c
//! spans many orders of magnitude; the [`Nome`] type carries c directly so
//! that t^{n^2} = e^{-c n^2} is formed in log space without underflow, and
//! so that tiny nomes (t below f64::MIN_POSITIVE) remain usable.
//!
//! Terms are paired (+n, -n); summation stops once both members of a pair
//! fall below 1e-16 of the running partial-sum magnitude on the decaying
//! side of the term profile (the profile can grow before it decays when
//! Im z > 0), with at least 3 pairs evaluated and a hard cap of 1e6 terms.

use crate::{C64, Error, Result};

/// Real nome t ∈ [0, 1), either as a plain value or as t = e^{-c}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nome {
    /// Direct value t, 0 <= t < 1.
    Value(f64),
    /// t = e^{-c} with c > 0; exact for extremely small nomes.
    ExpNeg(f64),
}

impl Nome {
    /// ln t (negative); `None` encodes t = 0 (all powers vanish).
    fn log(self) -> Result<Option<f64>> {
        match self {
            Nome::Value(t) => {
                if !(0.0..1.0).contains(&t) {
                    return Err(Error::Domain(format!("nome must satisfy 0 <= t < 1, got {t}")));
                }
                if t == 0.0 {
                    Ok(None)
                } else {
                    Ok(Some(t.ln()))
                }
            }
            Nome::ExpNeg(c) => {
                if !(c > 0.0) {
                    return Err(Error::Domain(format!("nome exponent must be positive, got {c}")));
                }
                Ok(Some(-c))
            }
        }
    }
}

/// exp of a complex number given as (real exponent, phase angle source),
/// guarding the f64 range.
fn exp_checked(re: f64, im: f64) -> Result<C64> {
    if re > 700.0 {
        return Err(Error::Overflow(format!(
            "theta-series term magnitude e^{re:.1} exceeds f64 range"
        )));
    }
    Ok(C64::new(re, im).exp())
}

/// Shared pair-summation driver.
///
/// For θ3 the pair n has magnitude exponents n² ln t ∓ 2 n Im z and phases
/// ±2 n Re z; for θ2 the pair (n, -n-1) has exponents (n+1/2)² ln t ∓ (2n+1) Im z
/// and phases ±(2n+1) Re z. `half` selects θ2 indexing. `include_constant`
/// controls whether θ3's n = 0 term (= 1) is added, so the same loop serves
/// the θ3 - 1 variant used for cancellation-free kernel combinations.
fn theta_sum(z: C64, nome: Nome, half: bool, include_constant: bool) -> Result<C64> {
    let ln_t = match nome.log()? {
        None => {
            // t = 0: θ3 = 1 (or 0 for the -1 variant), θ2 = 0.
            let v = if !half && include_constant { 1.0 } else { 0.0 };
            return Ok(C64::new(v, 0.0));
        }
        Some(l) => l,
    };
    let mut sum = if !half && include_constant { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
    let mut peak: f64 = sum.norm();
    let mut prev_mag = f64::INFINITY;
    for n in 0..1_000_000u64 {
        // θ3 starts its pairs at n = 1 (n = 0 is the constant term).
        let m = if half { n as f64 + 0.5 } else { (n + 1) as f64 };
        let freq = 2.0 * m; // 2n (θ3) or 2n+1 (θ2)
        let base = m * m * ln_t;
        let plus = exp_checked(base - freq * z.im, freq * z.re)?;
        let minus = exp_checked(base + freq * z.im, -freq * z.re)?;
        sum += plus + minus;
        let mag = plus.norm().max(minus.norm());
        peak = peak.max(mag);
        let reference = sum.norm().max(1e-3 * peak);
        let pairs_done = n + 1;
        if pairs_done >= 3 && mag <= prev_mag && mag < 1e-16 * reference.max(f64::MIN_POSITIVE) {
            return Ok(sum);
        }
        prev_mag = mag;
    }
    Err(Error::NonConvergence(format!(
        "theta series did not converge at z = {z} (non-decaying terms or nome too close to 1)"
    )))
}

/// θ2(z, t).
pub fn jacobi_theta2(z: C64, nome: Nome) -> Result<C64> {
    theta_sum(z, nome, true, false)
}

/// θ3(z, t).
pub fn jacobi_theta3(z: C64, nome: Nome) -> Result<C64> {
    theta_sum(z, nome, false, true)
}

/// θ3(z, t) - 1, summed without the constant term so that combinations that
/// cancel the 1 retain full relative precision.
pub fn jacobi_theta3_m1(z: C64, nome: Nome) -> Result<C64> {
    theta_sum(z, nome, false, false)
}

// ============================================================================
// Tests
// ============================================================================
