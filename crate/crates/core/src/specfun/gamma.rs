//! Log-gamma for complex arguments in the right half plane.
//!
//! Lanczos approximation with g = 7 and 9 coefficients:
//!
//!   Γ(z) = √(2π) (t)^{z+1/2} e^{-t} A_g(z),  t = z + g + 1/2  (z shifted by 1),
//!
//! accurate to ~1e-13 relative over Re z > 0, which is the only region the
//! lattice sums need: the closed-form 1D sum evaluates ln Γ(1 + α ± β) with
//! 1 + Re α ± β > 0 guaranteed by the argument checks.

use crate::{C64, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Principal-branch ln Γ(z) for Re z > 0.
pub fn log_gamma(z: C64) -> Result<C64> {
    if z.re <= 0.0 {
        return Err(Error::Domain(format!(
            "log_gamma requires Re z > 0, got z = {z}"
        )));
    }
    let zm1 = z - 1.0;
    let mut acc = C64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    // A_g(z) stays in the right half plane for Re z > 0, so the principal
    // logarithm is continuous here.
    Ok(0.5 * (2.0 * std::f64::consts::PI).ln() + (zm1 + 0.5) * t.ln() - t + acc.ln())
}

// ============================================================================
// Tests
// ============================================================================
