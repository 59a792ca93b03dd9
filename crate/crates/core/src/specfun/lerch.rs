//! Lerch transcendent Φ(z, s, a) = Σ_{n>=0} z^n (n + a)^{-s} and relatives.
//!
//! Three evaluation regimes serve the closed-form 1D lattice sums:
//!
//! * |z| <= 0.9: the defining series, term-recursive in z^n.
//! * |z| near or on the unit circle (z ≠ 1): Levin-u acceleration of the
//!   (possibly only Abel-summable) series — this covers both Φ itself and
//!   the s-derivative at s = 0, whose terms -z^n ln(n+a) grow.
//! * |z| > 1, z off the ray [1, ∞), s = 1, real a > 0: the analytic
//!   continuation by the Euler integral
//!     Φ(z, 1, a) = ∫_0^1 t^{a-1} / (1 - z t) dt,
//!   split into a closed-form head Σ_k z^k ε^{a+k}/(a+k) on [0, ε] with
//!   ε = min(1/2, 1/(2|z|)) and adaptive quadrature on [ε, 1]. This arm is
//!   what evaluates the propagating part of the sums at complex energies,
//!   where |e^{2πi(α±β)}| > 1.
//!
//! The ray [1, ∞) is a genuine branch cut of the continuation (the physical
//! light line); arguments within 1e-9 of it are rejected as resonant.

use super::levin::levin_u_sum;
use crate::quadrature::integrate;
use crate::{C64, Error, Result};

/// Number of raw terms handed to the Levin accelerator.
const LEVIN_TERMS: usize = 64;

fn direct_series(z: C64, s: C64, a: C64, cap: usize) -> Result<C64> {
    let mut sum = C64::new(0.0, 0.0);
    let mut zn = C64::new(1.0, 0.0);
    for n in 0..cap {
        let term = zn * (-s * (a + n as f64).ln()).exp();
        sum += term;
        if n >= 4 && term.norm() < 1e-17 * sum.norm().max(1e-300) {
            return Ok(sum);
        }
        zn *= z;
    }
    Err(Error::NonConvergence(format!(
        "Lerch series did not converge within {cap} terms at z = {z}"
    )))
}

fn levin_series(z: C64, s: C64, a: C64) -> Result<C64> {
    let mut terms = Vec::with_capacity(LEVIN_TERMS);
    let mut zn = C64::new(1.0, 0.0);
    for n in 0..LEVIN_TERMS {
        terms.push(zn * (-s * (a + n as f64).ln()).exp());
        zn *= z;
    }
    levin_u_sum(&terms, 1e-11)
}

/// Lerch transcendent Φ(z, s, a) for |z| <= 1, z ≠ 1, Re a > 0.
///
/// On the unit circle the value returned is the Abel sum, which coincides
/// with the analytic continuation in z.
pub fn lerch_phi(z: C64, s: C64, a: C64) -> Result<C64> {
    if a.re <= 0.0 {
        return Err(Error::Domain(format!("lerch_phi requires Re a > 0, got a = {a}")));
    }
    let r = z.norm();
    if r > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("lerch_phi requires |z| <= 1, got |z| = {r}")));
    }
    if (z - 1.0).norm() < 1e-9 {
        return Err(Error::Domain("lerch_phi is singular at z = 1".into()));
    }
    if r <= 0.9 {
        return direct_series(z, s, a, 2_000_000);
    }
    match levin_series(z, s, a) {
        Ok(v) => Ok(v),
        Err(e) => {
            if r < 1.0 {
                direct_series(z, s, a, 2_000_000)
            } else {
                Err(e)
            }
        }
    }
}

/// ∂Φ/∂s at s = 0 on the unit circle: -Σ_{n>=0} z^n ln(n + a).
///
/// The terms grow logarithmically, so the series is Abel-summable only;
/// Levin-u extracts the limit. Requires |z| = 1 (within 1e-9), z ≠ 1, and
/// Re a > 0.
pub fn lerch_phi_ds_at0(z: C64, a: C64) -> Result<C64> {
    if a.re <= 0.0 {
        return Err(Error::Domain(format!(
            "lerch_phi_ds_at0 requires Re a > 0, got a = {a}"
        )));
    }
    if (z.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "lerch_phi_ds_at0 is defined on the unit circle; got |z| = {}",
            z.norm()
        )));
    }
    if (z - 1.0).norm() < 1e-9 {
        return Err(Error::Domain("lerch_phi_ds_at0 is singular at z = 1".into()));
    }
    let mut terms = Vec::with_capacity(LEVIN_TERMS);
    let mut zn = C64::new(1.0, 0.0);
    for n in 0..LEVIN_TERMS {
        terms.push(-zn * (a + n as f64).ln());
        zn *= z;
    }
    levin_u_sum(&terms, 1e-11)
}

/// Φ(z, 1, a) for real a > 0 and z anywhere off the ray [1, ∞).
///
/// Inside the closed unit disc this agrees with [`lerch_phi`]; outside it
/// evaluates the Euler-integral continuation. Arguments within 1e-9 of the
/// cut [1, ∞) are rejected as [`Error::Resonance`] — they correspond to
/// momenta exactly on a light line.
pub(crate) fn lerch_phi_s1(z: C64, a: f64) -> Result<C64> {
    if a <= 0.0 {
        return Err(Error::Domain(format!("lerch_phi_s1 requires a > 0, got {a}")));
    }
    if z.re >= 1.0 - 1e-9 && z.im.abs() < 1e-9 * z.norm().max(1.0) {
        return Err(Error::Resonance(format!(
            "Lerch continuation argument z = {z} lies on the light-line cut [1, oo)"
        )));
    }
    let one = C64::new(1.0, 0.0);
    let r = z.norm();
    if r <= 0.9 {
        return direct_series(z, one, C64::new(a, 0.0), 2_000_000);
    }
    if r <= 1.0 + 1e-12 {
        return match levin_series(z, one, C64::new(a, 0.0)) {
            Ok(v) => Ok(v),
            Err(e) => {
                if r < 1.0 {
                    direct_series(z, one, C64::new(a, 0.0), 2_000_000)
                } else {
                    Err(e)
                }
            }
        };
    }

    // Euler integral: head on [0, eps] in closed form, tail by quadrature.
    let eps = (0.5f64).min(0.5 / r);
    let mut head = C64::new(0.0, 0.0);
    let mut zk = C64::new(1.0, 0.0);
    let mut epow = eps.powf(a);
    for k in 0..400 {
        let term = zk * epow / (a + k as f64);
        head += term;
        if k >= 2 && term.norm() < 1e-17 * head.norm().max(1e-300) {
            break;
        }
        zk *= z;
        epow *= eps;
    }
    // Tail on [eps, 1]; split at the real part of the pole position 1/z when
    // it falls inside, to help the adaptive subdivision.
    let pole_re = (z.inv()).re;
    let mut breaks = vec![eps, 1.0];
    if pole_re > eps + 1e-12 && pole_re < 1.0 - 1e-12 {
        breaks.insert(1, pole_re);
    }
    let mut tail = C64::new(0.0, 0.0);
    for seg in breaks.windows(2) {
        let q = integrate(
            |t| Ok(t.powf(a - 1.0) / (1.0 - z * t)),
            seg[0],
            seg[1],
            1e-14,
            1e-13,
            60_000,
        )?;
        tail += q.value;
    }
    Ok(head + tail)
}

// ============================================================================
// Tests
// ============================================================================
