//! Ewald split of the radiating far field α e^{2πiαx}/x of the 2D sums.
//!
//! The far field is divided at a splitting width η through
//!
//!   e^{2πiαx}/x = (2/√π) ∫₀^∞ du/u² e^{π²α²u² - x²/u²},
//!
//! giving a real-space part (u < η, erfc-screened, summed over Λ) and, after
//! Poisson resummation of the u > η tail (unit-cell area √3/2), a
//! reciprocal-space part over Λ*:
//!
//!   S₃ʳ = (α/2) Σ_R e^{-2πiβ·R}/x [e^{2πiαx} erfc(x/η + iπαη) + (α → -α)],
//!   S₃ᵐ = (2α/√3) Σ_G erfc(πη s)/s · e^{±2πiδ·(β+G)},   s² = |β+G|² - α²,
//!
//! with x = |R ± δ| (or |R|, R ≠ 0, for the on-lattice sum, which also
//! gains the two R = 0 compensation terms -2α e^{(παη)²}/(√π η) and
//! -2iπα² erfc(-iπαη)).
//!
//! Each real-space bracket is assembled in the overflow-stable Faddeeva
//! form e^{(παη)² - (x/η)²} [w(-παη + ix/η) + w(παη + ix/η)], which keeps
//! the huge common factor in a single exponential. The branch of s follows
//! the outgoing-wave prescription: principal square root for decaying
//! continuations (Im α > 0), and s = -i√(α² - p²) for propagating orders
//! p < Re α otherwise, so that radiated orders carry positive imaginary
//! parts. A test-only switch flips the branch to demonstrate that the
//! opposite choice breaks the oracle agreement.
//!
//! Both sums walk hexagonal shells outward and stop once two consecutive
//! shells fall below the tail threshold; the returned [`EwaldSum`] carries
//! an a-posteriori geometric tail bound and the index of the outermost
//! evaluated shell.

use super::geometry::{geometry, hex_rings, Vec2, MAX_HEX_RING};
use super::{Offset2D, Sum2DArgs};
use crate::specfun::{erfc_complex, faddeeva_w};
use crate::{C64, Error, Result};
use std::f64::consts::PI;

/// Result of one Ewald component sum.
#[derive(Debug, Clone, Copy)]
pub struct EwaldSum {
    /// Value of the component at the literal η of the arguments.
    pub value: C64,
    /// A-posteriori bound on the truncated tail (geometric extrapolation of
    /// the last two shell contributions).
    pub tail_bound: f64,
    /// Index of the outermost hexagonal shell evaluated.
    pub shells_used: usize,
}

const ZERO_SUM: EwaldSum = EwaldSum { value: C64::new(0.0, 0.0), tail_bound: 0.0, shells_used: 0 };

// ============================================================================
// Per-term building blocks
// ============================================================================

/// One real-space site: (α/2) e^{-2πiβ·R} e^E [w(ζ₋) + w(ζ₊)] / x with
/// x = |R + off|, E = (παη)² - (x/η)², ζ± = ±παη + ix/η.
pub(crate) fn realspace_site_term(
    alpha: C64,
    eta: f64,
    beta: Vec2,
    site: Vec2,
    off: Vec2,
) -> Result<C64> {
    let x = (site + off).norm();
    let pae = PI * alpha * eta;
    let xi = x / eta;
    let e = pae * pae - xi * xi;
    if e.re > 700.0 {
        return Err(Error::Overflow(format!(
            "real-space Ewald term of size e^{:.0} exceeds f64 range; reduce eta or use wide \
             precision",
            e.re
        )));
    }
    let w_minus = faddeeva_w(C64::new(-pae.re, xi - pae.im))?;
    let w_plus = faddeeva_w(C64::new(pae.re, xi + pae.im))?;
    let phase = C64::new(0.0, -2.0 * PI * beta.dot(site)).exp();
    Ok(0.5 * alpha * phase * e.exp() * (w_minus + w_plus) / x)
}

/// Branch square root s of p² - α² with the outgoing-wave prescription.
///
/// `flip` negates the branch; it exists only so tests can demonstrate that
/// the opposite (incoming) choice is wrong.
pub(crate) fn branch_sqrt(alpha: C64, p: f64, flip: bool) -> Result<C64> {
    let z = C64::new(p * p, 0.0) - alpha * alpha;
    let near_light_line = if alpha.im == 0.0 {
        (p - alpha.re).abs() < 1e-9
    } else {
        z.norm() < 1e-9
    };
    if near_light_line {
        return Err(Error::Resonance(format!(
            "reciprocal vector with |beta + G| = {p:.12} crosses the light line at alpha = {alpha}"
        )));
    }
    let principal = z.sqrt();
    let s = if branch_negates(alpha, p) { -principal } else { principal };
    Ok(if flip { -s } else { s })
}

/// Whether the outgoing-wave prescription negates the principal root of
/// p² - α² at |β + G| = p.
pub(crate) fn branch_negates(alpha: C64, p: f64) -> bool {
    if alpha.im > 0.0 {
        false
    } else {
        p < alpha.re
    }
}

/// One reciprocal-space term: (2α/√3) erfc(πη s)/s · e^{±2πiδ·(β+G)}.
pub(crate) fn reciprocal_site_term(
    alpha: C64,
    eta: f64,
    beta: Vec2,
    g_vec: Vec2,
    offset: Offset2D,
    flip_branch: bool,
) -> Result<C64> {
    let p_vec = beta + g_vec;
    let s = branch_sqrt(alpha, p_vec.norm(), flip_branch)?;
    let screened = erfc_complex(PI * eta * s)?;
    let phase_arg = 2.0 * PI * offset.phase_sign() * geometry().delta_vec.dot(p_vec);
    let phase = C64::new(0.0, phase_arg).exp();
    Ok(2.0 * alpha / 3.0f64.sqrt() * screened / s * phase)
}

/// The two R = 0 compensation terms of the on-lattice reciprocal sum:
/// -2α e^{(παη)²}/(√π η) - 2iπα² erfc(-iπαη).
pub(crate) fn self_terms(alpha: C64, eta: f64) -> Result<C64> {
    let pae = PI * alpha * eta;
    let x = pae * pae;
    if x.re > 700.0 {
        return Err(Error::Overflow(format!(
            "Ewald compensation term of size e^{:.0} exceeds f64 range; reduce eta or use wide \
             precision",
            x.re
        )));
    }
    let gaussian = -2.0 * alpha / (PI.sqrt() * eta) * x.exp();
    let screened = -C64::new(0.0, 2.0 * PI) * alpha * alpha * erfc_complex(C64::new(0.0, -1.0) * pae)?;
    Ok(gaussian + screened)
}

// ============================================================================
// Shell-ordered drivers
// ============================================================================

/// Relative shell threshold: stricter than the 1e-12 acceptance bound by
/// the (clamped) cancellation factor e^{Re (παη)²}, so that the assembled,
/// η-independent value keeps the accuracy the split manufactured away.
fn shell_threshold(alpha: C64, eta: f64) -> f64 {
    let pae = PI * alpha * eta;
    let cancel = (pae * pae).re.clamp(0.0, 600.0);
    (1e-13 * (-cancel).exp()).max(3e-16)
}

/// Geometric a-posteriori tail estimate from the last two shell magnitudes.
pub(crate) fn tail_estimate(prev: f64, last: f64) -> f64 {
    if last == 0.0 {
        return 0.0;
    }
    if !(prev > last) {
        return f64::INFINITY;
    }
    let rho = last / prev;
    last * rho / (1.0 - rho)
}

/// Shared shell walk over ring contributions produced by `ring_term`.
fn shell_sum<F>(cap: usize, threshold: f64, what: &str, mut ring_term: F) -> Result<EwaldSum>
where
    F: FnMut(usize) -> Result<C64>,
{
    let cap = cap.min(MAX_HEX_RING);
    let mut acc = C64::new(0.0, 0.0);
    let mut prev_mag = f64::INFINITY;
    let mut last_mag = f64::INFINITY;
    for j in 0..=cap {
        let contrib = ring_term(j)?;
        acc += contrib;
        prev_mag = last_mag;
        last_mag = contrib.norm();
        let reference = acc.norm().max(f64::MIN_POSITIVE);
        if j >= 3 && last_mag < threshold * reference && prev_mag < threshold * reference {
            return Ok(EwaldSum {
                value: acc,
                tail_bound: tail_estimate(prev_mag, last_mag).min(last_mag),
                shells_used: j,
            });
        }
    }
    let tail_bound = tail_estimate(prev_mag, last_mag);
    let reference = acc.norm().max(f64::MIN_POSITIVE);
    if tail_bound > 1e-12 * reference {
        return Err(Error::NonConvergence(format!(
            "{what} Ewald sum: tail bound {tail_bound:.3e} exceeds 1e-12 of the running magnitude \
             {reference:.3e} after {cap} shells"
        )));
    }
    Ok(EwaldSum { value: acc, tail_bound, shells_used: cap })
}

/// Real-space Ewald sum at the literal η of `args`.
pub(crate) fn realspace(args: &Sum2DArgs, offset: Offset2D) -> Result<EwaldSum> {
    if args.alpha == C64::new(0.0, 0.0) {
        return Ok(ZERO_SUM);
    }
    let g = geometry();
    let off = offset.vector();
    let rings = hex_rings();
    let skip_origin = offset == Offset2D::None;
    shell_sum(
        args.realspace_shells,
        shell_threshold(args.alpha, args.eta),
        "real-space",
        |j| {
            let mut contrib = C64::new(0.0, 0.0);
            for &(j1, j2) in &rings[j].sites {
                if skip_origin && j1 == 0 && j2 == 0 {
                    continue;
                }
                let site = (j1 as f64) * g.a[0] + (j2 as f64) * g.a[1];
                contrib += realspace_site_term(args.alpha, args.eta, args.beta, site, off)?;
            }
            Ok(contrib)
        },
    )
}

/// Reciprocal-space Ewald sum at the literal η of `args`, including the
/// R = 0 compensation terms for the on-lattice offset.
pub(crate) fn reciprocal(args: &Sum2DArgs, offset: Offset2D, flip_branch: bool) -> Result<EwaldSum> {
    if args.alpha == C64::new(0.0, 0.0) {
        return Ok(ZERO_SUM);
    }
    let g = geometry();
    let rings = hex_rings();
    let mut sum = shell_sum(
        args.reciprocal_shells,
        shell_threshold(args.alpha, args.eta),
        "reciprocal-space",
        |j| {
            let mut contrib = C64::new(0.0, 0.0);
            for &(m, n) in &rings[j].sites {
                let g_vec = (m as f64) * g.b[0] + (n as f64) * g.b[1];
                contrib +=
                    reciprocal_site_term(args.alpha, args.eta, args.beta, g_vec, offset, flip_branch)?;
            }
            Ok(contrib)
        },
    )?;
    if offset == Offset2D::None {
        sum.value += self_terms(args.alpha, args.eta)?;
    }
    Ok(sum)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    /// The R = 0 site term against a direct hand evaluation
    /// (α/2)|δ|⁻¹ [e^{2πiα|δ|} erfc(|δ|/η + iπαη) + (α → -α)].
    #[test]
    fn origin_site_term_hand_evaluation() {
        let g = geometry();
        for &alpha in &[C64::new(2.4, 0.0), C64::new(1.3, -0.2)] {
            for &eta in &[0.5, 1.0] {
                let beta = Vec2::new(0.2, 0.1);
                let d = g.delta_vec.norm();
                let got =
                    realspace_site_term(alpha, eta, beta, Vec2::new(0.0, 0.0), g.delta_vec).unwrap();
                let pae = C64::new(0.0, PI) * alpha * eta; // iπαη
                let osc = C64::new(0.0, 2.0 * PI) * alpha * d;
                let expect = 0.5 * alpha / d
                    * (osc.exp() * erfc_complex(C64::new(d / eta, 0.0) + pae).unwrap()
                        + (-osc).exp() * erfc_complex(C64::new(d / eta, 0.0) - pae).unwrap());
                let err = (got - expect).norm() / expect.norm();
                assert!(err < 1e-12, "site term at alpha={alpha}, eta={eta}: rel {err:.2e}");
            }
        }
    }

    /// Capping at 6 shells and at 8 shells changes the real-space value by
    /// less than 1e-12 relative at η = 1: the shell walk has converged.
    #[test]
    fn realspace_shell_convergence_six_vs_eight() {
        let mut args = Sum2DArgs::new(C64::new(2.4, 0.0), Vec2::new(0.2, 0.1)).unwrap();
        args.realspace_shells = 6;
        let v6 = realspace(&args, Offset2D::PlusDelta).unwrap();
        args.realspace_shells = 8;
        let v8 = realspace(&args, Offset2D::PlusDelta).unwrap();
        let rel = (v6.value - v8.value).norm() / v8.value.norm();
        assert!(rel < 1e-12, "shells 6 vs 8: rel {rel:.2e}");
        assert!(v6.tail_bound <= 1e-12 * v6.value.norm());
    }

    /// The reciprocal sum at η = 1 converges within 8 shells.
    #[test]
    fn reciprocal_shell_convergence() {
        let args = Sum2DArgs::new(C64::new(2.4, 0.0), Vec2::new(0.2, 0.1)).unwrap();
        let full = reciprocal(&args, Offset2D::PlusDelta, false).unwrap();
        assert!(full.shells_used <= 8, "needed {} shells", full.shells_used);
        let mut capped_args = args.clone();
        capped_args.reciprocal_shells = 8;
        let capped = reciprocal(&capped_args, Offset2D::PlusDelta, false).unwrap();
        assert!((full.value - capped.value).norm() <= 1e-12 * full.value.norm());
    }

    /// Exact bijection R → -R: the real-space and reciprocal components obey
    /// component(β, +δ) = component(-β, -δ).
    #[test]
    fn momentum_inversion_swaps_offset() {
        let alpha = C64::new(2.4, 0.0);
        let beta = Vec2::new(0.2, 0.1);
        let plus = Sum2DArgs::new(alpha, beta).unwrap();
        let minus = Sum2DArgs::new(alpha, -beta).unwrap();
        let r1 = realspace(&plus, Offset2D::PlusDelta).unwrap().value;
        let r2 = realspace(&minus, Offset2D::MinusDelta).unwrap().value;
        assert!((r1 - r2).norm() < 1e-12 * r1.norm());
        let q1 = reciprocal(&plus, Offset2D::PlusDelta, false).unwrap().value;
        let q2 = reciprocal(&minus, Offset2D::MinusDelta, false).unwrap().value;
        assert!((q1 - q2).norm() < 1e-12 * q1.norm());
    }

    /// Branch prescription of the reciprocal square root.
    #[test]
    fn branch_sqrt_prescription() {
        // Real α: evanescent orders are positive real...
        let a = C64::new(2.4, 0.0);
        let s = branch_sqrt(a, 3.0, false).unwrap();
        assert!((s - C64::new((9.0f64 - 5.76).sqrt(), 0.0)).norm() < 1e-14);
        // ...and propagating orders sit on the negative imaginary axis.
        let s = branch_sqrt(a, 1.0, false).unwrap();
        assert!((s - C64::new(0.0, -(5.76f64 - 1.0).sqrt())).norm() < 1e-14);
        // Damped continuation Im α > 0: principal root, Re s ≥ 0.
        let s = branch_sqrt(C64::new(2.4, 0.5), 1.0, false).unwrap();
        assert!(s.re >= 0.0);
        // Gain-side continuation Im α < 0 below the light line: negated root.
        let s = branch_sqrt(C64::new(2.4, -0.5), 1.0, false).unwrap();
        assert!(s.re <= 0.0);
        // The flip switch negates whatever the prescription chose.
        let s1 = branch_sqrt(a, 1.0, false).unwrap();
        let s2 = branch_sqrt(a, 1.0, true).unwrap();
        assert_eq!(s1, -s2);
        // All branches square back to p² - α².
        for &(alpha, p) in &[(C64::new(2.4, 0.0), 1.0), (C64::new(2.4, -0.5), 1.0)] {
            let s = branch_sqrt(alpha, p, false).unwrap();
            assert!((s * s - (C64::new(p * p, 0.0) - alpha * alpha)).norm() < 1e-12);
        }
    }

    /// Compensation terms against the defining integral
    /// -2α/√π ∫_η^∞ du/u² e^{π²α²u²}, evaluated for a damped α where the
    /// integral converges absolutely.
    #[test]
    fn self_terms_match_defining_integral() {
        let alpha = C64::new(0.8, 0.9); // Re α² < 0: integrand decays
        let eta = 0.9;
        let got = self_terms(alpha, eta).unwrap();
        let f = |u: f64| -> Result<C64> { Ok((PI * PI * alpha * alpha * u * u).exp() / (u * u)) };
        let integral = integrate(f, eta, 8.0, 1e-14, 1e-13, 2000).unwrap().value;
        let expect = -2.0 * alpha / PI.sqrt() * integral;
        let err = (got - expect).norm() / expect.norm();
        assert!(err < 1e-11, "self terms {got} vs integral {expect} (rel {err:.2e})");
    }

    /// A reciprocal vector that lands on the light line |β+G| = α is a
    /// resonance error, and a slightly detuned one is not.
    #[test]
    fn light_line_resonance() {
        let alpha = C64::new(2.4, 0.0);
        // β + 2(b₁+b₂) = (2.4, 0) exactly, with β reduced.
        let beta = Vec2::new(2.4 - 4.0 / 3.0f64.sqrt(), 0.0);
        let args = Sum2DArgs::new(alpha, beta).unwrap();
        match reciprocal(&args, Offset2D::PlusDelta, false) {
            Err(Error::Resonance(_)) => {}
            other => panic!("expected resonance, got {other:?}"),
        }
        let detuned = Sum2DArgs::new(alpha, beta + Vec2::new(1e-4, 0.0)).unwrap();
        assert!(reciprocal(&detuned, Offset2D::PlusDelta, false).is_ok());
    }

    /// Shell contributions decay by more than a factor 10 per shell from
    /// shell 4 onward, for both components.
    #[test]
    fn shell_decay_is_exponential() {
        let g = geometry();
        let args = Sum2DArgs::new(C64::new(2.4, 0.0), Vec2::new(0.2, 0.1)).unwrap();
        let rings = hex_rings();
        let mut mags_real = Vec::new();
        let mut mags_reci = Vec::new();
        for ring in rings.iter().take(9) {
            let mut cr = C64::new(0.0, 0.0);
            let mut cq = C64::new(0.0, 0.0);
            for &(j1, j2) in &ring.sites {
                let site = (j1 as f64) * g.a[0] + (j2 as f64) * g.a[1];
                cr += realspace_site_term(args.alpha, args.eta, args.beta, site, g.delta_vec)
                    .unwrap();
                let g_vec = (j1 as f64) * g.b[0] + (j2 as f64) * g.b[1];
                cq += reciprocal_site_term(
                    args.alpha,
                    args.eta,
                    args.beta,
                    g_vec,
                    Offset2D::PlusDelta,
                    false,
                )
                .unwrap();
            }
            mags_real.push(cr.norm());
            mags_reci.push(cq.norm());
        }
        for j in 4..8 {
            assert!(
                mags_real[j + 1] < 0.1 * mags_real[j],
                "real-space shell {j} ratio {}",
                mags_real[j + 1] / mags_real[j]
            );
            assert!(
                mags_reci[j + 1] < 0.1 * mags_reci[j],
                "reciprocal shell {j} ratio {}",
                mags_reci[j + 1] / mags_reci[j]
            );
        }
    }
}
