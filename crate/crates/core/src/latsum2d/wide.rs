//! Big-float evaluation of the Ewald pair at the literal splitting width.
//!
//! The two Ewald pieces are each of size e^{Re (παη)²} while their sum is
//! O(1), so evaluating a large η in f64 destroys the result. This module
//! re-evaluates exactly the formulas of [`super::ewald`] with arbitrary-
//! precision floats sized to the cancellation,
//!
//!   bits = 96 + ⌈(Re (παη)²) / ln 2⌉,
//!
//! and rounds the collapsed sum back to f64. The working set is deliberately
//! small:
//!
//! * exp, ln, sqrt come with the big-float type; sin/cos are Taylor series
//!   after argument reduction modulo a cached high-precision 2π,
//! * the Faddeeva function uses the pole-corrected midpoint rule
//!   w(z) ≈ (2h/π) iz Σ_k e^{-t_k²}/(z² - t_k²) + 2e^{-z²}/(1 + e^{-2πiz/h})
//!   with t_k = (k + ½)h and h = π/√(bits·ln 2), whose quadrature error
//!   e^{-π²/h²} = 2^{-bits} matches the arithmetic; the correction term is
//!   skipped when it is provably below the rounding floor, and arguments in
//!   the lower half-plane go through w(z) = 2e^{-z²} - w(-z),
//! * erfc(z) = e^{-z²} w(iz) for Re z ≥ 0 and 2 - erfc(-z) otherwise.
//!
//! Exactness of the honeycomb geometry keeps the per-site transcendentals
//! cheap: |R ± δ|² = L(j₁,j₂) ∓ (j₁-j₂) + 1/3 with the integer Loeschian
//! norm L, so the screening factor e^{-x²/η²} is one constant exponential
//! raised to an integer power, and the Bloch phases e^{-2πiβ·R} are integer
//! powers of the two phases at R = a₁, a₂. For real α the real-space
//! Faddeeva bracket collapses to 2 Re w(παη + ix/η), halving the work.
//!
//! Shell convergence is judged in the collapsed scale: ring magnitudes are
//! multiplied by e^{-Re (παη)²} before comparison, so the walk stops when a
//! ring can no longer move the assembled O(1) value at 1e-15.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use dashu_float::round::mode::Zero as TowardZero;
use dashu_float::FBig;

use super::ewald::{branch_negates, branch_sqrt, tail_estimate};
use super::geometry::{hex_rings, loeschian, MAX_HEX_RING};
use super::{Offset2D, Sum2DArgs};
use crate::{C64, Error, Result};

type W = FBig<TowardZero, 2>;

/// Hard cap on the working precision; beyond this the real-space walk would
/// outgrow the shell table anyway (α = 2.4 reaches it near η ≈ 3).
const MAX_WIDE_BITS: usize = 1536;

/// Guard bits over the cancellation budget.
const GUARD_BITS: usize = 96;

// ============================================================================
// Scalar helpers
// ============================================================================

/// Lift a finite f64 to precision `bits`.
fn wf(x: f64, bits: usize) -> W {
    W::try_from(x).expect("finite input").with_precision(bits).value()
}

/// Lift an integer to precision `bits`.
fn wi(n: i64, bits: usize) -> W {
    W::from(n).with_precision(bits).value()
}

/// π at MAX_WIDE_BITS + 64 via Machin's formula, computed once.
fn pi_full() -> &'static W {
    static CACHE: OnceLock<W> = OnceLock::new();
    CACHE.get_or_init(|| {
        let bits = MAX_WIDE_BITS + 64;
        let a5 = atan_recip(5, bits);
        let a239 = atan_recip(239, bits);
        &(&wi(16, bits) * &a5) - &(&wi(4, bits) * &a239)
    })
}

/// atan(1/m) = Σ_k (-1)^k / ((2k+1) m^{2k+1}) for integer m ≥ 2.
fn atan_recip(m: i64, bits: usize) -> W {
    let m2 = wi(m * m, bits);
    let mut pow = &wi(1, bits) / &wi(m, bits);
    let mut acc = pow.clone();
    let mut k = 1i64;
    // Terms shrink by 2 log2 m bits each; run past the precision target.
    let k_max = (bits as f64 + 16.0) / (2.0 * (m as f64).log2());
    while (k as f64) <= k_max {
        pow = &pow / &m2;
        let term = &pow / &wi(2 * k + 1, bits);
        acc = if k % 2 == 1 { &acc - &term } else { &acc + &term };
        k += 1;
    }
    acc
}

// ============================================================================
// Wide complex arithmetic
// ============================================================================

#[derive(Clone, Debug)]
struct Wc {
    re: W,
    im: W,
}

impl Wc {
    fn new(re: W, im: W) -> Self {
        Wc { re, im }
    }

    fn zero() -> Self {
        Wc::new(W::ZERO, W::ZERO)
    }

    fn from_c64(z: C64, bits: usize) -> Self {
        Wc::new(wf(z.re, bits), wf(z.im, bits))
    }

    fn to_c64(&self) -> C64 {
        C64::new(self.re.to_f64().value(), self.im.to_f64().value())
    }

    fn add(&self, o: &Wc) -> Wc {
        Wc::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Wc) -> Wc {
        Wc::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn neg(&self) -> Wc {
        Wc::new(&W::ZERO - &self.re, &W::ZERO - &self.im)
    }

    fn conj(&self) -> Wc {
        Wc::new(self.re.clone(), &W::ZERO - &self.im)
    }

    fn mul(&self, o: &Wc) -> Wc {
        Wc::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    fn mul_w(&self, r: &W) -> Wc {
        Wc::new(&self.re * r, &self.im * r)
    }

    fn div_w(&self, r: &W) -> Wc {
        Wc::new(&self.re / r, &self.im / r)
    }

    fn sqr_c(&self) -> Wc {
        let cross = &self.re * &self.im;
        Wc::new(&(&self.re * &self.re) - &(&self.im * &self.im), &cross + &cross)
    }

    fn inv(&self) -> Wc {
        let d = &(&self.re * &self.re) + &(&self.im * &self.im);
        Wc::new(&self.re / &d, &(&W::ZERO - &self.im) / &d)
    }

    fn div(&self, o: &Wc) -> Wc {
        self.mul(&o.inv())
    }

    /// i·z.
    fn mul_i(&self) -> Wc {
        Wc::new(&W::ZERO - &self.im, self.re.clone())
    }
}

/// Principal square root.
fn wc_sqrt(z: &Wc) -> Wc {
    let two = wi(2, z.re.precision().max(z.im.precision()).max(64));
    if z.im == W::ZERO {
        if z.re >= W::ZERO {
            return Wc::new(z.re.sqrt(), W::ZERO);
        }
        return Wc::new(W::ZERO, (&W::ZERO - &z.re).sqrt());
    }
    let r = (&(&z.re * &z.re) + &(&z.im * &z.im)).sqrt();
    if z.re >= W::ZERO {
        let u = (&(&r + &z.re) / &two).sqrt();
        let v = &z.im / &(&u + &u);
        Wc::new(u, v)
    } else {
        let mut v = (&(&r - &z.re) / &two).sqrt();
        if z.im < W::ZERO {
            v = &W::ZERO - &v;
        }
        let u = &z.im / &(&v + &v);
        Wc::new(u, v)
    }
}

// ============================================================================
// Shared per-call context
// ============================================================================

struct Ctx {
    bits: usize,
    one: W,
    two: W,
    three: W,
    sqrt3: W,
    two_pi: W,
    /// η as a wide scalar.
    eta: W,
    /// πη (the erfc argument scale of the reciprocal sum).
    pi_eta: W,
    alpha: Wc,
    alpha_sq: Wc,
    half_alpha: Wc,
    /// (2α/√3), the reciprocal prefactor.
    reci_pref: Wc,
    /// παη and (παη)².
    pae: Wc,
    pae2: Wc,
    /// e^{(παη)²}, the common real-space site factor.
    e_pae2: Wc,
    /// e^{-1/η²} and e^{-1/(3η²)}: integer-power bases of e^{-x²/η²}.
    q_decay: W,
    c_third: W,
    /// Bloch momentum components.
    bx: W,
    by: W,
    /// |β|² (reciprocal-space) and the unit phases at R = a₁, a₂.
    beta2: W,
    u1: Wc,
    u2: Wc,
    /// Midpoint rule: step h, prefactor 2h/π, 2π/h, and (t_k², e^{-t_k²}).
    two_h_over_pi: W,
    two_pi_over_h: W,
    two_pi_over_h_f64: f64,
    nodes: Vec<(W, W)>,
    /// ln of the relative size below which the χ correction is dropped.
    chi_cut: f64,
    /// Taylor length for sin/cos after reduction to |x| ≤ π.
    sincos_terms: usize,
}

impl Ctx {
    fn new(args: &Sum2DArgs, bits: usize) -> Self {
        let one = wi(1, bits);
        let two = wi(2, bits);
        let three = wi(3, bits);
        let sqrt3 = three.sqrt();
        let pi = pi_full().clone().with_precision(bits).value();
        let two_pi = &pi + &pi;
        let eta = wf(args.eta, bits);
        let pi_eta = &pi * &eta;
        let alpha = Wc::from_c64(args.alpha, bits);
        let alpha_sq = alpha.sqr_c();
        let half_alpha = alpha.div_w(&two);
        let reci_pref = alpha.mul_w(&(&two / &sqrt3));
        let pae = alpha.mul_w(&pi_eta);
        let pae2 = pae.sqr_c();

        // Taylor length: smallest K with (2K+1)! ≥ 3.2^{2K+1} 2^{bits+16}.
        let target = (bits as f64 + 16.0) * LN_2;
        let lx = 3.2f64.ln();
        let mut log_fact = 0.0;
        let mut sincos_terms = 1;
        for k in 1..10_000 {
            log_fact += ((2 * k) as f64).ln() + ((2 * k + 1) as f64).ln();
            if log_fact - (2 * k + 1) as f64 * lx >= target {
                sincos_terms = k;
                break;
            }
        }

        let mut ctx = Ctx {
            bits,
            one,
            two,
            three,
            sqrt3,
            two_pi,
            eta,
            pi_eta,
            alpha,
            alpha_sq,
            half_alpha,
            reci_pref,
            pae,
            pae2,
            e_pae2: Wc::zero(),
            q_decay: W::ZERO,
            c_third: W::ZERO,
            bx: wf(args.beta.x, bits),
            by: wf(args.beta.y, bits),
            beta2: W::ZERO,
            u1: Wc::zero(),
            u2: Wc::zero(),
            two_h_over_pi: W::ZERO,
            two_pi_over_h: W::ZERO,
            two_pi_over_h_f64: 0.0,
            nodes: Vec::new(),
            chi_cut: -((bits + 10) as f64) * LN_2,
            sincos_terms,
        };

        ctx.e_pae2 = wc_exp(&ctx.pae2, &ctx);
        let inv_eta2 = &ctx.one / &(&ctx.eta * &ctx.eta);
        ctx.q_decay = (&W::ZERO - &inv_eta2).exp();
        ctx.c_third = (&W::ZERO - &(&inv_eta2 / &ctx.three)).exp();
        ctx.beta2 = &(&ctx.bx * &ctx.bx) + &(&ctx.by * &ctx.by);

        // e^{-2πiβ·a₁}, e^{-2πiβ·a₂} with a₁ = (√3/2, -1/2), a₂ = (-√3/2, -1/2):
        // φ₁ = -π(√3 βx - βy), φ₂ = π(√3 βx + βy).
        let sq_bx = &ctx.sqrt3 * &ctx.bx;
        let phi1 = &W::ZERO - &(&pi * &(&sq_bx - &ctx.by));
        let phi2 = &pi * &(&sq_bx + &ctx.by);
        let (s1, c1) = sincos(&phi1, &ctx);
        ctx.u1 = Wc::new(c1, s1);
        let (s2, c2) = sincos(&phi2, &ctx);
        ctx.u2 = Wc::new(c2, s2);

        // Midpoint rule tuned to the precision: h = π/√(bits ln 2).
        let span = (&wi(bits as i64, bits) * &ctx.two.ln()).sqrt();
        let h = &pi / &span;
        ctx.two_h_over_pi = &(&h + &h) / &pi;
        ctx.two_pi_over_h = &ctx.two_pi / &h;
        ctx.two_pi_over_h_f64 = ctx.two_pi_over_h.to_f64().value();
        let k_nodes = ((bits as f64) * LN_2 / PI).ceil() as usize + 2;
        ctx.nodes = (0..k_nodes)
            .map(|k| {
                let t = &h * &wf(k as f64 + 0.5, bits);
                let t2 = &t * &t;
                let e2 = (&W::ZERO - &t2).exp();
                (t2, e2)
            })
            .collect();

        ctx
    }
}

// ============================================================================
// Wide transcendental functions
// ============================================================================

/// sin and cos after reduction modulo the cached 2π.
fn sincos(x: &W, ctx: &Ctx) -> (W, W) {
    let n = (x.to_f64().value() / (2.0 * PI)).round();
    let r = if n == 0.0 { x.clone() } else { x - &(&ctx.two_pi * &wf(n, ctx.bits)) };
    let x2 = &r * &r;
    let mut sin_acc = r.clone();
    let mut cos_acc = ctx.one.clone();
    let mut term_s = r;
    let mut term_c = ctx.one.clone();
    for k in 1..=ctx.sincos_terms {
        let k2 = (2 * k) as i64;
        term_c = &(&W::ZERO - &(&term_c * &x2)) / &wi((k2 - 1) * k2, ctx.bits);
        cos_acc = &cos_acc + &term_c;
        term_s = &(&W::ZERO - &(&term_s * &x2)) / &wi(k2 * (k2 + 1), ctx.bits);
        sin_acc = &sin_acc + &term_s;
    }
    (sin_acc, cos_acc)
}

/// e^z for complex z.
fn wc_exp(z: &Wc, ctx: &Ctx) -> Wc {
    let m = z.re.exp();
    if z.im == W::ZERO {
        return Wc::new(m, W::ZERO);
    }
    let (s, c) = sincos(&z.im, ctx);
    Wc::new(&m * &c, &m * &s)
}

/// Whether the χ pole correction is above the rounding floor at z.
fn chi_needed(z: &Wc, ctx: &Ctx) -> bool {
    let x = z.re.to_f64().value().abs();
    let y = z.im.to_f64().value();
    let log_rel = y * y - x * x - ctx.two_pi_over_h_f64 * y + (x.hypot(y) + 2.0).ln();
    log_rel > ctx.chi_cut
}

/// Faddeeva function w(z) = e^{-z²} erfc(-iz) by the pole-corrected
/// midpoint rule; lower half-plane via w(z) = 2e^{-z²} - w(-z).
fn w_fad(z: &Wc, ctx: &Ctx) -> Wc {
    if z.im < W::ZERO {
        let z2 = z.sqr_c();
        let e = wc_exp(&z2.neg(), ctx).mul_w(&ctx.two);
        return e.sub(&w_fad(&z.neg(), ctx));
    }
    let z2 = z.sqr_c();
    let zi2 = &z2.im * &z2.im;
    // Σ_k e^{-t_k²} (z² - t_k²)^{-1}: accumulate Re parts and Σ f_k, then
    // restore the common -i z2.im factor of the imaginary parts.
    let mut s_re = W::ZERO;
    let mut f_sum = W::ZERO;
    for (t2, e2) in &ctx.nodes {
        let dre = &z2.re - t2;
        let d = &(&dre * &dre) + &zi2;
        let f = e2 / &d;
        s_re = &s_re + &(&dre * &f);
        f_sum = &f_sum + &f;
    }
    let s = Wc::new(s_re, &W::ZERO - &(&z2.im * &f_sum));
    let mut w = z.mul_i().mul(&s).mul_w(&ctx.two_h_over_pi);
    if chi_needed(z, ctx) {
        let num = wc_exp(&z2.neg(), ctx).mul_w(&ctx.two);
        // -2πiz/h has real part 2π z.im/h and imaginary part -2π z.re/h.
        let ere = &z.im * &ctx.two_pi_over_h;
        let eim = &W::ZERO - &(&z.re * &ctx.two_pi_over_h);
        let den = wc_exp(&Wc::new(ere, eim), ctx);
        let den = Wc::new(&den.re + &ctx.one, den.im);
        w = w.add(&num.div(&den));
    }
    w
}

/// erfc(z) = e^{-z²} w(iz) for Re z ≥ 0, reflected otherwise.
fn erfc_wide(z: &Wc, ctx: &Ctx) -> Wc {
    if z.re < W::ZERO {
        let r = erfc_wide(&z.neg(), ctx);
        return Wc::new(&ctx.two - &r.re, &W::ZERO - &r.im);
    }
    let gauss = wc_exp(&z.sqr_c().neg(), ctx);
    gauss.mul(&w_fad(&z.mul_i(), ctx))
}

/// Integer power of a unit-modulus phase (negative exponents conjugate).
fn phase_pow(base: &Wc, n: i64, ctx: &Ctx) -> Wc {
    if n == 0 {
        return Wc::new(ctx.one.clone(), W::ZERO);
    }
    let mut p = if n < 0 { base.conj() } else { base.clone() };
    let mut e = n.unsigned_abs();
    let mut result = Wc::new(ctx.one.clone(), W::ZERO);
    loop {
        if e & 1 == 1 {
            result = result.mul(&p);
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        p = p.sqr_c();
    }
    result
}

// ============================================================================
// Shell walks in the collapsed scale
// ============================================================================

/// |c| in absolute units, saturating to infinity when out of f64 range.
///
/// The stopping decision must be made on absolute ring magnitudes: the
/// screened shells grow to e^{(παη)²}-sized values that cancel against the
/// reciprocal sum, and the assembled lattice sum is O(1). A ring is therefore
/// negligible only once its absolute size drops below the target accuracy of
/// the final answer — comparing against the inflated running accumulator
/// would stop the walk e^{(παη)²} shells too early.
fn abs_mag(c: &Wc) -> f64 {
    let m2 = &(&c.re * &c.re) + &(&c.im * &c.im);
    let m = m2.to_f64().value();
    if m.is_nan() {
        f64::INFINITY
    } else {
        m.max(0.0).sqrt()
    }
}

fn shell_sum_wide<F>(cap: usize, what: &str, mut ring_term: F) -> Result<Wc>
where
    F: FnMut(usize) -> Result<Wc>,
{
    let cap = cap.min(MAX_HEX_RING);
    let mut acc = Wc::zero();
    let mut prev_mag = f64::INFINITY;
    let mut last_mag = f64::INFINITY;
    for j in 0..=cap {
        let contrib = ring_term(j)?;
        acc = acc.add(&contrib);
        prev_mag = last_mag;
        last_mag = abs_mag(&contrib);
        if j >= 3 && last_mag < 1e-15 && prev_mag < 1e-15 {
            return Ok(acc);
        }
    }
    let tail_bound = tail_estimate(prev_mag, last_mag);
    if tail_bound > 1e-12 {
        return Err(Error::NonConvergence(format!(
            "{what} wide Ewald sum: absolute tail bound {tail_bound:.3e} exceeds 1e-12 \
             after {cap} shells"
        )));
    }
    Ok(acc)
}

// ============================================================================
// The three Ewald pieces
// ============================================================================

/// Real-space sum: Σ_R (α/2) e^{-2πiβ·R} e^{(παη)² - x²/η²}
/// [w(-παη + ix/η) + w(παη + ix/η)] / x with x = |R + off|.
fn realspace_wide(args: &Sum2DArgs, offset: Offset2D, ctx: &Ctx) -> Result<Wc> {
    let rings = hex_rings();
    let skip_origin = offset == Offset2D::None;
    // x² = L(j₁,j₂) + u_sign (j₁-j₂) + 1/3 exactly, with integer Loeschian L.
    let u_sign: i64 = match offset {
        Offset2D::PlusDelta => -1,
        Offset2D::MinusDelta => 1,
        Offset2D::None => 0,
    };
    let real_alpha = args.alpha.im == 0.0;
    shell_sum_wide(args.realspace_shells, "real-space", |j| {
        let mut contrib = Wc::zero();
        for &(j1, j2) in &rings[j].sites {
            if skip_origin && j1 == 0 && j2 == 0 {
                continue;
            }
            let (j1, j2) = (j1 as i64, j2 as i64);
            let n_q = loeschian(j1, j2) + u_sign * (j1 - j2);
            let x2 = if offset == Offset2D::None {
                wi(n_q, ctx.bits)
            } else {
                &wi(3 * n_q + 1, ctx.bits) / &ctx.three
            };
            let x = x2.sqrt();
            let xi = &x / &ctx.eta;
            // e^{E} = e^{(παη)²} (e^{-1/η²})^{n_q} e^{-1/(3η²)}.
            let mut e_big = ctx.e_pae2.mul_w(&ctx.q_decay.clone().powi(n_q.into()));
            if offset != Offset2D::None {
                e_big = e_big.mul_w(&ctx.c_third);
            }
            let zeta_plus = Wc::new(ctx.pae.re.clone(), &ctx.pae.im + &xi);
            let bracket = if real_alpha {
                let wp = w_fad(&zeta_plus, ctx);
                Wc::new(&wp.re + &wp.re, W::ZERO)
            } else {
                let zeta_minus = Wc::new(&W::ZERO - &ctx.pae.re, &xi - &ctx.pae.im);
                w_fad(&zeta_plus, ctx).add(&w_fad(&zeta_minus, ctx))
            };
            let phase = phase_pow(&ctx.u1, j1, ctx).mul(&phase_pow(&ctx.u2, j2, ctx));
            let term = ctx.half_alpha.mul(&phase).mul(&e_big).mul(&bracket).div_w(&x);
            contrib = contrib.add(&term);
        }
        Ok(contrib)
    })
}

/// Reciprocal sum: Σ_G (2α/√3) erfc(πη s)/s · e^{±2πiδ·(β+G)} with
/// s² = |β+G|² - α² on the outgoing branch.
fn reciprocal_wide(args: &Sum2DArgs, offset: Offset2D, ctx: &Ctx) -> Result<Wc> {
    let rings = hex_rings();
    let phase_sign = offset.phase_sign();
    shell_sum_wide(args.reciprocal_shells, "reciprocal-space", |j| {
        let mut contrib = Wc::zero();
        for &(m, n) in &rings[j].sites {
            let (m, n) = (m as i64, n as i64);
            // |β+G|² = (4/3) L(m,n) + 2 β·G + |β|² with
            // β·G = √3⁻¹ βx (m+n) + βy (m-n).
            let bg = &(&(&ctx.bx * &wi(m + n, ctx.bits)) / &ctx.sqrt3)
                + &(&ctx.by * &wi(m - n, ctx.bits));
            let p2 = &(&(&wi(4 * loeschian(m, n), ctx.bits) / &ctx.three) + &(&bg + &bg))
                + &ctx.beta2;
            let p = p2.to_f64().value().max(0.0).sqrt();
            // The light-line guard and branch decision live in the f64 layer.
            branch_sqrt(args.alpha, p, false)?;
            let zarg = Wc::new(&p2 - &ctx.alpha_sq.re, &W::ZERO - &ctx.alpha_sq.im);
            let mut s = wc_sqrt(&zarg);
            if branch_negates(args.alpha, p) {
                s = s.neg();
            }
            let erfc = erfc_wide(&s.mul_w(&ctx.pi_eta), ctx);
            // δ·(β+G) = -βx/√3 - (m+n)/3 for δ = (-1/√3, 0).
            let term = if phase_sign == 0.0 {
                ctx.reci_pref.mul(&erfc).div(&s)
            } else {
                let dot = &(&W::ZERO - &(&ctx.bx / &ctx.sqrt3)) - &(&wi(m + n, ctx.bits) / &ctx.three);
                let arg = &(&ctx.two_pi * &dot) * &wf(phase_sign, ctx.bits);
                let (sn, cs) = sincos(&arg, ctx);
                ctx.reci_pref.mul(&erfc).div(&s).mul(&Wc::new(cs, sn))
            };
            contrib = contrib.add(&term);
        }
        Ok(contrib)
    })
}

/// R = 0 compensation terms: -2α e^{(παη)²}/(√π η) - 2iπα² erfc(-iπαη).
fn self_terms_wide(ctx: &Ctx) -> Wc {
    let pi = &ctx.pi_eta / &ctx.eta;
    let coef = &ctx.two / &(&pi.sqrt() * &ctx.eta);
    let gaussian = ctx.alpha.mul(&ctx.e_pae2).mul_w(&coef).neg();
    let minus_i_pae = Wc::new(ctx.pae.im.clone(), &W::ZERO - &ctx.pae.re);
    let factor = Wc::new(W::ZERO, &W::ZERO - &(&pi + &pi)).mul(&ctx.alpha_sq);
    gaussian.add(&factor.mul(&erfc_wide(&minus_i_pae, ctx)))
}

// ============================================================================
// Entry point
// ============================================================================

/// Real-space plus reciprocal-space Ewald sum (with compensation terms for
/// the on-lattice offset) at the literal η of `args`, assembled in floats
/// wide enough to absorb the e^{Re (παη)²} cancellation.
pub(crate) fn ewald_pair(args: &Sum2DArgs, offset: Offset2D) -> Result<C64> {
    if args.alpha == C64::new(0.0, 0.0) {
        return Ok(C64::new(0.0, 0.0));
    }
    let pae = PI * args.alpha * args.eta;
    let cancel = (pae * pae).re.max(0.0);
    let bits = GUARD_BITS + (cancel / LN_2).ceil() as usize;
    if bits > MAX_WIDE_BITS {
        return Err(Error::Overflow(format!(
            "wide Ewald cancellation of e^{:.0} needs {bits} bits (cap {MAX_WIDE_BITS}); reduce \
             eta",
            cancel
        )));
    }
    let ctx = Ctx::new(args, bits);
    let real = realspace_wide(args, offset, &ctx)?;
    let reci = reciprocal_wide(args, offset, &ctx)?;
    let mut total = real.add(&reci);
    if offset == Offset2D::None {
        total = total.add(&self_terms_wide(&ctx));
    }
    Ok(total.to_c64())
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::super::ewald;
    use super::*;
    use crate::specfun::faddeeva_w;

    fn test_ctx(bits: usize) -> Ctx {
        let args = Sum2DArgs::new(C64::new(2.4, 0.0), super::super::Vec2::new(0.2, 0.1)).unwrap();
        Ctx::new(&args, bits)
    }

    /// The midpoint-rule Faddeeva function against the f64 implementation
    /// at moderate arguments, including the real axis, the imaginary axis,
    /// and the lower half-plane reflection.
    #[test]
    fn faddeeva_matches_f64_reference() {
        let ctx = test_ctx(160);
        let points = [
            C64::new(1.3, 0.7),
            C64::new(0.4, 2.1),
            C64::new(3.0, 0.01),
            C64::new(0.0, 0.2),
            C64::new(2.0, 0.0),
            C64::new(-1.1, 0.4),
            C64::new(0.8, -0.3),
        ];
        for &z in &points {
            let want = faddeeva_w(z).unwrap();
            let got = w_fad(&Wc::from_c64(z, ctx.bits), &ctx).to_c64();
            let err = (got - want).norm() / want.norm();
            assert!(err < 1e-12, "w({z}) = {got} vs {want} (rel {err:.2e})");
        }
    }

    /// Wide sin/cos against f64 after large-argument reduction.
    #[test]
    fn sincos_reduction_matches_f64() {
        let ctx = test_ctx(160);
        for &x in &[0.3, -2.9, 47.25, -519.6, 3.14159, 0.0] {
            let (s, c) = sincos(&wf(x, ctx.bits), &ctx);
            let (sf, cf) = (s.to_f64().value(), c.to_f64().value());
            assert!((sf - x.sin()).abs() < 1e-13, "sin({x}) = {sf}");
            assert!((cf - x.cos()).abs() < 1e-13, "cos({x}) = {cf}");
        }
    }

    /// erfc against the f64 implementation on both sides of the dispatch.
    #[test]
    fn erfc_matches_f64_reference() {
        let ctx = test_ctx(160);
        for &z in &[C64::new(0.8, 1.1), C64::new(-0.8, 1.1), C64::new(2.5, -0.4), C64::new(0.0, 1.7)]
        {
            let want = crate::specfun::erfc_complex(z).unwrap();
            let got = erfc_wide(&Wc::from_c64(z, ctx.bits), &ctx).to_c64();
            let err = (got - want).norm() / want.norm();
            assert!(err < 1e-12, "erfc({z}) = {got} vs {want} (rel {err:.2e})");
        }
    }

    /// At a small η the f64 path is exact to ~1e-13, so the wide pair must
    /// land on it for every offset.
    #[test]
    fn wide_pair_matches_f64_at_small_eta() {
        let alpha = C64::new(2.4, 0.0);
        let beta = super::super::Vec2::new(0.2, 0.1);
        let args = Sum2DArgs::new(alpha, beta).unwrap().with_eta(0.3).unwrap();
        for offset in [Offset2D::PlusDelta, Offset2D::MinusDelta, Offset2D::None] {
            // ewald::reciprocal already carries the compensation terms of the
            // on-lattice offset, matching what ewald_pair assembles.
            let want = ewald::realspace(&args, offset).unwrap().value
                + ewald::reciprocal(&args, offset, false).unwrap().value;
            let got = ewald_pair(&args, offset).unwrap();
            let err = (got - want).norm() / want.norm().max(1e-3);
            assert!(err < 1e-11, "offset {offset:?}: wide {got} vs f64 {want} (rel {err:.2e})");
        }
    }

    /// A damped and a gain-side α: anchored against the f64 pair at small η
    /// (where the f64 path is still fully accurate), then checked for
    /// η-independence at larger splits, where the gain side pushes ζ₊ into
    /// the lower half-plane and covers the reflection branch.
    #[test]
    fn wide_pair_handles_complex_alpha() {
        let beta = super::super::Vec2::new(0.12, 0.27);
        for &alpha in &[C64::new(1.3, 0.6), C64::new(2.4, -0.36191)] {
            let args = Sum2DArgs::new(alpha, beta).unwrap().with_eta(0.3).unwrap();
            let want = ewald::realspace(&args, Offset2D::PlusDelta).unwrap().value
                + ewald::reciprocal(&args, Offset2D::PlusDelta, false).unwrap().value;
            let anchor = ewald_pair(&args, Offset2D::PlusDelta).unwrap();
            let err = (anchor - want).norm() / want.norm();
            assert!(
                err < 1e-10,
                "alpha {alpha}: wide {anchor} vs f64 {want} (rel {err:.2e})"
            );
            for &eta in &[0.6, 0.9] {
                let args = Sum2DArgs::new(alpha, beta).unwrap().with_eta(eta).unwrap();
                let got = ewald_pair(&args, Offset2D::PlusDelta).unwrap();
                let drift = (got - anchor).norm() / anchor.norm();
                assert!(
                    drift < 1e-12,
                    "alpha {alpha}, eta {eta}: wide {got} drifts from anchor {anchor} (rel {drift:.2e})"
                );
            }
        }
    }
}

