//! Adaptive quadrature for complex-valued integrands on finite intervals.
//!
//! The integrator uses a nested Gauss–Legendre pair: a 15-point rule gives
//! the panel estimate and a 31-point rule gives the error reference, with
//! bisection of panels whose discrepancy exceeds the local budget. Nodes and
//! weights are computed at first use by Newton iteration on the Legendre
//! recurrence (no tabulated constants), which makes the rules self-validating:
//! the unit tests check symmetry, weight normalisation and polynomial
//! exactness up to the theoretical degree.
//!
//! The integrands in this crate (theta-kernel representations of lattice
//! sums, Lerch continuations, Faddeeva strip quadrature, wave-packet
//! momentum integrals) are analytic on the integration segments, so the
//! Gauss pair converges exponentially per panel and the adaptive driver
//! terminates after a handful of bisections.

use crate::{C64, Error, Result};
use std::sync::OnceLock;

// ============================================================================
// Gauss–Legendre rules
// ============================================================================

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Legendre polynomial P_n(x) and its derivative by upward recurrence.
fn legendre_p_dp(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0; // P_0
    let mut p1 = x; // P_1
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    // P'_n(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Compute the n-point Gauss–Legendre rule by Newton iteration from the
/// Chebyshev-like initial guesses x_i ≈ cos(π (i + 3/4) / (n + 1/2)).
pub(crate) fn gauss_legendre(n: usize) -> GaussLegendre {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_p_dp(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_p_dp(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // Newton from the cosine guesses orders nodes decreasingly; sort ascending.
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| nodes[a].partial_cmp(&nodes[b]).unwrap());
    GaussLegendre {
        nodes: idx.iter().map(|&i| nodes[i]).collect(),
        weights: idx.iter().map(|&i| weights[i]).collect(),
    }
}

fn rule15() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(15))
}

fn rule31() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(31))
}

// ============================================================================
// Adaptive driver
// ============================================================================

/// Outcome of an adaptive integration.
#[derive(Debug, Clone)]
pub struct QuadratureResult {
    /// Estimated integral value (31-point estimates summed over panels).
    pub value: C64,
    /// Accumulated error bound from the |G31 - G15| panel discrepancies.
    pub abs_error: f64,
    /// Number of integrand evaluations performed.
    pub evaluations: usize,
}

fn panel_pair<F>(f: &F, a: f64, b: f64) -> Result<(C64, C64, usize)>
where
    F: Fn(f64) -> Result<C64>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut coarse = C64::new(0.0, 0.0);
    let mut fine = C64::new(0.0, 0.0);
    let r15 = rule15();
    let r31 = rule31();
    for (x, w) in r15.nodes.iter().zip(&r15.weights) {
        coarse += f(mid + half * x)? * *w;
    }
    for (x, w) in r31.nodes.iter().zip(&r31.weights) {
        fine += f(mid + half * x)? * *w;
    }
    Ok((coarse * half, fine * half, 46))
}

/// Adaptively integrate `f` over `[a, b]`.
///
/// The panel acceptance test distributes the requested tolerance across the
/// interval proportionally to panel width: a panel of width `w` is accepted
/// when `|G31 - G15| <= max(abs_tol, rel_tol * |I|) * w / (b - a)`, where `I`
/// is the running whole-interval estimate. Panels are bisected otherwise, up
/// to `max_panels` accepted panels.
pub fn integrate<F>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64, max_panels: usize) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<C64>,
{
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::Domain(format!("invalid integration interval [{a}, {b}]")));
    }
    let width = b - a;
    // Initial whole-interval estimate seeds the relative-tolerance scale.
    let (_, first_fine, mut evals) = panel_pair(&f, a, b)?;
    let mut scale = first_fine.norm();

    let mut stack: Vec<(f64, f64)> = vec![(a, b)];
    let mut value = C64::new(0.0, 0.0);
    let mut err_sum = 0.0;
    let mut accepted = 0usize;
    let mut processed = 0usize;

    while let Some((pa, pb)) = stack.pop() {
        processed += 1;
        if processed > 64 * max_panels {
            return Err(Error::NonConvergence(format!(
                "adaptive quadrature on [{a}, {b}] exceeded its panel budget"
            )));
        }
        let (coarse, fine, n) = panel_pair(&f, pa, pb)?;
        evals += n;
        let err = (fine - coarse).norm();
        let budget = abs_tol.max(rel_tol * scale) * ((pb - pa) / width);
        // A discrepancy at the rounding floor of the panel's own value cannot
        // be reduced by subdivision; likewise panels narrower than ~1e-13 of
        // the interval are at the resolution limit of f64 node placement.
        let noise_floor = 100.0 * f64::EPSILON * fine.norm();
        if err <= budget.max(noise_floor) || (pb - pa) < 1e-13 * width {
            value += fine;
            err_sum += err;
            accepted += 1;
            if accepted > max_panels {
                return Err(Error::NonConvergence(format!(
                    "adaptive quadrature on [{a}, {b}] needed more than {max_panels} panels"
                )));
            }
            scale = scale.max(value.norm());
        } else {
            let mid = 0.5 * (pa + pb);
            stack.push((pa, mid));
            stack.push((mid, pb));
        }
    }
    Ok(QuadratureResult { value, abs_error: err_sum, evaluations: evals })
}

/// Convenience wrapper for real-valued integrands.
pub fn integrate_real<F>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64, max_panels: usize) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let r = integrate(|x| f(x).map(|v| C64::new(v, 0.0)), a, b, abs_tol, rel_tol, max_panels)?;
    Ok((r.value.re, r.abs_error))
}

/// Neville polynomial extrapolation of samples f(h_i) to h = 0.
///
/// Used to remove the regulator from damped lattice-sum ladders: evaluate at
/// a geometric ladder of damping parameters h_i and extrapolate to the
/// undamped limit. The nodes must be distinct; conditioning degrades if they
/// are not well separated.
pub fn neville_to_zero(hs: &[f64], vals: &[C64]) -> C64 {
    assert_eq!(hs.len(), vals.len());
    assert!(!hs.is_empty());
    let n = hs.len();
    let mut tab: Vec<C64> = vals.to_vec();
    for k in 1..n {
        for i in 0..(n - k) {
            let num = tab[i + 1] * hs[i] - tab[i] * hs[i + k];
            tab[i] = num / (hs[i] - hs[i + k]);
        }
    }
    tab[0]
}

// ============================================================================
// Tests
// ============================================================================
