//! Sequence acceleration for slowly convergent / Abel-summable series.
//!
//! The Levin u-transform with remainder estimates ω_n = (β + n) a_n (β = 1)
//! in the explicit binomial form
//!
//!   L_k^{(n0)} = Σ_{j=0}^k (-1)^j C(k,j) g_j s_{n0+j}/ω_{n0+j}
//!              / Σ_{j=0}^k (-1)^j C(k,j) g_j / ω_{n0+j},
//!   g_j = ((β + n0 + j)/(β + n0 + k))^{k-1},
//!
//! applied at increasing orders k until two consecutive orders agree. The
//! transform sums the unit-circle Lerch series (|z| = 1, z ≠ 1), including
//! the Abel-summable log-weighted series of the S2 lattice component whose
//! raw terms do not decay. A restart over small n0 offsets plus an iterated
//! Aitken fallback guards against accidental degeneracies of a single
//! starting point.

use crate::{C64, Error, Result};

/// Relative agreement between consecutive Levin orders demanded by default.
pub const LEVIN_DEFAULT_TOL: f64 = 1e-10;

fn binomial(k: usize, j: usize) -> f64 {
    let mut v = 1.0;
    for i in 0..j {
        v = v * (k - i) as f64 / (i + 1) as f64;
    }
    v
}

/// One Levin-u table column at order `k`, starting from offset `n0`.
fn levin_order(terms: &[C64], partials: &[C64], n0: usize, k: usize) -> Option<C64> {
    const BETA: f64 = 1.0;
    if n0 + k >= terms.len() {
        return None;
    }
    let mut num = C64::new(0.0, 0.0);
    let mut den = C64::new(0.0, 0.0);
    for j in 0..=k {
        let idx = n0 + j;
        let omega = (BETA + idx as f64) * terms[idx];
        if omega.norm() < 1e-300 {
            return None;
        }
        let g = ((BETA + idx as f64) / (BETA + (n0 + k) as f64)).powi(k as i32 - 1);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * binomial(k, j) * g;
        num += c * partials[idx] / omega;
        den += c / omega;
    }
    if den.norm() < 1e-280 {
        return None;
    }
    Some(num / den)
}

/// Accelerate Σ terms[n] with the Levin u-transform.
///
/// `terms` should provide at least ~16 elements; 40–64 gives headroom for
/// the restart offsets. Returns the first value on which two consecutive
/// orders (k, k+1) agree to `rel_tol`.
pub fn levin_u_sum(terms: &[C64], rel_tol: f64) -> Result<C64> {
    if terms.len() < 8 {
        return Err(Error::Domain(format!(
            "levin_u_sum needs at least 8 terms, got {}",
            terms.len()
        )));
    }
    let mut partials = Vec::with_capacity(terms.len());
    let mut acc = C64::new(0.0, 0.0);
    for &t in terms {
        acc += t;
        partials.push(acc);
    }
    // If the raw series has already converged, take it directly.
    let tail = terms[terms.len() - 1].norm() + terms[terms.len() - 2].norm();
    if tail < 0.5 * rel_tol * acc.norm() {
        return Ok(acc);
    }
    for n0 in [0usize, 2, 4] {
        let mut prev: Option<C64> = None;
        for k in 2..=10 {
            let Some(val) = levin_order(terms, &partials, n0, k) else {
                prev = None;
                continue;
            };
            if let Some(p) = prev {
                let scale = val.norm().max(p.norm()).max(1e-300);
                if (val - p).norm() < rel_tol * scale {
                    return Ok(val);
                }
            }
            prev = Some(val);
        }
    }
    iterated_aitken(&partials, rel_tol.max(1e-9))
}

/// Iterated Aitken Δ² fallback on a sequence of partial sums.
pub fn iterated_aitken(partials: &[C64], rel_tol: f64) -> Result<C64> {
    let mut cur: Vec<C64> = partials.to_vec();
    let mut last_estimate: Option<C64> = None;
    while cur.len() >= 3 {
        let mut next = Vec::with_capacity(cur.len() - 2);
        for w in cur.windows(3) {
            let denom = w[2] - 2.0 * w[1] + w[0];
            if denom.norm() < 1e-300 {
                next.push(w[2]);
            } else {
                let d = w[1] - w[0];
                next.push(w[0] - d * d / denom);
            }
        }
        let estimate = *next.last().unwrap();
        if let Some(prev) = last_estimate {
            let scale = estimate.norm().max(prev.norm()).max(1e-300);
            if (estimate - prev).norm() < rel_tol * scale {
                return Ok(estimate);
            }
        }
        last_estimate = Some(estimate);
        cur = next;
    }
    Err(Error::NonConvergence(
        "sequence acceleration failed to stabilise (Levin and Aitken)".into(),
    ))
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series_on_unit_circle() {
        // Σ z^n = 1/(1-z) in the Abel sense for |z| = 1, z ≠ 1.
        let z = C64::from_polar(1.0, 2.4);
        let terms: Vec<C64> = (0..48).map(|n| z.powu(n)).collect();
        let v = levin_u_sum(&terms, 1e-11).unwrap();
        let exact = (1.0 - z).inv();
        assert!((v - exact).norm() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn alternating_log_series() {
        // Σ (-1)^n / (n+1) = ln 2.
        let terms: Vec<C64> = (0..40)
            .map(|n| C64::new(if n % 2 == 0 { 1.0 } else { -1.0 } / (n as f64 + 1.0), 0.0))
            .collect();
        let v = levin_u_sum(&terms, 1e-12).unwrap();
        assert!((v.re - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn abel_summation_of_growing_log_terms() {
        // Σ z^n ln(n+1) for |z| = 1: terms do not decay, but the Abel limit
        // exists. Oracle: direct series at radius r -> 1 with Richardson
        // extrapolation in (1 - r).
        let z = C64::from_polar(1.0, 1.9);
        let terms: Vec<C64> = (0..64).map(|n| z.powu(n) * ((n + 1) as f64).ln()).collect();
        let accelerated = levin_u_sum(&terms, 1e-11).unwrap();

        let eval = |r: f64| -> C64 {
            let zr = z * r;
            let mut s = C64::new(0.0, 0.0);
            let mut p = C64::new(1.0, 0.0);
            for n in 0..20_000 {
                s += p * ((n + 1) as f64).ln();
                p *= zr;
                if p.norm() * (n as f64 + 2.0).ln() < 1e-18 {
                    break;
                }
            }
            s
        };
        let rs = [0.90, 0.95, 0.975, 0.9875, 0.99375];
        let mut vals: Vec<C64> = rs.iter().map(|&r| eval(r)).collect();
        let mut hs: Vec<f64> = rs.iter().map(|&r| 1.0 - r).collect();
        // Polynomial extrapolation to h = 0 (Neville).
        for level in 1..vals.len() {
            for i in 0..vals.len() - level {
                let num = vals[i + 1] * hs[i] - vals[i] * hs[i + level];
                vals[i] = num / (hs[i] - hs[i + level]);
            }
        }
        hs.clear();
        let oracle = vals[0];
        assert!(
            (accelerated - oracle).norm() < 2e-6 * oracle.norm().max(1.0),
            "{accelerated} vs {oracle}"
        );
    }

    #[test]
    fn already_converged_series_passes_through() {
        let terms: Vec<C64> = (0..30).map(|n| C64::new(0.5f64.powi(n), 0.0)).collect();
        let v = levin_u_sum(&terms, 1e-10).unwrap();
        assert!((v.re - 2.0).abs() < 1e-8);
    }

    #[test]
    fn too_few_terms_is_an_error() {
        let terms = vec![C64::new(1.0, 0.0); 4];
        assert!(levin_u_sum(&terms, 1e-10).is_err());
    }
}
