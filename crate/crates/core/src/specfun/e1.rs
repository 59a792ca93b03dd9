//! Principal-branch exponential integral E1(z) for complex arguments.
//!
//! E1(z) = ∫_z^∞ e^{-t}/t dt, with the branch cut along the negative real
//! axis. Two complementary methods cover the plane:
//!
//! * |z| <= 4: the convergent series
//!     E1(z) = -γ - Log z - Σ_{k>=1} (-z)^k / (k · k!),
//! * |z| > 4: the continued fraction
//!     e^z E1(z) = 1/(z + 1/(1 + 1/(z + 2/(1 + 2/(z + 3/(1 + ···)))))),
//!   evaluated by the modified Lentz algorithm.
//!
//! The scaled product e^z E1(z) is exposed separately because the dipole
//! propagator pairs E1 with an exponential of the opposite sign; evaluating
//! the product directly avoids overflow at complex wavenumbers.

use crate::{C64, Error, Result};

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.5772156649015328606;

fn check_domain(z: C64) -> Result<()> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("E1 is singular at z = 0".into()));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::Domain(format!(
            "E1 branch cut: z = {z} lies on the negative real axis"
        )));
    }
    Ok(())
}

/// Convergent series for E1, |z| <= 4.
fn e1_series(z: C64) -> Result<C64> {
    let mut sum = C64::new(0.0, 0.0);
    let mut term = C64::new(1.0, 0.0); // holds (-z)^k / k!
    for k in 1..=250 {
        let kf = k as f64;
        term *= -z / kf;
        let add = term / kf;
        sum += add;
        if add.norm() < 1e-17 * sum.norm().max(1e-300) {
            return Ok(-EULER_GAMMA - z.ln() - sum);
        }
    }
    Err(Error::NonConvergence(format!("E1 series stalled at z = {z}")))
}

/// Modified Lentz evaluation of the continued fraction for e^z E1(z).
fn exp_e1_cf(z: C64) -> Result<C64> {
    // Complex division squares the magnitude of the denominator, so the
    // Lentz floor must keep tiny^2 inside normal f64 range.
    const TINY: f64 = 1e-100;
    let tiny = C64::new(TINY, 0.0);
    let mut f = tiny;
    let mut c = f;
    let mut d = C64::new(0.0, 0.0);
    for j in 1..=600usize {
        // a_1 = 1, b_1 = z; for j >= 2: a_j = floor(j/2), b_j = 1 (j even), z (j odd).
        let a = if j == 1 { C64::new(1.0, 0.0) } else { C64::new((j / 2) as f64, 0.0) };
        let b = if j % 2 == 1 { z } else { C64::new(1.0, 0.0) };
        d = b + a * d;
        if d.norm() < 1e-290 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() < 1e-290 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-15 {
            return Ok(f);
        }
    }
    Err(Error::NonConvergence(format!(
        "E1 continued fraction stalled at z = {z}"
    )))
}

/// E1(z) on the principal branch.
pub fn exp_integral_e1(z: C64) -> Result<C64> {
    check_domain(z)?;
    if z.norm() <= 4.0 {
        e1_series(z)
    } else {
        // e^{-z} may underflow harmlessly; overflow (Re z very negative) is a
        // genuine range error for the unscaled value.
        if -z.re > 700.0 {
            return Err(Error::Overflow(format!("e^(-z) overflows in E1 at z = {z}")));
        }
        Ok((-z).exp() * exp_e1_cf(z)?)
    }
}

/// Scaled product e^z E1(z), finite throughout the cut plane.
pub(crate) fn exp_e1_scaled(z: C64) -> Result<C64> {
    check_domain(z)?;
    if z.norm() <= 4.0 {
        // |z| <= 4 keeps e^z within e^4; the product cannot overflow.
        Ok(z.exp() * e1_series(z)?)
    } else {
        exp_e1_cf(z)
    }
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use approx::assert_abs_diff_eq;

    #[test]
    fn value_at_one() {
        // E1(1) = 0.21938393439552027... (cross-checked below by quadrature).
        let v = exp_integral_e1(C64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.21938393439552027, epsilon = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(v.re, 0.2193839, epsilon = 1e-6);
    }

    #[test]
    fn quadrature_oracle_on_rays() {
        // E1(z) = ∫_1^∞ e^{-z t}/t dt; truncate where the tail is < 1e-200.
        for z in [C64::new(1.0, 0.0), C64::new(2.0, 1.5), C64::new(0.3, -2.0), C64::new(5.0, 3.0)] {
            let t_max = 460.0 / z.re.max(0.3);
            let oracle = integrate(
                |t| Ok((-z * t).exp() / t),
                1.0,
                t_max,
                1e-15,
                1e-14,
                40_000,
            )
            .unwrap()
            .value;
            let v = exp_integral_e1(z).unwrap();
            assert!((v - oracle).norm() < 1e-12 * oracle.norm().max(1.0), "z={z} v={v} oracle={oracle}");
        }
    }

    #[test]
    fn series_and_fraction_agree_on_the_seam() {
        for theta in [0.3f64, 1.2, 2.5, -0.7, -2.2] {
            let z = 4.0 * C64::new(theta.cos(), theta.sin());
            let a = e1_series(z).unwrap();
            let b = (-z).exp() * exp_e1_cf(z).unwrap();
            assert!((a - b).norm() < 1e-13 * a.norm(), "theta={theta}: {a} vs {b}");
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for z in [C64::new(0.8, 0.9), C64::new(6.0, -2.0), C64::new(0.1, 3.0)] {
            let a = exp_integral_e1(z).unwrap();
            let b = exp_integral_e1(z.conj()).unwrap();
            assert!((a.conj() - b).norm() < 1e-14 * a.norm().max(1e-10));
        }
    }

    #[test]
    fn asymptotic_regime() {
        // z e^z E1(z) -> 1 - 1/z + 2/z^2 - 6/z^3 + 24/z^4 for large z.
        let z = C64::new(200.0, 0.0);
        let v = z * exp_e1_scaled(z).unwrap();
        let asym = 1.0 - 1.0 / z.re + 2.0 / z.re.powi(2) - 6.0 / z.re.powi(3) + 24.0 / z.re.powi(4);
        assert_abs_diff_eq!(v.re, asym, epsilon = 5e-8);
        assert!((v.re - 1.0).abs() < 1e-2); // leading-order check
    }

    #[test]
    fn domain_errors() {
        assert!(exp_integral_e1(C64::new(0.0, 0.0)).is_err());
        assert!(exp_integral_e1(C64::new(-3.0, 0.0)).is_err());
        assert!(exp_integral_e1(C64::new(-3.0, 1e-6)).is_ok());
    }

    #[test]
    fn scaled_product_matches_unscaled() {
        for z in [C64::new(2.0, 0.5), C64::new(9.0, -4.0)] {
            let a = exp_e1_scaled(z).unwrap();
            let b = z.exp() * exp_integral_e1(z).unwrap();
            assert!((a - b).norm() < 1e-13 * a.norm());
        }
    }
}
