//! Honeycomb lattice geometry: basis vectors, reciprocal lattice, Dirac
//! points, Brillouin-zone reduction, and hexagonal shell enumeration.
//!
//! The direct lattice is triangular with unit-length basis vectors
//! a₁ = (√3/2, -1/2), a₂ = (-√3/2, -1/2), completed by a₃ = -a₁ - a₂ = (0, 1)
//! to the symmetric triple. Sites are R = j₁a₁ + j₂a₂ with
//! |R|² = j₁² + j₂² - j₁j₂ (a Loeschian number).
//!
//! The reciprocal lattice Λ* is spanned by b₁ = (1/√3, 1), b₂ = (1/√3, -1),
//! with b₃ = -b₁ - b₂ the symmetric third vector. The pairing with the
//! direct basis is anti-diagonal: a₁·b₂ = 1, a₂·b₁ = -1, aᵢ·bᵢ = 0. The
//! combinations g₁ = b₂, g₂ = -b₁ (see [`LatticeGeometry2D::dual`]) satisfy
//! the biorthogonality aᵢ·gⱼ = δᵢⱼ used for coordinate conversions.
//!
//! The two sublattices are offset by δ = (-1/√3, 0); the Dirac points sit at
//! the Brillouin-zone corners β_K = (2b₁ + b₂)/3 = (1/√3, 1/3) and
//! β_K' = -β_K.
//!
//! Shell enumeration groups lattice sites into hexagonal rings: ring J ≥ 1
//! holds the 6J sites with hex-norm max(|j₁|, |j₂|, |j₁-j₂|) = J, whose
//! squared radii span [3J²/4, J²]. Both Ewald sums walk these rings; the
//! reciprocal lattice shares the integer ring table because
//! |mb₁ + nb₂|² = (4/3)(m² + n² - mn) has the same quadratic form.

use crate::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

// ============================================================================
// Plane vectors
// ============================================================================

/// Cartesian vector in the lattice plane (units of the lattice constant).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

// ============================================================================
// Lattice geometry
// ============================================================================

/// Fixed honeycomb geometry shared by all 2D operations.
#[derive(Debug, Clone)]
pub struct LatticeGeometry2D {
    /// Direct basis a₁, a₂ plus the symmetric third vector a₃ = -a₁-a₂.
    pub a: [Vec2; 3],
    /// Reciprocal basis b₁, b₂ plus b₃ = -b₁-b₂.
    pub b: [Vec2; 3],
    /// Sublattice offset δ (Cartesian).
    pub delta_vec: Vec2,
    /// Dirac point β_K = (2b₁ + b₂)/3.
    pub k_point: Vec2,
    /// Opposite Dirac point β_K' = -β_K.
    pub kprime_point: Vec2,
}

/// The lattice geometry (built once, invariants checked).
pub fn geometry() -> &'static LatticeGeometry2D {
    static GEO: OnceLock<LatticeGeometry2D> = OnceLock::new();
    GEO.get_or_init(|| {
        let g = LatticeGeometry2D::build();
        g.check_invariants().expect("honeycomb geometry invariants");
        g
    })
}

impl LatticeGeometry2D {
    fn build() -> Self {
        let s3 = 3.0f64.sqrt();
        let a1 = Vec2::new(s3 / 2.0, -0.5);
        let a2 = Vec2::new(-s3 / 2.0, -0.5);
        let a3 = -(a1 + a2);
        let b1 = Vec2::new(1.0 / s3, 1.0);
        let b2 = Vec2::new(1.0 / s3, -1.0);
        let b3 = -(b1 + b2);
        let k_point = (2.0 * b1 + b2) * (1.0 / 3.0);
        Self {
            a: [a1, a2, a3],
            b: [b1, b2, b3],
            delta_vec: Vec2::new(-1.0 / s3, 0.0),
            k_point,
            kprime_point: -k_point,
        }
    }

    /// Dual pair (g₁, g₂) with aᵢ·gⱼ = δᵢⱼ: g₁ = b₂, g₂ = -b₁.
    pub fn dual(&self) -> [Vec2; 2] {
        [self.b[1], -self.b[0]]
    }

    /// Reciprocal-basis coefficients (m, n) of β = m b₁ + n b₂.
    pub fn reciprocal_coords(&self, beta: Vec2) -> (f64, f64) {
        // β·a₁ = n and β·a₂ = -m by the anti-diagonal pairing.
        (-beta.dot(self.a[1]), beta.dot(self.a[0]))
    }

    /// Reduce β to the first Brillouin zone (Wigner-Seitz cell of Λ*).
    ///
    /// The result is the representative β - G of minimal norm; on-boundary
    /// ties are broken deterministically toward larger x, then larger y.
    pub fn reduce_to_fbz(&self, beta: Vec2) -> Vec2 {
        let (m, n) = self.reciprocal_coords(beta);
        let centered = beta - (m.round() * self.b[0] + n.round() * self.b[1]);
        let mut best = centered;
        let mut best_n2 = centered.norm2();
        for i in -1..=1 {
            for j in -1..=1 {
                let cand = centered - ((i as f64) * self.b[0] + (j as f64) * self.b[1]);
                let n2 = cand.norm2();
                let tie = (n2 - best_n2).abs() < 1e-12;
                if (n2 < best_n2 - 1e-12)
                    || (tie && (cand.x > best.x + 1e-12 || ((cand.x - best.x).abs() < 1e-12 && cand.y > best.y + 1e-12)))
                {
                    best = cand;
                    best_n2 = n2;
                }
            }
        }
        best
    }

    /// Cheap geometric identities; used at construction and by `validate`.
    pub fn check_invariants(&self) -> Result<()> {
        let tol = 1e-14;
        let fail = |what: &str| Err(Error::Domain(format!("geometry invariant violated: {what}")));
        for v in &self.a {
            if (v.norm() - 1.0).abs() > tol {
                return fail("|a_i| = 1");
            }
        }
        if (self.a[0] + self.a[1] + self.a[2]).norm() > tol || (self.b[0] + self.b[1] + self.b[2]).norm() > tol {
            return fail("symmetric triples sum to zero");
        }
        // Anti-diagonal pairing of the stored bases.
        let pairs = [
            (self.a[0].dot(self.b[1]), 1.0),
            (self.a[1].dot(self.b[0]), -1.0),
            (self.a[0].dot(self.b[0]), 0.0),
            (self.a[1].dot(self.b[1]), 0.0),
        ];
        for (got, want) in pairs {
            if (got - want).abs() > tol {
                return fail("a_i · b_j anti-diagonal pairing");
            }
        }
        let [g1, g2] = self.dual();
        for (i, ai) in self.a[..2].iter().enumerate() {
            for (j, gj) in [g1, g2].iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                if (ai.dot(*gj) - want).abs() > tol {
                    return fail("a_i · g_j = delta_ij");
                }
            }
        }
        if (self.k_point + self.kprime_point).norm() > tol {
            return fail("K = -K'");
        }
        if (self.delta_vec.norm2() - 1.0 / 3.0).abs() > tol {
            return fail("|delta|^2 = 1/3");
        }
        Ok(())
    }
}

// ============================================================================
// Hexagonal shells
// ============================================================================

/// Largest hexagonal ring index kept in the shared shell table.
pub(crate) const MAX_HEX_RING: usize = 96;

/// One hexagonal ring of integer coefficient pairs.
#[derive(Debug, Clone)]
pub(crate) struct HexRing {
    /// Sites (j₁, j₂) with hex-norm equal to the ring index.
    pub sites: Vec<(i32, i32)>,
    /// Minimal j₁² + j₂² - j₁j₂ on the ring (direct-lattice |R|²).
    pub min_norm2: f64,
}

/// Quadratic form j₁² + j₂² - j₁j₂ = |j₁a₁ + j₂a₂|².
pub(crate) fn loeschian(j1: i64, j2: i64) -> i64 {
    j1 * j1 + j2 * j2 - j1 * j2
}

/// Shared table of hexagonal rings 0..=MAX_HEX_RING.
pub(crate) fn hex_rings() -> &'static [HexRing] {
    static RINGS: OnceLock<Vec<HexRing>> = OnceLock::new();
    RINGS.get_or_init(|| {
        let jm = MAX_HEX_RING as i32;
        let mut rings: Vec<HexRing> = (0..=MAX_HEX_RING)
            .map(|_| HexRing { sites: Vec::new(), min_norm2: f64::INFINITY })
            .collect();
        for j1 in -jm..=jm {
            for j2 in -jm..=jm {
                let h = j1.abs().max(j2.abs()).max((j1 - j2).abs()) as usize;
                if h <= MAX_HEX_RING {
                    let ring = &mut rings[h];
                    ring.sites.push((j1, j2));
                    ring.min_norm2 = ring.min_norm2.min(loeschian(j1 as i64, j2 as i64) as f64);
                }
            }
        }
        rings[0].min_norm2 = 0.0;
        rings
    })
}

// ============================================================================
// Tests
// ============================================================================
