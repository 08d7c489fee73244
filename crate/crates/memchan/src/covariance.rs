//! Covariance matrices of one- and two-mode Gaussian states and their
//! symplectic values.
//!
//! Conventions: hbar = 1, vacuum quadrature variance 1/2, two-mode matrices
//! assembled in the quadrature ordering `[q1, p1, q2, p2]`. A state is
//! physical when every symplectic value is at least 1/2.

use crate::error::{Error, Result};

/// Vacuum quadrature variance; also the lower bound on symplectic values.
pub const VACUUM_SYMPLECTIC: f64 = 0.5;

/// Symplectic values inside `[1/2 - SYMPLECTIC_CLIP, 1/2]` are snapped to
/// exactly 1/2 so that pure states at the boundary survive round-off.
pub const SYMPLECTIC_CLIP: f64 = 1e-9;

/// Relative dead-band for the biquadratic discriminant: values whose
/// magnitude is below `DISC_TOL * max(1, scale^2)` are treated as an exact
/// double degeneracy, where `scale` is the magnitude of the coefficient
/// computation.
pub const DISC_TOL: f64 = 1e-12;

/// Exact product split: returns `(p, e)` with `a * b = p + e`.
#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

/// 2x2 determinant `a*d - b*c` with a compensated correction term
/// (Kahan's algorithm); accurate to ~1.5 ulp even under heavy cancellation.
#[inline]
pub(crate) fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let w = b * c;
    let e = f64::mul_add(b, c, -w);
    let f = f64::mul_add(a, d, -w);
    f - e
}

/// Neumaier-compensated sum of a short list of addends.
fn compensated_sum(terms: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

fn clamp_to_vacuum(lambda: f64) -> f64 {
    if (VACUUM_SYMPLECTIC - SYMPLECTIC_CLIP..VACUUM_SYMPLECTIC).contains(&lambda) {
        VACUUM_SYMPLECTIC
    } else {
        lambda
    }
}

/// Determinant of a 4x4 matrix via LU decomposition with partial pivoting.
#[allow(clippy::needless_range_loop)]
pub(crate) fn det4(mut m: [[f64; 4]; 4]) -> f64 {
    let mut det = 1.0;
    for col in 0..4 {
        let mut pivot = col;
        for row in col + 1..4 {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..4 {
            let factor = m[row][col] / m[col][col];
            for k in col + 1..4 {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    det
}

fn det3(m: &[[f64; 4]; 4]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Result of a physicality check: whether all symplectic values clear the
/// vacuum limit, plus the signed margin `min(lambda) - 1/2`.
///
/// Inputs that are not positive definite report `physical = false` with a
/// margin of negative infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Physicality {
    pub physical: bool,
    pub margin: f64,
}

impl Physicality {
    fn from_min_value(min_lambda: f64) -> Self {
        let margin = min_lambda - VACUUM_SYMPLECTIC;
        Physicality {
            physical: margin >= -SYMPLECTIC_CLIP,
            margin,
        }
    }

    fn unphysical() -> Self {
        Physicality {
            physical: false,
            margin: f64::NEG_INFINITY,
        }
    }
}

/// Symmetric second-moment matrix of a single mode's quadratures (q, p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonoCovariance {
    /// Variance of q.
    pub vqq: f64,
    /// Variance of p.
    pub vpp: f64,
    /// Symmetrized cross term (<qp + pq>)/2.
    pub vqp: f64,
}

impl MonoCovariance {
    pub fn new(vqq: f64, vpp: f64, vqp: f64) -> Self {
        MonoCovariance { vqq, vpp, vqp }
    }

    /// Vacuum state: diag(1/2, 1/2).
    pub fn vacuum() -> Self {
        MonoCovariance::new(0.5, 0.5, 0.0)
    }

    /// Thermal state with mean photon number `n`: (n + 1/2) * identity.
    pub fn thermal(n: f64) -> Self {
        MonoCovariance::new(n + 0.5, n + 0.5, 0.0)
    }

    pub fn determinant(&self) -> f64 {
        det2(self.vqq, self.vqp, self.vqp, self.vpp)
    }

    /// The positive symplectic value `sqrt(det)`.
    ///
    /// Errors when the determinant is not positive. Values within
    /// [`SYMPLECTIC_CLIP`] below 1/2 are snapped to 1/2.
    pub fn symplectic_value(&self) -> Result<f64> {
        let det = self.determinant();
        if det <= 0.0 {
            return Err(Error::NotPositiveDefinite(det));
        }
        Ok(clamp_to_vacuum(det.sqrt()))
    }

    pub fn physicality(&self) -> Physicality {
        if self.vqq <= 0.0 || self.determinant() <= 0.0 {
            return Physicality::unphysical();
        }
        match self.symplectic_value() {
            Ok(lambda) => Physicality::from_min_value(lambda),
            Err(_) => Physicality::unphysical(),
        }
    }
}

/// The two positive symplectic values of a two-mode covariance matrix,
/// ordered `larger >= smaller > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticPair {
    pub larger: f64,
    pub smaller: f64,
}

impl SymplecticPair {
    pub fn new(a: f64, b: f64) -> Self {
        SymplecticPair {
            larger: a.max(b),
            smaller: a.min(b),
        }
    }

    /// Entropy in bits: the sum of `g(lambda - 1/2)` over both values.
    pub fn entropy(&self) -> Result<f64> {
        crate::entropy::entropy_of_state(&[self.larger, self.smaller])
    }
}

/// Two-mode covariance matrix in block form: per-mode blocks plus the
/// 2x2 cross block `[<q1 q2>, <q1 p2>; <p1 q2>, <p1 p2>]` (symmetrized
/// products).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BimodalCovariance {
    pub mode1: MonoCovariance,
    pub mode2: MonoCovariance,
    pub cross: [[f64; 2]; 2],
}

impl BimodalCovariance {
    pub fn new(mode1: MonoCovariance, mode2: MonoCovariance, cross: [[f64; 2]; 2]) -> Self {
        BimodalCovariance {
            mode1,
            mode2,
            cross,
        }
    }

    /// Two uncorrelated vacuum modes.
    pub fn vacuum_pair() -> Self {
        BimodalCovariance::new(MonoCovariance::vacuum(), MonoCovariance::vacuum(), [[0.0; 2]; 2])
    }

    /// The full 4x4 matrix in the ordering [q1, p1, q2, p2].
    pub fn assembled(&self) -> [[f64; 4]; 4] {
        let g1 = &self.mode1;
        let g2 = &self.mode2;
        let c = &self.cross;
        [
            [g1.vqq, g1.vqp, c[0][0], c[0][1]],
            [g1.vqp, g1.vpp, c[1][0], c[1][1]],
            [c[0][0], c[1][0], g2.vqq, g2.vqp],
            [c[0][1], c[1][1], g2.vqp, g2.vpp],
        ]
    }

    /// Rebuilds the block form from a full 4x4 matrix, symmetrizing
    /// round-off asymmetry.
    pub fn from_assembled(m: [[f64; 4]; 4]) -> Self {
        BimodalCovariance {
            mode1: MonoCovariance::new(m[0][0], m[1][1], 0.5 * (m[0][1] + m[1][0])),
            mode2: MonoCovariance::new(m[2][2], m[3][3], 0.5 * (m[2][3] + m[3][2])),
            cross: [
                [0.5 * (m[0][2] + m[2][0]), 0.5 * (m[0][3] + m[3][0])],
                [0.5 * (m[1][2] + m[2][1]), 0.5 * (m[1][3] + m[3][1])],
            ],
        }
    }

    /// Blockwise sum.
    pub fn add(&self, other: &BimodalCovariance) -> BimodalCovariance {
        BimodalCovariance {
            mode1: MonoCovariance::new(
                self.mode1.vqq + other.mode1.vqq,
                self.mode1.vpp + other.mode1.vpp,
                self.mode1.vqp + other.mode1.vqp,
            ),
            mode2: MonoCovariance::new(
                self.mode2.vqq + other.mode2.vqq,
                self.mode2.vpp + other.mode2.vpp,
                self.mode2.vqp + other.mode2.vqp,
            ),
            cross: [
                [
                    self.cross[0][0] + other.cross[0][0],
                    self.cross[0][1] + other.cross[0][1],
                ],
                [
                    self.cross[1][0] + other.cross[1][0],
                    self.cross[1][1] + other.cross[1][1],
                ],
            ],
        }
    }

    /// Sum of block determinants `det(mode1) + det(mode2) + 2 det(cross)`,
    /// the coefficient of the quadratic term of the symplectic biquadratic.
    ///
    /// Accumulated from exact product splits so that the heavy cancellation
    /// in near-pure states at large photon numbers does not destroy the
    /// result. Also returns the magnitude scale of the addends, used to
    /// size the discriminant dead-band.
    fn trace_invariant(&self) -> (f64, f64) {
        let products = [
            two_product(self.mode1.vqq, self.mode1.vpp),
            two_product(-self.mode1.vqp, self.mode1.vqp),
            two_product(self.mode2.vqq, self.mode2.vpp),
            two_product(-self.mode2.vqp, self.mode2.vqp),
            two_product(2.0 * self.cross[0][0], self.cross[1][1]),
            two_product(-2.0 * self.cross[0][1], self.cross[1][0]),
        ];
        let mut terms = [0.0; 12];
        let mut scale = 0.0;
        for (i, (head, tail)) in products.iter().enumerate() {
            terms[2 * i] = *head;
            terms[2 * i + 1] = *tail;
            scale += head.abs();
        }
        (compensated_sum(&terms), scale)
    }

    /// Determinant of the assembled 4x4 matrix.
    pub fn determinant(&self) -> f64 {
        det4(self.assembled())
    }

    /// The positive symplectic values, from the biquadratic
    /// `lambda^4 - Delta lambda^2 + det = 0` with
    /// `Delta = det(mode1) + det(mode2) + 2 det(cross)`:
    /// `lambda_{+,-} = sqrt((Delta +- sqrt(Delta^2 - 4 det)) / 2)`.
    ///
    /// A discriminant within the scaled dead-band is treated as zero
    /// (doubly degenerate spectrum); one below the band signals a
    /// non-physical matrix. Values within [`SYMPLECTIC_CLIP`] below 1/2
    /// are snapped to 1/2.
    pub fn symplectic_values(&self) -> Result<SymplecticPair> {
        let (delta, scale) = self.trace_invariant();
        let det = self.determinant();
        if det <= 0.0 {
            return Err(Error::NotPositiveDefinite(det));
        }
        if delta <= 0.0 {
            return Err(Error::NonPhysical {
                what: "trace invariant",
                value: delta,
            });
        }
        let disc = f64::mul_add(delta, delta, -4.0 * det);
        let tol = DISC_TOL * (scale * scale).max(1.0);
        let root = if disc.abs() <= tol {
            0.0
        } else if disc < 0.0 {
            return Err(Error::NonPhysical {
                what: "biquadratic discriminant",
                value: disc,
            });
        } else {
            disc.sqrt()
        };
        let larger = clamp_to_vacuum((0.5 * (delta + root)).sqrt());
        let smaller = clamp_to_vacuum((0.5 * (delta - root)).sqrt());
        Ok(SymplecticPair { larger, smaller })
    }

    /// Positive definiteness of the assembled matrix (Sylvester's criterion).
    pub fn is_positive_definite(&self) -> bool {
        let m = self.assembled();
        m[0][0] > 0.0
            && det2(m[0][0], m[0][1], m[1][0], m[1][1]) > 0.0
            && det3(&m) > 0.0
            && det4(m) > 0.0
    }

    pub fn physicality(&self) -> Physicality {
        if !self.is_positive_definite() {
            return Physicality::unphysical();
        }
        match self.symplectic_values() {
            Ok(pair) => Physicality::from_min_value(pair.smaller),
            Err(_) => Physicality::unphysical(),
        }
    }
}
