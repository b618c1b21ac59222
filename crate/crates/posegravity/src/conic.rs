//! Projective conic machinery over the x-y plane.
//!
//! The constrained minimization of the loss conic over the unit circle is
//! solved geometrically: form the derivative conic encoding the stationarity
//! condition, pick the degenerate member of its pencil with the unit circle
//! (a single real root of a depressed monic cubic), split that degenerate
//! conic into lines, and intersect the lines with the circle.

use crate::error::ConicError;
use crate::math::{Mat3, Vec3};

/// Degenerate-conic determinant test, relative to `max|entry|³`.
const DEGENERATE_DET_TOL: f64 = 1e-8;
/// Adjugate treated as zero (rank-1 conic) below this times `max|entry|²`.
const ADJUGATE_ZERO_TOL: f64 = 1e-10;
/// Two intersection parameters closer than this collapse to one point.
const ROOT_DEDUP_TOL: f64 = 1e-9;

/// Symmetric 3x3 conic matrix; only the six independent entries are stored so
/// symmetry is exact by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic {
    pub c00: f64,
    pub c01: f64,
    pub c02: f64,
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
}

/// The unit circle `x² + y² - 1 = 0` as a conic.
pub const UNIT_CIRCLE: Conic = Conic {
    c00: 1.0,
    c01: 0.0,
    c02: 0.0,
    c11: 1.0,
    c12: 0.0,
    c22: -1.0,
};

impl Conic {
    pub const ZERO: Conic = Conic {
        c00: 0.0,
        c01: 0.0,
        c02: 0.0,
        c11: 0.0,
        c12: 0.0,
        c22: 0.0,
    };

    pub fn new(c00: f64, c01: f64, c02: f64, c11: f64, c12: f64, c22: f64) -> Self {
        Conic {
            c00,
            c01,
            c02,
            c11,
            c12,
            c22,
        }
    }

    /// Rank-1 conic `l lᵀ`.
    pub fn from_outer(l: Vec3) -> Self {
        Conic {
            c00: l.x * l.x,
            c01: l.x * l.y,
            c02: l.x * l.z,
            c11: l.y * l.y,
            c12: l.y * l.z,
            c22: l.z * l.z,
        }
    }

    /// Symmetric part of an arbitrary matrix, killing asymmetric rounding.
    pub fn from_symmetrized(m: &Mat3) -> Self {
        Conic {
            c00: m.0[0][0],
            c01: 0.5 * (m.0[0][1] + m.0[1][0]),
            c02: 0.5 * (m.0[0][2] + m.0[2][0]),
            c11: m.0[1][1],
            c12: 0.5 * (m.0[1][2] + m.0[2][1]),
            c22: m.0[2][2],
        }
    }

    pub fn to_matrix(&self) -> Mat3 {
        Mat3::new([
            [self.c00, self.c01, self.c02],
            [self.c01, self.c11, self.c12],
            [self.c02, self.c12, self.c22],
        ])
    }

    /// Quadratic form at `r = (x, y, 1)`.
    pub fn quadform(&self, x: f64, y: f64) -> f64 {
        self.c00 * x * x
            + self.c11 * y * y
            + 2.0 * (self.c01 * x * y + self.c02 * x + self.c12 * y)
            + self.c22
    }

    pub fn max_abs(&self) -> f64 {
        self.c00
            .abs()
            .max(self.c01.abs())
            .max(self.c02.abs())
            .max(self.c11.abs())
            .max(self.c12.abs())
            .max(self.c22.abs())
    }

    pub fn det(&self) -> f64 {
        let g = self.adjugate();
        self.c00 * g.c00 + self.c01 * g.c01 + self.c02 * g.c02
    }

    /// Adjugate of a symmetric matrix, itself symmetric.
    pub fn adjugate(&self) -> Conic {
        Conic {
            c00: self.c11 * self.c22 - self.c12 * self.c12,
            c01: self.c02 * self.c12 - self.c01 * self.c22,
            c02: self.c01 * self.c12 - self.c02 * self.c11,
            c11: self.c00 * self.c22 - self.c02 * self.c02,
            c12: self.c01 * self.c02 - self.c00 * self.c12,
            c22: self.c00 * self.c11 - self.c01 * self.c01,
        }
    }

    pub fn scaled(&self, s: f64) -> Conic {
        Conic {
            c00: self.c00 * s,
            c01: self.c01 * s,
            c02: self.c02 * s,
            c11: self.c11 * s,
            c12: self.c12 * s,
            c22: self.c22 * s,
        }
    }

    /// Eigenvalue magnitudes sorted descending (the singular values of a
    /// symmetric matrix).
    pub fn singular_values(&self) -> [f64; 3] {
        let e = self.to_matrix().symmetric_eigenvalues();
        let mut s = [e[0].abs(), e[1].abs(), e[2].abs()];
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        s
    }

    /// `σ₂ / σ₁`, or zero for the zero conic. Small values indicate numerical
    /// rank 1.
    pub fn singular_value_ratio(&self) -> f64 {
        let s = self.singular_values();
        if s[0] > 0.0 {
            s[1] / s[0]
        } else {
            0.0
        }
    }
}

/// Homogeneous line `a x + b y + c = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2H {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line2H {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Line2H { a, b, c }
    }

    pub fn from_vec(v: Vec3) -> Self {
        Line2H {
            a: v.x,
            b: v.y,
            c: v.z,
        }
    }

    pub fn as_vec(&self) -> Vec3 {
        Vec3::new(self.a, self.b, self.c)
    }

    /// Signed residual `a x + b y + c` at a plane point.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.a * x + self.b * y + self.c
    }
}

/// A point on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    pub x: f64,
    pub y: f64,
}

impl CirclePoint {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!((x * x + y * y - 1.0).abs() < 1e-9);
        CirclePoint { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        CirclePoint {
            x: theta.cos(),
            y: theta.sin(),
        }
    }

    pub fn angle(&self) -> f64 {
        self.y.atan2(self.x)
    }
}

/// Conic encoding the stationarity condition of the circle-constrained
/// minimization: `rᵀ Λ r = y ∂f/∂x - x ∂f/∂y` for `f(x, y) = rᵀ Ω r`.
///
/// `Λ` is trace-free with `Λ₂₂ = 0`, so it always passes through the origin;
/// for generic `Ω` it is a hyperbola.
pub fn derivative_conic(omega: &Conic) -> Conic {
    Conic {
        c00: -2.0 * omega.c01,
        c01: omega.c00 - omega.c11,
        c02: -omega.c12,
        c11: 2.0 * omega.c01,
        c12: omega.c02,
        c22: 0.0,
    }
}

/// One real root of the depressed monic cubic `γ³ + a γ + b = 0`.
///
/// Cardano for a single real root, the trigonometric branch when all three
/// roots are real, then one guarded Newton polish step. A real root always
/// exists; any real root works for selecting a degenerate pencil member.
pub fn solve_depressed_cubic(a: f64, b: f64) -> f64 {
    let mut root = if a == 0.0 {
        -b.cbrt()
    } else {
        let half_b = 0.5 * b;
        let disc = half_b * half_b + (a / 3.0) * (a / 3.0) * (a / 3.0);
        if disc > 0.0 {
            // One real root. Evaluate the larger-magnitude cube root first and
            // recover the other from u·v = -a/3 to dodge cancellation.
            let sq = disc.sqrt();
            if b <= 0.0 {
                let u = (-half_b + sq).cbrt();
                u - a / (3.0 * u)
            } else {
                let v = (-half_b - sq).cbrt();
                v - a / (3.0 * v)
            }
        } else {
            // Three real roots (requires a < 0); take the k = 0 branch.
            let m = 2.0 * (-a / 3.0).sqrt();
            let arg = (3.0 * b / (a * m)).clamp(-1.0, 1.0);
            m * (arg.acos() / 3.0).cos()
        }
    };
    let fp = 3.0 * root * root + a;
    if fp != 0.0 && fp.is_finite() {
        let f = (root * root + a) * root + b;
        let step = f / fp;
        if step.is_finite() {
            root -= step;
        }
    }
    root
}

/// Coefficients `(a, b)` of the degeneracy cubic for the pencil
/// `Σ(γ) = Λ + γ Φ` with `Φ` the unit circle: `det Σ(γ) = -(γ³ + a γ + b)`.
///
/// Valid for `Λ` produced by [`derivative_conic`] (trace-free, `Λ₂₂ = 0`).
pub fn pencil_coefficients(lambda: &Conic) -> (f64, f64) {
    let a = lambda.c02 * lambda.c02 + lambda.c12 * lambda.c12
        - lambda.c00 * lambda.c00
        - lambda.c01 * lambda.c01;
    let b = lambda.c00 * (lambda.c12 * lambda.c12 - lambda.c02 * lambda.c02)
        - 2.0 * lambda.c01 * lambda.c02 * lambda.c12;
    (a, b)
}

/// Member `Λ + γ Φ` of the pencil with the unit circle.
pub fn pencil_member(lambda: &Conic, gamma: f64) -> Conic {
    Conic {
        c00: lambda.c00 + gamma,
        c01: lambda.c01,
        c02: lambda.c02,
        c11: lambda.c11 + gamma,
        c12: lambda.c12,
        c22: lambda.c22 - gamma,
    }
}

/// Lines constituting a degenerate conic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecomposedConic {
    /// Rank 1: a single (double) line with `Σ ∝ l lᵀ`.
    OneLine(Line2H),
    /// Rank 2: a pair of lines with `Σ ∝ (l₁ l₂ᵀ + l₂ l₁ᵀ) / 2`.
    TwoLines(Line2H, Line2H),
}

/// Split a rank-deficient conic into its lines.
///
/// The conic's rank is read off its adjugate: a zero adjugate means rank 1
/// and a row of `Σ` is the (double) line; otherwise the adjugate is rank 1
/// and a skew correction built from its dominant row turns `Σ` into a rank-1
/// matrix whose row/column are the two lines.
pub fn decompose_conic(sigma: &Conic) -> Result<DecomposedConic, ConicError> {
    let scale = sigma.max_abs();
    if scale == 0.0 || !scale.is_finite() {
        return Err(ConicError::ZeroConic);
    }
    if sigma.det().abs() >= DEGENERATE_DET_TOL * scale * scale * scale {
        return Err(ConicError::NotDegenerate);
    }

    let g = sigma.adjugate();
    // Largest-magnitude diagonal adjugate entry. For an exact degenerate
    // symmetric conic the adjugate is ±q qᵀ, so the diagonal dominates.
    let diag = [g.c00, g.c11, g.c22];
    let (beta_idx, beta) = diag
        .iter()
        .copied()
        .enumerate()
        .max_by(|(_, x), (_, y)| x.abs().partial_cmp(&y.abs()).unwrap())
        .unwrap();

    // beta > 0 means -beta < 0: a real line pair would have a non-positive
    // adjugate diagonal, so this is a (near-)rank-1 conic observed through
    // rounding. Clamp toward zero and fall through to the rank-1 branch.
    if g.max_abs() < ADJUGATE_ZERO_TOL * scale * scale || beta >= 0.0 {
        let m = sigma.to_matrix();
        let row = (0..3)
            .map(|i| m.row(i))
            .max_by(|p, q| p.norm_squared().partial_cmp(&q.norm_squared()).unwrap())
            .unwrap();
        if row.norm_squared() == 0.0 {
            return Err(ConicError::ZeroConic);
        }
        return Ok(DecomposedConic::OneLine(Line2H::from_vec(row)));
    }

    let gm = g.to_matrix();
    let z = gm.row(beta_idx) * (1.0 / (-beta).sqrt());
    let h = sigma.to_matrix() + Mat3::cross_matrix(z);

    // Row and column of the largest entry of the rank-1 matrix H.
    let (mut bi, mut bj, mut best) = (0, 0, -1.0);
    for i in 0..3 {
        for j in 0..3 {
            let v = h.0[i][j].abs();
            if v > best {
                best = v;
                bi = i;
                bj = j;
            }
        }
    }
    if best == 0.0 {
        return Err(ConicError::ZeroConic);
    }
    Ok(DecomposedConic::TwoLines(
        Line2H::from_vec(h.row(bi)),
        Line2H::from_vec(h.col(bj)),
    ))
}

/// Real intersections of a line with the unit circle: zero, one (tangency),
/// or two points.
///
/// Solved as a quadratic in the coordinate with the larger line coefficient;
/// the root pair is computed with the stable `q = -(β + sign(β)√disc)/2`
/// pairing so the smaller root comes from `γ/q` rather than a cancelling
/// subtraction.
pub fn intersect_unit_circle(line: &Line2H) -> Result<Vec<CirclePoint>, ConicError> {
    if line.a == 0.0 && line.b == 0.0 {
        return Err(ConicError::LineAtInfinity);
    }
    let n2 = line.a * line.a + line.b * line.b;

    let (alpha, beta, gamma) = if line.b.abs() >= line.a.abs() {
        (n2, 2.0 * line.a * line.c, line.c * line.c - line.b * line.b)
    } else {
        (n2, 2.0 * line.b * line.c, line.c * line.c - line.a * line.a)
    };

    let disc = beta * beta - 4.0 * alpha * gamma;
    if disc < 0.0 {
        return Ok(Vec::new());
    }
    let sq = disc.sqrt();
    let q = -0.5 * (beta + sq.copysign(if beta == 0.0 { 1.0 } else { beta }));
    let (t0, t1) = if q != 0.0 {
        (q / alpha, gamma / q)
    } else {
        (0.0, 0.0)
    };

    let mut out = Vec::with_capacity(2);
    let mut push = |t: f64| {
        let (x, y) = if line.b.abs() >= line.a.abs() {
            (t, -(line.a * t + line.c) / line.b)
        } else {
            (-(line.b * t + line.c) / line.a, t)
        };
        out.push(CirclePoint { x, y });
    };
    push(t0);
    if (t1 - t0).abs() > ROOT_DEDUP_TOL {
        push(t1);
    }
    Ok(out)
}

/// Point on the unit circle closest to the line, i.e. the minimizer of the
/// rank-1 loss `(lᵀr)²` over the circle when the line misses it.
///
/// Of `±(a, b)/√(a² + b²)` the candidate with the smaller `|a x + b y + c|`
/// wins; ties keep `(-a, -b)`.
pub fn closest_circle_point(line: &Line2H) -> Result<CirclePoint, ConicError> {
    let n = (line.a * line.a + line.b * line.b).sqrt();
    if n == 0.0 || n.is_nan() {
        return Err(ConicError::LineAtInfinity);
    }
    let cand = CirclePoint {
        x: -line.a / n,
        y: -line.b / n,
    };
    let flipped = CirclePoint {
        x: -cand.x,
        y: -cand.y,
    };
    if line.eval(flipped.x, flipped.y).abs() < line.eval(cand.x, cand.y).abs() {
        Ok(flipped)
    } else {
        Ok(cand)
    }
}
