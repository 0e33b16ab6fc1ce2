//! Points of the symmetrized bidisc Γ and the tetrablock Ē, their
//! characteristic rational functions, and the structured singular value
//! for the diagonal structure on 2×2 matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det2, spectral_norm, CMat};
use crate::C64;

/// Denominators smaller than this are treated as poles.
pub const POLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerance {
    pub eps_psd: f64,
    pub eps_eq: f64,
    pub eps_member: f64,
    pub eps_rank: f64,
    pub boundary_grid_size: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_psd: 1e-9,
            eps_eq: 1e-12,
            eps_member: 1e-9,
            eps_rank: 1e-8,
            boundary_grid_size: 256,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_psd", self.eps_psd),
            ("eps_eq", self.eps_eq),
            ("eps_member", self.eps_member),
            ("eps_rank", self.eps_rank),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidTolerance(format!("{name} must be positive, got {v}")));
            }
        }
        if self.boundary_grid_size < 64 {
            return Err(Error::InvalidTolerance(format!(
                "boundary_grid_size must be at least 64, got {}",
                self.boundary_grid_size
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPoint {
    pub s: C64,
    pub p: C64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetraPoint {
    pub x1: C64,
    pub x2: C64,
    pub x3: C64,
}

impl GammaPoint {
    pub fn new(s: C64, p: C64) -> Self {
        GammaPoint { s, p }
    }

    /// Symmetrization (z + w, zw).
    pub fn from_pair(z: C64, w: C64) -> Self {
        GammaPoint { s: z + w, p: z * w }
    }
}

impl TetraPoint {
    pub fn new(x1: C64, x2: C64, x3: C64) -> Self {
        TetraPoint { x1, x2, x3 }
    }

    /// (a11, a22, det A) for a 2×2 matrix.
    pub fn from_matrix(a: &CMat) -> Self {
        TetraPoint { x1: a[(0, 0)], x2: a[(1, 1)], x3: det2(a) }
    }

    /// x1 x2 − x3; zero exactly on the "degenerate" (diagonal) locus.
    pub fn defect(&self) -> C64 {
        self.x1 * self.x2 - self.x3
    }

    pub fn as_array(&self) -> [C64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn dist(&self, other: &TetraPoint) -> f64 {
        (self.x1 - other.x1)
            .norm()
            .max((self.x2 - other.x2).norm())
            .max((self.x3 - other.x3).norm())
    }
}

/// Φ(z, s, p) = (2zp − s)/(2 − zs).
pub fn phi(z: C64, pt: &GammaPoint) -> Result<C64> {
    let den = C64::new(2.0, 0.0) - z * pt.s;
    if den.norm() < POLE_EPS {
        return Err(Error::Pole(format!("Phi at z = {z}")));
    }
    Ok((C64::new(2.0, 0.0) * z * pt.p - pt.s) / den)
}

/// Ψ(z, x) = (x3 z − x1)/(x2 z − 1).
pub fn psi(z: C64, x: &TetraPoint) -> Result<C64> {
    let den = x.x2 * z - 1.0;
    if den.norm() < POLE_EPS {
        return Err(Error::Pole(format!("Psi at z = {z}")));
    }
    Ok((x.x3 * z - x.x1) / den)
}

/// Υ(z, x) = (x3 z − x2)/(x1 z − 1).
pub fn upsilon(z: C64, x: &TetraPoint) -> Result<C64> {
    let den = x.x1 * z - 1.0;
    if den.norm() < POLE_EPS {
        return Err(Error::Pole(format!("Upsilon at z = {z}")));
    }
    Ok((x.x3 * z - x.x2) / den)
}

/// Supremum of |f| over the circle of radius `r`, sampled on `grid` points
/// and refined around the best sample by golden-section search. A pole hit
/// anywhere on the circle yields +∞.
pub(crate) fn circle_sup(r: f64, grid: usize, f: impl Fn(C64) -> Result<C64>) -> f64 {
    let h = std::f64::consts::TAU / grid as f64;
    let eval = |t: f64| match f(C64::from_polar(r, t)) {
        Ok(v) => v.norm(),
        Err(_) => f64::INFINITY,
    };
    let mut best = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for j in 0..grid {
        let v = eval(j as f64 * h);
        if v > best_val {
            best_val = v;
            best = j;
        }
    }
    if !best_val.is_finite() {
        return best_val;
    }
    let (mut a, mut b) = ((best as f64 - 1.0) * h, (best as f64 + 1.0) * h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (eval(x1), eval(x2));
    for _ in 0..80 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = eval(x2);
        }
    }
    best_val.max(f1).max(f2)
}

/// sup over |z| = 1 − eps of |Φ(z, s, p)|.
pub fn phi_sup(pt: &GammaPoint, tol: &Tolerance) -> f64 {
    circle_sup(1.0 - tol.eps_member, tol.boundary_grid_size, |z| phi(z, pt))
}

/// sup over the closed disc of |Ψ(·, x)|. Ψ is a Möbius map in z, so the
/// supremum is attained on the circle unless its pole 1/x2 lies in the
/// closed disc; the degenerate case x1 x2 = x3 makes Ψ constant x1.
pub fn psi_sup(x: &TetraPoint, grid: usize) -> f64 {
    if x.defect().norm() == 0.0 {
        return x.x1.norm();
    }
    if x.x2.norm() >= 1.0 {
        return f64::INFINITY;
    }
    circle_sup(1.0, grid, |z| psi(z, x))
}

pub fn in_closed_gamma(pt: &GammaPoint, tol: &Tolerance) -> bool {
    let eps = tol.eps_member;
    if pt.s.norm() > 2.0 + eps || pt.p.norm() > 1.0 + eps {
        return false;
    }
    phi_sup(pt, tol) <= 1.0 + eps
}

/// Roots of t² − s t + p, computed without cancellation.
pub fn gamma_roots(pt: &GammaPoint) -> (C64, C64) {
    let disc = (pt.s * pt.s - pt.p * 4.0).sqrt();
    let (a, b) = (pt.s + disc, pt.s - disc);
    let big = if a.norm() >= b.norm() { a } else { b } * 0.5;
    if big.norm() == 0.0 {
        return (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    }
    (big, pt.p / big)
}

pub fn in_gamma_distinguished_boundary(pt: &GammaPoint, tol: &Tolerance) -> bool {
    let (t1, t2) = gamma_roots(pt);
    (t1.norm() - 1.0).abs() <= tol.eps_member && (t2.norm() - 1.0).abs() <= tol.eps_member
}

/// Positive part of the closed-form tetrablock inequalities:
/// |x1|² + |x2|² − |x3|² + 2|x1x2 − x3| ≤ 1 and |x3| ≤ 1.
pub fn tetra_membership_residual(x: &TetraPoint) -> f64 {
    let lhs = x.x1.norm_sqr() + x.x2.norm_sqr() - x.x3.norm_sqr() + 2.0 * x.defect().norm();
    (lhs - 1.0).max(x.x3.norm() - 1.0).max(0.0)
}

pub fn in_closed_tetrablock(x: &TetraPoint, tol: &Tolerance) -> bool {
    tetra_membership_residual(x) <= tol.eps_member
}

pub fn in_tetra_distinguished_boundary(x: &TetraPoint, tol: &Tolerance) -> bool {
    let eps = tol.eps_member;
    (x.x1 - x.x2.conj() * x.x3).norm() <= eps
        && (x.x3.norm() - 1.0).abs() <= eps
        && x.x2.norm() <= 1.0 + eps
}

/// `n` points spread over the disc of radius `rmax` (Vogel spiral).
pub fn sunflower(n: usize, rmax: f64) -> Vec<C64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| C64::from_polar(rmax * ((k as f64 + 0.5) / n as f64).sqrt(), k as f64 * golden))
        .collect()
}

/// Polar grid of `angles` points on each of a fixed set of radii up to
/// `rmax`, plus the origin.
pub fn polar_grid(angles: usize, rmax: f64) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0)];
    for frac in [0.25, 0.5, 0.75, 0.9, 1.0] {
        for j in 0..angles {
            out.push(C64::from_polar(rmax * frac, std::f64::consts::TAU * j as f64 / angles as f64));
        }
    }
    out
}

/// Targets (w11, w22, det w) of the μ-synthesis reduction.
pub fn tetra_targets(w: &CMat, tol: &Tolerance) -> Result<TetraPoint> {
    if w.shape() != (2, 2) {
        return Err(Error::ShapeMismatch(format!("expected 2x2, got {:?}", w.shape())));
    }
    let x = TetraPoint::from_matrix(w);
    if x.defect().norm() < tol.eps_eq {
        return Err(Error::DegenerateTarget(format!("w11 w22 = det w for {x:?}")));
    }
    Ok(x)
}

/// Targets (tr w, det w) of the spectral reduction.
pub fn gamma_targets(w: &CMat, tol: &Tolerance) -> Result<GammaPoint> {
    if w.shape() != (2, 2) {
        return Err(Error::ShapeMismatch(format!("expected 2x2, got {:?}", w.shape())));
    }
    let d = w[(0, 0)] - w[(1, 1)];
    if d.norm() < tol.eps_eq && w[(0, 1)].norm() < tol.eps_eq && w[(1, 0)].norm() < tol.eps_eq {
        return Err(Error::ScalarMatrix);
    }
    Ok(GammaPoint::new(w[(0, 0)] + w[(1, 1)], det2(w)))
}

/// Structured singular value of a 2×2 matrix with respect to diagonal
/// perturbations, by bisection on the scaling t ↦ (a11/t, a22/t, det/t²).
pub fn mu_diag(a: &CMat) -> Result<f64> {
    if a.shape() != (2, 2) {
        return Err(Error::ShapeMismatch(format!("mu_diag expects 2x2, got {:?}", a.shape())));
    }
    if a.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NonConvergence("non-finite entries".into()));
    }
    let x = TetraPoint::from_matrix(a);
    if x.x1.norm() == 0.0 && x.x2.norm() == 0.0 && x.x3.norm() == 0.0 {
        return Ok(0.0);
    }
    // Condition (6) for (x1/t, x2/t, x3/t²) with the defect taken from the
    // unscaled point: rescaling it first costs √ε near tangency.
    let (a2, d, x3) = (x.x1.norm_sqr() + x.x2.norm_sqr(), x.defect().norm(), x.x3.norm());
    let inside = |t: f64| {
        let t2 = t * t;
        (a2 + 2.0 * d) / t2 - (x3 / t2) * (x3 / t2) <= 1.0 && x3 / t2 <= 1.0
    };
    let mut hi = 2.0 * spectral_norm(a) + 1.0;
    if !inside(hi) {
        return Err(Error::NonConvergence(format!("upper bracket {hi} not in the tetrablock")));
    }
    let mut lo = 0.0;
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(hi);
        }
        if inside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NonConvergence("bisection exhausted".into()))
}
