//! Linear fractional transformations, transfer-function realizations
//! F(λ) = A + Bλ(I − Dλ)⁻¹C of 2×2 Schur-class functions, and completion
//! of a partial contraction from vector data.

use crate::domains::POLE_EPS;
use crate::error::{Error, Result};
use crate::hardy::{poly, EvaluableFunction, RationalFunction};
use crate::linalg::{clip_singular_values, det2, hermitian_eig, max_abs, min_singular_value, pinv, spectral_norm, CMat, CVec};
use crate::C64;

/// Relative singular-value cutoff for pseudo-inverses.
pub const PINV_REL: f64 = 1e-10;
/// Completions whose norm exceeds 1 by more than this are rejected.
pub const CONTRACTION_SLACK: f64 = 1e-6;

fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// P : H ⊕ U → G ⊕ V stored densely; `rows_top = dim G`, `cols_left = dim H`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    pub p: CMat,
    pub rows_top: usize,
    pub cols_left: usize,
}

impl BlockOperator {
    pub fn new(p: CMat, rows_top: usize, cols_left: usize) -> Result<Self> {
        if rows_top > p.nrows() || cols_left > p.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "split ({rows_top}, {cols_left}) does not fit a {:?} operator",
                p.shape()
            )));
        }
        Ok(BlockOperator { p, rows_top, cols_left })
    }

    fn dims(&self) -> (usize, usize, usize, usize) {
        let (g, h) = (self.rows_top, self.cols_left);
        (g, h, self.p.nrows() - g, self.p.ncols() - h)
    }

    pub fn p11(&self) -> CMat {
        let (g, h, _, _) = self.dims();
        self.p.view((0, 0), (g, h)).into_owned()
    }
    pub fn p12(&self) -> CMat {
        let (g, h, _, u) = self.dims();
        self.p.view((0, h), (g, u)).into_owned()
    }
    pub fn p21(&self) -> CMat {
        let (g, h, v, _) = self.dims();
        self.p.view((g, 0), (v, h)).into_owned()
    }
    pub fn p22(&self) -> CMat {
        let (g, h, v, u) = self.dims();
        self.p.view((g, h), (v, u)).into_owned()
    }
}

fn checked_inverse(a: &CMat) -> Result<CMat> {
    let smin = min_singular_value(a);
    if smin < POLE_EPS * (1.0 + spectral_norm(a)) {
        return Err(Error::SingularPencil(smin));
    }
    a.clone().try_inverse().ok_or(Error::SingularPencil(smin))
}

/// F_P(X) = P11 + P12 X (I − P22 X)⁻¹ P21 for X : V → U.
pub fn lft(p: &BlockOperator, x: &CMat) -> Result<CMat> {
    let (_, _, v, u) = p.dims();
    if x.shape() != (u, v) {
        return Err(Error::ShapeMismatch(format!("X must be {u}x{v}, got {:?}", x.shape())));
    }
    let inv = checked_inverse(&(eye(v) - p.p22() * x))?;
    Ok(p.p11() + p.p12() * x * inv * p.p21())
}

/// Frobenius norm of the difference between the two sides of
/// I − F_Q(Y)* F_P(X) = Q21*(I − Y*Q22*)⁻¹(I − Y*X)(I − P22X)⁻¹P21
///                      + [I, Q21*(I − Y*Q22*)⁻¹Y*](I − Q*P)[I; X(I − P22X)⁻¹P21].
pub fn lft_identity_residual(p: &BlockOperator, q: &BlockOperator, x: &CMat, y: &CMat) -> Result<f64> {
    if p.p.shape() != q.p.shape() || p.rows_top != q.rows_top || p.cols_left != q.cols_left {
        return Err(Error::ShapeMismatch("P and Q must share their block structure".into()));
    }
    if x.shape() != y.shape() {
        return Err(Error::ShapeMismatch("X and Y must have the same shape".into()));
    }
    let (_, h, v, _) = p.dims();
    let lhs = eye(h) - lft(q, y)?.adjoint() * lft(p, x)?;
    let ip = checked_inverse(&(eye(v) - p.p22() * x))?;
    let iq = checked_inverse(&(eye(v) - y.adjoint() * q.p22().adjoint()))?;
    let q21a = q.p21().adjoint();
    let first = &q21a * &iq * (eye(v) - y.adjoint() * x) * &ip * p.p21();
    let right = {
        let top = eye(h);
        let bottom = x * &ip * p.p21();
        let mut m = CMat::zeros(top.nrows() + bottom.nrows(), h);
        m.view_mut((0, 0), (h, h)).copy_from(&top);
        m.view_mut((h, 0), (bottom.nrows(), h)).copy_from(&bottom);
        m
    };
    let left = {
        let tail = &q21a * &iq * y.adjoint();
        let mut m = CMat::zeros(h, h + tail.ncols());
        m.view_mut((0, 0), (h, h)).copy_from(&eye(h));
        m.view_mut((0, h), (h, tail.ncols())).copy_from(&tail);
        m
    };
    let n = p.p.ncols();
    let rhs = first + left * (eye(n) - q.p.adjoint() * &p.p) * right;
    Ok((lhs - rhs).norm())
}

/// L = [[A, B], [C, D]] on C² ⊕ Cᵐ.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockContraction {
    pub m: usize,
    pub l: CMat,
}

impl BlockContraction {
    pub fn new(m: usize, l: CMat) -> Result<Self> {
        if l.shape() != (2 + m, 2 + m) {
            return Err(Error::ShapeMismatch(format!("L must be {0}x{0}, got {1:?}", 2 + m, l.shape())));
        }
        Ok(BlockContraction { m, l })
    }

    pub fn a(&self) -> CMat {
        self.l.view((0, 0), (2, 2)).into_owned()
    }
    pub fn b(&self) -> CMat {
        self.l.view((0, 2), (2, self.m)).into_owned()
    }
    pub fn c(&self) -> CMat {
        self.l.view((2, 0), (self.m, 2)).into_owned()
    }
    pub fn d(&self) -> CMat {
        self.l.view((2, 2), (self.m, self.m)).into_owned()
    }

    pub fn norm(&self) -> f64 {
        spectral_norm(&self.l)
    }

    pub fn as_block_operator(&self) -> BlockOperator {
        BlockOperator { p: self.l.clone(), rows_top: 2, cols_left: 2 }
    }
}

/// Ξ(λ) = A + Bλ(I − Dλ)⁻¹C.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizedSchurFunction {
    pub l: BlockContraction,
}

impl RealizedSchurFunction {
    pub fn new(l: BlockContraction) -> Self {
        RealizedSchurFunction { l }
    }

    pub fn eval(&self, lambda: C64) -> Result<CMat> {
        let m = self.l.m;
        if m == 0 {
            return Ok(self.l.a());
        }
        let pencil = eye(m) - self.l.d() * lambda;
        let inv = checked_inverse(&pencil)?;
        Ok(self.l.a() + self.l.b() * lambda * inv * self.l.c())
    }

    /// Characteristic polynomial det(I − Dλ) and the numerators of the
    /// four entries and of the determinant over it, recovered exactly from
    /// samples on a rotated unit circle.
    pub fn rational_form(&self) -> ([RationalFunction; 4], RationalFunction) {
        let m = self.l.m;
        let n = 2 * (m + 1);
        let shift = 0.123_456_789;
        let nodes: Vec<C64> = (0..n)
            .map(|j| C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64 + shift))
            .collect();
        let (a, b, cm, d) = (self.l.a(), self.l.b(), self.l.c(), self.l.d());
        let mut q_vals = Vec::with_capacity(n);
        let mut e_vals = vec![Vec::with_capacity(n); 4];
        let mut det_vals = Vec::with_capacity(n);
        for &w in &nodes {
            // [[A, −Bw], [C, I − Dw]]: its determinant is det(I − Dw)·det F(w),
            // and replacing the first block row by e_i/e_j data gives the entries.
            let pencil = eye(m) - &d * w;
            let q = pencil.clone().determinant();
            let mut big = CMat::zeros(2 + m, 2 + m);
            big.view_mut((0, 0), (2, 2)).copy_from(&a);
            big.view_mut((0, 2), (2, m)).copy_from(&(-&b * w));
            big.view_mut((2, 0), (m, 2)).copy_from(&cm);
            big.view_mut((2, 2), (m, m)).copy_from(&pencil);
            det_vals.push(big.clone().determinant());
            for (k, (i, j)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
                // entry (i, j) times q is the determinant of the bordered matrix
                // [[A_ij, −B_i w], [C_j, I − Dw]].
                let mut e = CMat::zeros(1 + m, 1 + m);
                e[(0, 0)] = a[(i, j)];
                for t in 0..m {
                    e[(0, 1 + t)] = -b[(i, t)] * w;
                    e[(1 + t, 0)] = cm[(t, j)];
                }
                e.view_mut((1, 1), (m, m)).copy_from(&pencil);
                e_vals[k].push(e.determinant());
            }
            q_vals.push(q);
        }
        let fit = |vals: &[C64]| -> Vec<C64> {
            let coeffs: Vec<C64> = (0..n)
                .map(|k| {
                    vals.iter()
                        .zip(&nodes)
                        .map(|(&v, &w)| v * w.powi(-(k as i32)))
                        .sum::<C64>()
                        / n as f64
                })
                .collect();
            poly::trim(&coeffs[..m + 1], 1e-15)
        };
        let q = fit(&q_vals);
        let entries = [0, 1, 2, 3].map(|k| RationalFunction { num: fit(&e_vals[k]), den: q.clone() });
        let det = RationalFunction { num: fit(&det_vals), den: q };
        (entries, det)
    }
}

/// A 2×2 matrix-valued holomorphic function on the disc.
#[derive(Debug, Clone)]
pub enum SchurMatrixFunction {
    Realized(RealizedSchurFunction),
    /// Entries in row-major order.
    Entries(Box<[EvaluableFunction; 4]>),
}

impl SchurMatrixFunction {
    pub fn eval(&self, lambda: C64) -> Result<CMat> {
        match self {
            SchurMatrixFunction::Realized(r) => r.eval(lambda),
            SchurMatrixFunction::Entries(e) => {
                let v = [e[0].eval(lambda)?, e[1].eval(lambda)?, e[2].eval(lambda)?, e[3].eval(lambda)?];
                Ok(CMat::from_row_slice(2, 2, &v))
            }
        }
    }

    /// Entries as evaluable functions (exact rational forms for realizations).
    pub fn entries(&self) -> [EvaluableFunction; 4] {
        match self {
            SchurMatrixFunction::Realized(r) => r.rational_form().0.map(EvaluableFunction::Rational),
            SchurMatrixFunction::Entries(e) => (**e).clone(),
        }
    }

    pub fn determinant(&self) -> EvaluableFunction {
        match self {
            SchurMatrixFunction::Realized(r) => EvaluableFunction::Rational(r.rational_form().1),
            SchurMatrixFunction::Entries(e) => e[0].mul(&e[3]).sub(&e[1].mul(&e[2])),
        }
    }

    /// max over the circle of radius r (m samples) of ‖F(λ)‖.
    pub fn sup_norm_on_circle(&self, r: f64, m: usize) -> Result<f64> {
        let mut best: f64 = 0.0;
        for j in 0..m {
            let lam = C64::from_polar(r, std::f64::consts::TAU * j as f64 / m as f64);
            best = best.max(spectral_norm(&self.eval(lam)?));
        }
        Ok(best)
    }
}

/// γ = (1 − F22 z)⁻¹F21 and η = (1, zγ) for a 2×2 value F.
pub fn gamma_eta(f: &CMat, z: C64) -> Result<(C64, CVec)> {
    let den = C64::new(1.0, 0.0) - f[(1, 1)] * z;
    if den.norm() < POLE_EPS {
        return Err(Error::Pole(format!("1 - F22 z vanishes at z = {z}")));
    }
    let g = f[(1, 0)] / den;
    Ok((g, CVec::from_vec(vec![C64::new(1.0, 0.0), z * g])))
}

/// Scalar LFT F11 + F12 z (1 − F22 z)⁻¹ F21.
pub fn lft_scalar(f: &CMat, z: C64) -> Result<C64> {
    let (g, _) = gamma_eta(f, z)?;
    Ok(f[(0, 0)] + f[(0, 1)] * z * g)
}

/// The bidisc function (z, λ) ↦ −F_{F(λ)}(z) attached to F.
#[derive(Debug, Clone)]
pub struct SeMap {
    pub f: SchurMatrixFunction,
}

pub fn se_map(f: &SchurMatrixFunction) -> SeMap {
    SeMap { f: f.clone() }
}

impl SeMap {
    pub fn eval(&self, z: C64, lambda: C64) -> Result<C64> {
        Ok(-lft_scalar(&self.f.eval(lambda)?, z)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletionReport {
    /// Numerical rank of the span of the domain vectors.
    pub rank: usize,
    /// Largest eigenvalue of Gram(range) − Gram(domain).
    pub gram_excess: f64,
    /// Largest |eigenvalue| of Gram(range) − Gram(domain).
    pub gram_deficit: f64,
    /// ‖L‖ before any clipping.
    pub raw_norm: f64,
    /// Whether singular values above one were clipped.
    pub clipped: bool,
    /// max_k ‖L u_k − w_k‖ after clipping.
    pub interpolation_residual: f64,
}

fn gram(vs: &[CVec]) -> CMat {
    let k = vs.len();
    CMat::from_fn(k, k, |r, c| vs[r].dotc(&vs[c]))
}

fn complement_basis(a: &CMat) -> CMat {
    let d = a.nrows();
    let (p, _) = pinv(a, PINV_REL);
    let proj = eye(d) - a * p;
    let (vals, vecs) = hermitian_eig(&proj);
    let cols: Vec<usize> = (0..d).filter(|&k| vals[k] > 0.5).collect();
    CMat::from_fn(d, cols.len(), |r, j| vecs[(r, cols[j])])
}

/// Build L with L u_k = w_k on span{u_k} and zero on its complement (or a
/// unitary extension of it), given Gram(w) ⪯ Gram(u) up to `eps_psd`.
pub fn contraction_completion(
    domain: &[CVec],
    range: &[CVec],
    eps_psd: f64,
    unitary: bool,
) -> Result<(CMat, CompletionReport)> {
    if domain.len() != range.len() || domain.is_empty() {
        return Err(Error::ShapeMismatch("domain and range must be equal-length, non-empty".into()));
    }
    let d = domain[0].len();
    if domain.iter().chain(range).any(|v| v.len() != d) {
        return Err(Error::ShapeMismatch("all vectors must live in the same space".into()));
    }
    let gu = gram(domain);
    let diff = gram(range) - &gu;
    let (vals, _) = hermitian_eig(&diff);
    let excess = vals[0];
    let deficit = vals[0].abs().max(vals[vals.len() - 1].abs());
    let scale = 1.0 + max_abs(&gu);
    if excess > eps_psd * scale {
        return Err(Error::GramianViolation(excess));
    }
    let k = domain.len();
    let u = CMat::from_fn(d, k, |r, c| domain[c][r]);
    let w = CMat::from_fn(d, k, |r, c| range[c][r]);
    let (up, rank) = pinv(&u, PINV_REL);
    let mut l = &w * &up;
    if unitary {
        if deficit > eps_psd * scale {
            return Err(Error::UnitaryExtension(deficit));
        }
        let (cu, cw) = (complement_basis(&u), complement_basis(&w));
        if cu.ncols() != cw.ncols() {
            return Err(Error::UnitaryExtension(deficit));
        }
        l += cw * cu.adjoint();
    }
    let raw_norm = spectral_norm(&l);
    if raw_norm > 1.0 + CONTRACTION_SLACK {
        return Err(Error::ContractionViolation(raw_norm));
    }
    let clipped = raw_norm > 1.0;
    if clipped {
        l = clip_singular_values(&l, 1.0);
    }
    let resid = (0..k).map(|c| (&l * &domain[c] - &range[c]).norm()).fold(0.0, f64::max);
    let report = CompletionReport {
        rank,
        gram_excess: excess,
        gram_deficit: deficit,
        raw_norm,
        clipped,
        interpolation_residual: resid,
    };
    Ok((l, report))
}

/// x-coordinates (F11, F22, det F) of a 2×2 value.
pub fn tetra_of(f: &CMat) -> [C64; 3] {
    [f[(0, 0)], f[(1, 1)], det2(f)]
}
