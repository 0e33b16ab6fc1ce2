//! Small dense helpers over `DMatrix<C64>` shared by the kernel and
//! realization code. Hermitian eigen-decompositions come back sorted in
//! descending order.

use nalgebra::{DMatrix, DVector};

use crate::C64;

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn hermitian_part(a: &CMat) -> CMat {
    (a + a.adjoint()) * C64::new(0.5, 0.0)
}

/// Eigenpairs of the Hermitian part of `a`, eigenvalues descending.
pub fn hermitian_eig(a: &CMat) -> (Vec<f64>, CMat) {
    let n = a.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let eig = nalgebra::linalg::SymmetricEigen::new(hermitian_part(a));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    (vals, vecs)
}

pub fn min_eig(a: &CMat) -> f64 {
    if a.nrows() == 0 {
        return 0.0;
    }
    let (v, _) = hermitian_eig(a);
    *v.last().unwrap()
}

pub fn max_eig(a: &CMat) -> f64 {
    if a.nrows() == 0 {
        return 0.0;
    }
    hermitian_eig(a).0[0]
}

/// Singular triplets with σ > `cutoff`, read off the Hermitian dilation
/// [[0, A], [A*, 0]] whose eigenpairs are ±σ with (u; ±v)/√2. nalgebra's
/// complex SVD loses accuracy on rank-deficient input; the Hermitian
/// eigensolver does not.
pub struct Svd {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

pub fn svd(a: &CMat, cutoff: f64) -> Svd {
    let (r, c) = a.shape();
    let (vals, vecs) = hermitian_eig(&dilation(a));
    let keep: Vec<usize> = (0..r + c).filter(|&k| vals[k] > cutoff && vals[k] > 0.0).collect();
    let sq = C64::new(std::f64::consts::SQRT_2, 0.0);
    Svd {
        u: CMat::from_fn(r, keep.len(), |i, j| vecs[(i, keep[j])] * sq),
        s: keep.iter().map(|&k| vals[k]).collect(),
        v: CMat::from_fn(c, keep.len(), |i, j| vecs[(r + i, keep[j])] * sq),
    }
}

pub fn spectral_norm(a: &CMat) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    max_eig(&dilation(a)).max(0.0)
}

/// Smallest singular value of a square matrix.
pub fn min_singular_value(a: &CMat) -> f64 {
    if a.nrows() == 0 {
        return f64::INFINITY;
    }
    hermitian_eig(&dilation(a)).0.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()))
}

fn dilation(a: &CMat) -> CMat {
    let (r, c) = a.shape();
    let mut dil = CMat::zeros(r + c, r + c);
    dil.view_mut((0, r), (r, c)).copy_from(a);
    dil.view_mut((r, 0), (c, r)).copy_from(&a.adjoint());
    dil
}

/// Replace every singular value above `cap` by `cap`.
pub fn clip_singular_values(a: &CMat, cap: f64) -> CMat {
    let d = svd(a, cap);
    let mut out = a.clone();
    for (k, &s) in d.s.iter().enumerate() {
        out -= d.u.column(k) * d.v.column(k).adjoint() * C64::new(s - cap, 0.0);
    }
    out
}

/// Multiply `v` by a unimodular scalar so that its first entry of maximal
/// modulus is real and positive.
pub fn gauge_fix(v: &CVec) -> CVec {
    let mut best = 0usize;
    let mut best_abs = -1.0;
    for (i, x) in v.iter().enumerate() {
        if x.norm() > best_abs * (1.0 + 1e-12) {
            best = i;
            best_abs = x.norm();
        }
    }
    if best_abs <= 0.0 {
        return v.clone();
    }
    let phase = v[best].conj() / best_abs;
    v * phase
}

/// Clip negative eigenvalues of the Hermitian part.
pub fn psd_project(a: &CMat) -> CMat {
    let (vals, vecs) = hermitian_eig(a);
    let n = vals.len();
    let mut out = CMat::zeros(n, n);
    for (k, &mu) in vals.iter().enumerate() {
        if mu > 0.0 {
            let col = vecs.column(k);
            out += (&col * col.adjoint()) * C64::new(mu, 0.0);
        }
    }
    out
}

/// Leading eigen-factor `u` with `a ≈ u u*`, gauge fixed. Also returns the
/// ratio of the second to the first eigenvalue (0 when a ≈ 0).
pub fn rank1_project(a: &CMat) -> (CVec, f64) {
    let n = a.nrows();
    if n == 0 {
        return (CVec::zeros(0), 0.0);
    }
    let (vals, vecs) = hermitian_eig(a);
    let top = vals[0];
    if top <= 0.0 {
        return (CVec::zeros(n), 0.0);
    }
    let second = if n > 1 { vals[1].max(0.0) } else { 0.0 };
    let u = gauge_fix(&vecs.column(0).into_owned()) * C64::new(top.sqrt(), 0.0);
    (u, second / top)
}

/// Factor a (numerically) PSD matrix as `h h*`, dropping eigenvalues below
/// `clip` and columns whose norm falls under `1e-10` of the largest.
pub fn psd_factor(a: &CMat, clip: f64) -> CMat {
    let (vals, vecs) = hermitian_eig(a);
    let n = vals.len();
    let cols: Vec<usize> = (0..n).filter(|&k| vals[k] > clip).collect();
    let top = cols.first().map(|&k| vals[k].sqrt()).unwrap_or(0.0);
    let kept: Vec<usize> = cols.into_iter().filter(|&k| vals[k].sqrt() > 1e-10 * top).collect();
    CMat::from_fn(n, kept.len(), |r, j| {
        vecs[(r, kept[j])] * C64::new(vals[kept[j]].sqrt(), 0.0)
    })
}

/// Moore-Penrose pseudo-inverse with singular values below
/// `rel * sigma_max` discarded. Returns the numerical rank as well.
pub fn pinv(a: &CMat, rel: f64) -> (CMat, usize) {
    let (r, c) = a.shape();
    if r == 0 || c == 0 {
        return (CMat::zeros(c, r), 0);
    }
    let smax = spectral_norm(a);
    let d = svd(a, rel * smax);
    let mut out = CMat::zeros(c, r);
    for (k, &s) in d.s.iter().enumerate() {
        out += d.v.column(k) * d.u.column(k).adjoint() * C64::new(1.0 / s, 0.0);
    }
    (out, d.s.len())
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().fold(0.0, |m: f64, x| m.max(x.norm()))
}

pub fn from_rows(rows: &[&[C64]]) -> CMat {
    let n = rows.len();
    let m = if n == 0 { 0 } else { rows[0].len() };
    CMat::from_fn(n, m, |i, j| rows[i][j])
}

pub fn mat2(a11: C64, a12: C64, a21: C64, a22: C64) -> CMat {
    CMat::from_row_slice(2, 2, &[a11, a12, a21, a22])
}

pub fn det2(a: &CMat) -> C64 {
    a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)]
}
