//! Kernel pairs (N, M) sampled on a finite grid of (node, probe) points and
//! the maps UE, UW, RS, SW between them and Schur-class functions.

use crate::domains::{GammaPoint, TetraPoint, Tolerance};
use crate::error::{Error, Result};
use crate::linalg::{det2, hermitian_eig, max_abs, psd_factor, rank1_project, CMat, CVec};
use crate::realization::{
    contraction_completion, gamma_eta, lft_scalar, BlockContraction, CompletionReport, RealizedSchurFunction,
    SchurMatrixFunction,
};
use crate::saltire::{ls_gamma, ls_tetra, HolFunctionGamma, HolFunctionTetra};
use crate::C64;

/// N and M sampled at (λ_j, z_k); row/column index j·K + k.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledKernelPair {
    pub nodes: Vec<C64>,
    pub probes: Vec<C64>,
    pub n: CMat,
    pub m: CMat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelPairReport {
    pub n_min_eig: f64,
    pub m_min_eig: f64,
    pub k_min_eig: f64,
    pub n_rank_ratio: f64,
    pub k_rank_ratio: f64,
    /// K vanishes on the grid (rank 0), which the finite-sample R₁ accepts.
    pub k_rank_zero: bool,
    pub in_r1: bool,
    pub in_r11: bool,
}

fn rank_ratio(a: &CMat, floor: f64) -> (f64, bool) {
    let (vals, _) = hermitian_eig(a);
    if vals.is_empty() || vals[0] <= floor {
        return (0.0, true);
    }
    let second = if vals.len() > 1 { vals[1].max(0.0) } else { 0.0 };
    (second / vals[0], false)
}

impl SampledKernelPair {
    pub fn new(nodes: Vec<C64>, probes: Vec<C64>, n: CMat, m: CMat) -> Result<Self> {
        let size = nodes.len() * probes.len();
        if n.shape() != (size, size) || m.shape() != (size, size) {
            return Err(Error::ShapeMismatch(format!(
                "kernels must be {size}x{size}, got N {:?}, M {:?}",
                n.shape(),
                m.shape()
            )));
        }
        Ok(SampledKernelPair { nodes, probes, n, m })
    }

    pub fn size(&self) -> usize {
        self.nodes.len() * self.probes.len()
    }

    /// (λ, z) at flat index r.
    pub fn point(&self, r: usize) -> (C64, C64) {
        let k = self.probes.len();
        (self.nodes[r / k], self.probes[r % k])
    }

    /// K[il,jk] = 1 − (1 − z̄_l z_k) N − (1 − λ̄_i λ_j) M.
    pub fn k_matrix(&self) -> CMat {
        let s = self.size();
        CMat::from_fn(s, s, |r, c| {
            let (li, zl) = self.point(r);
            let (lj, zk) = self.point(c);
            let one = C64::new(1.0, 0.0);
            one - (one - zl.conj() * zk) * self.n[(r, c)] - (one - li.conj() * lj) * self.m[(r, c)]
        })
    }

    pub fn check(&self, tol: &Tolerance) -> KernelPairReport {
        let k = self.k_matrix();
        let (n_ratio, _) = rank_ratio(&self.n, tol.eps_psd);
        let (k_ratio, k_zero) = rank_ratio(&k, tol.eps_psd);
        let n_min = crate::linalg::min_eig(&self.n);
        let m_min = crate::linalg::min_eig(&self.m);
        let k_min = crate::linalg::min_eig(&k);
        let psd = n_min >= -tol.eps_psd && m_min >= -tol.eps_psd && k_min >= -tol.eps_psd;
        let in_r1 = psd && k_ratio < tol.eps_rank;
        KernelPairReport {
            n_min_eig: n_min,
            m_min_eig: m_min,
            k_min_eig: k_min,
            n_rank_ratio: n_ratio,
            k_rank_ratio: k_ratio,
            k_rank_zero: k_zero,
            in_r1,
            in_r11: in_r1 && n_ratio < tol.eps_rank,
        }
    }
}

/// Sample the kernels N_F, M_F of a Schur-class F on nodes × probes.
pub fn ue(f: &SchurMatrixFunction, nodes: &[C64], probes: &[C64]) -> Result<SampledKernelPair> {
    let values: Vec<CMat> = nodes.iter().map(|&l| f.eval(l)).collect::<Result<_>>()?;
    let kk = probes.len();
    let s = nodes.len() * kk;
    let mut gam = Vec::with_capacity(s);
    let mut eta = Vec::with_capacity(s);
    for v in &values {
        for &z in probes {
            let (g, e) = gamma_eta(v, z)?;
            gam.push(g);
            eta.push(e);
        }
    }
    let one = C64::new(1.0, 0.0);
    let n = CMat::from_fn(s, s, |r, c| gam[r].conj() * gam[c]);
    let m = CMat::from_fn(s, s, |r, c| {
        let (i, j) = (r / kk, c / kk);
        let w = (CMat::identity(2, 2) - values[i].adjoint() * &values[j]) / (one - nodes[i].conj() * nodes[j]);
        (eta[r].adjoint() * w * &eta[c])[(0, 0)]
    });
    SampledKernelPair::new(nodes.to_vec(), probes.to_vec(), n, m)
}

#[derive(Debug, Clone)]
pub struct UwOutput {
    pub xi: RealizedSchurFunction,
    /// Gauge-fixed factor of N (N[r,c] = conj(f_r) f_c).
    pub f: CVec,
    /// Gauge-fixed factor of K.
    pub g: CVec,
    pub completion: CompletionReport,
}

/// Conjugate of the leading factor, so that A[r,c] = conj(out_r) out_c.
pub(crate) fn kernel_factor(a: &CMat) -> CVec {
    rank1_project(a).0.map(|v| v.conj())
}

/// Realize a sampled pair in R₁₁ as Ξ(λ) = A + Bλ(I − Dλ)⁻¹C.
pub fn uw(pair: &SampledKernelPair, tol: &Tolerance, unitary: bool) -> Result<UwOutput> {
    let rep = pair.check(tol);
    if rep.n_rank_ratio >= tol.eps_rank {
        return Err(Error::RankTolerance(format!("N rank ratio {:e}", rep.n_rank_ratio)));
    }
    if rep.k_rank_ratio >= tol.eps_rank {
        return Err(Error::RankTolerance(format!("K rank ratio {:e}", rep.k_rank_ratio)));
    }
    let f = kernel_factor(&pair.n);
    let g = kernel_factor(&pair.k_matrix());
    let (domain, range, m) = realization_vectors(pair, &f, &g, tol.eps_psd);
    let (l, completion) = contraction_completion(&domain, &range, tol.eps_psd, unitary)?;
    let xi = RealizedSchurFunction::new(BlockContraction::new(m, l)?);
    Ok(UwOutput { xi, f, g, completion })
}

/// Domain vectors (1, z f, λ v) and range vectors (g, f, v), with v the
/// rows of an eigen-factor of M.
pub(crate) fn realization_vectors(
    pair: &SampledKernelPair,
    f: &CVec,
    g: &CVec,
    clip: f64,
) -> (Vec<CVec>, Vec<CVec>, usize) {
    let h = psd_factor(&pair.m, clip);
    let m = h.ncols();
    let s = pair.size();
    let mut domain = Vec::with_capacity(s);
    let mut range = Vec::with_capacity(s);
    for r in 0..s {
        let (lam, z) = pair.point(r);
        let v: Vec<C64> = (0..m).map(|t| h[(r, t)].conj()).collect();
        let mut u = vec![C64::new(1.0, 0.0), z * f[r]];
        u.extend(v.iter().map(|&x| lam * x));
        let mut w = vec![g[r], f[r]];
        w.extend(v);
        domain.push(CVec::from_vec(u));
        range.push(CVec::from_vec(w));
    }
    (domain, range, m)
}

/// The sampled bivariate function f with K = f̄ f (gauge fixed).
pub fn rs(pair: &SampledKernelPair, tol: &Tolerance) -> Result<CVec> {
    let k = pair.k_matrix();
    let (ratio, _) = rank_ratio(&k, tol.eps_psd);
    if ratio >= tol.eps_rank {
        return Err(Error::RankTolerance(format!("K rank ratio {ratio:e}")));
    }
    Ok(kernel_factor(&k))
}

/// Member of the SW_Γ gauge orbit: (tr(diag(ζ,1)Ξ), ζ det Ξ).
pub fn sw_gamma_member(xi: &CMat, zeta: C64) -> GammaPoint {
    GammaPoint::new(zeta * xi[(0, 0)] + xi[(1, 1)], zeta * det2(xi))
}

/// Member of the SW_E gauge orbit: (ζ Ξ11, Ξ22, ζ det Ξ).
pub fn sw_tetra_member(xi: &CMat, zeta: C64) -> TetraPoint {
    TetraPoint::new(zeta * xi[(0, 0)], xi[(1, 1)], zeta * det2(xi))
}

/// Canonical (ζ = 1) representative LS_Γ(UW(N, M)).
pub fn sw_gamma(pair: &SampledKernelPair, tol: &Tolerance) -> Result<(HolFunctionGamma, UwOutput)> {
    let out = uw(pair, tol, false)?;
    let h = ls_gamma(&SchurMatrixFunction::Realized(out.xi.clone()));
    Ok((h, out))
}

/// Canonical (ζ = 1) representative LS_E(UW(N, M)).
pub fn sw_tetra(pair: &SampledKernelPair, tol: &Tolerance) -> Result<(HolFunctionTetra, UwOutput)> {
    let out = uw(pair, tol, false)?;
    let x = ls_tetra(&SchurMatrixFunction::Realized(out.xi.clone()));
    Ok((x, out))
}

/// Largest entrywise gap between the moduli of two equal-shaped matrices.
pub fn modulus_gap(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.norm() - y.norm()).abs()).fold(0.0, f64::max)
}

/// max |UE(Ξ) − (N, M)| on the pair's own grid.
pub fn ue_uw_residual(pair: &SampledKernelPair, xi: &RealizedSchurFunction) -> Result<f64> {
    let back = ue(&SchurMatrixFunction::Realized(xi.clone()), &pair.nodes, &pair.probes)?;
    Ok(max_abs(&(back.n - &pair.n)).max(max_abs(&(back.m - &pair.m))))
}

/// Samples of −F_{F(λ)}(z) on the pair's grid.
pub fn se_samples(f: &SchurMatrixFunction, nodes: &[C64], probes: &[C64]) -> Result<CVec> {
    let mut out = Vec::with_capacity(nodes.len() * probes.len());
    for &l in nodes {
        let v = f.eval(l)?;
        for &z in probes {
            out.push(-lft_scalar(&v, z)?);
        }
    }
    Ok(CVec::from_vec(out))
}
