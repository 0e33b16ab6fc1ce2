//! The rank-constrained LMI criterion for the Ē-interpolation problem:
//! data matrices, certificate verification, forward certificates from a
//! known interpolant, and a seeded heuristic search.

mod search;

use serde::{Deserialize, Serialize};

use crate::domains::{in_closed_tetrablock, psi, TetraPoint, Tolerance};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, min_eig, CMat, CVec};
use crate::realization::{gamma_eta, SchurMatrixFunction};
use crate::saltire::ls_tetra;
use crate::C64;

pub use crate::linalg::{psd_project, rank1_project};
pub use search::{search_certificate, search_certificate_with_stats, SearchConfig, SearchOutcome};

/// Minimum separation of interpolation nodes (and of probes).
pub const NODE_SEPARATION: f64 = 1e-8;

pub fn default_probes() -> [C64; 3] {
    [C64::new(0.0, 0.0), C64::new(0.5, 0.0), C64::new(-0.5, 0.0)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationProblem {
    nodes: Vec<C64>,
    targets: Vec<TetraPoint>,
    probes: [C64; 3],
    tol: Tolerance,
}

fn check_distinct(points: &[C64], what: &str) -> Result<()> {
    for (i, a) in points.iter().enumerate() {
        if a.norm() >= 1.0 || !a.re.is_finite() || !a.im.is_finite() {
            return Err(Error::InvalidProblem(format!("{what} {i} = {a} is not in the open disc")));
        }
        for (j, b) in points.iter().enumerate().skip(i + 1) {
            if (a - b).norm() <= NODE_SEPARATION {
                return Err(Error::InvalidProblem(format!("{what}s {i} and {j} coincide")));
            }
        }
    }
    Ok(())
}

impl InterpolationProblem {
    pub fn new(nodes: Vec<C64>, targets: Vec<TetraPoint>, probes: [C64; 3], tol: Tolerance) -> Result<Self> {
        tol.validate()?;
        if nodes.is_empty() || nodes.len() != targets.len() {
            return Err(Error::InvalidProblem(format!(
                "need as many targets as nodes (>= 1), got {} nodes and {} targets",
                nodes.len(),
                targets.len()
            )));
        }
        check_distinct(&nodes, "node")?;
        check_distinct(&probes, "probe")?;
        for (j, x) in targets.iter().enumerate() {
            if !in_closed_tetrablock(x, &tol) {
                return Err(Error::NotInTetrablock(format!("target {j} = {:?}", x.as_array())));
            }
            if x.defect().norm() <= tol.eps_eq {
                return Err(Error::DegenerateTarget(format!("target {j} has x1 x2 = x3")));
            }
        }
        Ok(InterpolationProblem { nodes, targets, probes, tol })
    }

    pub fn with_default_probes(nodes: Vec<C64>, targets: Vec<TetraPoint>, tol: Tolerance) -> Result<Self> {
        Self::new(nodes, targets, default_probes(), tol)
    }

    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    pub fn targets(&self) -> &[TetraPoint] {
        &self.targets
    }

    pub fn probes(&self) -> &[C64; 3] {
        &self.probes
    }

    pub fn tol(&self) -> &Tolerance {
        &self.tol
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn size(&self) -> usize {
        3 * self.nodes.len()
    }

    /// Same data, different probe triple.
    pub fn with_probes(&self, probes: [C64; 3]) -> Result<Self> {
        Self::new(self.nodes.clone(), self.targets.clone(), probes, self.tol)
    }

    /// (node index, probe index) of flat index r = j·3 + k.
    pub fn split(&self, r: usize) -> (usize, usize) {
        (r / 3, r % 3)
    }

    /// Ψ(z_k, x_j) in flat order.
    pub fn psi_values(&self) -> Result<CVec> {
        let mut out = Vec::with_capacity(self.size());
        for x in &self.targets {
            for &z in &self.probes {
                out.push(psi(z, x)?);
            }
        }
        Ok(CVec::from_vec(out))
    }

    /// Q[il,jk] = 1 − z̄_l z_k.
    pub fn q_matrix(&self) -> CMat {
        let s = self.size();
        CMat::from_fn(s, s, |r, c| {
            let (zl, zk) = (self.probes[r % 3], self.probes[c % 3]);
            C64::new(1.0, 0.0) - zl.conj() * zk
        })
    }

    /// P[il,jk] = 1 − λ̄_i λ_j.
    pub fn p_matrix(&self) -> CMat {
        let s = self.size();
        CMat::from_fn(s, s, |r, c| {
            let (li, lj) = (self.nodes[r / 3], self.nodes[c / 3]);
            C64::new(1.0, 0.0) - li.conj() * lj
        })
    }
}

/// LHS[il,jk] = 1 − conj(Ψ(z_l, x_i)) Ψ(z_k, x_j).
pub fn build_lhs(problem: &InterpolationProblem) -> Result<CMat> {
    let psi = problem.psi_values()?;
    let s = problem.size();
    Ok(CMat::from_fn(s, s, |r, c| C64::new(1.0, 0.0) - psi[r].conj() * psi[c]))
}

/// LHS − Q∘N − P∘M.
pub fn slab_matrix(problem: &InterpolationProblem, n: &CMat, m: &CMat) -> Result<CMat> {
    let lhs = build_lhs(problem)?;
    Ok(lhs - problem.q_matrix().component_mul(n) - problem.p_matrix().component_mul(m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ForwardConstructed,
    Searched,
    External,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelCertificate {
    pub n: CMat,
    pub m: CMat,
    pub provenance: Provenance,
    /// Frobenius norm of the slab matrix when the certificate was built.
    pub equality_residual: Option<f64>,
}

impl KernelCertificate {
    pub fn external(n: CMat, m: CMat) -> Self {
        KernelCertificate { n, m, provenance: Provenance::External, equality_residual: None }
    }

    pub fn zero(size: usize) -> Self {
        Self::external(CMat::zeros(size, size), CMat::zeros(size, size))
    }

    pub fn scaled(&self, t: f64) -> Self {
        let t = C64::new(t, 0.0);
        KernelCertificate {
            n: &self.n * t,
            m: &self.m * t,
            provenance: Provenance::External,
            equality_residual: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub n_min_eig: f64,
    pub m_min_eig: f64,
    pub slab_min_eig: f64,
    pub n_rank_ratio: f64,
    /// ‖LHS − Q∘N − P∘M‖_F.
    pub equality_residual: f64,
    pub verdict: bool,
    /// Entry bounds satisfied by every forward certificate; informational.
    pub n_bound_ok: bool,
    pub m_bound_ok: bool,
    /// max |entry| / bound over all entries.
    pub n_bound_ratio: f64,
    pub m_bound_ratio: f64,
}

fn n_rank_ratio(n: &CMat) -> f64 {
    let (vals, _) = hermitian_eig(n);
    if vals.is_empty() || vals[0] <= 0.0 {
        return 0.0;
    }
    vals.get(1).map_or(0.0, |v| v.max(0.0) / vals[0])
}

/// Entry bounds |N| ≤ 1/((1−|x2i|)(1−|x2j|)) and
/// |M| ≤ 2/|1−λ̄_iλ_j| · √(1+(1−|x2i|)⁻²) √(1+(1−|x2j|)⁻²); returns the
/// largest ratio entry/bound for each.
pub fn entry_bound_ratios(problem: &InterpolationProblem, n: &CMat, m: &CMat) -> (f64, f64) {
    let t: Vec<f64> = problem.targets.iter().map(|x| 1.0 - x.x2.norm()).collect();
    let s = problem.size();
    let (mut rn, mut rm) = (0.0f64, 0.0f64);
    for r in 0..s {
        for c in 0..s {
            let (i, j) = (r / 3, c / 3);
            let nb = 1.0 / (t[i] * t[j]);
            let p = (C64::new(1.0, 0.0) - problem.nodes[i].conj() * problem.nodes[j]).norm();
            let mb = 2.0 / p * (1.0 + 1.0 / (t[i] * t[i])).sqrt() * (1.0 + 1.0 / (t[j] * t[j])).sqrt();
            if nb.is_finite() {
                rn = rn.max(n[(r, c)].norm() / nb);
            }
            if mb.is_finite() {
                rm = rm.max(m[(r, c)].norm() / mb);
            }
        }
    }
    (rn, rm)
}

pub fn verify_certificate(
    problem: &InterpolationProblem,
    cert: &KernelCertificate,
    tol: &Tolerance,
) -> Result<CertificateReport> {
    let s = problem.size();
    if cert.n.shape() != (s, s) || cert.m.shape() != (s, s) {
        return Err(Error::ShapeMismatch(format!(
            "certificate must be {s}x{s}, got N {:?}, M {:?}",
            cert.n.shape(),
            cert.m.shape()
        )));
    }
    let slab = slab_matrix(problem, &cert.n, &cert.m)?;
    let n_min = min_eig(&cert.n);
    let m_min = min_eig(&cert.m);
    let slab_min = min_eig(&slab);
    let ratio = n_rank_ratio(&cert.n);
    let (rn, rm) = entry_bound_ratios(problem, &cert.n, &cert.m);
    // Hermitian inputs are part of the contract.
    let herm = (&cert.n - cert.n.adjoint()).norm() + (&cert.m - cert.m.adjoint()).norm();
    let verdict = herm <= tol.eps_psd * (1.0 + cert.n.norm() + cert.m.norm())
        && n_min >= -tol.eps_psd
        && m_min >= -tol.eps_psd
        && slab_min >= -tol.eps_psd
        && ratio < tol.eps_rank;
    Ok(CertificateReport {
        n_min_eig: n_min,
        m_min_eig: m_min,
        slab_min_eig: slab_min,
        n_rank_ratio: ratio,
        equality_residual: slab.norm(),
        verdict,
        n_bound_ok: rn <= 1.0 + 1e-12,
        m_bound_ok: rm <= 1.0 + 1e-12,
        n_bound_ratio: rn,
        m_bound_ratio: rm,
    })
}

/// N = [conj(γ_il) γ_jk] and M = [η_il* (I − F_i*F_j)/(1 − λ̄_iλ_j) η_jk].
pub fn certificate_from_interpolant(
    problem: &InterpolationProblem,
    f: &SchurMatrixFunction,
) -> Result<KernelCertificate> {
    let values: Vec<CMat> = problem.nodes.iter().map(|&l| f.eval(l)).collect::<Result<_>>()?;
    let x = ls_tetra(f);
    for (j, (&lam, target)) in problem.nodes.iter().zip(&problem.targets).enumerate() {
        let got = x.eval(lam)?;
        let residual = got.dist(target);
        if residual > problem.tol.eps_eq.max(1e-10) {
            return Err(Error::InterpolantMismatch { node: j, residual });
        }
        if values[j][(1, 0)].norm() <= problem.tol.eps_eq {
            return Err(Error::DegenerateF21(j));
        }
    }
    let s = problem.size();
    let mut gam = Vec::with_capacity(s);
    let mut eta = Vec::with_capacity(s);
    for v in &values {
        for &z in &problem.probes {
            let (g, e) = gamma_eta(v, z)?;
            gam.push(g);
            eta.push(e);
        }
    }
    let one = C64::new(1.0, 0.0);
    let n = CMat::from_fn(s, s, |r, c| gam[r].conj() * gam[c]);
    let m = CMat::from_fn(s, s, |r, c| {
        let (i, j) = (r / 3, c / 3);
        let w = (CMat::identity(2, 2) - values[i].adjoint() * &values[j])
            / (one - problem.nodes[i].conj() * problem.nodes[j]);
        (eta[r].adjoint() * w * &eta[c])[(0, 0)]
    });
    let residual = slab_matrix(problem, &n, &m)?.norm();
    Ok(KernelCertificate { n, m, provenance: Provenance::ForwardConstructed, equality_residual: Some(residual) })
}

/// Forward certificate for the same interpolant at another probe triple;
/// a consistency diagnostic only.
pub fn second_triple_check(
    problem: &InterpolationProblem,
    f: &SchurMatrixFunction,
    probes: [C64; 3],
) -> Result<CertificateReport> {
    let other = problem.with_probes(probes)?;
    let cert = certificate_from_interpolant(&other, f)?;
    verify_certificate(&other, &cert, &other.tol)
}
