//! Certificate search.
//!
//! A rank-one N = γ̄γᵀ coming from an interpolant F has γ_jk = c_j/(1 − x2j z_k)
//! with c_j = F21(λ_j), and then F(λ_j) = W_j(c) = [[x1j, d_j/c_j], [c_j, x2j]]
//! with d_j = x1j x2j − x3j. So γ is searched through the n scalars c_j: the
//! problem is feasible iff some c makes the Pick matrix
//! [(I − W_i(c)* W_j(c)) / (1 − λ̄_i λ_j)] positive, and then
//! M = η* Pick η turns the LMI into an equality. The outer loop restarts over
//! c, the inner loop is projected ascent of λ_min(Pick(c)) with Armijo steps;
//! |c_j| ∈ [|d_j|, 1] is the box implied by ‖W_j‖ ≤ 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{build_lhs, verify_certificate, InterpolationProblem, KernelCertificate, Provenance};
use crate::linalg::{gauge_fix, hermitian_eig, psd_project, CMat, CVec};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub max_restarts: usize,
    pub max_iterations: usize,
    pub seed: u64,
    /// Accept once λ_min(Pick) ≥ −stop_residual.
    pub stop_residual: f64,
    pub initial_step: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_restarts: 50, max_iterations: 500, seed: 0, stop_residual: 1e-12, initial_step: 1.0 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_restarts == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidConfig("restart and iteration counts must be positive".into()));
        }
        if !(self.stop_residual >= 0.0 && self.stop_residual.is_finite()) {
            return Err(Error::InvalidConfig(format!("stop_residual {}", self.stop_residual)));
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return Err(Error::InvalidConfig(format!("initial_step {}", self.initial_step)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub certificate: Option<KernelCertificate>,
    /// Restarts run, including the successful one.
    pub restarts_used: usize,
    pub best_min_eig: f64,
    /// The scalars c_j = F21(λ_j) of the accepted certificate.
    pub scaling: Option<Vec<C64>>,
}

struct Pick<'a> {
    problem: &'a InterpolationProblem,
    d: Vec<C64>,
    /// 1/(1 − λ̄_i λ_j)
    szego: CMat,
    lo: Vec<f64>,
}

impl<'a> Pick<'a> {
    fn new(problem: &'a InterpolationProblem) -> Self {
        let d: Vec<C64> = problem.targets().iter().map(|x| x.defect()).collect();
        let nodes = problem.nodes();
        let n = nodes.len();
        let szego = CMat::from_fn(n, n, |i, j| C64::new(1.0, 0.0) / (C64::new(1.0, 0.0) - nodes[i].conj() * nodes[j]));
        let lo = d.iter().map(|v| v.norm().ln().min(0.0)).collect();
        Pick { problem, d, szego, lo }
    }

    fn n(&self) -> usize {
        self.d.len()
    }

    fn scalars(&self, rho: &[f64], theta: &[f64]) -> Vec<C64> {
        rho.iter().zip(theta).map(|(&r, &t)| C64::from_polar(r.exp(), t)).collect()
    }

    fn value(&self, j: usize, c: C64) -> CMat {
        let x = &self.problem.targets()[j];
        crate::linalg::mat2(x.x1, self.d[j] / c, c, x.x2)
    }

    fn matrix(&self, c: &[C64]) -> CMat {
        let n = self.n();
        let w: Vec<CMat> = (0..n).map(|j| self.value(j, c[j])).collect();
        let mut p = CMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let block = (CMat::identity(2, 2) - w[i].adjoint() * &w[j]) * self.szego[(i, j)];
                p.view_mut((2 * i, 2 * j), (2, 2)).copy_from(&block);
            }
        }
        p
    }

    /// λ_min and its gradient in (ρ, θ).
    fn objective(&self, rho: &[f64], theta: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
        let n = self.n();
        let c = self.scalars(rho, theta);
        let (vals, vecs) = hermitian_eig(&self.matrix(&c));
        let lmin = vals[2 * n - 1];
        let u = vecs.column(2 * n - 1);
        let ub: Vec<CVec> = (0..n).map(|j| CVec::from_vec(vec![u[2 * j], u[2 * j + 1]])).collect();
        let wu: Vec<CVec> = (0..n).map(|j| self.value(j, c[j]) * &ub[j]).collect();
        let (mut grho, mut gtheta) = (vec![0.0; n], vec![0.0; n]);
        for j in 0..n {
            let a = crate::linalg::mat2(C64::new(0.0, 0.0), -self.d[j] / c[j], c[j], C64::new(0.0, 0.0));
            let au = a * &ub[j];
            let g: C64 = (0..n).map(|i| self.szego[(i, j)] * wu[i].dotc(&au)).sum();
            grho[j] = -2.0 * g.re;
            gtheta[j] = 2.0 * g.im;
        }
        gtheta[0] = 0.0;
        (lmin, grho, gtheta)
    }

    fn project(&self, rho: &mut [f64], theta: &mut [f64]) {
        for j in 0..rho.len() {
            rho[j] = rho[j].clamp(self.lo[j], 0.0);
        }
        theta[0] = 0.0;
    }

    fn ascend(&self, rho: &mut Vec<f64>, theta: &mut Vec<f64>, cfg: &SearchConfig) -> f64 {
        self.project(rho, theta);
        let (mut f, mut gr, mut gt) = self.objective(rho, theta);
        let mut step = cfg.initial_step;
        for _ in 0..cfg.max_iterations {
            if f >= -cfg.stop_residual {
                break;
            }
            let mut improved = false;
            while step > 1e-14 {
                let mut r2: Vec<f64> = rho.iter().zip(&gr).map(|(a, g)| a + step * g).collect();
                let mut t2: Vec<f64> = theta.iter().zip(&gt).map(|(a, g)| a + step * g).collect();
                self.project(&mut r2, &mut t2);
                let dir: f64 = r2.iter().zip(rho.iter()).zip(&gr).map(|((a, b), g)| (a - b) * g).sum::<f64>()
                    + t2.iter().zip(theta.iter()).zip(&gt).map(|((a, b), g)| (a - b) * g).sum::<f64>();
                let (f2, gr2, gt2) = self.objective(&r2, &t2);
                if f2 >= f + 1e-4 * dir && f2 > f {
                    *rho = r2;
                    *theta = t2;
                    f = f2;
                    gr = gr2;
                    gt = gt2;
                    step *= 2.0;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                break;
            }
        }
        f
    }

    /// N = γ̄γᵀ and M = η* Pick₊ η for the scalars c.
    fn certificate(&self, c: &[C64]) -> KernelCertificate {
        let probes = self.problem.probes();
        let targets = self.problem.targets();
        let s = self.problem.size();
        let pick = psd_project(&self.matrix(c));
        let gam: Vec<C64> = (0..s)
            .map(|r| {
                let (j, k) = (r / 3, r % 3);
                c[j] / (C64::new(1.0, 0.0) - targets[j].x2 * probes[k])
            })
            .collect();
        let eta: Vec<CVec> = (0..s).map(|r| CVec::from_vec(vec![C64::new(1.0, 0.0), probes[r % 3] * gam[r]])).collect();
        let n = CMat::from_fn(s, s, |r, q| gam[r].conj() * gam[q]);
        let m = CMat::from_fn(s, s, |r, q| {
            let (i, j) = (r / 3, q / 3);
            (eta[r].adjoint() * pick.view((2 * i, 2 * j), (2, 2)) * &eta[q])[(0, 0)]
        });
        KernelCertificate { n, m, provenance: Provenance::Searched, equality_residual: None }
    }
}

/// c from the leading eigenvector of LHS, read as γ and averaged over probes.
fn lhs_start(problem: &InterpolationProblem, pick: &Pick) -> Option<(Vec<f64>, Vec<f64>)> {
    let lhs = build_lhs(problem).ok()?;
    let (vals, vecs) = hermitian_eig(&lhs);
    if vals[0] <= 0.0 {
        return None;
    }
    let u = gauge_fix(&vecs.column(0).into_owned()).map(|v| v.conj());
    let n = pick.n();
    let mut c = vec![C64::new(0.0, 0.0); n];
    for (j, cj) in c.iter_mut().enumerate() {
        for (k, &z) in problem.probes().iter().enumerate() {
            *cj += u[3 * j + k] * (C64::new(1.0, 0.0) - problem.targets()[j].x2 * z) / 3.0;
        }
    }
    if c.iter().any(|v| v.norm() < 1e-300) {
        return None;
    }
    let phase0 = c[0].arg();
    let rho = c.iter().map(|v| v.norm().ln()).collect();
    let theta = c.iter().map(|v| v.arg() - phase0).collect();
    Some((rho, theta))
}

fn start(problem: &InterpolationProblem, pick: &Pick, restart: usize, rng: &mut ChaCha20Rng) -> (Vec<f64>, Vec<f64>) {
    let n = pick.n();
    match restart {
        0 => lhs_start(problem, pick).unwrap_or_else(|| (pick.lo.iter().map(|l| 0.5 * l).collect(), vec![0.0; n])),
        1 => (pick.lo.iter().map(|l| 0.5 * l).collect(), vec![0.0; n]),
        _ => {
            let rho = pick.lo.iter().map(|&l| l * rng.random::<f64>()).collect();
            let theta = (0..n).map(|j| if j == 0 { 0.0 } else { rng.random_range(-std::f64::consts::PI..std::f64::consts::PI) }).collect();
            (rho, theta)
        }
    }
}

pub fn search_certificate_with_stats(problem: &InterpolationProblem, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let pick = Pick::new(problem);
    let mut best = f64::NEG_INFINITY;
    for restart in 0..cfg.max_restarts {
        let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
        rng.set_stream(restart as u64);
        let (mut rho, mut theta) = start(problem, &pick, restart, &mut rng);
        let f = pick.ascend(&mut rho, &mut theta, cfg);
        best = best.max(f);
        if f < -cfg.stop_residual {
            continue;
        }
        let c = pick.scalars(&rho, &theta);
        let mut cert = pick.certificate(&c);
        let report = verify_certificate(problem, &cert, problem.tol())?;
        if report.verdict {
            cert.equality_residual = Some(report.equality_residual);
            return Ok(SearchOutcome {
                certificate: Some(cert),
                restarts_used: restart + 1,
                best_min_eig: best,
                scaling: Some(c),
            });
        }
    }
    Ok(SearchOutcome { certificate: None, restarts_used: cfg.max_restarts, best_min_eig: best, scaling: None })
}

/// First verified certificate in restart order, or None ("not found").
pub fn search_certificate(problem: &InterpolationProblem, cfg: &SearchConfig) -> Result<Option<KernelCertificate>> {
    Ok(search_certificate_with_stats(problem, cfg)?.certificate)
}
