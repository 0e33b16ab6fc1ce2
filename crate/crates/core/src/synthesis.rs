//! Procedure SW: from a kernel certificate to a realized Θ and the
//! interpolant x = LS_E(Θ); the solve pipeline; interpolant checks; the
//! μ_Diag → tetrablock reduction.

use serde::{Deserialize, Serialize};

use crate::domains::{mu_diag, psi, sunflower, tetra_membership_residual, tetra_targets, TetraPoint, Tolerance};
use crate::error::{Error, Result};
use crate::feasibility::{
    search_certificate_with_stats, verify_certificate, InterpolationProblem, KernelCertificate, SearchConfig,
};
use crate::linalg::{spectral_norm, CMat};
use crate::realization::{
    contraction_completion, lft_scalar, tetra_of, BlockContraction, CompletionReport, RealizedSchurFunction,
    SchurMatrixFunction,
};
use crate::saltire::{kernel_factor, ls_tetra, realization_vectors, HolFunctionTetra, SampledKernelPair};
use crate::C64;

/// Node residual above which Procedure SW reports failure.
pub const NODE_TOLERANCE: f64 = 1e-6;

/// λ-grid used for membership and contraction diagnostics.
pub fn diagnostic_grid(size: usize) -> Vec<C64> {
    sunflower(size, 0.99)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SwOptions {
    pub unitary_extension: bool,
    pub grid_size: usize,
}

impl Default for SwOptions {
    fn default() -> Self {
        SwOptions { unitary_extension: false, grid_size: 256 }
    }
}

#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub theta: RealizedSchurFunction,
    pub x: HolFunctionTetra,
    pub node_errors: Vec<f64>,
    /// max over nodes and probes of |Ψ(z, x(λ_j)) − lft(Θ(λ_j), z)|.
    pub lft_residual: f64,
    pub grid: Vec<C64>,
    /// Condition-(6) residual of x at each grid point.
    pub membership_profile: Vec<f64>,
    /// 1 − ‖L‖.
    pub contraction_margin: f64,
    pub completion: CompletionReport,
}

impl SynthesisResult {
    pub fn max_node_error(&self) -> f64 {
        self.node_errors.iter().copied().fold(0.0, f64::max)
    }

    pub fn membership_sup(&self) -> f64 {
        self.membership_profile.iter().copied().fold(0.0, f64::max)
    }

    /// x(λ) computed directly from the realization.
    pub fn eval(&self, lambda: C64) -> Result<TetraPoint> {
        let [a, b, c] = tetra_of(&self.theta.eval(lambda)?);
        Ok(TetraPoint::new(a, b, c))
    }
}

pub fn procedure_sw(problem: &InterpolationProblem, cert: &KernelCertificate, tol: &Tolerance) -> Result<SynthesisResult> {
    procedure_sw_with(problem, cert, tol, &SwOptions::default())
}

pub fn procedure_sw_with(
    problem: &InterpolationProblem,
    cert: &KernelCertificate,
    tol: &Tolerance,
    opts: &SwOptions,
) -> Result<SynthesisResult> {
    let report = verify_certificate(problem, cert, tol)?;
    if !report.verdict {
        return Err(Error::CertificateRejected(format!(
            "min eigenvalues N {:e}, M {:e}, slab {:e}; rank ratio {:e}",
            report.n_min_eig, report.m_min_eig, report.slab_min_eig, report.n_rank_ratio
        )));
    }
    let gamma = kernel_factor(&cert.n);
    let psi_vals = problem.psi_values()?;
    let pair = SampledKernelPair::new(problem.nodes().to_vec(), problem.probes().to_vec(), cert.n.clone(), cert.m.clone())?;
    let (domain, range, m) = realization_vectors(&pair, &gamma, &psi_vals, tol.eps_psd);
    let (l, completion) = contraction_completion(&domain, &range, tol.eps_psd, opts.unitary_extension)?;
    let norm = spectral_norm(&l);
    let theta = RealizedSchurFunction::new(BlockContraction::new(m, l)?);

    let mut node_errors = Vec::with_capacity(problem.n());
    let mut lft_residual: f64 = 0.0;
    for (&lam, target) in problem.nodes().iter().zip(problem.targets()) {
        let v = theta.eval(lam)?;
        let [a, b, c] = tetra_of(&v);
        let got = TetraPoint::new(a, b, c);
        node_errors.push(got.dist(target));
        for &z in problem.probes() {
            lft_residual = lft_residual.max((psi(z, &got)? - lft_scalar(&v, z)?).norm());
        }
    }
    if let Some((node, &residual)) =
        node_errors.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).filter(|(_, &r)| r > NODE_TOLERANCE)
    {
        return Err(Error::NodeMismatch { node, residual });
    }
    let grid = diagnostic_grid(opts.grid_size);
    let membership_profile = grid
        .iter()
        .map(|&lam| {
            let [a, b, c] = tetra_of(&theta.eval(lam)?);
            Ok(tetra_membership_residual(&TetraPoint::new(a, b, c)))
        })
        .collect::<Result<Vec<f64>>>()?;
    let x = ls_tetra(&SchurMatrixFunction::Realized(theta.clone()));
    Ok(SynthesisResult {
        theta,
        x,
        node_errors,
        lft_residual,
        grid,
        membership_profile,
        contraction_margin: 1.0 - norm,
        completion,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct SolveConfig {
    pub search: SearchConfig,
    pub sw: SwOptions,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub result: Option<SynthesisResult>,
    pub certificate: Option<KernelCertificate>,
    pub restarts_used: usize,
}

pub fn solve_with_stats(problem: &InterpolationProblem, cfg: &SolveConfig) -> Result<SolveOutcome> {
    let out = search_certificate_with_stats(problem, &cfg.search)?;
    let result = match &out.certificate {
        Some(cert) => Some(procedure_sw_with(problem, cert, problem.tol(), &cfg.sw)?),
        None => None,
    };
    Ok(SolveOutcome { result, certificate: out.certificate, restarts_used: out.restarts_used })
}

pub fn solve(problem: &InterpolationProblem, cfg: &SolveConfig) -> Result<Option<SynthesisResult>> {
    Ok(solve_with_stats(problem, cfg)?.result)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub node_residuals: Vec<f64>,
    /// sup over the grid of the condition-(6) residual.
    pub membership_sup: f64,
    /// sup over the grid of ‖Θ(λ)‖ − 1, when a realization is at hand.
    pub theta_norm_excess: Option<f64>,
    /// max over the boundary grid of |1 − |x3||.
    pub boundary_x3_defect: f64,
    pub boundary_x3_profile: Vec<f64>,
}

impl VerificationReport {
    pub fn max_node_residual(&self) -> f64 {
        self.node_residuals.iter().copied().fold(0.0, f64::max)
    }
}

fn boundary_circle(size: usize) -> Vec<C64> {
    (0..size).map(|j| C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / size as f64)).collect()
}

fn verify_with<F: Fn(C64) -> Result<TetraPoint>>(x: F, problem: &InterpolationProblem, grid_size: usize) -> VerificationReport {
    let node_residuals = problem
        .nodes()
        .iter()
        .zip(problem.targets())
        .map(|(&l, t)| x(l).map(|v| v.dist(t)).unwrap_or(f64::MAX))
        .collect();
    let membership_sup = diagnostic_grid(grid_size)
        .iter()
        .filter_map(|&l| x(l).ok())
        .map(|v| tetra_membership_residual(&v))
        .fold(0.0, f64::max);
    // Points where x has a boundary pole are skipped.
    let boundary_x3_profile: Vec<f64> =
        boundary_circle(grid_size).iter().filter_map(|&l| x(l).ok()).map(|v| (1.0 - v.x3.norm()).abs()).collect();
    let boundary_x3_defect = boundary_x3_profile.iter().copied().fold(0.0, f64::max);
    VerificationReport { node_residuals, membership_sup, theta_norm_excess: None, boundary_x3_defect, boundary_x3_profile }
}

pub fn verify_interpolant(x: &HolFunctionTetra, problem: &InterpolationProblem, grid_size: usize) -> VerificationReport {
    verify_with(|l| x.eval(l), problem, grid_size)
}

/// As `verify_interpolant`, evaluating x through Θ and also reporting
/// sup ‖Θ(λ)‖ − 1.
pub fn verify_realized(theta: &RealizedSchurFunction, problem: &InterpolationProblem, grid_size: usize) -> VerificationReport {
    let eval = |l: C64| {
        let [a, b, c] = tetra_of(&theta.eval(l)?);
        Ok(TetraPoint::new(a, b, c))
    };
    let mut report = verify_with(eval, problem, grid_size);
    let excess = diagnostic_grid(grid_size)
        .iter()
        .filter_map(|&l| theta.eval(l).ok())
        .map(|v| spectral_norm(&v) - 1.0)
        .fold(f64::NEG_INFINITY, f64::max);
    report.theta_norm_excess = Some(excess);
    report
}

/// λ_j ↦ W_j becomes λ_j ↦ (w11, w22, det W_j).
pub fn reduce_mu_problem(
    nodes: &[C64],
    matrices: &[CMat],
    probes: [C64; 3],
    tol: Tolerance,
) -> Result<InterpolationProblem> {
    if nodes.len() != matrices.len() {
        return Err(Error::InvalidProblem(format!("{} nodes but {} matrices", nodes.len(), matrices.len())));
    }
    let targets = matrices.iter().map(|w| tetra_targets(w, &tol)).collect::<Result<Vec<_>>>()?;
    InterpolationProblem::new(nodes.to_vec(), targets, probes, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixVerificationReport {
    /// max |F(λ_j) − W_j| entrywise.
    pub node_residuals: Vec<f64>,
    pub mu_sup: f64,
    pub passed: bool,
}

pub fn verify_matrix_interpolant(
    f: &SchurMatrixFunction,
    nodes: &[C64],
    matrices: &[CMat],
    grid_size: usize,
    tol: &Tolerance,
) -> Result<MatrixVerificationReport> {
    if nodes.len() != matrices.len() {
        return Err(Error::InvalidProblem(format!("{} nodes but {} matrices", nodes.len(), matrices.len())));
    }
    let mut node_residuals = Vec::with_capacity(nodes.len());
    for (&l, w) in nodes.iter().zip(matrices) {
        let v = f.eval(l)?;
        node_residuals.push((v - w).iter().map(|e| e.norm()).fold(0.0, f64::max));
    }
    let mut mu_sup: f64 = 0.0;
    for l in diagnostic_grid(grid_size).into_iter().chain(nodes.iter().copied()) {
        mu_sup = mu_sup.max(mu_diag(&f.eval(l)?)?);
    }
    let passed = node_residuals.iter().all(|&r| r <= NODE_TOLERANCE) && mu_sup <= 1.0 + tol.eps_member;
    Ok(MatrixVerificationReport { node_residuals, mu_sup, passed })
}
