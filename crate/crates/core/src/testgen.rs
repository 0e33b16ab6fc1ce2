//! Seeded random instances: contractions, unitaries, realized Schur
//! functions and interpolation problems read off known interpolants.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::domains::{TetraPoint, Tolerance};
use crate::error::Result;
use crate::feasibility::InterpolationProblem;
use crate::linalg::{spectral_norm, CMat};
use crate::realization::{tetra_of, BlockContraction, RealizedSchurFunction, SchurMatrixFunction};
use crate::C64;

pub fn gaussian_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    CMat::from_fn(rows, cols, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let qr = gaussian_matrix(n, n, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..n {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let ph = d / d.norm();
            let mut col = q.column_mut(k);
            col *= ph;
        }
    }
    q
}

/// Random matrix rescaled to spectral norm `norm`.
pub fn random_contraction<R: Rng>(n: usize, norm: f64, rng: &mut R) -> CMat {
    let a = gaussian_matrix(n, n, rng);
    let s = spectral_norm(&a);
    a * C64::new(norm / s, 0.0)
}

pub fn random_point_in_disc<R: Rng>(rmax: f64, rng: &mut R) -> C64 {
    let r = rmax * rng.random::<f64>().sqrt();
    C64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// `n` points in |λ| ≤ rmax, pairwise at least `sep` apart.
pub fn random_nodes<R: Rng>(n: usize, rmax: f64, sep: f64, rng: &mut R) -> Vec<C64> {
    let mut out: Vec<C64> = Vec::with_capacity(n);
    while out.len() < n {
        let p = random_point_in_disc(rmax, rng);
        if out.iter().all(|q| (p - q).norm() >= sep) {
            out.push(p);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LKind {
    /// ‖L‖ = norm < 1.
    Strict(f64),
    /// L unitary: the realized function is inner.
    Unitary,
}

pub fn random_realized<R: Rng>(m: usize, kind: LKind, rng: &mut R) -> RealizedSchurFunction {
    let l = match kind {
        LKind::Strict(norm) => random_contraction(2 + m, norm, rng),
        LKind::Unitary => random_unitary(2 + m, rng),
    };
    RealizedSchurFunction::new(BlockContraction::new(m, l).expect("square of size 2 + m"))
}

/// Targets (F11, F22, det F) at the nodes.
pub fn targets_of(f: &SchurMatrixFunction, nodes: &[C64]) -> Result<Vec<TetraPoint>> {
    nodes
        .iter()
        .map(|&l| {
            let [a, b, c] = tetra_of(&f.eval(l)?);
            Ok(TetraPoint::new(a, b, c))
        })
        .collect()
}

pub fn problem_from_interpolant(
    f: &SchurMatrixFunction,
    nodes: &[C64],
    probes: [C64; 3],
    tol: Tolerance,
) -> Result<InterpolationProblem> {
    InterpolationProblem::new(nodes.to_vec(), targets_of(f, nodes)?, probes, tol)
}
