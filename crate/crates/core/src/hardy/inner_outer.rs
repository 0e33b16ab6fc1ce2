//! Inner–outer factorization of rational functions and outer functions
//! evaluated from their boundary log-modulus by Herglotz quadrature.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hardy::{poly, RationalFunction};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Number of equispaced nodes on the circle.
    pub nodes: usize,
    /// Log-modulus samples are clipped from below at this value.
    pub log_floor: f64,
    /// Zeros with ||r| − 1| below this are treated as boundary zeros.
    pub boundary_band: f64,
    /// Computed roots closer than this are merged into one multiple root.
    pub cluster_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { nodes: 4096, log_floor: 1e-30f64.ln(), boundary_band: 1e-8, cluster_tol: 1e-6 }
    }
}

/// c · Π ((λ − a)/(1 − ā λ))^k with |c| = 1 and every |a| < 1.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerFactor {
    pub constant: C64,
    pub zeros: Vec<(C64, usize)>,
}

impl InnerFactor {
    pub fn constant(c: C64) -> Self {
        InnerFactor { constant: c, zeros: Vec::new() }
    }

    pub fn eval(&self, lambda: C64) -> C64 {
        self.zeros.iter().fold(self.constant, |acc, &(a, k)| {
            let b = (lambda - a) / (C64::new(1.0, 0.0) - a.conj() * lambda);
            acc * b.powu(k as u32)
        })
    }

    pub fn to_rational(&self) -> RationalFunction {
        let mut num = vec![self.constant];
        let mut den = vec![C64::new(1.0, 0.0)];
        for &(a, k) in &self.zeros {
            for _ in 0..k {
                num = poly::mul(&num, &[-a, C64::new(1.0, 0.0)]);
                den = poly::mul(&den, &[C64::new(1.0, 0.0), -a.conj()]);
            }
        }
        RationalFunction { num, den }
    }
}

/// An outer function O(λ) = Π (1 − λ ζ̄)^k · exp(H[u](λ)), where H is the
/// Herglotz integral of the log-modulus samples `u` on a uniform grid and
/// the ζ are boundary zeros carried in closed form. O(0) > 0.
#[derive(Debug, Clone)]
pub struct OuterFunction {
    log_modulus: Arc<Vec<f64>>,
    roots_of_unity: Arc<Vec<C64>>,
    boundary_zeros: Vec<(C64, f64)>,
}

fn unit_roots(n: usize) -> Arc<Vec<C64>> {
    Arc::new(
        (0..n)
            .map(|j| C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64))
            .collect(),
    )
}

impl OuterFunction {
    pub fn from_log_modulus(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() || samples.iter().any(|u| !u.is_finite()) {
            return Err(Error::InvalidConfig("log-modulus samples must be finite and non-empty".into()));
        }
        let n = samples.len();
        Ok(OuterFunction { log_modulus: Arc::new(samples), roots_of_unity: unit_roots(n), boundary_zeros: Vec::new() })
    }

    /// The positive constant c.
    pub fn positive_constant(c: f64, nodes: usize) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::ZeroFunction);
        }
        Self::from_log_modulus(vec![c.ln(); nodes])
    }

    pub fn log_modulus(&self) -> &[f64] {
        &self.log_modulus
    }

    pub fn boundary_zeros(&self) -> &[(C64, f64)] {
        &self.boundary_zeros
    }

    pub fn nodes(&self) -> usize {
        self.log_modulus.len()
    }

    pub fn with_boundary_zeros(mut self, zeros: Vec<(C64, f64)>) -> Self {
        self.boundary_zeros = zeros;
        self
    }

    fn herglotz(&self, lambda: C64) -> C64 {
        let n = self.log_modulus.len() as f64;
        let sum: C64 = self
            .roots_of_unity
            .iter()
            .zip(self.log_modulus.iter())
            .map(|(&w, &u)| (w + lambda) / (w - lambda) * u)
            .sum();
        sum / n
    }

    pub fn eval(&self, lambda: C64) -> Result<C64> {
        if lambda.norm() >= 1.0 {
            return Err(Error::Pole(format!("outer function evaluated at |λ| = {} ≥ 1", lambda.norm())));
        }
        let mut v = self.herglotz(lambda).exp();
        for &(zeta, k) in &self.boundary_zeros {
            v *= (C64::new(1.0, 0.0) - lambda * zeta.conj()).powf(k);
        }
        Ok(v)
    }

    /// Principal square root: halves the log-modulus and boundary orders.
    pub fn sqrt(&self) -> OuterFunction {
        OuterFunction {
            log_modulus: Arc::new(self.log_modulus.iter().map(|u| 0.5 * u).collect()),
            roots_of_unity: self.roots_of_unity.clone(),
            boundary_zeros: self.boundary_zeros.iter().map(|&(z, k)| (z, 0.5 * k)).collect(),
        }
    }
}

/// Outer square root h of g: h² = g, h(0) > 0.
pub fn outer_sqrt(g: &OuterFunction) -> OuterFunction {
    g.sqrt()
}

/// Split a rational function without poles in the closed disc into an inner
/// Blaschke product (with unimodular constant) and an outer part with
/// positive value at the origin. Zeros in the boundary band go to the outer
/// part.
pub fn inner_outer_factorize(f: &RationalFunction, cfg: &QuadratureConfig) -> Result<(InnerFactor, OuterFunction)> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let den = poly::trim(&f.den, 1e-14);
    for r in poly::roots(&den) {
        if r.norm() <= 1.0 + cfg.boundary_band {
            return Err(Error::PoleInDisc(format!("{r}")));
        }
    }
    let num = poly::trim(&f.num, 1e-14);
    let lead = *num.last().unwrap();
    let clustered = poly::cluster(&poly::roots(&num), cfg.cluster_tol);
    let mut blaschke = Vec::new();
    let mut boundary = Vec::new();
    let mut outside = Vec::new();
    for (r, k) in clustered {
        let m = r.norm();
        if (m - 1.0).abs() <= cfg.boundary_band {
            boundary.push((r / m, k));
        } else if m < 1.0 {
            blaschke.push((r, k));
        } else {
            outside.extend(std::iter::repeat_n(r, k));
        }
    }
    let log_at = |w: C64| -> f64 {
        let mut v = lead.norm().ln() - poly::eval(&den, w).norm().ln();
        for &(a, k) in &blaschke {
            v += k as f64 * (C64::new(1.0, 0.0) - a.conj() * w).norm().ln();
        }
        for &r in &outside {
            v += (w - r).norm().ln();
        }
        v
    };
    let roots = unit_roots(cfg.nodes);
    let samples: Vec<f64> = roots.iter().map(|&w| log_at(w).max(cfg.log_floor)).collect();
    let mut g0 = lead / poly::eval(&den, C64::new(0.0, 0.0));
    for &(z, k) in &boundary {
        g0 *= (-z).powu(k as u32);
    }
    for &r in &outside {
        g0 *= -r;
    }
    let outer = OuterFunction {
        log_modulus: Arc::new(samples),
        roots_of_unity: roots,
        boundary_zeros: boundary.into_iter().map(|(z, k)| (z, k as f64)).collect(),
    };
    let inner = InnerFactor { constant: g0 / g0.norm(), zeros: blaschke };
    Ok((inner, outer))
}
