//! LN / LS: lifting Γ- and Ē-valued functions to 2×2 Schur-class functions
//! and projecting back.

use crate::domains::{polar_grid, Tolerance};
use crate::error::{Error, Result};
use crate::hardy::{inner_outer_factorize, outer_sqrt, poly, EvaluableFunction, QuadratureConfig, RationalFunction};
use crate::realization::SchurMatrixFunction;
use crate::saltire::{HolFunctionGamma, HolFunctionTetra};
use crate::C64;

/// Radius of the circle on which LN outputs are checked to be contractive;
/// the Herglotz quadrature is accurate well inside it.
pub const LIFT_CHECK_RADIUS: f64 = 0.95;

fn vanishes(f: &RationalFunction, tol: &Tolerance) -> bool {
    poly::max_coeff(&f.num) <= tol.eps_eq * poly::max_coeff(&f.den)
}

fn half() -> C64 {
    C64::new(0.5, 0.0)
}

/// Build [[d1, φ e^{C/2}], [e^{C/2}, d2]] where g = φ e^C, or diag(d1, d2)
/// when g ≡ 0.
fn lift(d1: EvaluableFunction, d2: EvaluableFunction, g: &RationalFunction, tol: &Tolerance) -> Result<SchurMatrixFunction> {
    let zero = EvaluableFunction::constant(C64::new(0.0, 0.0));
    if vanishes(g, tol) {
        return Ok(SchurMatrixFunction::Entries(Box::new([d1, zero.clone(), zero, d2])));
    }
    let (inner, outer) = inner_outer_factorize(g, &QuadratureConfig::default())?;
    let root = EvaluableFunction::Outer(outer_sqrt(&outer));
    let top = EvaluableFunction::Inner(inner).mul(&root);
    Ok(SchurMatrixFunction::Entries(Box::new([d1, top, root, d2])))
}

fn check_contractive(f: &SchurMatrixFunction, tol: &Tolerance) -> Result<f64> {
    let sup = f.sup_norm_on_circle(LIFT_CHECK_RADIUS, tol.boundary_grid_size)?;
    Ok(sup)
}

pub fn ln_gamma(h: &HolFunctionGamma, tol: &Tolerance) -> Result<SchurMatrixFunction> {
    let (s, p) = h.rational().ok_or_else(|| Error::NotRational("ln_gamma needs rational s, p".into()))?;
    h.check_into_gamma(&polar_grid(32, 0.99), tol)?;
    let half_s = EvaluableFunction::Rational(s.scale(half()));
    let g = s.mul(&s).scale(C64::new(0.25, 0.0)).sub(&p);
    let f = lift(half_s.clone(), half_s, &g, tol)?;
    let sup = check_contractive(&f, tol)?;
    if sup > 1.0 + 1e-6 {
        return Err(Error::NotInGamma(format!("lift has norm {sup} > 1")));
    }
    Ok(f)
}

pub fn ls_gamma(f: &SchurMatrixFunction) -> HolFunctionGamma {
    let e = f.entries();
    HolFunctionGamma::new(e[0].add(&e[3]), f.determinant())
}

pub fn ln_tetra(x: &HolFunctionTetra, tol: &Tolerance) -> Result<SchurMatrixFunction> {
    let (x1, x2, x3) = x.rational().ok_or_else(|| Error::NotRational("ln_tetra needs rational x".into()))?;
    x.check_into_tetrablock(&polar_grid(32, 0.99), tol)?;
    let g = x1.mul(&x2).sub(&x3);
    let f = lift(EvaluableFunction::Rational(x1), EvaluableFunction::Rational(x2), &g, tol)?;
    let sup = check_contractive(&f, tol)?;
    if sup > 1.0 + 1e-6 {
        return Err(Error::NotInTetrablock(format!("lift has norm {sup} > 1")));
    }
    Ok(f)
}

pub fn ls_tetra(f: &SchurMatrixFunction) -> HolFunctionTetra {
    let e = f.entries();
    HolFunctionTetra::new(e[0].clone(), e[3].clone(), f.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{GammaPoint, TetraPoint};
    use crate::linalg::{c, max_abs, mat2};

    #[test]
    fn royal_constant_lifts_to_scalar() {
        let a = c(0.3, 0.2);
        let h = HolFunctionGamma::constant(GammaPoint::new(a * 2.0, a * a));
        let f = ln_gamma(&h, &Tolerance::default()).unwrap();
        let v = f.eval(c(0.4, -0.1)).unwrap();
        assert!(max_abs(&(v - mat2(a, c(0.0, 0.0), c(0.0, 0.0), a))) < 1e-15);
    }

    #[test]
    fn constant_gamma_lift() {
        let h = HolFunctionGamma::constant(GammaPoint::new(c(0.0, 0.0), c(-0.25, 0.0)));
        let f = ln_gamma(&h, &Tolerance::default()).unwrap();
        let v = f.eval(c(0.2, 0.3)).unwrap();
        assert!(max_abs(&(v - mat2(c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)))) < 1e-12);
    }

    #[test]
    fn constant_tetra_lift() {
        let x = HolFunctionTetra::constant(TetraPoint::new(c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)));
        let f = ln_tetra(&x, &Tolerance::default()).unwrap();
        let r = 0.5f64.sqrt();
        let v = f.eval(c(-0.6, 0.1)).unwrap();
        assert!(max_abs(&(v - mat2(c(0.0, 0.0), c(-r, 0.0), c(r, 0.0), c(0.0, 0.0)))) < 1e-12);
        let back = ls_tetra(&f).eval(c(0.3, 0.3)).unwrap();
        assert!(back.dist(&TetraPoint::new(c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0))) < 1e-12);
    }

    #[test]
    fn outside_tetrablock_rejected() {
        let x = HolFunctionTetra::constant(TetraPoint::new(c(0.9, 0.0), c(0.9, 0.0), c(0.0, 0.0)));
        assert!(matches!(ln_tetra(&x, &Tolerance::default()), Err(Error::NotInTetrablock(_))));
    }
}
