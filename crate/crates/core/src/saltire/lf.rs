//! LE / LW: Γ- and Ē-valued functions versus linear fractional families
//! φ(z, λ) = (a(λ) z + b(λ)) / (c(λ) z + d(λ)) in the bidisc Schur class.

use serde::{Deserialize, Serialize};

use crate::domains::{sunflower, Tolerance};
use crate::error::{Error, Result};
use crate::hardy::EvaluableFunction;
use crate::saltire::{HolFunctionGamma, HolFunctionTetra};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LfClass {
    /// b ≡ c, d nonvanishing.
    BEqualsC,
    /// d ≡ 1, and |c| ≤ 1 wherever a = bc.
    Lf,
}

#[derive(Debug, Clone)]
pub struct LinearFractionalFamily {
    pub a: EvaluableFunction,
    pub b: EvaluableFunction,
    pub c: EvaluableFunction,
    pub d: EvaluableFunction,
    pub class: LfClass,
}

/// Coefficient values at one λ.
#[derive(Debug, Clone, Copy)]
pub struct LfCoefficients {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl LfCoefficients {
    pub fn apply(&self, z: C64) -> Result<C64> {
        let den = self.c * z + self.d;
        if den.norm() < crate::domains::POLE_EPS {
            return Err(Error::Pole(format!("linear fractional map at z = {z}")));
        }
        Ok((self.a * z + self.b) / den)
    }
}

/// λ-points used to grid-check bidisc properties of a family.
pub fn lambda_check_grid() -> Vec<C64> {
    sunflower(64, 0.97)
}

impl LinearFractionalFamily {
    pub fn coefficients(&self, lambda: C64) -> Result<LfCoefficients> {
        Ok(LfCoefficients {
            a: self.a.eval(lambda)?,
            b: self.b.eval(lambda)?,
            c: self.c.eval(lambda)?,
            d: self.d.eval(lambda)?,
        })
    }

    pub fn eval(&self, z: C64, lambda: C64) -> Result<C64> {
        self.coefficients(lambda)?.apply(z)
    }

    /// sup |φ| over z on the circle of radius 1 − eps and λ on `lambdas`.
    pub fn sup_on_grid(&self, lambdas: &[C64], tol: &Tolerance) -> Result<f64> {
        let mut sup: f64 = 0.0;
        for &lam in lambdas {
            let k = self.coefficients(lam)?;
            let s = crate::domains::circle_sup(1.0 - tol.eps_member, tol.boundary_grid_size, |z| k.apply(z));
            sup = sup.max(s);
        }
        Ok(sup)
    }

    fn check_schur(&self, lambdas: &[C64], tol: &Tolerance) -> Result<()> {
        let sup = self.sup_on_grid(lambdas, tol)?;
        if sup > 1.0 + tol.eps_member {
            return Err(Error::NotSchurBidisc(format!("sup |phi| = {sup}")));
        }
        Ok(())
    }
}

pub fn le_gamma(h: &HolFunctionGamma) -> LinearFractionalFamily {
    let minus_half_s = h.s.scale(C64::new(-0.5, 0.0));
    LinearFractionalFamily {
        a: h.p.clone(),
        b: minus_half_s.clone(),
        c: minus_half_s,
        d: EvaluableFunction::constant(C64::new(1.0, 0.0)),
        class: LfClass::BEqualsC,
    }
}

pub fn lw_gamma(phi: &LinearFractionalFamily, tol: &Tolerance) -> Result<HolFunctionGamma> {
    let grid = lambda_check_grid();
    for &lam in &grid {
        let k = phi.coefficients(lam)?;
        if k.d.norm() < tol.eps_eq {
            return Err(Error::ZeroDenominator);
        }
        if (k.b - k.c).norm() > tol.eps_member * (1.0 + k.b.norm()) {
            return Err(Error::NotSchurBidisc(format!("b != c at lambda = {lam}")));
        }
    }
    phi.check_schur(&grid, tol)?;
    Ok(HolFunctionGamma::new(
        phi.b.div(&phi.d).scale(C64::new(-2.0, 0.0)),
        phi.a.div(&phi.d),
    ))
}

/// Ψ(z, x(λ)) = (x3 z − x1)/(x2 z − 1) written with d ≡ 1:
/// a = −x3, b = x1, c = −x2.
pub fn le_tetra(x: &HolFunctionTetra) -> LinearFractionalFamily {
    let minus = C64::new(-1.0, 0.0);
    LinearFractionalFamily {
        a: x.x3.scale(minus),
        b: x.x1.clone(),
        c: x.x2.scale(minus),
        d: EvaluableFunction::constant(C64::new(1.0, 0.0)),
        class: LfClass::Lf,
    }
}

#[derive(Debug, Clone)]
pub struct LwTetraOutput {
    pub x: HolFunctionTetra,
    /// a ≡ bc: the preimage is a family (b, −d, −bd); the d ≡ 0 member is
    /// returned.
    pub degenerate: bool,
}

pub fn lw_tetra(phi: &LinearFractionalFamily, tol: &Tolerance) -> Result<LwTetraOutput> {
    let grid = lambda_check_grid();
    let (a, b, c) = (phi.a.div(&phi.d), phi.b.div(&phi.d), phi.c.div(&phi.d));
    let mut degenerate = true;
    for &lam in &grid {
        let (av, bv, cv) = (a.eval(lam)?, b.eval(lam)?, c.eval(lam)?);
        if (av - bv * cv).norm() >= tol.eps_eq.max(1e-10) {
            degenerate = false;
        } else if cv.norm() > 1.0 + tol.eps_member {
            return Err(Error::NotSchurBidisc(format!("|c| > 1 where a = bc, lambda = {lam}")));
        }
    }
    phi.check_schur(&grid, tol)?;
    let zero = EvaluableFunction::constant(C64::new(0.0, 0.0));
    let minus = C64::new(-1.0, 0.0);
    let x = if degenerate {
        HolFunctionTetra::new(b, zero.clone(), zero)
    } else {
        HolFunctionTetra::new(b, c.scale(minus), a.scale(minus))
    };
    Ok(LwTetraOutput { x, degenerate })
}
