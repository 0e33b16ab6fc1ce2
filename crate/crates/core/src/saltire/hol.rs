use crate::domains::{in_closed_gamma, tetra_membership_residual, GammaPoint, TetraPoint, Tolerance};
use crate::error::{Error, Result};
use crate::hardy::{EvaluableFunction, RationalFunction};
use crate::C64;

/// h = (s, p) : D → Γ.
#[derive(Debug, Clone)]
pub struct HolFunctionGamma {
    pub s: EvaluableFunction,
    pub p: EvaluableFunction,
}

/// x = (x1, x2, x3) : D → Ē.
#[derive(Debug, Clone)]
pub struct HolFunctionTetra {
    pub x1: EvaluableFunction,
    pub x2: EvaluableFunction,
    pub x3: EvaluableFunction,
}

impl HolFunctionGamma {
    pub fn new(s: EvaluableFunction, p: EvaluableFunction) -> Self {
        HolFunctionGamma { s, p }
    }

    pub fn constant(pt: GammaPoint) -> Self {
        Self::new(EvaluableFunction::constant(pt.s), EvaluableFunction::constant(pt.p))
    }

    pub fn eval(&self, lambda: C64) -> Result<GammaPoint> {
        Ok(GammaPoint::new(self.s.eval(lambda)?, self.p.eval(lambda)?))
    }

    pub fn rational(&self) -> Option<(RationalFunction, RationalFunction)> {
        Some((self.s.as_rational()?, self.p.as_rational()?))
    }

    /// Errors unless h(λ) ∈ Γ at every grid point.
    pub fn check_into_gamma(&self, grid: &[C64], tol: &Tolerance) -> Result<()> {
        for &lam in grid {
            let pt = self.eval(lam)?;
            if !in_closed_gamma(&pt, tol) {
                return Err(Error::NotInGamma(format!("h({lam}) = ({}, {})", pt.s, pt.p)));
            }
        }
        Ok(())
    }
}

impl HolFunctionTetra {
    pub fn new(x1: EvaluableFunction, x2: EvaluableFunction, x3: EvaluableFunction) -> Self {
        HolFunctionTetra { x1, x2, x3 }
    }

    pub fn constant(x: TetraPoint) -> Self {
        Self::new(
            EvaluableFunction::constant(x.x1),
            EvaluableFunction::constant(x.x2),
            EvaluableFunction::constant(x.x3),
        )
    }

    pub fn eval(&self, lambda: C64) -> Result<TetraPoint> {
        Ok(TetraPoint::new(self.x1.eval(lambda)?, self.x2.eval(lambda)?, self.x3.eval(lambda)?))
    }

    pub fn rational(&self) -> Option<(RationalFunction, RationalFunction, RationalFunction)> {
        Some((self.x1.as_rational()?, self.x2.as_rational()?, self.x3.as_rational()?))
    }

    /// Largest condition-(6) violation over the grid.
    pub fn membership_residual(&self, grid: &[C64]) -> Result<f64> {
        grid.iter()
            .try_fold(0.0f64, |m, &lam| Ok(m.max(tetra_membership_residual(&self.eval(lam)?))))
    }

    pub fn check_into_tetrablock(&self, grid: &[C64], tol: &Tolerance) -> Result<()> {
        for &lam in grid {
            let x = self.eval(lam)?;
            if tetra_membership_residual(&x) > tol.eps_member {
                return Err(Error::NotInTetrablock(format!("x({lam}) = {:?}", x.as_array())));
            }
        }
        Ok(())
    }
}
