use crate::error::{Error, Result};
use crate::hardy::{InnerFactor, OuterFunction, RationalFunction};
use crate::C64;

/// Holomorphic scalar functions on the disc that can be evaluated pointwise.
/// Combinations of rational pieces are folded into a single rational
/// function by the constructors below.
#[derive(Debug, Clone)]
pub enum EvaluableFunction {
    Rational(RationalFunction),
    Inner(InnerFactor),
    Outer(OuterFunction),
    Sum(Vec<EvaluableFunction>),
    Product(Vec<EvaluableFunction>),
    Scaled(C64, Box<EvaluableFunction>),
    Reciprocal(Box<EvaluableFunction>),
}

use EvaluableFunction as E;

impl EvaluableFunction {
    pub fn constant(c: C64) -> Self {
        E::Rational(RationalFunction::constant(c))
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        match self {
            E::Rational(r) => r.eval(z),
            E::Inner(b) => Ok(b.eval(z)),
            E::Outer(o) => o.eval(z),
            E::Sum(fs) => fs.iter().try_fold(C64::new(0.0, 0.0), |acc, f| Ok(acc + f.eval(z)?)),
            E::Product(fs) => fs.iter().try_fold(C64::new(1.0, 0.0), |acc, f| Ok(acc * f.eval(z)?)),
            E::Scaled(s, f) => Ok(*s * f.eval(z)?),
            E::Reciprocal(f) => {
                let v = f.eval(z)?;
                if v.norm() < crate::domains::POLE_EPS {
                    return Err(Error::Pole(format!("reciprocal at {z}")));
                }
                Ok(1.0 / v)
            }
        }
    }

    /// Exact rational form, when every piece is rational or a Blaschke
    /// product.
    pub fn as_rational(&self) -> Option<RationalFunction> {
        match self {
            E::Rational(r) => Some(r.clone()),
            E::Inner(b) => Some(b.to_rational()),
            E::Outer(_) => None,
            E::Sum(fs) => {
                let mut acc = RationalFunction::constant(C64::new(0.0, 0.0));
                for f in fs {
                    acc = acc.add(&f.as_rational()?);
                }
                Some(acc)
            }
            E::Product(fs) => {
                let mut acc = RationalFunction::constant(C64::new(1.0, 0.0));
                for f in fs {
                    acc = acc.mul(&f.as_rational()?);
                }
                Some(acc)
            }
            E::Scaled(s, f) => Some(f.as_rational()?.scale(*s)),
            E::Reciprocal(f) => f.as_rational()?.recip().ok(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => E::Rational(a.add(&b)),
            _ => E::Sum(vec![self.clone(), other.clone()]),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => E::Rational(a.mul(&b)),
            _ => E::Product(vec![self.clone(), other.clone()]),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        match self.as_rational() {
            Some(a) => E::Rational(a.scale(s)),
            None => E::Scaled(s, Box::new(self.clone())),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn recip(&self) -> Self {
        match self.as_rational().and_then(|a| a.recip().ok()) {
            Some(r) => E::Rational(r),
            None => E::Reciprocal(Box::new(self.clone())),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }
}

impl From<RationalFunction> for EvaluableFunction {
    fn from(r: RationalFunction) -> Self {
        E::Rational(r)
    }
}

impl From<InnerFactor> for EvaluableFunction {
    fn from(b: InnerFactor) -> Self {
        E::Inner(b)
    }
}

impl From<OuterFunction> for EvaluableFunction {
    fn from(o: OuterFunction) -> Self {
        E::Outer(o)
    }
}

/// Values of `f` at `m` equispaced points of the circle of radius `r`.
pub fn boundary_profile(f: &EvaluableFunction, r: f64, m: usize) -> Result<Vec<C64>> {
    (0..m)
        .map(|j| f.eval(C64::from_polar(r, std::f64::consts::TAU * j as f64 / m as f64)))
        .collect()
}
