use crate::domains::POLE_EPS;
use crate::error::{Error, Result};
use crate::hardy::poly;
use crate::C64;

/// num(λ)/den(λ), coefficients ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    pub num: Vec<C64>,
    pub den: Vec<C64>,
}

impl RationalFunction {
    pub fn new(num: Vec<C64>, den: Vec<C64>) -> Result<Self> {
        if den.iter().all(|a| a.norm() == 0.0) {
            return Err(Error::ZeroDenominator);
        }
        let num = if num.is_empty() { vec![C64::new(0.0, 0.0)] } else { num };
        Ok(RationalFunction { num, den })
    }

    pub fn constant(c: C64) -> Self {
        RationalFunction { num: vec![c], den: vec![C64::new(1.0, 0.0)] }
    }

    pub fn polynomial(p: Vec<C64>) -> Self {
        RationalFunction { num: p, den: vec![C64::new(1.0, 0.0)] }
    }

    /// The identity λ ↦ λ.
    pub fn identity() -> Self {
        Self::polynomial(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)])
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        let d = poly::eval(&self.den, z);
        if d.norm() <= POLE_EPS * poly::max_coeff(&self.den) {
            return Err(Error::Pole(format!("rational function at {z}")));
        }
        Ok(poly::eval(&self.num, z) / d)
    }

    pub fn is_zero(&self) -> bool {
        poly::max_coeff(&self.num) <= 1e-15 * poly::max_coeff(&self.den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction {
            num: poly::mul(&self.num, &other.num),
            den: poly::mul(&self.den, &other.den),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalFunction { num: poly::add(&self.num, &other.num), den: self.den.clone() };
        }
        RationalFunction {
            num: poly::add(&poly::mul(&self.num, &other.den), &poly::mul(&other.num, &self.den)),
            den: poly::mul(&self.den, &other.den),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        RationalFunction { num: poly::scale(&self.num, s), den: self.den.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scale(C64::new(-1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction { num: self.den.clone(), den: self.num.clone() })
    }

    /// True when some root of the denominator lies in |λ| ≤ 1 + band.
    pub fn has_pole_in_closed_disc(&self, band: f64) -> bool {
        let den = poly::trim(&self.den, 1e-14);
        poly::roots(&den).iter().any(|r| r.norm() <= 1.0 + band)
    }

    /// Sample `n ≥ degree + 1` points of `f` on the unit circle and recover
    /// the polynomial of degree < n by the discrete Fourier transform.
    pub fn interpolate_polynomial(n: usize, f: impl Fn(C64) -> C64) -> Vec<C64> {
        let w: Vec<C64> = (0..n)
            .map(|j| C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64))
            .collect();
        let vals: Vec<C64> = w.iter().map(|&z| f(z)).collect();
        (0..n)
            .map(|k| {
                vals.iter()
                    .enumerate()
                    .map(|(j, &v)| v * w[(j * k) % n].conj())
                    .sum::<C64>()
                    / n as f64
            })
            .collect()
    }
}
