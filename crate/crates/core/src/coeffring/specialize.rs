//! Exact evaluation of Laurent polynomials at an integer value of `q`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

use super::Laurent;

/// The value `rational + irrational * sqrt(q0)` of a Laurent polynomial at
/// `v = sqrt(q0)`. When `q0` is a perfect square the irrational part is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialized {
    pub q0: u64,
    pub rational: BigRational,
    pub irrational: BigRational,
}

impl Specialized {
    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }

    /// Exact quotient. Fails only on division by zero.
    pub fn div(&self, den: &Specialized) -> Result<Specialized> {
        if self.q0 != den.q0 {
            return Err(Error::InvalidArgument(format!("q = {} and q = {} differ", self.q0, den.q0)));
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // (a + b r)(c - d r) / (c^2 - d^2 q); r = sqrt(q) is irrational here.
        let q = BigRational::from_integer(BigInt::from(self.q0));
        let (a, b, c, d) = (&self.rational, &self.irrational, &den.rational, &den.irrational);
        let norm = c * c - d * d * &q;
        Ok(Specialized {
            q0: self.q0,
            rational: (a * c - b * d * &q) / &norm,
            irrational: (b * c - a * d) / &norm,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.irrational.to_f64().unwrap_or(f64::NAN);
        a + b * (self.q0 as f64).sqrt()
    }
}

impl fmt::Display for Specialized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.irrational.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}*sqrt({})", self.irrational, self.q0),
            (false, false) => {
                let sign = if self.irrational.is_negative() { '-' } else { '+' };
                write!(f, "{} {sign} {}*sqrt({})", self.rational, self.irrational.abs(), self.q0)
            }
        }
    }
}

fn pow(x: &BigRational, k: i64) -> BigRational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

impl<C: Coeff> Laurent<C> {
    /// Evaluate at `q = q0`, keeping even and odd powers of `v` apart.
    pub fn specialize(&self, q0: u64) -> Result<Specialized> {
        if q0 == 0 {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        let q = BigRational::from_integer(BigInt::from(q0));
        let mut out = Specialized { q0, rational: BigRational::zero(), irrational: BigRational::zero() };
        for (e, c) in self.terms() {
            let c = BigRational::from_integer(c.to_big());
            let odd = e.rem_euclid(2);
            let term = c * pow(&q, (e - odd) / 2);
            if odd == 0 {
                out.rational += term;
            } else {
                out.irrational += term;
            }
        }
        let root = q0.isqrt();
        if root * root == q0 {
            out.rational += out.irrational * BigRational::from_integer(BigInt::from(root));
            out.irrational = BigRational::zero();
        }
        Ok(out)
    }
}
