use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::Zero;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Exact Laurent polynomial in `v = q^(1/2)` with integer coefficients.
///
/// Exponents count powers of `v`, so `q` itself is exponent 2. Storage is
/// dense between the lowest and highest nonzero term; both ends are always
/// nonzero and the zero polynomial has no storage at all.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    lo: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { lo: exp, coeffs: vec![c] }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(C::one(), exp)
    }

    /// `q^k = v^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::v_pow(2 * k)
    }

    /// `±v^exp` with the sign `(-1)^parity`.
    pub fn signed_v_pow(parity: i64, exp: i64) -> Self {
        if parity.rem_euclid(2) == 0 {
            Self::v_pow(exp)
        } else {
            Self::monomial(-C::one(), exp)
        }
    }

    /// `v + v^-1`, i.e. `q^(1/2) + q^(-1/2)`.
    pub fn v_plus_vinv() -> Self {
        Self::from_terms([(-1, C::one()), (1, C::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut items: Vec<(i64, C)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if items.is_empty() {
            return Self::zero();
        }
        let lo = items.iter().map(|(e, _)| *e).min().unwrap();
        let hi = items.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in items.drain(..) {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::normalized(lo, coeffs)
    }

    fn normalized(mut lo: i64, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        lo += lead as i64;
        Laurent { lo, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> C {
        if exp < self.lo {
            return C::zero();
        }
        self.coeffs.get((exp - self.lo) as usize).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    /// The coefficient involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let hi = self.max_exp().unwrap();
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Laurent { lo: -hi, coeffs }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { lo: if self.is_zero() { 0 } else { self.lo + k }, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { lo: self.lo, coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Keep only terms with exponent in `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        Self::from_terms(self.terms().filter(|(e, _)| *e >= lo && *e <= hi).map(|(e, c)| (e, c.clone())))
    }

    /// True iff every exponent is `<= 0`, i.e. this is a polynomial in `q^(-1/2)`.
    pub fn is_poly_in_vinv(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= 0)
    }

    pub fn all_coeffs_nonpositive(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_positive())
    }

    /// Exact quotient `self / den`. Fails unless `den` divides `self` in the
    /// Laurent ring with an integral quotient.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let den_lo = den.lo;
        let den_lead = den.coeffs[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        let top = self.max_exp().unwrap() - den.max_exp().unwrap();
        while !rem.is_zero() {
            let e = rem.lo - den_lo;
            if e > top {
                return Err(Error::NotDivisible(format!("{self} by {den}")));
            }
            let c = rem.coeffs[0].clone();
            if !(c.clone() % den_lead.clone()).is_zero() {
                return Err(Error::NotDivisible(format!("{self} by {den}")));
            }
            let t = Self::monomial(c / den_lead.clone(), e);
            rem = &rem - &(&t * den);
            quot.push(t);
        }
        Ok(quot.into_iter().fold(Self::zero(), |a, b| &a + &b))
    }

    /// JSON object mapping exponent strings to integers.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (e, c) in self.terms() {
            map.insert(e.to_string(), coeff_to_json(c));
        }
        Value::Object(map)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse(value.to_string()))?;
        let mut terms = Vec::with_capacity(obj.len());
        for (k, v) in obj {
            let e: i64 = k.parse().map_err(|_| Error::Parse(k.clone()))?;
            let text = match v {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                _ => return Err(Error::Parse(v.to_string())),
            };
            let c = num_bigint::BigInt::parse_bytes(text.as_bytes(), 10)
                .and_then(|b| C::from_i128(i128::try_from(b).ok()?))
                .ok_or_else(|| Error::Parse(text.clone()))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

// Integers that fit in i64 are emitted as JSON numbers, larger ones as strings.
fn coeff_to_json<C: Coeff>(c: &C) -> Value {
    match i64::try_from(c.to_big()) {
        Ok(n) => Value::from(n),
        Err(_) => Value::String(c.to_string()),
    }
}

impl<C: Coeff> Default for Laurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> From<i64> for Laurent<C> {
    fn from(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }
}

fn add_impl<C: Coeff>(a: &Laurent<C>, b: &Laurent<C>, negate_b: bool) -> Laurent<C> {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.lo.min(b.lo);
    let hi = a.max_exp().unwrap().max(b.max_exp().unwrap());
    let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.lo - lo) as usize + i] = c.clone();
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.lo - lo) as usize + i];
        *slot = if negate_b { slot.clone() - c.clone() } else { slot.clone() + c.clone() };
    }
    Laurent::normalized(lo, coeffs)
}

fn mul_impl<C: Coeff>(a: &Laurent<C>, b: &Laurent<C>) -> Laurent<C> {
    if a.is_zero() || b.is_zero() {
        return Laurent::zero();
    }
    let mut coeffs = vec![C::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            coeffs[i + j] = coeffs[i + j].clone() + x.clone() * y.clone();
        }
    }
    Laurent::normalized(a.lo + b.lo, coeffs)
}

impl<C: Coeff> Add<&Laurent<C>> for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        add_impl(self, rhs, false)
    }
}

impl<C: Coeff> Sub<&Laurent<C>> for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: &Laurent<C>) -> Laurent<C> {
        add_impl(self, rhs, true)
    }
}

impl<C: Coeff> Mul<&Laurent<C>> for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        mul_impl(self, rhs)
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: Laurent<C>) -> Laurent<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coeff> $tr<&Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: &Laurent<C>) -> Laurent<C> {
                (&self).$m(rhs)
            }
        }
        impl<C: Coeff> $tr<Laurent<C>> for &Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: Laurent<C>) -> Laurent<C> {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<C: Coeff> AddAssign<&Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: &Laurent<C>) {
        *self = add_impl(self, rhs, false);
    }
}

impl<C: Coeff> AddAssign<Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: Laurent<C>) {
        *self = add_impl(self, &rhs, false);
    }
}

impl<C: Coeff> SubAssign<&Laurent<C>> for Laurent<C> {
    fn sub_assign(&mut self, rhs: &Laurent<C>) {
        *self = add_impl(self, rhs, true);
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    /// Renders in powers of `v`, highest first, e.g. `v^2 - 2 + v^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{mag}v")?,
                (_, true) => write!(f, "v^{e}")?,
                (_, false) => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = Laurent<i64>;

    fn poly_oracle_mul(a: &[(i64, i64)], b: &[(i64, i64)]) -> std::collections::BTreeMap<i64, i64> {
        let mut out = std::collections::BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                *out.entry(ea + eb).or_insert(0) += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    #[test]
    fn difference_of_squares() {
        let a = L::v_plus_vinv();
        let b = L::from_terms([(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, L::from_terms([(2, 1), (-2, -1)]));
    }

    #[test]
    fn absorbing_zero() {
        assert!((&L::v_plus_vinv() * &L::zero()).is_zero());
    }

    #[test]
    fn square_of_v_plus_vinv_matches_oracle() {
        let sq = L::v_plus_vinv().pow(2);
        let oracle = poly_oracle_mul(&[(1, 1), (-1, 1)], &[(1, 1), (-1, 1)]);
        let got: std::collections::BTreeMap<i64, i64> = sq.terms().map(|(e, c)| (e, *c)).collect();
        assert_eq!(got, oracle);
        assert_eq!(sq, L::from_terms([(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(L::v_pow(3).bar(), L::v_pow(-3));
        let a = L::from_terms([(2, 1), (0, 2)]);
        assert_eq!(a.bar(), L::from_terms([(-2, 1), (0, 2)]));
    }

    #[test]
    fn normalization_drops_zeros() {
        let a = L::from_terms([(3, 0), (1, 2), (1, -2), (0, 5)]);
        assert_eq!(a, L::constant(5));
        assert_eq!(a.min_exp(), Some(0));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division() {
        let one_plus_q = L::from_terms([(0, 1), (2, 1)]);
        let prod = &one_plus_q * &L::from_terms([(-3, 2), (5, -1)]);
        assert_eq!(prod.div_exact(&one_plus_q).unwrap(), L::from_terms([(-3, 2), (5, -1)]));
        assert!(L::one().div_exact(&one_plus_q).is_err());
        assert!(L::one().div_exact(&L::zero()).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(L::from_terms([(2, 1), (0, -2), (-1, 3)]).to_string(), "v^2 - 2 + 3v^-1");
        assert_eq!(L::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let a = L::v_plus_vinv();
        assert_eq!(a.to_json().to_string(), r#"{"-1":1,"1":1}"#);
        assert_eq!(L::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn bigint_coefficients() {
        let x = Laurent::<BigInt>::from_terms([(0, BigInt::from(1)), (2, BigInt::from(-1))]);
        let p = x.pow(40);
        assert_eq!(p.coeff(40), BigInt::from(137846528820u64));
    }
}
