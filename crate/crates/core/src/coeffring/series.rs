use std::fmt;

use num_traits::Zero;
use serde_json::{Map, Value};

use super::laurent::Laurent;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Which way the unknown tail of a truncated series runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Series in `v`: exponents above the precision order are unknown.
    Ascending,
    /// Series in `v^-1`: exponents below the precision order are unknown.
    Descending,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Ascending => Direction::Descending,
            Direction::Descending => Direction::Ascending,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Direction::Ascending => "asc",
            Direction::Descending => "desc",
        }
    }

    /// The tighter of two precision orders.
    fn tighter(self, a: i64, b: i64) -> i64 {
        match self {
            Direction::Ascending => a.min(b),
            Direction::Descending => a.max(b),
        }
    }

    /// +1 for ascending, -1 for descending: the step from the known side into the tail.
    fn outward(self) -> i64 {
        match self {
            Direction::Ascending => 1,
            Direction::Descending => -1,
        }
    }
}

fn tighter_opt(dir: Direction, a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(dir.tighter(x, y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// A Laurent series in `v` known up to an explicit precision order.
///
/// With precision `Some(p)`, an ascending series knows every coefficient of
/// `v^e` for `e <= p` and a descending one every coefficient for `e >= p`;
/// everything past `p` is unknown. `None` means the value is an exact Laurent
/// polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries<C> {
    dir: Direction,
    terms: Laurent<C>,
    prec: Option<i64>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn exact(dir: Direction, terms: Laurent<C>) -> Self {
        TruncSeries { dir, terms, prec: None }
    }

    /// A series known to `prec`; terms past `prec` are discarded.
    pub fn with_precision(dir: Direction, terms: Laurent<C>, prec: i64) -> Self {
        let terms = match dir {
            Direction::Ascending => terms.restrict(i64::MIN, prec),
            Direction::Descending => terms.restrict(prec, i64::MAX),
        };
        TruncSeries { dir, terms, prec: Some(prec) }
    }

    pub fn zero(dir: Direction) -> Self {
        Self::exact(dir, Laurent::zero())
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// The known part.
    pub fn known(&self) -> &Laurent<C> {
        &self.terms
    }

    pub fn is_known(&self, exp: i64) -> bool {
        match (self.prec, self.dir) {
            (None, _) => true,
            (Some(p), Direction::Ascending) => exp <= p,
            (Some(p), Direction::Descending) => exp >= p,
        }
    }

    pub fn coeff(&self, exp: i64) -> Result<C> {
        if self.is_known(exp) {
            Ok(self.terms.coeff(exp))
        } else {
            Err(Error::BeyondPrecision { exponent: exp, precision: self.prec.unwrap() })
        }
    }

    /// True when the known part is zero.
    pub fn is_zero_within_precision(&self) -> bool {
        self.terms.is_zero()
    }

    /// Tighten the precision to `order`; exact values with nothing to drop stay exact.
    pub fn truncate(&self, order: i64) -> Self {
        let beyond = match self.dir {
            Direction::Ascending => self.terms.max_exp().is_some_and(|e| e > order),
            Direction::Descending => self.terms.min_exp().is_some_and(|e| e < order),
        };
        if self.prec.is_none() && !beyond {
            return self.clone();
        }
        let p = self.prec.map_or(order, |p| self.dir.tighter(p, order));
        Self::with_precision(self.dir, self.terms.clone(), p)
    }

    /// Forget every coefficient past `order`, exact or not.
    pub fn forget_beyond(&self, order: i64) -> Self {
        let p = self.prec.map_or(order, |p| self.dir.tighter(p, order));
        Self::with_precision(self.dir, self.terms.clone(), p)
    }

    fn reconcile(&self, other: &Self) -> Result<Direction> {
        if self.dir == other.dir || other.is_exact() {
            Ok(self.dir)
        } else if self.is_exact() {
            Ok(other.dir)
        } else {
            Err(Error::DirectionMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let dir = self.reconcile(other)?;
        let prec = tighter_opt(dir, self.prec, other.prec);
        let sum = &self.terms + &other.terms;
        Ok(match prec {
            None => Self::exact(dir, sum),
            Some(p) => Self::with_precision(dir, sum, p),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncSeries { dir: self.dir, terms: -&self.terms, prec: self.prec }
    }

    /// The first exponent (in the tail direction) that could be nonzero,
    /// counting the unknown tail.
    fn leading_order(&self) -> Option<i64> {
        let known = match self.dir {
            Direction::Ascending => self.terms.min_exp(),
            Direction::Descending => self.terms.max_exp(),
        };
        let tail = self.prec.map(|p| p + self.dir.outward());
        match (known, tail) {
            (Some(k), _) => Some(k),
            (None, t) => t,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let dir = self.reconcile(other)?;
        let product = &self.terms * &other.terms;
        // Unknown contributions: tail(self) * other and self * tail(other).
        let mut first_unknown: Option<i64> = None;
        for (a, b) in [(self, other), (other, self)] {
            if let Some(p) = a.prec {
                if let Some(lead) = b.leading_order() {
                    let start = p + dir.outward() + lead;
                    first_unknown = Some(match first_unknown {
                        None => start,
                        Some(s) => match dir {
                            Direction::Ascending => s.min(start),
                            Direction::Descending => s.max(start),
                        },
                    });
                }
            }
        }
        Ok(match first_unknown {
            None => Self::exact(dir, product),
            Some(s) => Self::with_precision(dir, product, s - dir.outward()),
        })
    }

    /// Multiply by an exact Laurent polynomial.
    pub fn scale_poly(&self, poly: &Laurent<C>) -> Self {
        self.mul(&Self::exact(self.dir, poly.clone())).expect("exact operand never mismatches")
    }

    pub fn shift(&self, k: i64) -> Self {
        TruncSeries { dir: self.dir, terms: self.terms.shift(k), prec: self.prec.map(|p| p + k) }
    }

    /// `v -> v^-1`; the direction flips.
    pub fn bar(&self) -> Self {
        TruncSeries { dir: self.dir.flip(), terms: self.terms.bar(), prec: self.prec.map(|p| -p) }
    }

    /// Equality on every exponent known to both sides.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        let dir = self.reconcile(other)?;
        let prec = tighter_opt(dir, self.prec, other.prec);
        let diff = &self.terms - &other.terms;
        let agree = diff.terms().all(|(e, _)| match prec {
            None => false,
            Some(p) => match dir {
                Direction::Ascending => e > p,
                Direction::Descending => e < p,
            },
        });
        Ok(agree)
    }

    /// True when the known part ends at least `margin` exponents before the
    /// precision order, i.e. the series visibly terminates. Exact values always do.
    pub fn terminates(&self, margin: i64) -> bool {
        match self.prec {
            None => true,
            Some(p) => match self.dir {
                Direction::Ascending => self.terms.max_exp().is_none_or(|e| e <= p - margin),
                Direction::Descending => self.terms.min_exp().is_none_or(|e| e >= p + margin),
            },
        }
    }

    /// Expand `num / den` as a series in the given direction, known to `prec`.
    ///
    /// The leading term of `den` in that direction must be `±v^k`.
    pub fn expand_rational(num: &Laurent<C>, den: &Laurent<C>, dir: Direction, prec: i64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (lead_exp, lead) = match dir {
            Direction::Ascending => {
                let e = den.min_exp().unwrap();
                (e, den.coeff(e))
            }
            Direction::Descending => {
                let e = den.max_exp().unwrap();
                (e, den.coeff(e))
            }
        };
        if !lead.abs().is_one() {
            return Err(Error::NonUnitLeading(lead.to_string()));
        }
        let mut rem = num.clone();
        let mut quot: Vec<(i64, C)> = Vec::new();
        loop {
            let next = match dir {
                Direction::Ascending => rem.min_exp(),
                Direction::Descending => rem.max_exp(),
            };
            let Some(e) = next else { break };
            let qe = e - lead_exp;
            let past = match dir {
                Direction::Ascending => qe > prec,
                Direction::Descending => qe < prec,
            };
            if past {
                break;
            }
            // lead is ±1, so dividing is multiplying by it
            let c = rem.coeff(e) * lead.clone();
            rem = &rem - &den.shift(qe).scale(&c);
            quot.push((qe, c));
        }
        let terms = Laurent::from_terms(quot);
        if rem.is_zero() {
            Ok(Self::exact(dir, terms))
        } else {
            Ok(Self::with_precision(dir, terms, prec))
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = match self.terms.to_json() {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        map.insert("dir".into(), Value::from(self.dir.tag()));
        map.insert("prec".into(), self.prec.map_or(Value::Null, Value::from));
        Value::Object(map)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse(value.to_string()))?;
        let dir = match obj.get("dir").and_then(Value::as_str) {
            Some("asc") => Direction::Ascending,
            Some("desc") => Direction::Descending,
            _ => return Err(Error::Parse(value.to_string())),
        };
        let prec = match obj.get("prec") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_i64().ok_or_else(|| Error::Parse(v.to_string()))?),
        };
        let mut rest = obj.clone();
        rest.remove("dir");
        rest.remove("prec");
        let terms = Laurent::from_json(&Value::Object(rest))?;
        Ok(match prec {
            None => Self::exact(dir, terms),
            Some(p) => Self::with_precision(dir, terms, p),
        })
    }
}

impl<C: Coeff> From<Laurent<C>> for TruncSeries<C> {
    fn from(p: Laurent<C>) -> Self {
        Self::exact(Direction::Ascending, p)
    }
}

impl<C: Coeff> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prec {
            None => write!(f, "{}", self.terms),
            Some(p) => {
                let tail = p + self.dir.outward();
                if self.terms.is_zero() {
                    write!(f, "O(v^{tail})")
                } else {
                    write!(f, "{} + O(v^{tail})", self.terms)
                }
            }
        }
    }
}

impl<C: Coeff> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[{}]({self})", self.dir.tag())
    }
}

impl<C: Coeff> Zero for TruncSeries<C> {
    fn zero() -> Self {
        Self::zero(Direction::Ascending)
    }

    fn is_zero(&self) -> bool {
        self.is_exact() && self.terms.is_zero()
    }
}

impl<C: Coeff> std::ops::Add for TruncSeries<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        TruncSeries::add(&self, &rhs).expect("adding series of different directions")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type L = Laurent<i64>;
    type S = TruncSeries<i64>;

    fn q(k: i64) -> L {
        L::q_pow(k)
    }

    #[test]
    fn q_over_one_plus_q_descending() {
        // q/(1+q) = 1 - q^-1 + q^-2 - ...
        let s = S::expand_rational(&q(1), &(&L::one() + &q(1)), Direction::Descending, -15).unwrap();
        for n in 0..8 {
            assert_eq!(s.coeff(-2 * n).unwrap(), if n % 2 == 0 { 1 } else { -1 });
            assert_eq!(s.coeff(-2 * n - 1).unwrap(), 0);
        }
        assert!(s.coeff(-16).is_err());
    }

    #[test]
    fn g_prefactor_descending() {
        // 1 + 2q^-1/(1-q^-1) = (1+q^-1)/(1-q^-1) = 1 + 2q^-1 + 2q^-2 + ...
        let num = &L::one() + &q(-1);
        let den = &L::one() - &q(-1);
        let s = S::expand_rational(&num, &den, Direction::Descending, -20).unwrap();
        assert_eq!(s.coeff(0).unwrap(), 1);
        for n in 1..=10 {
            assert_eq!(s.coeff(-2 * n).unwrap(), 2);
        }
    }

    #[test]
    fn trivial_and_error_cases() {
        let s = S::expand_rational(&L::one(), &L::one(), Direction::Ascending, 10).unwrap();
        assert!(s.is_exact());
        assert_eq!(s.known(), &L::one());
        assert_eq!(
            S::expand_rational(&L::one(), &L::zero(), Direction::Ascending, 4),
            Err(Error::ZeroDenominator)
        );
        let two_plus_q = L::from_terms([(0, 2), (2, 1)]);
        assert!(matches!(
            S::expand_rational(&L::one(), &two_plus_q, Direction::Ascending, 4),
            Err(Error::NonUnitLeading(_))
        ));
        // the same denominator is fine in the other direction
        assert!(S::expand_rational(&L::one(), &two_plus_q, Direction::Descending, -4).is_ok());
    }

    #[test]
    fn expansion_times_denominator_reproduces_numerator() {
        let num = L::from_terms([(3, 2), (0, -1), (-1, 4)]);
        let den = L::from_terms([(0, 1), (1, -3), (2, 5)]);
        let s = S::expand_rational(&num, &den, Direction::Ascending, 12).unwrap();
        let back = s.scale_poly(&den);
        assert!(back.agrees_with(&S::exact(Direction::Ascending, num)).unwrap());
        assert_eq!(back.precision(), Some(12));
    }

    #[test]
    fn precision_propagates_through_products() {
        let a = S::with_precision(Direction::Ascending, L::from_terms([(0, 1), (1, 1)]), 5);
        let b = S::with_precision(Direction::Ascending, L::from_terms([(2, 1)]), 3);
        let ab = a.mul(&b).unwrap();
        // tail of a starts at v^6, times v^2 -> v^8; tail of b at v^4, times v^0 -> v^4
        assert_eq!(ab.precision(), Some(3));
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.precision(), Some(3));
        let d = S::with_precision(Direction::Descending, L::one(), -4);
        assert_eq!(a.add(&d), Err(Error::DirectionMismatch));
    }

    #[test]
    fn bar_flips_direction() {
        let a = S::with_precision(Direction::Ascending, L::from_terms([(1, 2), (3, 1)]), 4);
        let b = a.bar();
        assert_eq!(b.direction(), Direction::Descending);
        assert_eq!(b.precision(), Some(-4));
        assert_eq!(b.coeff(-1).unwrap(), 2);
        assert_eq!(b.bar(), a);
    }

    #[test]
    fn comparisons_beyond_precision_are_errors() {
        let a = S::with_precision(Direction::Descending, L::one(), -3);
        assert!(matches!(a.coeff(-4), Err(Error::BeyondPrecision { .. })));
        assert_eq!(a.coeff(-3), Ok(0));
    }

    #[test]
    fn truncate_is_idempotent_and_keeps_exactness() {
        let a = S::exact(Direction::Ascending, L::from_terms([(0, 1), (5, 2)]));
        assert!(a.truncate(6).is_exact());
        let t = a.truncate(3);
        assert_eq!(t.precision(), Some(3));
        assert_eq!(t.truncate(3), t);
    }

    #[test]
    fn json_roundtrip() {
        let a = S::with_precision(Direction::Descending, L::from_terms([(0, 1), (-2, 2)]), -8);
        let j = a.to_json();
        assert_eq!(j["dir"], "desc");
        assert_eq!(j["prec"], -8);
        assert_eq!(S::from_json(&j).unwrap(), a);
    }
}
