//! Truncated models of the completed algebras.
//!
//! A completed element is stored on every `w` with `l(w) <= exact_to`; each
//! coefficient is a [`TruncSeries`] whose precision is honest. What happens at
//! unstored lengths is summarised by a [`Tail`] envelope, which is what lets a
//! basis change bound the error of summing only finitely many terms.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::coeffring::{Direction, Laurent, TruncSeries};
use crate::error::{Error, Result};
use crate::hecke::{c_in_t, cprime_in_t, t_in_c, t_in_cprime, Basis, HeckeElt};
use crate::scalar::Coeff;
use crate::weyl::{Gen, WeylElt};

/// Decay of the coefficients that are not stored.
///
/// `Bounded { offset, slope }` promises that at every length `l > exact_to`
/// each coefficient vanishes below depth `offset + slope * l`, where depth is
/// the exponent for ascending series and its negative for descending ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    Zero,
    Bounded { offset: i64, slope: i64 },
    Unknown,
}

impl Tail {
    /// Envelope valid for both `self` and `other` at lengths above `from`.
    fn join(self, other: Tail, from: u32) -> Tail {
        match (self, other) {
            (Tail::Zero, t) | (t, Tail::Zero) => t,
            (Tail::Bounded { offset: o1, slope: s1 }, Tail::Bounded { offset: o2, slope: s2 }) => {
                let s = s1.min(s2);
                let first = from as i64 + 1;
                Tail::Bounded { offset: (o1 + (s1 - s) * first).min(o2 + (s2 - s) * first), slope: s }
            }
            _ => Tail::Unknown,
        }
    }

    fn shifted(self, by: i64) -> Tail {
        match self {
            Tail::Bounded { offset, slope } => Tail::Bounded { offset: offset + by, slope },
            t => t,
        }
    }

    fn to_json(self) -> Value {
        match self {
            Tail::Zero => json!("zero"),
            Tail::Bounded { offset, slope } => json!({"offset": offset, "slope": slope}),
            Tail::Unknown => Value::Null,
        }
    }

    fn from_json(value: &Value) -> Result<Tail> {
        match value {
            Value::Null => Ok(Tail::Unknown),
            Value::String(s) if s == "zero" => Ok(Tail::Zero),
            Value::Object(_) => {
                let get = |k: &str| value[k].as_i64().ok_or_else(|| Error::Parse(value.to_string()));
                Ok(Tail::Bounded { offset: get("offset")?, slope: get("slope")? })
            }
            _ => Err(Error::Parse(value.to_string())),
        }
    }
}

/// Depth of exponent `e`: how far it sits into the tail of a series in `dir`.
pub(crate) fn depth(dir: Direction, e: i64) -> i64 {
    match dir {
        Direction::Ascending => e,
        Direction::Descending => -e,
    }
}

/// The exponent whose depth is `d`; depth is its own inverse.
fn exponent_at_depth(dir: Direction, d: i64) -> i64 {
    depth(dir, d)
}

/// Smallest depth that may carry a nonzero coefficient, counting the unknown tail.
pub(crate) fn series_depth<C: Coeff>(s: &TruncSeries<C>) -> Option<i64> {
    let dir = s.direction();
    let known = match dir {
        Direction::Ascending => s.known().min_exp(),
        Direction::Descending => s.known().max_exp().map(|e| -e),
    };
    let unknown = s.precision().map(|p| depth(dir, p) + 1);
    match (known, unknown) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Labels for the basis a completed element is written in.
pub trait BasisTag: Copy + Eq + fmt::Debug + Send + Sync + 'static {
    fn tag(&self) -> &'static str;
    fn symbol(&self) -> &'static str;
    fn parse_tag(s: &str) -> Result<Self>;
}

impl BasisTag for Basis {
    fn tag(&self) -> &'static str {
        Basis::tag(*self)
    }

    fn symbol(&self) -> &'static str {
        match self {
            Basis::T => "T",
            Basis::C => "C",
            Basis::Cprime => "C'",
        }
    }

    fn parse_tag(s: &str) -> Result<Self> {
        s.parse()
    }
}

/// The `t`-basis of the asymptotic algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TBasis;

impl BasisTag for TBasis {
    fn tag(&self) -> &'static str {
        "t"
    }

    fn symbol(&self) -> &'static str {
        "t"
    }

    fn parse_tag(s: &str) -> Result<Self> {
        if s == "t" {
            Ok(TBasis)
        } else {
            Err(Error::Parse(s.to_string()))
        }
    }
}

/// A truncated element of a completion, written in basis `B`.
#[derive(Clone, PartialEq, Eq)]
pub struct Completed<B, C = i64> {
    basis: B,
    dir: Direction,
    cutoff: u32,
    order: i64,
    exact_to: u32,
    tail: Tail,
    coeffs: BTreeMap<WeylElt, TruncSeries<C>>,
}

/// A truncated element of the completed Hecke algebra.
pub type CompletedHecke<C = i64> = Completed<Basis, C>;

impl<B: BasisTag, C: Coeff> Completed<B, C> {
    /// Assemble an element; coefficients are capped at series order `order`
    /// and dropped beyond length `exact_to`.
    pub fn from_parts(
        basis: B,
        dir: Direction,
        cutoff: u32,
        order: i64,
        exact_to: u32,
        tail: Tail,
        coeffs: impl IntoIterator<Item = (WeylElt, TruncSeries<C>)>,
    ) -> Self {
        let cap = exponent_at_depth(dir, order);
        let mut map = BTreeMap::new();
        for (w, s) in coeffs {
            if w.len() > exact_to {
                continue;
            }
            let s = s.truncate(cap);
            if s.is_exact() && s.known().is_zero() {
                continue;
            }
            map.insert(w, s);
        }
        Completed { basis, dir, cutoff, order, exact_to, tail, coeffs: map }
    }

    /// Element with coefficient `f(w)` on every `w` with `l(w) <= cutoff`.
    pub fn from_fn(
        basis: B,
        dir: Direction,
        cutoff: u32,
        order: i64,
        tail: Tail,
        f: impl Fn(&WeylElt) -> Laurent<C>,
    ) -> Self {
        let coeffs = WeylElt::enumerate_by_length(0, cutoff).into_iter().map(|w| {
            let c = f(&w);
            (w, TruncSeries::exact(dir, c))
        });
        Self::from_parts(basis, dir, cutoff, order, cutoff, tail, coeffs)
    }

    pub fn basis(&self) -> B {
        self.basis
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    /// The length cutoff the element was built at.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// The series order `N`: no coefficient is known past `v^N` (ascending)
    /// or below `v^-N` (descending).
    pub fn series_order(&self) -> i64 {
        self.order
    }

    /// Largest length whose coefficients are certified.
    pub fn exact_to(&self) -> u32 {
        self.exact_to
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn coeff(&self, w: &WeylElt) -> Result<TruncSeries<C>> {
        if w.len() > self.exact_to {
            return Err(Error::BeyondCutoff { len: w.len(), exact_to: self.exact_to });
        }
        Ok(self.coeffs.get(w).cloned().unwrap_or_else(|| TruncSeries::zero(self.dir)))
    }

    /// Stored coefficients, including those known to vanish only up to precision.
    pub fn terms(&self) -> impl Iterator<Item = (&WeylElt, &TruncSeries<C>)> + '_ {
        self.coeffs.iter()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::WrongBasis { expected: self.basis.tag().into(), found: other.basis.tag().into() });
        }
        if self.dir != other.dir {
            return Err(Error::DirectionMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let exact_to = self.exact_to.min(other.exact_to);
        let mut coeffs: BTreeMap<WeylElt, TruncSeries<C>> = BTreeMap::new();
        for (w, s) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if w.len() > exact_to {
                continue;
            }
            let sum = match coeffs.remove(w) {
                Some(acc) => acc.add(s)?,
                None => s.clone(),
            };
            coeffs.insert(*w, sum);
        }
        let tail = self.dropped_envelope(exact_to).join(other.dropped_envelope(exact_to), exact_to);
        Ok(Self::from_parts(
            self.basis,
            self.dir,
            self.cutoff.min(other.cutoff),
            self.order.min(other.order),
            exact_to,
            tail,
            coeffs,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for s in out.coeffs.values_mut() {
            *s = s.neg();
        }
        out
    }

    /// Multiply every coefficient by an exact Laurent polynomial.
    pub fn scale(&self, a: &Laurent<C>) -> Self {
        if a.is_zero() {
            return Self::from_parts(self.basis, self.dir, self.cutoff, self.order, self.exact_to, Tail::Zero, []);
        }
        let lowest = match self.dir {
            Direction::Ascending => a.min_exp().unwrap(),
            Direction::Descending => -a.max_exp().unwrap(),
        };
        let coeffs: Vec<_> = self.coeffs.iter().map(|(w, s)| (*w, s.scale_poly(a))).collect();
        Self::from_parts(
            self.basis,
            self.dir,
            self.cutoff,
            self.order,
            self.exact_to,
            self.tail.shifted(lowest),
            coeffs,
        )
    }

    /// Envelope for all lengths above `from`, accounting for stored
    /// coefficients between `from` and `exact_to`.
    fn dropped_envelope(&self, from: u32) -> Tail {
        let mut tail = self.tail;
        if from >= self.exact_to {
            return tail;
        }
        for (w, s) in self.coeffs.range(WeylElt::alternating(Gen::S0, from + 1)..) {
            let Some(d) = series_depth(s) else { continue };
            let here = Tail::Bounded { offset: d, slope: 0 };
            // a single stored coefficient only constrains its own length
            tail = match tail {
                Tail::Zero => here,
                Tail::Bounded { offset, slope } => {
                    let o = offset.min(d - slope * w.len() as i64);
                    Tail::Bounded { offset: o, slope }
                }
                Tail::Unknown => Tail::Unknown,
            };
        }
        tail
    }

    /// Restrict to lengths `<= cutoff` and series order `order`.
    pub fn truncate(&self, cutoff: u32, order: i64) -> Self {
        let exact_to = self.exact_to.min(cutoff);
        let tail = self.dropped_envelope(exact_to);
        Self::from_parts(
            self.basis,
            self.dir,
            self.cutoff.min(cutoff),
            self.order.min(order),
            exact_to,
            tail,
            self.coeffs.iter().map(|(w, s)| (*w, s.clone())),
        )
    }

    /// Coefficientwise comparison on every length both sides certify, each
    /// coefficient only up to the precision both sides know. Returns the
    /// elements where the two disagree.
    pub fn mismatches(&self, other: &Self) -> Result<Vec<WeylElt>> {
        self.same_shape(other)?;
        let top = self.exact_to.min(other.exact_to);
        let mut bad = Vec::new();
        for w in WeylElt::enumerate_by_length(0, top) {
            if !self.coeff(&w)?.agrees_with(&other.coeff(&w)?)? {
                bad.push(w);
            }
        }
        Ok(bad)
    }

    /// The smallest depth to which every certified coefficient is known:
    /// comparisons are meaningful at least this far.
    pub fn guaranteed_depth(&self) -> Option<i64> {
        self.coeffs.values().filter_map(|s| s.precision().map(|p| depth(self.dir, p))).min()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.coeffs.iter().map(|(w, c)| json!({"w": w.word(), "coeff": c.to_json()})).collect();
        json!({
            "basis": self.basis.tag(),
            "dir": self.dir.tag(),
            "terms": terms,
            "cutoff": self.cutoff,
            "prec": self.order,
            "exactTo": self.exact_to,
            "tail": self.tail.to_json(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = || Error::Parse(value.to_string());
        let basis = B::parse_tag(value["basis"].as_str().ok_or_else(bad)?)?;
        let dir = match value["dir"].as_str().ok_or_else(bad)? {
            "asc" => Direction::Ascending,
            "desc" => Direction::Descending,
            _ => return Err(bad()),
        };
        let get = |k: &str| value[k].as_i64().ok_or_else(bad);
        let cutoff = u32::try_from(get("cutoff")?).map_err(|_| bad())?;
        let exact_to = u32::try_from(get("exactTo")?).map_err(|_| bad())?;
        let order = get("prec")?;
        let tail = Tail::from_json(&value["tail"])?;
        let mut coeffs = Vec::new();
        for t in value["terms"].as_array().ok_or_else(bad)? {
            let w: WeylElt = t["w"].as_str().ok_or_else(bad)?.parse()?;
            coeffs.push((w, TruncSeries::from_json(&t["coeff"])?));
        }
        Ok(Self::from_parts(basis, dir, cutoff, order, exact_to, tail, coeffs))
    }
}

impl<B: BasisTag, C: Coeff> fmt::Display for Completed<B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, c) in self.coeffs.iter() {
            if c.is_zero_within_precision() && c.is_exact() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) {}[{w}]", self.basis.symbol())?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + (lengths > {})", self.exact_to)
    }
}

impl<B: BasisTag, C: Coeff> fmt::Debug for Completed<B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Completed<{}, {}>({self})", self.basis.tag(), self.dir.tag())
    }
}

/// Entry of a change of basis matrix together with the linear form
/// `alpha * l(w) + beta * l(y)` giving the exponent of its monomial.
struct Transition<C> {
    entry: fn(&WeylElt, &WeylElt) -> Laurent<C>,
    alpha: i64,
    beta: i64,
    target: Basis,
    dir: Direction,
}

impl<C: Coeff> CompletedHecke<C> {
    /// Truncate an exact element of `H`. Coefficients for `C` are ascending,
    /// for `T` and `C'` descending.
    pub fn from_exact(h: &HeckeElt<C>, cutoff: u32, order: i64) -> Self {
        let dir = match h.basis() {
            Basis::C => Direction::Ascending,
            _ => Direction::Descending,
        };
        Self::from_exact_in(h, dir, cutoff, order)
    }

    pub fn from_exact_in(h: &HeckeElt<C>, dir: Direction, cutoff: u32, order: i64) -> Self {
        let mut tail = Tail::Zero;
        for (w, c) in h.terms() {
            if w.len() > cutoff {
                let d = match dir {
                    Direction::Ascending => c.min_exp().unwrap(),
                    Direction::Descending => -c.max_exp().unwrap(),
                };
                tail = tail.join(Tail::Bounded { offset: d, slope: 0 }, cutoff);
            }
        }
        let coeffs = h.terms().map(|(w, c)| (*w, TruncSeries::exact(dir, c.clone())));
        Self::from_parts(h.basis(), dir, cutoff, order, cutoff, tail, coeffs)
    }

    /// Reinterpret an element with exact coefficients and no tail as a
    /// series in the other direction.
    fn retag(&self, dir: Direction) -> Result<Self> {
        if self.dir == dir {
            return Ok(self.clone());
        }
        if self.tail != Tail::Zero || self.coeffs.values().any(|s| !s.is_exact()) {
            return Err(Error::DirectionMismatch);
        }
        let coeffs: Vec<_> = self.coeffs.iter().map(|(w, s)| (*w, TruncSeries::exact(dir, s.known().clone()))).collect();
        Ok(Self::from_parts(self.basis, dir, self.cutoff, self.order, self.exact_to, self.tail, coeffs))
    }

    /// Change of basis. `C` only lives on the ascending side and `C'` on the
    /// descending side; `T` follows whichever direction the element has.
    pub fn to_basis(&self, target: Basis) -> Result<Self> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let dir = match (self.basis, target) {
            (Basis::C, _) | (_, Basis::C) => Direction::Ascending,
            _ => Direction::Descending,
        };
        let start = self.retag(dir)?;
        let in_t = match start.basis {
            Basis::T => start,
            Basis::C => start.transform(Transition { entry: c_in_t, alpha: 1, beta: -2, target: Basis::T, dir })?,
            Basis::Cprime => {
                start.transform(Transition { entry: cprime_in_t, alpha: -1, beta: 0, target: Basis::T, dir })?
            }
        };
        match target {
            Basis::T => Ok(in_t),
            Basis::C => in_t.transform(Transition { entry: t_in_c, alpha: 2, beta: -1, target, dir }),
            Basis::Cprime => in_t.transform(Transition { entry: t_in_cprime, alpha: 0, beta: 1, target, dir }),
        }
    }

    fn transform(&self, tr: Transition<C>) -> Result<Self> {
        let sign = depth(tr.dir, 1);
        // depth of the tail contributions grows like `eff * l(w)`
        let bound = match self.tail {
            Tail::Zero => None,
            Tail::Bounded { offset, slope } => {
                let eff = slope + sign * tr.alpha;
                if eff <= 0 {
                    return Err(Error::UnboundedTail);
                }
                Some((offset, eff))
            }
            Tail::Unknown => return Err(Error::UnboundedTail),
        };
        let mut coeffs = Vec::new();
        for y in WeylElt::enumerate_by_length(0, self.exact_to) {
            let mut acc = TruncSeries::zero(tr.dir);
            for (w, s) in self.coeffs.range(y..) {
                if w.len() == y.len() && *w != y {
                    continue;
                }
                acc = acc.add(&s.scale_poly(&(tr.entry)(w, &y)))?;
            }
            if let Some((offset, eff)) = bound {
                let first_unknown = offset + eff * (self.exact_to as i64 + 1) + sign * tr.beta * y.len() as i64;
                acc = acc.forget_beyond(exponent_at_depth(tr.dir, first_unknown - 1));
            }
            coeffs.push((y, acc));
        }
        let tail = match bound {
            None => Tail::Zero,
            Some((offset, eff)) => Tail::Bounded { offset, slope: eff + sign * tr.beta },
        };
        Ok(Self::from_parts(tr.target, tr.dir, self.cutoff, self.order, self.exact_to, tail, coeffs))
    }

    /// The involution `j`, applied in the current basis (swapping `C` and `C'`).
    pub fn j_involution(&self) -> Self {
        let dir = self.dir.flip();
        match self.basis {
            Basis::T => {
                let coeffs: Vec<_> = self
                    .coeffs
                    .iter()
                    .map(|(w, s)| {
                        let l = w.len() as i64;
                        (*w, s.bar().scale_poly(&Laurent::signed_v_pow(l, -2 * l)))
                    })
                    .collect();
                let tail = match self.tail {
                    Tail::Bounded { offset, slope } => {
                        let slope = if dir == Direction::Ascending { slope - 2 } else { slope + 2 };
                        Tail::Bounded { offset, slope }
                    }
                    t => t,
                };
                Self::from_parts(Basis::T, dir, self.cutoff, self.order, self.exact_to, tail, coeffs)
            }
            Basis::C | Basis::Cprime => {
                let target = if self.basis == Basis::C { Basis::Cprime } else { Basis::C };
                let coeffs: Vec<_> = self
                    .coeffs
                    .iter()
                    .map(|(w, s)| (*w, s.bar().scale_poly(&Laurent::signed_v_pow(w.len() as i64, 0))))
                    .collect();
                Self::from_parts(target, dir, self.cutoff, self.order, self.exact_to, self.tail, coeffs)
            }
        }
    }

    /// Rewrite an element of the `T` basis in the `C'` basis.
    pub fn rewrite_in_cprime(&self) -> Result<Self> {
        if self.basis != Basis::T {
            return Err(Error::WrongBasis { expected: "T".into(), found: self.basis.tag().into() });
        }
        self.to_basis(Basis::Cprime)
    }
}

/// `sum over w starting with y of q^(l(w)/2) C_w`, for `y` not the identity.
pub fn cone_sum<C: Coeff>(y: &WeylElt, cutoff: u32, order: i64) -> Result<CompletedHecke<C>> {
    if y.is_identity() {
        return Err(Error::IdentityNotAllowed);
    }
    Ok(CompletedHecke::from_fn(
        Basis::C,
        Direction::Ascending,
        cutoff,
        order,
        Tail::Bounded { offset: 0, slope: 1 },
        |w| if w.starts_with(y) { Laurent::v_pow(w.len() as i64) } else { Laurent::zero() },
    ))
}

/// `sum over all w of q^(l(w)/2) C_w`.
pub fn total_sum<C: Coeff>(cutoff: u32, order: i64) -> CompletedHecke<C> {
    CompletedHecke::from_fn(
        Basis::C,
        Direction::Ascending,
        cutoff,
        order,
        Tail::Bounded { offset: 0, slope: 1 },
        |w| Laurent::v_pow(w.len() as i64),
    )
}

/// `g = sum over w of (-1)^l(w) q^-l(w) T_w`.
pub fn build_g<C: Coeff>(cutoff: u32, order: i64) -> CompletedHecke<C> {
    CompletedHecke::from_fn(
        Basis::T,
        Direction::Descending,
        cutoff,
        order,
        Tail::Bounded { offset: 0, slope: 2 },
        |w| {
            let l = w.len() as i64;
            Laurent::signed_v_pow(l, -2 * l)
        },
    )
}

/// Coefficient of `T_w` in `f~`: `q^-2m` on `(s1s0)^m` and `s0(s1s0)^m`,
/// `-q^(1-2m)` on `(s0s1)^m` and `s1(s0s1)^m`, for `m >= 1`.
fn ftilde_coeff<C: Coeff>(w: &WeylElt) -> Laurent<C> {
    let l = w.len() as i64;
    let m = l / 2;
    if m == 0 {
        return Laurent::zero();
    }
    let positive = matches!((w.first(), l % 2), (Some(Gen::S1), 0) | (Some(Gen::S0), 1));
    if positive {
        Laurent::q_pow(-2 * m)
    } else {
        -Laurent::q_pow(1 - 2 * m)
    }
}

/// The function `f = T_1 + T_s0 + f~`.
pub fn build_f<C: Coeff>(cutoff: u32, order: i64) -> CompletedHecke<C> {
    CompletedHecke::from_fn(
        Basis::T,
        Direction::Descending,
        cutoff,
        order,
        Tail::Bounded { offset: -4, slope: 2 },
        |w| if w.len() <= 1 && *w != WeylElt::s1() { Laurent::one() } else { ftilde_coeff(w) },
    )
}

/// `f~ = f - T_1 - T_s0`.
pub fn build_ftilde<C: Coeff>(cutoff: u32, order: i64) -> CompletedHecke<C> {
    CompletedHecke::from_fn(
        Basis::T,
        Direction::Descending,
        cutoff,
        order,
        Tail::Bounded { offset: -4, slope: 2 },
        ftilde_coeff,
    )
}

/// The `C'`-basis element `sum over n >= 1 of -q^-n (1 + q) C'_(s0s1)^n +
/// q^-n (v + v^-1) C'_s0(s1s0)^n`.
pub fn ftilde_prepared<C: Coeff>(cutoff: u32, order: i64) -> CompletedHecke<C> {
    CompletedHecke::from_fn(
        Basis::Cprime,
        Direction::Descending,
        cutoff,
        order,
        Tail::Bounded { offset: -2, slope: 1 },
        |w| {
            let l = w.len() as i64;
            let n = l / 2;
            if n == 0 || w.first() != Some(Gen::S0) {
                Laurent::zero()
            } else if l % 2 == 0 {
                -(&Laurent::q_pow(-n) + &Laurent::q_pow(1 - n))
            } else {
                &Laurent::q_pow(-n) * &Laurent::v_plus_vinv()
            }
        },
    )
}

/// The unit `(1 + q^-1) / (1 - q^-1) = 1 + 2q^-1 + 2q^-2 + ...`, known to `v^-order`.
pub fn g_prefactor<C: Coeff>(order: i64) -> Result<TruncSeries<C>> {
    let one = Laurent::<C>::one();
    let qi = Laurent::<C>::q_pow(-1);
    TruncSeries::expand_rational(&(&one + &qi), &(&one - &qi), Direction::Descending, -order)
}

/// `g` in the `C'` basis by its closed form: the prefactor times
/// `sum over w of (-1)^l(w) q^(-l(w)/2) C'_w`.
pub fn g_in_cprime<C: Coeff>(cutoff: u32, order: i64) -> Result<CompletedHecke<C>> {
    let u = g_prefactor::<C>(order)?;
    let coeffs: Vec<_> = WeylElt::enumerate_by_length(0, cutoff)
        .into_iter()
        .map(|w| {
            let l = w.len() as i64;
            (w, u.scale_poly(&Laurent::signed_v_pow(l, -l)))
        })
        .collect();
    Ok(CompletedHecke::from_parts(
        Basis::Cprime,
        Direction::Descending,
        cutoff,
        order,
        cutoff,
        Tail::Bounded { offset: 0, slope: 1 },
        coeffs,
    ))
}
