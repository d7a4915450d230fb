//! Iwahori-invariant functions on the punctured plane `F^2 \ {0}` and the
//! convolution action of `H`, its completion and `J` on them.
//!
//! The Iwahori orbits are laid out on a line of *positions*: `phi_n` sits at
//! `2n` and `psi_n` at `2n + 1`, increasing towards the origin. The closure at
//! position `p` is the sum of every orbit at a position `>= p`, so `phibar_n`
//! sits at `2n` and `psibar_n` at `2n + 1`, and
//! `phi_n = phibar_n - psibar_n`, `psi_n = psibar_n - phibar_(n+1)`.
//!
//! `T_s0` pairs the positions `(2n, 2n + 1)` and `T_s1` pairs `(2n - 1, 2n)`.
//! On a pair `(a, a + 1)`, `T_s` sends the orbit at `a + 1` to the orbit at `a`,
//! and the orbit at `a` to `(q - 1)` times itself plus `q` times the orbit at `a + 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::completion::{series_depth, CompletedHecke, Tail};
use crate::hecke::{Basis, HeckeElt};
use crate::jalg::{tw_in_t, tw_in_t_scaled, JElt};
use crate::report::Report;
use crate::{Coeff, Direction, Error, Gen, Laurent, Result, TruncSeries, WeylElt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Phi,
    Psi,
    PhiBar,
    PsiBar,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Phi => "phi",
            Kind::Psi => "psi",
            Kind::PhiBar => "phibar",
            Kind::PsiBar => "psibar",
        }
    }

    pub fn is_closure(self) -> bool {
        matches!(self, Kind::PhiBar | Kind::PsiBar)
    }
}

/// A basis function `phi(n)`, `psi(n)`, `phibar(n)` or `psibar(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: Kind,
    pub index: i64,
}

impl Symbol {
    pub fn phi(n: i64) -> Self {
        Symbol { kind: Kind::Phi, index: n }
    }

    pub fn psi(n: i64) -> Self {
        Symbol { kind: Kind::Psi, index: n }
    }

    pub fn phibar(n: i64) -> Self {
        Symbol { kind: Kind::PhiBar, index: n }
    }

    pub fn psibar(n: i64) -> Self {
        Symbol { kind: Kind::PsiBar, index: n }
    }

    pub fn position(self) -> i64 {
        match self.kind {
            Kind::Phi | Kind::PhiBar => 2 * self.index,
            Kind::Psi | Kind::PsiBar => 2 * self.index + 1,
        }
    }

    pub fn orbit_at(p: i64) -> Self {
        if p.rem_euclid(2) == 0 {
            Symbol::phi(p.div_euclid(2))
        } else {
            Symbol::psi(p.div_euclid(2))
        }
    }

    pub fn closure_at(p: i64) -> Self {
        if p.rem_euclid(2) == 0 {
            Symbol::phibar(p.div_euclid(2))
        } else {
            Symbol::psibar(p.div_euclid(2))
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind.name(), self.index)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let index: i64 = inner.trim().parse().map_err(|_| bad())?;
        let kind = match s[..open].trim() {
            "phi" => Kind::Phi,
            "psi" => Kind::Psi,
            "phibar" => Kind::PhiBar,
            "psibar" => Kind::PsiBar,
            _ => return Err(bad()),
        };
        Ok(Symbol { kind, index })
    }
}

/// Whether position `p` is the lower member of its `T_s` pair.
fn is_lower(s: Gen, p: i64) -> bool {
    p.rem_euclid(2) == s.index() as i64
}

/// A compactly supported `I`-invariant function, stored in the closure basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneFunction<C: Coeff = i64> {
    terms: BTreeMap<i64, Laurent<C>>,
}

impl<C: Coeff> Default for PlaneFunction<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> PlaneFunction<C> {
    pub fn zero() -> Self {
        PlaneFunction { terms: BTreeMap::new() }
    }

    pub fn closure(p: i64) -> Self {
        let mut f = Self::zero();
        f.add_closure(p, &Laurent::one());
        f
    }

    pub fn orbit(p: i64) -> Self {
        let mut f = Self::closure(p);
        f.add_closure(p + 1, &-Laurent::one());
        f
    }

    pub fn symbol(sym: Symbol) -> Self {
        if sym.kind.is_closure() {
            Self::closure(sym.position())
        } else {
            Self::orbit(sym.position())
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Symbol, Laurent<C>)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for (sym, c) in terms {
            f = f.add(&Self::symbol(sym).scale(&c));
        }
        f
    }

    fn add_closure(&mut self, p: i64, c: &Laurent<C>) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p).or_insert_with(Laurent::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Closure-basis terms in position order.
    pub fn closure_terms(&self) -> impl Iterator<Item = (Symbol, &Laurent<C>)> + '_ {
        self.terms.iter().map(|(&p, c)| (Symbol::closure_at(p), c))
    }

    /// Coefficient of a symbol: closure symbols read the closure basis, orbit
    /// symbols read the value of the function on that orbit.
    pub fn coeff(&self, sym: Symbol) -> Laurent<C> {
        if sym.kind.is_closure() {
            self.terms.get(&sym.position()).cloned().unwrap_or_else(Laurent::zero)
        } else {
            self.orbit_coeff(sym.position())
        }
    }

    /// Value on the orbit at position `p`.
    pub fn orbit_coeff(&self, p: i64) -> Laurent<C> {
        self.terms.range(..=p).fold(Laurent::zero(), |acc, (_, c)| &acc + c)
    }

    pub fn min_position(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_position(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&p, c) in &other.terms {
            out.add_closure(p, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PlaneFunction { terms: self.terms.iter().map(|(&p, c)| (p, -c)).collect() }
    }

    pub fn scale(&self, a: &Laurent<C>) -> Self {
        let mut out = Self::zero();
        for (&p, c) in &self.terms {
            out.add_closure(p, &(c * a));
        }
        out
    }

    /// Translate every position by `by`. Shifting by 2 is the periodicity
    /// `phi_n -> phi_(n+1)`; shifting by 1 realizes the swap of `s0` and `s1`.
    pub fn shift(&self, by: i64) -> Self {
        PlaneFunction { terms: self.terms.iter().map(|(&p, c)| (p + by, c.clone())).collect() }
    }

    /// Keep the closure terms at positions of the given parity.
    fn keep_parity(&self, parity: i64) -> Self {
        PlaneFunction {
            terms: self.terms.iter().filter(|(p, _)| p.rem_euclid(2) == parity).map(|(&p, c)| (p, c.clone())).collect(),
        }
    }

    /// `T_s * f`.
    pub fn act_simple(&self, s: Gen) -> Self {
        let q = Laurent::<C>::q_pow(1);
        let mut out = Self::zero();
        for (&p, c) in &self.terms {
            if is_lower(s, p) {
                out.add_closure(p, &(c * &q));
            } else {
                out.add_closure(p - 1, c);
                out.add_closure(p, &-c);
                out.add_closure(p + 1, &(c * &q));
            }
        }
        out
    }

    /// `T_w * f`; the rightmost letter of `w` acts first.
    pub fn act_t(&self, w: &WeylElt) -> Self {
        let letters: Vec<Gen> = w.letters().collect();
        letters.iter().rev().fold(self.clone(), |f, &s| f.act_simple(s))
    }

    /// `h * f` for a finite Hecke element in any basis.
    pub fn act_hecke(&self, h: &HeckeElt<C>) -> Self {
        let h = h.to_basis(Basis::T);
        let mut out = Self::zero();
        for (w, c) in h.terms() {
            out = out.add(&self.act_t(w).scale(c));
        }
        out
    }

    /// Orbit-basis view on `window`, exact at both ends.
    pub fn to_window(&self, window: Window) -> OrbitWindow<C> {
        let dir = Direction::Descending;
        let coeffs = (window.lo..=window.hi).map(|p| TruncSeries::exact(dir, self.orbit_coeff(p))).collect();
        let below_zero = self.min_position().is_none_or(|p| p >= window.lo);
        let above = if self.max_position().is_none_or(|p| p <= window.hi) {
            Some(TruncSeries::exact(dir, self.orbit_coeff(window.hi)))
        } else {
            None
        };
        OrbitWindow { lo: window.lo, coeffs, below_zero, above }
    }

    /// JSON object mapping closure symbols to coefficients.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (sym, c) in self.closure_terms() {
            map.insert(sym.to_string(), c.to_json());
        }
        Value::Object(map)
    }

    /// Accepts orbit and closure symbols alike.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse(value.to_string()))?;
        let mut terms = Vec::with_capacity(obj.len());
        for (k, v) in obj {
            terms.push((k.parse::<Symbol>()?, Laurent::from_json(v)?));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<C: Coeff> FromStr for PlaneFunction<C> {
    type Err = Error;

    /// Integer combinations of symbols, e.g. `2*phi(0) - psibar(-1)`, or `0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad());
        }
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == text.len() => (1, rest),
                _ => return Err(bad()),
            };
            let end = body.find(')').ok_or_else(bad)? + 1;
            let term = &body[..end];
            rest = &body[end..];
            let (factor, sym) = match term.split_once('*') {
                Some((k, sym)) => (k.parse::<i64>().map_err(|_| bad())?, sym),
                None => (1, term),
            };
            let c = Laurent::constant(C::from_int(sign * factor));
            out = out.add(&Self::symbol(sym.parse()?).scale(&c));
        }
        Ok(out)
    }
}

fn write_term<C: Coeff>(f: &mut fmt::Formatter<'_>, first: bool, c: &Laurent<C>, sym: Symbol) -> fmt::Result {
    // Integers print as `2*sym`, which parses back; anything else as `(c) sym`.
    if c.min_exp() == Some(0) && c.max_exp() == Some(0) {
        let k = c.coeff(0);
        let sign = match (first, k.is_negative()) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let k = k.abs();
        return if k.is_one() { write!(f, "{sign}{sym}") } else { write!(f, "{sign}{k}*{sym}") };
    }
    if !first {
        write!(f, " + ")?;
    }
    write!(f, "({c}) {sym}")
}

impl<C: Coeff> fmt::Display for PlaneFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (sym, c)) in self.closure_terms().enumerate() {
            write_term(f, i == 0, c, sym)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for PlaneFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneFunction({self})")
    }
}

/// A range of orbit positions `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: Symbol, hi: Symbol) -> Self {
        Window { lo: lo.position(), hi: hi.position() }
    }

    /// Positions of `phi(n)` and `psi(n)` widened by `radius` on both sides.
    pub fn around(n: i64, radius: i64) -> Self {
        Window { lo: 2 * n - radius, hi: 2 * n + 1 + radius }
    }
}

/// Orbit-basis coefficients on a window of positions.
///
/// Below the window the function is either known to vanish or unknown;
/// above it, it is either a known constant or unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitWindow<C: Coeff = i64> {
    lo: i64,
    coeffs: Vec<TruncSeries<C>>,
    below_zero: bool,
    above: Option<TruncSeries<C>>,
}

impl<C: Coeff> OrbitWindow<C> {
    /// A window with unknown surroundings.
    pub fn truncated(lo: i64, coeffs: Vec<TruncSeries<C>>) -> Self {
        OrbitWindow { lo, coeffs, below_zero: false, above: None }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn window(&self) -> Window {
        Window { lo: self.lo(), hi: self.hi() }
    }

    pub fn is_exact(&self) -> bool {
        self.below_zero && self.above.is_some() && self.coeffs.iter().all(TruncSeries::is_exact)
    }

    /// Coefficient at position `p`, including the known surroundings.
    pub fn get(&self, p: i64) -> Option<TruncSeries<C>> {
        if p < self.lo {
            self.below_zero.then(|| TruncSeries::zero(Direction::Descending))
        } else if p > self.hi() {
            self.above.clone()
        } else {
            Some(self.coeffs[(p - self.lo) as usize].clone())
        }
    }

    pub fn coeff(&self, orbit: Symbol) -> Option<TruncSeries<C>> {
        self.get(orbit.position())
    }

    pub fn entries(&self) -> impl Iterator<Item = (Symbol, &TruncSeries<C>)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, c)| (Symbol::orbit_at(self.lo + i as i64), c))
    }

    /// Smallest certified depth over the window.
    pub fn certified_depth(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.precision().map(|p| -p)).min()
    }

    /// The closure-basis function; both ends must be known and every
    /// coefficient exact.
    pub fn to_plane(&self) -> Result<PlaneFunction<C>> {
        if !self.is_exact() {
            return Err(Error::WindowOverflow { lo: self.lo, hi: self.hi() });
        }
        let mut f = PlaneFunction::zero();
        let mut prev = Laurent::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            f.add_closure(self.lo + i as i64, &(c.known() - &prev));
            prev = c.known().clone();
        }
        let top = self.above.as_ref().expect("checked exact").known();
        f.add_closure(self.hi() + 1, &(top - &prev));
        Ok(f)
    }

    /// `T_s` on the window. Known ends grow the window by one; unknown ends
    /// shrink it where an input is missing.
    pub fn act_simple(&self, s: Gen) -> Result<Self> {
        let q = Laurent::<C>::q_pow(1);
        let qm1 = &q - &Laurent::one();
        let lo = if self.below_zero { self.lo - 1 } else { self.lo };
        let hi = if self.above.is_some() { self.hi() + 1 } else { self.hi() };
        let mut coeffs = Vec::new();
        let mut first = None;
        for p in lo..=hi {
            let value = if is_lower(s, p) {
                match (self.get(p + 1), self.get(p)) {
                    (Some(up), Some(here)) => Some(up.add(&here.scale_poly(&qm1))?),
                    _ => None,
                }
            } else {
                self.get(p - 1).map(|down| down.scale_poly(&q))
            };
            match value {
                Some(v) => {
                    first.get_or_insert(p);
                    coeffs.push(v);
                }
                None if first.is_none() => {}
                None => break,
            }
        }
        let lo = first.ok_or(Error::WindowOverflow { lo: self.lo, hi: self.hi() })?;
        let above = self.above.as_ref().map(|k| k.scale_poly(&q));
        Ok(OrbitWindow { lo, coeffs, below_zero: self.below_zero, above })
    }

    pub fn act_t(&self, w: &WeylElt) -> Result<Self> {
        let letters: Vec<Gen> = w.letters().collect();
        letters.iter().rev().try_fold(self.clone(), |acc, &s| acc.act_simple(s))
    }

    /// Agreement on every position both windows hold, within precision.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().min(other.hi());
        for p in lo..=hi {
            let (a, b) = (self.get(p).expect("inside"), other.get(p).expect("inside"));
            if !a.agrees_with(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .entries()
            .map(|(sym, c)| json!({"symbol": sym.to_string(), "coeff": c.to_json()}))
            .collect();
        json!({
            "lo": Symbol::orbit_at(self.lo).to_string(),
            "hi": Symbol::orbit_at(self.hi()).to_string(),
            "coeffs": coeffs,
            "belowZero": self.below_zero,
            "above": self.above.as_ref().map(TruncSeries::to_json),
        })
    }
}

impl<C: Coeff> fmt::Display for OrbitWindow<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.below_zero {
            write!(f, "... ")?;
        }
        for (i, (sym, c)) in self.entries().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{sym}: {c}")?;
        }
        match &self.above {
            Some(k) => write!(f, ", then {k}"),
            None => write!(f, " ..."),
        }
    }
}

/// Result of acting by a completed element on a window.
#[derive(Debug, Clone)]
pub struct SeriesAction<C: Coeff = i64> {
    pub window: OrbitWindow<C>,
    /// Largest length summed.
    pub cutoff: u32,
    /// Smallest cutoff from which every window coefficient stays unchanged.
    pub stable_from: u32,
}

/// `c * f` on `window` by summing `c_w T_w * f` over lengths up to the
/// certified cutoff of `c`, which must be a `T`-basis element expanded in
/// `q^-1`.
///
/// Each partial sum is certified to the depth below which the remaining
/// lengths cannot contribute. Coefficients are accepted once they are unchanged
/// across the last two cutoff increments and certified to at least `min_depth`.
pub fn act_completed<C: Coeff>(
    c: &CompletedHecke<C>,
    f: &PlaneFunction<C>,
    window: Window,
    min_depth: i64,
) -> Result<SeriesAction<C>> {
    if c.basis() != Basis::T {
        return Err(Error::WrongBasis { expected: Basis::T.to_string(), found: c.basis().to_string() });
    }
    if c.direction() != Direction::Descending {
        return Err(Error::DirectionMismatch);
    }
    let dir = Direction::Descending;
    let top = c.exact_to();
    let width = (window.hi - window.lo + 1).max(0) as usize;
    if width == 0 {
        return Err(Error::WindowOverflow { lo: window.lo, hi: window.hi });
    }
    // Moving up by d positions at length l costs at most q^((l + d)/2 + 1).
    let reach = f.min_position().map_or(0, |p| (window.hi - p).max(0));
    let beyond_top = match c.tail() {
        Tail::Zero => i64::MAX,
        Tail::Bounded { offset, slope } if slope >= 1 => {
            let next = top as i64 + 1;
            if next < reach {
                i64::MIN
            } else {
                offset + (slope - 1) * next - reach - 2
            }
        }
        _ => return Err(Error::UnboundedTail),
    };

    let mut contribs: Vec<Vec<TruncSeries<C>>> = Vec::with_capacity(top as usize + 1);
    for len in 0..=top {
        let mut row = vec![TruncSeries::zero(dir); width];
        for w in WeylElt::of_length(len) {
            let cw = c.coeff(&w)?;
            let g = f.act_t(&w);
            for (i, slot) in row.iter_mut().enumerate() {
                let a = g.orbit_coeff(window.lo + i as i64);
                if !a.is_zero() {
                    *slot = slot.add(&cw.scale_poly(&a))?;
                }
            }
        }
        contribs.push(row);
    }

    // omitted[l]: smallest depth any length >= l can still reach in the window.
    let mut omitted = vec![beyond_top; top as usize + 2];
    for len in (0..=top as usize).rev() {
        let row_depth = contribs[len].iter().filter_map(series_depth).min().unwrap_or(i64::MAX);
        omitted[len] = omitted[len + 1].min(row_depth);
    }

    let mut history: Vec<Vec<TruncSeries<C>>> = Vec::with_capacity(top as usize + 1);
    let mut partial = vec![TruncSeries::zero(dir); width];
    for len in 0..=top as usize {
        for (slot, add) in partial.iter_mut().zip(&contribs[len]) {
            *slot = slot.add(add)?;
        }
        let known_below = omitted[len + 1];
        let certified = partial
            .iter()
            .map(|s| if known_below == i64::MAX { s.clone() } else { s.forget_beyond(1i64.saturating_sub(known_below)) })
            .collect();
        history.push(certified);
    }

    let deep_enough = |row: &[TruncSeries<C>]| row.iter().all(|s| s.precision().is_none_or(|p| -p >= min_depth));
    let same = |a: &[TruncSeries<C>], b: &[TruncSeries<C>]| -> Result<bool> {
        for (x, y) in a.iter().zip(b) {
            if !x.agrees_with(y)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let last = history.last().expect("at least length 0");
    let mut stable_from = top as usize;
    while stable_from > 0 && deep_enough(&history[stable_from - 1]) && same(&history[stable_from - 1], last)? {
        stable_from -= 1;
    }
    if !deep_enough(last) || top as usize - stable_from < 2 {
        // Cutoff at which the omitted lengths sit below min_depth, and the
        // order keeping every summed term known that deep.
        let need_cutoff = match c.tail() {
            Tail::Bounded { offset, slope } if slope > 1 => {
                let need = min_depth + 3 + reach - offset;
                let next = (need + slope - 2) / (slope - 1);
                (next - 1).max(reach).max(0) as u32 + 2
            }
            _ => 2 * top.max(1),
        };
        let order_for = |cut: u32| cut as i64 + reach + 2 + min_depth;
        let suggested = if top >= need_cutoff && c.series_order() >= order_for(top) {
            top + 2
        } else {
            need_cutoff.max(top)
        };
        return Err(Error::NotStabilized {
            cutoff: top,
            order: c.series_order(),
            suggested,
            suggested_order: c.series_order().max(order_for(suggested)),
        });
    }
    let window = OrbitWindow::truncated(window.lo, last.clone());
    Ok(SeriesAction { window, cutoff: top, stable_from: stable_from as u32 })
}

/// `sum over w starting with u of (-1)^l(w) q^-l(w) T_w` acting on `f`.
///
/// Summed over all lengths, these cone series act on the closure basis by
/// `cone(s) = -(projection onto the positions where s is lower)`, and
/// `cone(u) = (-1)^l(u) q^-l(u) T_u (1 + cone(s'))` with `s'` the letter
/// that may follow `u`.
pub fn cone_action<C: Coeff>(u: &WeylElt, f: &PlaneFunction<C>) -> Result<PlaneFunction<C>> {
    let last = u.last().ok_or(Error::IdentityNotAllowed)?;
    let next = last.other();
    // 1 + cone(next) keeps the positions where `next` is upper.
    let kept = f.keep_parity(1 - next.index() as i64);
    let l = u.len() as i64;
    Ok(kept.act_t(u).scale(&Laurent::signed_v_pow(l, -2 * l)))
}

/// `sum over w with l(w) < k of (-1)^l(w) q^-l(w) T_w` acting on `f`.
fn alternating_short<C: Coeff>(k: u32, f: &PlaneFunction<C>) -> PlaneFunction<C> {
    let mut out = PlaneFunction::zero();
    for w in WeylElt::enumerate_by_length(0, k.saturating_sub(1)) {
        if k == 0 {
            break;
        }
        let l = w.len() as i64;
        out = out.add(&f.act_t(&w).scale(&Laurent::signed_v_pow(l, -2 * l)));
    }
    out
}

/// `sum over w with l(w) < k of T_w` acting on `f`.
fn plain_short<C: Coeff>(k: u32, f: &PlaneFunction<C>) -> PlaneFunction<C> {
    let mut out = PlaneFunction::zero();
    if k == 0 {
        return out;
    }
    for w in WeylElt::enumerate_by_length(0, k - 1) {
        out = out.add(&f.act_t(&w));
    }
    out
}

/// `g = sum over all w of (-1)^l(w) q^-l(w) T_w` acting on `f`.
pub fn g_action<C: Coeff>(f: &PlaneFunction<C>) -> PlaneFunction<C> {
    let s0 = cone_action(&WeylElt::s0(), f).expect("not the identity");
    let s1 = cone_action(&WeylElt::s1(), f).expect("not the identity");
    f.add(&s0).add(&s1)
}

/// `t_y * f`, exactly, from the `T`-basis expansion of `t_y` regrouped into
/// cone series and finite sums.
pub fn t_action<C: Coeff>(y: &WeylElt, f: &PlaneFunction<C>) -> Result<PlaneFunction<C>> {
    let one_plus_q = &Laurent::<C>::one() + &Laurent::q_pow(1);
    let scaled = if y.is_identity() {
        g_action(f).scale(&(&Laurent::q_pow(1) - &Laurent::one()))
    } else {
        let n = y.len() as i64;
        let g = g_action(f);
        let mut acc = PlaneFunction::zero();
        for k in 1..=y.len() {
            let sign_q = Laurent::signed_v_pow(k as i64, 2 - 2 * k as i64);
            let x = cone_action(&y.prefix(k), f)?
                .scale(&one_plus_q)
                .sub(&g)
                .add(&alternating_short(k, f))
                .add(&plain_short(k, f).scale(&sign_q));
            acc = acc.add(&x.scale(&Laurent::q_pow(k as i64 - n)));
        }
        acc.scale(&-Laurent::v_pow(n - 1))
    };
    let mut out = PlaneFunction::zero();
    for (&p, c) in &scaled.terms {
        out.add_closure(p, &c.div_exact(&one_plus_q)?);
    }
    Ok(out)
}

/// `x * f` for a finite element of `J`.
pub fn j_action<C: Coeff>(x: &JElt<C>, f: &PlaneFunction<C>) -> Result<PlaneFunction<C>> {
    let mut out = PlaneFunction::zero();
    for (w, c) in x.terms() {
        out = out.add(&t_action(w, f)?.scale(c));
    }
    Ok(out)
}

/// One of the eight closed forms for `T_w` on an orbit function, indexed
/// `1..=8`: returns `(w, input, T_w * input)`.
pub fn general_tw_formula<C: Coeff>(formula: u8, n: u32, m: i64) -> Option<(WeylElt, Symbol, PlaneFunction<C>)> {
    use Gen::{S0, S1};
    let ni = n as i64;
    let q = |k: i64| Laurent::<C>::q_pow(k);
    let qm1 = &q(1) - &Laurent::one();
    let orbit = |sym: Symbol, c: Laurent<C>| PlaneFunction::symbol(sym).scale(&c);
    let series = |from: i64, to: i64, lead: i64, sym: &dyn Fn(i64) -> Symbol| {
        let mut acc = PlaneFunction::zero();
        for k in from..=to {
            acc = acc.add(&orbit(sym(k), q(lead - k)));
        }
        acc.scale(&qm1)
    };
    let one = Laurent::one();
    let out = match formula {
        1 => (WeylElt::alternating(S1, 2 * n), Symbol::psi(m), orbit(Symbol::psi(m - ni), one)),
        2 => (WeylElt::alternating(S0, 2 * n + 1), Symbol::psi(m), orbit(Symbol::phi(m - ni), one)),
        3 => (WeylElt::alternating(S0, 2 * n), Symbol::phi(m), orbit(Symbol::phi(m - ni), one)),
        4 => (WeylElt::alternating(S1, 2 * n + 1), Symbol::phi(m), orbit(Symbol::psi(m - ni - 1), one)),
        5 => (
            WeylElt::alternating(S1, 2 * n),
            Symbol::phi(m),
            orbit(Symbol::phi(m + ni), q(2 * ni)).add(&series(1, 2 * ni, 2 * ni, &|k| Symbol::psi(m + ni - k))),
        ),
        6 => (
            WeylElt::alternating(S0, 2 * n + 1),
            Symbol::phi(m),
            orbit(Symbol::psi(m + ni), q(2 * ni + 1)).add(&series(0, 2 * ni, 2 * ni, &|k| Symbol::phi(m + ni - k))),
        ),
        7 => (
            WeylElt::alternating(S0, 2 * n),
            Symbol::psi(m),
            orbit(Symbol::psi(m + ni), q(2 * ni)).add(&series(1, 2 * ni, 2 * ni, &|k| Symbol::phi(m + ni + 1 - k))),
        ),
        8 => (
            WeylElt::alternating(S1, 2 * n + 1),
            Symbol::psi(m),
            orbit(Symbol::phi(m + ni + 1), q(2 * ni + 1)).add(&series(0, 2 * ni, 2 * ni, &|k| Symbol::psi(m + ni - k))),
        ),
        _ => return None,
    };
    Some(out)
}

/// Compare the eight closed forms with iterated simple reflections for
/// `n <= n_max` and `m` in `m_range`.
pub fn verify_general_tw(n_max: u32, m_range: std::ops::RangeInclusive<i64>) -> Report {
    let mut report = Report::new();
    for formula in 1..=8u8 {
        let mut bad = Vec::new();
        let mut count = 0;
        for n in 0..=n_max {
            for m in m_range.clone() {
                let (w, input, expect) = general_tw_formula::<i64>(formula, n, m).expect("formula in range");
                count += 1;
                if PlaneFunction::symbol(input).act_t(&w) != expect {
                    bad.push(format!("n={n},m={m}"));
                }
            }
        }
        let detail = if bad.is_empty() { format!("{count} cases") } else { format!("mismatch at {}", bad.join(" ")) };
        report.push(format!("T_w formula {formula}"), bad.is_empty(), detail);
    }
    report
}

/// The closure-basis action of the simple reflections.
fn closure_rules(n: i64) -> Vec<(&'static str, PlaneFunction<i64>, PlaneFunction<i64>)> {
    let q = Laurent::<i64>::q_pow(1);
    let sym = |s: Symbol| PlaneFunction::<i64>::symbol(s);
    vec![
        ("T_s0 phibar", sym(Symbol::phibar(n)).act_simple(Gen::S0), sym(Symbol::phibar(n)).scale(&q)),
        ("T_s1 psibar", sym(Symbol::psibar(n)).act_simple(Gen::S1), sym(Symbol::psibar(n)).scale(&q)),
        (
            "T_s0 psibar",
            sym(Symbol::psibar(n)).act_simple(Gen::S0),
            sym(Symbol::phibar(n)).sub(&sym(Symbol::psibar(n))).add(&sym(Symbol::phibar(n + 1)).scale(&q)),
        ),
        (
            "T_s1 phibar",
            sym(Symbol::phibar(n)).act_simple(Gen::S1),
            sym(Symbol::psibar(n - 1)).sub(&sym(Symbol::phibar(n))).add(&sym(Symbol::psibar(n)).scale(&q)),
        ),
    ]
}

fn all_symbols(m: i64) -> [Symbol; 4] {
    [Symbol::phi(m), Symbol::psi(m), Symbol::phibar(m), Symbol::psibar(m)]
}

/// The plane-action checks: the closure formulas for `T_s`, the cone series,
/// `t_1` acting trivially, `t_s0` projecting onto `K`-invariants and
/// `t_s0 + t_s1 = 1`, each for `m` in `[-5, 5]`. Every exact `t`-action is
/// cross-checked against the truncated series action at the given cutoff.
pub fn verify_plane(cutoff: u32, order: i64) -> Result<Report> {
    let mut report = Report::new();
    let ms = -5..=5i64;
    let sym = |s: Symbol| PlaneFunction::<i64>::symbol(s);

    let mut bad = Vec::new();
    for m in ms.clone() {
        for (name, got, expect) in closure_rules(m) {
            if got != expect {
                bad.push(format!("{name}({m})"));
            }
        }
    }
    report.push("closure action", bad.is_empty(), if bad.is_empty() { "4 rules".into() } else { bad.join(" ") });

    let exact_checks: [(&str, &dyn Fn(Symbol) -> Option<PlaneFunction<i64>>, WeylElt); 3] = [
        ("t_1 kills orbits", &|s| (!s.kind.is_closure()).then(PlaneFunction::zero), WeylElt::identity()),
        (
            "t_s0 projects onto phibar",
            &|s| match s.kind {
                Kind::PhiBar => Some(sym(s)),
                Kind::PsiBar => Some(PlaneFunction::zero()),
                _ => None,
            },
            WeylElt::s0(),
        ),
        (
            "t_s1 projects onto psibar",
            &|s| match s.kind {
                Kind::PsiBar => Some(sym(s)),
                Kind::PhiBar => Some(PlaneFunction::zero()),
                _ => None,
            },
            WeylElt::s1(),
        ),
    ];
    for (name, expect, y) in exact_checks {
        let mut bad = Vec::new();
        for m in ms.clone() {
            for s in all_symbols(m) {
                if let Some(e) = expect(s) {
                    if t_action(&y, &sym(s))? != e {
                        bad.push(s.to_string());
                    }
                }
            }
        }
        report.push(name, bad.is_empty(), if bad.is_empty() { String::new() } else { bad.join(" ") });
    }

    let mut bad = Vec::new();
    for m in ms.clone() {
        for s in all_symbols(m) {
            let f = sym(s);
            if t_action(&WeylElt::s0(), &f)?.add(&t_action(&WeylElt::s1(), &f)?) != f {
                bad.push(s.to_string());
            }
        }
    }
    report.push("t_s0 + t_s1 = 1", bad.is_empty(), bad.join(" "));

    // Cross-check every exact t-action against truncated summation.
    let min_depth = 4;
    let mut bad = Vec::new();
    let mut latest = 0;
    for y in [WeylElt::identity(), WeylElt::s0(), WeylElt::s1()] {
        let series = tw_in_t::<i64>(&y, cutoff, order)?;
        for m in ms.clone() {
            for s in all_symbols(m) {
                let f = sym(s);
                let window = Window::around(m, 3);
                let got = act_completed(&series, &f, window, min_depth)?;
                latest = latest.max(got.stable_from);
                if !got.window.agrees_with(&t_action(&y, &f)?.to_window(window))? {
                    bad.push(format!("t_{y} * {s}"));
                }
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("stable from cutoff {latest} of {cutoff}, depth >= {min_depth}")
    } else {
        bad.join(" ")
    };
    report.push("series action agrees", bad.is_empty(), detail);

    let cones = [WeylElt::s0(), WeylElt::s1(), WeylElt::parse("01")?, WeylElt::parse("101")?];
    let mut bad = Vec::new();
    for u in &cones {
        let series = CompletedHecke::<i64>::from_fn(
            Basis::T,
            Direction::Descending,
            cutoff,
            order,
            Tail::Bounded { offset: 0, slope: 2 },
            |w| {
                let l = w.len() as i64;
                if w.starts_with(u) { Laurent::signed_v_pow(l, -2 * l) } else { Laurent::zero() }
            },
        );
        for m in -2..=2 {
            for s in all_symbols(m) {
                let f = sym(s);
                let window = Window::around(m, 3);
                let got = act_completed(&series, &f, window, min_depth)?;
                if !got.window.agrees_with(&cone_action(u, &f)?.to_window(window))? {
                    bad.push(format!("cone {u} * {s}"));
                }
            }
        }
    }
    report.push("cone series", bad.is_empty(), bad.join(" "));

    let g = crate::completion::build_g::<i64>(cutoff, order);
    let mut bad = Vec::new();
    for s in [Symbol::psi(0), Symbol::phi(0)] {
        let got = act_completed(&g, &sym(s), Window::around(0, 3), min_depth)?;
        if !got.window.agrees_with(&PlaneFunction::zero().to_window(Window::around(0, 3)))? {
            bad.push(s.to_string());
        }
    }
    report.push("g acts trivially", bad.is_empty(), bad.join(" "));
    Ok(report)
}

/// Decay of the `T`-coefficients of `t_y` at `q = q0`.
#[derive(Debug, Clone)]
pub struct SchwartzReport {
    pub y: WeylElt,
    pub q0: u64,
    /// `(n, r_n)` with `r_n = q0^n * max |b_w|` over `l(w) = 2n - 1, 2n + 1`.
    pub rows: Vec<(u32, f64)>,
    /// The constant `max(r_1, r_2, r_3)`.
    pub constant: f64,
    /// Every `r_n` is at most `q0` times the constant.
    pub bounded: bool,
}

/// `|B(sqrt(q0))|^2` for a Laurent polynomial `B` in `v` whose exponents
/// share one parity.
fn abs_squared_at<C: Coeff>(b: &Laurent<C>, q0: &BigRational) -> BigRational {
    let Some(lo) = b.min_exp() else {
        return BigRational::zero();
    };
    let parity = lo.rem_euclid(2);
    let mut p = BigRational::zero();
    for (e, c) in b.terms() {
        debug_assert_eq!(e.rem_euclid(2), parity);
        p += BigRational::from_integer(c.to_big()) * pow_rational(q0, (e - parity) / 2);
    }
    &p * &p * pow_rational(q0, parity)
}

fn pow_rational(x: &BigRational, k: i64) -> BigRational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

/// Evaluate the `T`-basis coefficients `b_w` of `t_y` at `q = q0` exactly and
/// check that `q0^n |b_w|` stays bounded on lengths `2n +- 1`, `n <= n_max`.
pub fn schwartz_check(y: &WeylElt, q0: u64, n_max: u32) -> Result<SchwartzReport> {
    if q0 < 2 {
        return Err(Error::InvalidArgument(format!("q0 = {q0} must be at least 2")));
    }
    let qr = BigRational::from_integer(BigInt::from(q0));
    let den = (&qr + BigRational::one()) * (&qr + BigRational::one());
    let mut squares = Vec::new();
    for n in 1..=n_max {
        let mut best = BigRational::zero();
        for len in [2 * n - 1, 2 * n + 1] {
            for w in WeylElt::of_length(len) {
                let b = tw_in_t_scaled::<i64>(y, &w);
                let r2 = abs_squared_at(&b, &qr) / &den * pow_rational(&qr, 2 * n as i64);
                if r2 > best {
                    best = r2;
                }
            }
        }
        squares.push((n, best));
    }
    let constant2 = squares.iter().take(3).map(|(_, r)| r.clone()).max().unwrap_or_else(BigRational::zero);
    let limit = &constant2 * &qr * &qr;
    let bounded = squares.iter().all(|(_, r)| *r <= limit);
    let root = |r: &BigRational| r.to_f64().unwrap_or(f64::INFINITY).sqrt();
    Ok(SchwartzReport {
        y: *y,
        q0,
        rows: squares.iter().map(|(n, r)| (*n, root(r))).collect(),
        constant: root(&constant2),
        bounded,
    })
}

impl SchwartzReport {
    pub fn is_vacuous(&self) -> bool {
        self.rows.iter().all(|(_, r)| *r == 0.0)
    }
}
