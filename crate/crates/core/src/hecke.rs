//! The Iwahori-Hecke algebra `H` of the infinite dihedral group over
//! `Z[v, v^-1]`, with its standard basis `T_w` and the two Kazhdan-Lusztig
//! bases `C_w` and `C'_w`.
//!
//! In this group every nonzero Kazhdan-Lusztig polynomial is 1, so all change
//! of basis matrices have monomial entries and are written down directly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::coeffring::Laurent;
use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::weyl::{Gen, WeylElt};

/// Which basis a Hecke algebra element is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    T,
    C,
    Cprime,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::T, Basis::C, Basis::Cprime];

    pub fn tag(self) -> &'static str {
        match self {
            Basis::T => "T",
            Basis::C => "C",
            Basis::Cprime => "Cprime",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Basis::T => "T",
            Basis::C => "C",
            Basis::Cprime => "C'",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Basis> {
        match s {
            "T" | "t" => Ok(Basis::T),
            "C" | "c" => Ok(Basis::C),
            "Cprime" | "cprime" | "C'" | "Cp" => Ok(Basis::Cprime),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

fn len(w: &WeylElt) -> i64 {
    w.len() as i64
}

/// Coefficient of `T_y` in `C'_w`, for `y <= w`.
pub fn cprime_in_t<C: Coeff>(w: &WeylElt, _y: &WeylElt) -> Laurent<C> {
    Laurent::v_pow(-len(w))
}

/// Coefficient of `T_y` in `C_w`, for `y <= w`.
pub fn c_in_t<C: Coeff>(w: &WeylElt, y: &WeylElt) -> Laurent<C> {
    Laurent::signed_v_pow(len(w) - len(y), len(w) - 2 * len(y))
}

/// Coefficient of `C'_y` in `T_w`, for `y <= w`.
pub fn t_in_cprime<C: Coeff>(w: &WeylElt, y: &WeylElt) -> Laurent<C> {
    Laurent::signed_v_pow(len(w) - len(y), len(y))
}

/// Coefficient of `C_y` in `T_w`, for `y <= w`.
pub fn t_in_c<C: Coeff>(w: &WeylElt, y: &WeylElt) -> Laurent<C> {
    Laurent::v_pow(2 * len(w) - len(y))
}

/// Everything below `w` in the Bruhat order, including `w`.
pub(crate) fn bruhat_ideal(w: &WeylElt) -> Vec<WeylElt> {
    let mut below = match w.len() {
        0 => Vec::new(),
        n => WeylElt::enumerate_by_length(0, n - 1),
    };
    below.push(*w);
    below
}

/// An element of `H`: a finite combination of basis vectors of one basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElt<C = i64> {
    basis: Basis,
    coeffs: BTreeMap<WeylElt, Laurent<C>>,
}

impl<C: Coeff> HeckeElt<C> {
    pub fn zero(basis: Basis) -> Self {
        HeckeElt { basis, coeffs: BTreeMap::new() }
    }

    pub fn basis_vector(basis: Basis, w: WeylElt) -> Self {
        Self::from_terms(basis, [(w, Laurent::one())])
    }

    pub fn t(w: WeylElt) -> Self {
        Self::basis_vector(Basis::T, w)
    }

    pub fn c(w: WeylElt) -> Self {
        Self::basis_vector(Basis::C, w)
    }

    pub fn cprime(w: WeylElt) -> Self {
        Self::basis_vector(Basis::Cprime, w)
    }

    /// The unit `T_1 = C_1 = C'_1`.
    pub fn one() -> Self {
        Self::t(WeylElt::IDENTITY)
    }

    pub fn from_terms<I: IntoIterator<Item = (WeylElt, Laurent<C>)>>(basis: Basis, terms: I) -> Self {
        let mut h = Self::zero(basis);
        for (w, c) in terms {
            h.add_term(w, &c);
        }
        h
    }

    pub fn add_term(&mut self, w: WeylElt, c: &Laurent<C>) {
        add_into(&mut self.coeffs, w, c);
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, w: &WeylElt) -> Laurent<C> {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElt, &Laurent<C>)> + '_ {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest length in the support.
    pub fn max_len(&self) -> Option<u32> {
        self.coeffs.keys().next_back().map(WeylElt::len)
    }

    pub fn add(&self, other: &Self) -> Self {
        let other = other.to_basis(self.basis);
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(*w, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| -c)
    }

    /// Multiply every coefficient by a scalar from the coefficient ring.
    pub fn scale(&self, a: &Laurent<C>) -> Self {
        self.map_coeffs(|_, c| c * a)
    }

    fn map_coeffs(&self, f: impl Fn(&WeylElt, &Laurent<C>) -> Laurent<C>) -> Self {
        Self::from_terms(self.basis, self.coeffs.iter().map(|(w, c)| (*w, f(w, c))))
    }

    /// The same element written in `target`.
    pub fn to_basis(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let in_t = match self.basis {
            Basis::T => self.clone(),
            Basis::C => self.expand(Basis::T, c_in_t),
            Basis::Cprime => self.expand(Basis::T, cprime_in_t),
        };
        match target {
            Basis::T => in_t,
            Basis::C => in_t.expand(Basis::C, t_in_c),
            Basis::Cprime => in_t.expand(Basis::Cprime, t_in_cprime),
        }
    }

    fn expand(&self, target: Basis, entry: fn(&WeylElt, &WeylElt) -> Laurent<C>) -> Self {
        let mut out = Self::zero(target);
        for (w, c) in &self.coeffs {
            for y in bruhat_ideal(w) {
                out.add_term(y, &(c * &entry(w, &y)));
            }
        }
        out
    }

    /// `self * T_s`, computed in the `T` basis.
    pub fn mul_gen(&self, s: Gen) -> Self {
        let t = self.to_basis(Basis::T);
        let q = Laurent::<C>::q_pow(1);
        let q_minus_one = &q - &Laurent::one();
        let mut out = BTreeMap::new();
        for (w, c) in &t.coeffs {
            let ws = w.mul_gen(s);
            if ws.len() > w.len() {
                add_into(&mut out, ws, c);
            } else {
                // T_w T_s = q T_ws + (q - 1) T_w when ws < w
                add_into(&mut out, ws, &(c * &q));
                add_into(&mut out, *w, &(c * &q_minus_one));
            }
        }
        HeckeElt { basis: Basis::T, coeffs: out }
    }

    /// Product in the `T` basis; both factors are converted first if needed.
    pub fn mul_t(&self, other: &Self) -> Self {
        let a = self.to_basis(Basis::T);
        let b = other.to_basis(Basis::T);
        let mut out = Self::zero(Basis::T);
        for (y, cy) in &b.coeffs {
            let mut partial = a.scale(cy);
            for s in y.letters() {
                partial = partial.mul_gen(s);
            }
            out = out.add(&partial);
        }
        out
    }

    /// Product, returned in the basis of `self`.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_t(other).to_basis(self.basis)
    }

    /// The ring involution `j`, returned in the same basis.
    ///
    /// On the `T` basis `j(a T_w) = bar(a) (-1)^l(w) q^-l(w) T_w`; it swaps
    /// `C_w` and `(-1)^l(w) C'_w`.
    pub fn j_involution(&self) -> Self {
        match self.basis {
            Basis::T => self.map_coeffs(|w, c| &c.bar() * &Laurent::signed_v_pow(len(w), -2 * len(w))),
            Basis::C | Basis::Cprime => {
                let target = if self.basis == Basis::C { Basis::Cprime } else { Basis::C };
                let swapped = Self::from_terms(
                    target,
                    self.coeffs.iter().map(|(w, c)| (*w, &c.bar() * &Laurent::signed_v_pow(len(w), 0))),
                );
                swapped.to_basis(self.basis)
            }
        }
    }

    /// `{"basis":"T","terms":[{"w":"010","coeff":{...}}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.coeffs.iter().map(|(w, c)| json!({"w": w.word(), "coeff": c.to_json()})).collect();
        json!({"basis": self.basis.tag(), "terms": terms})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let basis: Basis = value["basis"].as_str().ok_or_else(|| Error::Parse(value.to_string()))?.parse()?;
        let terms = value["terms"].as_array().ok_or_else(|| Error::Parse(value.to_string()))?;
        let mut h = Self::zero(basis);
        for t in terms {
            let w: WeylElt = t["w"].as_str().ok_or_else(|| Error::Parse(t.to_string()))?.parse()?;
            h.add_term(w, &Laurent::from_json(&t["coeff"])?);
        }
        Ok(h)
    }
}

pub(crate) fn add_into<C: Coeff>(map: &mut BTreeMap<WeylElt, Laurent<C>>, w: WeylElt, c: &Laurent<C>) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(w).or_default();
    *slot += c;
    if slot.is_zero() {
        map.remove(&w);
    }
}

impl<C: Coeff> fmt::Display for HeckeElt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}[{w}]", self.basis.symbol())?;
            } else {
                write!(f, "({c}) {}[{w}]", self.basis.symbol())?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for HeckeElt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElt<{}>({self})", self.basis)
    }
}

/// Structure constant `h_{x,y,z}`: the coefficient of `C_z` in `C_x C_y`.
pub fn h_const<C: Coeff>(x: &WeylElt, y: &WeylElt, z: &WeylElt) -> Laurent<C> {
    HeckeElt::<C>::c(*x).mul(&HeckeElt::c(*y)).coeff(z)
}

/// `C_w C_s` by the closed form for a simple reflection `s`:
/// `-(v + v^-1) C_w` when `s` is a right descent of `w`, otherwise
/// `C_ws` plus every `C_y` with `l(y) = l(w) - 1` and `ys < y`.
pub fn c_times_simple<C: Coeff>(w: &WeylElt, s: Gen) -> HeckeElt<C> {
    if w.right_descent() == Some(s) {
        return HeckeElt::from_terms(Basis::C, [(*w, -Laurent::v_plus_vinv())]);
    }
    let mut out = HeckeElt::c(w.mul_gen(s));
    if w.len() >= 1 {
        for y in WeylElt::of_length(w.len() - 1) {
            if y.right_descent() == Some(s) {
                out.add_term(y, &Laurent::one());
            }
        }
    }
    out
}

/// `h_{x,s,z}` from [`c_times_simple`].
pub fn h_const_simple<C: Coeff>(x: &WeylElt, s: Gen, z: &WeylElt) -> Laurent<C> {
    c_times_simple::<C>(x, s).coeff(z)
}

/// `mu~(y, w)`: 1 when `y` and `w` are joined, i.e. their lengths differ by one.
pub fn mu_joined(y: &WeylElt, w: &WeylElt) -> i64 {
    i64::from(y.len().abs_diff(w.len()) == 1)
}

/// Lusztig's a-function: 0 at the identity and 1 elsewhere.
pub fn a_function(w: &WeylElt) -> u32 {
    u32::from(!w.is_identity())
}
