//! The infinite dihedral group `<s0, s1 | s0^2 = s1^2 = 1>`.
//!
//! Every element has a unique reduced word, which alternates between the two
//! generators, so an element is just its first letter and its length.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A simple reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    S0,
    S1,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::S0 => Gen::S1,
            Gen::S1 => Gen::S0,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Gen::S0 => 0,
            Gen::S1 => 1,
        }
    }

    pub fn from_index(i: u8) -> Option<Gen> {
        match i {
            0 => Some(Gen::S0),
            1 => Some(Gen::S1),
            _ => None,
        }
    }

    pub fn elt(self) -> WeylElt {
        WeylElt::new(Some(self), 1)
    }
}

/// An element of the affine Weyl group of type A1~.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylElt {
    first: Option<Gen>,
    len: u32,
}

impl WeylElt {
    pub const IDENTITY: WeylElt = WeylElt { first: None, len: 0 };

    /// The element whose reduced word has length `len` and starts with `first`.
    ///
    /// Panics if exactly one of `first.is_none()` and `len == 0` holds.
    pub fn new(first: Option<Gen>, len: u32) -> WeylElt {
        assert_eq!(first.is_none(), len == 0, "identity is exactly the element of length 0");
        WeylElt { first, len }
    }

    /// Alternating word of length `len` starting with `first`.
    pub fn alternating(first: Gen, len: u32) -> WeylElt {
        if len == 0 {
            Self::IDENTITY
        } else {
            WeylElt { first: Some(first), len }
        }
    }

    pub fn identity() -> WeylElt {
        Self::IDENTITY
    }

    pub fn s0() -> WeylElt {
        Gen::S0.elt()
    }

    pub fn s1() -> WeylElt {
        Gen::S1.elt()
    }

    /// The dominant translation `pi^n = (s0 s1)^n`.
    pub fn dominant_translation(n: u32) -> WeylElt {
        Self::alternating(Gen::S0, 2 * n)
    }

    /// The antidominant translation `pi^-n = (s1 s0)^n`.
    pub fn antidominant_translation(n: u32) -> WeylElt {
        Self::alternating(Gen::S1, 2 * n)
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn first(&self) -> Option<Gen> {
        self.first
    }

    pub fn last(&self) -> Option<Gen> {
        self.first.map(|g| self.letter(self.len as usize - 1).unwrap_or(g))
    }

    /// Letter at position `i` of the reduced word.
    pub fn letter(&self, i: usize) -> Option<Gen> {
        let g = self.first?;
        if i >= self.len as usize {
            return None;
        }
        Some(if i.is_multiple_of(2) { g } else { g.other() })
    }

    pub fn letters(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.len as usize).map(|i| self.letter(i).unwrap())
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: u32) -> WeylElt {
        match self.first {
            Some(g) if k > 0 => WeylElt::alternating(g, k.min(self.len)),
            _ => Self::IDENTITY,
        }
    }

    /// The last `k` letters.
    pub fn suffix(&self, k: u32) -> WeylElt {
        let k = k.min(self.len);
        if k == 0 {
            return Self::IDENTITY;
        }
        let start = (self.len - k) as usize;
        WeylElt::alternating(self.letter(start).unwrap(), k)
    }

    /// `w` with its last letter removed (identity stays identity).
    pub fn drop_last(&self) -> WeylElt {
        self.prefix(self.len.saturating_sub(1))
    }

    /// The unique element of length `len + 1` starting with `self`.
    ///
    /// Panics on the identity, which has two such extensions.
    pub fn extend(&self) -> WeylElt {
        let g = self.first.expect("the identity has two one-letter extensions");
        WeylElt::alternating(g, self.len + 1)
    }

    pub fn inverse(&self) -> WeylElt {
        match self.last() {
            None => Self::IDENTITY,
            Some(g) => WeylElt::alternating(g, self.len),
        }
    }

    /// Group product.
    pub fn mul(&self, other: &WeylElt) -> WeylElt {
        match (self.last(), other.first) {
            (None, _) => *other,
            (_, None) => *self,
            (Some(a), Some(b)) if a != b => WeylElt::alternating(self.first.unwrap(), self.len + other.len),
            _ => {
                // adjacent letters agree, so min(len) letters cancel pairwise
                if self.len >= other.len {
                    self.prefix(self.len - other.len)
                } else {
                    other.suffix(other.len - self.len)
                }
            }
        }
    }

    /// `w * s`.
    pub fn mul_gen(&self, s: Gen) -> WeylElt {
        self.mul(&s.elt())
    }

    /// `s * w`.
    pub fn gen_mul(&self, s: Gen) -> WeylElt {
        s.elt().mul(self)
    }

    /// Right descent set: empty for the identity, otherwise the last letter.
    pub fn right_descent(&self) -> Option<Gen> {
        self.last()
    }

    pub fn left_descent(&self) -> Option<Gen> {
        self.first
    }

    /// Strong Bruhat order. In this group `y <= w` iff `y == w` or `l(y) < l(w)`.
    pub fn bruhat_leq(&self, w: &WeylElt) -> bool {
        self == w || self.len < w.len
    }

    /// True iff the reduced word of `self` begins with the reduced word of `y`.
    pub fn starts_with(&self, y: &WeylElt) -> bool {
        y.len <= self.len && (y.len == 0 || y.first == self.first)
    }

    /// All elements with `min_len <= l(w) <= max_len`, ordered by length and
    /// then with `s0`-words first.
    pub fn enumerate_by_length(min_len: u32, max_len: u32) -> Vec<WeylElt> {
        let mut out = Vec::new();
        for len in min_len..=max_len {
            if len == 0 {
                out.push(Self::IDENTITY);
            } else {
                out.push(WeylElt::alternating(Gen::S0, len));
                out.push(WeylElt::alternating(Gen::S1, len));
            }
        }
        out
    }

    /// Elements of length exactly `len`.
    pub fn of_length(len: u32) -> Vec<WeylElt> {
        Self::enumerate_by_length(len, len)
    }

    /// Reduced word as a string over `'0'` and `'1'`; the identity is `""`.
    pub fn word(&self) -> String {
        self.letters().map(|g| if g == Gen::S0 { '0' } else { '1' }).collect()
    }

    pub fn parse(word: &str) -> Result<WeylElt> {
        word.parse()
    }
}

impl FromStr for WeylElt {
    type Err = Error;

    fn from_str(word: &str) -> Result<WeylElt> {
        let mut first = None;
        let mut prev: Option<Gen> = None;
        for ch in word.chars() {
            let g = match ch {
                '0' => Gen::S0,
                '1' => Gen::S1,
                _ => return Err(Error::InvalidWord(word.to_string())),
            };
            if prev == Some(g) {
                return Err(Error::InvalidWord(word.to_string()));
            }
            first.get_or_insert(g);
            prev = Some(g);
        }
        Ok(match first {
            None => Self::IDENTITY,
            Some(g) => WeylElt::alternating(g, word.chars().count() as u32),
        })
    }
}

impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then(self.first.cmp(&other.first))
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeylElt {
    /// `s0s1s0`-style names; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        for g in self.letters() {
            write!(f, "s{}", g.index())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeylElt {
        s.parse().unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(w("0").mul(&w("0")), WeylElt::IDENTITY);
        let p = w("0").mul(&w("1"));
        assert_eq!((p.first(), p.len()), (Some(Gen::S0), 2));
        assert_eq!(w("010").mul(&w("01")), w("0"));
        assert_eq!(w("01").mul(&w("10")), WeylElt::IDENTITY);
        assert_eq!(w("01").mul(&w("101")), w("1"));
        assert_eq!(w("0").mul(&w("0101")), w("101"));
        assert_eq!(WeylElt::IDENTITY.mul(&w("10")), w("10"));
    }

    #[test]
    fn descents() {
        assert_eq!(WeylElt::IDENTITY.right_descent(), None);
        assert_eq!(w("01").right_descent(), Some(Gen::S1));
        assert_eq!(w("1010").right_descent(), Some(Gen::S0));
    }

    #[test]
    fn bruhat_examples() {
        assert!(w("1").bruhat_leq(&w("01")));
        assert!(w("01").bruhat_leq(&w("01")));
        assert!(!w("01").bruhat_leq(&w("10")));
    }

    #[test]
    fn starts_with_examples() {
        assert!(w("010").starts_with(&w("01")));
        assert!(w("010").starts_with(&WeylElt::IDENTITY));
        assert!(WeylElt::IDENTITY.starts_with(&WeylElt::IDENTITY));
        assert!(!w("01").starts_with(&w("1")));
        assert!(!w("0").starts_with(&w("01")));
    }

    #[test]
    fn enumeration() {
        assert_eq!(WeylElt::enumerate_by_length(0, 1), vec![WeylElt::IDENTITY, w("0"), w("1")]);
        assert_eq!(WeylElt::enumerate_by_length(2, 2), vec![w("01"), w("10")]);
        assert_eq!(WeylElt::enumerate_by_length(0, 10).len(), 21);
    }

    #[test]
    fn words_parse_and_print() {
        assert_eq!(w("010").to_string(), "s0s1s0");
        assert_eq!(w("010").word(), "010");
        assert_eq!(w(""), WeylElt::IDENTITY);
        assert!("0110".parse::<WeylElt>().is_err());
        assert!("02".parse::<WeylElt>().is_err());
        assert_eq!(WeylElt::dominant_translation(2), w("0101"));
        assert_eq!(WeylElt::antidominant_translation(1), w("10"));
    }

    #[test]
    fn inverse_and_affixes() {
        assert_eq!(w("01").inverse(), w("10"));
        assert_eq!(w("010").inverse(), w("010"));
        for x in WeylElt::enumerate_by_length(0, 9) {
            assert_eq!(x.mul(&x.inverse()), WeylElt::IDENTITY);
        }
        assert_eq!(w("0101").suffix(3), w("101"));
        assert_eq!(w("0101").drop_last(), w("010"));
        assert_eq!(w("01").extend(), w("010"));
    }
}
