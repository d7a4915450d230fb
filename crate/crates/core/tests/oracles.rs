//! Brute-force oracles checked against the library's closed forms.

use std::collections::BTreeSet;

use affine_hecke::hecke::a_function;
use affine_hecke::jalg::gamma;
use affine_hecke::{Basis, Gen, HeckeElt, Laurent, WeylElt};

type L = Laurent<i64>;

fn letters(w: &WeylElt) -> Vec<Gen> {
    w.letters().collect()
}

/// Every element obtained by deleting letters from a reduced word of `w`.
fn subwords(w: &WeylElt) -> BTreeSet<WeylElt> {
    let word = letters(w);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << word.len()) {
        let mut x = WeylElt::identity();
        for (i, s) in word.iter().enumerate() {
            if mask & (1 << i) != 0 {
                x = x.mul_gen(*s);
            }
        }
        out.insert(x);
    }
    out
}

#[test]
fn bruhat_order_is_the_subword_order() {
    for w in WeylElt::enumerate_by_length(0, 9) {
        let below = subwords(&w);
        for x in WeylElt::enumerate_by_length(0, 10) {
            assert_eq!(x.bruhat_leq(&w), below.contains(&x), "{x} <= {w}");
        }
    }
}

/// All products `C_x C_y` with `l(x), l(y) <= max_len`.
fn products(max_len: u32) -> Vec<(WeylElt, WeylElt, HeckeElt<i64>)> {
    let mut out = Vec::new();
    for x in WeylElt::enumerate_by_length(0, max_len) {
        for y in WeylElt::enumerate_by_length(0, max_len) {
            out.push((x, y, HeckeElt::c(x).mul(&HeckeElt::c(y))));
        }
    }
    out
}

/// `a(z)`: the largest power of `v` in any `h_{x,y,z}`.
fn a_oracle(z: &WeylElt, prods: &[(WeylElt, WeylElt, HeckeElt<i64>)]) -> i64 {
    prods.iter().filter_map(|(_, _, p)| p.coeff(z).max_exp()).max().unwrap_or(0).max(0)
}

#[test]
fn a_function_matches_degree_bound() {
    let prods = products(4);
    for z in WeylElt::enumerate_by_length(0, 6) {
        assert_eq!(a_oracle(&z, &prods), a_function(&z) as i64, "a({z})");
    }
}

/// `T_w` in the `C'` basis by back substitution in `C'_w = v^-l(w) sum_{y <= w} T_y`.
fn t_in_cprime_oracle(w: &WeylElt) -> Vec<(WeylElt, L)> {
    // Solve T_w = v^l(w) C'_w - sum_{y < w} T_y recursively by length.
    let mut expansions: Vec<(WeylElt, Vec<(WeylElt, L)>)> = Vec::new();
    for x in WeylElt::enumerate_by_length(0, w.len()) {
        let mut acc: Vec<(WeylElt, L)> = vec![(x, L::v_pow(x.len() as i64))];
        for (y, ex) in &expansions {
            if y.bruhat_leq(&x) && *y != x {
                for (z, c) in ex {
                    acc.push((*z, -c.clone()));
                }
            }
        }
        let mut merged: Vec<(WeylElt, L)> = Vec::new();
        for (z, c) in acc {
            match merged.iter_mut().find(|(m, _)| *m == z) {
                Some((_, m)) => *m = &*m + &c,
                None => merged.push((z, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        expansions.push((x, merged));
    }
    expansions.into_iter().find(|(x, _)| x == w).map(|(_, e)| e).unwrap()
}

#[test]
fn triangular_inversion_matches_closed_form() {
    for w in WeylElt::enumerate_by_length(0, 7) {
        let got = HeckeElt::<i64>::t(w).to_basis(Basis::Cprime);
        let expect = t_in_cprime_oracle(&w);
        assert_eq!(got.terms().count(), expect.len(), "T_{w}");
        for (z, c) in expect {
            assert_eq!(got.coeff(&z), c, "coefficient of C'_{z} in T_{w}");
        }
    }
}

#[test]
fn cprime_is_the_normalized_interval_sum() {
    for w in WeylElt::enumerate_by_length(0, 6) {
        let c = HeckeElt::<i64>::cprime(w).to_basis(Basis::T);
        assert_eq!(c.terms().count(), subwords(&w).len());
        for (y, coeff) in c.terms() {
            assert!(subwords(&w).contains(y), "{y} in C'_{w}");
            assert_eq!(*coeff, L::v_pow(-(w.len() as i64)));
        }
    }
}

#[test]
fn gamma_is_the_leading_coefficient() {
    let prods = products(4);
    for (x, y, p) in &prods {
        for z in WeylElt::enumerate_by_length(0, 6) {
            let a = a_oracle(&z, &prods);
            let sign = if a % 2 == 0 { 1 } else { -1 };
            assert_eq!(gamma(x, y, &z), sign * p.coeff(&z.inverse()).coeff(-a), "gamma_({x},{y},{z})");
        }
    }
}
