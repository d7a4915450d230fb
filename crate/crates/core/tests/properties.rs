use affine_hecke::jalg::{phi_finite, JElt};
use affine_hecke::{Basis, Gen, HeckeElt, Laurent, PlaneFunction, Symbol, WeylElt};
use proptest::prelude::*;

type L = Laurent<i64>;
type H = HeckeElt<i64>;

fn laurent(max_terms: usize) -> impl Strategy<Value = L> {
    prop::collection::vec((-6i64..=6, -4i64..=4), 0..=max_terms).prop_map(L::from_terms)
}

fn weyl(max_len: u32) -> impl Strategy<Value = WeylElt> {
    (any::<bool>(), 0..=max_len).prop_map(|(zero_first, len)| {
        if len == 0 {
            WeylElt::identity()
        } else {
            WeylElt::alternating(if zero_first { Gen::S0 } else { Gen::S1 }, len)
        }
    })
}

fn basis() -> impl Strategy<Value = Basis> {
    prop_oneof![Just(Basis::T), Just(Basis::C), Just(Basis::Cprime)]
}

fn hecke(max_len: u32) -> impl Strategy<Value = H> {
    (basis(), prop::collection::vec((weyl(max_len), laurent(2)), 0..=3)).prop_map(|(b, terms)| {
        let mut h = H::zero(b);
        for (w, c) in terms {
            h.add_term(w, &c);
        }
        h
    })
}

fn jelt(max_len: u32) -> impl Strategy<Value = JElt<i64>> {
    prop::collection::vec((weyl(max_len), laurent(2)), 0..=3).prop_map(JElt::from_terms)
}

fn symbol() -> impl Strategy<Value = Symbol> {
    (0u8..4, -4i64..=4).prop_map(|(k, n)| match k {
        0 => Symbol::phi(n),
        1 => Symbol::psi(n),
        2 => Symbol::phibar(n),
        _ => Symbol::psibar(n),
    })
}

fn plane() -> impl Strategy<Value = PlaneFunction<i64>> {
    prop::collection::vec((symbol(), laurent(2)), 0..=3).prop_map(PlaneFunction::from_terms)
}

fn integral_plane() -> impl Strategy<Value = PlaneFunction<i64>> {
    prop::collection::vec((symbol(), (-3i64..=3).prop_map(L::from)), 0..=4).prop_map(PlaneFunction::from_terms)
}

proptest! {
    #[test]
    fn bar_is_a_ring_involution(a in laurent(5), b in laurent(5)) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(4), b in laurent(4), c in laurent(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(4), b in laurent(3), top in 0i64..=4, unit in any::<bool>()) {
        // Divisors need a unit leading coefficient.
        let b = &b.restrict(-6, top - 1) + &L::monomial(if unit { 1 } else { -1 }, top);
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn laurent_json_roundtrip(a in laurent(6)) {
        prop_assert_eq!(L::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn basis_roundtrips(h in hecke(7), target in basis()) {
        let there = h.to_basis(target);
        prop_assert_eq!(there.basis(), target);
        prop_assert_eq!(there.to_basis(h.basis()), h);
    }

    #[test]
    fn hecke_json_roundtrip(h in hecke(6)) {
        prop_assert_eq!(H::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn hecke_multiplication_is_associative(a in hecke(3), b in hecke(3), c in hecke(3)) {
        let left = a.mul_t(&b).mul_t(&c);
        let right = a.mul_t(&b.mul_t(&c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn j_is_an_involutive_ring_map(a in hecke(3), b in hecke(3)) {
        prop_assert_eq!(a.j_involution().j_involution(), a.clone());
        let lhs = a.mul_t(&b).j_involution();
        let rhs = a.j_involution().mul_t(&b.j_involution());
        prop_assert_eq!(lhs.to_basis(Basis::T), rhs.to_basis(Basis::T));
    }

    #[test]
    fn phi_is_multiplicative(a in hecke(3), b in hecke(3)) {
        let lhs = phi_finite(&a.mul(&b));
        let rhs = phi_finite(&a).mul(&phi_finite(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn j_algebra_is_associative_with_unit(a in jelt(4), b in jelt(4), c in jelt(4)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&JElt::unit()), a.clone());
        prop_assert_eq!(JElt::unit().mul(&a), a);
    }

    #[test]
    fn weyl_group_laws(x in weyl(8), y in weyl(8), z in weyl(8)) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert_eq!(x.mul(&y).inverse(), y.inverse().mul(&x.inverse()));
        let l = x.mul(&y).len();
        prop_assert!(l <= x.len() + y.len());
        prop_assert_eq!(l % 2, (x.len() + y.len()) % 2);
        prop_assert_eq!(WeylElt::parse(&x.word()).unwrap(), x);
    }

    #[test]
    fn bruhat_is_a_partial_order(x in weyl(6), y in weyl(6), z in weyl(6)) {
        prop_assert!(x.bruhat_leq(&x));
        if x.bruhat_leq(&y) && y.bruhat_leq(&x) {
            prop_assert_eq!(x, y);
        }
        if x.bruhat_leq(&y) && y.bruhat_leq(&z) {
            prop_assert!(x.bruhat_leq(&z));
        }
    }

    #[test]
    fn plane_action_is_a_module(f in plane(), a in hecke(3), b in hecke(3)) {
        let lhs = f.act_hecke(&b).act_hecke(&a);
        let rhs = f.act_hecke(&a.mul(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn swapping_generators_is_a_shift(f in plane(), w in weyl(5)) {
        let swapped = WeylElt::parse(
            &w.word().chars().map(|c| if c == '0' { '1' } else { '0' }).collect::<String>(),
        ).unwrap();
        prop_assert_eq!(f.act_t(&w).shift(1), f.shift(1).act_t(&swapped));
    }

    #[test]
    fn plane_json_roundtrip(f in plane()) {
        prop_assert_eq!(PlaneFunction::<i64>::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn integral_plane_text_roundtrip(f in integral_plane()) {
        prop_assert_eq!(f.to_string().parse::<PlaneFunction<i64>>().unwrap(), f);
    }
}

#[test]
fn module_axiom_on_basis_elements() {
    for w1 in WeylElt::enumerate_by_length(0, 4) {
        for w2 in WeylElt::enumerate_by_length(0, 4) {
            let prod = H::t(w1).mul_t(&H::t(w2));
            for n in -2..=2 {
                for f in [Symbol::phi(n), Symbol::psi(n), Symbol::phibar(n), Symbol::psibar(n)] {
                    let f = PlaneFunction::<i64>::symbol(f);
                    assert_eq!(f.act_t(&w2).act_t(&w1), f.act_hecke(&prod), "T_{w1} T_{w2} on {f}");
                }
            }
        }
    }
}
