use affine_hecke::jalg::{tw_in_t, JElt};
use affine_hecke::plane::{act_completed, j_action, t_action};
use affine_hecke::{Gen, Laurent, PlaneFunction, Symbol, WeylElt, Window};
use proptest::prelude::*;

type F = PlaneFunction<i64>;

fn w(s: &str) -> WeylElt {
    s.parse().unwrap()
}

fn symbol() -> impl Strategy<Value = Symbol> {
    (0u8..4, -3i64..=3).prop_map(|(k, n)| match k {
        0 => Symbol::phi(n),
        1 => Symbol::psi(n),
        2 => Symbol::phibar(n),
        _ => Symbol::psibar(n),
    })
}

fn plane() -> impl Strategy<Value = F> {
    prop::collection::vec((symbol(), (-3i64..=3).prop_map(Laurent::from)), 1..=3).prop_map(F::from_terms)
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distinguished_elements_are_idempotent(f in plane()) {
        for s in [WeylElt::s0(), WeylElt::s1()] {
            let once = t_action(&s, &f).unwrap();
            prop_assert_eq!(t_action(&s, &once).unwrap(), once);
        }
        let unit: F = [WeylElt::identity(), WeylElt::s0(), WeylElt::s1()]
            .iter()
            .map(|d| t_action(d, &f).unwrap())
            .fold(F::zero(), |a, b| a.add(&b));
        prop_assert_eq!(unit, f);
    }

    #[test]
    fn j_acts_as_a_module(f in plane(), x in weyl(4), y in weyl(4)) {
        let lhs = t_action(&x, &t_action(&y, &f).unwrap()).unwrap();
        let rhs = j_action(&JElt::t(x).mul(&JElt::t(y)), &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_action_matches_truncated_sum(f in plane(), y in weyl(3)) {
        prop_assume!(!f.is_zero());
        let exact = t_action(&y, &f).unwrap();
        let lo = f.min_position().unwrap().min(exact.min_position().unwrap_or(i64::MAX)) - 2;
        let hi = f.max_position().unwrap().max(exact.max_position().unwrap_or(i64::MIN)) + 2;
        let window = Window { lo, hi };
        let series = tw_in_t::<i64>(&y, 40, 80).unwrap();
        let got = act_completed(&series, &f, window, 4).unwrap();
        prop_assert!(got.window.agrees_with(&exact.to_window(window)).unwrap());
    }
}

#[test]
fn projections_on_closures() {
    let s0 = w("0");
    for n in -3..=3 {
        assert_eq!(t_action(&s0, &F::symbol(Symbol::phibar(n))).unwrap(), F::symbol(Symbol::phibar(n)));
        assert!(t_action(&s0, &F::symbol(Symbol::psibar(n))).unwrap().is_zero());
        assert!(t_action(&WeylElt::identity(), &F::symbol(Symbol::phi(n))).unwrap().is_zero());
    }
}

#[test]
fn example_strings_parse() {
    let f: F = "2*phi(0) - psibar(-1)".parse().unwrap();
    assert_eq!(f.coeff(Symbol::psibar(-1)), Laurent::from(-1));
    // psibar(-1) is the closure of psi(-1), so it also covers phi(0).
    assert_eq!(f.orbit_coeff(Symbol::psi(-1).position()), Laurent::from(-1));
    assert_eq!(f.orbit_coeff(Symbol::phi(0).position()), Laurent::from(1));
    assert_eq!(f.orbit_coeff(Symbol::psi(0).position()), Laurent::from(-1));
    assert!("phi(0) +".parse::<F>().is_err());
    assert!("0".parse::<F>().unwrap().is_zero());
}
