mod common;

use common::{homogeneous, monomial, polynomial, proper_monomial};
use proptest::prelude::*;
use subelliptic_core::groebner::{is_member, is_radical_member, normal_form, radical};
use subelliptic_core::oracle::{macaulay_member, squarefree_rule};
use subelliptic_core::rational::int;
use subelliptic_core::{Ideal, Monomial, MonomialOrder, Polynomial};

fn ideal_gens(nvars: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(polynomial(nvars, 3, 3), 1..=3)
}

fn as_poly(m: &Monomial) -> Polynomial {
    Polynomial::term(m.clone(), int(1))
}

/// Homogeneous generators make the degree-6 truncation of the oracle exact.
fn macaulay_case() -> impl Strategy<Value = (usize, Vec<Polynomial>, Vec<Polynomial>, Polynomial)> {
    (2usize..=3).prop_flat_map(|nvars| {
        (
            Just(nvars),
            prop::collection::vec((1u32..=4).prop_flat_map(move |d| homogeneous(nvars, d, 3)), 1..=3),
            prop::collection::vec(polynomial(nvars, 2, 2), 3),
            polynomial(nvars, 6, 2),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_satisfies_buchberger_criterion(gens in ideal_gens(3), lex in any::<bool>()) {
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
        let ideal = Ideal::new(3, gens).unwrap().with_order(order);
        let basis = ideal.groebner_basis().unwrap();
        prop_assert!(basis.satisfies_buchberger_criterion().unwrap());
    }

    #[test]
    fn normal_form_is_idempotent(gens in ideal_gens(3), p in polynomial(3, 4, 6)) {
        let ideal = Ideal::new(3, gens).unwrap();
        let r = normal_form(&p, &ideal).unwrap();
        prop_assert_eq!(normal_form(&r, &ideal).unwrap(), r.clone());
        // p - NF(p) lies in the ideal.
        prop_assert!(is_member(&(&p - &r), &ideal).unwrap());
    }

    #[test]
    fn generators_are_members(gens in ideal_gens(2), mult in polynomial(2, 2, 3)) {
        let ideal = Ideal::new(2, gens.clone()).unwrap();
        for g in &gens {
            prop_assert!(is_member(g, &ideal).unwrap());
            prop_assert!(is_member(&(g * &mult), &ideal).unwrap());
        }
    }

    #[test]
    fn membership_agrees_with_macaulay_oracle((nvars, gens, mults, noise) in macaulay_case()) {
        let ideal = Ideal::new(nvars, gens.clone()).unwrap();
        let mut member = Polynomial::zero(nvars);
        for (g, m) in gens.iter().zip(&mults) {
            member = &member + &(g * m);
        }
        for p in [member.clone(), &member + &noise, noise] {
            if p.degree().unwrap_or(0) > 6 {
                continue;
            }
            prop_assert_eq!(is_member(&p, &ideal).unwrap(), macaulay_member(&p, &gens, 6), "p = {}", p);
        }
    }

    #[test]
    fn radical_membership_matches_squarefree_rule(
        gens in prop::collection::vec(proper_monomial(3, 4), 1..=3),
        f in monomial(3, 4),
    ) {
        let ideal = Ideal::new(3, gens.iter().map(as_poly).collect()).unwrap();
        prop_assert_eq!(is_radical_member(&as_poly(&f), &ideal).unwrap(), squarefree_rule(&f, &gens));
    }

    #[test]
    fn monomial_radical_is_idempotent_and_contains_ideal(gens in prop::collection::vec(proper_monomial(3, 4), 1..=3)) {
        let ideal = Ideal::new(3, gens.iter().map(as_poly).collect()).unwrap();
        let rad = radical(&ideal).unwrap();
        prop_assert_eq!(&radical(&rad).unwrap(), &rad);
        for g in ideal.generators() {
            prop_assert!(is_member(g, &rad).unwrap());
        }
    }
}

#[test]
fn zero_dimensional_radical_contains_ideal() {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let ideal = Ideal::new(2, vec![&x * &x, &(&y * &y) - &(&x * &y)]).unwrap();
    let rad = radical(&ideal).unwrap();
    for g in ideal.generators() {
        assert!(is_member(g, &rad).unwrap());
    }
    assert!(is_member(&x, &rad).unwrap());
    assert!(is_member(&y, &rad).unwrap());
    assert_eq!(radical(&rad).unwrap(), rad);
}
