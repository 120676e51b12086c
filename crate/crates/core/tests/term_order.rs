use std::cmp::Ordering;

use lss_core::poly::{tiebreak, Monomial, TermOrder, Var};
use lss_core::TwistedWeightCertificate;
use proptest::prelude::*;

const N: usize = 4;
const LAYERS: usize = 4;

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec((1..=N, 1..=LAYERS), 0..5).prop_map(|vars| {
        let vars: Vec<Var> = vars.into_iter().map(|(v, l)| Var::new(v, l)).collect();
        Monomial::from_vars(&vars)
    })
}

fn arb_order() -> impl Strategy<Value = TermOrder> {
    proptest::collection::vec(-5i64..=5, 4 * N).prop_map(|w| {
        let c1 = TwistedWeightCertificate::from_integers(&w[0..N], &w[N..2 * N]);
        let c2 = TwistedWeightCertificate::from_integers(&w[2 * N..3 * N], &w[3 * N..]);
        TermOrder::from_certificates(2, &[c1, c2])
    })
}

proptest! {
    #[test]
    fn order_is_total_and_antisymmetric(o in arb_order(), a in arb_monomial(), b in arb_monomial()) {
        let ab = o.cmp(&a, &b);
        prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn order_is_transitive(o in arb_order(), a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
            prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn order_is_multiplicative(o in arb_order(), a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
    }

    #[test]
    fn tiebreak_is_a_monomial_order(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        prop_assert_eq!(tiebreak(&a, &b), tiebreak(&b, &a).reverse());
        prop_assert_eq!(tiebreak(&a, &b), tiebreak(&a.mul(&c), &b.mul(&c)));
        prop_assert_ne!(tiebreak(&a.mul(&c), &Monomial::one()), Ordering::Less);
    }
}

#[test]
fn first_variable_is_largest() {
    let x11 = Monomial::from_vars(&[Var::new(1, 1)]);
    for v in 1..=N {
        for l in 1..=LAYERS {
            let y = Monomial::from_vars(&[Var::new(v, l)]);
            assert_ne!(tiebreak(&x11, &y), Ordering::Less);
        }
    }
}
