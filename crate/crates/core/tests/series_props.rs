use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use toricmirror::{Grading, QSeries, Rational, SubstitutionMap};

const ORDER: i64 = 5;

fn grading() -> Arc<Grading> {
    let w = [
        Rational::from_integer(1.into()),
        Rational::new(3.into(), 2.into()),
    ];
    Arc::new(Grading::new(&w))
}

fn order() -> Rational {
    Rational::from_integer(ORDER.into())
}

fn series(min_deg: i32) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(((0i32..5, 0i32..4), -4i64..5, 1i64..4), 0..6).prop_map(move |terms| {
        let g = grading();
        let mut f = QSeries::zero(&g, order());
        for ((a, b), n, d) in terms {
            if a + b < min_deg {
                continue;
            }
            let c = Rational::new(BigInt::from(n), BigInt::from(d));
            f = &f + &QSeries::monomial(&g, order(), vec![a, b], c);
        }
        f
    })
}

fn one() -> QSeries {
    QSeries::one(&grading(), order())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in series(0), g in series(0), h in series(0)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &one(), f.clone());
    }

    #[test]
    fn exp_and_log_are_inverse(f in series(1)) {
        let e = f.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), f.clone());
        let u = &one() + &f;
        prop_assert_eq!(u.log().unwrap().exp().unwrap(), u);
    }

    #[test]
    fn exp_turns_sums_into_products(f in series(1), g in series(1)) {
        let lhs = (&f + &g).exp().unwrap();
        let rhs = &f.exp().unwrap() * &g.exp().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_is_two_sided(f in series(1), c in 1i64..5) {
        let u = &QSeries::constant(&grading(), order(), Rational::from_integer(c.into())) + &f;
        let inv = u.inverse().unwrap();
        prop_assert_eq!(&u * &inv, one());
        prop_assert_eq!(u.pow(-2).unwrap(), &inv * &inv);
    }

    #[test]
    fn revert_is_two_sided(f in series(1), g in series(1)) {
        let s = SubstitutionMap::new(vec![&one() + &f, &one() + &g]).unwrap();
        let t = s.revert().unwrap();
        prop_assert!(s.compose(&t).unwrap().is_identity());
        prop_assert!(t.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn substitution_is_a_ring_map(f in series(0), g in series(0), u in series(1)) {
        let s = SubstitutionMap::new(vec![&one() + &u, one()]).unwrap();
        let lhs = s.apply(&(&f * &g)).unwrap();
        let rhs = &s.apply(&f).unwrap() * &s.apply(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn records_round_trip(f in series(0)) {
        let back = QSeries::from_record(&f.to_record(), &grading()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn revert_of_catalan_unit() {
    // x / (1 - x) reverts to x / (1 + x)
    let g = Arc::new(Grading::uniform(1));
    let o = Rational::from_integer(6.into());
    let x = QSeries::variable(&g, o.clone(), 0);
    let one = QSeries::one(&g, o.clone());
    let s = SubstitutionMap::new(vec![(&one - &x).inverse().unwrap()]).unwrap();
    let t = s.revert().unwrap();
    let mut expected = QSeries::zero(&g, o.clone());
    for k in 0..=6 {
        let c = Rational::from_integer(if k % 2 == 0 { 1.into() } else { (-1).into() });
        expected = &expected + &QSeries::monomial(&g, o.clone(), vec![k], c);
    }
    assert_eq!(t.unit(0), &expected);
}
