use num_bigint::BigInt;
use proptest::prelude::*;
use viracomb::qseries::{q_binomial, QSeries};

fn series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-1000i64..1000, 1..16).prop_map(QSeries::from_coeffs)
}

fn unit() -> impl Strategy<Value = QSeries> {
    (prop::bool::ANY, prop::collection::vec(-1000i64..1000, 0..16)).prop_map(|(neg, rest)| {
        QSeries::from_coeffs(std::iter::once(if neg { -1 } else { 1 }).chain(rest))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.truncate(a.order().min(b.order())));
        prop_assert_eq!(&a * &QSeries::one(a.order()), a.clone());
    }

    #[test]
    fn inversion(u in unit()) {
        let inv = u.invert().unwrap();
        prop_assert_eq!(&u * &inv, QSeries::one(u.order()));
    }

    #[test]
    fn csv_round_trip(a in series()) {
        prop_assert_eq!(QSeries::parse_csv(&a.to_csv()).unwrap(), a);
    }

    #[test]
    fn q_binomial_at_q_one_counts_subsets(m in 0i64..=20, k in 0i64..=20) {
        let g = q_binomial(m, k, 120);
        let total: BigInt = g.coeffs().iter().sum();
        let mut choose = BigInt::from(if k <= m { 1 } else { 0 });
        for i in 0..k.min(m) {
            choose = choose * (m - i) / (i + 1);
        }
        prop_assert_eq!(total, choose);
    }
}
