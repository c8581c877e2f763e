//! Cross-route and structural invariants of the integer families and the
//! series engine.

mod common;

use common::{brute_bell, brute_restricted, brute_stirling};
use hyperbell::exact::{binomial, factorial, int_pow, Int, Rat};
use hyperbell::sequences::{
    classical_stirling_sum, euler_operator_stirling, extended_bell, extended_bell_alt,
    extended_bell_prefix, hg_polynomial, restricted_bell, restricted_bell_prefix, stirling_ext,
    stirling_row, supra_diagonal,
};
use hyperbell::series::{
    oracle_restricted, oracle_restricted_stirling, oracle_stirling, FormalSeries,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn both_recursions_agree() {
    for level in 0..=6 {
        let direct = extended_bell_prefix(level, 40);
        for (n, value) in direct.iter().enumerate() {
            assert_eq!(&extended_bell_alt(level, n), value, "L={level} n={n}");
        }
    }
}

#[test]
fn triangle_rows_sum_to_bell_values() {
    for level in 0..=4 {
        for n in 0..=25 {
            let sum: Int = stirling_row(level, n).into_iter().sum();
            assert_eq!(sum, extended_bell(level, n), "L={level} n={n}");
        }
    }
}

#[test]
fn triangle_edges() {
    for level in 0..=4u32 {
        for n in 1..=20usize {
            assert_eq!(stirling_ext(level, n, 1), Int::one());
            assert_eq!(stirling_ext(level, n, n), int_pow(&factorial(n), level));
            assert_eq!(stirling_ext(level, n, n + 1), Int::zero());
            assert_eq!(stirling_ext(level, n, 0), Int::zero());
        }
    }
}

#[test]
fn level_one_second_column_is_shifted_central_binomial() {
    for n in 1..=30usize {
        let expected = binomial(2 * n - 1, n) - Int::one();
        assert_eq!(stirling_ext(1, n, 2), expected, "n={n}");
    }
}

#[test]
fn classical_column_routes_agree() {
    for n in 1..=12usize {
        for l in 1..=n {
            let via_triangle = stirling_ext(0, n, l);
            assert_eq!(classical_stirling_sum(n, l).unwrap(), via_triangle);
            assert_eq!(euler_operator_stirling(n, l).unwrap(), via_triangle);
        }
    }
}

#[test]
fn partition_enumeration_agrees_with_recursions() {
    for level in 0..=3 {
        for n in 0..=12 {
            assert_eq!(brute_bell(level, n), extended_bell(level, n), "bell L={level} n={n}");
            for l in 0..=n {
                assert_eq!(
                    brute_stirling(level, n, l),
                    stirling_ext(level, n, l),
                    "stirling L={level} n={n} l={l}"
                );
            }
            for p in 0..=3 {
                assert_eq!(
                    brute_restricted(level, p, n),
                    restricted_bell(level, p, n),
                    "restricted L={level} p={p} n={n}"
                );
            }
        }
    }
}

#[test]
fn supra_diagonals_match_triangle() {
    for level in 0..=4 {
        for offset in 0..=3usize {
            let start = if offset == 0 { 0 } else { 1 };
            for n in start..=12usize {
                assert_eq!(
                    supra_diagonal(level, offset, n).unwrap(),
                    stirling_ext(level, n + offset, n),
                    "L={level} p={offset} n={n}"
                );
            }
        }
    }
}

#[test]
fn restriction_zero_is_the_plain_family() {
    for level in 0..=3 {
        assert_eq!(restricted_bell_prefix(level, 0, 15), extended_bell_prefix(level, 15));
    }
}

#[test]
fn restricted_boundary_band() {
    for level in 0..=2 {
        for p in 1..=4usize {
            let row = restricted_bell_prefix(level, p, p + 1);
            assert_eq!(row[0], Int::one());
            for v in &row[1..=p] {
                assert_eq!(v, &Int::zero());
            }
            assert_eq!(row[p + 1], Int::one());
        }
    }
}

#[test]
fn restricted_columns_sum_to_restricted_values() {
    let order = 10;
    for level in 0..=2 {
        for p in 0..=2usize {
            let expected = oracle_restricted(level, p, order).unwrap();
            let mut sums = vec![Int::zero(); order + 1];
            for l in 0..=order {
                for (n, v) in oracle_restricted_stirling(level, p, l, order)
                    .unwrap()
                    .into_iter()
                    .enumerate()
                {
                    sums[n] += v;
                }
            }
            assert_eq!(sums, expected, "L={level} p={p}");
        }
    }
}

#[test]
fn restricted_stirling_matches_partition_route() {
    for level in 0..=2 {
        for p in 1..=2usize {
            for l in 0..=5usize {
                let col = oracle_restricted_stirling(level, p, l, 10).unwrap();
                for (n, value) in col.iter().enumerate() {
                    assert_eq!(
                        value,
                        &common::brute_family(level, n, p + 1, Some(l)),
                        "L={level} p={p} l={l} n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn polynomial_coefficients_are_triangle_rows() {
    for level in 0..=3 {
        for n in 1..=10usize {
            let poly = hg_polynomial(level, n).unwrap();
            let row = stirling_row(level, n);
            assert_eq!(poly.coeffs(), &row[1..]);
            assert_eq!(poly.evaluate(&Int::one()), extended_bell(level, n));
        }
    }
}

#[test]
fn series_column_oracle_matches_triangle() {
    for level in 0..=3 {
        for l in 0..=8usize {
            let col = oracle_stirling(level, l, 12).unwrap();
            for (n, value) in col.iter().enumerate() {
                assert_eq!(value, &stirling_ext(level, n, l), "L={level} l={l} n={n}");
            }
        }
    }
}

#[test]
fn bell_values_stay_under_the_weight_bound() {
    // The weighted sum of the whole family is below e^(e-1) < 6, so each
    // member is below 6 times its weight. The command-line size guard leans
    // on this.
    for level in 0..=3u32 {
        for n in 0..=30usize {
            let bound = Int::from(6) * int_pow(&factorial(n), level + 1);
            assert!(extended_bell(level, n) < bound, "L={level} n={n}");
        }
    }
}

fn rational() -> impl Strategy<Value = Rat> {
    (-200i64..=200, 1i64..=40).prop_map(|(n, d)| Rat::new(Int::from(n), Int::from(d)))
}

fn series(order: usize) -> impl Strategy<Value = FormalSeries> {
    proptest::collection::vec(rational(), order + 1).prop_map(FormalSeries::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_log_roundtrip(mut f in series(12)) {
        f.set_coeff(0, Rat::zero());
        let back = f.exp().unwrap().log().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn log_exp_roundtrip(mut g in series(12)) {
        g.set_coeff(0, Rat::one());
        let back = g.log().unwrap().exp().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn multiplication_commutes(a in series(10), b in series(10)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn multiplication_associates(a in series(8), b in series(8), c in series(8)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn exp_turns_sums_into_products(mut f in series(10), mut g in series(10)) {
        f.set_coeff(0, Rat::zero());
        g.set_coeff(0, Rat::zero());
        let mut sum = FormalSeries::zeros(10);
        for k in 0..=10 {
            sum.set_coeff(k, f.coeff(k) + g.coeff(k));
        }
        let lhs = sum.exp().unwrap();
        let rhs = f.exp().unwrap().mul(&g.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pow_is_iterated_multiplication(f in series(8), e in 0usize..=6) {
        let mut expected = FormalSeries::one(8);
        for _ in 0..e {
            expected = expected.mul(&f).unwrap();
        }
        prop_assert_eq!(f.pow(e), expected);
    }
}
