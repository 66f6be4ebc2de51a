mod common;

use common::*;
use corrpoly::equilibria::{check_forbidden_conditions, is_full_dimensional, region_membership_2x2};
use corrpoly::{DifferenceVector, Error, Game, Rational};
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-60i64..=-1, 1i64..=60]
}

/// A `(2 x n)` game meeting forbidden condition `cond` (1 to 4); the other
/// payoffs are arbitrary.
fn forbidden_game(n: usize) -> impl Strategy<Value = (u8, Game)> {
    let joint = 2 * n;
    (
        1u8..=4,
        proptest::collection::vec(-40i64..=40, joint),
        proptest::collection::vec(-40i64..=40, joint),
        proptest::collection::vec(1i64..=40, joint),
    )
        .prop_map(move |(cond, mut x1, mut x2, mags)| {
            let sign = if cond % 2 == 1 { 1 } else { -1 };
            if cond <= 2 {
                // Y1_k(1,2) = X1(1,k) - X1(2,k).
                for k in 0..n {
                    x1[k] = x1[n + k] + sign * mags[k];
                }
            } else {
                // Y2_j(k,n) = X2(j,k) - X2(j,n).
                for j in 0..2 {
                    for k in 0..n - 1 {
                        x2[j * n + k] = x2[j * n + n - 1] + sign * mags[j * n + k];
                    }
                }
            }
            let shape = format!("2x{n}").parse().unwrap();
            (cond, Game::from_integers(shape, &[x1, x2]).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_by_two_region_is_two_orthants(v in proptest::collection::vec(nonzero(), 4)) {
        let y = DifferenceVector::from_integers(shape("2x2"), &v).unwrap();
        prop_assert_eq!(region_membership_2x2(&y).unwrap(), is_full_dimensional(&y).unwrap());
    }

    #[test]
    fn forbidden_conditions_rule_out_full_dimension_2x2((cond, game) in forbidden_game(2)) {
        let y = game.payoff_differences();
        prop_assert!(check_forbidden_conditions(&y).unwrap().contains(&cond));
        prop_assert!(!is_full_dimensional(&y).unwrap());
    }

    #[test]
    fn forbidden_conditions_rule_out_full_dimension_2x3((cond, game) in forbidden_game(3)) {
        let y = game.payoff_differences();
        prop_assert!(check_forbidden_conditions(&y).unwrap().contains(&cond));
        prop_assert!(!is_full_dimensional(&y).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn forbidden_conditions_rule_out_full_dimension_2x4((cond, game) in forbidden_game(4)) {
        let y = game.payoff_differences();
        prop_assert!(check_forbidden_conditions(&y).unwrap().contains(&cond));
        prop_assert!(!is_full_dimensional(&y).unwrap());
    }
}

#[test]
fn full_dimension_needs_the_space() {
    let mut y = DifferenceVector::zeros(shape("2x3"));
    y.set(1, 0, 0, 1, Rational::from_integer(1.into()));
    assert!(matches!(is_full_dimensional(&y), Err(Error::OutsideSpace)));
}

#[test]
fn two_by_three_example_piece_is_full_dimensional() {
    let mut y = DifferenceVector::zeros(shape("2x3"));
    let entries = [
        (0, 0, 0, 1, 1),
        (0, 1, 0, 1, 1),
        (0, 2, 0, 1, -1),
        (1, 0, 0, 1, -3),
        (1, 0, 1, 2, 1),
        (1, 0, 0, 2, -2),
        (1, 1, 0, 1, 3),
        (1, 1, 1, 2, -2),
        (1, 1, 0, 2, 1),
    ];
    for (p, c, k, l, v) in entries {
        y.set(p, c, k, l, Rational::from_integer(v.into()));
    }
    assert!(y.in_space());
    // Y2_2(1,3) Y2_1(2,3) = 1 < Y2_1(1,3) Y2_2(2,3) = 4.
    assert!(is_full_dimensional(&y).unwrap());
    // Same orthant, reversed binomial inequality: 2 * 2 > (-1) * (-1).
    for (p, c, k, l, v) in [(1, 0, 1, 2, 2), (1, 0, 0, 2, -1), (1, 1, 1, 2, -1), (1, 1, 0, 2, 2)] {
        y.set(p, c, k, l, Rational::from_integer(v.into()));
    }
    assert!(y.in_space());
    assert!(!is_full_dimensional(&y).unwrap());
}
