mod common;

use common::*;
use corrpoly::cone::{build_constraint_matrix, symbolic_constraint_matrix};
use corrpoly::strata::{
    analyze_strata, binomial_catalog, factor_minor_2xn, for_each_maximal_minor, irreducible_components,
    relabelled_binomials, strata_region_bound, Factorizer, StrataLimits, SymbolicPolynomial,
};
use corrpoly::{DifferenceVector, GameShape, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

/// Every maximal minor evaluated at `y` next to the determinant of the same
/// rows of the numeric matrix.
fn check_minors_at(y: &DifferenceVector) -> Result<(), TestCaseError> {
    let m = symbolic_constraint_matrix(y.shape());
    let a = build_constraint_matrix(y);
    let mut bad = None;
    for_each_maximal_minor(&m, &StrataLimits::default(), |rows, p| {
        if bad.is_some() {
            return;
        }
        let sub: Vec<Vec<Rational>> = rows.iter().map(|&r| a.rows()[r].clone()).collect();
        if p.evaluate(y).unwrap() != det(&sub) {
            bad = Some(rows.to_vec());
        }
    })
    .unwrap();
    prop_assert!(bad.is_none(), "minor {:?} disagrees", bad);
    Ok(())
}

/// Minors vanishing at two random points; identically zero ones among them.
fn zero_count_at_random_points(s: &GameShape, seed: u64) -> u64 {
    use corrpoly::classify::random_integer_game;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let ys: Vec<DifferenceVector> = (0..2)
        .map(|_| random_integer_game(s, (-1000, 1000), &mut rng).payoff_differences())
        .collect();
    let mats: Vec<_> = ys.iter().map(build_constraint_matrix).collect();
    let m = symbolic_constraint_matrix(s);
    let mut zero = 0;
    for_each_maximal_minor(&m, &StrataLimits::default(), |rows, _| {
        let vanishes = mats.iter().all(|a| {
            let sub: Vec<Vec<Rational>> = rows.iter().map(|&r| a.rows()[r].clone()).collect();
            det(&sub).is_zero()
        });
        zero += u64::from(vanishes);
    })
    .unwrap();
    zero
}

fn var(s: &GameShape, player: usize, ctx: usize, k: usize, l: usize) -> SymbolicPolynomial {
    SymbolicPolynomial::variable(s.dims().differences, s.variable_index(player, ctx, k, l), 1)
}

#[test]
fn two_by_three_counts_and_components() {
    let s = shape("2x3");
    let summary = analyze_strata(&s, &StrataLimits::default()).unwrap();
    assert_eq!((summary.total, summary.zero, summary.nonzero), (3003, 1797, 1206));
    assert_eq!(zero_count_at_random_points(&s, 1), 1797);

    let c = irreducible_components(&s, &StrataLimits::default()).unwrap();
    assert_eq!(c.hyperplanes, (0..9).collect::<Vec<_>>());
    let b = |p: (usize, usize), q: (usize, usize)| {
        var(&s, 1, 1, p.0, p.1)
            .mul(&var(&s, 1, 0, q.0, q.1))
            .sub(&var(&s, 1, 0, p.0, p.1).mul(&var(&s, 1, 1, q.0, q.1)))
            .normalized_sign()
    };
    let mut expected = vec![b((0, 1), (0, 2)), b((0, 1), (1, 2)), b((0, 2), (1, 2))];
    expected.sort();
    let mut got = c.binomials.clone();
    got.sort();
    assert_eq!(got, expected);
}

#[test]
fn two_by_two_components_are_the_coordinates() {
    let s = shape("2x2");
    let c = irreducible_components(&s, &StrataLimits::default()).unwrap();
    assert_eq!(c.hyperplanes, [0, 1, 2, 3]);
    assert!(c.binomials.is_empty());
}

#[test]
fn three_player_counts() {
    let s = shape("2x2x2");
    let summary = analyze_strata(&s, &StrataLimits::default()).unwrap();
    assert_eq!(summary.total, 3003);
    assert_eq!(summary.max_degree, 6);
    assert!(summary.components.is_none());
    assert_eq!(zero_count_at_random_points(&s, 2), summary.zero);
}

#[test]
fn minors_factor_over_the_literal_catalog_for_small_shapes() {
    for s in ["2x2", "2x3"] {
        let s = shape(s);
        let m = symbolic_constraint_matrix(&s);
        let mut f = Factorizer::new(&m);
        for_each_maximal_minor(&m, &StrataLimits::default(), |_, p| {
            if !p.is_zero() {
                let fac = f.factor(p).unwrap();
                assert_eq!(&fac.reconstruct(), p);
            }
        })
        .unwrap();
    }
}

#[test]
fn two_by_four_minors_factor_into_player_two_binomials() {
    let s = shape("2x4");
    let m = symbolic_constraint_matrix(&s);
    let literal = binomial_catalog(&m);
    let relabelled = relabelled_binomials(&s);
    assert!(literal.iter().all(|b| relabelled.contains(b)));
    let mut f = Factorizer::with_catalog(relabelled);
    let summary = analyze_strata(&s, &StrataLimits::default()).unwrap();
    // Spot-check reconstruction on a stride of the minors.
    let mut i = 0u64;
    for_each_maximal_minor(&m, &StrataLimits::default(), |_, p| {
        i += 1;
        if !p.is_zero() && i % 97 == 0 {
            assert_eq!(&f.factor(p).unwrap().reconstruct(), p);
        }
    })
    .unwrap();
    let c = summary.components.unwrap();
    assert!(c.binomials.iter().all(|b| b.total_degree() == 2 && b.terms().len() == 2));
    // The minor reported outside the literal catalog really is.
    let rows = summary.first_outside.unwrap();
    let mut found = None;
    for_each_maximal_minor(&m, &StrataLimits::default(), |r, p| {
        if r == rows.as_slice() {
            found = Some(p.clone());
        }
    })
    .unwrap();
    assert!(factor_minor_2xn(&found.unwrap(), &s).is_err());
}

#[test]
fn region_bounds() {
    assert_eq!(strata_region_bound(2, 12, 9).unwrap(), BigInt::from(485_514));
    assert_eq!(
        strata_region_bound(6, 194, 12).unwrap(),
        "998020223797278".parse::<BigInt>().unwrap()
    );
}

#[test]
fn shape_caps() {
    assert!(analyze_strata(&shape("3x3"), &StrataLimits::default()).is_err());
    assert!(irreducible_components(&shape("2x2x2"), &StrataLimits::default()).is_err());
    let tight = StrataLimits { max_joint: 8, max_n: 3 };
    assert!(irreducible_components(&shape("2x4"), &tight).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn symbolic_minors_match_determinants_2x3(game in game_strategy(shape("2x3"), 50)) {
        check_minors_at(&game.payoff_differences())?;
    }

    #[test]
    fn symbolic_minors_match_determinants_2x2x2(game in game_strategy(shape("2x2x2"), 50)) {
        check_minors_at(&game.payoff_differences())?;
    }

    #[test]
    fn symbolic_matrix_evaluates_to_numeric(game in game_strategy(shape("2x2x2"), 50)) {
        let y = game.payoff_differences();
        let m = symbolic_constraint_matrix(y.shape());
        prop_assert_eq!(m.evaluate(&y).unwrap(), build_constraint_matrix(&y));
    }
}

