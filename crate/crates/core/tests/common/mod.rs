//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use corrpoly::{Game, GameShape, Rational};
use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn shape(s: &str) -> GameShape {
    s.parse().unwrap()
}

pub fn fixture(name: &str) -> Game {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    Game::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn fixture_names() -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names
}

/// Game with integer payoffs in `-r..=r`.
pub fn game_strategy(shape: GameShape, r: i64) -> impl Strategy<Value = Game> {
    let joint = shape.dims().joint;
    let players = shape.players();
    proptest::collection::vec(proptest::collection::vec(-r..=r, joint), players)
        .prop_map(move |p| Game::from_integers(shape.clone(), &p).unwrap())
}

/// Incentive inequalities written straight from the payoffs:
/// `sum_{s_-i} (X_i(k, s_-i) - X_i(l, s_-i)) p(k, s_-i) >= 0`.
pub fn incentive_rows_from_payoffs(game: &Game) -> Vec<Vec<Rational>> {
    let shape = game.shape();
    let joint = shape.dims().joint;
    let mut rows = Vec::new();
    for (i, &d) in shape.strategies().iter().enumerate() {
        for k in 0..d {
            for l in (0..d).filter(|&l| l != k) {
                let mut row = vec![Rational::zero(); joint];
                for flat in 0..joint {
                    let profile = shape.profile(flat);
                    if profile[i] != k {
                        continue;
                    }
                    let mut dev = profile.clone();
                    dev[i] = l;
                    row[flat] = game.payoff(i, &profile) - game.payoff(i, &dev);
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Determinant by fraction-valued Gaussian elimination.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut out = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            out = -out;
        }
        out *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &a[c][k] * &f;
                a[r][k] -= v;
            }
        }
    }
    out
}

/// Whether two vertex-facet incidences agree up to relabelling vertices and
/// facets, by trying every facet permutation.
pub fn isomorphic(a: &[FixedBitSet], b: &[FixedBitSet], vertices: usize) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let profile = |f: &[FixedBitSet]| -> Vec<Vec<usize>> {
        (0..vertices)
            .map(|v| f.iter().positions(|s| s.contains(v)).collect())
            .collect()
    };
    let (pa, pb) = (profile(a), profile(b));
    let mut target: Vec<Vec<usize>> = pb;
    target.iter_mut().for_each(|s| s.sort());
    target.sort();
    let degrees = |f: &[FixedBitSet]| f.iter().map(|s| s.count_ones(..)).collect::<Vec<_>>();
    let (da, db) = (degrees(a), degrees(b));
    (0..a.len()).permutations(a.len()).any(|perm| {
        if (0..a.len()).any(|i| da[i] != db[perm[i]]) {
            return false;
        }
        let mut mapped: Vec<Vec<usize>> = pa
            .iter()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&f| perm[f]).collect();
                t.sort();
                t
            })
            .collect();
        mapped.sort();
        mapped == target
    })
}
