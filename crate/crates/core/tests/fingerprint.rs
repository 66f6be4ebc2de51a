mod common;

use common::*;
use corrpoly::classify::random_integer_game;
use corrpoly::equilibria::correlated_polytope;
use corrpoly::polyhedra::canonical_key;
use fixedbitset::FixedBitSet;
use itertools::Itertools;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Incidences of polytopes of small random games, ties included.
fn corpus() -> Vec<(usize, Vec<FixedBitSet>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for (s, r, n) in [("2x2", 3, 60), ("2x3", 2, 80), ("2x3", 20, 60)] {
        for _ in 0..n {
            let game = random_integer_game(&shape(s), (-r, r), &mut rng);
            let report = correlated_polytope(&game).unwrap();
            if report.facets.len() <= 8 {
                out.push((report.vertices.len(), report.facets.vertex_sets.clone()));
            }
        }
    }
    out
}

#[test]
fn equal_keys_exactly_for_isomorphic_incidences() {
    let items = corpus();
    let keys: Vec<Vec<u8>> = items.iter().map(|(nv, f)| canonical_key(*nv, f)).collect();
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    assert!(distinct.len() >= 4, "corpus too uniform: {} types", distinct.len());
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            let same_key = keys[i] == keys[j];
            let iso = items[i].0 == items[j].0 && isomorphic(&items[i].1, &items[j].1, items[i].0);
            assert_eq!(same_key, iso, "pair {i}, {j}");
        }
    }
}

fn shuffle(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

fn relabel(nv: usize, facets: &[FixedBitSet], vperm: &[usize], fperm: &[usize]) -> Vec<FixedBitSet> {
    let mut out = vec![FixedBitSet::with_capacity(nv); facets.len()];
    for (f, set) in facets.iter().enumerate() {
        for v in set.ones() {
            out[fperm[f]].insert(vperm[v]);
        }
    }
    out
}

fn incidence(nv: usize, bits: &[Vec<bool>]) -> Vec<FixedBitSet> {
    bits.iter()
        .map(|row| {
            let mut s = FixedBitSet::with_capacity(nv);
            s.extend(row.iter().take(nv).positions(|&b| b));
            s
        })
        .collect()
}

fn random_incidence() -> impl Strategy<Value = (usize, Vec<FixedBitSet>)> {
    (1usize..=7, 1usize..=6).prop_flat_map(|(nv, nf)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), nv), nf)
            .prop_map(move |bits| (nv, incidence(nv, &bits)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn keys_separate_random_incidences(a in random_incidence(), b in random_incidence()) {
        let same = canonical_key(a.0, &a.1) == canonical_key(b.0, &b.1);
        let iso = a.0 == b.0 && isomorphic(&a.1, &b.1, a.0);
        prop_assert_eq!(same, iso);
    }

    #[test]
    fn keys_separate_near_copies(
        a in random_incidence(),
        vseed in any::<u64>(),
        fseed in any::<u64>(),
        flip in any::<(usize, usize)>(),
    ) {
        let (nv, facets) = a;
        let moved = relabel(nv, &facets, &shuffle(nv, vseed), &shuffle(facets.len(), fseed));
        prop_assert_eq!(canonical_key(nv, &facets), canonical_key(nv, &moved));
        let mut near = moved;
        let f = flip.0 % near.len();
        near[f].toggle(flip.1 % nv);
        let same = canonical_key(nv, &facets) == canonical_key(nv, &near);
        prop_assert_eq!(same, isomorphic(&facets, &near, nv));
    }

    #[test]
    fn key_ignores_labels(
        game in game_strategy(shape("2x3"), 15),
        vseed in any::<u64>(),
        fseed in any::<u64>(),
    ) {
        let report = correlated_polytope(&game).unwrap();
        let nv = report.vertices.len();
        let facets = &report.facets.vertex_sets;
        let moved = relabel(nv, facets, &shuffle(nv, vseed), &shuffle(facets.len(), fseed));
        prop_assert_eq!(canonical_key(nv, facets), canonical_key(nv, &moved));
    }
}
