//! Censuses of combinatorial types: over sign patterns of the strata
//! components for `(2 x 3)` games, and over random integer games.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::equilibria::{polytope_of_differences, type_summary, TypeSummary};
use crate::error::{Error, Result};
use crate::game::{DifferenceVector, Game, GameShape};
use crate::strata::{irreducible_components, relabelled_binomials, StrataLimits, SymbolicPolynomial};
use crate::Rational;

/// Default attempts per sign pattern.
pub const DEFAULT_BUDGET: u64 = 50_000;
/// Default inclusive payoff range for random games.
pub const DEFAULT_RANGE: (i64, i64) = (-100, 100);

/// One sign in `{+1, -1}` per strata component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignPattern(Vec<i8>);

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument(format!("sign pattern entry {bad} is not +1 or -1")));
        }
        Ok(Self(signs))
    }

    /// Pattern number `index`: bit `i` set means component `i` is negative.
    pub fn from_index(index: u64, len: usize) -> Self {
        Self((0..len).map(|i| if index >> i & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Shapes censused without an explicit override: `(2 x n)` for
/// `2 <= n <= 5` and `(2 x 2 x 2)`.
pub fn census_shape_allowed(shape: &GameShape) -> bool {
    matches!(shape.two_by_n(), Some(2..=5)) || shape.strategies() == [2, 2, 2]
}

/// Where a representative came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representative {
    Game { index: u64, game: Game },
    Pattern { pattern: SignPattern, y: DifferenceVector },
}

impl Representative {
    pub fn differences(&self) -> DifferenceVector {
        match self {
            Representative::Game { game, .. } => game.payoff_differences(),
            Representative::Pattern { y, .. } => y.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Representative::Game { index, game } => json!({ "sample": index, "game": game.to_json() }),
            Representative::Pattern { pattern, y } => json!({
                "pattern": pattern.signs(),
                "y": y.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }),
        }
    }
}

/// One observed combinatorial type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeRecord {
    pub dimension: usize,
    pub canonical_key: Vec<u8>,
    pub f_vector: Vec<usize>,
    pub vertex_count: usize,
    pub facet_count: usize,
    pub count: u64,
    /// Occurrences off the strata boundary, see [`is_strata_generic`].
    pub generic_count: u64,
    pub representative: Representative,
}

impl TypeRecord {
    pub fn key_hex(&self) -> String {
        hex::encode(&self.canonical_key)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CensusKind {
    Sampling { count: u64, range: (i64, i64) },
    SignPatterns { budget: u64, patterns: u64, unresolved: Vec<SignPattern> },
}

/// Observed types sorted by dimension and key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub shape: GameShape,
    pub seed: u64,
    pub kind: CensusKind,
    pub types: Vec<TypeRecord>,
}

impl CensusTable {
    /// Number of distinct types per dimension.
    pub fn types_by_dimension(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for t in &self.types {
            *out.entry(t.dimension).or_insert(0) += 1;
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("dimension,type_key,count\n");
        for t in &self.types {
            out.push_str(&format!("{},{},{}\n", t.dimension, t.key_hex(), t.count));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let kind = match &self.kind {
            CensusKind::Sampling { count, range } => json!({
                "mode": "sampling",
                "count": count,
                "range": [range.0, range.1],
            }),
            CensusKind::SignPatterns {
                budget,
                patterns,
                unresolved,
            } => json!({
                "mode": "sign_patterns",
                "budget": budget,
                "patterns": patterns,
                "unresolved": unresolved.iter().map(|p| p.signs()).collect::<Vec<_>>(),
            }),
        };
        let by_dim: BTreeMap<String, usize> = self
            .types_by_dimension()
            .into_iter()
            .map(|(d, n)| (d.to_string(), n))
            .collect();
        json!({
            "shape": self.shape.to_string(),
            "seed": self.seed,
            "census": kind,
            "types_by_dimension": by_dim,
            "types": self.types.iter().map(|t| json!({
                "dimension": t.dimension,
                "type_key": t.key_hex(),
                "f_vector": t.f_vector,
                "vertices": t.vertex_count,
                "facets": t.facet_count,
                "count": t.count,
                "generic_count": t.generic_count,
                "representative": t.representative.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Re-runs every representative and checks it reproduces its key.
    pub fn verify_representatives(&self) -> Result<()> {
        for t in &self.types {
            let again = type_summary(&t.representative.differences())?;
            if again.canonical_key != t.canonical_key || again.dimension != t.dimension {
                return Err(Error::Invariant(format!(
                    "representative of type {} does not reproduce it",
                    t.key_hex()
                )));
            }
        }
        Ok(())
    }
}

/// Whether no coordinate of `y` vanishes and, for `(2 x n)` shapes, no
/// binomial component (over any two player-2 pairs) vanishes either.
pub fn is_strata_generic(y: &DifferenceVector) -> bool {
    use num_traits::Zero;
    y.entries().iter().all(|x| !x.is_zero())
        && relabelled_binomials(y.shape())
            .iter()
            .all(|b| b.evaluate(y).is_ok_and(|v| !v.is_zero()))
}

struct Observation {
    summary: TypeSummary,
    representative: Representative,
    generic: bool,
}

/// Folds observations, in order, into records. The first occurrence of a
/// type is its representative; the full report of each representative
/// supplies the f-vector.
fn aggregate(observations: impl IntoIterator<Item = Observation>) -> Result<Vec<TypeRecord>> {
    let mut index: HashMap<TypeSummary, usize> = HashMap::new();
    let mut firsts: Vec<(TypeSummary, Representative, u64, u64)> = Vec::new();
    for o in observations {
        let g = u64::from(o.generic);
        match index.get(&o.summary) {
            Some(&i) => {
                firsts[i].2 += 1;
                firsts[i].3 += g;
            }
            None => {
                index.insert(o.summary.clone(), firsts.len());
                firsts.push((o.summary, o.representative, 1, g));
            }
        }
    }
    let mut records = firsts
        .into_par_iter()
        .map(|(summary, representative, count, generic_count)| {
            let report = polytope_of_differences(&representative.differences())?;
            if report.combinatorial_type.canonical_key != summary.canonical_key {
                return Err(Error::Invariant("type key differs between summary and report".into()));
            }
            Ok(TypeRecord {
                dimension: summary.dimension,
                canonical_key: summary.canonical_key,
                f_vector: report.f_vector,
                vertex_count: report.vertices.len(),
                facet_count: report.facets.len(),
                count,
                generic_count,
                representative,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| (a.dimension, &a.canonical_key).cmp(&(b.dimension, &b.canonical_key)));
    Ok(records)
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random game with integer payoffs drawn uniformly from `range` (inclusive).
pub fn random_integer_game(shape: &GameShape, range: (i64, i64), rng: &mut impl Rng) -> Game {
    let joint = shape.dims().joint;
    let payoffs: Vec<Vec<i64>> = (0..shape.players())
        .map(|_| (0..joint).map(|_| rng.random_range(range.0..=range.1)).collect())
        .collect();
    Game::from_integers(shape.clone(), &payoffs).expect("payoff dimensions match the shape")
}

/// Census of `count` random integer games; sample `i` uses stream `i` of
/// the generator seeded with `seed`, so the result does not depend on the
/// number of worker threads.
pub fn sample_census(shape: &GameShape, count: u64, seed: u64, range: (i64, i64)) -> Result<CensusTable> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    if range.0 > range.1 {
        return Err(Error::InvalidArgument(format!("empty payoff range {range:?}")));
    }
    let observations = (0..count)
        .into_par_iter()
        .map(|index| {
            let game = random_integer_game(shape, range, &mut sample_rng(seed, index));
            let y = game.payoff_differences();
            Ok(Observation {
                summary: type_summary(&y)?,
                generic: is_strata_generic(&y),
                representative: Representative::Game { index, game },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CensusTable {
        shape: shape.clone(),
        seed,
        kind: CensusKind::Sampling { count, range },
        types: aggregate(observations)?,
    })
}

/// The twelve `(2 x 3)` strata components in pattern order: the nine
/// coordinates, then the three binomials.
pub fn components_2x3() -> Vec<SymbolicPolynomial> {
    let shape = two_by_three();
    irreducible_components(&shape, &StrataLimits::default())
        .expect("(2 x 3) components are computable")
        .polynomials()
}

fn two_by_three() -> GameShape {
    GameShape::new(vec![2, 3]).expect("valid shape")
}

/// Rejection sampler for `(2 x 3)` sign patterns.
///
/// The free coordinates of the correlated equilibrium space are the three
/// `Y1_k(1,2)` and `Y2_j(1,2)`, `Y2_j(2,3)`; `Y2_j(1,3)` is their sum. Free
/// coordinates get the sign the pattern prescribes and magnitudes
/// `a / b`, `a` in `1..=20`, `b` in `1..=5`. Components are homogeneous, so
/// signs are checked on the vector scaled by 60 to integers.
pub struct PatternSampler {
    shape: GameShape,
    components: Vec<SymbolicPolynomial>,
    /// Variable indices of the free coordinates and of the derived `Y2_j(1,3)`.
    free: Vec<usize>,
    derived: [(usize, usize, usize); 2],
}

impl Default for PatternSampler {
    fn default() -> Self {
        Self::new()
    }
}

impl PatternSampler {
    pub fn new() -> Self {
        let shape = two_by_three();
        let components = components_2x3();
        let v = |player, ctx, k, l| shape.variable_index(player, ctx, k, l);
        let free = vec![
            v(0, 0, 0, 1),
            v(0, 1, 0, 1),
            v(0, 2, 0, 1),
            v(1, 0, 0, 1),
            v(1, 0, 1, 2),
            v(1, 1, 0, 1),
            v(1, 1, 1, 2),
        ];
        let derived = [
            (v(1, 0, 0, 2), v(1, 0, 0, 1), v(1, 0, 1, 2)),
            (v(1, 1, 0, 2), v(1, 1, 0, 1), v(1, 1, 1, 2)),
        ];
        Self {
            shape,
            components,
            free,
            derived,
        }
    }

    pub fn components(&self) -> &[SymbolicPolynomial] {
        &self.components
    }

    /// Searches for `y` in the space with `s_i f_i(y) > 0` for every `i`.
    pub fn realize(&self, pattern: &SignPattern, budget: u64, rng: &mut impl Rng) -> Result<Option<DifferenceVector>> {
        if pattern.len() != self.components.len() {
            return Err(Error::InvalidArgument(format!(
                "pattern has {} signs, expected {}",
                pattern.len(),
                self.components.len()
            )));
        }
        let vars = self.shape.dims().differences;
        // Sign of each variable's own coordinate component, when it has one.
        let own_sign = |var: usize| -> i64 {
            self.components
                .iter()
                .position(|c| *c == SymbolicPolynomial::variable(vars, var, 1))
                .map_or(1, |i| pattern.signs()[i] as i64)
        };
        let free_signs: Vec<i64> = self.free.iter().map(|&v| own_sign(v)).collect();
        let mut point = vec![0i64; vars];
        for _ in 0..budget {
            let mut scaled = vec![(0i64, 1i64); vars];
            for (&var, &sign) in self.free.iter().zip(&free_signs) {
                let a = rng.random_range(1..=20i64);
                let b = rng.random_range(1..=5i64);
                scaled[var] = (sign * a, b);
                point[var] = sign * a * (60 / b);
            }
            for &(target, x, y) in &self.derived {
                point[target] = point[x] + point[y];
            }
            let ok = self
                .components
                .iter()
                .zip(pattern.signs())
                .all(|(c, &s)| c.sign_at_integers(&point) == s);
            if ok {
                let mut entries = vec![Rational::from_integer(0.into()); vars];
                for &var in &self.free {
                    entries[var] = Rational::new(scaled[var].0.into(), scaled[var].1.into());
                }
                for &(target, x, y) in &self.derived {
                    entries[target] = &entries[x] + &entries[y];
                }
                return Ok(Some(DifferenceVector::new(self.shape.clone(), entries)?));
            }
        }
        Ok(None)
    }
}

/// Rejection sampling for one `(2 x 3)` pattern; `None` when the budget
/// runs out.
pub fn realize_sign_pattern(
    pattern: &SignPattern,
    shape: &GameShape,
    budget: u64,
    seed: u64,
) -> Result<Option<DifferenceVector>> {
    if shape.two_by_n() != Some(3) {
        return Err(Error::InvalidShape(format!("sign patterns are implemented for 2x3, not {shape}")));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    PatternSampler::new().realize(pattern, budget, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Runs every one of the `2^12` patterns. Pattern `i` samples from stream
/// `i` of the generator seeded with `seed`.
pub fn enumerate_sign_patterns_2x3(budget: u64, seed: u64) -> Result<CensusTable> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    let sampler = PatternSampler::new();
    let len = sampler.components().len();
    let patterns = 1u64 << len;
    let results = (0..patterns)
        .into_par_iter()
        .map(|index| {
            let pattern = SignPattern::from_index(index, len);
            let found = sampler.realize(&pattern, budget, &mut sample_rng(seed, index))?;
            let observed = match found {
                Some(y) => Some(Observation {
                    summary: type_summary(&y)?,
                    generic: is_strata_generic(&y),
                    representative: Representative::Pattern { pattern: pattern.clone(), y },
                }),
                None => None,
            };
            Ok((pattern, observed))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut unresolved = Vec::new();
    let mut observations = Vec::new();
    for (pattern, observed) in results {
        match observed {
            Some(o) => observations.push(o),
            None => unresolved.push(pattern),
        }
    }
    Ok(CensusTable {
        shape: sampler.shape.clone(),
        seed,
        kind: CensusKind::SignPatterns {
            budget,
            patterns,
            unresolved,
        },
        types: aggregate(observations)?,
    })
}

/// Outcome of checking lower-dimensional `(2 x n)` types against maximal
/// types of smaller `(2 x k)` games.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub n: usize,
    pub count: u64,
    pub seed: u64,
    /// Maximal-dimension type keys found for each `k < n`.
    pub library: Vec<(usize, Vec<Vec<u8>>)>,
    /// Non-maximal, non-point types with the `k` whose maximal type matches.
    pub matched: Vec<(TypeRecord, usize)>,
    /// Non-maximal, non-point types matching no library entry.
    pub candidates: Vec<TypeRecord>,
    /// Samples whose polytope is a point.
    pub points: u64,
}

impl ProbeReport {
    pub fn to_json(&self) -> Value {
        let record = |t: &TypeRecord| {
            json!({
                "dimension": t.dimension,
                "type_key": t.key_hex(),
                "f_vector": t.f_vector,
                "count": t.count,
                "generic_count": t.generic_count,
                "representative": t.representative.to_json(),
            })
        };
        json!({
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "points": self.points,
            "library": self.library.iter().map(|(k, keys)| json!({
                "shape": format!("2x{k}"),
                "maximal_types": keys.iter().map(hex::encode).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "matched": self.matched.iter().map(|(t, k)| {
                let mut v = record(t);
                v["matches"] = json!(format!("2x{k}"));
                v
            }).collect::<Vec<_>>(),
            "counterexample_candidates": self.candidates.iter().map(record).collect::<Vec<_>>(),
        })
    }
}

/// Samples `(2 x k)` games for `2 <= k < n` to collect their maximal types,
/// then classifies the non-maximal types of `count` sampled `(2 x n)` games.
pub fn conjecture_probe_2xn(n: usize, count: u64, seed: u64) -> Result<ProbeReport> {
    if !(2..=5).contains(&n) {
        return Err(Error::InvalidArgument(format!("probe needs 2 <= n <= 5, got {n}")));
    }
    let mut report = ProbeReport {
        n,
        count,
        seed,
        library: Vec::new(),
        matched: Vec::new(),
        candidates: Vec::new(),
        points: 0,
    };
    if n == 2 {
        return Ok(report);
    }
    for k in 2..n {
        let shape = GameShape::new(vec![2, k])?;
        let census = sample_census(&shape, count, seed, DEFAULT_RANGE)?;
        let maximal = 2 * k - 1;
        report.library.push((
            k,
            census
                .types
                .into_iter()
                .filter(|t| t.dimension == maximal)
                .map(|t| t.canonical_key)
                .collect(),
        ));
    }
    let shape = GameShape::new(vec![2, n])?;
    let census = sample_census(&shape, count, seed, DEFAULT_RANGE)?;
    for t in census.types {
        if t.dimension == 0 {
            report.points += t.count;
        } else if t.dimension + 1 == shape.dims().joint {
            continue;
        } else {
            match report
                .library
                .iter()
                .find(|(_, keys)| keys.contains(&t.canonical_key))
            {
                Some(&(k, _)) => report.matched.push((t, k)),
                None => report.candidates.push(t),
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_reject_zero() {
        assert!(SignPattern::new(vec![1, 0, -1]).is_err());
        assert_eq!(SignPattern::from_index(5, 4).signs(), &[-1, 1, -1, 1]);
    }

    #[test]
    fn allowed_shapes() {
        let ok = |s: &str| census_shape_allowed(&s.parse().unwrap());
        assert!(ok("2x2") && ok("2x5") && ok("2x2x2"));
        assert!(!ok("3x3") && !ok("2x6") && !ok("2x2x2x2"));
    }
}
