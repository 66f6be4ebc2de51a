//! Game-level view: the correlated equilibrium polytope of a game, its Nash
//! vertices, and the sign conditions describing full-dimensionality.

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cone::{build_constraint_matrix, RowLabel};
use crate::error::{Error, Result};
use crate::game::{DifferenceVector, Game, GameShape};
use crate::polyhedra::{
    self, brute_force_vertices, canonical_key, check_lattice, enumerate_vertices, face_lattice,
    CombinatorialType, Facets, HRep, VRep,
};
use crate::Rational;

/// Everything computed about one correlated equilibrium polytope.
#[derive(Clone, Debug)]
pub struct PolytopeReport {
    pub shape: GameShape,
    pub vertices: VRep,
    pub dimension: usize,
    pub facets: Facets,
    pub facet_labels: Vec<RowLabel>,
    pub f_vector: Vec<usize>,
    pub combinatorial_type: CombinatorialType,
    pub nash_flags: Vec<bool>,
    pub is_maximal_dimension: bool,
}

#[derive(Serialize)]
struct ReportDump<'a> {
    shape: String,
    vertices: Vec<Vec<String>>,
    dimension: usize,
    is_maximal_dimension: bool,
    f_vector: &'a [usize],
    facet_count: usize,
    facets: Vec<FacetDump>,
    type_key: String,
    nash_flags: &'a [bool],
}

#[derive(Serialize)]
struct FacetDump {
    inequality: String,
    row: usize,
    multiplicity: usize,
    vertices: Vec<usize>,
}

impl PolytopeReport {
    pub fn type_key(&self) -> String {
        self.combinatorial_type.key_hex()
    }

    pub fn nash_count(&self) -> usize {
        self.nash_flags.iter().filter(|&&b| b).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dump = ReportDump {
            shape: self.shape.to_string(),
            vertices: self
                .vertices
                .vertices()
                .iter()
                .map(|p| p.iter().map(|x| x.to_string()).collect())
                .collect(),
            dimension: self.dimension,
            is_maximal_dimension: self.is_maximal_dimension,
            f_vector: &self.f_vector,
            facet_count: self.facets.len(),
            facets: (0..self.facets.len())
                .map(|i| FacetDump {
                    inequality: self.facet_labels[i].to_string(),
                    row: self.facets.rows[i],
                    multiplicity: self.facets.multiplicity[i],
                    vertices: self.facets.vertex_sets[i].ones().collect(),
                })
                .collect(),
            type_key: self.type_key(),
            nash_flags: &self.nash_flags,
        };
        serde_json::to_value(dump).expect("report serializes")
    }
}

/// Dimension and canonical key only, without the face lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeSummary {
    pub dimension: usize,
    pub canonical_key: Vec<u8>,
}

struct Geometry {
    labels: Vec<RowLabel>,
    vertices: VRep,
    dimension: usize,
    facets: Facets,
}

fn geometry(y: &DifferenceVector) -> Result<Geometry> {
    let a = build_constraint_matrix(y);
    let h = HRep::from_cone_matrix(&a);
    let vertices = enumerate_vertices(&h);
    if vertices.is_empty() {
        return Err(Error::Invariant("correlated polytope has no vertices".into()));
    }
    let dimension = polyhedra::polytope_dimension(&vertices)?;
    let facets = polyhedra::irredundant_facets(&h, &vertices)?;
    Ok(Geometry {
        labels: a.labels().to_vec(),
        vertices,
        dimension,
        facets,
    })
}

pub fn correlated_polytope(game: &Game) -> Result<PolytopeReport> {
    polytope_of_differences(&game.payoff_differences())
}

/// Full report for a difference vector. The face lattice is checked against
/// the geometric dimension and the Euler relation.
pub fn polytope_of_differences(y: &DifferenceVector) -> Result<PolytopeReport> {
    let g = geometry(y)?;
    let shape = y.shape().clone();
    let lattice = face_lattice(g.vertices.len(), &g.facets.vertex_sets);
    check_lattice(&lattice, g.dimension)?;
    let f_vector = lattice.f_vector();
    let combinatorial_type = CombinatorialType {
        dimension: g.dimension,
        f_vector: f_vector.clone(),
        canonical_key: canonical_key(g.vertices.len(), &g.facets.vertex_sets),
    };
    let nash_flags = g
        .vertices
        .vertices()
        .iter()
        .map(|p| is_nash_vertex(p, &shape))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolytopeReport {
        is_maximal_dimension: g.dimension + 1 == shape.dims().joint,
        facet_labels: g.facets.rows.iter().map(|&r| g.labels[r]).collect(),
        shape,
        vertices: g.vertices,
        dimension: g.dimension,
        facets: g.facets,
        f_vector,
        combinatorial_type,
        nash_flags,
    })
}

/// Dimension and type key, skipping the lattice and Nash flags.
pub fn type_summary(y: &DifferenceVector) -> Result<TypeSummary> {
    let g = geometry(y)?;
    Ok(TypeSummary {
        dimension: g.dimension,
        canonical_key: canonical_key(g.vertices.len(), &g.facets.vertex_sets),
    })
}

/// Compares the double description result with the brute-force oracle.
pub fn verify_vertices(game: &Game) -> Result<VRep> {
    let h = HRep::from_cone_matrix(&build_constraint_matrix(&game.payoff_differences()));
    let fast = enumerate_vertices(&h);
    let slow = brute_force_vertices(&h);
    if fast != slow {
        return Err(Error::Invariant(format!(
            "vertex enumeration found {} vertices, oracle found {}",
            fast.len(),
            slow.len()
        )));
    }
    Ok(fast)
}

/// Whether `p` is the product of its marginals.
pub fn is_nash_vertex(p: &[Rational], shape: &GameShape) -> Result<bool> {
    let joint = shape.dims().joint;
    if p.len() != joint {
        return Err(Error::ShapeMismatch(format!("point has {} entries, expected {joint}", p.len())));
    }
    if p.iter().any(|x| x.is_negative()) || !p.iter().sum::<Rational>().is_one() {
        return Err(Error::InvalidArgument("point is not in the simplex".into()));
    }
    let mut marginals: Vec<Vec<Rational>> =
        shape.strategies().iter().map(|&d| vec![Rational::zero(); d]).collect();
    for (flat, x) in p.iter().enumerate() {
        for (i, &s) in shape.profile(flat).iter().enumerate() {
            marginals[i][s] += x;
        }
    }
    Ok(p.iter().enumerate().all(|(flat, x)| {
        let product: Rational = shape
            .profile(flat)
            .iter()
            .enumerate()
            .map(|(i, &s)| marginals[i][s].clone())
            .product();
        *x == product
    }))
}

/// Whether the polytope of `y` has dimension `D - 1`; `y` must satisfy the
/// triangle relations.
pub fn is_full_dimensional(y: &DifferenceVector) -> Result<bool> {
    if !y.in_space() {
        return Err(Error::OutsideSpace);
    }
    let g = geometry(y)?;
    Ok(g.dimension + 1 == y.shape().dims().joint)
}

/// Which of the four forbidden sign templates for `(2 x n)` games hold,
/// numbered 1 to 4: every `Y1_k(1,2)` positive; every one negative; every
/// `Y2_j(k,n)`, `k < n`, positive; every one negative.
pub fn check_forbidden_conditions(y: &DifferenceVector) -> Result<Vec<u8>> {
    let shape = y.shape();
    let n = shape
        .two_by_n()
        .ok_or_else(|| Error::InvalidShape(format!("{shape} is not a (2 x n) shape")))?;
    let first: Vec<Rational> = (0..n).map(|k| y.get(0, k, 0, 1)).collect();
    let second: Vec<Rational> = (0..2)
        .flat_map(|j| (0..n - 1).map(move |k| (j, k)))
        .map(|(j, k)| y.get(1, j, k, n - 1))
        .collect();
    let mut out = Vec::new();
    for (id, values, positive) in [
        (1, &first, true),
        (2, &first, false),
        (3, &second, true),
        (4, &second, false),
    ] {
        let holds = values
            .iter()
            .all(|v| if positive { v.is_positive() } else { v.is_negative() });
        if holds {
            out.push(id);
        }
    }
    Ok(out)
}

/// Membership in the union of the two open orthants that make up the
/// full-dimensional region of `(2 x 2)` games.
pub fn region_membership_2x2(y: &DifferenceVector) -> Result<bool> {
    if y.shape().two_by_n() != Some(2) {
        return Err(Error::InvalidShape(format!("{} is not 2x2", y.shape())));
    }
    let s: Vec<i8> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(i, ctx)| {
            let v = y.get(i, ctx, 0, 1);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect();
    Ok(s == [1, -1, 1, -1] || s == [-1, 1, -1, 1])
}

/// Active facet set of each vertex, as indices into `report.facets`.
pub fn vertex_facets(report: &PolytopeReport) -> Vec<FixedBitSet> {
    let nf = report.facets.len();
    (0..report.vertices.len())
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(nf);
            for (f, set) in report.facets.vertex_sets.iter().enumerate() {
                if set.contains(v) {
                    s.insert(f);
                }
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn shape(s: &str) -> GameShape {
        s.parse().unwrap()
    }

    #[test]
    fn nash_test_on_rank_one_points() {
        let s = shape("2x2");
        assert!(is_nash_vertex(&[q(0, 1), q(1, 1), q(0, 1), q(0, 1)], &s).unwrap());
        assert!(!is_nash_vertex(&[q(0, 1), q(1, 101), q(1, 101), q(99, 101)], &s).unwrap());
        assert!(is_nash_vertex(&[q(1, 2), q(1, 1), q(0, 1), q(0, 1)], &s).is_err());
    }

    #[test]
    fn forbidden_conditions_small() {
        let y = DifferenceVector::from_integers(shape("2x2"), &[-1, 2, 3, 4]).unwrap();
        assert_eq!(check_forbidden_conditions(&y).unwrap(), vec![3]);
        let y = DifferenceVector::from_integers(shape("2x2"), &[1, 1, 1, 1]).unwrap();
        assert_eq!(check_forbidden_conditions(&y).unwrap(), vec![1, 3]);
        let y = DifferenceVector::from_integers(shape("2x2x2"), &[0; 12]).unwrap();
        assert!(check_forbidden_conditions(&y).is_err());
    }

    #[test]
    fn orthant_membership() {
        let s = shape("2x2");
        let y = |v: [i64; 4]| DifferenceVector::from_integers(s.clone(), &v).unwrap();
        assert!(region_membership_2x2(&y([1, -1, 1, -1])).unwrap());
        assert!(region_membership_2x2(&y([-99, 1, -99, 1])).unwrap());
        assert!(!region_membership_2x2(&y([1, 1, -1, -1])).unwrap());
        assert!(is_full_dimensional(&y([1, -1, 1, -1])).unwrap());
        assert!(!is_full_dimensional(&y([1, 1, 1, 1])).unwrap());
    }
}
