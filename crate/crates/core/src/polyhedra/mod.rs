//! Exact polytopes of the form `{p >= 0, Up >= 0, sum(p) = 1}`.
//!
//! [`enumerate_vertices`] runs the double description method on the
//! homogenized cone, [`brute_force_vertices`] is the independent oracle.
//! Facets, the face lattice and the combinatorial fingerprint are derived
//! from the vertex-inequality incidences.

mod brute;
mod dd;
mod fingerprint;
mod lattice;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cone::ConeMatrix;
use crate::error::{Error, Result};
use crate::linalg;
use crate::Rational;

pub use brute::brute_force_vertices;
pub use dd::enumerate_vertices;
pub use fingerprint::{canonical_key, combinatorial_fingerprint, CombinatorialType};
pub use lattice::{check_lattice, face_lattice, f_vector, Face, FaceLattice};

/// Inequalities `<row, p> >= 0` together with the implicit `sum(p) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    dim: usize,
    rows: Vec<Vec<Rational>>,
}

impl HRep {
    /// Validates row lengths and the presence of every nonnegativity row.
    pub fn new(dim: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("ambient dimension must be positive".into()));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch(format!(
                "row {r} has length {}, expected {dim}",
                rows[r].len()
            )));
        }
        let h = Self { dim, rows };
        for c in 0..dim {
            if h.unit_row(c).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "missing nonnegativity row for coordinate {}",
                    c + 1
                )));
            }
        }
        Ok(h)
    }

    /// Nonnegativity rows only: the standard simplex.
    pub fn simplex(dim: usize) -> Self {
        Self::with_incentives(dim, Vec::new())
    }

    /// `extra` rows followed by the identity, the layout of `A(Y)`.
    pub fn with_incentives(dim: usize, extra: Vec<Vec<Rational>>) -> Self {
        let mut rows = extra;
        for c in 0..dim {
            let mut e = vec![Rational::zero(); dim];
            e[c] = Rational::from_integer(1.into());
            rows.push(e);
        }
        Self::new(dim, rows).expect("identity rows present")
    }

    pub fn from_cone_matrix(a: &ConeMatrix) -> Self {
        Self::new(a.shape().dims().joint, a.rows().to_vec()).expect("A(Y) contains the identity")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Index of a row that is a positive multiple of the `c`-th unit vector.
    pub(crate) fn unit_row(&self, c: usize) -> Option<usize> {
        self.rows.iter().position(|r| {
            r.iter()
                .enumerate()
                .all(|(j, x)| if j == c { x.is_positive() } else { x.is_zero() })
        })
    }

    pub(crate) fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| linalg::primitive_row(r)).collect()
    }

    /// Value of `<row, p>`.
    pub fn slack(&self, row: usize, point: &[Rational]) -> Rational {
        self.rows[row].iter().zip(point).map(|(a, x)| a * x).sum()
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        let total: Rational = point.iter().sum();
        total == Rational::from_integer(1.into())
            && (0..self.rows.len()).all(|r| !self.slack(r, point).is_negative())
    }
}

/// Vertex list, sorted lexicographically and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VRep {
    vertices: Vec<Vec<Rational>>,
}

impl VRep {
    pub fn new(mut vertices: Vec<Vec<Rational>>) -> Self {
        vertices.sort();
        vertices.dedup();
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Affine dimension of the convex hull of the vertices.
pub fn polytope_dimension(v: &VRep) -> Result<usize> {
    linalg::affine_dimension(v.vertices()).ok_or(Error::EmptyPolytope)
}

/// For every inequality, the set of vertices on which it is tight.
pub fn row_incidence(h: &HRep, v: &VRep) -> Vec<FixedBitSet> {
    (0..h.rows().len())
        .map(|r| {
            let mut set = FixedBitSet::with_capacity(v.len());
            for (i, p) in v.vertices().iter().enumerate() {
                if h.slack(r, p).is_zero() {
                    set.insert(i);
                }
            }
            set
        })
        .collect()
}

/// Irredundant facet-defining inequalities.
///
/// Rows with the same tight vertex set are one facet; `rows` holds the
/// smallest such row index and `multiplicity` how many rows support it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facets {
    pub rows: Vec<usize>,
    pub multiplicity: Vec<usize>,
    pub vertex_sets: Vec<FixedBitSet>,
}

impl Facets {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Facets of a nonempty polytope; a single point has none.
pub fn irredundant_facets(h: &HRep, v: &VRep) -> Result<Facets> {
    let dim = polytope_dimension(v)?;
    let mut facets = Facets {
        rows: Vec::new(),
        multiplicity: Vec::new(),
        vertex_sets: Vec::new(),
    };
    if dim == 0 {
        return Ok(facets);
    }
    for (r, set) in row_incidence(h, v).into_iter().enumerate() {
        let count = set.count_ones(..);
        if count == v.len() || count < dim {
            continue;
        }
        if let Some(pos) = facets.vertex_sets.iter().position(|s| *s == set) {
            facets.multiplicity[pos] += 1;
            continue;
        }
        let points: Vec<&Vec<Rational>> = set.ones().map(|i| &v.vertices()[i]).collect();
        if linalg::affine_dimension(&points) == Some(dim - 1) {
            facets.rows.push(r);
            facets.multiplicity.push(1);
            facets.vertex_sets.push(set);
        }
    }
    Ok(facets)
}
