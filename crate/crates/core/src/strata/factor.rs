//! Factorization of `(2 x n)` maximal minors into a signed monomial times
//! binomial `2 x 2` minors of `A(Y)`.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::Serialize;

use super::minors::for_each_maximal_minor;
use super::poly::Monomial;
use super::{StrataLimits, SymbolicPolynomial};
use crate::cone::{symbolic_constraint_matrix, SymbolicMatrix};
use crate::error::{Error, Result};
use crate::game::GameShape;

/// `sign * x^monomial * prod(binomial_factors)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorFactorization {
    pub sign: i8,
    pub monomial: Monomial,
    pub binomial_factors: Vec<SymbolicPolynomial>,
}

impl MinorFactorization {
    pub fn reconstruct(&self) -> SymbolicPolynomial {
        let vars = self.monomial.len();
        let head = SymbolicPolynomial::from_terms(vars, [(self.monomial.clone(), self.sign as i64)]);
        self.binomial_factors.iter().fold(head, |acc, b| acc.mul(b))
    }
}

/// Every two-term `2 x 2` minor of `A(Y)`, one representative per sign class.
pub fn binomial_catalog(m: &SymbolicMatrix) -> Vec<SymbolicPolynomial> {
    let rows = m.rows();
    let width = m.shape().dims().joint;
    let mut found = BTreeSet::new();
    for pair in (0..rows.len()).combinations(2) {
        let (a, b) = (&rows[pair[0]], &rows[pair[1]]);
        for cols in (0..width).combinations(2) {
            let (i, j) = (cols[0], cols[1]);
            let det = a[i].mul(&b[j]).sub(&a[j].mul(&b[i]));
            if det.terms().len() == 2 {
                found.insert(det.normalized_sign());
            }
        }
    }
    found.into_iter().collect()
}

/// Binomials `Y2_1(p) Y2_2(q) - Y2_1(q) Y2_2(p)` for every two player-2
/// pairs `p != q`, i.e. `2 x 2` minors of the player-2 rows after moving
/// their two nonzero entries into a common column pair. Contains the
/// catalog of `(2 x n)` shapes; empty for other shapes.
pub fn relabelled_binomials(shape: &GameShape) -> Vec<SymbolicPolynomial> {
    let Some(n) = shape.two_by_n() else {
        return Vec::new();
    };
    let vars = shape.dims().differences;
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut found = BTreeSet::new();
    for (p, q) in pairs.iter().tuple_combinations() {
        let x = |ctx: usize, (k, l): (usize, usize)| {
            SymbolicPolynomial::variable(vars, shape.variable_index(1, ctx, k, l), 1)
        };
        let det = x(0, *p).mul(&x(1, *q)).sub(&x(0, *q).mul(&x(1, *p)));
        found.insert(det.normalized_sign());
    }
    found.into_iter().collect()
}

/// Factors minors against a fixed catalog, caching by polynomial.
pub struct Factorizer {
    catalog: Vec<SymbolicPolynomial>,
    cache: HashMap<SymbolicPolynomial, MinorFactorization>,
}

impl Factorizer {
    pub fn new(m: &SymbolicMatrix) -> Self {
        Self::with_catalog(binomial_catalog(m))
    }

    pub fn with_catalog(catalog: Vec<SymbolicPolynomial>) -> Self {
        Self {
            catalog,
            cache: HashMap::new(),
        }
    }

    pub fn catalog(&self) -> &[SymbolicPolynomial] {
        &self.catalog
    }

    pub fn factor(&mut self, p: &SymbolicPolynomial) -> Result<MinorFactorization> {
        if let Some(f) = self.cache.get(p) {
            return Ok(f.clone());
        }
        let f = factor_with(p, &self.catalog)?;
        self.cache.insert(p.clone(), f.clone());
        Ok(f)
    }
}

fn factor_with(p: &SymbolicPolynomial, catalog: &[SymbolicPolynomial]) -> Result<MinorFactorization> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("cannot factor the zero polynomial".into()));
    }
    let content = p.content();
    let monomial = p.monomial_content();
    let mut rest = p.divide_term(&monomial, content);
    let mut binomial_factors = Vec::new();
    for b in catalog {
        while rest.total_degree() >= b.total_degree() {
            match rest.div_exact(b) {
                Some(q) => {
                    binomial_factors.push(b.clone());
                    rest = q;
                }
                None => break,
            }
        }
    }
    let unit = match rest.terms() {
        [(m, c)] if m.iter().all(|&e| e == 0) && c.abs() == 1 => *c,
        _ => 0,
    };
    if unit == 0 || content.abs() != 1 {
        return Err(Error::Factorization(format!(
            "residual quotient is not a unit (content {content}, {} residual terms)",
            rest.terms().len()
        )));
    }
    Ok(MinorFactorization {
        sign: (content.signum() * unit) as i8,
        monomial,
        binomial_factors,
    })
}

/// Standalone factorization of one minor of the `(2 x n)` matrix of `shape`.
pub fn factor_minor_2xn(p: &SymbolicPolynomial, shape: &GameShape) -> Result<MinorFactorization> {
    if shape.two_by_n().is_none() {
        return Err(Error::InvalidShape(format!("{shape} is not a (2 x n) shape")));
    }
    let m = symbolic_constraint_matrix(shape);
    if p.vars() != m.shape().dims().differences {
        return Err(Error::ShapeMismatch(format!(
            "polynomial has {} variables, shape {shape} has {}",
            p.vars(),
            m.shape().dims().differences
        )));
    }
    factor_with(p, &binomial_catalog(&m))
}

/// Irreducible components occurring across the nonzero maximal minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Variable indices `x_v` occurring as factors.
    pub hyperplanes: Vec<usize>,
    /// Binomial factors, each with positive leading coefficient.
    pub binomials: Vec<SymbolicPolynomial>,
    vars: usize,
}

impl Components {
    pub fn len(&self) -> usize {
        self.hyperplanes.len() + self.binomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Hyperplanes as degree-one polynomials, followed by the binomials.
    pub fn polynomials(&self) -> Vec<SymbolicPolynomial> {
        self.hyperplanes
            .iter()
            .map(|&v| SymbolicPolynomial::variable(self.vars, v, 1))
            .chain(self.binomials.iter().cloned())
            .collect()
    }
}

/// Counts and degrees over all maximal minors, plus the component list for
/// `(2 x n)` shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataSummary {
    pub shape: GameShape,
    pub total: u64,
    pub zero: u64,
    pub nonzero: u64,
    pub max_degree: usize,
    pub components: Option<Components>,
    /// Nonzero minors with a binomial factor that is not a `2 x 2` minor of
    /// `A(Y)` itself, only of the relabelled player-2 rows.
    pub outside_catalog: u64,
    /// Row set of the first such minor.
    pub first_outside: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct SummaryDump {
    shape: String,
    variables: Vec<String>,
    minors: CountDump,
    components_available: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    coordinate_hyperplanes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    binomials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minors_outside_catalog: Option<u64>,
    polynomials: Vec<super::poly::PolynomialDump>,
    display: Vec<String>,
}

#[derive(Serialize)]
struct CountDump {
    total: u64,
    zero: u64,
    nonzero: u64,
    max_degree: usize,
}

impl StrataSummary {
    pub fn to_json(&self) -> serde_json::Value {
        let names: Vec<String> = self.shape.variables().iter().map(|v| v.to_string()).collect();
        let polys = self.components.as_ref().map(|c| c.polynomials()).unwrap_or_default();
        let dump = SummaryDump {
            shape: self.shape.to_string(),
            minors: CountDump {
                total: self.total,
                zero: self.zero,
                nonzero: self.nonzero,
                max_degree: self.max_degree,
            },
            components_available: self.components.is_some(),
            coordinate_hyperplanes: self.components.as_ref().map(|c| c.hyperplanes.len()),
            binomials: self.components.as_ref().map(|c| c.binomials.len()),
            minors_outside_catalog: self.components.as_ref().map(|_| self.outside_catalog),
            display: polys.iter().map(|p| p.display_with(&names).to_string()).collect(),
            polynomials: polys.iter().map(|p| p.to_dump()).collect(),
            variables: names,
        };
        serde_json::to_value(dump).expect("summary serializes")
    }
}

/// Runs over every maximal minor once and checks the degree bound `D`.
///
/// For `(2 x n)` shapes with `n <= limits.max_n` every nonzero minor is
/// factored over the `2 x 2` minors of `A(Y)`; minors that need a binomial
/// from two different player-2 blocks are counted in `outside_catalog` and
/// factored over [`relabelled_binomials`] instead. A minor that factors over
/// neither is an error.
pub fn analyze_strata(shape: &GameShape, limits: &StrataLimits) -> Result<StrataSummary> {
    let m = symbolic_constraint_matrix(shape);
    let joint = shape.dims().joint;
    let mut factorizers = shape.two_by_n().filter(|&n| n <= limits.max_n).map(|_| {
        (
            Factorizer::new(&m),
            Factorizer::with_catalog(relabelled_binomials(shape)),
        )
    });
    let mut hyperplanes = BTreeSet::new();
    let mut binomials = BTreeSet::new();
    let (mut total, mut zero, mut max_degree, mut outside) = (0u64, 0u64, 0usize, 0u64);
    let mut first_outside = None;
    let mut failure: Option<Error> = None;
    for_each_maximal_minor(&m, limits, |rows, p| {
        total += 1;
        if p.is_zero() {
            zero += 1;
            return;
        }
        max_degree = max_degree.max(p.total_degree());
        if failure.is_some() {
            return;
        }
        if p.total_degree() > joint {
            failure = Some(Error::Invariant(format!("minor {rows:?} exceeds degree {joint}")));
            return;
        }
        let Some((literal, relabelled)) = factorizers.as_mut() else {
            return;
        };
        let f = match literal.factor(p) {
            Ok(f) => f,
            Err(_) => {
                outside += 1;
                first_outside.get_or_insert_with(|| rows.to_vec());
                match relabelled.factor(p) {
                    Ok(f) => f,
                    Err(e) => {
                        failure = Some(Error::Factorization(format!("minor {rows:?}: {e}")));
                        return;
                    }
                }
            }
        };
        hyperplanes.extend(f.monomial.iter().positions(|&e| e > 0));
        binomials.extend(f.binomial_factors);
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(StrataSummary {
        shape: shape.clone(),
        total,
        zero,
        nonzero: total - zero,
        max_degree,
        components: factorizers.map(|_| Components {
            hyperplanes: hyperplanes.into_iter().collect(),
            binomials: binomials.into_iter().collect(),
            vars: shape.dims().differences,
        }),
        outside_catalog: outside,
        first_outside,
    })
}

pub fn irreducible_components(shape: &GameShape, limits: &StrataLimits) -> Result<Components> {
    let n = shape
        .two_by_n()
        .ok_or_else(|| Error::InvalidShape(format!("{shape} is not a (2 x n) shape")))?;
    if n > limits.max_n {
        return Err(Error::LimitExceeded(format!("n = {n} > {}", limits.max_n)));
    }
    Ok(analyze_strata(shape, limits)?
        .components
        .expect("components computed for (2 x n)"))
}
