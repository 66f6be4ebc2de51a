//! Sparse multivariate polynomials with integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::DifferenceVector;
use crate::Rational;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u16>;

/// Polynomial in a fixed number of variables.
///
/// Terms are kept sorted ascending in lexicographic order of their exponent
/// vectors (variable 0 most significant) and never carry a zero coefficient,
/// so structural equality is polynomial equality. The leading term is the
/// last one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicPolynomial {
    vars: usize,
    terms: Vec<(Monomial, i64)>,
}

impl SymbolicPolynomial {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: usize, c: i64) -> Self {
        let mut p = Self::zero(vars);
        if c != 0 {
            p.terms.push((vec![0; vars], c));
        }
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, 1)
    }

    /// `sign * x_index`.
    pub fn variable(vars: usize, index: usize, sign: i64) -> Self {
        let mut exps = vec![0; vars];
        exps[index] = 1;
        Self {
            vars,
            terms: vec![(exps, sign)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let mut map: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), vars);
            *map.entry(m).or_insert(0) += c;
        }
        Self {
            vars,
            terms: map.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &[(Monomial, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&(Monomial, i64)> {
        self.terms.last()
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    Ordering::Less => {
                        out.push((ma.clone(), *ca));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((mb.clone(), sign * cb));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = ca + sign * cb;
                        if c != 0 {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((m, c)), None) => {
                    out.push((m.clone(), *c));
                    a.next();
                }
                (None, Some((m, c))) => {
                    out.push((m.clone(), sign * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self {
            vars: self.vars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars);
        }
        let products = self.terms.iter().flat_map(|(ma, ca)| {
            other.terms.iter().map(move |(mb, cb)| {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let c = ca
                    .checked_mul(*cb)
                    .expect("polynomial coefficient overflow");
                (m, c)
            })
        });
        Self::from_terms(self.vars, products)
    }

    /// Product with `sign * x_var`. Shifting every exponent by the same unit
    /// vector keeps the lexicographic term order.
    pub fn mul_variable(&self, var: usize, sign: i64) -> Self {
        Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m[var] += 1;
                    (m, sign * c)
                })
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead_m, lead_c) = divisor.leading()?.clone();
        let mut rem = self.clone();
        let mut quotient: Vec<(Monomial, i64)> = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            if c % lead_c != 0 || m.iter().zip(&lead_m).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(&lead_m).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let term = Self {
                vars: self.vars,
                terms: vec![(qm.clone(), qc)],
            };
            rem = rem.sub(&term.mul(divisor));
            quotient.push((qm, qc));
        }
        Some(Self::from_terms(self.vars, quotient))
    }

    /// Gcd of the coefficients, signed like the leading coefficient.
    pub fn content(&self) -> i64 {
        let g = self.terms.iter().fold(0i64, |acc, (_, c)| acc.gcd(c));
        match self.leading() {
            Some((_, c)) if *c < 0 => -g,
            _ => g,
        }
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn monomial_content(&self) -> Monomial {
        let mut out = match self.terms.first() {
            Some((m, _)) => m.clone(),
            None => return vec![0; self.vars],
        };
        for (m, _) in &self.terms[1..] {
            for (o, e) in out.iter_mut().zip(m) {
                *o = (*o).min(*e);
            }
        }
        out
    }

    /// Divides every term by `coefficient * x^monomial`; both must divide exactly.
    pub fn divide_term(&self, monomial: &[u16], coefficient: i64) -> Self {
        Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.iter().zip(monomial).map(|(a, b)| a - b).collect();
                    debug_assert_eq!(c % coefficient, 0);
                    (e, c / coefficient)
                })
                .collect(),
        }
    }

    /// Representative of `{p, -p}` with a positive leading coefficient.
    pub fn normalized_sign(&self) -> Self {
        match self.leading() {
            Some((_, c)) if *c < 0 => self.neg(),
            _ => self.clone(),
        }
    }

    /// Exact value at a point given as one rational per variable.
    pub fn evaluate_at(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars {
            return Err(Error::ShapeMismatch(format!(
                "polynomial has {} variables, point has {}",
                self.vars,
                point.len()
            )));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = Rational::from_integer((*c).into());
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Exact value at a difference vector of matching variable count.
    pub fn evaluate(&self, y: &DifferenceVector) -> Result<Rational> {
        self.evaluate_at(y.entries())
    }

    /// Sign of the value at an integer point, computed in `i128`.
    pub fn sign_at_integers(&self, point: &[i64]) -> i8 {
        let mut total: i128 = 0;
        for (m, c) in &self.terms {
            let mut term = *c as i128;
            for (&x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    term *= x as i128;
                }
            }
            total += term;
        }
        total.signum() as i8
    }

    /// Renders with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Pretty { poly: self, names }
    }

    pub fn to_dump(&self) -> PolynomialDump {
        PolynomialDump {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermDump {
                    exponents: m.clone(),
                    coeff: *c,
                })
                .collect(),
        }
    }

    pub fn from_dump(vars: usize, dump: &PolynomialDump) -> Result<Self> {
        if let Some(t) = dump.terms.iter().find(|t| t.exponents.len() != vars) {
            return Err(Error::ShapeMismatch(format!(
                "term has {} exponents, expected {vars}",
                t.exponents.len()
            )));
        }
        Ok(Self::from_terms(
            vars,
            dump.terms.iter().map(|t| (t.exponents.clone(), t.coeff)),
        ))
    }
}

struct Pretty<'a> {
    poly: &'a SymbolicPolynomial,
    names: &'a [String],
}

impl fmt::Display for Pretty<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = self.names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let magnitude = c.abs();
            let body = match (factors.is_empty(), magnitude) {
                (true, _) => magnitude.to_string(),
                (false, 1) => factors.join("*"),
                (false, _) => format!("{magnitude}*{}", factors.join("*")),
            };
            match (idx, *c < 0) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// JSON form of one term: `{"exponents": [...], "coeff": c}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDump {
    pub exponents: Vec<u16>,
    pub coeff: i64,
}

/// JSON form of a polynomial: `{"terms": [...]}`, leading term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDump {
    pub terms: Vec<TermDump>,
}
