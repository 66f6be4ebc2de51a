//! Maximal minors of the symbolic `A(Y)`.
//!
//! A maximal minor picks `D` rows. Identity rows pin their columns, so the
//! minor is a signed square minor of the incentive block on the remaining
//! columns. Those are expanded by Laplace along the sparsest row, memoized on
//! `(row set, column set)` since the same subdeterminants recur across
//! minors.

use std::collections::HashMap;

use itertools::Itertools;

use super::{SymbolicPolynomial, StrataLimits};
use crate::cone::{RowLabel, SymbolicMatrix};
use crate::error::{Error, Result};

/// One maximal minor: row indices of `A(Y)` (ascending) and its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub polynomial: SymbolicPolynomial,
}

enum Entry {
    Variable { var: usize, sign: i64 },
    General(SymbolicPolynomial),
}

impl Entry {
    fn new(p: &SymbolicPolynomial) -> Self {
        if let [(m, c)] = p.terms() {
            let degree: u16 = m.iter().sum();
            if degree == 1 {
                let var = m.iter().position(|&e| e == 1).expect("degree one");
                return Entry::Variable { var, sign: *c };
            }
        }
        Entry::General(p.clone())
    }

    fn times(&self, p: &SymbolicPolynomial) -> SymbolicPolynomial {
        match self {
            Entry::Variable { var, sign } => p.mul_variable(*var, *sign),
            Entry::General(e) => e.mul(p),
        }
    }
}

/// Determinants of square submatrices of the incentive block.
pub(crate) struct Expander {
    vars: usize,
    rows: Vec<Vec<(usize, Entry)>>,
    support: Vec<u32>,
    /// Rows sharing a support, as (row mask, column mask). More rows than
    /// available columns from one group force a zero determinant.
    groups: Vec<(u64, u32)>,
    memo: HashMap<(u64, u32), SymbolicPolynomial>,
}

impl Expander {
    pub(crate) fn new(m: &SymbolicMatrix) -> Result<Self> {
        let dims = m.shape().dims();
        if dims.incentive > 64 || dims.joint > 32 {
            return Err(Error::LimitExceeded(format!(
                "shape {} exceeds the 64 incentive rows / 32 columns of the expander",
                m.shape()
            )));
        }
        let vars = dims.differences;
        let mut rows = Vec::with_capacity(dims.incentive);
        let mut support = Vec::with_capacity(dims.incentive);
        let mut groups: Vec<((usize, usize), u64, u32)> = Vec::new();
        for (r, row) in m.rows()[..dims.incentive].iter().enumerate() {
            let entries: Vec<(usize, Entry)> = row
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(c, p)| (c, Entry::new(p)))
                .collect();
            let mask = entries.iter().fold(0u32, |acc, (c, _)| acc | 1 << c);
            if let RowLabel::Incentive { player, k, .. } = m.labels()[r] {
                match groups.iter_mut().find(|(key, _, _)| *key == (player, k)) {
                    Some(g) => g.1 |= 1 << r,
                    None => groups.push(((player, k), 1 << r, mask)),
                }
            }
            rows.push(entries);
            support.push(mask);
        }
        Ok(Self {
            vars,
            rows,
            support,
            groups: groups.into_iter().map(|(_, r, c)| (r, c)).collect(),
            memo: HashMap::new(),
        })
    }

    fn forced_zero(&self, rows: u64, cols: u32) -> bool {
        self.groups
            .iter()
            .any(|&(g, s)| (rows & g).count_ones() > (cols & s).count_ones())
    }

    pub(crate) fn det(&mut self, rows: u64, cols: u32) -> SymbolicPolynomial {
        debug_assert_eq!(rows.count_ones(), cols.count_ones());
        if rows == 0 {
            return SymbolicPolynomial::one(self.vars);
        }
        if self.forced_zero(rows, cols) {
            return SymbolicPolynomial::zero(self.vars);
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let pivot = ones(rows)
            .min_by_key(|&r| (self.support[r] & cols).count_ones())
            .expect("nonempty row set");
        let row_pos = (rows & ((1u64 << pivot) - 1)).count_ones();
        let mut total = SymbolicPolynomial::zero(self.vars);
        for idx in 0..self.rows[pivot].len() {
            let col = self.rows[pivot][idx].0;
            if cols & (1 << col) == 0 {
                continue;
            }
            let sub = self.det(rows & !(1 << pivot), cols & !(1 << col));
            if sub.is_zero() {
                continue;
            }
            let col_pos = (cols & ((1u32 << col) - 1)).count_ones();
            let term = self.rows[pivot][idx].1.times(&sub);
            total = if (row_pos + col_pos).is_multiple_of(2) {
                total.add(&term)
            } else {
                total.sub(&term)
            };
        }
        self.memo.insert((rows, cols), total.clone());
        total
    }
}

fn ones(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask & (1 << i) != 0)
}

/// Number of maximal minors, `binom(D + N, D)`.
pub fn minor_count(m: &SymbolicMatrix) -> u128 {
    let dims = m.shape().dims();
    let n = (dims.joint + dims.incentive) as u128;
    let k = dims.joint as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Calls `f` on every maximal minor in lexicographic order of row sets.
pub fn for_each_maximal_minor(
    m: &SymbolicMatrix,
    limits: &StrataLimits,
    mut f: impl FnMut(&[usize], &SymbolicPolynomial),
) -> Result<()> {
    let dims = m.shape().dims();
    if dims.joint > limits.max_joint {
        return Err(Error::LimitExceeded(format!(
            "shape {} has D = {} > {}",
            m.shape(),
            dims.joint,
            limits.max_joint
        )));
    }
    let mut expander = Expander::new(m)?;
    let n = dims.incentive;
    let all_cols: u32 = if dims.joint == 32 { u32::MAX } else { (1 << dims.joint) - 1 };
    for h in (0..n + dims.joint).combinations(dims.joint) {
        let mut rows = 0u64;
        let mut pinned = 0u32;
        for &r in &h {
            if r < n {
                rows |= 1 << r;
            } else {
                pinned |= 1 << (r - n);
            }
        }
        let cols = all_cols & !pinned;
        // Moving the free columns in front of the pinned ones.
        let shift: u32 = (0..dims.joint as u32)
            .filter(|&c| cols & (1 << c) != 0)
            .enumerate()
            .map(|(j, c)| c - j as u32)
            .sum();
        let det = expander.det(rows, cols);
        let det = if shift.is_multiple_of(2) { det } else { det.neg() };
        f(&h, &det);
    }
    Ok(())
}

pub fn maximal_minors(m: &SymbolicMatrix, limits: &StrataLimits) -> Result<Vec<Minor>> {
    let mut out = Vec::new();
    for_each_maximal_minor(m, limits, |rows, p| {
        out.push(Minor {
            rows: rows.to_vec(),
            polynomial: p.clone(),
        })
    })?;
    Ok(out)
}
