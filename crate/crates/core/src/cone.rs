//! The constraint matrix `A(Y)`: incentive rows `U^(i)_kl` stacked above the
//! identity, in exact rational form or with symbolic entries.

use std::fmt;

use num_traits::{One, Zero};

use crate::game::{DifferenceVector, GameShape};
use crate::strata::SymbolicPolynomial;
use crate::Rational;

/// Label of a row of `A(Y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowLabel {
    /// Incentive row `U^(player)_{k l}`: recommended `k`, deviation `l`.
    Incentive { player: usize, k: usize, l: usize },
    /// Nonnegativity of one coordinate.
    Coordinate(usize),
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Incentive { player, k, l } => {
                write!(f, "U{}_{}{}", player + 1, k + 1, l + 1)
            }
            RowLabel::Coordinate(c) => write!(f, "e{}", c + 1),
        }
    }
}

/// Incentive row labels in matrix order: player ascending, then ordered
/// pairs `(k, l)`, `k != l`, lexicographically.
pub fn incentive_labels(shape: &GameShape) -> Vec<RowLabel> {
    let mut out = Vec::with_capacity(shape.dims().incentive);
    for (player, &d) in shape.strategies().iter().enumerate() {
        for k in 0..d {
            for l in (0..d).filter(|&l| l != k) {
                out.push(RowLabel::Incentive { player, k, l });
            }
        }
    }
    out
}

/// All row labels of `A(Y)`, incentive rows first.
pub fn row_labels(shape: &GameShape) -> Vec<RowLabel> {
    let mut labels = incentive_labels(shape);
    labels.extend((0..shape.dims().joint).map(RowLabel::Coordinate));
    labels
}

/// Columns touched by incentive row `(player, k, ·)` paired with the context
/// index of each, i.e. the profiles whose `player` coordinate equals `k`.
fn support(shape: &GameShape, player: usize, k: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..shape.context_count(player)).map(move |ctx| {
        let col = shape.flat_index(&shape.with_strategy(player, ctx, k));
        (col, ctx)
    })
}

/// Incentive rows `U^(i)_{kl}` with their labels.
pub fn build_u_rows(y: &DifferenceVector) -> Vec<(RowLabel, Vec<Rational>)> {
    let shape = y.shape();
    let joint = shape.dims().joint;
    incentive_labels(shape)
        .into_iter()
        .map(|label| {
            let RowLabel::Incentive { player, k, l } = label else {
                unreachable!()
            };
            let mut row = vec![Rational::zero(); joint];
            for (col, ctx) in support(shape, player, k) {
                row[col] = y.get(player, ctx, k, l);
            }
            (label, row)
        })
        .collect()
}

/// The exact `(D + N) x D` matrix `A(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeMatrix {
    shape: GameShape,
    rows: Vec<Vec<Rational>>,
    labels: Vec<RowLabel>,
}

impl ConeMatrix {
    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn labels(&self) -> &[RowLabel] {
        &self.labels
    }

    pub fn incentive_rows(&self) -> &[Vec<Rational>] {
        &self.rows[..self.shape.dims().incentive]
    }
}

pub fn build_constraint_matrix(y: &DifferenceVector) -> ConeMatrix {
    let joint = y.shape().dims().joint;
    let (mut labels, mut rows): (Vec<_>, Vec<_>) = build_u_rows(y).into_iter().unzip();
    for c in 0..joint {
        let mut row = vec![Rational::zero(); joint];
        row[c] = Rational::one();
        rows.push(row);
        labels.push(RowLabel::Coordinate(c));
    }
    ConeMatrix {
        shape: y.shape().clone(),
        rows,
        labels,
    }
}

/// Row and column permutation putting a `(2 x n)` matrix in block form:
/// columns grouped as `(p_1k, p_2k)` for each `k`, identity rows following
/// the permuted columns. Entry `(r, c)` of the arranged matrix is entry
/// `(row_order[r], column_order[c])` of the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    pub row_order: Vec<usize>,
    pub column_order: Vec<usize>,
}

/// `A(Y)` with one variable per stored payoff difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    shape: GameShape,
    rows: Vec<Vec<SymbolicPolynomial>>,
    labels: Vec<RowLabel>,
    layout: Option<BlockLayout>,
}

impl SymbolicMatrix {
    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<SymbolicPolynomial>] {
        &self.rows
    }

    pub fn labels(&self) -> &[RowLabel] {
        &self.labels
    }

    pub fn layout(&self) -> Option<&BlockLayout> {
        self.layout.as_ref()
    }

    /// The matrix in block order when a layout is recorded, otherwise as stored.
    pub fn arranged(&self) -> Vec<Vec<SymbolicPolynomial>> {
        match &self.layout {
            None => self.rows.clone(),
            Some(layout) => layout
                .row_order
                .iter()
                .map(|&r| {
                    layout
                        .column_order
                        .iter()
                        .map(|&c| self.rows[r][c].clone())
                        .collect()
                })
                .collect(),
        }
    }

    /// Substitutes `y` into every entry.
    pub fn evaluate(&self, y: &DifferenceVector) -> crate::Result<ConeMatrix> {
        if y.shape() != &self.shape {
            return Err(crate::Error::ShapeMismatch(format!(
                "matrix shape {} vs vector shape {}",
                self.shape,
                y.shape()
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(y)).collect())
            .collect::<crate::Result<Vec<Vec<_>>>>()?;
        Ok(ConeMatrix {
            shape: self.shape.clone(),
            rows,
            labels: self.labels.clone(),
        })
    }
}

/// Symbolic `A(Y)`. Rows and columns are stored in the global order; for
/// `(2 x n)` shapes the block arrangement is recorded alongside.
pub fn symbolic_constraint_matrix(shape: &GameShape) -> SymbolicMatrix {
    let dims = shape.dims();
    let vars = dims.differences;
    let labels = row_labels(shape);
    let rows = labels
        .iter()
        .map(|label| {
            let mut row = vec![SymbolicPolynomial::zero(vars); dims.joint];
            match *label {
                RowLabel::Incentive { player, k, l } => {
                    for (col, ctx) in support(shape, player, k) {
                        let (lo, hi, sign) = if k < l { (k, l, 1) } else { (l, k, -1) };
                        let var = shape.variable_index(player, ctx, lo, hi);
                        row[col] = SymbolicPolynomial::variable(vars, var, sign);
                    }
                }
                RowLabel::Coordinate(c) => row[c] = SymbolicPolynomial::one(vars),
            }
            row
        })
        .collect();
    let layout = shape.two_by_n().map(|n| {
        let column_order: Vec<usize> = (0..n).flat_map(|k| [k, n + k]).collect();
        let row_order = (0..dims.incentive)
            .chain(column_order.iter().map(|&c| dims.incentive + c))
            .collect();
        BlockLayout {
            row_order,
            column_order,
        }
    });
    SymbolicMatrix {
        shape: shape.clone(),
        rows,
        labels,
        layout,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Game;
    use crate::linalg;

    fn shape(counts: &[usize]) -> GameShape {
        GameShape::new(counts.to_vec()).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn two_by_two_u_rows() {
        // Y = (a, b, c, e) = (Y1_1, Y1_2, Y2_1, Y2_2)
        let y = DifferenceVector::from_integers(shape(&[2, 2]), &[2, 3, 5, 7]).unwrap();
        let rows: Vec<Vec<Rational>> = build_u_rows(&y).into_iter().map(|(_, r)| r).collect();
        let expect = [
            [2, 3, 0, 0],
            [0, 0, -2, -3],
            [5, 0, 7, 0],
            [0, -5, 0, -7],
        ];
        for (row, want) in rows.iter().zip(expect) {
            assert_eq!(row, &want.map(q).to_vec());
        }
    }

    #[test]
    fn zero_differences_give_zero_rows() {
        let y = DifferenceVector::zeros(shape(&[2, 3]));
        let rows = build_u_rows(&y);
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|(_, r)| r.iter().all(Zero::is_zero)));
    }

    #[test]
    fn two_by_three_has_eight_incentive_rows() {
        let labels = incentive_labels(&shape(&[2, 3]));
        assert_eq!(labels.len(), 8);
        let p2 = labels
            .iter()
            .filter(|l| matches!(l, RowLabel::Incentive { player: 1, .. }))
            .count();
        assert_eq!(p2, 6);
    }

    #[test]
    fn matrix_sizes_and_rank() {
        for (counts, rows, cols) in [(vec![2, 2], 8, 4), (vec![2, 3], 14, 6), (vec![2, 2, 2], 14, 8)] {
            let y = DifferenceVector::zeros(shape(&counts));
            let a = build_constraint_matrix(&y);
            assert_eq!(a.rows().len(), rows);
            assert!(a.rows().iter().all(|r| r.len() == cols));
            let int_rows: Vec<_> = a.rows().iter().map(|r| linalg::primitive_row(r)).collect();
            assert_eq!(linalg::rank(&int_rows), cols);
        }
    }

    #[test]
    fn incentive_rows_reproduce_inequalities() {
        // Traffic Lights: U1_12 . p = -99 p11 + p12, U2_21 . p = 99 p12 - p22.
        let doc = r#"{"strategies":[2,2],"payoffs":[[[-99,1],[0,0]],[[-99,0],[1,0]]]}"#;
        let y = Game::from_json(doc).unwrap().payoff_differences();
        let a = build_constraint_matrix(&y);
        assert_eq!(a.rows()[0], vec![q(-99), q(1), q(0), q(0)]);
        assert_eq!(a.rows()[1], vec![q(0), q(0), q(99), q(-1)]);
        assert_eq!(a.rows()[3], vec![q(0), q(99), q(0), q(-1)]);
    }

    #[test]
    fn arranged_two_by_two_block_form() {
        let m = symbolic_constraint_matrix(&shape(&[2, 2]));
        let names: Vec<String> = shape(&[2, 2]).variables().iter().map(|v| v.to_string()).collect();
        let render: Vec<Vec<String>> = m
            .arranged()
            .iter()
            .map(|r| r.iter().map(|p| p.display_with(&names).to_string()).collect())
            .collect();
        let expect = [
            ["Y1_1(1,2)", "0", "Y1_2(1,2)", "0"],
            ["0", "-Y1_1(1,2)", "0", "-Y1_2(1,2)"],
            ["Y2_1(1,2)", "Y2_2(1,2)", "0", "0"],
            ["0", "0", "-Y2_1(1,2)", "-Y2_2(1,2)"],
            ["1", "0", "0", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
        ];
        for (row, want) in render.iter().zip(expect) {
            assert_eq!(row, &want.map(String::from).to_vec());
        }
    }

    #[test]
    fn arranged_two_by_three_block_form() {
        let s = shape(&[2, 3]);
        let m = symbolic_constraint_matrix(&s);
        let a = m.arranged();
        // Player-2 block k occupies arranged columns 2k, 2k+1 and rows 2 + 2k, 3 + 2k.
        for k in 0..3 {
            for r in [2 + 2 * k, 3 + 2 * k] {
                for (c, entry) in a[r].iter().enumerate() {
                    let inside = c / 2 == k;
                    assert_eq!(!entry.is_zero(), inside, "row {r} col {c}");
                }
            }
        }
        // First two rows alternate between even and odd columns.
        for c in 0..6 {
            assert_eq!(a[0][c].is_zero(), c % 2 == 1);
            assert_eq!(a[1][c].is_zero(), c % 2 == 0);
        }
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(a[8 + i][j].is_constant() && !a[8 + i][j].is_zero(), i == j);
            }
        }
    }

    #[test]
    fn symbolic_evaluation_matches_numeric() {
        let s = shape(&[2, 3]);
        let y = DifferenceVector::from_integers(s.clone(), &[4, -9, 13, 1, 3, 2, -5, -4, 1]).unwrap();
        let sym = symbolic_constraint_matrix(&s);
        assert_eq!(sym.evaluate(&y).unwrap(), build_constraint_matrix(&y));
    }
}
