//! Exact dense linear algebra over the integers and rationals.
//!
//! Everything here is fraction-free (Bareiss) on `BigInt`; rational inputs
//! are scaled row by row to primitive integer vectors first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Scales a rational row to the primitive integer row with the same direction.
pub fn primitive_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    normalize(&mut out);
    out
}

/// Divides an integer vector by the gcd of its entries.
pub fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Rank of an integer matrix given as rows.
pub fn rank<R: AsRef<[BigInt]>>(rows: &[R]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.as_ref().to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            let factor = m[r][col].clone();
            for c in col..cols {
                let v = &pivot * &m[r][c] - &factor * &m[rank][c];
                m[r][c] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Determinant of a square integer matrix (Bareiss).
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a square rational matrix.
pub fn determinant_rational(matrix: &[Vec<Rational>]) -> Rational {
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let out = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            scale *= lcm;
            out
        })
        .collect();
    Rational::new(determinant(&rows), scale)
}

/// Solves a square system exactly; `None` when the matrix is singular.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = matrix.len();
    let mut m: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for c in col..=n {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Dimension of the affine hull of a nonempty point set; `None` when empty.
pub fn affine_dimension<P: AsRef<[Rational]>>(points: &[P]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let base = first.as_ref();
    let diffs: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|p| {
            let d: Vec<Rational> = p.as_ref().iter().zip(base).map(|(a, b)| a - b).collect();
            primitive_row(&d)
        })
        .collect();
    Some(rank(&diffs))
}

pub fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&ints(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(
            determinant(&ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])),
            BigInt::from(-5)
        );
        assert_eq!(determinant(&ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn determinant_matches_permutation_expansion() {
        let m = ints(&[&[3, -1, 4, 1], &[5, 9, -2, 6], &[5, 3, 5, -8], &[9, 7, 9, 3]]);
        let mut total = BigInt::zero();
        for perm in itertools::Itertools::permutations(0..4usize, 4) {
            let inversions = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let term: BigInt = (0..4).map(|i| m[i][perm[i]].clone()).product();
            if inversions % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        assert_eq!(determinant(&m), total);
    }

    #[test]
    fn rank_cases() {
        assert_eq!(rank(&ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 0]])), 1);
        assert_eq!(rank(&ints(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])), 2);
        assert_eq!(rank::<Vec<BigInt>>(&[]), 0);
    }

    #[test]
    fn solve_and_primitive() {
        let m = vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(-1, 1)]];
        let x = solve(&m, &[q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 2), q(1, 2)]);
        assert!(solve(&[vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]], &[q(0, 1), q(0, 1)]).is_none());
        assert_eq!(
            primitive_row(&[q(1, 2), q(-3, 4), q(0, 1)]),
            vec![BigInt::from(2), BigInt::from(-3), BigInt::zero()]
        );
        assert_eq!(
            determinant_rational(&[vec![q(1, 2), q(0, 1)], vec![q(0, 1), q(2, 3)]]),
            q(1, 3)
        );
    }
}
