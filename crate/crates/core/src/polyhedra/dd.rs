//! Double description on the homogenized cone `{p : A p >= 0}`.
//!
//! The nonnegativity rows are inserted first, so the initial cone is the
//! orthant with the unit vectors as extreme rays. Remaining rows are added
//! one at a time; new rays come from adjacent pairs on opposite sides of the
//! inserted hyperplane, adjacency being decided by the rank criterion
//! `rank(A_{Z(r) ∩ Z(s)}) = D - 2`. Every ray lies in the orthant, so
//! scaling rays to coordinate sum one gives the polytope's vertices.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{HRep, VRep};
use crate::linalg;
use crate::Rational;

struct Ray {
    coords: Vec<BigInt>,
    /// Inserted rows on which the ray is tight.
    zeros: FixedBitSet,
}

pub fn enumerate_vertices(h: &HRep) -> VRep {
    let dim = h.dim();
    let rows = h.integer_rows();
    let unit_rows: Vec<usize> = (0..dim)
        .map(|c| h.unit_row(c).expect("HRep invariant: orthant rows present"))
        .collect();
    let mut unit_column = vec![None; rows.len()];
    for (c, &r) in unit_rows.iter().enumerate() {
        unit_column[r] = Some(c);
    }

    let mut inserted = FixedBitSet::with_capacity(rows.len());
    for &r in &unit_rows {
        inserted.insert(r);
    }
    let mut rays: Vec<Ray> = (0..dim)
        .map(|c| {
            let mut coords = vec![BigInt::zero(); dim];
            coords[c] = BigInt::one();
            let mut zeros = FixedBitSet::with_capacity(rows.len());
            for (k, &r) in unit_rows.iter().enumerate() {
                if k != c {
                    zeros.insert(r);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    let ctx = Adjacency {
        rows: &rows,
        unit_column: &unit_column,
        dim,
    };

    for (r, row) in rows.iter().enumerate() {
        if inserted.contains(r) {
            continue;
        }
        inserted.insert(r);
        if row.iter().all(Zero::is_zero) {
            // Tight everywhere; only the incidence bookkeeping changes.
            for ray in &mut rays {
                ray.zeros.insert(r);
            }
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|ray| linalg::dot(row, &ray.coords)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if negative.is_empty() {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.zeros.insert(r);
                }
            }
            continue;
        }

        let mut created = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if !ctx.adjacent(&common) {
                    continue;
                }
                let mut coords: Vec<BigInt> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xn, xp)| &values[p] * xn - &values[n] * xp)
                    .collect();
                linalg::normalize(&mut coords);
                common.insert(r);
                created.push(Ray {
                    coords,
                    zeros: common,
                });
            }
        }

        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (mut ray, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                ray.zeros.insert(r);
            }
            next.push(ray);
        }
        next.extend(created);
        rays = next;
        if rays.is_empty() {
            break;
        }
    }

    VRep::new(
        rays.into_iter()
            .map(|ray| {
                let total: BigInt = ray.coords.iter().sum();
                ray.coords
                    .into_iter()
                    .map(|x| Rational::new(x, total.clone()))
                    .collect()
            })
            .collect(),
    )
}

struct Adjacency<'a> {
    rows: &'a [Vec<BigInt>],
    unit_column: &'a [Option<usize>],
    dim: usize,
}

impl Adjacency<'_> {
    /// Rank test on the common tight rows. Unit rows pin coordinates to
    /// zero, so they contribute one each and drop their column from the rest.
    fn adjacent(&self, common: &FixedBitSet) -> bool {
        let target = self.dim - 2;
        if common.count_ones(..) < target {
            return false;
        }
        let mut pinned = FixedBitSet::with_capacity(self.dim);
        let mut others = Vec::new();
        for r in common.ones() {
            match self.unit_column[r] {
                Some(c) => pinned.insert(c),
                None => others.push(r),
            }
        }
        let fixed = pinned.count_ones(..);
        if fixed > target {
            return false;
        }
        if fixed == target {
            return true;
        }
        let free: Vec<usize> = (0..self.dim).filter(|&c| !pinned.contains(c)).collect();
        if others.len() < target - fixed {
            return false;
        }
        let reduced: Vec<Vec<BigInt>> = others
            .iter()
            .map(|&r| free.iter().map(|&c| self.rows[r][c].clone()).collect())
            .collect();
        fixed + linalg::rank(&reduced) == target
    }
}
