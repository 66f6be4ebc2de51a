//! Vertex enumeration by exhaustive basis selection.
//!
//! Every vertex is the unique solution of `sum(p) = 1` together with `D - 1`
//! tight inequalities. All such subsystems are solved and the feasible
//! solutions kept. Exponential in the number of rows; used as an oracle.

use itertools::Itertools;

use super::{HRep, VRep};
use crate::linalg;
use crate::Rational;

pub fn brute_force_vertices(h: &HRep) -> VRep {
    let dim = h.dim();
    let one = Rational::from_integer(1.into());
    let mut rhs = vec![Rational::from_integer(0.into()); dim];
    rhs[dim - 1] = one.clone();
    let mut found = Vec::new();
    for subset in (0..h.rows().len()).combinations(dim - 1) {
        let mut system: Vec<Vec<Rational>> = subset.iter().map(|&r| h.rows()[r].clone()).collect();
        system.push(vec![one.clone(); dim]);
        if let Some(p) = linalg::solve(&system, &rhs) {
            if h.contains(&p) {
                found.push(p);
            }
        }
    }
    VRep::new(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::enumerate_vertices;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn agrees_with_double_description_on_a_small_cut() {
        let h = HRep::with_incentives(
            3,
            vec![
                vec![q(1, 1), q(-2, 1), q(0, 1)],
                vec![q(0, 1), q(1, 1), q(-1, 3)],
            ],
        );
        assert_eq!(brute_force_vertices(&h), enumerate_vertices(&h));
    }
}
