//! Face lattice from vertex-facet incidences.
//!
//! Nonempty faces of a polytope are the full vertex set and the intersections
//! of facet vertex sets; the empty face is added separately. Dimensions are
//! recovered combinatorially from chain lengths.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: FixedBitSet,
    /// `-1` for the empty face.
    pub dim: isize,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    /// Sorted by dimension, then by vertex set.
    pub faces: Vec<Face>,
    /// `(lower, upper)` index pairs with `dim(upper) = dim(lower) + 1` and
    /// `lower ⊂ upper`.
    pub covers: Vec<(usize, usize)>,
}

impl FaceLattice {
    pub fn dimension(&self) -> isize {
        self.faces.last().map_or(-1, |f| f.dim)
    }

    /// `f_{-1}, f_0, ..., f_d`.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dimension();
        let mut f = vec![0; (d + 2) as usize];
        for face in &self.faces {
            f[(face.dim + 1) as usize] += 1;
        }
        f
    }
}

pub fn face_lattice(vertex_count: usize, facets: &[FixedBitSet]) -> FaceLattice {
    let mut full = FixedBitSet::with_capacity(vertex_count);
    full.insert_range(..);
    let empty = FixedBitSet::with_capacity(vertex_count);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut sets = Vec::new();
    for s in [full, empty] {
        if seen.insert(s.clone()) {
            sets.push(s);
        }
    }
    let mut queue: Vec<FixedBitSet> = Vec::new();
    for f in facets {
        if seen.insert(f.clone()) {
            sets.push(f.clone());
            queue.push(f.clone());
        }
    }
    while let Some(face) = queue.pop() {
        for f in facets {
            let mut meet = face.clone();
            meet.intersect_with(f);
            if seen.insert(meet.clone()) {
                sets.push(meet.clone());
                queue.push(meet);
            }
        }
    }

    // Every facet of a face F is F ∩ f for some facet f of the polytope, so
    // dimensions and covers only need those intersections.
    sets.sort_by_key(|s| s.count_ones(..));
    let index: HashMap<FixedBitSet, usize> =
        sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut dims: Vec<isize> = vec![-1; sets.len()];
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); sets.len()];
    for i in 0..sets.len() {
        if sets[i].is_clear() {
            continue;
        }
        let mut below: Vec<usize> = facets
            .iter()
            .filter_map(|f| {
                let mut meet = sets[i].clone();
                meet.intersect_with(f);
                (meet != sets[i]).then(|| index[&meet])
            })
            .collect();
        below.sort_unstable();
        below.dedup();
        let top = below.iter().map(|&j| dims[j]).max().unwrap_or(-1);
        dims[i] = top + 1;
        below.retain(|&j| dims[j] == top);
        lower[i] = below;
    }

    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by(|&a, &b| {
        dims[a]
            .cmp(&dims[b])
            .then_with(|| sets[a].ones().cmp(sets[b].ones()))
    });
    let mut position = vec![0; sets.len()];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let mut covers: Vec<(usize, usize)> = order
        .iter()
        .flat_map(|&i| lower[i].iter().map(move |&j| (j, i)))
        .map(|(j, i)| (position[j], position[i]))
        .collect();
    covers.sort_unstable();
    let faces = order
        .into_iter()
        .map(|i| Face {
            vertices: sets[i].clone(),
            dim: dims[i],
        })
        .collect();
    FaceLattice { faces, covers }
}

pub fn f_vector(lattice: &FaceLattice) -> Vec<usize> {
    lattice.f_vector()
}

/// Expected top dimension, one 0-face per vertex, the diamond property and
/// the Euler relation `sum_{k=-1}^{d} (-1)^k f_k = 0`.
pub fn check_lattice(lattice: &FaceLattice, dimension: usize) -> Result<()> {
    if lattice.dimension() != dimension as isize {
        return Err(Error::Invariant(format!(
            "face lattice has rank {}, polytope has dimension {dimension}",
            lattice.dimension()
        )));
    }
    let vertices = lattice.faces.iter().filter(|f| f.dim == 0).count();
    let points = lattice.faces.last().map_or(0, |f| f.vertices.count_ones(..));
    if vertices != points {
        return Err(Error::Invariant(format!(
            "{vertices} zero-dimensional faces for {points} vertices"
        )));
    }
    // Diamond property: each interval of length two has exactly two interior faces.
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); lattice.faces.len()];
    for &(lo, hi) in &lattice.covers {
        up[lo].push(hi);
    }
    for (lo, ups) in up.iter().enumerate() {
        let mut paths: HashMap<usize, usize> = HashMap::new();
        for &mid in ups {
            for &hi in &up[mid] {
                *paths.entry(hi).or_insert(0) += 1;
            }
        }
        if let Some((&hi, &n)) = paths.iter().find(|(_, &n)| n != 2) {
            return Err(Error::Invariant(format!(
                "interval between faces {lo} and {hi} has {n} interior faces"
            )));
        }
    }
    let alternating: i64 = lattice
        .f_vector()
        .iter()
        .enumerate()
        .map(|(i, &f)| if i % 2 == 1 { f as i64 } else { -(f as i64) })
        .sum();
    if alternating != 0 {
        return Err(Error::Invariant(format!(
            "Euler relation fails for f-vector {:?}",
            lattice.f_vector()
        )));
    }
    Ok(())
}
