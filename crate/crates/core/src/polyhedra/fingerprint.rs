//! Canonical labelling of vertex-facet incidence structures.
//!
//! Two polytopes are combinatorially equivalent exactly when their
//! vertex-facet incidence matrices agree up to row and column permutations.
//! The canonical form is the smallest leaf encoding reached by an
//! individualization-refinement search over facet orderings. Vertex order is
//! factored out by sorting the vertex rows of each leaf.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::lattice::face_lattice;

/// Combinatorial type: canonical incidence key plus the derived counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombinatorialType {
    pub dimension: usize,
    pub f_vector: Vec<usize>,
    #[serde(with = "hex")]
    pub canonical_key: Vec<u8>,
}

impl CombinatorialType {
    pub fn key_hex(&self) -> String {
        hex::encode(&self.canonical_key)
    }
}

pub fn combinatorial_fingerprint(
    vertex_count: usize,
    facets: &[FixedBitSet],
    dimension: usize,
) -> CombinatorialType {
    CombinatorialType {
        dimension,
        f_vector: face_lattice(vertex_count, facets).f_vector(),
        canonical_key: canonical_key(vertex_count, facets),
    }
}

/// Canonical byte string of the incidence structure: facet count (u16 BE),
/// vertex count (u32 BE), then the sorted per-vertex facet masks.
pub fn canonical_key(vertex_count: usize, facets: &[FixedBitSet]) -> Vec<u8> {
    let incidence = Incidence::new(vertex_count, facets);
    let mut search = Search {
        inc: &incidence,
        best: None,
        first: None,
        generators: Vec::new(),
    };
    let colors = incidence.refine(vec![0; facets.len()]);
    let mut path = Vec::new();
    search.descend(colors, &mut path);
    let (key, _) = search.best.expect("search reaches at least one leaf");
    key
}

struct Incidence {
    vertex_count: usize,
    facet_vertices: Vec<Vec<usize>>,
    vertex_facets: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(vertex_count: usize, facets: &[FixedBitSet]) -> Self {
        let facet_vertices: Vec<Vec<usize>> = facets.iter().map(|f| f.ones().collect()).collect();
        let mut vertex_facets = vec![Vec::new(); vertex_count];
        for (f, vs) in facet_vertices.iter().enumerate() {
            for &v in vs {
                vertex_facets[v].push(f);
            }
        }
        Self {
            vertex_count,
            facet_vertices,
            vertex_facets,
        }
    }

    fn facet_count(&self) -> usize {
        self.facet_vertices.len()
    }

    /// Equitable refinement of an ordered facet partition, returned as dense
    /// facet colors. Old colors lead every key, so cell order is preserved.
    fn refine(&self, mut facet_colors: Vec<u32>) -> Vec<u32> {
        let mut vertex_colors = vec![0u32; self.vertex_count];
        let mut cells = (usize::MAX, usize::MAX);
        loop {
            vertex_colors = rank_keys(
                (0..self.vertex_count)
                    .map(|v| {
                        let mut around: Vec<u32> =
                            self.vertex_facets[v].iter().map(|&f| facet_colors[f]).collect();
                        around.sort_unstable();
                        (vertex_colors[v], around)
                    })
                    .collect(),
            );
            facet_colors = rank_keys(
                (0..self.facet_count())
                    .map(|f| {
                        let mut around: Vec<u32> =
                            self.facet_vertices[f].iter().map(|&v| vertex_colors[v]).collect();
                        around.sort_unstable();
                        (facet_colors[f], around)
                    })
                    .collect(),
            );
            let now = (distinct(&vertex_colors), distinct(&facet_colors));
            if now == cells {
                return facet_colors;
            }
            cells = now;
        }
    }

    /// Encoding of a discrete facet coloring, where color = position.
    fn encode(&self, positions: &[u32]) -> Vec<u8> {
        let nf = self.facet_count();
        let width = nf.div_ceil(8);
        let mut rows: Vec<Vec<u8>> = (0..self.vertex_count)
            .map(|v| {
                let mut mask = vec![0u8; width];
                for &f in &self.vertex_facets[v] {
                    let p = positions[f] as usize;
                    mask[p / 8] |= 0x80 >> (p % 8);
                }
                mask
            })
            .collect();
        rows.sort_unstable();
        let mut out = Vec::with_capacity(6 + width * self.vertex_count);
        out.extend_from_slice(&(nf as u16).to_be_bytes());
        out.extend_from_slice(&(self.vertex_count as u32).to_be_bytes());
        for row in rows {
            out.extend(row);
        }
        out
    }
}

fn rank_keys(keys: Vec<(u32, Vec<u32>)>) -> Vec<u32> {
    let mut sorted: Vec<&(u32, Vec<u32>)> = keys.iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).expect("key present") as u32)
        .collect()
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&m| m as usize + 1)
}

struct Search<'a> {
    inc: &'a Incidence,
    /// Smallest encoding so far and the facet order that produced it.
    best: Option<(Vec<u8>, Vec<usize>)>,
    first: Option<(Vec<u8>, Vec<usize>)>,
    /// Facet automorphisms found from coinciding leaves.
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) {
        let nf = self.inc.facet_count();
        if distinct(&colors) == nf {
            self.leaf(&colors);
            return;
        }
        let mut counts = vec![0usize; nf];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let target = counts.iter().position(|&n| n > 1).expect("non-discrete") as u32;
        let cell: Vec<usize> = (0..nf).filter(|&f| colors[f] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &x in &cell {
            if !explored.is_empty() && self.equivalent_to_explored(x, &explored, path) {
                continue;
            }
            explored.push(x);
            let child: Vec<u32> = (0..nf)
                .map(|f| 2 * colors[f] + u32::from(colors[f] == target && f != x))
                .collect();
            let child = self.inc.refine(child);
            path.push(x);
            self.descend(child, path);
            path.pop();
        }
    }

    fn leaf(&mut self, positions: &[u32]) {
        let code = self.inc.encode(positions);
        let mut order = vec![0; positions.len()];
        for (f, &p) in positions.iter().enumerate() {
            order[p as usize] = f;
        }
        for known in [&self.first, &self.best].into_iter().flatten() {
            if known.0 == code {
                // Position-wise correspondence maps one leaf onto the other.
                let mut gamma = vec![0; order.len()];
                for (a, b) in known.1.iter().zip(&order) {
                    gamma[*a] = *b;
                }
                if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                    self.generators.push(gamma);
                }
            }
        }
        if self.first.is_none() {
            self.first = Some((code.clone(), order.clone()));
        }
        if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
            self.best = Some((code, order));
        }
    }

    /// Orbit test under the generators that fix the current path pointwise.
    fn equivalent_to_explored(&self, x: usize, explored: &[usize], path: &[usize]) -> bool {
        let nf = self.inc.facet_count();
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        let mut any = false;
        for gamma in &self.generators {
            if path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (a, &b) in gamma.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        if !any {
            return false;
        }
        let rx = find(&mut parent, x);
        explored.iter().any(|&y| find(&mut parent, y) == rx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn sets(n: usize, facets: &[&[usize]]) -> Vec<FixedBitSet> {
        facets
            .iter()
            .map(|items| {
                let mut s = FixedBitSet::with_capacity(n);
                for &i in *items {
                    s.insert(i);
                }
                s
            })
            .collect()
    }

    /// Minimum encoding over every facet ordering.
    fn brute_key(n: usize, facets: &[FixedBitSet]) -> Vec<u8> {
        let inc = Incidence::new(n, facets);
        (0..facets.len())
            .permutations(facets.len())
            .map(|perm| {
                let positions: Vec<u32> = perm.iter().map(|&p| p as u32).collect();
                inc.encode(&positions)
            })
            .min()
            .unwrap()
    }

    fn relabel(n: usize, facets: &[FixedBitSet], vperm: &[usize], fperm: &[usize]) -> Vec<FixedBitSet> {
        let mut out = vec![FixedBitSet::with_capacity(n); facets.len()];
        for (f, s) in facets.iter().enumerate() {
            for v in s.ones() {
                out[fperm[f]].insert(vperm[v]);
            }
        }
        out
    }

    #[test]
    fn cube_is_invariant_under_relabelling() {
        // Vertices as 3-bit words, facets as coordinate = 0/1.
        let cube: Vec<Vec<usize>> = (0..3)
            .flat_map(|b| {
                [0, 1].map(|val| (0..8).filter(|v| (v >> b) & 1 == val).collect::<Vec<_>>())
            })
            .collect();
        let refs: Vec<&[usize]> = cube.iter().map(|v| v.as_slice()).collect();
        let facets = sets(8, &refs);
        let key = canonical_key(8, &facets);
        let moved = relabel(8, &facets, &[3, 7, 0, 5, 1, 6, 2, 4], &[4, 2, 5, 0, 1, 3]);
        assert_eq!(canonical_key(8, &moved), key);
        assert_eq!(brute_key(8, &facets), brute_key(8, &moved));
    }

    #[test]
    fn distinguishes_prism_from_pyramid_with_same_counts() {
        // Square pyramid: 5 vertices, 5 facets. Triangular bipyramid: 5 vertices, 6 facets.
        let pyramid = sets(5, &[&[0, 1, 2, 3], &[0, 1, 4], &[1, 2, 4], &[2, 3, 4], &[3, 0, 4]]);
        let bipyramid = sets(
            5,
            &[&[0, 1, 3], &[1, 2, 3], &[2, 0, 3], &[0, 1, 4], &[1, 2, 4], &[2, 0, 4]],
        );
        assert_ne!(canonical_key(5, &pyramid), canonical_key(5, &bipyramid));
        let f = combinatorial_fingerprint(5, &pyramid, 3);
        assert_eq!(f.f_vector, vec![1, 5, 8, 5, 1]);
        assert_eq!(f.key_hex().len(), 2 * f.canonical_key.len());
    }

    #[test]
    fn point_key() {
        assert_eq!(canonical_key(1, &[]), vec![0, 0, 0, 0, 0, 1]);
    }
}
