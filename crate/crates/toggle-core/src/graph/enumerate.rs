//! Exhaustive and random graph generation for the verification suites.

use rand::Rng;

use crate::bits::Weights;
use crate::graph::Graph;

/// Canonical form of a small graph: the upper-triangle adjacency bits packed
/// into a `u64` (pair (0,1) is the most significant bit), maximized over all
/// vertex permutations.  Two graphs get the same code iff they are
/// isomorphic.  Supports up to 11 vertices.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= 11, "canonical_code packs at most 55 pair bits");
    let total_bits = n * (n - 1) / 2;
    let mut search = CodeSearch {
        g,
        best: 0,
        total_bits,
        perm: Vec::with_capacity(n),
        used: 0u16,
    };
    search.place(0, 0);
    search.best
}

struct CodeSearch<'a> {
    g: &'a Graph,
    best: u64,
    total_bits: usize,
    /// `perm[p]` = original vertex placed at position `p`.
    perm: Vec<usize>,
    used: u16,
}

impl CodeSearch<'_> {
    /// Extends the permutation one position at a time.  `acc` holds the
    /// `filled` already-determined bits, right-aligned; a branch dies as soon
    /// as its prefix drops below the best code's prefix.
    fn place(&mut self, acc: u64, filled: usize) {
        let n = self.g.vertex_count();
        let pos = self.perm.len();
        if pos == n {
            if acc > self.best {
                self.best = acc;
            }
            return;
        }
        for v in 0..n {
            if self.used & (1 << v) != 0 {
                continue;
            }
            let mut acc2 = acc;
            for p in 0..pos {
                acc2 = (acc2 << 1) | u64::from(self.g.has_edge(self.perm[p], v));
            }
            let filled2 = filled + pos;
            if filled2 > 0 && acc2 < self.best >> (self.total_bits - filled2) {
                continue;
            }
            self.perm.push(v);
            self.used |= 1 << v;
            self.place(acc2, filled2);
            self.used &= !(1 << v);
            self.perm.pop();
        }
    }
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices with maximum degree at most `max_deg`.
///
/// Works by vertex augmentation: every connected graph has a vertex whose
/// removal leaves it connected (take a leaf of any spanning tree), and
/// removing a vertex never raises a degree, so each class on `s` vertices
/// arises from some class on `s - 1` vertices by attaching one new vertex.
/// Duplicates are collapsed through [`canonical_code`].
pub fn connected_graphs(n: usize, max_deg: usize) -> Vec<Graph> {
    assert!((1..=11).contains(&n));
    let mut layer = vec![Graph::new(1, &[]).expect("K1")];
    for size in 2..=n {
        let mut codes = std::collections::HashSet::new();
        let mut next = Vec::new();
        for g in &layer {
            let old = size - 1;
            let attachable: Vec<usize> = (0..old).filter(|&v| g.degree(v) < max_deg).collect();
            for subset in 1u32..(1 << attachable.len()) {
                if (subset.count_ones() as usize) > max_deg {
                    continue;
                }
                let mut edges = g.edges();
                for (i, &v) in attachable.iter().enumerate() {
                    if subset & (1 << i) != 0 {
                        edges.push((v, old));
                    }
                }
                let candidate = Graph::new(size, &edges).expect("augmented graph is simple");
                if codes.insert(canonical_code(&candidate)) {
                    next.push(candidate);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Erdos-Renyi style graph: each pair becomes an edge with probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("sampled pairs are distinct")
}

/// Random graph conditioned on connectivity (rejection sampling with a
/// spanning-tree fallback so it always terminates).
pub fn random_connected_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    for _ in 0..64 {
        let g = random_graph(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
    // Dense fallback: a random spanning tree plus the sampled edges.
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let g = random_graph(n, p, rng);
    for (u, v) in g.edges() {
        if !edges.contains(&(u, v)) && !edges.contains(&(v, u)) {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).expect("fallback edges are deduplicated")
}

pub fn random_weights(n: usize, rng: &mut impl Rng) -> Weights {
    let mut w = Weights::zeros(n);
    for v in 0..n {
        w.set(v, rng.gen_bool(0.5));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    #[test]
    fn canonical_code_is_invariant_under_relabeling() {
        let g = path(5).unwrap();
        let relabeled = Graph::new(5, &[(2, 4), (4, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_code(&g), canonical_code(&relabeled));
        assert_ne!(canonical_code(&g), canonical_code(&cycle(5).unwrap()));
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(connected_graphs(1, 3).len(), 1);
        assert_eq!(connected_graphs(2, 3).len(), 1);
        assert_eq!(connected_graphs(3, 3).len(), 2); // path, triangle
                                                     // By hand: P4, the claw, C4, triangle+pendant, K4 minus an edge, K4.
        assert_eq!(connected_graphs(4, 3).len(), 6);
    }

    #[test]
    fn augmentation_agrees_with_brute_force_on_four_vertices() {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut brute = std::collections::HashSet::new();
        for mask in 0u32..64 {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(4, &edges).unwrap();
            if g.is_connected() && g.max_degree() <= 3 {
                brute.insert(canonical_code(&g));
            }
        }
        let enumerated: std::collections::HashSet<u64> =
            connected_graphs(4, 3).iter().map(canonical_code).collect();
        assert_eq!(brute, enumerated);
    }
}
