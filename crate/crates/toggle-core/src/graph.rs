//! Simple undirected graphs, 0/1 weight assignments and game positions.
//!
//! Vertices are `0..n`.  The constructors reject self-loops and duplicate
//! edges, so every `Graph` is a simple graph.  Each graph precomputes, per
//! vertex, the packed closed/open neighborhood masks and the playability
//! threshold used by the engine.

use std::collections::HashSet;
use std::sync::Arc;

use crate::bits::Weights;
use crate::error::{Error, Result};

pub mod enumerate;
pub mod format;

#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
    closed_masks: Vec<Weights>,
    open_masks: Vec<Weights>,
    /// Smallest closed-neighborhood weight sum that makes the vertex
    /// playable: a move at `v` needs `sigma(v) > |N[v]| / 2`.
    min_sigma: Vec<usize>,
    edge_count: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.adj == other.adj && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::input(format!("duplicate edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph::from_adjacency(adj, seen.len()))
    }

    fn from_adjacency(adj: Vec<Vec<usize>>, edge_count: usize) -> Graph {
        let n = adj.len();
        let mut closed_masks = Vec::with_capacity(n);
        let mut open_masks = Vec::with_capacity(n);
        let mut min_sigma = Vec::with_capacity(n);
        for (v, nbrs) in adj.iter().enumerate() {
            let mut open = Weights::zeros(n);
            for &u in nbrs {
                open.set(u, true);
            }
            let mut closed = open.clone();
            closed.set(v, true);
            // 2 * sigma > deg + 1  <=>  sigma >= floor((deg + 1) / 2) + 1
            min_sigma.push(nbrs.len().div_ceil(2) + 1);
            open_masks.push(open);
            closed_masks.push(closed);
        }
        Graph {
            labels: vec![None; n],
            adj,
            closed_masks,
            open_masks,
            min_sigma,
            edge_count,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Closed neighborhood `N[v]` as a packed mask (includes `v`).
    pub fn closed_mask(&self, v: usize) -> &Weights {
        &self.closed_masks[v]
    }

    /// Open neighborhood `N(v)` as a packed mask (excludes `v`).
    pub fn open_mask(&self, v: usize) -> &Weights {
        &self.open_masks[v]
    }

    pub(crate) fn min_sigma(&self, v: usize) -> usize {
        self.min_sigma[v]
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::input(format!("label index {v} out of range")));
        }
        self.labels[v] = Some(label.into());
        Ok(())
    }

    pub fn labels(&self) -> impl Iterator<Item = (usize, &str)> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.as_deref().map(|s| (i, s)))
    }

    /// True when both graphs have the same vertex count and edge set,
    /// ignoring labels.
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }

    /// Connected components; each component lists its vertices in ascending
    /// order and components are ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.connected_components().len() == 1
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.  Labels are carried over.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in vertices.iter().enumerate() {
            index[old] = new;
        }
        let mut edges = Vec::new();
        for (new_u, &old_u) in vertices.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                let new_v = index[old_v];
                if new_v != usize::MAX && new_u < new_v {
                    edges.push((new_u, new_v));
                }
            }
        }
        let mut g = Graph::new(vertices.len(), &edges).expect("induced subgraph is simple");
        for (new, &old) in vertices.iter().enumerate() {
            if let Some(l) = &self.labels[old] {
                g.labels[new] = Some(l.clone());
            }
        }
        g
    }
}

// === Named constructors ===

/// Path on `n` vertices: edges `i - (i+1)`.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("path needs at least 1 vertex"));
    }
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input("cycle needs at least 3 vertices"));
    }
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Graph::new(n, &edges)
}

/// The 2-by-m grid (two paths of length m joined by m rungs).
///
/// Index convention: row-major with row 0 first, so cell `(row, col)` with
/// `row` in `{0, 1}` and `col` in `1..=m` sits at `row * m + (col - 1)`.
/// Use [`lattice2_index`] instead of repeating that arithmetic.
pub fn lattice2(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::input("lattice2 needs at least 1 column"));
    }
    let mut edges = Vec::new();
    for row in 0..2 {
        for col in 1..m {
            edges.push((lattice2_index(m, row, col), lattice2_index(m, row, col + 1)));
        }
    }
    for col in 1..=m {
        edges.push((lattice2_index(m, 0, col), lattice2_index(m, 1, col)));
    }
    Graph::new(2 * m, &edges)
}

/// Index of lattice cell `(row, col)`, `row` in `{0, 1}`, `col` in `1..=m`.
pub fn lattice2_index(m: usize, row: usize, col: usize) -> usize {
    debug_assert!(row < 2 && (1..=m).contains(&col));
    row * m + (col - 1)
}

/// Generalized Petersen graph `P(m, k)`: an outer m-cycle, an inner
/// distance-k star polygon (doubled chords collapse to a single edge), and m
/// spokes.
///
/// Index convention: outer block first (outer vertex `j` at `j - 1` for `j`
/// in `1..=m`), then the inner block (inner vertex `j` at `m + j - 1`).  Use
/// [`petersen_outer_index`] / [`petersen_inner_index`].
pub fn petersen(m: usize, k: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::input("petersen needs m >= 3"));
    }
    if k == 0 || k >= m {
        return Err(Error::input(format!(
            "petersen skip k must satisfy 1 <= k < m, got k={k}, m={m}"
        )));
    }
    let mut edges = Vec::new();
    let mut inner_seen = HashSet::new();
    for j in 1..=m {
        let next = j % m + 1;
        edges.push((petersen_outer_index(m, j), petersen_outer_index(m, next)));
        edges.push((petersen_outer_index(m, j), petersen_inner_index(m, j)));
        let chord_to = (j - 1 + k) % m + 1;
        let a = petersen_inner_index(m, j);
        let b = petersen_inner_index(m, chord_to);
        let key = (a.min(b), a.max(b));
        if inner_seen.insert(key) {
            edges.push(key);
        }
    }
    let mut g = Graph::new(2 * m, &edges)?;
    for j in 1..=m {
        g.labels[petersen_outer_index(m, j)] = Some(format!("v1_{j}"));
        g.labels[petersen_inner_index(m, j)] = Some(format!("v0_{j}"));
    }
    Ok(g)
}

/// Index of outer vertex `j` (`1..=m`) of `P(m, k)`.
pub fn petersen_outer_index(_m: usize, j: usize) -> usize {
    j - 1
}

/// Index of inner vertex `j` (`1..=m`) of `P(m, k)`.
pub fn petersen_inner_index(m: usize, j: usize) -> usize {
    m + j - 1
}

/// Disjoint union; vertices of `b` are shifted by `a.vertex_count()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let offset = a.vertex_count();
    let mut edges = a.edges();
    edges.extend(b.edges().into_iter().map(|(u, v)| (u + offset, v + offset)));
    let mut g = Graph::new(offset + b.vertex_count(), &edges).expect("unions stay simple");
    for (i, l) in a.labels().chain(b.labels().map(|(i, l)| (i + offset, l))) {
        g.labels[i] = Some(l.to_string());
    }
    g
}

/// Selector for the basic one-parameter families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicKind {
    Path,
    Cycle,
    Lattice2,
}

pub fn build_basic(kind: BasicKind, n: usize) -> Result<Graph> {
    match kind {
        BasicKind::Path => path(n),
        BasicKind::Cycle => cycle(n),
        BasicKind::Lattice2 => lattice2(n),
    }
}

// === Positions ===

/// A game position: a graph plus a 0/1 weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GamePosition {
    pub graph: Arc<Graph>,
    pub weights: Weights,
}

impl GamePosition {
    pub fn new(graph: Arc<Graph>, weights: Weights) -> Result<GamePosition> {
        if weights.len() != graph.vertex_count() {
            return Err(Error::input(format!(
                "weight vector has {} bits but the graph has {} vertices",
                weights.len(),
                graph.vertex_count()
            )));
        }
        Ok(GamePosition { graph, weights })
    }

    pub fn all_ones(graph: impl Into<Arc<Graph>>) -> GamePosition {
        let graph = graph.into();
        let weights = Weights::all_ones(graph.vertex_count());
        GamePosition { graph, weights }
    }

    pub fn all_zeros(graph: impl Into<Arc<Graph>>) -> GamePosition {
        let graph = graph.into();
        let weights = Weights::zeros(graph.vertex_count());
        GamePosition { graph, weights }
    }

    /// All-ones start with the listed vertices set to zero.
    pub fn with_zeros(graph: impl Into<Arc<Graph>>, zero_vertices: &[usize]) -> GamePosition {
        let graph = graph.into();
        let mut weights = Weights::all_ones(graph.vertex_count());
        for &v in zero_vertices {
            weights.set(v, false);
        }
        GamePosition { graph, weights }
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn total_weight(&self) -> usize {
        self.weights.count_ones()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_reject_non_simple_input() {
        assert!(Graph::new(3, &[(0, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn petersen_skip_one_is_the_lattice_plus_wrap_edges() {
        for m in 3..=50 {
            let p = petersen(m, 1).unwrap();
            let l = lattice2(m).unwrap();
            let mut expected = l.edges();
            expected.push((lattice2_index(m, 0, 1), lattice2_index(m, 0, m)));
            expected.push((lattice2_index(m, 1, 1), lattice2_index(m, 1, m)));
            expected.sort_unstable();
            assert_eq!(p.edges(), expected, "m = {m}");
        }
    }

    #[test]
    fn doubled_chords_collapse_to_single_edges() {
        // In P(2k, k) each inner chord is hit from both ends; the graph
        // stays simple with a perfect matching inside.
        let g = petersen(6, 3).unwrap();
        assert_eq!(g.edges().len(), 6 + 6 + 3);
        for j in 1..=3 {
            assert!(g.has_edge(petersen_inner_index(6, j), petersen_inner_index(6, j + 3)));
        }
    }
}
