//! Memoized Sprague-Grundy evaluation.
//!
//! The value of a position is the MEX of the values of its successors, and
//! the value of a disconnected position is the XOR of its component values.
//! The solver memoizes per component structure: a component is remapped to
//! indices `0..n` (ascending original order) and its positions are keyed by
//! `(structure id, packed weights)`.  No isomorphism reduction is attempted;
//! this keeps the solver simple enough to act as the trusted oracle for the
//! closed-form family calculations.

use std::collections::HashMap;
use std::ops::{BitXor, BitXorAssign};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::bits::Weights;
use crate::engine::playable_unchecked;
use crate::error::{Error, Result};
use crate::graph::{GamePosition, Graph};

/// A Sprague-Grundy value.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Nimber(pub u16);

impl Nimber {
    /// Minimal excluded value: the smallest non-negative integer absent from
    /// `values`.
    pub fn mex(values: impl IntoIterator<Item = Nimber>) -> Nimber {
        let vals: Vec<u16> = values.into_iter().map(|n| n.0).collect();
        // The MEX of k values is at most k, so a k+1 slot table suffices.
        let mut present = vec![false; vals.len() + 1];
        for v in vals {
            if (v as usize) < present.len() {
                present[v as usize] = true;
            }
        }
        Nimber(present.iter().position(|&p| !p).unwrap() as u16)
    }
}

impl BitXor for Nimber {
    type Output = Nimber;
    fn bitxor(self, rhs: Nimber) -> Nimber {
        Nimber(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Nimber {
    fn bitxor_assign(&mut self, rhs: Nimber) {
        self.0 ^= rhs.0;
    }
}

impl std::fmt::Display for Nimber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Winner {
    NextPlayer,
    PreviousPlayer,
}

impl std::fmt::Display for Winner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Winner::NextPlayer => write!(f, "next-player"),
            Winner::PreviousPlayer => write!(f, "previous-player"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct MemoStats {
    pub hits: usize,
    pub misses: usize,
    pub entries: usize,
}

/// Environment variable overriding the default memo-entry budget.
pub const MEMO_LIMIT_ENV: &str = "TOGGLE_MEMO_LIMIT";
pub const DEFAULT_MEMO_LIMIT: usize = 1 << 24;

/// Interns graph structures under equality of adjacency lists (labels are
/// irrelevant to play).
struct GraphKey(Arc<Graph>);

impl PartialEq for GraphKey {
    fn eq(&self, other: &GraphKey) -> bool {
        self.0.same_structure(&other.0)
    }
}

impl Eq for GraphKey {}

impl std::hash::Hash for GraphKey {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.vertex_count().hash(state);
        for v in 0..self.0.vertex_count() {
            self.0.neighbors(v).hash(state);
        }
    }
}

pub struct Solver {
    ids: Mutex<HashMap<GraphKey, u32>>,
    memo: DashMap<(u32, Weights), Nimber>,
    hits: AtomicUsize,
    misses: AtomicUsize,
    entries: AtomicUsize,
    memo_limit: usize,
    decompose: bool,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new()
    }
}

impl Solver {
    /// Solver with the default memo budget (overridable through the
    /// `TOGGLE_MEMO_LIMIT` environment variable).
    pub fn new() -> Solver {
        let limit = std::env::var(MEMO_LIMIT_ENV)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_MEMO_LIMIT);
        Solver::with_memo_limit(limit)
    }

    pub fn with_memo_limit(memo_limit: usize) -> Solver {
        Solver {
            ids: Mutex::new(HashMap::new()),
            memo: DashMap::new(),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            entries: AtomicUsize::new(0),
            memo_limit,
            decompose: true,
        }
    }

    /// Disables XOR decomposition across components; used to cross-check the
    /// union law against direct evaluation.
    pub fn without_decomposition(mut self) -> Solver {
        self.decompose = false;
        self
    }

    pub fn memo_stats(&self) -> MemoStats {
        MemoStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.entries.load(Ordering::Relaxed),
        }
    }

    /// The Sprague-Grundy value of `pos`.
    pub fn grundy(&self, pos: &GamePosition) -> Result<Nimber> {
        if !self.decompose {
            let weights = pos.weights.clone();
            return self.solve_in(&pos.graph, weights);
        }
        let components = pos.graph.connected_components();
        if components.len() <= 1 {
            let weights = pos.weights.clone();
            return self.solve_in(&pos.graph, weights);
        }
        let mut acc = Nimber(0);
        for comp in components {
            let sub = Arc::new(pos.graph.induced(&comp));
            let mut weights = Weights::zeros(comp.len());
            for (new, &old) in comp.iter().enumerate() {
                weights.set(new, pos.weights.get(old));
            }
            acc ^= self.solve_in(&sub, weights)?;
        }
        Ok(acc)
    }

    pub fn winner(&self, pos: &GamePosition) -> Result<Winner> {
        Ok(if self.grundy(pos)? == Nimber(0) {
            Winner::PreviousPlayer
        } else {
            Winner::NextPlayer
        })
    }

    /// Lowest-index playable vertex whose successor has value 0, or `None`
    /// when the position itself has value 0.
    pub fn best_move(&self, pos: &GamePosition) -> Result<Option<usize>> {
        if self.grundy(pos)? == Nimber(0) {
            return Ok(None);
        }
        for v in crate::engine::playable_vertices(pos) {
            let next = crate::engine::apply_move(pos, v)?;
            if self.grundy(&next)? == Nimber(0) {
                return Ok(Some(v));
            }
        }
        unreachable!("a nonzero position has a move to value 0");
    }

    fn solve_in(&self, graph: &Arc<Graph>, weights: Weights) -> Result<Nimber> {
        let id = self.intern(graph);
        self.solve_rec(id, graph, weights)
    }

    fn intern(&self, graph: &Arc<Graph>) -> u32 {
        let mut ids = self.ids.lock().unwrap();
        let next = ids.len() as u32;
        *ids.entry(GraphKey(graph.clone())).or_insert(next)
    }

    fn solve_rec(&self, id: u32, graph: &Graph, weights: Weights) -> Result<Nimber> {
        if weights.is_zero() {
            return Ok(Nimber(0));
        }
        let key = (id, weights);
        if let Some(hit) = self.memo.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(*hit);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let weights = &key.1;
        let mut successors = Vec::new();
        for v in weights.iter_ones() {
            if playable_unchecked(graph, weights, v) {
                successors.push(self.solve_rec(id, graph, weights.xor(graph.closed_mask(v)))?);
            }
        }
        let value = Nimber::mex(successors);
        if self.memo.insert(key, value).is_none()
            && self.entries.fetch_add(1, Ordering::Relaxed) >= self.memo_limit
        {
            let stats = self.memo_stats();
            return Err(Error::Budget(format!(
                "memo table exceeded {} entries (hits {}, misses {})",
                self.memo_limit, stats.hits, stats.misses
            )));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::apply_move;
    use crate::graph::enumerate::{random_graph, random_weights};
    use crate::graph::{disjoint_union, path, Graph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mex_examples() {
        assert_eq!(Nimber::mex([]), Nimber(0));
        assert_eq!(Nimber::mex([Nimber(0), Nimber(1), Nimber(3)]), Nimber(2));
        assert_eq!(Nimber::mex([Nimber(1), Nimber(2)]), Nimber(0));
        assert_eq!(Nimber::mex([Nimber(1), Nimber(1)]), Nimber(0));
    }

    #[test]
    fn trivial_positions() {
        let solver = Solver::new();
        let k1 = Arc::new(Graph::new(1, &[]).unwrap());
        assert_eq!(
            solver.grundy(&GamePosition::all_ones(k1.clone())).unwrap(),
            Nimber(1)
        );
        assert_eq!(
            solver.grundy(&GamePosition::all_zeros(k1.clone())).unwrap(),
            Nimber(0)
        );
        assert_eq!(
            solver.winner(&GamePosition::all_zeros(k1.clone())).unwrap(),
            Winner::PreviousPlayer
        );
        assert_eq!(
            solver
                .best_move(&GamePosition::all_ones(k1.clone()))
                .unwrap(),
            Some(0)
        );
        assert_eq!(
            solver
                .best_move(&GamePosition::all_zeros(k1.clone()))
                .unwrap(),
            None
        );

        // Two independent single-vertex games cancel: 1 xor 1 = 0.
        let pair = disjoint_union(&k1, &k1);
        assert_eq!(
            solver
                .grundy(&GamePosition::all_ones(Arc::new(pair)))
                .unwrap(),
            Nimber(0)
        );

        // Either end of the 2-path kills the whole game; ties break low.
        let p2 = Arc::new(path(2).unwrap());
        assert_eq!(
            solver.best_move(&GamePosition::all_ones(p2)).unwrap(),
            Some(0)
        );
    }

    #[test]
    fn mex_property_on_random_positions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let solver = Solver::new();
        for _ in 0..60 {
            let g = Arc::new(random_graph(7, 0.35, &mut rng));
            let pos = GamePosition::new(g.clone(), random_weights(7, &mut rng)).unwrap();
            let value = solver.grundy(&pos).unwrap();
            let moves = crate::engine::playable_vertices(&pos);
            let successor_values: Vec<Nimber> = moves
                .iter()
                .map(|&v| solver.grundy(&apply_move(&pos, v).unwrap()).unwrap())
                .collect();
            assert_eq!(value, Nimber::mex(successor_values.iter().copied()));
            if value == Nimber(0) {
                assert!(successor_values.iter().all(|&s| s != Nimber(0)));
            }
        }
    }

    #[test]
    fn union_law_matches_undecomposed_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let split = Solver::new();
        let whole = Solver::new().without_decomposition();
        for _ in 0..40 {
            let a = random_graph(5, 0.4, &mut rng);
            let b = random_graph(4, 0.4, &mut rng);
            let u = Arc::new(disjoint_union(&a, &b));
            let pos = GamePosition::new(u.clone(), random_weights(9, &mut rng)).unwrap();
            assert_eq!(split.grundy(&pos).unwrap(), whole.grundy(&pos).unwrap());
        }
    }

    #[test]
    fn best_move_soundness() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let solver = Solver::new();
        for _ in 0..40 {
            let g = Arc::new(random_graph(8, 0.3, &mut rng));
            let pos = GamePosition::new(g, random_weights(8, &mut rng)).unwrap();
            match solver.best_move(&pos).unwrap() {
                Some(v) => {
                    let next = apply_move(&pos, v).unwrap();
                    assert_eq!(solver.grundy(&next).unwrap(), Nimber(0));
                }
                None => assert_eq!(solver.grundy(&pos).unwrap(), Nimber(0)),
            }
        }
    }

    #[test]
    fn memo_budget_reports_stats() {
        let solver = Solver::with_memo_limit(4);
        let pos = GamePosition::all_ones(Arc::new(path(10).unwrap()));
        let err = solver.grundy(&pos).unwrap_err().to_string();
        assert!(err.contains("memo table exceeded"), "{err}");
    }
}
