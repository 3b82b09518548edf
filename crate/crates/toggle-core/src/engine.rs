//! The move rule, replay utilities, and exhaustive playability checkers.
//!
//! A move at `v` is legal when `v` has weight 1 and flipping every weight in
//! the closed neighborhood `N[v]` strictly decreases the closed-neighborhood
//! sum at `v`.  Writing `sigma` for that sum, the flipped sum is
//! `|N[v]| - sigma`, so legality is the arithmetic condition
//! `2 * sigma > deg(v) + 1`.  Every legal move strictly lowers the total
//! weight of the position, which bounds any play sequence by the vertex
//! count.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::bits::Weights;
use crate::error::{Error, Result};
use crate::graph::{GamePosition, Graph};

/// Closed-neighborhood weight sum at `v`.
pub fn sigma(pos: &GamePosition, v: usize) -> Result<usize> {
    check_vertex(pos, v)?;
    Ok(pos.weights.and_count(pos.graph.closed_mask(v)))
}

/// Whether a move at `v` is legal in `pos`.
pub fn is_playable(pos: &GamePosition, v: usize) -> Result<bool> {
    check_vertex(pos, v)?;
    Ok(playable_unchecked(&pos.graph, &pos.weights, v))
}

pub(crate) fn playable_unchecked(graph: &Graph, weights: &Weights, v: usize) -> bool {
    let result = weights.get(v) && weights.and_count(graph.closed_mask(v)) >= graph.min_sigma(v);
    // Equivalent formulation on the open neighborhood: at least
    // ceil(deg / 2) of the neighbors must carry weight 1.
    debug_assert_eq!(
        result,
        weights.get(v) && weights.and_count(graph.open_mask(v)) >= graph.degree(v).div_ceil(2),
        "legality formulations disagree at vertex {v}"
    );
    result
}

/// Legal moves in ascending vertex order.
pub fn playable_vertices(pos: &GamePosition) -> Vec<usize> {
    playable_mask(&pos.graph, &pos.weights)
        .iter_ones()
        .collect()
}

pub(crate) fn playable_mask(graph: &Graph, weights: &Weights) -> Weights {
    let mut mask = Weights::zeros(graph.vertex_count());
    for v in weights.iter_ones() {
        if playable_unchecked(graph, weights, v) {
            mask.set(v, true);
        }
    }
    mask
}

/// Applies a legal move at `v`, flipping every weight in `N[v]`.
pub fn apply_move(pos: &GamePosition, v: usize) -> Result<GamePosition> {
    check_vertex(pos, v)?;
    if !playable_unchecked(&pos.graph, &pos.weights, v) {
        let s = pos.weights.and_count(pos.graph.closed_mask(v));
        let after = pos.graph.degree(v) + 1 - s;
        let reason = if pos.weights.get(v) {
            format!("sigma would go {s} -> {after}, not a strict decrease")
        } else {
            format!("vertex has weight 0 (sigma {s})")
        };
        return Err(Error::IllegalMove { vertex: v, reason });
    }
    let weights = pos.weights.xor(pos.graph.closed_mask(v));
    debug_assert!(weights.count_ones() < pos.weights.count_ones());
    Ok(GamePosition {
        graph: pos.graph.clone(),
        weights,
    })
}

/// A replayed sequence: `positions[t + 1]` results from `moves[t]`.
#[derive(Clone, Debug)]
pub struct MoveTrace {
    pub positions: Vec<GamePosition>,
    pub moves: Vec<usize>,
}

impl MoveTrace {
    pub fn final_position(&self) -> &GamePosition {
        self.positions.last().expect("trace holds the start")
    }
}

/// Applies `moves` in order, failing at the first illegal move with its
/// stage number.
pub fn replay(pos: &GamePosition, moves: &[usize]) -> Result<MoveTrace> {
    let mut positions = vec![pos.clone()];
    for (stage, &v) in moves.iter().enumerate() {
        let next = apply_move(positions.last().unwrap(), v).map_err(|e| match e {
            Error::IllegalMove { vertex, reason } => Error::IllegalMove {
                vertex,
                reason: format!("at stage {}: {reason}", stage + 1),
            },
            other => other,
        })?;
        positions.push(next);
    }
    Ok(MoveTrace {
        positions,
        moves: moves.to_vec(),
    })
}

/// A play sequence demonstrating a playability violation: after replaying
/// `moves`, `vertex` is playable even though the property says it must not
/// be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayabilityWitness {
    pub moves: Vec<usize>,
    pub vertex: usize,
}

/// Result of an exhaustive playability check.  For
/// [`check_unplayability_monotone`], `monotone` means no vertex ever regains
/// playability after a stage where it was unplayable; for
/// [`check_neighborhood_sealing`] it means no vertex is playable after a
/// move inside its closed neighborhood.  The witness, present exactly when
/// the property fails, is a minimal-length counterexample.
#[derive(Clone, Debug)]
pub struct PlayabilityReport {
    pub monotone: bool,
    pub witness: Option<PlayabilityWitness>,
    pub states_visited: usize,
}

/// Checks whether unplayability is monotone along every legal play from
/// `pos`: once a vertex is unplayable at some stage of a sequence, it stays
/// unplayable at all later stages of that sequence.  `state_budget` caps the
/// number of distinct explored states.
pub fn check_unplayability_monotone(
    pos: &GamePosition,
    state_budget: usize,
) -> Result<PlayabilityReport> {
    explore(pos, state_budget, CheckKind::Monotone)
}

/// Checks the stronger property that holds on zero-free starts with maximum
/// degree three: once any move is made at a vertex of `N[v]`, vertex `v` is
/// never playable at any later stage.
pub fn check_neighborhood_sealing(
    pos: &GamePosition,
    state_budget: usize,
) -> Result<PlayabilityReport> {
    explore(pos, state_budget, CheckKind::Sealing)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CheckKind {
    Monotone,
    Sealing,
}

/// Breadth-first search over (weights, accumulator) pairs.  The accumulator
/// tracks vertices the property forbids from being playable: previously
/// unplayable vertices for the monotone check, sealed closed neighborhoods
/// for the sealing check.  FIFO order with ascending moves makes the first
/// violation a minimal-length witness.
/// A search state: current weights plus the forbidden-vertex accumulator.
type Key = (Weights, Weights);

fn explore(pos: &GamePosition, state_budget: usize, kind: CheckKind) -> Result<PlayabilityReport> {
    let graph: &Graph = &pos.graph;
    let n = graph.vertex_count();

    let root: Key = (pos.weights.clone(), Weights::zeros(n));
    let mut parents: HashMap<Key, Option<(Key, usize)>> = HashMap::new();
    parents.insert(root.clone(), None);
    let mut queue: VecDeque<Key> = VecDeque::new();
    queue.push_back(root);

    while let Some(key) = queue.pop_front() {
        let (weights, forbidden) = &key;
        let playable = playable_mask(graph, weights);
        if let Some(vertex) = playable.first_common(forbidden) {
            let moves = unwind(&parents, &key);
            return Ok(PlayabilityReport {
                monotone: false,
                witness: Some(PlayabilityWitness { moves, vertex }),
                states_visited: parents.len(),
            });
        }
        let base = match kind {
            CheckKind::Monotone => {
                // Everything unplayable right now must stay unplayable.
                let mut acc = playable.clone();
                acc.flip_all();
                acc.or_in_place(forbidden);
                acc
            }
            CheckKind::Sealing => forbidden.clone(),
        };
        for u in playable.iter_ones() {
            let mut acc = base.clone();
            if kind == CheckKind::Sealing {
                acc.or_in_place(graph.closed_mask(u));
            }
            let next: Key = (weights.xor(graph.closed_mask(u)), acc);
            if let Entry::Vacant(slot) = parents.entry(next.clone()) {
                slot.insert(Some((key.clone(), u)));
                queue.push_back(next);
            }
        }
        if parents.len() > state_budget {
            return Err(Error::Budget(format!(
                "playability check exceeded {state_budget} states"
            )));
        }
    }
    Ok(PlayabilityReport {
        monotone: true,
        witness: None,
        states_visited: parents.len(),
    })
}

fn unwind(parents: &HashMap<Key, Option<(Key, usize)>>, end: &Key) -> Vec<usize> {
    let mut moves = Vec::new();
    let mut cursor = end;
    while let Some((prev, mv)) = parents.get(cursor).and_then(Option::as_ref) {
        moves.push(*mv);
        cursor = prev;
    }
    moves.reverse();
    moves
}

fn check_vertex(pos: &GamePosition, v: usize) -> Result<()> {
    if v >= pos.vertex_count() {
        return Err(Error::input(format!(
            "vertex {v} out of range (graph has {} vertices)",
            pos.vertex_count()
        )));
    }
    Ok(())
}
