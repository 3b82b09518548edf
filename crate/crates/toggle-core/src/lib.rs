//! Combinatorial game engine for Toggle, a two-player Lights-Out variant on
//! simple graphs.
//!
//! A position is a graph with a 0/1 weight on each vertex.  A move picks a
//! weight-1 vertex whose closed-neighborhood weight sum strictly drops when
//! the whole closed neighborhood is flipped, flips it, and play alternates;
//! the player with no legal move loses.  The crate provides:
//!
//! * the move rule and exhaustive playability checkers ([`engine`]),
//! * a memoized Sprague-Grundy solver ([`solver`]),
//! * closed-form value computations for two-row grid families and
//!   generalized Petersen graphs ([`lattice`], [`petersen`]),
//! * the link between path-like positions and a take-and-break heap game
//!   ([`heaps`]),
//! * a reduction from quantified Boolean formulas to Toggle positions
//!   ([`qbf`]).

pub mod bits;
pub mod engine;
pub mod error;
pub mod graph;
pub mod heaps;
pub mod lattice;
pub mod petersen;
pub mod qbf;
pub mod solver;

pub use bits::Weights;
pub use error::{Error, Result};
pub use graph::{GamePosition, Graph};
pub use solver::{Nimber, Solver, Winner};
