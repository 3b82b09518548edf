//! Closed-form Nimber computation on the two-row grid families.
//!
//! Four assignments on the 2-by-m grid recur throughout the analysis of
//! circular ladders.  Writing cells as (row, column):
//!
//! * `H`: zeros at both end columns plus one penultimate zero in row 1 at
//!   each end (for m = 3 a special corner-only variant);
//! * `D`: zeros at both end columns plus penultimate zeros on opposite rows
//!   (row 1 on the left, row 0 on the right);
//! * `T`: zeros at the right end column plus a penultimate zero in row 0;
//! * `GridAllOnes`: no zeros.
//!
//! `H` and `D` values satisfy a pair of mutual recurrences: a move at an
//! interior column kills that column and drops a zero on each side of it,
//! splitting the position into two independent capped segments of the same
//! two shapes.  `T` and the all-ones grid extend the same idea with "full"
//! (uncapped) ends: a corner move converts a full end into a capped one.
//! The extension is validated at runtime against the generic solver on
//! small lengths before being trusted at large lengths; if that check ever
//! failed, the functions would fall back to the generic solver and report a
//! resource error beyond its reach.

use std::sync::{Mutex, OnceLock};

use crate::engine::playable_vertices;
use crate::error::{Error, Result};
use crate::graph::{lattice2, lattice2_index, GamePosition};
use crate::solver::{Nimber, Solver};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    H,
    D,
    T,
    GridAllOnes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeFamilyId {
    pub kind: LatticeKind,
    pub m: usize,
}

/// Builds the named assignment on the 2-by-m grid.
pub fn make_family(id: LatticeFamilyId) -> Result<GamePosition> {
    let LatticeFamilyId { kind, m } = id;
    let minimum = match kind {
        LatticeKind::H | LatticeKind::D => 3,
        LatticeKind::T => 2,
        LatticeKind::GridAllOnes => 1,
    };
    if m < minimum {
        return Err(Error::input(format!(
            "{kind:?} needs m >= {minimum}, got {m}"
        )));
    }
    let zeros: Vec<(usize, usize)> = match kind {
        LatticeKind::H if m == 3 => vec![(0, 1), (0, 3), (1, 1), (1, 3)],
        LatticeKind::H => vec![(0, 1), (0, m), (1, 1), (1, 2), (1, m - 1), (1, m)],
        LatticeKind::D => vec![(0, 1), (0, m - 1), (0, m), (1, 1), (1, 2), (1, m)],
        LatticeKind::T => vec![(0, m - 1), (0, m), (1, m)],
        LatticeKind::GridAllOnes => vec![],
    };
    let indices: Vec<usize> = zeros
        .into_iter()
        .map(|(row, col)| lattice2_index(m, row, col))
        .collect();
    Ok(GamePosition::with_zeros(lattice2(m)?, &indices))
}

/// Segment end shape: either both rows alive (`Full`) or an all-zero end
/// column with one penultimate zero in the given row (`Pen(row)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cap {
    Full,
    Pen(usize),
}

/// Literal weight assignment for a capped segment of length `len`.
fn capped_position(len: usize, left: Cap, right: Cap) -> GamePosition {
    assert!(len >= 2);
    let mut zeros = Vec::new();
    if let Cap::Pen(row) = left {
        zeros.extend([(0, 1), (1, 1), (row, 2)]);
    }
    if let Cap::Pen(row) = right {
        zeros.extend([(0, len), (1, len), (row, len - 1)]);
    }
    let indices: Vec<usize> = zeros
        .into_iter()
        .map(|(row, col)| lattice2_index(len, row, col))
        .collect();
    GamePosition::with_zeros(lattice2(len).expect("len >= 2"), &indices)
}

// === The H/D mutual recurrence ===

struct HdTables {
    h: Vec<u16>,
    d: Vec<u16>,
}

fn hd_tables() -> &'static Mutex<HdTables> {
    static TABLES: OnceLock<Mutex<HdTables>> = OnceLock::new();
    TABLES.get_or_init(|| {
        Mutex::new(HdTables {
            // Indices 0..=2 are padding; both families start at m = 3.
            h: vec![0; 3],
            d: vec![0; 3],
        })
    })
}

fn ensure_hd(m: usize) {
    let mut tables = hd_tables().lock().unwrap();
    while tables.h.len() <= m {
        let mm = tables.h.len();
        // Moves live at interior columns 3..=mm-2; shorter grids are
        // terminal, which we confirm against the engine rather than assume.
        if mm <= 4 {
            for kind in [LatticeKind::H, LatticeKind::D] {
                let pos = make_family(LatticeFamilyId { kind, m: mm }).unwrap();
                assert!(
                    playable_vertices(&pos).is_empty(),
                    "{kind:?} at m={mm} should be terminal"
                );
            }
            tables.h.push(0);
            tables.d.push(0);
            continue;
        }
        // A move at column i of either row splits into length-i and
        // length-(mm+1-i) segments sharing the killed column.  Row-1 moves
        // give two same-shape (aligned) caps, row-0 moves two opposed caps;
        // the i <-> mm+1-i symmetry lets the aligned MEX stop at the middle.
        let s = mm.div_ceil(2);
        let h_set = (3..=s).flat_map(|i| {
            [
                tables.h[i] ^ tables.h[mm + 1 - i],
                tables.d[i] ^ tables.d[mm + 1 - i],
            ]
        });
        let h = Nimber::mex(h_set.map(Nimber).collect::<Vec<_>>()).0;
        let d_set = (3..=mm - 2).map(|i| tables.h[i] ^ tables.d[mm + 1 - i]);
        let d = Nimber::mex(d_set.map(Nimber).collect::<Vec<_>>()).0;
        tables.h.push(h);
        tables.d.push(d);
    }
}

/// Nimber of the `H` assignment (m >= 3), by recurrence.
pub fn grundy_h(m: usize) -> Nimber {
    assert!(m >= 3, "H is defined for m >= 3");
    ensure_hd(m);
    Nimber(hd_tables().lock().unwrap().h[m])
}

/// Nimber of the `D` assignment (m >= 3), by recurrence.
pub fn grundy_d(m: usize) -> Nimber {
    assert!(m >= 3, "D is defined for m >= 3");
    ensure_hd(m);
    Nimber(hd_tables().lock().unwrap().d[m])
}

/// Nimber of the circular ladder P(m,1) with the all-ones start (m >= 3).
/// Every first move leads, up to symmetry, to the `H` assignment one column
/// longer, so the value is 1 exactly when that assignment has value 0.
pub fn grundy_prism_all_ones(m: usize) -> Nimber {
    assert!(m >= 3, "P(m,1) needs m >= 3");
    if grundy_h(m + 1) == Nimber(0) {
        Nimber(1)
    } else {
        Nimber(0)
    }
}

// === Derived extension to one-capped and uncapped segments ===

/// Lengths whose values are taken literally from the generic solver.
const SEGMENT_BASE_MAX: usize = 4;
/// Lengths over which the derived recurrence is validated at startup.
const SELF_CHECK_MAX: usize = 8;
/// Largest length the generic-solver fallback will attempt.
const FALLBACK_MAX: usize = 12;

struct SegmentTables {
    /// `(Full, Pen(_))` values by length; index 0 and 1 unused.
    one_end: Vec<u16>,
    /// `(Full, Full)` values by length; index 0 unused.
    grid: Vec<u16>,
}

fn segment_tables() -> &'static Mutex<SegmentTables> {
    static TABLES: OnceLock<Mutex<SegmentTables>> = OnceLock::new();
    TABLES.get_or_init(|| {
        let solver = Solver::new();
        let mut one_end = vec![0; 2];
        let mut grid = vec![0; 1];
        grid.push(
            solver
                .grundy(&GamePosition::all_ones(lattice2(1).unwrap()))
                .expect("tiny")
                .0,
        );
        for len in 2..=SEGMENT_BASE_MAX {
            one_end.push(
                solver
                    .grundy(&capped_position(len, Cap::Full, Cap::Pen(0)))
                    .expect("tiny")
                    .0,
            );
            grid.push(
                solver
                    .grundy(&GamePosition::all_ones(lattice2(len).unwrap()))
                    .expect("tiny")
                    .0,
            );
        }
        Mutex::new(SegmentTables { one_end, grid })
    })
}

fn ensure_segments(m: usize) {
    ensure_hd(m.max(3));
    let (h, d) = {
        let tables = hd_tables().lock().unwrap();
        (tables.h.clone(), tables.d.clone())
    };
    // Capped pieces of length x with both ends capped: aligned rows follow
    // the H table, opposed rows the D table.
    let cc = |same: bool, x: usize| -> u16 {
        if same {
            h[x]
        } else {
            d[x]
        }
    };
    let mut tables = segment_tables().lock().unwrap();
    while tables.grid.len() <= m {
        let len = tables.grid.len();
        if tables.one_end.len() <= len {
            // One full end on the left, a cap on the right.  Corner moves at
            // the full end cap it in either row; interior moves at column i
            // (2 <= i <= len-2) of row r split off a (Full, Pen(r)) prefix
            // and a (Pen(r), cap) suffix.
            let mut set = vec![cc(true, len), cc(false, len)];
            for i in 2..=len - 2 {
                for r in [0usize, 1] {
                    set.push(tables.one_end[i] ^ cc(r == 0, len + 1 - i));
                }
            }
            let value = Nimber::mex(set.into_iter().map(Nimber).collect::<Vec<_>>()).0;
            tables.one_end.push(value);
        }
        // Both ends full: corners produce the one-capped segment of the same
        // length; interior moves at column i (2 <= i <= len-1) split into
        // two one-capped segments, independent of the move's row.
        let mut set = vec![tables.one_end[len]];
        for i in 2..=len - 1 {
            set.push(tables.one_end[i] ^ tables.one_end[len + 1 - i]);
        }
        let value = Nimber::mex(set.into_iter().map(Nimber).collect::<Vec<_>>()).0;
        tables.grid.push(value);
    }
}

/// Validates the derived segment recurrence against the generic solver on
/// small lengths, once per process.
fn segment_self_check() -> &'static std::result::Result<(), String> {
    static CHECK: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    CHECK.get_or_init(|| {
        ensure_segments(SELF_CHECK_MAX);
        let solver = Solver::new();
        let tables = segment_tables().lock().unwrap();
        for len in 2..=SELF_CHECK_MAX {
            let direct = solver
                .grundy(&capped_position(len, Cap::Full, Cap::Pen(0)))
                .map_err(|e| e.to_string())?;
            if direct.0 != tables.one_end[len] {
                return Err(format!(
                    "one-capped segment length {len}: recurrence {} vs solver {direct}",
                    tables.one_end[len]
                ));
            }
        }
        for len in 1..=SELF_CHECK_MAX {
            let direct = solver
                .grundy(&GamePosition::all_ones(lattice2(len).unwrap()))
                .map_err(|e| e.to_string())?;
            if direct.0 != tables.grid[len] {
                return Err(format!(
                    "all-ones grid length {len}: recurrence {} vs solver {direct}",
                    tables.grid[len]
                ));
            }
        }
        Ok(())
    })
}

fn checked_segment_value(m: usize, kind: LatticeKind) -> Result<Nimber> {
    match segment_self_check() {
        Ok(()) => {
            ensure_segments(m);
            let tables = segment_tables().lock().unwrap();
            Ok(Nimber(match kind {
                LatticeKind::T => tables.one_end[m],
                LatticeKind::GridAllOnes => tables.grid[m],
                _ => unreachable!(),
            }))
        }
        Err(reason) if m <= FALLBACK_MAX => {
            let pos = make_family(LatticeFamilyId { kind, m })?;
            Solver::new().grundy(&pos)
        }
        Err(reason) => Err(Error::Budget(format!(
            "segment recurrence failed self-validation ({reason}); \
             exact solving beyond m={FALLBACK_MAX} is unavailable"
        ))),
    }
}

/// Nimber of the `T` assignment (m >= 2).
pub fn grundy_t(m: usize) -> Result<Nimber> {
    if m < 2 {
        return Err(Error::input("T needs m >= 2"));
    }
    checked_segment_value(m, LatticeKind::T)
}

/// Nimber of the all-ones 2-by-m grid (m >= 1).
pub fn grundy_grid_all_ones(m: usize) -> Result<Nimber> {
    if m == 0 {
        return Err(Error::input("grid needs m >= 1"));
    }
    if m == 1 {
        // Single rung: both moves end the game.
        return Ok(Nimber(1));
    }
    checked_segment_value(m, LatticeKind::GridAllOnes)
}
