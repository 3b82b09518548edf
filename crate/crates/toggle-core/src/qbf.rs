//! Compiling quantified 3-CNF formulas into Toggle positions.
//!
//! A 3-QBF instance is a prenex formula `∃β₁ ∀β₂ ∃β₃ … φ` whose matrix φ is a
//! conjunction of three-literal clauses.  Two players alternate assigning
//! β₁, β₂, … and the first player wins exactly when φ comes out true.  This
//! module builds, for any such instance, a Toggle position with the same
//! winner: the first n moves are forced onto pairs of "variable" vertices
//! (picking v0_j assigns βⱼ false, v1_j assigns it true), a short chain of
//! link vertices hands control to the clause side, and then play threads
//! through one controller/clause vertex pair per clause, dying at the first
//! clause the chosen assignment fails to satisfy.
//!
//! The construction is wired through an occurrence index: every literal slot
//! of every clause is one *occurrence*, and each occurrence owns one `d3` pad
//! vertex (spent by the assignment move) and one `sigma1` signal vertex
//! (raised by the assignment move exactly when that literal is satisfied).
//! Everything else is padding that pins down which vertices are playable
//! when.  `verify_equivalence` replays the whole game tree to certify the
//! forced-move structure and compares the Toggle winner against brute-force
//! evaluation of the formula.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::bits::Weights;
use crate::engine;
use crate::error::{Error, Result};
use crate::graph::{format, GamePosition, Graph};
use crate::solver::Solver;

/// Brute-force formula evaluation walks a 2^n quantifier tree.
pub const MAX_EVAL_VARS: usize = 24;

/// Game-tree verification explores every legal play; the variable phase
/// contributes 2^n branches, so keep n small.
pub const MAX_WALK_VARS: usize = 12;

/// Matching cap on clauses for game-tree verification.
pub const MAX_WALK_CLAUSES: usize = 16;

/// Label of the terminal vertex behind the last clause.
pub const END_GAME: &str = "EndGame";

// === Formulas ===

/// One literal: a 1-based variable index plus polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: usize) -> Literal {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn negative(var: usize) -> Literal {
        Literal { var, negated: true }
    }

    /// Reads a signed DIMACS literal (nonzero integer).
    pub fn from_dimacs(code: i64) -> Result<Literal> {
        if code == 0 {
            return Err(Error::input("literal 0 is the clause terminator"));
        }
        Ok(Literal {
            var: code.unsigned_abs() as usize,
            negated: code < 0,
        })
    }

    pub fn to_dimacs(&self) -> i64 {
        let v = self.var as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    /// Truth of the literal under `assignment[var - 1]`.
    pub fn holds_under(&self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A quantified 3-CNF formula.  The quantifier prefix is implied by
/// position: β₁ is existential and quantifiers strictly alternate, so odd
/// variables belong to the first player and even ones to the second.
///
/// Within each clause the literals are kept sorted by variable index;
/// repeats of a variable are allowed and keep their original order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QbfInstance {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl QbfInstance {
    pub fn new(num_vars: usize, mut clauses: Vec<[Literal; 3]>) -> Result<QbfInstance> {
        for clause in &mut clauses {
            for lit in clause.iter() {
                if lit.var == 0 || lit.var > num_vars {
                    return Err(Error::input(format!(
                        "literal {} out of range for {num_vars} variables",
                        lit.to_dimacs()
                    )));
                }
            }
            clause.sort_by_key(|lit| lit.var);
        }
        Ok(QbfInstance { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Same formula with one more (unused) trailing variable.
    pub fn with_extra_var(&self) -> QbfInstance {
        QbfInstance {
            num_vars: self.num_vars + 1,
            clauses: self.clauses.clone(),
        }
    }

    /// Same formula with `clause` appended as the new last clause.
    pub fn with_clause_appended(&self, clause: [Literal; 3]) -> Result<QbfInstance> {
        let mut clauses = self.clauses.clone();
        clauses.push(clause);
        QbfInstance::new(self.num_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&format!("{} ", lit.to_dimacs()));
            }
            out.push_str("0\n");
        }
        out
    }

    /// Uniform random instance: each literal picks a variable in `1..=num_vars`
    /// and a fair-coin polarity, duplicates allowed.
    pub fn random(num_vars: usize, num_clauses: usize, rng: &mut impl Rng) -> QbfInstance {
        assert!(num_vars >= 1, "need at least one variable");
        let clauses = (0..num_clauses)
            .map(|_| {
                let mut clause = [Literal::positive(1); 3];
                for lit in &mut clause {
                    *lit = Literal {
                        var: rng.gen_range(1..=num_vars),
                        negated: rng.gen_bool(0.5),
                    };
                }
                clause
            })
            .collect();
        QbfInstance::new(num_vars, clauses).expect("random literals are in range")
    }
}

/// Parses DIMACS CNF, optionally with QDIMACS quantifier lines.
///
/// Accepted shape: comment lines (`c …`), one `p cnf <vars> <clauses>`
/// header, optional `e`/`a` lines (each a list of variables closed by 0),
/// then clause tokens — three nonzero literals followed by 0, free-form
/// across lines.  Explicit quantifier lines must spell out the strict
/// alternation `e 1`, `a 2`, `e 3`, … covering every variable; anything else
/// is rejected rather than silently repaired, because the game's semantics
/// are defined only for that prefix.
pub fn parse_dimacs(text: &str) -> Result<QbfInstance> {
    let mut header: Option<(usize, usize)> = None;
    // Quantifier bookkeeping: the next variable the prefix must mention.
    let mut quant_next = 1usize;
    let mut quant_seen = false;
    // Clause bookkeeping.
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();
    let mut pending_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(Error::input(format!("line {no}: repeated 'p' header")));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let ["cnf", vars, cls] = fields[..] else {
                return Err(Error::input(format!(
                    "line {no}: header must read 'p cnf <vars> <clauses>'"
                )));
            };
            let vars: usize = vars
                .parse()
                .map_err(|_| Error::input(format!("line {no}: bad variable count '{vars}'")))?;
            let cls: usize = cls
                .parse()
                .map_err(|_| Error::input(format!("line {no}: bad clause count '{cls}'")))?;
            header = Some((vars, cls));
            continue;
        }

        let Some((num_vars, _)) = header else {
            return Err(Error::input(format!(
                "line {no}: expected 'p cnf' header before '{line}'"
            )));
        };

        if line.starts_with('e') || line.starts_with('a') {
            if !pending.is_empty() || !clauses.is_empty() {
                return Err(Error::input(format!(
                    "line {no}: quantifier line after the first clause"
                )));
            }
            quant_seen = true;
            let kind = &line[..1];
            for token in line[1..].split_whitespace() {
                let value: usize = token.parse().map_err(|_| {
                    Error::input(format!("line {no}: bad quantifier token '{token}'"))
                })?;
                if value == 0 {
                    continue; // line terminator
                }
                let expected_kind = if quant_next % 2 == 1 { "e" } else { "a" };
                if value != quant_next || kind != expected_kind {
                    return Err(Error::input(format!(
                        "line {no}: quantifier prefix must alternate starting existential \
                         ('{expected_kind} {quant_next}' expected, found '{kind} {value}')"
                    )));
                }
                quant_next += 1;
            }
            continue;
        }

        // Clause tokens.
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| Error::input(format!("line {no}: bad clause token '{token}'")))?;
            if value == 0 {
                if pending.len() != 3 {
                    return Err(Error::input(format!(
                        "line {no}: clause has {} literals, need exactly 3",
                        pending.len()
                    )));
                }
                clauses.push([pending[0], pending[1], pending[2]]);
                pending.clear();
            } else {
                let lit = Literal::from_dimacs(value)?;
                if lit.var > num_vars {
                    return Err(Error::input(format!(
                        "line {no}: literal {value} out of range for {num_vars} variables"
                    )));
                }
                if pending.is_empty() {
                    pending_line = no;
                }
                if pending.len() == 3 {
                    return Err(Error::input(format!(
                        "line {no}: clause starting on line {pending_line} has more than \
                         3 literals"
                    )));
                }
                pending.push(lit);
            }
        }
    }

    let Some((num_vars, num_clauses)) = header else {
        return Err(Error::input("missing 'p cnf' header"));
    };
    if !pending.is_empty() {
        return Err(Error::input(format!(
            "clause starting on line {pending_line} is not terminated by 0"
        )));
    }
    if quant_seen && quant_next != num_vars + 1 {
        return Err(Error::input(format!(
            "quantifier prefix covers variables 1..{} but the header declares {num_vars}",
            quant_next - 1
        )));
    }
    if clauses.len() != num_clauses {
        return Err(Error::input(format!(
            "header declares {num_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    QbfInstance::new(num_vars, clauses)
}

/// Truth of `∃β₁ ∀β₂ … φ` by exhaustive minimax over the quantifier tree.
/// An empty conjunction is vacuously true.
pub fn evaluate_qbf(inst: &QbfInstance) -> Result<bool> {
    if inst.num_vars > MAX_EVAL_VARS {
        return Err(Error::Budget(format!(
            "{} variables exceed the {MAX_EVAL_VARS}-variable evaluation budget",
            inst.num_vars
        )));
    }
    fn recurse(inst: &QbfInstance, assignment: &mut Vec<bool>) -> bool {
        let depth = assignment.len();
        if depth == inst.num_vars {
            return inst
                .clauses
                .iter()
                .all(|clause| clause.iter().any(|lit| lit.holds_under(assignment)));
        }
        // Odd variables (depth even) are existential, even ones universal.
        let existential = depth.is_multiple_of(2);
        let mut outcome = !existential;
        for choice in [false, true] {
            assignment.push(choice);
            let sub = recurse(inst, assignment);
            assignment.pop();
            if existential {
                outcome |= sub;
            } else {
                outcome &= sub;
            }
        }
        outcome
    }
    Ok(recurse(inst, &mut Vec::with_capacity(inst.num_vars)))
}

// === Occurrence index ===

/// One literal slot of one clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    /// 1-based variable index.
    pub var: usize,
    /// 1-based clause index.
    pub clause: usize,
    pub negated: bool,
    /// Position 0..3 inside the (variable-sorted) clause.
    pub slot: usize,
}

/// Indexes every literal occurrence of a formula two ways: clause-major for
/// the signal vertices (`y1`) and variable-major for the pad vertices
/// (`d3_index`).  Negated and positive occurrences are tracked separately
/// because the False and True variable vertices wire to disjoint halves of
/// each variable's pad block.
pub struct OccurrenceIndex {
    /// All 3m occurrences in clause order; entry k has y1 = k + 1.
    occurrences: Vec<Occurrence>,
    /// `neg_before[z]` = number of negated occurrences with var < z.
    neg_before: Vec<usize>,
    /// `pos_before[z]` = number of positive occurrences with var < z.
    pos_before: Vec<usize>,
    /// Pad index per occurrence, parallel to `occurrences`.
    d3_of: Vec<usize>,
}

impl OccurrenceIndex {
    pub fn new(inst: &QbfInstance) -> OccurrenceIndex {
        let n = inst.num_vars;
        let mut occurrences = Vec::with_capacity(3 * inst.num_clauses());
        for (c, clause) in inst.clauses.iter().enumerate() {
            for (slot, lit) in clause.iter().enumerate() {
                occurrences.push(Occurrence {
                    var: lit.var,
                    clause: c + 1,
                    negated: lit.negated,
                    slot,
                });
            }
        }

        let mut neg_count = vec![0usize; n + 1];
        let mut pos_count = vec![0usize; n + 1];
        for occ in &occurrences {
            if occ.negated {
                neg_count[occ.var] += 1;
            } else {
                pos_count[occ.var] += 1;
            }
        }
        let mut neg_before = vec![0usize; n + 2];
        let mut pos_before = vec![0usize; n + 2];
        for z in 1..=n + 1 {
            neg_before[z] = neg_before[z - 1] + neg_count[z - 1];
            pos_before[z] = pos_before[z - 1] + pos_count[z - 1];
        }

        // Within a variable's block the negated occurrences come first, each
        // polarity half ordered by clause.
        let mut taken_neg = vec![0usize; n + 1];
        let mut taken_pos = vec![0usize; n + 1];
        let d3_of = occurrences
            .iter()
            .map(|occ| {
                let base = neg_before[occ.var] + pos_before[occ.var];
                let negs = neg_count[occ.var];
                if occ.negated {
                    taken_neg[occ.var] += 1;
                    base + taken_neg[occ.var]
                } else {
                    taken_pos[occ.var] += 1;
                    base + negs + taken_pos[occ.var]
                }
            })
            .collect();

        OccurrenceIndex {
            occurrences,
            neg_before,
            pos_before,
            d3_of,
        }
    }

    /// Total occurrence count, always 3·(number of clauses).
    pub fn len(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty()
    }

    pub fn occurrences(&self) -> &[Occurrence] {
        &self.occurrences
    }

    /// Negated occurrences (the literal reads ¬β).
    pub fn c0(&self) -> impl Iterator<Item = &Occurrence> {
        self.occurrences.iter().filter(|o| o.negated)
    }

    /// Positive occurrences.
    pub fn c1(&self) -> impl Iterator<Item = &Occurrence> {
        self.occurrences.iter().filter(|o| !o.negated)
    }

    /// Clause-major rank in 1..=3m: clause j's slots take 3j−2, 3j−1, 3j.
    pub fn y1(&self, occ: &Occurrence) -> usize {
        3 * (occ.clause - 1) + occ.slot + 1
    }

    /// All occurrences of one variable.
    pub fn y2(&self, var: usize) -> impl Iterator<Item = &Occurrence> {
        self.occurrences.iter().filter(move |o| o.var == var)
    }

    /// Number of negated occurrences with variable index < z.
    pub fn c0_before(&self, z: usize) -> usize {
        self.neg_before[z.min(self.neg_before.len() - 1)]
    }

    /// Number of positive occurrences with variable index < z.
    pub fn c1_before(&self, z: usize) -> usize {
        self.pos_before[z.min(self.pos_before.len() - 1)]
    }

    /// Number of occurrences of any polarity with variable index < z.
    pub fn cstar_before(&self, z: usize) -> usize {
        self.c0_before(z) + self.c1_before(z)
    }

    /// Variable-major pad rank in 1..=3m.  Variable j's occurrences occupy
    /// the block after all occurrences of earlier variables, negated ones
    /// first.
    pub fn d3_index(&self, occ_position: usize) -> usize {
        self.d3_of[occ_position]
    }
}

// === Gadget construction ===

/// A compiled Toggle position plus the role directory for its vertices.
#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub position: GamePosition,
    /// Role label ("v0_3", "sigma1_7", "EndGame", …) → vertex index.
    pub index_of_role: HashMap<String, usize>,
    pub num_vars: usize,
    pub num_clauses: usize,
}

impl ReductionArtifact {
    pub fn graph(&self) -> &Graph {
        &self.position.graph
    }

    pub fn vertex_of(&self, role: &str) -> Option<usize> {
        self.index_of_role.get(role).copied()
    }

    /// Text document in the graph exchange format, labels included.
    pub fn to_document(&self) -> String {
        format::serialize(&self.position.graph, Some(&self.position.weights))
    }
}

/// Closed-form vertex count of the gadget.
pub fn expected_vertex_count(num_vars: usize, num_clauses: usize) -> usize {
    let tree = if num_vars % 2 == 1 { 7 } else { 0 };
    4 * num_vars + 28 * num_clauses + 9 + tree
}

/// Closed-form edge count, obtained by summing the sizes of the wiring
/// families in `build_reduction`.
pub fn expected_edge_count(num_vars: usize, num_clauses: usize) -> usize {
    let tree = if num_vars % 2 == 1 { 7 } else { 0 };
    6 * num_vars + 43 * num_clauses + 8 + tree
}

struct GadgetBuilder {
    labels: Vec<String>,
    index_of_role: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    edge_family: HashMap<(usize, usize), &'static str>,
}

impl GadgetBuilder {
    fn new() -> GadgetBuilder {
        GadgetBuilder {
            labels: Vec::new(),
            index_of_role: HashMap::new(),
            edges: Vec::new(),
            edge_family: HashMap::new(),
        }
    }

    fn vertex(&mut self, label: String) -> usize {
        let id = self.labels.len();
        self.index_of_role.insert(label.clone(), id);
        self.labels.push(label);
        id
    }

    fn role(&mut self, kind: &str, i: usize) -> usize {
        self.vertex(format!("{kind}_{i}"))
    }

    fn at(&self, kind: &str, i: usize) -> usize {
        let label = format!("{kind}_{i}");
        *self
            .index_of_role
            .get(&label)
            .unwrap_or_else(|| panic!("gadget builder referenced unknown role {label}"))
    }

    fn edge(&mut self, family: &'static str, u: usize, v: usize) -> Result<()> {
        let key = (u.min(v), u.max(v));
        if let Some(prev) = self.edge_family.insert(key, family) {
            return Err(Error::input(format!(
                "reduction wiring audit: family {family} repeats edge {}–{} first added \
                 by family {prev}",
                self.labels[u], self.labels[v]
            )));
        }
        self.edges.push((u, v));
        Ok(())
    }
}

/// Compiles a formula into its Toggle position.
///
/// Vertex roles: `v0_j`/`v1_j` assign βⱼ false/true; `c1_j` sequences the
/// assignment phase; `lambda_*` hand over to the clause side; `c2_i` admits
/// clause i's check; `chi_i` is playable exactly when clause i is satisfied;
/// `sigma1_k` carries the k-th literal's truth, `sigma2_k` the inter-clause
/// handoff; every `d*` vertex is inert padding that fixes neighbor
/// playability thresholds.  Construction audits that the pad and signal
/// blocks are hit exactly once per occurrence and fails otherwise.
pub fn build_reduction(inst: &QbfInstance) -> Result<ReductionArtifact> {
    let n = inst.num_vars;
    let m = inst.num_clauses();
    if n == 0 {
        return Err(Error::input("reduction needs at least one variable"));
    }
    if m == 0 {
        return Err(Error::input("reduction needs at least one clause"));
    }
    let odd = n % 2 == 1;
    let occ = OccurrenceIndex::new(inst);

    let mut b = GadgetBuilder::new();

    // Vertex layout, assignment side first.
    for j in 1..=n {
        b.role("v0", j);
        b.role("v1", j);
        b.role("c1", j);
        b.role("d5", j);
    }
    for i in 1..=m {
        b.role("chi", i);
        b.role("c2", i);
        b.role("d6", i);
        b.role("d7", i);
        b.role("d13", i);
    }
    for i in 1..=2 * m {
        b.role("d4", i);
    }
    for i in 1..=2 * m {
        b.role("d14", i);
    }
    for i in 1..=3 * m {
        b.role("d3", i);
    }
    for i in 1..=3 * m {
        b.role("sigma1", i);
    }
    for i in 1..=3 * m {
        b.role("sigma2", i);
    }
    for i in 1..=6 * m {
        b.role("d2", i);
    }
    for i in 1..=4 * m {
        b.role("d8", i);
    }
    b.role("d11", 1);
    b.role("d12", 1);
    b.role("d12", 2);
    b.role("d1", 1);
    b.role("d1", 2);
    b.role("d1", 3);
    b.role("lambda", 1);
    b.role("lambda", 2);
    if odd {
        b.role("lambda", 3);
        b.role("d9", 1);
        b.role("d9", 2);
        for i in 1..=4 {
            b.role("d10", i);
        }
    }
    b.vertex(END_GAME.to_string());

    // Link chain: the last assignment move lights lambda_1, whose play
    // never happens — it exists to make lambda_2 playable.
    b.edge("link", b.at("v0", n), b.at("lambda", 1))?;
    b.edge("link", b.at("v1", n), b.at("lambda", 1))?;
    b.edge("link", b.at("lambda", 1), b.at("lambda", 2))?;
    b.edge("link", b.at("lambda", 2), b.at("d11", 1))?;
    b.edge("link", b.at("d11", 1), b.at("d12", 1))?;
    b.edge("link", b.at("d11", 1), b.at("d12", 2))?;
    // With an odd variable count the handoff needs one extra forced move,
    // supplied by lambda_3 and its pads.
    if odd {
        b.edge("tree", b.at("lambda", 2), b.at("lambda", 3))?;
        b.edge("tree", b.at("lambda", 3), b.at("d9", 1))?;
        b.edge("tree", b.at("lambda", 3), b.at("d9", 2))?;
        b.edge("tree", b.at("d9", 1), b.at("d10", 1))?;
        b.edge("tree", b.at("d9", 1), b.at("d10", 2))?;
        b.edge("tree", b.at("d9", 2), b.at("d10", 3))?;
        b.edge("tree", b.at("d9", 2), b.at("d10", 4))?;
        b.edge("tree", b.at("lambda", 3), b.at("c2", 1))?;
    } else {
        b.edge("tree", b.at("lambda", 2), b.at("c2", 1))?;
    }

    for i in 1..=m {
        // Four charged pads lift each clause controller over its playability
        // threshold; the d4 pair pins the pads themselves shut.
        for t in 0..4 {
            let pad = b.at("d8", 4 * (i - 1) + t + 1);
            b.edge("controller pads", b.at("c2", i), pad)?;
            b.edge("controller pads", b.at("d4", 2 * i - 1), pad)?;
            b.edge("controller pads", b.at("d4", 2 * i), pad)?;
        }
        for t in 0..3 {
            let s2 = b.at("sigma2", 3 * (i - 1) + t + 1);
            b.edge("handoff signals", b.at("c2", i), s2)?;
            b.edge("handoff signals", b.at("d6", i), s2)?;
            b.edge("handoff signals", b.at("chi", i), s2)?;
            let s1 = b.at("sigma1", 3 * (i - 1) + t + 1);
            b.edge("literal signals", b.at("d7", i), s1)?;
            b.edge("literal signals", b.at("chi", i), s1)?;
        }
        if i < m {
            b.edge("clause chain", b.at("chi", i), b.at("c2", i + 1))?;
        }
        b.edge("clause tail", b.at("chi", i), b.at("d13", i))?;
        b.edge("clause tail", b.at("d13", i), b.at("d14", 2 * i - 1))?;
        b.edge("clause tail", b.at("d13", i), b.at("d14", 2 * i))?;
    }
    let end = *b
        .index_of_role
        .get(END_GAME)
        .expect("EndGame vertex was laid out");
    b.edge("clause chain", b.at("chi", m), end)?;

    // Assignment side.
    b.edge("order pads", b.at("c1", 1), b.at("d1", 1))?;
    b.edge("order pads", b.at("c1", 1), b.at("d1", 2))?;
    b.edge("order pads", b.at("c1", 1), b.at("d1", 3))?;
    for j in 1..=n {
        b.edge("assignment", b.at("c1", j), b.at("v0", j))?;
        b.edge("assignment", b.at("c1", j), b.at("v1", j))?;
        b.edge("assignment", b.at("c1", j), b.at("d5", j))?;
        b.edge("assignment", b.at("v0", j), b.at("v1", j))?;
        if j < n {
            b.edge("assignment chain", b.at("v0", j), b.at("c1", j + 1))?;
            b.edge("assignment chain", b.at("v1", j), b.at("c1", j + 1))?;
        }
    }

    // Occurrence wiring: each occurrence spends one d3 pad (variable-major
    // block order) and raises one sigma1 signal (clause-major order), both
    // from the vertex whose assignment satisfies the literal.
    let mut d3_hits = vec![0usize; 3 * m + 1];
    let mut sigma1_hits = vec![0usize; 3 * m + 1];
    for (k, o) in occ.occurrences().iter().enumerate() {
        let literal_vertex = if o.negated {
            b.at("v0", o.var)
        } else {
            b.at("v1", o.var)
        };
        let d3 = occ.d3_index(k);
        d3_hits[d3] += 1;
        b.edge("occurrence pads", literal_vertex, b.at("d3", d3))?;
        let y1 = occ.y1(o);
        sigma1_hits[y1] += 1;
        b.edge("occurrence signals", literal_vertex, b.at("sigma1", y1))?;
    }
    for i in 1..=3 * m {
        if d3_hits[i] != 1 {
            return Err(Error::input(format!(
                "reduction wiring audit: occurrence pads family hit d3_{i} {} times \
                 (want exactly 1)",
                d3_hits[i]
            )));
        }
        if sigma1_hits[i] != 1 {
            return Err(Error::input(format!(
                "reduction wiring audit: occurrence signals family hit sigma1_{i} {} \
                 times (want exactly 1)",
                sigma1_hits[i]
            )));
        }
    }
    for i in 1..=3 * m {
        b.edge("pad anchors", b.at("d3", i), b.at("d2", 2 * i - 1))?;
        b.edge("pad anchors", b.at("d3", i), b.at("d2", 2 * i))?;
    }

    let vertex_count = b.labels.len();
    if vertex_count != expected_vertex_count(n, m) {
        return Err(Error::input(format!(
            "reduction layout audit: built {vertex_count} vertices, closed form says {}",
            expected_vertex_count(n, m)
        )));
    }
    if b.edges.len() != expected_edge_count(n, m) {
        return Err(Error::input(format!(
            "reduction layout audit: built {} edges, closed form says {}",
            b.edges.len(),
            expected_edge_count(n, m)
        )));
    }

    let mut graph = Graph::new(vertex_count, &b.edges)?;
    for (i, label) in b.labels.iter().enumerate() {
        graph.set_label(i, label.clone())?;
    }

    // Initial charge: variable vertices, occurrence pads, clause vertices,
    // the controller pads, the first order controller, and the link-side
    // seeds.  Everything else starts at zero, the terminal included.
    let mut weights = Weights::zeros(vertex_count);
    let index = &b.index_of_role;
    let mut charge = |label: String| {
        weights.set(index[&label], true);
    };
    for j in 1..=n {
        charge(format!("v0_{j}"));
        charge(format!("v1_{j}"));
    }
    for i in 1..=3 * m {
        charge(format!("d3_{i}"));
    }
    for i in 1..=m {
        charge(format!("chi_{i}"));
    }
    for i in 1..=4 * m {
        charge(format!("d8_{i}"));
    }
    charge("lambda_2".to_string());
    charge("d11_1".to_string());
    charge("c1_1".to_string());
    if odd {
        charge("d9_1".to_string());
        charge("d9_2".to_string());
    }

    let position = GamePosition::new(Arc::new(graph), weights)?;
    Ok(ReductionArtifact {
        position,
        index_of_role: b.index_of_role,
        num_vars: n,
        num_clauses: m,
    })
}

// === Size audit ===

/// Measured sizes plus marginals from appending one clause / one variable.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SizeReport {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub vertices: usize,
    pub edges: usize,
    pub vertex_closed_form: usize,
    pub clause_marginal_vertices: i64,
    pub clause_marginal_edges: i64,
    pub variable_marginal_vertices: i64,
    pub variable_marginal_edges: i64,
}

/// Builds the instance, then rebuilds it with one extra clause and one extra
/// variable, and reports the size differences.  The clause marginal is a
/// uniform constant (+28 vertices, +43 edges); the variable marginal
/// alternates with parity because the odd-count handoff block comes and
/// goes, but never depends on the clause count.
pub fn audit_sizes(inst: &QbfInstance) -> Result<SizeReport> {
    let base = build_reduction(inst)?;
    let extra_clause = build_reduction(&inst.with_clause_appended([Literal::positive(1); 3])?)?;
    let extra_var = build_reduction(&inst.with_extra_var())?;
    let v = base.graph().vertex_count() as i64;
    let e = base.graph().edge_count() as i64;
    Ok(SizeReport {
        num_vars: inst.num_vars,
        num_clauses: inst.num_clauses(),
        vertices: v as usize,
        edges: e as usize,
        vertex_closed_form: expected_vertex_count(inst.num_vars, inst.num_clauses()),
        clause_marginal_vertices: extra_clause.graph().vertex_count() as i64 - v,
        clause_marginal_edges: extra_clause.graph().edge_count() as i64 - e,
        variable_marginal_vertices: extra_var.graph().vertex_count() as i64 - v,
        variable_marginal_edges: extra_var.graph().edge_count() as i64 - e,
    })
}

// === Equivalence verification ===

/// Outcome of replaying a compiled instance's full game tree.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EquivalenceReport {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub qbf_true: bool,
    pub first_player_wins: bool,
    /// Winners agree: the compiled game is logically equivalent.
    pub holds: bool,
    /// Distinct (move count, weights) states visited.
    pub reachable_positions: usize,
    /// During moves 1..=n the playable set is exactly the current variable
    /// pair, in increasing variable order.
    pub variable_phase_forced: bool,
    /// Largest playable-set size seen at any state after the variable phase.
    pub max_playable_after_assignment: usize,
    /// No pad/dummy vertex was ever playable.
    pub dummies_quiet: bool,
}

struct Walker<'a> {
    artifact: &'a ReductionArtifact,
    win_memo: HashMap<Weights, bool>,
    seen: usize,
    variable_phase_forced: bool,
    max_playable_after_assignment: usize,
    dummies_quiet: bool,
}

impl<'a> Walker<'a> {
    fn observe(&mut self, depth: usize, playable: &[usize]) {
        let n = self.artifact.num_vars;
        if depth < n {
            let stage = depth + 1;
            let expected = [
                self.artifact.vertex_of(&format!("v0_{stage}")).unwrap(),
                self.artifact.vertex_of(&format!("v1_{stage}")).unwrap(),
            ];
            let mut actual = playable.to_vec();
            actual.sort_unstable();
            let mut want = expected.to_vec();
            want.sort_unstable();
            if actual != want {
                self.variable_phase_forced = false;
            }
        } else {
            self.max_playable_after_assignment =
                self.max_playable_after_assignment.max(playable.len());
        }
        for &v in playable {
            if let Some(label) = self.artifact.graph().label(v) {
                if label.starts_with('d') {
                    self.dummies_quiet = false;
                }
            }
        }
    }

    /// Win/lose value under normal play, memoized on the weight vector;
    /// the bookkeeping side effects fire once per (depth, weights) pair.
    fn wins(&mut self, pos: &GamePosition, depth: usize) -> Result<bool> {
        let playable = engine::playable_vertices(pos);
        self.seen += 1;
        self.observe(depth, &playable);
        if let Some(&cached) = self.win_memo.get(&pos.weights) {
            return Ok(cached);
        }
        let mut value = false;
        for &v in &playable {
            let next = engine::apply_move(pos, v)?;
            if !self.wins(&next, depth + 1)? {
                value = true;
            }
        }
        self.win_memo.insert(pos.weights.clone(), value);
        Ok(value)
    }
}

/// Replays every legal line of the compiled game and compares its winner with
/// brute-force truth of the formula, recording the forced-move shape along
/// the way.  `holds` reports winner agreement only; the structural flags are
/// reported separately.
pub fn verify_equivalence(inst: &QbfInstance) -> Result<EquivalenceReport> {
    if inst.num_vars > MAX_WALK_VARS {
        return Err(Error::Budget(format!(
            "{} variables exceed the {MAX_WALK_VARS}-variable game-tree budget",
            inst.num_vars
        )));
    }
    if inst.num_clauses() > MAX_WALK_CLAUSES {
        return Err(Error::Budget(format!(
            "{} clauses exceed the {MAX_WALK_CLAUSES}-clause game-tree budget",
            inst.num_clauses()
        )));
    }
    let artifact = build_reduction(inst)?;
    let qbf_true = evaluate_qbf(inst)?;

    let mut walker = Walker {
        artifact: &artifact,
        win_memo: HashMap::new(),
        seen: 0,
        variable_phase_forced: true,
        max_playable_after_assignment: 0,
        dummies_quiet: true,
    };
    let first_player_wins = walker.wins(&artifact.position, 0)?;

    // Independent confirmation through the Sprague-Grundy solver.
    let solver_first_wins = Solver::new().grundy(&artifact.position)?.0 != 0;
    if solver_first_wins != first_player_wins {
        return Err(Error::input(format!(
            "game-tree walk says first player {} but the solver disagrees",
            if first_player_wins { "wins" } else { "loses" }
        )));
    }

    Ok(EquivalenceReport {
        num_vars: inst.num_vars,
        num_clauses: inst.num_clauses(),
        qbf_true,
        first_player_wins,
        holds: qbf_true == first_player_wins,
        reachable_positions: walker.seen,
        variable_phase_forced: walker.variable_phase_forced,
        max_playable_after_assignment: walker.max_playable_after_assignment,
        dummies_quiet: walker.dummies_quiet,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn single_clause() -> QbfInstance {
        parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap()
    }

    fn six_var_sample() -> QbfInstance {
        parse_dimacs("p cnf 6 4\n1 -2 3 0\n-1 4 5 0\n1 -5 6 0\n-3 6 -6 0\n").unwrap()
    }

    #[test]
    fn parser_sorts_and_keeps_duplicate_order() {
        let inst = six_var_sample();
        assert_eq!(inst.num_vars(), 6);
        assert_eq!(inst.num_clauses(), 4);
        // Clause 4 arrives as "-3 6 -6": sorted by variable, the two
        // occurrences of variable 6 keep their file order.
        let clause = inst.clauses()[3];
        assert_eq!(clause[0], Literal::negative(3));
        assert_eq!(clause[1], Literal::positive(6));
        assert_eq!(clause[2], Literal::negative(6));
    }

    #[test]
    fn parser_accepts_alternating_prefix_and_comments() {
        let inst = parse_dimacs("c a comment\np cnf 3 1\ne 1 0\na 2 0\ne 3 0\n1 2 3 0\n").unwrap();
        assert_eq!(inst, single_clause());
        // One line per quantifier is not required.
        let inst = parse_dimacs("p cnf 2 1\ne 1 0\na 2 0\n1 2 -2 0\n").unwrap();
        assert_eq!(inst.num_vars(), 2);
    }

    #[test]
    fn parser_rejects_bad_documents() {
        let err = |text: &str| parse_dimacs(text).unwrap_err().to_string();
        assert!(err("p cnf 3 1\n1 2 0\n").contains("line 2"), "short clause");
        assert!(err("p cnf 3 1\n1 2 4 0\n").contains("out of range"));
        assert!(err("1 2 3 0\n").contains("header"));
        assert!(err("p cnf 3 1\n1 2 3 0\n1 2 3 0\n").contains("declares 1 clauses"));
        assert!(err("p cnf 3 1\n1 2 3\n").contains("not terminated"));
        // Prefix must start existential, alternate, and cover every variable.
        assert!(err("p cnf 2 1\na 1 0\ne 2 0\n1 1 1 0\n").contains("alternate"));
        assert!(err("p cnf 2 1\ne 1 0\ne 2 0\n1 1 1 0\n").contains("alternate"));
        assert!(err("p cnf 3 1\ne 1 0\na 2 0\n1 2 3 0\n").contains("covers variables 1..2"));
        assert!(err("p cnf 3 1\n1 2 3 0\ne 1 0\n").contains("after the first clause"));
    }

    #[test]
    fn evaluation_matches_hand_results() {
        assert!(evaluate_qbf(&single_clause()).unwrap());
        assert!(evaluate_qbf(&six_var_sample()).unwrap());
        // ∃β₁ ∀β₂ (β₁)∧(β₂): the second player refutes the second clause.
        let two = parse_dimacs("p cnf 2 2\n1 1 1 0\n2 2 2 0\n").unwrap();
        assert!(!evaluate_qbf(&two).unwrap());
        // ∃β₁ ∀β₂ (β₂ ∨ ¬β₂ ∨ β₂) is a tautology.
        let taut = parse_dimacs("p cnf 2 1\n2 -2 2 0\n").unwrap();
        assert!(evaluate_qbf(&taut).unwrap());
        let empty = QbfInstance::new(2, vec![]).unwrap();
        assert!(evaluate_qbf(&empty).unwrap());
        let big = QbfInstance::new(25, vec![]).unwrap();
        assert!(matches!(evaluate_qbf(&big), Err(Error::Budget(_))));
    }

    #[test]
    fn occurrence_index_partitions_and_ranks() {
        let inst = six_var_sample();
        let occ = OccurrenceIndex::new(&inst);
        assert_eq!(occ.len(), 3 * inst.num_clauses());
        assert_eq!(occ.c0().count() + occ.c1().count(), occ.len());

        // y1 is a bijection onto 1..=12 and y2 partitions the occurrences.
        let mut y1_seen = vec![false; occ.len() + 1];
        for o in occ.occurrences() {
            let y = occ.y1(o);
            assert!(!y1_seen[y], "y1 value {y} repeated");
            y1_seen[y] = true;
        }
        assert!(y1_seen[1..].iter().all(|&b| b));
        let partition: usize = (1..=6).map(|v| occ.y2(v).count()).sum();
        assert_eq!(partition, occ.len());
        assert_eq!(occ.y2(1).count(), 3);
        assert_eq!(occ.y2(6).count(), 3);

        // Variable-major pad ranks: variable 1 owns pads 1..=3 with its one
        // negated occurrence first; variable 6 owns pads 10..=12 likewise.
        assert_eq!(occ.cstar_before(1), 0);
        assert_eq!(occ.cstar_before(2), 3);
        assert_eq!(occ.cstar_before(7), 12);
        let d3: HashMap<(usize, usize, bool), usize> = occ
            .occurrences()
            .iter()
            .enumerate()
            .map(|(k, o)| ((o.var, o.clause, o.negated), occ.d3_index(k)))
            .collect();
        assert_eq!(d3[&(1, 2, true)], 1);
        assert_eq!(d3[&(1, 1, false)], 2);
        assert_eq!(d3[&(1, 3, false)], 3);
        assert_eq!(d3[&(2, 1, true)], 4);
        assert_eq!(d3[&(6, 4, true)], 10);
        assert_eq!(d3[&(6, 3, false)], 11);
        assert_eq!(d3[&(6, 4, false)], 12);
        let mut pads: Vec<usize> = (0..occ.len()).map(|k| occ.d3_index(k)).collect();
        pads.sort_unstable();
        assert_eq!(pads, (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn single_clause_gadget_matches_the_reference_drawing() {
        let art = build_reduction(&single_clause()).unwrap();
        let g = art.graph();
        assert_eq!(g.vertex_count(), 56);
        assert_eq!(g.edge_count(), expected_edge_count(3, 1));

        let at = |role: &str| art.vertex_of(role).unwrap();
        let adjacent = |a: &str, b: &str| g.has_edge(at(a), at(b));

        // All-positive clause: the True vertices carry the occurrence wiring.
        assert!(adjacent("v1_1", "d3_1"));
        assert!(adjacent("v1_2", "d3_2"));
        assert!(adjacent("v1_3", "d3_3"));
        assert!(adjacent("v1_1", "sigma1_1"));
        assert!(adjacent("v1_2", "sigma1_2"));
        assert!(adjacent("v1_3", "sigma1_3"));
        assert!(!adjacent("v0_1", "d3_1"));

        // Assignment chain and its pads.
        assert!(adjacent("c1_1", "d1_1") && adjacent("c1_1", "d1_2") && adjacent("c1_1", "d1_3"));
        assert!(adjacent("c1_1", "v0_1") && adjacent("v0_1", "v1_1"));
        assert!(adjacent("v0_1", "c1_2") && adjacent("v1_1", "c1_2"));
        assert!(adjacent("v0_3", "lambda_1") && adjacent("v1_3", "lambda_1"));

        // Odd variable count: three link vertices and the extra pad block.
        assert!(adjacent("lambda_1", "lambda_2"));
        assert!(adjacent("lambda_2", "lambda_3"));
        assert!(adjacent("lambda_3", "c2_1"));
        assert!(adjacent("lambda_3", "d9_1") && adjacent("d9_1", "d10_1"));

        // Clause block.
        for pad in ["d8_1", "d8_2", "d8_3", "d8_4"] {
            assert!(g.has_edge(at("c2_1"), at(pad)));
            assert!(g.has_edge(at("d4_1"), at(pad)));
            assert!(g.has_edge(at("d4_2"), at(pad)));
        }
        for s in ["sigma2_1", "sigma2_2", "sigma2_3"] {
            assert!(g.has_edge(at("c2_1"), at(s)));
            assert!(g.has_edge(at("d6_1"), at(s)));
            assert!(g.has_edge(at("chi_1"), at(s)));
        }
        for s in ["sigma1_1", "sigma1_2", "sigma1_3"] {
            assert!(g.has_edge(at("d7_1"), at(s)));
            assert!(g.has_edge(at("chi_1"), at(s)));
        }
        assert!(adjacent("chi_1", "d13_1"));
        assert!(adjacent("d13_1", "d14_1") && adjacent("d13_1", "d14_2"));
        assert!(adjacent("chi_1", END_GAME));

        // Initial charge: 19 vertices, exactly these.
        let w = &art.position.weights;
        assert_eq!(art.position.total_weight(), 19);
        for role in [
            "v0_1", "v0_2", "v0_3", "v1_1", "v1_2", "v1_3", "d3_1", "d3_2", "d3_3", "chi_1",
            "d8_1", "d8_2", "d8_3", "d8_4", "lambda_2", "d11_1", "c1_1", "d9_1", "d9_2",
        ] {
            assert!(w.get(at(role)), "{role} should start charged");
        }
        assert!(!w.get(at(END_GAME)));

        // Opening playable set is the first variable pair, nothing else.
        let playable = engine::playable_vertices(&art.position);
        let mut want = vec![at("v0_1"), at("v1_1")];
        want.sort_unstable();
        assert_eq!(playable, want);
    }

    #[test]
    fn closed_forms_hold_across_small_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=6 {
            for m in 1..=4 {
                let inst = QbfInstance::random(n, m, &mut rng);
                let art = build_reduction(&inst).unwrap();
                assert_eq!(art.graph().vertex_count(), expected_vertex_count(n, m));
                assert_eq!(art.graph().edge_count(), expected_edge_count(n, m));
            }
        }
        // Even variable count drops the handoff block: 4·4 + 28 + 9 = 53.
        let even = QbfInstance::new(
            4,
            vec![[
                Literal::positive(1),
                Literal::negative(2),
                Literal::positive(4),
            ]],
        )
        .unwrap();
        assert_eq!(build_reduction(&even).unwrap().graph().vertex_count(), 53);
    }

    #[test]
    fn marginals_are_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut variable_marginals = HashMap::new();
        for n in 1..=4 {
            for m in 1..=3 {
                let report = audit_sizes(&QbfInstance::random(n, m, &mut rng)).unwrap();
                assert_eq!(report.clause_marginal_vertices, 28);
                assert_eq!(report.clause_marginal_edges, 43);
                assert_eq!(report.vertices, report.vertex_closed_form);
                // The variable marginal depends only on the parity of n.
                let prev = variable_marginals.insert(
                    n % 2,
                    (
                        report.variable_marginal_vertices,
                        report.variable_marginal_edges,
                    ),
                );
                if let Some(prev) = prev {
                    assert_eq!(
                        prev,
                        (
                            report.variable_marginal_vertices,
                            report.variable_marginal_edges
                        )
                    );
                }
            }
        }
        // Odd → even sheds the handoff block, even → odd regrows it.
        assert_eq!(variable_marginals[&1], (4 - 7, 6 - 7));
        assert_eq!(variable_marginals[&0], (4 + 7, 6 + 7));
    }

    #[test]
    fn build_rejects_degenerate_instances() {
        let no_clauses = QbfInstance::new(2, vec![]).unwrap();
        assert!(matches!(build_reduction(&no_clauses), Err(Error::Input(_))));
        let no_vars = QbfInstance::new(0, vec![]).unwrap();
        assert!(matches!(build_reduction(&no_vars), Err(Error::Input(_))));
    }

    #[test]
    fn equivalence_on_hand_checked_instances() {
        let report = verify_equivalence(&single_clause()).unwrap();
        assert!(report.qbf_true && report.first_player_wins && report.holds);
        assert!(report.variable_phase_forced && report.dummies_quiet);
        assert!(report.max_playable_after_assignment <= 1);

        let two = parse_dimacs("p cnf 2 2\n1 1 1 0\n2 2 2 0\n").unwrap();
        let report = verify_equivalence(&two).unwrap();
        assert!(!report.qbf_true && !report.first_player_wins && report.holds);

        let report = verify_equivalence(&six_var_sample()).unwrap();
        assert!(report.qbf_true && report.first_player_wins && report.holds);
        assert!(report.variable_phase_forced && report.dummies_quiet);
        assert!(report.max_playable_after_assignment <= 1);
    }

    #[test]
    fn equivalence_on_all_single_clause_polarities() {
        // Every ±β₁ ∨ ±β₂ ∨ ±β₃ clause is satisfiable by the first player's
        // choice of β₁ alone, so all eight gadgets are first-player wins.
        for pattern in 0..8u32 {
            let clause = [1, 2, 3].map(|v| Literal {
                var: v,
                negated: pattern >> (v - 1) & 1 == 1,
            });
            let inst = QbfInstance::new(3, vec![clause]).unwrap();
            let report = verify_equivalence(&inst).unwrap();
            assert!(report.holds, "pattern {pattern:03b} winner mismatch");
            assert!(report.qbf_true && report.first_player_wins);
            assert!(report.variable_phase_forced && report.dummies_quiet);
            assert!(report.max_playable_after_assignment <= 1);
        }
    }

    #[test]
    fn equivalence_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut qbf_false_seen = 0;
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let m = rng.gen_range(1..=3);
            let inst = QbfInstance::random(n, m, &mut rng);
            let report = verify_equivalence(&inst).unwrap();
            assert!(report.holds, "winner mismatch on {}", inst.to_dimacs());
            assert!(report.variable_phase_forced, "{}", inst.to_dimacs());
            assert!(report.dummies_quiet, "{}", inst.to_dimacs());
            assert!(report.max_playable_after_assignment <= 1);
            if !report.qbf_true {
                qbf_false_seen += 1;
            }
        }
        // The sample should exercise both outcomes.
        assert!(qbf_false_seen > 0, "sample never produced a false formula");
    }

    #[test]
    fn walk_budget_is_enforced() {
        let inst = QbfInstance::new(13, vec![[Literal::positive(1); 3]]).unwrap();
        assert!(matches!(verify_equivalence(&inst), Err(Error::Budget(_))));
    }

    #[test]
    fn artifact_document_round_trips() {
        let art = build_reduction(&single_clause()).unwrap();
        let doc = art.to_document();
        let (graph, weights) = format::parse(&doc).unwrap();
        assert!(graph.same_structure(art.graph()));
        assert_eq!(weights.unwrap(), art.position.weights);
        assert_eq!(graph.label(art.vertex_of("chi_1").unwrap()), Some("chi_1"));
        assert_eq!(
            graph.label(art.vertex_of(END_GAME).unwrap()),
            Some(END_GAME)
        );
    }
}
