//! The avoidance game on positive CNF formulas and its encoding as a
//! two-colored graph position.
//!
//! In the formula game all variables start False; a move flips a False
//! variable to True provided the formula still evaluates False afterward
//! (some clause must stay all-False). The graph encoding hangs a guarded
//! path gadget off every clause node (each real clause cloned four times,
//! plus three always-unsatisfied clause nodes adjacent to every variable)
//! and ties the path ends together at a single collector vertex.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Color, ColoredGraph, GraphError, Position};
use crate::solver::{Outcome, Solver, SolverError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: negative literal {literal} (formula must be positive)")]
    NegativeLiteral { line: usize, literal: i64 },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("line {line}: variable {var} exceeds the declared count {declared}")]
    VariableOutOfRange { line: usize, var: u32, declared: u32 },
    #[error("header declares {declared} clauses but {found} were given")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("missing `p pcnf <vars> <clauses>` header")]
    MissingHeader,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("the construction needs at least one variable")]
    NoVariables,
    #[error("instance too large for exhaustive checking (limit: {max_vars} variables, {max_clauses} clauses)")]
    GuardExceeded { max_vars: u32, max_clauses: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A positive CNF formula together with the current assignment.
///
/// Clauses are non-empty sets of 1-based variable indices; no literal is
/// negated. All variables start False.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PositiveCnf {
    variable_count: u32,
    clauses: Vec<Vec<u32>>,
    assignment: Vec<bool>,
}

impl PositiveCnf {
    pub fn new(variable_count: u32, clauses: Vec<Vec<u32>>) -> Result<Self, CnfError> {
        let mut normalized = Vec::with_capacity(clauses.len());
        for clause in clauses {
            if clause.is_empty() {
                return Err(CnfError::EmptyClause { line: 0 });
            }
            let mut c = clause;
            for &v in &c {
                if v == 0 || v > variable_count {
                    return Err(CnfError::VariableOutOfRange {
                        line: 0,
                        var: v,
                        declared: variable_count,
                    });
                }
            }
            c.sort_unstable();
            c.dedup();
            normalized.push(c);
        }
        Ok(PositiveCnf {
            variable_count,
            clauses: normalized,
            assignment: vec![false; variable_count as usize],
        })
    }

    pub fn variable_count(&self) -> u32 {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<u32>] {
        &self.clauses
    }

    pub fn assignment(&self) -> &[bool] {
        &self.assignment
    }

    pub fn is_true(&self, var: u32) -> bool {
        self.assignment[(var - 1) as usize]
    }

    /// The conjunction of clause disjunctions over the current assignment.
    pub fn evaluate(&self) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&v| self.is_true(v)))
    }

    pub fn with_flipped(&self, var: u32) -> PositiveCnf {
        let mut next = self.clone();
        next.assignment[(var - 1) as usize] = true;
        next
    }
}

/// Parse positive-DIMACS text: `c` comments, a `p pcnf <vars> <clauses>`
/// header, then clause lines of positive integers terminated by `0`.
pub fn parse_cnf(text: &str) -> Result<PositiveCnf, CnfError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<u32>> = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(CnfError::Syntax { line: lineno, message: "duplicate header".into() });
            }
            let mut parts = rest.split_whitespace();
            let format = parts.next();
            if format != Some("pcnf") && format != Some("cnf") {
                return Err(CnfError::Syntax {
                    line: lineno,
                    message: "expected `p pcnf <vars> <clauses>`".into(),
                });
            }
            let vars: u32 = parts.next().and_then(|t| t.parse().ok()).ok_or(CnfError::Syntax {
                line: lineno,
                message: "bad variable count".into(),
            })?;
            let count: usize = parts.next().and_then(|t| t.parse().ok()).ok_or(CnfError::Syntax {
                line: lineno,
                message: "bad clause count".into(),
            })?;
            header = Some((vars, count));
            continue;
        }
        let (vars_declared, _) = header.ok_or(CnfError::MissingHeader)?;
        for token in line.split_whitespace() {
            let lit: i64 = token.parse().map_err(|_| CnfError::Syntax {
                line: lineno,
                message: format!("bad literal `{token}`"),
            })?;
            match lit {
                0 => {
                    if current.is_empty() {
                        return Err(CnfError::EmptyClause { line: lineno });
                    }
                    clauses.push(std::mem::take(&mut current));
                }
                l if l < 0 => return Err(CnfError::NegativeLiteral { line: lineno, literal: l }),
                l => {
                    let v = l as u32;
                    if v > vars_declared {
                        return Err(CnfError::VariableOutOfRange {
                            line: lineno,
                            var: v,
                            declared: vars_declared,
                        });
                    }
                    current.push(v);
                }
            }
        }
    }
    let (vars, declared) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != declared {
        return Err(CnfError::ClauseCountMismatch { declared, found: clauses.len() });
    }
    PositiveCnf::new(vars, clauses)
}

/// Variables that may legally be flipped: currently False, and flipping them
/// leaves some clause entirely False.
pub fn avoid_true_moves(f: &PositiveCnf) -> Vec<u32> {
    (1..=f.variable_count)
        .filter(|&v| !f.is_true(v) && !f.with_flipped(v).evaluate())
        .collect()
}

/// Normal-play outcome of the formula game by backward induction over
/// assignments.
pub fn avoid_true_outcome(f: &PositiveCnf) -> Outcome {
    fn mask(f: &PositiveCnf) -> u64 {
        f.assignment
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, &b)| if b { m | (1 << i) } else { m })
    }
    fn next_wins(f: &PositiveCnf, memo: &mut HashMap<u64, bool>) -> bool {
        let key = mask(f);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let result = avoid_true_moves(f)
            .into_iter()
            .any(|v| !next_wins(&f.with_flipped(v), memo));
        memo.insert(key, result);
        result
    }
    let mut memo = HashMap::new();
    if next_wins(f, &mut memo) {
        Outcome::N
    } else {
        Outcome::P
    }
}

/// Which clause node a gadget vertex belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum ClauseTag {
    /// Copy 0..=3 of a real clause (0-based clause index).
    Real { clause: u32, copy: u8 },
    Gamma,
    Delta,
    Epsilon,
}

impl fmt::Display for ClauseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClauseTag::Real { clause, copy } => write!(f, "C{}^{}", clause + 1, copy + 1),
            ClauseTag::Gamma => write!(f, "C_gamma"),
            ClauseTag::Delta => write!(f, "C_delta"),
            ClauseTag::Epsilon => write!(f, "C_epsilon"),
        }
    }
}

/// Role of one gadget vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum GadgetRole {
    X,
    XPrime,
    /// 1-based variable index.
    Variable(u32),
    Clause(ClauseTag),
    PathA(ClauseTag),
    PathB(ClauseTag),
    PathC(ClauseTag),
    PathD(ClauseTag),
    Y,
}

impl GadgetRole {
    pub fn is_variable(&self) -> bool {
        matches!(self, GadgetRole::Variable(_))
    }
}

impl fmt::Display for GadgetRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetRole::X => write!(f, "x"),
            GadgetRole::XPrime => write!(f, "x'"),
            GadgetRole::Variable(i) => write!(f, "x_{i}"),
            GadgetRole::Clause(t) => write!(f, "{t}"),
            GadgetRole::PathA(t) => write!(f, "a[{t}]"),
            GadgetRole::PathB(t) => write!(f, "b[{t}]"),
            GadgetRole::PathC(t) => write!(f, "c[{t}]"),
            GadgetRole::PathD(t) => write!(f, "d[{t}]"),
            GadgetRole::Y => write!(f, "y"),
        }
    }
}

/// The built position plus the role of each vertex.
#[derive(Clone, Debug)]
pub struct ReductionGadget {
    pub position: Position,
    pub roles: Vec<GadgetRole>,
}

const WHITE: Color = Color(0);
const BLACK: Color = Color(1);

/// Encode a formula as a two-colored position.
///
/// Black guards x and x' flank the white variable nodes. Every clause node
/// (four copies per real clause, plus gamma/delta/epsilon adjacent to all
/// variables) is black and starts a properly colored 4-path ending in a
/// black vertex adjacent to the shared white collector y. Vertex count is
/// `2 + k + 5(4n + 3) + 1`.
pub fn build_reduction(f: &PositiveCnf) -> Result<ReductionGadget, ReductionError> {
    let k = f.variable_count;
    if k == 0 {
        return Err(ReductionError::NoVariables);
    }
    let n = f.clauses.len();

    let mut colors: Vec<Color> = Vec::new();
    let mut roles: Vec<GadgetRole> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();

    let add = |colors: &mut Vec<Color>, roles: &mut Vec<GadgetRole>, color, role| -> u32 {
        colors.push(color);
        roles.push(role);
        (colors.len() - 1) as u32
    };

    let x = add(&mut colors, &mut roles, BLACK, GadgetRole::X);
    let x_prime = add(&mut colors, &mut roles, BLACK, GadgetRole::XPrime);
    let mut var_vertex = Vec::with_capacity(k as usize);
    for i in 1..=k {
        let v = add(&mut colors, &mut roles, WHITE, GadgetRole::Variable(i));
        edges.push((x, v));
        edges.push((x_prime, v));
        var_vertex.push(v);
    }

    let mut clause_tags: Vec<(ClauseTag, Vec<u32>)> = Vec::new();
    for (j, clause) in f.clauses.iter().enumerate() {
        let members: Vec<u32> =
            clause.iter().map(|&v| var_vertex[(v - 1) as usize]).collect();
        for copy in 0..4u8 {
            clause_tags.push((ClauseTag::Real { clause: j as u32, copy }, members.clone()));
        }
    }
    for tag in [ClauseTag::Gamma, ClauseTag::Delta, ClauseTag::Epsilon] {
        clause_tags.push((tag, var_vertex.clone()));
    }
    debug_assert_eq!(clause_tags.len(), 4 * n + 3);

    let mut d_vertices = Vec::with_capacity(clause_tags.len());
    for (tag, members) in clause_tags {
        let c = add(&mut colors, &mut roles, BLACK, GadgetRole::Clause(tag));
        for m in members {
            edges.push((c, m));
        }
        let a = add(&mut colors, &mut roles, WHITE, GadgetRole::PathA(tag));
        let b = add(&mut colors, &mut roles, BLACK, GadgetRole::PathB(tag));
        let cc = add(&mut colors, &mut roles, WHITE, GadgetRole::PathC(tag));
        let d = add(&mut colors, &mut roles, BLACK, GadgetRole::PathD(tag));
        edges.extend([(c, a), (a, b), (b, cc), (cc, d)]);
        d_vertices.push(d);
    }

    let y = add(&mut colors, &mut roles, WHITE, GadgetRole::Y);
    for d in d_vertices {
        edges.push((d, y));
    }

    let graph = ColoredGraph::new(colors, &edges)?;
    debug_assert!(graph.is_proper());
    let position = Position::from_graph(&graph)?;
    debug_assert_eq!(position.vertex_count(), 2 + k as usize + 5 * (4 * n + 3) + 1);
    Ok(ReductionGadget { position, roles })
}

#[derive(Clone, Debug, Serialize)]
pub struct FirstMoveReport {
    pub vertex: usize,
    pub role: GadgetRole,
    pub child_outcome: Outcome,
}

/// Side-by-side data for one formula and its graph encoding.
#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub variable_count: u32,
    pub clause_count: usize,
    pub formula_outcome: Outcome,
    pub gadget_outcome: Outcome,
    pub gadget_vertex_count: usize,
    /// Per-variable first moves of the gadget, with the formula-side legality
    /// of the corresponding flip.
    pub variable_moves: Vec<VariableMoveReport>,
    pub non_variable_moves: Vec<FirstMoveReport>,
    /// Whether every first move not on a variable node hands the opponent a
    /// win (an N child).
    pub all_non_variable_moves_yield_n: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VariableMoveReport {
    pub variable: u32,
    pub vertex: usize,
    pub legal_in_formula: bool,
    pub child_outcome: Outcome,
}

const GUARD_MAX_VARS: u32 = 4;
const GUARD_MAX_CLAUSES: usize = 3;

/// Solve both games exhaustively (small instances only) and report how the
/// gadget's first moves line up with the formula's.
pub fn correspondence_check(
    f: &PositiveCnf,
    solver: &Solver,
) -> Result<CorrespondenceReport, ReductionError> {
    if f.variable_count > GUARD_MAX_VARS || f.clauses.len() > GUARD_MAX_CLAUSES {
        return Err(ReductionError::GuardExceeded {
            max_vars: GUARD_MAX_VARS,
            max_clauses: GUARD_MAX_CLAUSES,
        });
    }
    let gadget = build_reduction(f)?;
    let position = &gadget.position;
    let legal_flips = avoid_true_moves(f);

    let mut variable_moves = Vec::new();
    let mut non_variable_moves = Vec::new();
    let mut all_n = true;
    for m in position.legal_moves() {
        let child = position.apply_move(m).expect("legal move applies");
        let child_outcome = solver.outcome(&child)?;
        match gadget.roles[m.vertex] {
            GadgetRole::Variable(i) => variable_moves.push(VariableMoveReport {
                variable: i,
                vertex: m.vertex,
                legal_in_formula: legal_flips.contains(&i),
                child_outcome,
            }),
            role => {
                if child_outcome != Outcome::N {
                    all_n = false;
                }
                non_variable_moves.push(FirstMoveReport {
                    vertex: m.vertex,
                    role,
                    child_outcome,
                });
            }
        }
    }

    Ok(CorrespondenceReport {
        variable_count: f.variable_count,
        clause_count: f.clauses.len(),
        formula_outcome: avoid_true_outcome(f),
        gadget_outcome: solver.outcome(position)?,
        gadget_vertex_count: position.vertex_count(),
        variable_moves,
        non_variable_moves,
        all_non_variable_moves_yield_n: all_n,
    })
}
