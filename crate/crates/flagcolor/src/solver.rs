//! Grundy values, outcome classes, winning moves, and the transposition table.

use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::canon::CanonicalKey;
use crate::graph::{Move, Position};

/// Practical ceiling on nimber values; anything larger is treated as a bug.
pub const NIMBER_CAP: u32 = i32::MAX as u32;

/// A Grundy value. `*0` is written `0`, other values `*n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Nimber(pub u32);

impl fmt::Display for Nimber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "0")
        } else {
            write!(f, "*{}", self.0)
        }
    }
}

/// Outcome class under normal play: P-positions lose for the player to move.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Outcome {
    P,
    N,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::P => write!(f, "P"),
            Outcome::N => write!(f, "N"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("transposition table capacity {cap} exhausted ({entries} entries, {hits} hits, {misses} misses)")]
    TableFull { cap: usize, entries: usize, hits: u64, misses: u64 },
    #[error("nimber value exceeded the {NIMBER_CAP} cap")]
    NimberOverflow,
}

/// Least non-negative integer not in `values`.
pub fn mex(values: impl IntoIterator<Item = u32>) -> u32 {
    let mut vals: Vec<u32> = values.into_iter().collect();
    vals.sort_unstable();
    vals.dedup();
    let mut m = 0u32;
    for v in vals {
        if v == m {
            m += 1;
        } else if v > m {
            break;
        }
    }
    m
}

#[derive(Clone, Copy)]
enum Cached {
    Grundy(u32),
    /// Known to be an N-position; exact value not computed.
    InN,
}

/// Counters exposed by the table.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct TableStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
}

const SHARDS: usize = 16;

/// Memoized values keyed by canonical form.
///
/// Behaves as a linearizable insert-if-absent map: concurrent solvers may
/// compute the same key twice, and the values must then agree.
pub struct TranspositionTable {
    shards: [Mutex<FxHashMap<CanonicalKey, Cached>>; SHARDS],
    hits: AtomicU64,
    misses: AtomicU64,
    entries: AtomicUsize,
    cap: Option<usize>,
}

impl Default for TranspositionTable {
    fn default() -> Self {
        Self::new()
    }
}

impl TranspositionTable {
    pub fn new() -> Self {
        Self::with_capacity_limit(None)
    }

    pub fn with_capacity_limit(cap: Option<usize>) -> Self {
        TranspositionTable {
            shards: std::array::from_fn(|_| Mutex::new(FxHashMap::default())),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            entries: AtomicUsize::new(0),
            cap,
        }
    }

    fn shard(&self, key: &CanonicalKey) -> &Mutex<FxHashMap<CanonicalKey, Cached>> {
        use std::hash::{Hash, Hasher};
        let mut hasher = rustc_hash::FxHasher::default();
        key.as_bytes().hash(&mut hasher);
        &self.shards[(hasher.finish() as usize) % SHARDS]
    }

    fn get(&self, key: &CanonicalKey) -> Option<Cached> {
        let got = self.shard(key).lock().unwrap().get(key).copied();
        match got {
            Some(c) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(c)
            }
            None => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn insert(&self, key: CanonicalKey, value: Cached) -> Result<(), SolverError> {
        if let Some(cap) = self.cap {
            if self.entries.load(Ordering::Relaxed) >= cap {
                let s = self.stats();
                return Err(SolverError::TableFull {
                    cap,
                    entries: s.entries,
                    hits: s.hits,
                    misses: s.misses,
                });
            }
        }
        let mut map = self.shard(&key).lock().unwrap();
        match map.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                // An exact value may replace a bare N mark; duplicates must agree.
                match (e.get(), &value) {
                    (Cached::InN, Cached::Grundy(v)) => {
                        debug_assert!(*v > 0);
                        e.insert(value);
                    }
                    (Cached::Grundy(a), Cached::Grundy(b)) => debug_assert_eq!(a, b),
                    _ => {}
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(value);
                self.entries.fetch_add(1, Ordering::Relaxed);
            }
        }
        Ok(())
    }

    pub fn stats(&self) -> TableStats {
        TableStats {
            entries: self.entries.load(Ordering::Relaxed),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.load(Ordering::Relaxed)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Game-tree evaluator over one shared transposition table.
pub struct Solver {
    table: TranspositionTable,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Solver { table: TranspositionTable::new() }
    }

    pub fn with_table(table: TranspositionTable) -> Self {
        Solver { table }
    }

    pub fn stats(&self) -> TableStats {
        self.table.stats()
    }

    pub fn table(&self) -> &TranspositionTable {
        &self.table
    }

    /// Grundy value: mex over the values of the options, options deduplicated
    /// by canonical key and visited smallest-child-first.
    pub fn grundy(&self, p: &Position) -> Result<Nimber, SolverError> {
        let key = p.canonical_key();
        self.grundy_rec(p, &key).map(Nimber)
    }

    fn grundy_rec(&self, p: &Position, key: &CanonicalKey) -> Result<u32, SolverError> {
        if let Some(Cached::Grundy(v)) = self.table.get(key) {
            return Ok(v);
        }
        let mut values = Vec::new();
        for (child, child_key) in distinct_options(p) {
            values.push(self.grundy_rec(&child, &child_key)?);
        }
        let v = mex(values);
        if v > NIMBER_CAP {
            return Err(SolverError::NimberOverflow);
        }
        self.table.insert(key.clone(), Cached::Grundy(v))?;
        Ok(v)
    }

    /// Outcome class, by win/loss search: a position is in N exactly when
    /// some option is in P. Cheaper than a full Grundy computation and shares
    /// the same table (a P verdict is recorded as value 0).
    pub fn outcome(&self, p: &Position) -> Result<Outcome, SolverError> {
        let key = p.canonical_key();
        self.outcome_rec(p, &key)
            .map(|n| if n { Outcome::N } else { Outcome::P })
    }

    fn outcome_rec(&self, p: &Position, key: &CanonicalKey) -> Result<bool, SolverError> {
        match self.table.get(key) {
            Some(Cached::Grundy(v)) => return Ok(v != 0),
            Some(Cached::InN) => return Ok(true),
            None => {}
        }
        for (child, child_key) in distinct_options(p) {
            if !self.outcome_rec(&child, &child_key)? {
                self.table.insert(key.clone(), Cached::InN)?;
                return Ok(true);
            }
        }
        self.table.insert(key.clone(), Cached::Grundy(0))?;
        Ok(false)
    }

    /// All legal moves whose resulting position has Grundy value 0, with that
    /// value; empty exactly when the position is in P (or terminal).
    pub fn winning_moves(&self, p: &Position) -> Result<Vec<(Move, Nimber)>, SolverError> {
        let annotated: Vec<(Move, Position, CanonicalKey)> = p
            .legal_moves()
            .into_iter()
            .map(|m| {
                let child = p.apply_move(m).expect("legal move applies");
                let key = child.canonical_key();
                (m, child, key)
            })
            .collect();
        // Solve each distinct child once, in parallel.
        let mut distinct: Vec<&(Move, Position, CanonicalKey)> = Vec::new();
        {
            let mut seen = std::collections::HashSet::new();
            for entry in &annotated {
                if seen.insert(entry.2.clone()) {
                    distinct.push(entry);
                }
            }
        }
        let verdicts: Vec<(CanonicalKey, Result<bool, SolverError>)> = distinct
            .par_iter()
            .map(|(_, child, key)| (key.clone(), self.outcome_rec(child, key)))
            .collect();
        let mut in_p = std::collections::HashSet::new();
        for (key, verdict) in verdicts {
            if !verdict? {
                in_p.insert(key);
            }
        }
        Ok(annotated
            .into_iter()
            .filter(|(_, _, key)| in_p.contains(key))
            .map(|(m, _, _)| (m, Nimber(0)))
            .collect())
    }

    /// Grundy value of a disjoint sum of connected components: the bitwise
    /// XOR of the component values.
    pub fn grundy_sum(&self, components: &[Position]) -> Result<Nimber, SolverError> {
        let mut acc = 0u32;
        for p in components {
            acc ^= self.grundy(p)?.0;
        }
        Ok(Nimber(acc))
    }
}

/// Options of `p` deduplicated by canonical key, sorted by ascending child
/// vertex count then key.
///
/// Moves on vertices in the same discovered automorphism orbit of `p` give
/// isomorphic children, so only one per (orbit, color) class is expanded
/// before the usual key dedup. On pendant-heavy positions this collapses
/// dozens of symmetric moves into one child construction.
fn distinct_options(p: &Position) -> Vec<(Position, CanonicalKey)> {
    let moves = p.legal_moves();
    if moves.is_empty() {
        return Vec::new();
    }
    // Escape hatch for differential testing of the orbit layer.
    static NO_ORBIT_DEDUP: std::sync::OnceLock<bool> = std::sync::OnceLock::new();
    let no_orbits =
        *NO_ORBIT_DEDUP.get_or_init(|| std::env::var_os("FLAGCOLOR_NO_ORBIT_DEDUP").is_some());
    let orbits = if no_orbits {
        (0..p.vertex_count() as u32).collect()
    } else {
        let (_, _, orbits) = crate::canon::canonical_form_with_orbits(p.graph());
        orbits
    };
    let mut seen_classes = std::collections::HashSet::new();
    let mut out: Vec<(Position, CanonicalKey)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for m in moves {
        if !seen_classes.insert((orbits[m.vertex], m.new_color)) {
            continue;
        }
        let child = p.apply_move(m).expect("legal move applies");
        let key = child.canonical_key();
        if seen.insert(key.clone()) {
            out.push((child, key));
        }
    }
    out.sort_by(|a, b| {
        a.0.vertex_count()
            .cmp(&b.0.vertex_count())
            .then_with(|| a.1.cmp(&b.1))
    });
    out
}

/// Grundy value computed without any transposition table, for memo-soundness
/// checks. Options are still deduplicated within each node.
pub fn grundy_unmemoized(p: &Position) -> Nimber {
    fn rec(p: &Position) -> u32 {
        let values: Vec<u32> = distinct_options(p).iter().map(|(c, _)| rec(c)).collect();
        mex(values)
    }
    Nimber(rec(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Color, ColoredGraph, Position};

    fn pos(colors: &[u8], edges: &[(u32, u32)]) -> Position {
        let g = ColoredGraph::new(colors.iter().map(|&c| Color(c)).collect(), edges).unwrap();
        Position::from_graph(&g).unwrap()
    }

    fn star(i: usize) -> Position {
        let mut colors = vec![0u8];
        colors.extend(std::iter::repeat(1).take(i));
        let edges: Vec<(u32, u32)> = (1..=i as u32).map(|v| (0, v)).collect();
        pos(&colors, &edges)
    }

    fn path(x: usize) -> Position {
        let colors: Vec<u8> = (0..=x).map(|i| (i % 2) as u8).collect();
        let edges: Vec<(u32, u32)> = (0..x as u32).map(|i| (i, i + 1)).collect();
        pos(&colors, &edges)
    }

    #[test]
    fn mex_identities() {
        assert_eq!(mex([]), 0);
        assert_eq!(mex([0, 1, 3]), 2);
        assert_eq!(mex([1, 2]), 0);
        assert_eq!(mex([0, 0, 1, 1]), 2);
    }

    #[test]
    fn terminal_position_is_zero() {
        let s = Solver::new();
        assert_eq!(s.grundy(&star(0)).unwrap(), Nimber(0));
        assert_eq!(s.outcome(&star(0)).unwrap(), Outcome::P);
    }

    #[test]
    fn small_star_values() {
        let s = Solver::new();
        assert_eq!(s.grundy(&star(1)).unwrap(), Nimber(1));
        assert_eq!(s.grundy(&star(2)).unwrap(), Nimber(2));
        assert_eq!(s.grundy(&star(3)).unwrap(), Nimber(1));
    }

    #[test]
    fn diamond_one_one_is_star_three() {
        // T_{1,1}: center v + 1 pendant + one diamond, value *3.
        let p = pos(&[0, 1, 1, 1, 0], &[(0, 1), (0, 2), (0, 3), (2, 4), (3, 4)]);
        assert_eq!(Solver::new().grundy(&p).unwrap(), Nimber(3));
    }

    #[test]
    fn path_of_length_three_is_zero() {
        assert_eq!(Solver::new().grundy(&path(3)).unwrap(), Nimber(0));
    }

    #[test]
    fn four_cycle_is_p() {
        let s = Solver::new();
        let c4 = pos(&[0, 1, 0, 1], &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(s.outcome(&c4).unwrap(), Outcome::P);
        assert_eq!(s.grundy(&c4).unwrap(), Nimber(0));
    }

    #[test]
    fn winning_moves_of_s2_single_center_move() {
        let s = Solver::new();
        let p = star(2);
        let wins = s.winning_moves(&p).unwrap();
        assert_eq!(wins.len(), 1);
        assert_eq!(wins[0].0.vertex, 0);
        assert_eq!(wins[0].1, Nimber(0));
    }

    #[test]
    fn winning_moves_empty_for_p_position() {
        let s = Solver::new();
        assert!(s.winning_moves(&path(3)).unwrap().is_empty());
        assert!(s.winning_moves(&star(0)).unwrap().is_empty());
    }

    #[test]
    fn grundy_sum_examples() {
        let s = Solver::new();
        assert_eq!(s.grundy_sum(&[star(0)]).unwrap(), Nimber(0));
        assert_eq!(s.grundy_sum(&[star(1), star(1)]).unwrap(), Nimber(0));
        // S_2 = *2 and the 3-vertex path (length 2) = *2; the sum is 0.
        assert_eq!(s.grundy_sum(&[star(2), path(2)]).unwrap(), Nimber(0));
    }

    #[test]
    fn memoized_and_unmemoized_agree() {
        let s = Solver::new();
        for p in [star(4), path(5), pos(&[0, 1, 0, 1], &[(0, 1), (1, 2), (2, 3), (3, 0)])] {
            assert_eq!(s.grundy(&p).unwrap(), grundy_unmemoized(&p));
        }
    }

    #[test]
    fn table_capacity_error_reports_stats() {
        let solver = Solver::with_table(TranspositionTable::with_capacity_limit(Some(2)));
        let err = solver.grundy(&path(6)).unwrap_err();
        match err {
            SolverError::TableFull { cap, entries, .. } => {
                assert_eq!(cap, 2);
                assert_eq!(entries, 2);
            }
            other => panic!("expected TableFull, got {other:?}"),
        }
    }

    #[test]
    fn outcome_consistency_with_grundy() {
        let s = Solver::new();
        for p in [star(0), star(1), star(2), path(3), path(4), path(5)] {
            let g = s.grundy(&p).unwrap();
            let o = s.outcome(&p).unwrap();
            assert_eq!(o == Outcome::P, g.0 == 0);
        }
    }
}
