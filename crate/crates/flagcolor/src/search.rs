//! Exhaustive enumeration of small positions and Grundy-spectrum reports.
//!
//! Positions are generated level by level: each n-vertex position is extended
//! by one new vertex (every neighbor subset, every color, including a fresh
//! color inserted at any rank). A child survives only if deleting its
//! canonically chosen removable vertex leads back to the generating parent,
//! so each canonical position is produced exactly once and no global seen-set
//! is needed.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon;
use crate::graph::{Color, ColoredGraph, Position};
use crate::parse::write_graph;
use crate::solver::{Solver, SolverError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search limits exceeded: {max_vertices} vertices with {color_count} colors (guard allows up to {allowed}); pass the unguarded flag to run anyway")]
    GuardExceeded { max_vertices: usize, color_count: usize, allowed: usize },
    #[error("color count must be at least 1")]
    NoColors,
    #[error("cannot write report: {0}")]
    ReportIo(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_vertices: usize,
    pub color_count: usize,
    /// Lifts the desk-scale guard; larger runs can take a very long time.
    pub allow_unguarded: bool,
    /// Where [`spectrum`] additionally writes its report as JSON.
    pub report_path: Option<std::path::PathBuf>,
}

impl SearchConfig {
    pub fn new(max_vertices: usize, color_count: usize) -> SearchConfig {
        SearchConfig { max_vertices, color_count, allow_unguarded: false, report_path: None }
    }

    /// Desk-scale guard: the 2-color enumeration is tractable to 10 vertices;
    /// more colors blow up faster.
    fn guard_limit(&self) -> usize {
        match self.color_count {
            0 | 1 | 2 => 10,
            3 => 8,
            _ => 7,
        }
    }

    fn check(&self) -> Result<(), SearchError> {
        if self.color_count == 0 {
            return Err(SearchError::NoColors);
        }
        if !self.allow_unguarded && self.max_vertices > self.guard_limit() {
            return Err(SearchError::GuardExceeded {
                max_vertices: self.max_vertices,
                color_count: self.color_count,
                allowed: self.guard_limit(),
            });
        }
        Ok(())
    }
}

/// Every connected properly colored position with at most `max_vertices`
/// vertices and at most `color_count` colors, exactly once up to canonical
/// key, in deterministic order (by vertex count, then key).
pub fn enumerate_positions(
    cfg: &SearchConfig,
) -> Result<impl Iterator<Item = Position> + Send, SearchError> {
    cfg.check()?;
    Ok(Enumeration::new(cfg.clone()).flat_map(|level| level.into_iter().map(|(_, p)| p)))
}

type Keyed = (canon::CanonicalKey, Position);

struct Enumeration {
    cfg: SearchConfig,
    current: Vec<Keyed>,
    level: usize,
}

impl Enumeration {
    fn new(cfg: SearchConfig) -> Enumeration {
        Enumeration { cfg, current: Vec::new(), level: 0 }
    }
}

impl Iterator for Enumeration {
    type Item = Vec<Keyed>;

    fn next(&mut self) -> Option<Self::Item> {
        self.level += 1;
        if self.level > self.cfg.max_vertices {
            return None;
        }
        if self.level == 1 {
            let single = Position::from_graph(
                &ColoredGraph::new(vec![Color(0)], &[]).expect("single vertex"),
            )
            .expect("single vertex is a position");
            self.current = vec![(single.canonical_key(), single)];
        } else {
            let mut next: Vec<Keyed> = self
                .current
                .par_iter()
                .flat_map_iter(|(key, p)| accepted_children(p, key, self.cfg.color_count))
                .collect();
            next.sort_by(|a, b| a.0.cmp(&b.0));
            debug_assert!(next.windows(2).all(|w| w[0].0 != w[1].0), "duplicate canonical child");
            self.current = next;
        }
        Some(self.current.clone())
    }
}

/// All canonical children of `parent` that designate it as their construction
/// parent, deduplicated.
///
/// The new vertex either reuses an existing color id (and must then avoid all
/// chosen neighbors' colors) or introduces a fresh color at any rank, with
/// the parent's ids at and above that rank shifted up. The rank choices make
/// every relative ordering of the new color reachable, which matters because
/// positions are identified by fixed color ids.
fn accepted_children(
    parent: &Position,
    parent_key: &canon::CanonicalKey,
    color_count: usize,
) -> Vec<Keyed> {
    let g = parent.graph();
    let n = g.vertex_count();
    assert!(n < 32, "enumeration level too large");
    let k = g.color_count();
    let mut out: Vec<Keyed> = Vec::new();
    let mut seen = std::collections::HashSet::new();

    // (fresh-color rank, new vertex color in the child's id space)
    let mut options: Vec<(Option<u8>, u8)> = (0..k as u8).map(|c| (None, c)).collect();
    if k < color_count {
        options.extend((0..=k as u8).map(|r| (Some(r), r)));
    }

    let parent_edges: Vec<(u32, u32)> = g.edges().collect();
    for subset in 1u64..(1u64 << n) {
        let neighbors: Vec<u32> = (0..n as u32).filter(|&v| subset & (1 << v) != 0).collect();
        for &(fresh_rank, new_color) in &options {
            if fresh_rank.is_none()
                && neighbors.iter().any(|&v| g.color(v as usize).0 == new_color)
            {
                continue;
            }
            let mut colors: Vec<Color> = match fresh_rank {
                None => g.colors().to_vec(),
                Some(r) => g.colors().iter().map(|c| Color(c.0 + u8::from(c.0 >= r))).collect(),
            };
            colors.push(Color(new_color));
            let mut edges = parent_edges.clone();
            edges.extend(neighbors.iter().map(|&v| (v, n as u32)));
            let child_graph = ColoredGraph::new(colors, &edges).expect("child graph valid");
            debug_assert!(child_graph.is_proper());
            let child = Position::from_graph(&child_graph).expect("child stays connected");
            debug_assert_eq!(child.vertex_count(), n + 1);
            let key = child.canonical_key();
            if seen.contains(&key) {
                continue;
            }
            if construction_parent_key(&child) == *parent_key {
                seen.insert(key.clone());
                out.push((key, child));
            }
        }
    }
    out
}

/// Key of the canonical construction parent: delete the removable vertex with
/// the highest canonical index.
fn construction_parent_key(child: &Position) -> canon::CanonicalKey {
    let g = child.graph();
    let n = g.vertex_count();
    let (_, labeling) = canon::canonical_form(g);
    let v = (0..n)
        .filter(|&v| g.is_removable(v))
        .max_by_key(|&v| labeling[v])
        .expect("every connected graph on >= 2 vertices has a removable vertex");
    let parent = Position::from_graph(&g.removed(v)).expect("removable vertex keeps connectivity");
    parent.canonical_key()
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub vertex_count: usize,
    /// Canonical positions at this order (color ids fixed, not swapped).
    pub positions: usize,
    /// Count after also identifying positions equal up to a color permutation.
    pub swap_merged_positions: usize,
    /// (grundy value, how many positions) pairs, ascending.
    pub histogram: Vec<(u32, usize)>,
    pub max_grundy: u32,
    /// Graph-file text of the first position attaining the maximum.
    pub max_witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub color_count: usize,
    pub levels: Vec<LevelReport>,
}

/// Enumerate and solve everything within the configured bounds.
pub fn spectrum(cfg: &SearchConfig, solver: &Solver) -> Result<SpectrumReport, SearchError> {
    cfg.check()?;
    let mut levels = Vec::new();
    for level in Enumeration::new(cfg.clone()) {
        if level.is_empty() {
            continue;
        }
        let vertex_count = level[0].1.vertex_count();
        let values: Vec<u32> = level
            .par_iter()
            .map(|(_, p)| solver.grundy(p).map(|n| n.0))
            .collect::<Result<_, _>>()?;
        let mut histogram: Vec<(u32, usize)> = Vec::new();
        for &v in &values {
            match histogram.iter_mut().find(|(g, _)| *g == v) {
                Some((_, count)) => *count += 1,
                None => histogram.push((v, 1)),
            }
        }
        histogram.sort_unstable();
        let max_grundy = values.iter().copied().max().unwrap_or(0);
        let witness_index = values.iter().position(|&v| v == max_grundy).unwrap_or(0);
        let max_witness = write_graph(&level[witness_index].1, None);

        let swap_merged = count_swap_merged(&level);
        levels.push(LevelReport {
            vertex_count,
            positions: level.len(),
            swap_merged_positions: swap_merged,
            histogram,
            max_grundy,
            max_witness,
        });
    }
    let report = SpectrumReport { color_count: cfg.color_count, levels };
    if let Some(path) = &cfg.report_path {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(path, json).map_err(|e| SearchError::ReportIo(e.to_string()))?;
    }
    Ok(report)
}

/// Number of classes when positions are identified up to global color
/// permutation as well.
fn count_swap_merged(level: &[Keyed]) -> usize {
    let mut representatives = std::collections::HashSet::new();
    for (_, p) in level {
        let k = p.color_count();
        let perms = permutations(k as u8);
        let min_key = perms
            .iter()
            .map(|perm| p.recolored(perm).canonical_key())
            .min()
            .expect("at least the identity permutation");
        representatives.insert(min_key);
    }
    representatives.len()
}

fn permutations(k: u8) -> Vec<Vec<u8>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for slot in 0..k {
            let mut p: Vec<u8> = rest.iter().map(|&x| if x >= slot { x + 1 } else { x }).collect();
            p.push(slot);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_levels(max: usize, colors: usize) -> Vec<usize> {
        let cfg = SearchConfig::new(max, colors);
        let mut counts = vec![0usize; max];
        for p in enumerate_positions(&cfg).unwrap() {
            counts[p.vertex_count() - 1] += 1;
        }
        counts
    }

    /// Reference enumeration: all labeled proper connected colored graphs,
    /// bucketed by canonical key.
    fn brute_force_count(n: usize, colors: usize) -> usize {
        if n == 0 {
            return 0;
        }
        let mut keys = std::collections::HashSet::new();
        let edge_slots: Vec<(u32, u32)> =
            (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
        let mut coloring = vec![0u8; n];
        loop {
            for mask in 0..(1u64 << edge_slots.len()) {
                let edges: Vec<(u32, u32)> = edge_slots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                let g = ColoredGraph::new(
                    coloring.iter().map(|&c| Color(c)).collect(),
                    &edges,
                )
                .unwrap();
                if !g.is_connected() || !g.is_proper() {
                    continue;
                }
                let p = Position::from_graph(&g).unwrap();
                if p.vertex_count() == n {
                    keys.insert(p.canonical_key());
                }
            }
            // next coloring
            let mut i = 0;
            loop {
                if i == n {
                    return keys.len();
                }
                coloring[i] += 1;
                if (coloring[i] as usize) < colors {
                    break;
                }
                coloring[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn tiny_levels_have_the_expected_counts() {
        let counts = count_levels(3, 2);
        assert_eq!(counts[0], 1, "a single vertex always normalizes to color 0");
        assert_eq!(counts[1], 1, "one edge");
        assert_eq!(counts[2], 2, "3-path with center color 0 or color 1");
    }

    #[test]
    fn counts_match_brute_force_enumeration() {
        for colors in [2usize, 3] {
            let counts = count_levels(4, colors);
            for n in 1..=4usize {
                assert_eq!(
                    counts[n - 1],
                    brute_force_count(n, colors),
                    "n={n} colors={colors}"
                );
            }
        }
    }

    #[test]
    fn guard_rejects_oversized_requests() {
        let cfg = SearchConfig::new(11, 2);
        assert!(matches!(
            enumerate_positions(&cfg).map(|_| ()),
            Err(SearchError::GuardExceeded { .. })
        ));
        let mut unguarded = SearchConfig::new(11, 2);
        unguarded.allow_unguarded = true;
        assert!(unguarded.check().is_ok());
    }

    #[test]
    fn spectrum_small_report() {
        let solver = Solver::new();
        let report = spectrum(&SearchConfig::new(3, 2), &solver).unwrap();
        assert_eq!(report.levels.len(), 3);
        let level3 = &report.levels[2];
        assert_eq!(level3.positions, 2);
        assert_eq!(level3.max_grundy, 2);
        assert_eq!(level3.swap_merged_positions, 1, "the two 3-vertex positions differ by a color swap");
        // Witness re-parses and re-solves to the claimed value.
        let witness = crate::parse::parse_graph(&level3.max_witness).unwrap();
        assert_eq!(solver.grundy(&witness).unwrap().0, level3.max_grundy);
    }
}
