//! Built-in real-flag positions and their reports.
//!
//! Each flag ships as a reviewable graph-file asset; `# label` comment lines
//! inside the asset name individual vertices (e.g. the Azores shield) so
//! reports can describe moves in flag terms.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::graph::{Move, Position};
use crate::parse::{self, Palette};
use crate::solver::{Nimber, Outcome, Solver, SolverError, TableStats};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagId {
    Us,
    Azores,
    Canada,
    France,
    Maine,
}

pub const ALL_FLAGS: [FlagId; 5] =
    [FlagId::Us, FlagId::Azores, FlagId::Canada, FlagId::France, FlagId::Maine];

impl FlagId {
    pub fn name(self) -> &'static str {
        match self {
            FlagId::Us => "us",
            FlagId::Azores => "azores",
            FlagId::Canada => "canada",
            FlagId::France => "france",
            FlagId::Maine => "maine",
        }
    }

    fn asset(self) -> &'static str {
        match self {
            FlagId::Us => include_str!("assets/us.graph"),
            FlagId::Azores => include_str!("assets/azores.graph"),
            FlagId::Canada => include_str!("assets/canada.graph"),
            FlagId::France => include_str!("assets/france.graph"),
            FlagId::Maine => include_str!("assets/maine.graph"),
        }
    }
}

impl fmt::Display for FlagId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FlagId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_FLAGS
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown flag `{s}` (expected one of us, azores, canada, france, maine)"))
    }
}

/// The embedded position for a flag.
pub fn flag_position(id: FlagId) -> Position {
    flag_data(id).0
}

/// Position plus color names and per-vertex labels from the asset.
pub fn flag_data(id: FlagId) -> (Position, Palette, Vec<Option<String>>) {
    let text = id.asset();
    let (position, palette) = parse::parse_graph_with_palette(text)
        .unwrap_or_else(|e| panic!("embedded {id} asset is valid: {e}"));
    // Assets are proper and connected, so file order is vertex order.
    let mut labels = vec![None; position.vertex_count()];
    let mut file_index: HashMap<u64, usize> = HashMap::new();
    for line in text.lines() {
        let t = line.trim();
        if t.starts_with("v ") {
            if let Some(Ok(vid)) = t.split_whitespace().nth(1).map(str::parse::<u64>) {
                let next = file_index.len();
                file_index.entry(vid).or_insert(next);
            }
        }
    }
    for line in text.lines() {
        if let Some(rest) = line.trim().strip_prefix("# label ") {
            let mut parts = rest.split_whitespace();
            if let (Some(id_tok), Some(label)) = (parts.next(), parts.next()) {
                if let Some(&idx) = id_tok.parse::<u64>().ok().and_then(|v| file_index.get(&v)) {
                    labels[idx] = Some(label.to_string());
                }
            }
        }
    }
    (position, palette, labels)
}

/// Index of the labeled vertex, if the asset names one that way.
pub fn labeled_vertex(id: FlagId, label: &str) -> Option<usize> {
    flag_data(id).2.iter().position(|l| l.as_deref() == Some(label))
}

#[derive(Clone, Debug, Serialize)]
pub struct WinningMoveReport {
    pub vertex: usize,
    pub vertex_label: Option<String>,
    pub new_color: u8,
    pub new_color_name: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagReport {
    pub flag: FlagId,
    pub vertex_count: usize,
    pub color_count: usize,
    pub outcome: Outcome,
    /// Exact value; computed only when cheap enough (small flags), since the
    /// outcome alone settles who wins.
    pub grundy: Option<Nimber>,
    pub winning_moves: Vec<WinningMoveReport>,
    pub stats: TableStats,
}

/// Vertex counts above which reports skip the exact Grundy value.
const GRUNDY_REPORT_LIMIT: usize = 24;

/// Solve a flag and report outcome, value (for small flags), and all winning
/// first moves.
pub fn flag_report(id: FlagId, solver: &Solver) -> Result<FlagReport, SolverError> {
    let (position, palette, labels) = flag_data(id);
    let winning = solver.winning_moves(&position)?;
    let outcome = if winning.is_empty() { Outcome::P } else { Outcome::N };
    debug_assert_eq!(outcome, solver.outcome(&position)?);
    let grundy = if position.vertex_count() <= GRUNDY_REPORT_LIMIT {
        Some(solver.grundy(&position)?)
    } else {
        None
    };
    let winning_moves = winning
        .into_iter()
        .map(|(m, _): (Move, Nimber)| WinningMoveReport {
            vertex: m.vertex,
            vertex_label: labels[m.vertex].clone(),
            new_color: m.new_color.0,
            new_color_name: palette
                .get(m.new_color.0 as usize)
                .and_then(|n| n.clone()),
        })
        .collect();
    Ok(FlagReport {
        flag: id,
        vertex_count: position.vertex_count(),
        color_count: position.color_count(),
        outcome,
        grundy,
        winning_moves,
        stats: solver.stats(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, star_value, FamilySpec};
    use crate::graph::Color;

    #[test]
    fn assets_have_the_documented_shapes() {
        let us = flag_position(FlagId::Us);
        assert_eq!(us.vertex_count(), 64);
        assert_eq!(us.color_count(), 3);
        let azores = flag_position(FlagId::Azores);
        assert_eq!(azores.vertex_count(), 51);
        assert_eq!(azores.color_count(), 4);
        assert_eq!(flag_position(FlagId::Canada).vertex_count(), 4);
        assert_eq!(flag_position(FlagId::France).vertex_count(), 3);
        assert_eq!(flag_position(FlagId::Maine).vertex_count(), 3);
    }

    #[test]
    fn us_asset_matches_the_documented_encoding() {
        let (p, palette, labels) = flag_data(FlagId::Us);
        let g = p.graph();
        let union = labeled_vertex(FlagId::Us, "union").unwrap();
        // 50 star pendants plus the first 8 of 13 stripes.
        assert_eq!(g.degree(union), 58);
        let stars: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| labels[v].as_deref().is_some_and(|l| l.starts_with("star")))
            .collect();
        assert_eq!(stars.len(), 50);
        assert!(stars.iter().all(|&v| g.degree(v) == 1));
        let stripes: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| labels[v].as_deref().is_some_and(|l| l.starts_with("stripe")))
            .collect();
        assert_eq!(stripes.len(), 13);
        // The stripes alternate red/white along a path with two ends.
        let red = palette.iter().position(|n| n.as_deref() == Some("red")).unwrap() as u8;
        let red_stripes = stripes.iter().filter(|&&v| g.color(v) == Color(red)).count();
        assert_eq!(red_stripes, 7);
        let union_stripe_edges =
            stripes.iter().filter(|&&v| g.neighbors(union).contains(&(v as u32))).count();
        assert_eq!(union_stripe_edges, 8);
    }

    #[test]
    fn azores_asset_matches_the_documented_encoding() {
        let (p, _, labels) = flag_data(FlagId::Azores);
        let g = p.graph();
        assert_eq!(g.edge_count(), 52);
        let shield = labeled_vertex(FlagId::Azores, "shield").unwrap();
        assert_eq!(g.degree(shield), 9, "hub + seven castles + d");
        let hub = labeled_vertex(FlagId::Azores, "hub").unwrap();
        assert_eq!(g.degree(hub), 6, "five quinas + shield");
        let d = labeled_vertex(FlagId::Azores, "d").unwrap();
        assert_eq!(g.degree(d), 8, "shield + four pendants + two mids + y");
        let y = labeled_vertex(FlagId::Azores, "y").unwrap();
        assert_eq!(g.degree(y), 7, "d + four pendants + two mids");
        assert!(g.neighbors(d).contains(&(y as u32)), "the bands touch directly");
        let quinas: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| labels[v].as_deref().is_some_and(|l| l.starts_with("blue")))
            .collect();
        assert_eq!(quinas.len(), 5);
        assert!(quinas.iter().all(|&v| g.degree(v) == 6), "five bezants + hub each");
    }

    #[test]
    fn canada_is_a_three_pointed_star() {
        let canada = flag_position(FlagId::Canada);
        let star = build(&FamilySpec::Star(3)).unwrap();
        assert_eq!(canada.canonical_key(), star.canonical_key());
        let s = Solver::new();
        assert_eq!(s.grundy(&canada).unwrap(), star_value(3));
    }

    #[test]
    fn small_flag_values() {
        let s = Solver::new();
        assert_eq!(s.grundy(&flag_position(FlagId::Canada)).unwrap(), Nimber(1));
        assert_eq!(s.grundy(&flag_position(FlagId::France)).unwrap(), Nimber(0));
        assert_eq!(s.grundy(&flag_position(FlagId::Maine)).unwrap(), Nimber(0));
    }

    #[test]
    fn three_colors_break_the_path_rule() {
        // France is a 3-colored 3-vertex path worth 0; the 2-colored one is *2.
        let s = Solver::new();
        let france = flag_position(FlagId::France);
        assert_eq!(france.color_count(), 3);
        assert_eq!(s.grundy(&france).unwrap(), Nimber(0));
        let two_colored = build(&FamilySpec::Path(2)).unwrap();
        assert_eq!(s.grundy(&two_colored).unwrap(), Nimber(2));
    }

    #[test]
    fn azores_labels_resolve() {
        let (p, palette, labels) = flag_data(FlagId::Azores);
        let shield = labeled_vertex(FlagId::Azores, "shield").unwrap();
        assert_eq!(labels[shield].as_deref(), Some("shield"));
        // The shield is the only red vertex.
        let red = palette.iter().position(|n| n.as_deref() == Some("red")).unwrap();
        assert_eq!(p.graph().color(shield), Color(red as u8));
        assert!(labeled_vertex(FlagId::Azores, "hub").is_some());
    }

    #[test]
    fn small_flag_reports() {
        let s = Solver::new();
        let canada = flag_report(FlagId::Canada, &s).unwrap();
        assert_eq!(canada.outcome, Outcome::N);
        assert_eq!(canada.grundy, Some(Nimber(1)));
        assert!(!canada.winning_moves.is_empty());
        let maine = flag_report(FlagId::Maine, &s).unwrap();
        assert_eq!(maine.outcome, Outcome::P);
        assert_eq!(maine.grundy, Some(Nimber(0)));
        assert!(maine.winning_moves.is_empty());
    }
}
