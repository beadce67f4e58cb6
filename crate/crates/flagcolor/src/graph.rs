//! Colored simple graphs, game positions in contracted form, and move application.
//!
//! A position is a connected, properly colored graph: no edge joins two
//! vertices of the same color. Improper input is reduced to this quotient form
//! by contracting every monochromatic connected component to a single vertex.

use std::fmt;

use thiserror::Error;

use crate::canon::{self, CanonicalKey};

/// Hard cap on the number of distinct colors in one graph.
pub const MAX_COLORS: usize = 255;

/// A vertex color, identified by a small non-negative id.
///
/// Positions normalize the ids they use to a contiguous range starting at 0,
/// preserving the relative order of the original ids. Display names (as used
/// by the file formats) are kept out of the graph itself; see
/// [`crate::parse::Palette`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Color(pub u8);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge endpoint {0} is not a vertex")]
    VertexOutOfRange(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph uses {0} colors; at most {MAX_COLORS} are supported")]
    TooManyColors(usize),
    #[error("illegal move: vertex {vertex} to color {color}")]
    IllegalMove { vertex: usize, color: Color },
}

/// A simple undirected graph with one color per vertex.
///
/// Adjacency lists are kept sorted and symmetric; parallel edges collapse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredGraph {
    colors: Vec<Color>,
    adj: Vec<Vec<u32>>,
}

impl ColoredGraph {
    pub fn new(colors: Vec<Color>, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let n = colors.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            let (u, v) = (u as usize, v as usize);
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let g = ColoredGraph { colors, adj };
        if g.distinct_colors().len() > MAX_COLORS {
            return Err(GraphError::TooManyColors(g.distinct_colors().len()));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as (u, v) pairs with u < v, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    /// Distinct color ids used, ascending.
    pub fn distinct_colors(&self) -> Vec<Color> {
        let mut cs = self.colors.clone();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    pub fn color_count(&self) -> usize {
        self.distinct_colors().len()
    }

    pub fn is_proper(&self) -> bool {
        self.edges().all(|(u, v)| self.colors[u as usize] != self.colors[v as usize])
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut found = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    found += 1;
                    stack.push(w);
                }
            }
        }
        found == n
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s as u32];
            seen[s] = true;
            let mut stack = vec![s as u32];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The induced subgraph on `keep` (sorted vertex ids), relabeled 0..len.
    pub fn induced(&self, keep: &[u32]) -> ColoredGraph {
        let mut index = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let colors = keep.iter().map(|&v| self.colors[v as usize]).collect();
        let adj = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<u32> = self.adj[v as usize]
                    .iter()
                    .map(|&w| index[w as usize])
                    .filter(|&w| w != u32::MAX)
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        ColoredGraph { colors, adj }
    }

    pub(crate) fn removed(&self, v: usize) -> ColoredGraph {
        let keep: Vec<u32> = (0..self.vertex_count() as u32)
            .filter(|&u| u as usize != v)
            .collect();
        self.induced(&keep)
    }

    /// True if removing `v` leaves the graph connected and non-empty.
    pub(crate) fn is_removable(&self, v: usize) -> bool {
        self.vertex_count() >= 2 && self.removed(v).is_connected()
    }
}

/// A legal play: recolor `vertex` to `new_color`, which must be the color of
/// one of its neighbors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Move {
    pub vertex: usize,
    pub new_color: Color,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.vertex, self.new_color)
    }
}

/// A game position: connected, properly colored, color ids normalized to a
/// contiguous range starting at 0 (relative order of the input ids preserved).
///
/// The position is terminal exactly when a single vertex remains.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Position {
    graph: ColoredGraph,
}

impl Position {
    /// Validate, contract to the proper quotient, and normalize colors.
    pub fn from_graph(graph: &ColoredGraph) -> Result<Position, GraphError> {
        if graph.vertex_count() == 0 {
            return Err(GraphError::Empty);
        }
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut quotient = contract_graph(graph);
        normalize_colors(&mut quotient);
        debug_assert!(quotient.is_proper());
        debug_assert!(quotient.is_connected());
        Ok(Position { graph: quotient })
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn color_count(&self) -> usize {
        self.graph.color_count()
    }

    pub fn is_terminal(&self) -> bool {
        self.vertex_count() == 1
    }

    /// All legal moves, ordered by vertex index then color id.
    ///
    /// On the contracted form these are exactly the pairs (v, c') where c'
    /// occurs among the neighbors of v; empty iff the position is terminal.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut moves = Vec::new();
        for v in 0..self.vertex_count() {
            let mut colors: Vec<Color> = self
                .graph
                .neighbors(v)
                .iter()
                .map(|&w| self.graph.color(w as usize))
                .collect();
            colors.sort_unstable();
            colors.dedup();
            moves.extend(colors.into_iter().map(|c| Move { vertex: v, new_color: c }));
        }
        moves
    }

    /// Recolor, contract, renormalize. The vertex count strictly decreases.
    pub fn apply_move(&self, m: Move) -> Result<Position, GraphError> {
        let legal = m.vertex < self.vertex_count()
            && m.new_color != self.graph.color(m.vertex)
            && self
                .graph
                .neighbors(m.vertex)
                .iter()
                .any(|&w| self.graph.color(w as usize) == m.new_color);
        if !legal {
            return Err(GraphError::IllegalMove { vertex: m.vertex, color: m.new_color });
        }
        let mut g = self.graph.clone();
        g.colors[m.vertex] = m.new_color;
        let next = Position::from_graph(&g)?;
        debug_assert!(next.vertex_count() < self.vertex_count());
        Ok(next)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canon::canonical_key(self)
    }

    /// The same position with vertices relabeled by `perm` (old index i goes
    /// to new index `perm[i]`). Useful for invariance checks.
    pub fn permuted(&self, perm: &[u32]) -> Position {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n);
        let mut colors = vec![Color(0); n];
        for v in 0..n {
            colors[perm[v] as usize] = self.graph.color(v);
        }
        let edges: Vec<(u32, u32)> = self
            .graph
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        let g = ColoredGraph::new(colors, &edges).expect("permutation preserves validity");
        Position::from_graph(&g).expect("permutation preserves position invariants")
    }

    /// The same position with color ids permuted by `map` (old id i becomes
    /// `map[i]`); `map` must be a permutation of 0..color_count.
    pub fn recolored(&self, map: &[u8]) -> Position {
        let colors = self
            .graph
            .colors()
            .iter()
            .map(|c| Color(map[c.0 as usize]))
            .collect();
        let edges: Vec<(u32, u32)> = self.graph.edges().collect();
        let g = ColoredGraph::new(colors, &edges).expect("recoloring preserves validity");
        Position::from_graph(&g).expect("recoloring preserves position invariants")
    }
}

/// Contract a connected graph to its proper quotient form.
///
/// Each monochromatic connected component becomes one vertex; the result is
/// properly colored and the operation is idempotent.
pub fn contract(graph: &ColoredGraph) -> Result<Position, GraphError> {
    Position::from_graph(graph)
}

struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n as u32).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            let p = self.parent[v as usize];
            self.parent[v as usize] = self.parent[p as usize];
            v = self.parent[v as usize];
        }
        v
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (hi, lo) = if self.rank[ra as usize] >= self.rank[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo as usize] = hi;
        if self.rank[hi as usize] == self.rank[lo as usize] {
            self.rank[hi as usize] += 1;
        }
    }
}

/// Quotient by monochromatic components. Quotient vertices are numbered in
/// order of their first member, so a proper input maps to itself.
fn contract_graph(graph: &ColoredGraph) -> ColoredGraph {
    let n = graph.vertex_count();
    let mut uf = UnionFind::new(n);
    for (u, v) in graph.edges() {
        if graph.color(u as usize) == graph.color(v as usize) {
            uf.union(u, v);
        }
    }
    let mut index = vec![u32::MAX; n];
    let mut colors = Vec::new();
    for v in 0..n as u32 {
        let r = uf.find(v);
        if index[r as usize] == u32::MAX {
            index[r as usize] = colors.len() as u32;
            colors.push(graph.color(r as usize));
        }
        index[v as usize] = index[r as usize];
    }
    let mut edges: Vec<(u32, u32)> = graph
        .edges()
        .filter_map(|(u, v)| {
            let (a, b) = (index[u as usize], index[v as usize]);
            match a.cmp(&b) {
                std::cmp::Ordering::Less => Some((a, b)),
                std::cmp::Ordering::Greater => Some((b, a)),
                std::cmp::Ordering::Equal => None,
            }
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    ColoredGraph::new(colors, &edges).expect("quotient of a valid graph is valid")
}

/// Remap color ids to 0..k-1 preserving their relative order.
fn normalize_colors(graph: &mut ColoredGraph) {
    let used = graph.distinct_colors();
    if used.last().map(|c| c.0 as usize) == Some(used.len() - 1) {
        return; // already contiguous from 0
    }
    let mut map = [0u8; 256];
    for (i, c) in used.iter().enumerate() {
        map[c.0 as usize] = i as u8;
    }
    for c in &mut graph.colors {
        *c = Color(map[c.0 as usize]);
    }
}
