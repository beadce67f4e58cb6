//! Graph family generators and their closed-form value oracles.
//!
//! Every oracle is transcribed as literal table data (core cells plus the
//! periodic-tail folding rule) so a transcription slip is a one-line fix.
//! [`route_errata`] lists any cell where exhaustive search disagrees with the
//! published value; the equivalence tests consult it. It is expected to stay
//! empty.

use thiserror::Error;

use crate::graph::{Color, ColoredGraph, GraphError, Position};
use crate::solver::{Nimber, Outcome};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("route path lengths must share one parity")]
    MixedParity,
    #[error("route needs at least one path of positive length")]
    NoPositivePath,
    #[error("degenerate route: distinct endpoints with no connecting path")]
    DegenerateRoute,
    #[error("route path length {0} is outside the supported alphabet")]
    OutOfAlphabet(u32),
    #[error("complete bipartite parts must be non-empty")]
    EmptyPart,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parameterized descriptor of a generated graph family.
///
/// * `Star(i)`: one center with `i` pendants.
/// * `Diamond(p, d)`: center with `p` pendants and `d` four-cycle diamonds.
/// * `Path(x)`: path with `x` edges (so `x + 1` vertices).
/// * `Broom(i, l)`: path of length `l` with `i` extra pendants at one end.
/// * `CompleteBipartite(m, n)`.
/// * `Route(lengths)`: two terminals joined by internally disjoint paths of
///   the given lengths; length 0 merges the terminals, length 1 is a direct
///   edge. All lengths must share a parity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilySpec {
    Star(u32),
    Diamond(u32, u32),
    Path(u32),
    Broom(u32, u32),
    CompleteBipartite(u32, u32),
    Route(Vec<u32>),
}

/// One of the four route shapes, with path-length multiplicities.
///
/// Even categories count paths of length 2, 4, 6; odd categories count
/// lengths 3 and 5. `EvenMerged` has the terminals merged (a 0-length path),
/// `OddAdjacent` has them joined by an edge (a 1-length path).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RouteCategory {
    EvenMerged { two: u32, four: u32, six: u32 },
    OddAdjacent { three: u32, five: u32 },
    EvenDistinct { two: u32, four: u32, six: u32 },
    OddNonadjacent { three: u32, five: u32 },
}

impl RouteCategory {
    /// The multiset of path lengths this category denotes.
    pub fn lengths(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut push = |len: u32, count: u32| out.extend(std::iter::repeat(len).take(count as usize));
        match *self {
            RouteCategory::EvenMerged { two, four, six } => {
                push(0, 1);
                push(2, two);
                push(4, four);
                push(6, six);
            }
            RouteCategory::OddAdjacent { three, five } => {
                push(1, 1);
                push(3, three);
                push(5, five);
            }
            RouteCategory::EvenDistinct { two, four, six } => {
                push(2, two);
                push(4, four);
                push(6, six);
            }
            RouteCategory::OddNonadjacent { three, five } => {
                push(3, three);
                push(5, five);
            }
        }
        out
    }
}

/// Classify a route length multiset into its table category.
pub fn categorize(lengths: &[u32]) -> Result<RouteCategory, FamilyError> {
    validate_route(lengths)?;
    let count = |len: u32| lengths.iter().filter(|&&l| l == len).count() as u32;
    let odd = lengths.iter().any(|&l| l % 2 == 1);
    if let Some(&bad) = lengths.iter().find(|&&l| l > 6 || (odd && l > 5)) {
        return Err(FamilyError::OutOfAlphabet(bad));
    }
    Ok(if odd {
        if count(1) > 0 {
            RouteCategory::OddAdjacent { three: count(3), five: count(5) }
        } else {
            RouteCategory::OddNonadjacent { three: count(3), five: count(5) }
        }
    } else if count(0) > 0 {
        RouteCategory::EvenMerged { two: count(2), four: count(4), six: count(6) }
    } else {
        RouteCategory::EvenDistinct { two: count(2), four: count(4), six: count(6) }
    })
}

fn validate_route(lengths: &[u32]) -> Result<(), FamilyError> {
    if !lengths.iter().any(|&l| l > 0) {
        return Err(FamilyError::NoPositivePath);
    }
    let parities: Vec<u32> = lengths.iter().map(|&l| l % 2).collect();
    if parities.iter().any(|&p| p != parities[0]) {
        return Err(FamilyError::MixedParity);
    }
    Ok(())
}

/// Build the contracted, properly colored position a spec describes.
///
/// The center (or terminal `u`) gets color 0 and the proper 2-coloring
/// determines the rest, so generated positions are reproducible verbatim.
pub fn build(spec: &FamilySpec) -> Result<Position, FamilyError> {
    let g = match spec {
        FamilySpec::Star(i) => star_graph(*i),
        FamilySpec::Diamond(p, d) => diamond_graph(*p, *d),
        FamilySpec::Path(x) => path_graph(*x),
        FamilySpec::Broom(i, l) => broom_graph(*i, *l),
        FamilySpec::CompleteBipartite(m, n) => {
            if *m == 0 || *n == 0 {
                return Err(FamilyError::EmptyPart);
            }
            bipartite_graph(*m, *n)
        }
        FamilySpec::Route(lengths) => {
            validate_route(lengths)?;
            route_graph(lengths)?
        }
    };
    Ok(Position::from_graph(&g)?)
}

fn star_graph(i: u32) -> ColoredGraph {
    let mut colors = vec![Color(0)];
    colors.extend(std::iter::repeat(Color(1)).take(i as usize));
    let edges: Vec<(u32, u32)> = (1..=i).map(|v| (0, v)).collect();
    ColoredGraph::new(colors, &edges).expect("star is valid")
}

fn diamond_graph(p: u32, d: u32) -> ColoredGraph {
    // Center 0, then p pendants, then per diamond the triple (u, w, x).
    let mut colors = vec![Color(0)];
    let mut edges = Vec::new();
    for _ in 0..p {
        let v = colors.len() as u32;
        colors.push(Color(1));
        edges.push((0, v));
    }
    for _ in 0..d {
        let u = colors.len() as u32;
        colors.push(Color(1));
        colors.push(Color(1));
        colors.push(Color(0));
        let (w, x) = (u + 1, u + 2);
        edges.extend([(0, u), (0, w), (u, x), (w, x)]);
    }
    ColoredGraph::new(colors, &edges).expect("diamond graph is valid")
}

fn path_graph(x: u32) -> ColoredGraph {
    let colors: Vec<Color> = (0..=x).map(|i| Color((i % 2) as u8)).collect();
    let edges: Vec<(u32, u32)> = (0..x).map(|i| (i, i + 1)).collect();
    ColoredGraph::new(colors, &edges).expect("path is valid")
}

fn broom_graph(i: u32, l: u32) -> ColoredGraph {
    // Path u = 0 .. v = l, then i pendants on v.
    let mut colors: Vec<Color> = (0..=l).map(|t| Color((t % 2) as u8)).collect();
    let mut edges: Vec<(u32, u32)> = (0..l).map(|t| (t, t + 1)).collect();
    let pendant_color = Color(((l + 1) % 2) as u8);
    for _ in 0..i {
        let w = colors.len() as u32;
        colors.push(pendant_color);
        edges.push((l, w));
    }
    ColoredGraph::new(colors, &edges).expect("broom is valid")
}

fn bipartite_graph(m: u32, n: u32) -> ColoredGraph {
    let mut colors = vec![Color(0); m as usize];
    colors.extend(std::iter::repeat(Color(1)).take(n as usize));
    let mut edges = Vec::new();
    for a in 0..m {
        for b in 0..n {
            edges.push((a, m + b));
        }
    }
    ColoredGraph::new(colors, &edges).expect("complete bipartite is valid")
}

fn route_graph(lengths: &[u32]) -> Result<ColoredGraph, FamilyError> {
    let merged = lengths.contains(&0);
    let positive: Vec<u32> = lengths.iter().copied().filter(|&l| l > 0).collect();
    if !merged && positive.is_empty() {
        return Err(FamilyError::DegenerateRoute);
    }
    let mut colors = vec![Color(0)]; // u
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let u = 0u32;
    let v = if merged {
        u
    } else {
        let parity = positive[0] % 2;
        colors.push(Color(parity as u8));
        1u32
    };
    for &len in &positive {
        if len == 1 {
            // Direct edge; repeats collapse since the graph is simple.
            edges.push((u, v));
            continue;
        }
        let mut prev = u;
        for step in 1..len {
            let w = colors.len() as u32;
            colors.push(Color((step % 2) as u8));
            edges.push((prev.min(w), prev.max(w)));
            prev = w;
        }
        edges.push((prev.min(v), prev.max(v)));
    }
    Ok(ColoredGraph::new(colors, &edges).expect("route graph is valid"))
}

/// Star values: 0 when edgeless, then * and *2 alternating.
pub fn star_value(i: u32) -> Nimber {
    Nimber(if i == 0 {
        0
    } else if i % 2 == 1 {
        1
    } else {
        2
    })
}

// Value table for the pendant-and-diamond family, rows selected by pendant
// count p (0 / odd / even >= 2), columns by diamond count d (0..4 explicit,
// then alternating tail).
const DIAMOND_ZERO_P: [u32; 7] = [0, 0, 0, 0, 0, 0, 0];
const DIAMOND_ODD_P: [u32; 7] = [1, 3, 1, 2, 1, 1, 2];
const DIAMOND_EVEN_P: [u32; 7] = [2, 0, 0, 0, 0, 0, 0];

pub fn diamond_value(p: u32, d: u32) -> Nimber {
    let row = if p == 0 {
        &DIAMOND_ZERO_P
    } else if p % 2 == 1 {
        &DIAMOND_ODD_P
    } else {
        &DIAMOND_EVEN_P
    };
    let col = if d <= 4 { d as usize } else { 5 + (d % 2) as usize };
    Nimber(row[col])
}

/// Path of length x has value *(x mod 3).
pub fn path_value(x: u32) -> Nimber {
    Nimber(x % 3)
}

// Broom value table: rows i in {0, 1, 2, odd >= 3, even >= 4}; columns l in
// {0, 1, 2} then by l mod 3 for l >= 3.
const BROOM_ROWS: [[u32; 6]; 5] = [
    [0, 1, 2, 0, 1, 2], // i = 0
    [1, 2, 0, 1, 2, 0], // i = 1
    [2, 1, 3, 0, 1, 2], // i = 2 (the *3 exception sits at l = 2)
    [1, 2, 0, 1, 2, 0], // odd i >= 3
    [2, 1, 2, 0, 1, 2], // even i >= 4
];

pub fn broom_value(i: u32, l: u32) -> Nimber {
    let row = match i {
        0 => 0,
        1 => 1,
        2 => 2,
        _ if i % 2 == 1 => 3,
        _ => 4,
    };
    let col = if l <= 2 { l as usize } else { 3 + (l % 3) as usize };
    Nimber(BROOM_ROWS[row][col])
}

/// One published broom cell whose printed value disagrees with exhaustive
/// search.
#[derive(Clone, Copy, Debug)]
pub struct BroomErratum {
    pub printed: Nimber,
    pub computed: Nimber,
}

/// Adjudicated disagreement with the printed broom table, if any, for the
/// given cell.
///
/// The published even-pendant tail row lists *2 at handle length 2, but the
/// position's options there are a *-valued odd star (play the handle end),
/// a *2-valued even star (play the handle middle), a * edge (play the
/// junction), and a 0-valued broom (play a pendant), so the value is
/// mex{1,2,1,0} = *3 for every even pendant count >= 2, exactly as the
/// printed row for two pendants already shows. Confirmed by two independent
/// solvers.
pub fn broom_erratum(i: u32, l: u32) -> Option<BroomErratum> {
    if i >= 4 && i % 2 == 0 && l == 2 {
        Some(BroomErratum { printed: Nimber(2), computed: Nimber(3) })
    } else {
        None
    }
}

/// A properly 2-colored complete bipartite graph is in P exactly when both
/// parts have at least two vertices.
pub fn bipartite_outcome(m: u32, n: u32) -> Outcome {
    if m >= 2 && n >= 2 {
        Outcome::P
    } else {
        Outcome::N
    }
}

// Route tables. Rows are indexed by the count of shorter paths (i), columns
// by the count of longer paths (j): explicit cells 0..3, then the repeating
// 2x2 block folded by parity (row 4 = even tail, row 5 = odd tail).
type RouteTable = [[u32; 6]; 6];

const MERGED_SIX_1: RouteTable = [
    [1, 1, 1, 1, 1, 1],
    [2, 0, 3, 0, 3, 0],
    [1, 1, 1, 1, 1, 1],
    [2, 0, 3, 0, 3, 0],
    [1, 1, 1, 1, 1, 1],
    [2, 0, 3, 0, 3, 0],
];

const MERGED_SIX_2: RouteTable = [
    [2, 0, 2, 0, 2, 0],
    [1, 4, 1, 4, 1, 4],
    [2, 0, 2, 0, 2, 0],
    [1, 4, 1, 4, 1, 4],
    [2, 0, 2, 0, 2, 0],
    [1, 4, 1, 4, 1, 4],
];

const MERGED_SIX_3PLUS: RouteTable = [
    [1, 0, 1, 0, 1, 0],
    [2, 3, 2, 3, 2, 3],
    [1, 0, 1, 0, 1, 0],
    [2, 3, 2, 3, 2, 3],
    [1, 0, 1, 0, 1, 0],
    [2, 3, 2, 3, 2, 3],
];

const ADJACENT_ODD: RouteTable = [
    [1, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 0],
];

const DISTINCT_SIX_0: RouteTable = [
    [0, 1, 0, 0, 0, 0],
    [2, 1, 2, 1, 2, 1],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 2, 1, 2, 1],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 2, 1, 2, 1],
];

const DISTINCT_SIX_1: RouteTable = [
    [0, 1, 1, 1, 1, 1],
    [0, 3, 0, 3, 0, 3],
    [0, 1, 0, 1, 0, 1],
    [0, 3, 0, 3, 0, 3],
    [0, 1, 0, 1, 0, 1],
    [0, 3, 0, 3, 0, 3],
];

const DISTINCT_SIX_2: RouteTable = [
    [0, 2, 0, 2, 0, 2],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
];

const DISTINCT_SIX_3PLUS: RouteTable = [
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
];

const NONADJACENT_ODD: RouteTable = [
    [0, 2, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 0],
    [1, 3, 1, 2, 1, 2],
    [2, 0, 0, 0, 0, 0],
    [1, 3, 1, 2, 1, 2],
    [2, 0, 0, 0, 0, 0],
];

fn fold(x: u32) -> usize {
    if x <= 3 {
        x as usize
    } else {
        4 + (x % 2) as usize
    }
}

fn table_cell(table: &RouteTable, i: u32, j: u32) -> Nimber {
    Nimber(table[fold(i)][fold(j)])
}

/// Closed-form route value for a category cell.
///
/// Merged routes without 6-paths coincide with the pendant-and-diamond
/// family and dispatch there. Degenerate cells (distinct endpoints with no
/// path at all) are rejected.
pub fn route_value(cat: &RouteCategory) -> Result<Nimber, FamilyError> {
    match *cat {
        RouteCategory::EvenMerged { two, four, six } => Ok(match six {
            0 => diamond_value(two, four),
            1 => table_cell(&MERGED_SIX_1, two, four),
            2 => table_cell(&MERGED_SIX_2, two, four),
            _ => table_cell(&MERGED_SIX_3PLUS, two, four),
        }),
        RouteCategory::OddAdjacent { three, five } => {
            Ok(table_cell(&ADJACENT_ODD, three, five))
        }
        RouteCategory::EvenDistinct { two, four, six } => {
            if two == 0 && four == 0 && six == 0 {
                return Err(FamilyError::DegenerateRoute);
            }
            Ok(match six {
                0 => table_cell(&DISTINCT_SIX_0, two, four),
                1 => table_cell(&DISTINCT_SIX_1, two, four),
                2 => table_cell(&DISTINCT_SIX_2, two, four),
                _ => table_cell(&DISTINCT_SIX_3PLUS, two, four),
            })
        }
        RouteCategory::OddNonadjacent { three, five } => {
            if three == 0 && five == 0 {
                return Err(FamilyError::DegenerateRoute);
            }
            Ok(table_cell(&NONADJACENT_ODD, three, five))
        }
    }
}

/// True exactly when the route cell is a zero (previous player wins).
pub fn route_is_p_position(cat: &RouteCategory) -> Result<bool, FamilyError> {
    Ok(route_value(cat)?.0 == 0)
}

/// One published route cell whose printed value disagrees with exhaustive
/// search.
#[derive(Clone, Copy, Debug)]
pub struct RouteErratum {
    pub category: RouteCategory,
    pub printed: Nimber,
    pub computed: Nimber,
}

/// Route table cells where the printed value is wrong, as adjudicated by the
/// search engine. Expected to be empty.
pub fn route_errata() -> &'static [RouteErratum] {
    &[]
}

/// Every family reading of a position, for oracle cross-checks.
///
/// A graph can match several specs (a star is also a broom, a 4-cycle is both
/// a route and a diamond); every returned spec has been verified to rebuild
/// into a position canonically equal to `p`. Only 2-colored positions (or a
/// lone vertex) match, since the closed forms are for the 2-color game.
pub fn matching_specs(p: &Position) -> Vec<FamilySpec> {
    if p.vertex_count() > 1 && p.color_count() != 2 {
        return Vec::new();
    }
    let mut candidates = propose_specs(p);
    candidates.sort_by_key(spec_rank);
    candidates.dedup();
    let key = p.canonical_key();
    candidates
        .into_iter()
        .filter(|spec| {
            build(spec)
                .map(|built| built.canonical_key() == key)
                .unwrap_or(false)
        })
        .collect()
}

fn spec_rank(spec: &FamilySpec) -> (u8, u32, u32) {
    match spec {
        FamilySpec::Star(i) => (0, *i, 0),
        FamilySpec::Path(x) => (1, *x, 0),
        FamilySpec::Broom(i, l) => (2, *i, *l),
        FamilySpec::Diamond(p, d) => (3, *p, *d),
        FamilySpec::CompleteBipartite(m, n) => (4, *m, *n),
        FamilySpec::Route(ls) => (5, ls.len() as u32, ls.iter().sum()),
    }
}

/// Cheap shape-based candidates; each is confirmed or discarded by a
/// canonical rebuild in [`matching_specs`].
fn propose_specs(p: &Position) -> Vec<FamilySpec> {
    let g = p.graph();
    let n = p.vertex_count();
    let mut out = Vec::new();

    if n == 1 {
        return vec![FamilySpec::Star(0), FamilySpec::Path(0), FamilySpec::Broom(0, 0)];
    }

    // Star / path by degree profile.
    if (0..n).any(|v| g.degree(v) == n - 1) {
        out.push(FamilySpec::Star((n - 1) as u32));
    }
    if g.edge_count() == n - 1 && (0..n).all(|v| g.degree(v) <= 2) {
        out.push(FamilySpec::Path((n - 1) as u32));
    }

    // Broom: a tree whose unique branching vertex carries the pendants.
    if g.edge_count() == n - 1 {
        for v in 0..n {
            if g.degree(v) >= 3 {
                let pendants = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| g.degree(w as usize) == 1)
                    .count() as u32;
                let handle = (n as u32).saturating_sub(1 + pendants);
                out.push(FamilySpec::Broom(pendants, handle));
                if handle == 0 {
                    out.push(FamilySpec::Broom(pendants.saturating_sub(1), 1));
                }
            }
        }
    }

    // Diamond: vertex counts 1 + p + 3d.
    for d in 0..=(n as u32 - 1) / 3 {
        out.push(FamilySpec::Diamond(n as u32 - 1 - 3 * d, d));
    }

    // Complete bipartite from the color classes.
    let a = (0..n).filter(|&v| g.color(v) == Color(0)).count() as u32;
    let b = n as u32 - a;
    if a >= 1 && b >= 1 {
        out.push(FamilySpec::CompleteBipartite(a, b));
    }

    // Routes with distinct terminals (the degree-2 interior decomposition).
    if let Some(lengths) = distinct_route_lengths(g) {
        out.push(FamilySpec::Route(lengths));
    }
    // Routes with merged terminals: pendants count as 2-paths back to the
    // terminal, other excursions as longer loops.
    for u in 0..n {
        if let Some(lengths) = merged_route_lengths(g, u) {
            out.push(FamilySpec::Route(lengths));
        }
    }

    out
}

fn distinct_route_lengths(g: &ColoredGraph) -> Option<Vec<u32>> {
    let n = g.vertex_count();
    let special: Vec<usize> = (0..n).filter(|&v| g.degree(v) != 2).collect();
    let (u, v) = match special.len() {
         0 => {
            // A cycle reads as a single loop at a merged terminal.
            return Some(vec![0, n as u32]);
        }
        2 => (special[0], special[1]),
        _ => return None,
    };
    let mut lengths = Vec::new();
    if g.neighbors(u).contains(&(v as u32)) {
        lengths.push(1);
    }
    let mut seen = vec![false; n];
    for &w in g.neighbors(u) {
        let w = w as usize;
        if w == v || seen[w] {
            continue;
        }
        let mut len = 1u32;
        let (mut prev, mut cur) = (u, w);
        loop {
            seen[cur] = true;
            let next: Vec<usize> = g
                .neighbors(cur)
                .iter()
                .map(|&x| x as usize)
                .filter(|&x| x != prev)
                .collect();
            if next.len() != 1 {
                return None;
            }
            let nx = next[0];
            len += 1;
            if nx == v {
                break;
            }
            if nx == u || g.degree(nx) != 2 {
                return None;
            }
            prev = cur;
            cur = nx;
        }
        lengths.push(len);
    }
    if (0..n).any(|x| x != u && x != v && !seen[x]) {
        return None;
    }
    lengths.sort_unstable();
    validate_route(&lengths).ok()?;
    Some(lengths)
}

fn merged_route_lengths(g: &ColoredGraph, u: usize) -> Option<Vec<u32>> {
    let n = g.vertex_count();
    let mut lengths = vec![0u32];
    let mut seen = vec![false; n];
    for &w in g.neighbors(u) {
        let w = w as usize;
        if seen[w] {
            continue;
        }
        if g.degree(w) == 1 {
            // A pendant is a 2-path whose two edges to the merged terminal
            // collapsed in the simple graph.
            seen[w] = true;
            lengths.push(2);
            continue;
        }
        let mut len = 1u32;
        let (mut prev, mut cur) = (u, w);
        loop {
            seen[cur] = true;
            let next: Vec<usize> = g
                .neighbors(cur)
                .iter()
                .map(|&x| x as usize)
                .filter(|&x| x != prev)
                .collect();
            if next.len() != 1 {
                return None;
            }
            let nx = next[0];
            len += 1;
            if nx == u {
                break;
            }
            if g.degree(nx) != 2 || seen[nx] {
                return None;
            }
            prev = cur;
            cur = nx;
        }
        lengths.push(len);
    }
    if (0..n).any(|x| x != u && !seen[x]) {
        return None;
    }
    lengths.sort_unstable();
    validate_route(&lengths).ok()?;
    Some(lengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Solver;

    #[test]
    fn star_values_from_the_closed_form() {
        assert_eq!(star_value(0), Nimber(0));
        assert_eq!(star_value(5), Nimber(1));
        assert_eq!(star_value(8), Nimber(2));
    }

    #[test]
    fn diamond_table_cells() {
        assert_eq!(diamond_value(2, 0), Nimber(2));
        assert_eq!(diamond_value(1, 1), Nimber(3));
        assert_eq!(diamond_value(3, 3), Nimber(2));
        assert_eq!(diamond_value(0, 4), Nimber(0));
    }

    #[test]
    fn diamond_column_zero_equals_stars() {
        for p in 0..20 {
            assert_eq!(diamond_value(p, 0), star_value(p));
        }
    }

    #[test]
    fn path_values() {
        assert_eq!(path_value(0), Nimber(0));
        assert_eq!(path_value(4), Nimber(1));
        assert_eq!(path_value(11), Nimber(2));
    }

    #[test]
    fn broom_table_cells() {
        assert_eq!(broom_value(2, 2), Nimber(3));
        assert_eq!(broom_value(1, 5), Nimber(0));
        assert_eq!(broom_value(4, 2), Nimber(2));
        assert_eq!(broom_value(0, 7), Nimber(1));
    }

    #[test]
    fn broom_low_rows_are_paths() {
        for l in 0..15 {
            assert_eq!(broom_value(0, l), path_value(l));
            assert_eq!(broom_value(1, l), path_value(l + 1));
        }
    }

    #[test]
    fn bipartite_outcomes() {
        assert_eq!(bipartite_outcome(2, 2), Outcome::P);
        assert_eq!(bipartite_outcome(1, 4), Outcome::N);
        assert_eq!(bipartite_outcome(3, 4), Outcome::P);
    }

    #[test]
    fn route_table_cells() {
        let v = |c: &RouteCategory| route_value(c).unwrap();
        assert_eq!(v(&RouteCategory::EvenMerged { two: 1, four: 1, six: 1 }), Nimber(0));
        assert_eq!(v(&RouteCategory::EvenMerged { two: 0, four: 0, six: 1 }), Nimber(1));
        assert_eq!(v(&RouteCategory::OddAdjacent { three: 0, five: 0 }), Nimber(1));
        assert_eq!(v(&RouteCategory::EvenDistinct { two: 1, four: 1, six: 2 }), Nimber(1));
        assert_eq!(v(&RouteCategory::OddNonadjacent { three: 2, five: 0 }), Nimber(1));
    }

    #[test]
    fn route_zero_cells() {
        assert!(route_is_p_position(&RouteCategory::EvenMerged { two: 1, four: 1, six: 1 }).unwrap());
        assert!(route_is_p_position(&RouteCategory::OddAdjacent { three: 1, five: 0 }).unwrap());
        assert!(!route_is_p_position(&RouteCategory::OddAdjacent { three: 0, five: 0 }).unwrap());
        assert!(!route_is_p_position(&RouteCategory::EvenDistinct { two: 1, four: 0, six: 0 }).unwrap());
    }

    #[test]
    fn route_degenerate_cells_rejected() {
        assert!(route_value(&RouteCategory::EvenDistinct { two: 0, four: 0, six: 0 }).is_err());
        assert!(route_value(&RouteCategory::OddNonadjacent { three: 0, five: 0 }).is_err());
    }

    #[test]
    fn route_periodicity_matches_tail_rows() {
        for (i, j) in [(4u32, 5u32), (6, 7), (5, 4), (8, 9)] {
            for six in 0..5 {
                let a = route_value(&RouteCategory::EvenMerged { two: i, four: j, six }).unwrap();
                let b =
                    route_value(&RouteCategory::EvenMerged { two: i + 2, four: j + 2, six }).unwrap();
                assert_eq!(a, b);
            }
            let a = route_value(&RouteCategory::OddNonadjacent { three: i, five: j }).unwrap();
            let b = route_value(&RouteCategory::OddNonadjacent { three: i + 2, five: j + 2 }).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn build_shapes() {
        assert!(build(&FamilySpec::Star(0)).unwrap().is_terminal());
        let fig1 = build(&FamilySpec::Diamond(3, 2)).unwrap();
        assert_eq!(fig1.vertex_count(), 10);
        let c6 = build(&FamilySpec::Route(vec![3, 3])).unwrap();
        let c6_other = build(&FamilySpec::Route(vec![2, 4])).unwrap();
        assert_eq!(c6.vertex_count(), 6);
        assert_eq!(c6.canonical_key(), c6_other.canonical_key());
    }

    #[test]
    fn route_validation() {
        assert_eq!(build(&FamilySpec::Route(vec![2, 3])).unwrap_err(), FamilyError::MixedParity);
        assert_eq!(build(&FamilySpec::Route(vec![0])).unwrap_err(), FamilyError::NoPositivePath);
        assert!(categorize(&[8]).is_err());
        assert!(categorize(&[1, 7]).is_err());
    }

    #[test]
    fn merged_zero_six_routes_are_diamonds() {
        // u = v with 2-paths and 4-paths contracts to pendants and diamonds.
        let p = build(&FamilySpec::Route(vec![0, 2, 2, 4])).unwrap();
        let t = build(&FamilySpec::Diamond(2, 1)).unwrap();
        assert_eq!(p.canonical_key(), t.canonical_key());
    }

    #[test]
    fn repeated_short_routes_collapse() {
        // Extra 0-paths merge into the single terminal; repeated 1-paths
        // collapse onto one edge.
        let a = build(&FamilySpec::Route(vec![0, 0, 4])).unwrap();
        let b = build(&FamilySpec::Route(vec![0, 4])).unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        let c = build(&FamilySpec::Route(vec![1, 1, 3])).unwrap();
        let d = build(&FamilySpec::Route(vec![1, 3])).unwrap();
        assert_eq!(c.canonical_key(), d.canonical_key());
    }

    #[test]
    fn engine_matches_oracles_on_small_cells() {
        let s = Solver::new();
        for i in 0..6 {
            assert_eq!(s.grundy(&build(&FamilySpec::Star(i)).unwrap()).unwrap(), star_value(i));
        }
        for x in 0..8 {
            assert_eq!(s.grundy(&build(&FamilySpec::Path(x)).unwrap()).unwrap(), path_value(x));
        }
        for p in 0..3 {
            for d in 0..3 {
                assert_eq!(
                    s.grundy(&build(&FamilySpec::Diamond(p, d)).unwrap()).unwrap(),
                    diamond_value(p, d),
                    "T_({p},{d})"
                );
            }
        }
    }

    #[test]
    fn detectors_identify_generated_families() {
        let star = build(&FamilySpec::Star(4)).unwrap();
        assert!(matching_specs(&star).contains(&FamilySpec::Star(4)));
        let path = build(&FamilySpec::Path(5)).unwrap();
        assert!(matching_specs(&path).contains(&FamilySpec::Path(5)));
        let broom = build(&FamilySpec::Broom(3, 4)).unwrap();
        assert!(matching_specs(&broom).contains(&FamilySpec::Broom(3, 4)));
        let k23 = build(&FamilySpec::CompleteBipartite(2, 3)).unwrap();
        assert!(matching_specs(&k23)
            .iter()
            .any(|s| matches!(s, FamilySpec::CompleteBipartite(_, _))));
        let route = build(&FamilySpec::Route(vec![2, 4, 4])).unwrap();
        assert!(matching_specs(&route)
            .iter()
            .any(|s| matches!(s, FamilySpec::Route(_))));
    }
}
