//! Text formats: the graph file, the character-grid file, and a writer.
//!
//! Graph files start with a `flagcolor-graph 1` header line, then `v <id>
//! <color>` and `e <u> <v>` lines; `#` starts a comment. Colors are either
//! small non-negative integers or one of the registered names. Grid files are
//! equal-length rows of printable non-space characters, one color per
//! distinct character; maximal 4-connected monochromatic regions become the
//! vertices of the position.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Color, ColoredGraph, GraphError, Position, MAX_COLORS};

pub const GRAPH_HEADER: &str = "flagcolor-graph 1";

/// Registered color names, in id order.
pub const COLOR_NAMES: [&str; 7] =
    ["white", "black", "red", "blue", "yellow", "green", "buff"];

pub fn color_from_name(name: &str) -> Option<Color> {
    COLOR_NAMES.iter().position(|n| *n == name).map(|i| Color(i as u8))
}

/// Display names per normalized color id, where known.
pub type Palette = Vec<Option<String>>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate vertex id {id}")]
    DuplicateVertex { line: usize, id: u64 },
    #[error("line {line}: edge references unknown vertex {id}")]
    UnknownVertex { line: usize, id: u64 },
    #[error("line {line}: self-loop on vertex {id}")]
    SelfLoop { line: usize, id: u64 },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph file declares no vertices")]
    NoVertices,
    #[error("line {line}: grid rows must all have the same length")]
    RaggedRow { line: usize },
    #[error("grid has no cells")]
    EmptyGrid,
    #[error("too many colors (limit {MAX_COLORS})")]
    TooManyColors,
    #[error(transparent)]
    Graph(GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

struct RawGraph {
    colors: Vec<Color>,
    edges: Vec<(u32, u32)>,
    names: Vec<Option<String>>,
}

fn parse_graph_raw(text: &str) -> Result<RawGraph, ParseError> {
    let mut ids: HashMap<u64, u32> = HashMap::new();
    let mut colors: Vec<Color> = Vec::new();
    let mut names: Vec<Option<String>> = Vec::new();
    let mut edges: Vec<(u64, u64, usize)> = Vec::new();
    let mut header_seen = false;

    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if !header_seen {
            if line != GRAPH_HEADER {
                return Err(syntax(lineno, format!("expected header `{GRAPH_HEADER}`")));
            }
            header_seen = true;
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let id: u64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(lineno, "expected `v <id> <color>`"))?;
                let color_token =
                    parts.next().ok_or_else(|| syntax(lineno, "missing vertex color"))?;
                if parts.next().is_some() {
                    return Err(syntax(lineno, "trailing tokens after vertex line"));
                }
                let (color, name) = match color_from_name(color_token) {
                    Some(c) => (c, Some(color_token.to_string())),
                    None => {
                        let raw: u64 = color_token.parse().map_err(|_| {
                            syntax(lineno, format!("unknown color `{color_token}`"))
                        })?;
                        if raw >= MAX_COLORS as u64 {
                            return Err(ParseError::TooManyColors);
                        }
                        (Color(raw as u8), None)
                    }
                };
                if ids.insert(id, colors.len() as u32).is_some() {
                    return Err(ParseError::DuplicateVertex { line: lineno, id });
                }
                colors.push(color);
                names.push(name);
            }
            Some("e") => {
                let u: u64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(lineno, "expected `e <u> <v>`"))?;
                let v: u64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(lineno, "expected `e <u> <v>`"))?;
                if parts.next().is_some() {
                    return Err(syntax(lineno, "trailing tokens after edge line"));
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line: lineno, id: u });
                }
                edges.push((u, v, lineno));
            }
            Some(other) => {
                return Err(syntax(lineno, format!("unknown directive `{other}`")));
            }
            None => unreachable!("empty lines were skipped"),
        }
    }
    if !header_seen {
        return Err(syntax(1, format!("expected header `{GRAPH_HEADER}`")));
    }
    if colors.is_empty() {
        return Err(ParseError::NoVertices);
    }
    let mut resolved = Vec::with_capacity(edges.len());
    for (u, v, lineno) in edges {
        let iu = *ids.get(&u).ok_or(ParseError::UnknownVertex { line: lineno, id: u })?;
        let iv = *ids.get(&v).ok_or(ParseError::UnknownVertex { line: lineno, id: v })?;
        resolved.push((iu, iv));
    }
    Ok(RawGraph { colors, edges: resolved, names })
}

/// Build the palette for a set of normalized colors given the raw color ids
/// and any names attached to them.
fn palette_for(raw: &RawGraph, normalized_of_raw: impl Fn(Color) -> u8, size: usize) -> Palette {
    let mut palette: Palette = vec![None; size];
    for (i, c) in raw.colors.iter().enumerate() {
        let slot = normalized_of_raw(*c) as usize;
        if palette[slot].is_none() {
            palette[slot] = raw
                .names[i]
                .clone()
                .or_else(|| COLOR_NAMES.get(c.0 as usize).map(|s| s.to_string()));
        }
    }
    palette
}

fn normalization_map(colors: &[Color]) -> impl Fn(Color) -> u8 {
    let mut used: Vec<u8> = colors.iter().map(|c| c.0).collect();
    used.sort_unstable();
    used.dedup();
    move |c: Color| used.binary_search(&c.0).map(|i| i as u8).unwrap_or(0)
}

/// Parse a graph file into a contracted, validated position.
pub fn parse_graph(text: &str) -> Result<Position, ParseError> {
    parse_graph_with_palette(text).map(|(p, _)| p)
}

/// Like [`parse_graph`] but also reports color display names per normalized
/// color id.
pub fn parse_graph_with_palette(text: &str) -> Result<(Position, Palette), ParseError> {
    let raw = parse_graph_raw(text)?;
    let graph = ColoredGraph::new(raw.colors.clone(), &raw.edges).map_err(ParseError::Graph)?;
    let position = Position::from_graph(&graph).map_err(|e| match e {
        GraphError::Disconnected => ParseError::Disconnected,
        other => ParseError::Graph(other),
    })?;
    let palette = palette_for(&raw, normalization_map(&raw.colors), position.color_count());
    Ok((position, palette))
}

/// Parse a graph file that may be disconnected, returning one position per
/// connected component (ordered by smallest declared vertex).
pub fn parse_components(text: &str) -> Result<Vec<Position>, ParseError> {
    let raw = parse_graph_raw(text)?;
    let graph = ColoredGraph::new(raw.colors, &raw.edges).map_err(ParseError::Graph)?;
    graph
        .components()
        .iter()
        .map(|comp| {
            Position::from_graph(&graph.induced(comp)).map_err(|e| match e {
                GraphError::Disconnected => ParseError::Disconnected,
                other => ParseError::Graph(other),
            })
        })
        .collect()
}

/// Parse a character grid into the region-adjacency position.
pub fn parse_grid(text: &str) -> Result<Position, ParseError> {
    parse_grid_with_palette(text).map(|(p, _)| p)
}

pub fn parse_grid_with_palette(text: &str) -> Result<(Position, Palette), ParseError> {
    let mut rows: Vec<Vec<char>> = Vec::new();
    let mut width = None;
    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        if raw_line.starts_with('#') {
            continue;
        }
        let line = raw_line.trim_end_matches(['\r']);
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<char> = line.chars().collect();
        if cells.iter().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(syntax(lineno, "grid rows must be printable non-space characters"));
        }
        match width {
            None => width = Some(cells.len()),
            Some(w) if w != cells.len() => return Err(ParseError::RaggedRow { line: lineno }),
            _ => {}
        }
        rows.push(cells);
    }
    if rows.is_empty() {
        return Err(ParseError::EmptyGrid);
    }
    let (h, w) = (rows.len(), width.unwrap());

    // Distinct characters become colors in order of first appearance.
    let mut char_color: HashMap<char, u8> = HashMap::new();
    for row in &rows {
        for &ch in row {
            let next = char_color.len();
            char_color.entry(ch).or_insert_with(|| next as u8);
            if char_color.len() > MAX_COLORS {
                return Err(ParseError::TooManyColors);
            }
        }
    }

    // 4-connected monochromatic regions, then region adjacency.
    let idx = |r: usize, c: usize| r * w + c;
    let mut region = vec![usize::MAX; h * w];
    let mut region_color: Vec<Color> = Vec::new();
    for r in 0..h {
        for c in 0..w {
            if region[idx(r, c)] != usize::MAX {
                continue;
            }
            let id = region_color.len();
            let ch = rows[r][c];
            region_color.push(Color(char_color[&ch]));
            let mut stack = vec![(r, c)];
            region[idx(r, c)] = id;
            while let Some((rr, cc)) = stack.pop() {
                let mut push = |nr: usize, nc: usize, stack: &mut Vec<(usize, usize)>| {
                    if rows[nr][nc] == ch && region[idx(nr, nc)] == usize::MAX {
                        region[idx(nr, nc)] = id;
                        stack.push((nr, nc));
                    }
                };
                if rr > 0 {
                    push(rr - 1, cc, &mut stack);
                }
                if rr + 1 < h {
                    push(rr + 1, cc, &mut stack);
                }
                if cc > 0 {
                    push(rr, cc - 1, &mut stack);
                }
                if cc + 1 < w {
                    push(rr, cc + 1, &mut stack);
                }
            }
        }
    }
    let mut edges = Vec::new();
    for r in 0..h {
        for c in 0..w {
            let a = region[idx(r, c)];
            if c + 1 < w {
                let b = region[idx(r, c + 1)];
                if a != b {
                    edges.push((a as u32, b as u32));
                }
            }
            if r + 1 < h {
                let b = region[idx(r + 1, c)];
                if a != b {
                    edges.push((a as u32, b as u32));
                }
            }
        }
    }
    let graph =
        ColoredGraph::new(region_color.clone(), &edges).map_err(ParseError::Graph)?;
    debug_assert!(graph.is_proper(), "distinct adjacent regions have distinct colors");
    let position = Position::from_graph(&graph).map_err(|e| match e {
        GraphError::Disconnected => {
            unreachable!("a rectangular grid yields a connected region graph")
        }
        other => ParseError::Graph(other),
    })?;

    let normalize = normalization_map(&region_color);
    let mut palette: Palette = vec![None; position.color_count()];
    for (&ch, &cid) in &char_color {
        let slot = normalize(Color(cid)) as usize;
        if slot < palette.len() {
            palette[slot] = Some(ch.to_string());
        }
    }
    Ok((position, palette))
}

/// Serialize a position in the graph file format; inverse of [`parse_graph`]
/// up to canonical equality.
pub fn write_graph(p: &Position, palette: Option<&Palette>) -> String {
    let g = p.graph();
    let mut out = String::new();
    out.push_str(GRAPH_HEADER);
    out.push('\n');
    for v in 0..g.vertex_count() {
        let c = g.color(v);
        let name = palette
            .and_then(|pal| pal.get(c.0 as usize))
            .and_then(|n| n.clone())
            .unwrap_or_else(|| c.0.to_string());
        out.push_str(&format!("v {v} {name}\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}
