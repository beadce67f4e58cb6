//! DOT export for positions, one filled node per vertex.

use crate::graph::Position;
use crate::parse::Palette;

// Graphviz X11 color names for normalized ids without a registered name.
const FALLBACK: [&str; 10] = [
    "lightgray", "dimgray", "firebrick", "steelblue", "gold", "forestgreen", "wheat", "orchid",
    "sienna", "cadetblue",
];

fn dot_color(id: u8, palette: Option<&Palette>) -> String {
    if let Some(name) = palette.and_then(|p| p.get(id as usize)).and_then(|n| n.clone()) {
        // `buff` is not an X11 color; the rest of the registry is.
        return if name == "buff" { "wheat".to_string() } else { name };
    }
    FALLBACK[id as usize % FALLBACK.len()].to_string()
}

/// Render a position as standard DOT text with a color attribute per vertex.
pub fn to_dot(p: &Position, palette: Option<&Palette>) -> String {
    let g = p.graph();
    let mut out = String::from("graph position {\n");
    out.push_str("  node [style=filled];\n");
    for v in 0..g.vertex_count() {
        let c = g.color(v);
        out.push_str(&format!(
            "  v{v} [label=\"{v}\", fillcolor=\"{}\", colorid={}];\n",
            dot_color(c.0, palette),
            c.0
        ));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  v{u} -- v{v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_graph_with_palette;

    #[test]
    fn dot_output_mentions_every_vertex_and_edge() {
        let (p, palette) =
            parse_graph_with_palette("flagcolor-graph 1\nv 0 blue\nv 1 white\ne 0 1\n").unwrap();
        let dot = to_dot(&p, Some(&palette));
        assert!(dot.starts_with("graph position {"));
        assert!(dot.contains("v0 [label=\"0\", fillcolor=\"blue\""));
        assert!(dot.contains("v1 [label=\"1\", fillcolor=\"white\""));
        assert!(dot.contains("v0 -- v1;"));
    }
}
