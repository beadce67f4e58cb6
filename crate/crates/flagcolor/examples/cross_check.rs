// Independent cross-validation of the engine: a from-scratch solver with a
// different position representation (color vector + adjacency bitmasks), no
// canonical labeling, no orbit dedup; memoization only on the exact labeled
// graph. Compares Grundy values and winning-move sets against the engine on
// random multi-color positions.

use std::collections::HashMap;

use flagcolor::graph::{Color, ColoredGraph, Move, Position};
use flagcolor::solver::Solver;

#[derive(Clone, PartialEq, Eq, Hash)]
struct Raw {
    colors: Vec<u8>,
    adj: Vec<u64>,
}

impl Raw {
    fn from_position(p: &Position) -> Raw {
        let g = p.graph();
        let n = g.vertex_count();
        assert!(n <= 64);
        let mut adj = vec![0u64; n];
        for (u, v) in g.edges() {
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        Raw { colors: g.colors().iter().map(|c| c.0).collect(), adj }
    }

    fn contract(&self) -> Raw {
        // merge monochromatic components by repeated pairwise merging
        let n = self.colors.len();
        let mut repr: Vec<usize> = (0..n).collect();
        loop {
            let mut changed = false;
            for u in 0..n {
                if repr[u] != u {
                    continue;
                }
                let mut vmask = self.adjv(&repr, u);
                while vmask != 0 {
                    let v = vmask.trailing_zeros() as usize;
                    vmask &= vmask - 1;
                    if repr[v] == v && v != u && self.colors_of(&repr, v) == self.colors_of(&repr, u)
                    {
                        let (a, b) = (u.min(v), u.max(v));
                        for r in repr.iter_mut() {
                            if *r == b {
                                *r = a;
                            }
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // rebuild compact
        let mut ids: Vec<usize> = repr.iter().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        ids.sort_unstable();
        let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let m = ids.len();
        let mut colors = vec![0u8; m];
        let mut adj = vec![0u64; m];
        for (i, &r) in ids.iter().enumerate() {
            colors[i] = self.colors[r];
        }
        for u in 0..n {
            let mut mask = self.adj[u];
            while mask != 0 {
                let v = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                let (a, b) = (index[&repr[u]], index[&repr[v]]);
                if a != b {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
        }
        Raw { colors, adj }
    }

    fn adjv(&self, repr: &[usize], u: usize) -> u64 {
        // adjacency of the merged class of u, in original vertex space
        let mut out = 0u64;
        for x in 0..self.colors.len() {
            if repr[x] == u {
                out |= self.adj[x];
            }
        }
        out
    }

    fn colors_of(&self, repr: &[usize], v: usize) -> u8 {
        self.colors[repr[v]]
    }

    fn moves(&self) -> Vec<(usize, u8)> {
        let n = self.colors.len();
        let mut out = Vec::new();
        for v in 0..n {
            let mut seen = [false; 256];
            let mut mask = self.adj[v];
            while mask != 0 {
                let w = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                let c = self.colors[w];
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    out.push((v, c));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn apply(&self, v: usize, c: u8) -> Raw {
        let mut next = self.clone();
        next.colors[v] = c;
        next.contract()
    }
}

fn grundy_raw(raw: &Raw, memo: &mut HashMap<Raw, u32>) -> u32 {
    if let Some(&g) = memo.get(raw) {
        return g;
    }
    let mut vals: Vec<u32> = raw
        .moves()
        .into_iter()
        .map(|(v, c)| grundy_raw(&raw.apply(v, c), memo))
        .collect();
    vals.sort_unstable();
    vals.dedup();
    let mut g = 0;
    for v in vals {
        if v == g {
            g += 1;
        } else if v > g {
            break;
        }
    }
    memo.insert(raw.clone(), g);
    g
}

fn main() {
    let mut state = 0x243f6a8885a308d3u64;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };

    let mut memo: HashMap<Raw, u32> = HashMap::new();
    let mut checked = 0;
    for n in 2..=11usize {
        for case in 0..40 {
            // random tree + extra proper edges, up to 4 colors via leaf recoloring
            let mut colors: Vec<u8> = vec![0; n];
            let mut depth = vec![0usize; n];
            let mut edges = Vec::new();
            for v in 1..n {
                let u = (rng() % v as u64) as usize;
                depth[v] = depth[u] + 1;
                colors[v] = (depth[v] % 2) as u8;
                edges.push((u as u32, v as u32));
            }
            for _ in 0..(rng() % (n as u64 + 1)) {
                let a = (rng() % n as u64) as usize;
                let b = (rng() % n as u64) as usize;
                if a != b && colors[a] != colors[b] {
                    edges.push((a.min(b) as u32, a.max(b) as u32));
                }
            }
            // upgrade up to two leaves to extra colors
            for extra in [2u8, 3] {
                if rng() % 2 == 0 {
                    let v = (rng() % n as u64) as usize;
                    let deg = edges.iter().filter(|&&(a, b)| a as usize == v || b as usize == v).count();
                    if deg == 1 {
                        colors[v] = extra;
                    }
                }
            }
            let g = ColoredGraph::new(colors.iter().map(|&c| Color(c)).collect(), &edges).unwrap();
            let p = Position::from_graph(&g).unwrap();

            let engine = Solver::new();
            let engine_grundy = engine.grundy(&p).unwrap().0;
            let raw = Raw::from_position(&p);
            let raw_grundy = grundy_raw(&raw, &mut memo);
            assert_eq!(
                engine_grundy, raw_grundy,
                "grundy mismatch n={n} case={case}: engine {engine_grundy} raw {raw_grundy}"
            );

            // winning move sets agree
            let engine_wins: Vec<(usize, u8)> = engine
                .winning_moves(&p)
                .unwrap()
                .into_iter()
                .map(|(m, _): (Move, _)| (m.vertex, m.new_color.0))
                .collect();
            let raw_wins: Vec<(usize, u8)> = raw
                .moves()
                .into_iter()
                .filter(|&(v, c)| grundy_raw(&raw.apply(v, c), &mut memo) == 0)
                .collect();
            let mut ew = engine_wins.clone();
            ew.sort_unstable();
            assert_eq!(ew, raw_wins, "winning moves mismatch n={n} case={case}");
            checked += 1;
        }
    }
    println!("cross-check passed on {checked} random positions");
}
