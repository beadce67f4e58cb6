//! Canonical labeling of vertex-colored graphs.
//!
//! Two positions get the same key exactly when a color-preserving isomorphism
//! maps one onto the other; color ids are compared as-is, never modulo a color
//! permutation. The key is the byte serialization of a canonical form, so it
//! is stable across processes and decodes back to the graph.
//!
//! The search is individualization-refinement: an ordered partition is
//! refined to the coarsest equitable one with a splitter worklist, then the
//! search backtracks over the members of the first non-singleton cell.
//! Discovered automorphisms prune sibling candidates and, through the
//! abort-to-ancestor rule, entire repeated subtrees; this keeps pendant-heavy
//! graphs like a 50-pendant star from exploding factorially.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::graph::{ColoredGraph, Position};

/// Memoization identity for a position: an opaque byte string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Arc<[u8]>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalKey(")?;
        for b in self.0.iter().take(12) {
            write!(f, "{b:02x}")?;
        }
        if self.0.len() > 12 {
            write!(f, "..")?;
        }
        write!(f, ")")
    }
}

/// Canonical key of a position.
pub fn canonical_key(p: &Position) -> CanonicalKey {
    CanonicalKey(canonical_form(p.graph()).0.into())
}

/// Canonical certificate bytes plus the labeling (old vertex -> canonical
/// index) that produced them.
pub(crate) fn canonical_form(g: &ColoredGraph) -> (Vec<u8>, Vec<u32>) {
    let (cert, labeling, _) = canonical_form_with_orbits(g);
    (cert, labeling)
}

/// Canonical form plus vertex orbit representatives under the automorphisms
/// the search discovered (a subgroup of the full automorphism group, so
/// vertices sharing a representative are guaranteed interchangeable).
pub(crate) fn canonical_form_with_orbits(g: &ColoredGraph) -> (Vec<u8>, Vec<u32>, Vec<u32>) {
    let n = g.vertex_count();
    if n == 0 {
        return (Vec::new(), Vec::new(), Vec::new());
    }
    let mut searcher = Searcher {
        g,
        best: None,
        autos: Vec::new(),
        prefix: Vec::new(),
        processed_stack: Vec::new(),
    };
    let (partition, seeds) = Partition::initial(g);
    searcher.search(partition, seeds);
    let mut parent: Vec<u32> = (0..n as u32).collect();
    for auto in &searcher.autos {
        for u in 0..n as u32 {
            let (a, b) = (uf_find(&mut parent, u), uf_find(&mut parent, auto[u as usize]));
            if a != b {
                parent[a as usize] = b;
            }
        }
    }
    let orbit: Vec<u32> = (0..n as u32).map(|v| uf_find(&mut parent, v)).collect();
    let (cert, labeling) = searcher.best.expect("search visits at least one leaf");
    (cert, labeling, orbit)
}

fn uf_find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = parent[x as usize];
    }
    x
}

/// Serialize the graph under a vertex labeling (old index -> new index).
fn certificate(g: &ColoredGraph, labeling: &[u32]) -> Vec<u8> {
    let n = g.vertex_count();
    let mut inverse = vec![0u32; n];
    for (v, &i) in labeling.iter().enumerate() {
        inverse[i as usize] = v as u32;
    }
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (labeling[u as usize], labeling[v as usize]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort_unstable();
    let mut out = Vec::with_capacity(8 + n + edges.len() * 8);
    out.extend_from_slice(&(n as u32).to_be_bytes());
    for i in 0..n {
        out.push(g.color(inverse[i] as usize).0);
    }
    out.extend_from_slice(&(edges.len() as u32).to_be_bytes());
    for (a, b) in edges {
        out.extend_from_slice(&a.to_be_bytes());
        out.extend_from_slice(&b.to_be_bytes());
    }
    out
}

/// An ordered partition of the vertices. Cells are contiguous runs of
/// `order`; a cell is identified by its start offset, which doubles as its
/// canonical rank (cells earlier in `order` come first).
#[derive(Clone)]
struct Partition {
    /// Vertices grouped by cell.
    order: Vec<u32>,
    /// pos[v] = index of v in `order`.
    pos: Vec<u32>,
    /// start[v] = start offset of the cell containing v.
    start: Vec<u32>,
    /// len_at[o] = length of the cell starting at offset o (valid at starts).
    len_at: Vec<u32>,
    /// Number of cells with two or more members.
    nonsingleton: u32,
}

impl Partition {
    /// One cell per color id, colors ascending; seeds list every cell.
    fn initial(g: &ColoredGraph) -> (Partition, Vec<u32>) {
        let n = g.vertex_count();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| (g.color(v as usize), v));
        let mut pos = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut start = vec![0u32; n];
        let mut len_at = vec![0u32; n];
        let mut seeds = Vec::new();
        let mut nonsingleton = 0;
        let mut s = 0usize;
        while s < n {
            let color = g.color(order[s] as usize);
            let mut e = s + 1;
            while e < n && g.color(order[e] as usize) == color {
                e += 1;
            }
            len_at[s] = (e - s) as u32;
            if e - s >= 2 {
                nonsingleton += 1;
            }
            for i in s..e {
                start[order[i] as usize] = s as u32;
            }
            seeds.push(s as u32);
            s = e;
        }
        (Partition { order, pos, start, len_at, nonsingleton }, seeds)
    }

    fn is_discrete(&self) -> bool {
        self.nonsingleton == 0
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        let n = self.order.len();
        let mut o = 0usize;
        while o < n {
            if self.len_at[o] >= 2 {
                return Some(o);
            }
            o += self.len_at[o] as usize;
        }
        None
    }

    fn members(&self, offset: usize) -> &[u32] {
        &self.order[offset..offset + self.len_at[offset] as usize]
    }

    /// Move v to the front of its cell as a new singleton; returns the two
    /// fragment offsets to seed refinement with.
    fn individualize(&mut self, v: u32) -> (u32, u32) {
        let s = self.start[v as usize] as usize;
        let len = self.len_at[s] as usize;
        debug_assert!(len >= 2);
        let pv = self.pos[v as usize] as usize;
        let first = self.order[s];
        self.order[s] = v;
        self.order[pv] = first;
        self.pos[v as usize] = s as u32;
        self.pos[first as usize] = pv as u32;
        self.len_at[s] = 1;
        self.len_at[s + 1] = (len - 1) as u32;
        self.start[v as usize] = s as u32;
        for i in s + 1..s + len {
            self.start[self.order[i] as usize] = (s + 1) as u32;
        }
        self.nonsingleton -= 1;
        if len - 1 >= 2 {
            self.nonsingleton += 1;
        }
        (s as u32, (s + 1) as u32)
    }

    /// Refine to the coarsest equitable partition reachable from the seeded
    /// splitters. Fragments are ordered by ascending neighbor count, so the
    /// resulting cell sequence depends only on graph structure.
    fn refine(&mut self, g: &ColoredGraph, seeds: &[u32]) {
        let n = self.order.len();
        let mut queue: VecDeque<u32> = VecDeque::new();
        let mut in_queue = vec![false; n];
        for &s in seeds {
            if !in_queue[s as usize] {
                in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
        let mut count = vec![0u32; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut splitter: Vec<u32> = Vec::new();
        while let Some(offset) = queue.pop_front() {
            let offset = offset as usize;
            in_queue[offset] = false;
            splitter.clear();
            splitter.extend_from_slice(self.members(offset));
            touched.clear();
            for &w in &splitter {
                for &u in g.neighbors(w as usize) {
                    if count[u as usize] == 0 {
                        touched.push(u);
                    }
                    count[u as usize] += 1;
                }
            }
            let mut cells: Vec<u32> = touched.iter().map(|&u| self.start[u as usize]).collect();
            cells.sort_unstable();
            cells.dedup();
            for &cell in &cells {
                let s = cell as usize;
                let len = self.len_at[s] as usize;
                if len <= 1 {
                    continue;
                }
                let first_count = count[self.order[s] as usize];
                if self.order[s..s + len].iter().all(|&v| count[v as usize] == first_count) {
                    continue;
                }
                // Stable sort by count keeps fragment order canonical.
                let mut items: Vec<(u32, u32)> = self.order[s..s + len]
                    .iter()
                    .map(|&v| (count[v as usize], v))
                    .collect();
                items.sort_by_key(|&(c, _)| c);
                for (i, &(_, v)) in items.iter().enumerate() {
                    self.order[s + i] = v;
                    self.pos[v as usize] = (s + i) as u32;
                }
                self.nonsingleton -= 1;
                let mut frag = s;
                for i in 1..=len {
                    if i == len || items[i].0 != items[i - 1].0 {
                        let flen = s + i - frag;
                        self.len_at[frag] = flen as u32;
                        if flen >= 2 {
                            self.nonsingleton += 1;
                        }
                        for j in frag..s + i {
                            self.start[self.order[j] as usize] = frag as u32;
                        }
                        if !in_queue[frag] {
                            in_queue[frag] = true;
                            queue.push_back(frag as u32);
                        }
                        frag = s + i;
                    }
                }
            }
            for &u in &touched {
                count[u as usize] = 0;
            }
        }
    }
}

struct Searcher<'a> {
    g: &'a ColoredGraph,
    best: Option<(Vec<u8>, Vec<u32>)>,
    /// Discovered automorphisms (old vertex -> old vertex).
    autos: Vec<Vec<u32>>,
    /// Vertices individualized along the current search path.
    prefix: Vec<u32>,
    /// Per path depth, the candidates already fully handled at that node.
    processed_stack: Vec<Vec<u32>>,
}

/// Unwind signal: abandon subtrees down to the node at this depth, whose
/// current candidate was shown redundant by an automorphism.
type AbortTo = usize;

impl Searcher<'_> {
    fn search(&mut self, mut partition: Partition, seeds: Vec<u32>) -> Option<AbortTo> {
        partition.refine(self.g, &seeds);
        if partition.is_discrete() {
            let labeling = partition.pos.clone();
            return self.leaf(labeling);
        }
        let target = partition.first_nonsingleton().expect("not discrete");
        let members: Vec<u32> = partition.members(target).to_vec();

        let depth = self.prefix.len();
        self.processed_stack.push(Vec::new());
        // Orbits of the prefix-fixing automorphisms, rebuilt lazily whenever
        // new automorphisms arrive during this node's candidate loop.
        let mut orbit_cache: Option<(usize, Vec<u32>)> = None;
        for &v in &members {
            if self.in_processed_orbit(v, depth, &mut orbit_cache) {
                continue;
            }
            let mut child = partition.clone();
            let (seed_a, seed_b) = child.individualize(v);
            self.prefix.push(v);
            let signal = self.search(child, vec![seed_a, seed_b]);
            self.prefix.pop();
            self.processed_stack[depth].push(v);
            if let Some(t) = signal {
                if t < depth {
                    self.processed_stack.pop();
                    return Some(t);
                }
                // t == depth: this candidate's subtree repeated explored
                // work; carry on with the next candidate.
            }
        }
        self.processed_stack.pop();
        None
    }

    /// True if some discovered automorphism that fixes the current prefix
    /// pointwise maps an already-processed candidate at this node to `v`
    /// (orbits under the subgroup those automorphisms generate).
    fn in_processed_orbit(
        &self,
        v: u32,
        depth: usize,
        cache: &mut Option<(usize, Vec<u32>)>,
    ) -> bool {
        let processed = &self.processed_stack[depth];
        if processed.is_empty() || self.autos.is_empty() {
            return false;
        }
        let stale = match cache {
            Some((len, _)) => *len != self.autos.len(),
            None => true,
        };
        if stale {
            let n = self.g.vertex_count();
            let mut parent: Vec<u32> = (0..n as u32).collect();
            for auto in &self.autos {
                if self.prefix.iter().any(|&p| auto[p as usize] != p) {
                    continue;
                }
                for u in 0..n as u32 {
                    let (a, b) = (uf_find(&mut parent, u), uf_find(&mut parent, auto[u as usize]));
                    if a != b {
                        parent[a as usize] = b;
                    }
                }
            }
            *cache = Some((self.autos.len(), parent));
        }
        let parent = &mut cache.as_mut().unwrap().1;
        let rv = uf_find(parent, v);
        processed.iter().any(|&w| uf_find(parent, w) == rv)
    }

    fn leaf(&mut self, labeling: Vec<u32>) -> Option<AbortTo> {
        let cert = certificate(self.g, &labeling);
        match &self.best {
            None => {
                self.best = Some((cert, labeling));
                None
            }
            Some((best_cert, best_labeling)) => match cert.cmp(best_cert) {
                std::cmp::Ordering::Less => {
                    self.best = Some((cert, labeling));
                    None
                }
                std::cmp::Ordering::Equal => {
                    // Equal certificates witness an automorphism: send each
                    // vertex to the one holding the same canonical index in
                    // the best labeling.
                    let n = labeling.len();
                    let mut best_inv = vec![0u32; n];
                    for (v, &i) in best_labeling.iter().enumerate() {
                        best_inv[i as usize] = v as u32;
                    }
                    let auto: Vec<u32> =
                        (0..n).map(|v| best_inv[labeling[v] as usize]).collect();
                    if auto.iter().enumerate().all(|(i, &x)| i as u32 == x) {
                        return None;
                    }
                    let abort = self.abort_depth(&auto);
                    self.autos.push(auto);
                    abort
                }
                std::cmp::Ordering::Greater => None,
            },
        }
    }

    /// Shallowest path depth whose current candidate the automorphism maps
    /// onto an already-processed sibling while fixing everything above it:
    /// the subtree rooted there repeats explored work.
    fn abort_depth(&self, auto: &[u32]) -> Option<AbortTo> {
        for (d, &cand) in self.prefix.iter().enumerate() {
            let image = auto[cand as usize];
            if image != cand {
                if self.processed_stack[d].contains(&image) {
                    return Some(d);
                }
                return None;
            }
        }
        None
    }
}
