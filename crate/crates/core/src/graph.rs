//! Loopless multigraphs with stable edge identities.
//!
//! Edges are numbered densely in insertion order, so two parallel edges
//! between the same pair of vertices remain distinguishable. Everything the
//! decomposition needs lives here: bipartition, regularity, connectivity,
//! cutpoints, bridges and disjoint 2-edge-cuts.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    LoopRejected { edge: EdgeId, vertex: Vertex },
    #[error("edge {edge} references vertex {vertex}, but the graph has {n} vertices")]
    BadIndex { edge: EdgeId, vertex: Vertex, n: usize },
    #[error("graph is not bipartite (odd cycle {cycle:?})")]
    NotBipartite { cycle: Vec<Vertex> },
    #[error("graph is not a connected cubic bipartite multigraph: {reason}")]
    NotCubicBipartite { reason: String },
}

/// An undirected loopless multigraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multigraph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Multigraph {
    /// Builds a multigraph; edge ids follow input order and repeated pairs
    /// become parallel edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        let edges: Vec<_> = edges.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for (id, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::BadIndex { edge: id, vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::LoopRejected { edge: id, vertex: a });
            }
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        Ok(Multigraph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Incident `(neighbor, edge)` pairs; parallel edges appear once each.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k)
    }

    /// The other endpoint of `e`.
    pub fn opposite(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        self.adj[u].iter().filter(|&&(w, _)| w == v).count()
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| self.multiplicity(a, b) > 1)
    }

    /// Component label per vertex (labels in order of lowest vertex) and the
    /// number of components, ignoring the edges flagged in `removed`.
    pub fn components_without(&self, removed: &[EdgeId]) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &(w, e) in &self.adj[v] {
                    if comp[w] == usize::MAX && !removed.contains(&e) {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_without(&[])
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Subgraph induced by `vertices` (kept in the given order). Returns the
    /// subgraph and, for each of its edges, the originating edge id.
    pub fn induced(&self, vertices: &[Vertex]) -> (Multigraph, Vec<EdgeId>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (id, &(a, b)) in self.edges.iter().enumerate() {
            if local[a] != usize::MAX && local[b] != usize::MAX {
                edges.push((local[a], local[b]));
                origin.push(id);
            }
        }
        let g = Multigraph::new(vertices.len(), edges).expect("induced subgraph of a valid graph");
        (g, origin)
    }

    /// The simple graph underlying this multigraph, as sorted adjacency sets.
    pub fn simple_adjacency(&self) -> Vec<Vec<Vertex>> {
        self.adj
            .iter()
            .map(|a| {
                let mut nb: Vec<_> = a.iter().map(|&(w, _)| w).collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    White,
    Black,
}

impl Part {
    pub fn other(self) -> Part {
        match self {
            Part::White => Part::Black,
            Part::Black => Part::White,
        }
    }
}

/// A proper 2-coloring of the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    parts: Vec<Part>,
}

impl Bipartition {
    /// Wraps a part assignment without checking it against any graph.
    pub fn from_parts(parts: Vec<Part>) -> Self {
        Bipartition { parts }
    }

    pub fn part(&self, v: Vertex) -> Part {
        self.parts[v]
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }
}

/// Breadth-first 2-coloring; the lowest vertex of each component is White.
pub fn bipartition(g: &Multigraph) -> Result<Bipartition, GraphError> {
    let n = g.vertex_count();
    let mut part: Vec<Option<Part>> = vec![None; n];
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if part[s].is_some() {
            continue;
        }
        part[s] = Some(Part::White);
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let pv = part[v].unwrap();
            for &(w, _) in g.incident(v) {
                match part[w] {
                    None => {
                        part[w] = Some(pv.other());
                        parent[w] = Some(v);
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    }
                    Some(pw) if pw == pv => {
                        return Err(GraphError::NotBipartite {
                            cycle: odd_cycle(&parent, &depth, v, w),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Bipartition {
        parts: part.into_iter().map(Option::unwrap).collect(),
    })
}

// Closes the BFS-tree paths from `a` and `b` at their lowest common ancestor.
fn odd_cycle(parent: &[Option<Vertex>], depth: &[usize], a: Vertex, b: Vertex) -> Vec<Vertex> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x].unwrap();
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y].unwrap();
        right.push(y);
    }
    while x != y {
        x = parent[x].unwrap();
        y = parent[y].unwrap();
        left.push(x);
        right.push(y);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// Low-link DFS over edge ids. Returns (cutpoints, bridges); parallel edges
/// are handled because the parent is skipped by edge id, not by vertex.
fn low_link(g: &Multigraph) -> (Vec<bool>, Vec<EdgeId>) {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut bridges = Vec::new();
    let mut time = 0;
    // (vertex, parent edge, next incident index, child count)
    let mut stack: Vec<(Vertex, Option<EdgeId>, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, None, 0, 0));
        while let Some(top) = stack.last_mut() {
            let (v, pe, idx, _) = *top;
            if let Some(&(w, e)) = g.incident(v).get(idx) {
                top.2 += 1;
                if Some(e) == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    top.3 += 1;
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(e), 0, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let (v, pe, _, children) = stack.pop().unwrap();
                match stack.last() {
                    Some(&(p, ..)) => {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            bridges.push(pe.unwrap());
                        }
                        if low[v] >= disc[p] && p != root {
                            is_cut[p] = true;
                        }
                    }
                    None => {
                        if children > 1 {
                            is_cut[v] = true;
                        }
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    (is_cut, bridges)
}

/// Vertices whose removal increases the number of components, ascending.
pub fn cutpoints(g: &Multigraph) -> Vec<Vertex> {
    let (is_cut, _) = low_link(g);
    (0..g.vertex_count()).filter(|&v| is_cut[v]).collect()
}

/// Edges whose removal disconnects their component, ascending by id.
pub fn bridges(g: &Multigraph) -> Vec<EdgeId> {
    low_link(g).1
}

/// In-degree minus out-degree of `v` inside the subgraph induced by
/// `subset`, with every edge oriented White to Black.
pub fn oriented_degree(g: &Multigraph, b: &Bipartition, subset: &[Vertex], v: Vertex) -> i64 {
    let mut inside = vec![false; g.vertex_count()];
    for &x in subset {
        inside[x] = true;
    }
    g.incident(v)
        .iter()
        .filter(|&&(w, _)| inside[w])
        .map(|_| match b.part(v) {
            Part::Black => 1,
            Part::White => -1,
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    One,
    Two,
}

/// A disjoint 2-edge-cut `{e', e''}` with `e' = u'w'`, `e'' = u''w''`,
/// `u', u''` on side One and `w', w''` on side Two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSplit {
    pub e_prime: EdgeId,
    pub e_dprime: EdgeId,
    pub u_prime: Vertex,
    pub u_dprime: Vertex,
    pub w_prime: Vertex,
    pub w_dprime: Vertex,
    pub side: Vec<Side>,
}

impl CutSplit {
    /// Validates that `{e1, e2}` is a vertex-disjoint edge pair splitting a
    /// connected graph into exactly two sides. Side One holds the lower
    /// endpoint of `e1`.
    pub fn from_edges(g: &Multigraph, e1: EdgeId, e2: EdgeId) -> Option<CutSplit> {
        if e1 == e2 || e1 >= g.edge_count() || e2 >= g.edge_count() {
            return None;
        }
        let (a1, b1) = g.endpoints(e1);
        let (a2, b2) = g.endpoints(e2);
        if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
            return None;
        }
        if !g.is_connected() {
            return None;
        }
        let (comp, count) = g.components_without(&[e1, e2]);
        if count != 2 {
            return None;
        }
        let one = comp[a1.min(b1)];
        let side_of = |v: Vertex| if comp[v] == one { Side::One } else { Side::Two };
        let (u_prime, w_prime) = if side_of(a1) == Side::One { (a1, b1) } else { (b1, a1) };
        let (u_dprime, w_dprime) = match (side_of(a2), side_of(b2)) {
            (Side::One, Side::Two) => (a2, b2),
            (Side::Two, Side::One) => (b2, a2),
            _ => return None,
        };
        if side_of(w_prime) != Side::Two {
            return None;
        }
        Some(CutSplit {
            e_prime: e1,
            e_dprime: e2,
            u_prime,
            u_dprime,
            w_prime,
            w_dprime,
            side: (0..g.vertex_count()).map(side_of).collect(),
        })
    }

    pub fn side_vertices(&self, side: Side) -> Vec<Vertex> {
        (0..self.side.len()).filter(|&v| self.side[v] == side).collect()
    }
}

fn require_cubic_bipartite_connected(g: &Multigraph) -> Result<Bipartition, GraphError> {
    let reason = |r: &str| GraphError::NotCubicBipartite { reason: r.to_string() };
    if !g.is_k_regular(3) {
        return Err(reason("not 3-regular"));
    }
    if !g.is_connected() {
        return Err(reason("not connected"));
    }
    bipartition(g).map_err(|_| reason("not bipartite"))
}

/// Lexicographically least vertex-disjoint edge pair whose removal
/// disconnects `g`, or `None` when there is none (for cubic graphs this
/// means 3-connected, or `g` is Θ).
///
/// For each edge `e` in id order, the bridges of `g - e` are exactly the
/// partners `f` for which `{e, f}` is a cut.
pub fn find_disjoint_two_edge_cut(g: &Multigraph) -> Result<Option<CutSplit>, GraphError> {
    require_cubic_bipartite_connected(g)?;
    for e in 0..g.edge_count() {
        let (a, b) = g.endpoints(e);
        let reduced = without_edge(g, e);
        for f in bridges(&reduced) {
            // ids above e shift down by one in the reduced graph
            let f = if f >= e { f + 1 } else { f };
            if f < e {
                continue;
            }
            let (c, d) = g.endpoints(f);
            if c == a || c == b || d == a || d == b {
                continue;
            }
            return Ok(CutSplit::from_edges(g, e, f));
        }
    }
    Ok(None)
}

fn without_edge(g: &Multigraph, e: EdgeId) -> Multigraph {
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(id, _)| id != e)
        .map(|(_, &p)| p);
    Multigraph::new(g.vertex_count(), edges).expect("edge removal keeps graph valid")
}

/// Whether the attachment vertices of the cut lie in different parts on
/// each side. Always true for connected k-regular bipartite graphs, k >= 3.
pub fn check_entanglement(b: &Bipartition, cut: &CutSplit) -> bool {
    b.part(cut.u_prime) != b.part(cut.u_dprime) && b.part(cut.w_prime) != b.part(cut.w_dprime)
}
