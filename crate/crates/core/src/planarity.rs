//! Planarity testing by incremental face embedding.
//!
//! The multigraph is reduced to its underlying simple graph and split into
//! biconnected blocks; each block is embedded path by path (Demoucron,
//! Malgrange and Pertuiset). A nonplanar graph gets a Kuratowski subdivision
//! extracted by greedy edge deletion.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Multigraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 contained in the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    /// For K3,3 the first three and last three vertices are the two sides.
    pub branch_vertices: Vec<Vertex>,
    /// One path per edge of the underlying K5 / K3,3, endpoints included.
    pub paths: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub witness: Option<KuratowskiWitness>,
}

pub fn is_planar(g: &Multigraph) -> PlanarityVerdict {
    let adj = g.simple_adjacency();
    if simple_is_planar(&adj) {
        return PlanarityVerdict { planar: true, witness: None };
    }
    PlanarityVerdict {
        planar: false,
        witness: extract_witness(&adj),
    }
}

fn simple_edges(adj: &[Vec<Vertex>]) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    for (u, nb) in adj.iter().enumerate() {
        for &v in nb {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn adjacency_from(n: usize, edges: &[(Vertex, Vertex)]) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Planarity of a simple graph given as adjacency lists.
pub(crate) fn simple_is_planar(adj: &[Vec<Vertex>]) -> bool {
    let n = adj.len();
    let edges = simple_edges(adj);
    // Euler bound, counted per graph with at least 3 vertices.
    if n >= 3 && edges.len() > 3 * n - 6 {
        return false;
    }
    blocks(adj).iter().all(|block| block_is_planar(block))
}

/// Biconnected blocks as edge lists (Hopcroft–Tarjan with an edge stack).
fn blocks(adj: &[Vec<Vertex>]) -> Vec<Vec<(Vertex, Vertex)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, None, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if let Some(&w) = adj[v].get(idx) {
                top.2 += 1;
                if Some(w) == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(v), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn block_is_planar(block: &[(Vertex, Vertex)]) -> bool {
    // Relabel to a compact vertex set.
    let mut verts: Vec<Vertex> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let n = verts.len();
    if n <= 4 || block.len() <= 2 {
        return true;
    }
    if block.len() > 3 * n - 6 {
        return false;
    }
    let local = |v: Vertex| verts.binary_search(&v).unwrap();
    let edges: Vec<(Vertex, Vertex)> = block.iter().map(|&(a, b)| (local(a), local(b))).collect();
    FaceEmbedder::new(n, &edges).run()
}

struct FaceEmbedder<'a> {
    n: usize,
    edges: &'a [(Vertex, Vertex)],
    adj: Vec<Vec<(Vertex, usize)>>,
    placed_vertex: Vec<bool>,
    placed_edge: Vec<bool>,
    faces: Vec<Vec<Vertex>>,
}

struct Fragment {
    attachments: BTreeSet<Vertex>,
    /// Either a single unplaced edge between placed vertices, or a set of
    /// unplaced vertices forming one component.
    edge: Option<usize>,
    interior: Vec<bool>,
}

impl<'a> FaceEmbedder<'a> {
    fn new(n: usize, edges: &'a [(Vertex, Vertex)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        FaceEmbedder {
            n,
            edges,
            adj,
            placed_vertex: vec![false; n],
            placed_edge: vec![false; edges.len()],
            faces: Vec::new(),
        }
    }

    fn run(mut self) -> bool {
        let cycle = self.initial_cycle();
        for i in 0..cycle.len() {
            self.place_path_edges(&[cycle[i], cycle[(i + 1) % cycle.len()]]);
        }
        let mut rev = cycle.clone();
        rev.reverse();
        self.faces.push(cycle);
        self.faces.push(rev);

        while self.placed_edge.iter().any(|&p| !p) {
            let fragments = self.fragments();
            let mut best: Option<(usize, Vec<usize>)> = None;
            for (fi, frag) in fragments.iter().enumerate() {
                let admissible: Vec<usize> = (0..self.faces.len())
                    .filter(|&f| frag.attachments.iter().all(|v| self.faces[f].contains(v)))
                    .collect();
                if admissible.is_empty() {
                    return false;
                }
                if best.as_ref().is_none_or(|(_, a)| admissible.len() < a.len()) {
                    best = Some((fi, admissible));
                }
            }
            let (fi, admissible) = best.unwrap();
            let path = self.fragment_path(&fragments[fi]);
            self.place_path_edges(&path);
            self.split_face(admissible[0], &path);
        }
        true
    }

    // Edge 0 plus a shortest detour around it; the detour exists because the
    // block is 2-connected.
    fn initial_cycle(&self) -> Vec<Vertex> {
        let (a, b) = self.edges[0];
        let mut prev = vec![usize::MAX; self.n];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &self.adj[v] {
                if e != 0 && prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut cycle = vec![b];
        let mut x = b;
        while x != a {
            x = prev[x];
            cycle.push(x);
        }
        cycle
    }

    fn place_path_edges(&mut self, path: &[Vertex]) {
        for &v in path {
            self.placed_vertex[v] = true;
        }
        for pair in path.windows(2) {
            let e = self.adj[pair[0]]
                .iter()
                .find(|&&(w, _)| w == pair[1])
                .map(|&(_, e)| e)
                .unwrap();
            self.placed_edge[e] = true;
        }
    }

    fn fragments(&self) -> Vec<Fragment> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if !self.placed_edge[i] && self.placed_vertex[a] && self.placed_vertex[b] {
                out.push(Fragment {
                    attachments: [a, b].into_iter().collect(),
                    edge: Some(i),
                    interior: Vec::new(),
                });
            }
        }
        let mut seen = vec![false; self.n];
        for s in 0..self.n {
            if self.placed_vertex[s] || seen[s] {
                continue;
            }
            let mut interior = vec![false; self.n];
            let mut attachments = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            interior[s] = true;
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adj[v] {
                    if self.placed_vertex[w] {
                        attachments.insert(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        interior[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(Fragment { attachments, edge: None, interior });
        }
        out
    }

    /// A path through the fragment joining two distinct attachments.
    fn fragment_path(&self, frag: &Fragment) -> Vec<Vertex> {
        if let Some(e) = frag.edge {
            let (a, b) = self.edges[e];
            return vec![a, b];
        }
        let start = *frag.attachments.iter().next().unwrap();
        let mut prev = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for &(w, _) in &self.adj[start] {
            if frag.interior[w] && prev[w] == usize::MAX {
                prev[w] = start;
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if frag.interior[w] {
                    if prev[w] == usize::MAX {
                        prev[w] = v;
                        queue.push_back(w);
                    }
                } else if w != start && self.placed_vertex[w] {
                    let mut path = vec![w, v];
                    let mut x = v;
                    while prev[x] != start {
                        x = prev[x];
                        path.push(x);
                    }
                    path.push(start);
                    path.reverse();
                    return path;
                }
            }
        }
        unreachable!("fragment of a 2-connected block has two attachments")
    }

    fn split_face(&mut self, f: usize, path: &[Vertex]) {
        let face = std::mem::take(&mut self.faces[f]);
        let a = path[0];
        let b = *path.last().unwrap();
        let ia = face.iter().position(|&v| v == a).unwrap();
        let ib = face.iter().position(|&v| v == b).unwrap();
        let len = face.len();
        let walk = |from: usize, to: usize| {
            let mut out = Vec::new();
            let mut i = from;
            loop {
                out.push(face[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % len;
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut first = walk(ia, ib);
        first.extend(inner.iter().rev());
        let mut second = walk(ib, ia);
        second.extend(inner.iter());
        self.faces[f] = first;
        self.faces.push(second);
    }
}

/// Greedy edge deletion to a minimal nonplanar subgraph, which is a
/// Kuratowski subdivision once isolated vertices are ignored.
fn extract_witness(adj: &[Vec<Vertex>]) -> Option<KuratowskiWitness> {
    let n = adj.len();
    let mut edges = simple_edges(adj);
    let mut i = 0;
    while i < edges.len() {
        let removed = edges.remove(i);
        if simple_is_planar(&adjacency_from(n, &edges)) {
            edges.insert(i, removed);
            i += 1;
        }
    }
    let sub = adjacency_from(n, &edges);
    let branch: Vec<Vertex> = (0..n).filter(|&v| sub[v].len() >= 3).collect();
    let mut paths: Vec<Vec<Vertex>> = Vec::new();
    for &s in &branch {
        for &first in &sub[s] {
            let mut path = vec![s, first];
            let mut prev = s;
            let mut cur = first;
            while sub[cur].len() == 2 {
                let next = if sub[cur][0] == prev { sub[cur][1] } else { sub[cur][0] };
                prev = cur;
                cur = next;
                path.push(cur);
            }
            if s < cur || (s == cur && path[1] < path[path.len() - 2]) {
                paths.push(path);
            }
        }
    }
    paths.sort();
    let kind = match (branch.len(), paths.len()) {
        (5, 10) if branch.iter().all(|&v| sub[v].len() == 4) => KuratowskiKind::K5,
        (6, 9) if branch.iter().all(|&v| sub[v].len() == 3) => KuratowskiKind::K33,
        _ => return None,
    };
    let branch_vertices = match kind {
        KuratowskiKind::K5 => branch,
        KuratowskiKind::K33 => {
            // side of each branch vertex: the ones not joined to branch[0] share its side
            let joined = |a: Vertex, b: Vertex| {
                paths
                    .iter()
                    .any(|p| (p[0] == a && *p.last().unwrap() == b) || (p[0] == b && *p.last().unwrap() == a))
            };
            let (mut left, mut right): (Vec<_>, Vec<_>) = branch
                .iter()
                .partition(|&&v| v == branch[0] || !joined(branch[0], v));
            left.sort_unstable();
            right.sort_unstable();
            left.into_iter().chain(right).collect()
        }
    };
    Some(KuratowskiWitness { kind, branch_vertices, paths })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Multigraph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        Multigraph::new(n, e).unwrap()
    }

    fn k33() -> Multigraph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        Multigraph::new(6, e).unwrap()
    }

    #[test]
    fn k4_is_planar() {
        assert!(is_planar(&complete(4)).planar);
    }

    #[test]
    fn k5_has_k5_witness() {
        let v = is_planar(&complete(5));
        assert!(!v.planar);
        let w = v.witness.unwrap();
        assert_eq!(w.kind, KuratowskiKind::K5);
        assert_eq!(w.branch_vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(w.paths.len(), 10);
    }

    #[test]
    fn k33_has_k33_witness() {
        let v = is_planar(&k33());
        assert!(!v.planar);
        let w = v.witness.unwrap();
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert_eq!(w.branch_vertices, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn subdivided_k33_witness_keeps_paths() {
        // K3,3 with edge 0-3 subdivided through vertex 6
        let mut e: Vec<(usize, usize)> = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                if (a, b) != (0, 3) {
                    e.push((a, b));
                }
            }
        }
        e.push((0, 6));
        e.push((6, 3));
        let g = Multigraph::new(7, e).unwrap();
        let w = is_planar(&g).witness.unwrap();
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert!(w.paths.contains(&vec![0, 6, 3]));
    }

    #[test]
    fn parallel_edges_do_not_matter() {
        let g = Multigraph::new(4, [(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)]).unwrap();
        assert!(is_planar(&g).planar);
        let theta = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(is_planar(&theta).planar);
    }

    #[test]
    fn petersen_is_nonplanar() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        let g = Multigraph::new(10, e).unwrap();
        let v = is_planar(&g);
        assert!(!v.planar);
        assert!(v.witness.is_some());
    }
}
