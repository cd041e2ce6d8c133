//! Instance generators: Θ, even prisms, doubled C4, and gluing (the inverse
//! of splitting at a disjoint 2-edge-cut).

use thiserror::Error;

use crate::graph::{bipartition, EdgeId, Multigraph, Part, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// Two vertices joined by three parallel edges.
pub fn gen_theta() -> Multigraph {
    Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap()
}

/// The prism `C_{2k} x K2`: outer cycle `0..2k`, inner cycle `2k..4k`,
/// spokes `i -- 2k + i`.
pub fn gen_prism(k: usize) -> Result<Multigraph, GenError> {
    if k < 2 {
        return Err(GenError::BadParameter(format!("prism needs k >= 2, got {k}")));
    }
    let r = 2 * k;
    let mut edges = Vec::with_capacity(3 * r);
    for i in 0..r {
        edges.push((i, (i + 1) % r));
    }
    for i in 0..r {
        edges.push((r + i, r + (i + 1) % r));
    }
    for i in 0..r {
        edges.push((i, r + i));
    }
    Ok(Multigraph::new(2 * r, edges).unwrap())
}

/// The 4-cycle a-b-d-c with `ab` and `cd` doubled: edges `ab, ab, cd, cd,
/// ac, bd` on `a=0, b=1, c=2, d=3`.
pub fn gen_doubled_c4() -> Multigraph {
    Multigraph::new(4, [(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)]).unwrap()
}

/// Deletes `e1` from `h1` and `e2` from `h2` and reconnects the four loose
/// ends by two new edges, `e' = u'w'` and `e'' = u''w''`, where `u'` is the
/// White end of `e1` and `w'` the Black end of `e2` (canonical
/// bipartitions). `h2`'s vertices are shifted by `h1`'s vertex count; `e'`
/// and `e''` are the last two edges.
pub fn glue(h1: &Multigraph, e1: EdgeId, h2: &Multigraph, e2: EdgeId) -> Multigraph {
    let n1 = h1.vertex_count();
    let (u_prime, u_dprime) = white_first(h1, e1);
    let (w_dprime, w_prime) = white_first(h2, e2);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(h1.edge_count() + h2.edge_count());
    edges.extend(
        h1.edges()
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != e1)
            .map(|(_, &p)| p),
    );
    edges.extend(
        h2.edges()
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != e2)
            .map(|(_, &(a, b))| (a + n1, b + n1)),
    );
    edges.push((u_prime, w_prime + n1));
    edges.push((u_dprime, w_dprime + n1));
    Multigraph::new(n1 + h2.vertex_count(), edges).expect("glued graph is loopless")
}

// Endpoints of `e` as (White end, Black end); falls back to stored order for
// non-bipartite input.
fn white_first(g: &Multigraph, e: EdgeId) -> (Vertex, Vertex) {
    let (a, b) = g.endpoints(e);
    match bipartition(g) {
        Ok(p) if p.part(a) == Part::Black => (b, a),
        _ => (a, b),
    }
}

/// Knuth's MMIX 64-bit linear congruential generator; draws use the high 32
/// bits of the state, reduced modulo the bound.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish draw in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        self.next_u32() as usize % bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PieceKind {
    Theta,
    DoubledC4,
    /// `C_{2k} x K2`; k = 2 is the cube.
    Prism(usize),
}

impl PieceKind {
    pub fn build(self) -> Multigraph {
        match self {
            PieceKind::Theta => gen_theta(),
            PieceKind::DoubledC4 => gen_doubled_c4(),
            PieceKind::Prism(k) => gen_prism(k).expect("prism menu entries have k >= 2"),
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            PieceKind::Theta => 2,
            PieceKind::DoubledC4 => 4,
            PieceKind::Prism(k) => 4 * k,
        }
    }
}

/// A planted cut recorded by its endpoint pairs `(u', w')`, `(u'', w'')`.
/// Cut edges never have parallel copies, so the pairs identify them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlantedCut {
    pub e_prime: (Vertex, Vertex),
    pub e_dprime: (Vertex, Vertex),
}

#[derive(Debug, Clone)]
pub struct GluedInstance {
    pub graph: Multigraph,
    pub pieces: Vec<PieceKind>,
    pub planted: Vec<PlantedCut>,
}

impl GluedInstance {
    /// Planted cuts as edge-id pairs in the final graph.
    pub fn expected_cuts(&self) -> Vec<(EdgeId, EdgeId)> {
        self.planted
            .iter()
            .map(|c| (edge_between(&self.graph, c.e_prime), edge_between(&self.graph, c.e_dprime)))
            .collect()
    }
}

fn edge_between(g: &Multigraph, (a, b): (Vertex, Vertex)) -> EdgeId {
    g.incident(a)
        .iter()
        .find(|&&(w, _)| w == b)
        .map(|&(_, e)| e)
        .expect("planted cut edge present")
}

/// Left-deep random gluing: start from one piece, then repeatedly glue a
/// fresh piece onto a random edge of the current graph. Every draw comes
/// from one [`Lcg64`] seeded with `seed`, in the order: first piece, then
/// per step (piece, edge of the current graph, edge of the piece).
pub fn gen_random_glued(seed: u64, piece_count: usize, menu: &[PieceKind]) -> Result<GluedInstance, GenError> {
    if piece_count == 0 {
        return Err(GenError::BadParameter("piece count must be positive".into()));
    }
    if menu.is_empty() {
        return Err(GenError::BadParameter("piece menu is empty".into()));
    }
    let mut rng = Lcg64::new(seed);
    let first = menu[rng.below(menu.len())];
    let mut graph = first.build();
    let mut pieces = vec![first];
    let mut planted: Vec<PlantedCut> = Vec::new();
    for _ in 1..piece_count {
        let kind = menu[rng.below(menu.len())];
        let piece = kind.build();
        let e1 = rng.below(graph.edge_count());
        let e2 = rng.below(piece.edge_count());
        let n1 = graph.vertex_count();
        let (x, y) = graph.endpoints(e1);
        let glued = glue(&graph, e1, &piece, e2);
        let m = glued.edge_count();
        let new_prime = glued.endpoints(m - 2);
        let new_dprime = glued.endpoints(m - 1);
        // a planted edge that was glued over continues through the end at
        // its side One vertex
        for cut in &mut planted {
            for edge in [&mut cut.e_prime, &mut cut.e_dprime] {
                let same = (edge.0 == x && edge.1 == y) || (edge.0 == y && edge.1 == x);
                if same {
                    let keep = edge.0;
                    let replacement = if new_prime.0 == keep { new_prime } else { new_dprime };
                    *edge = replacement;
                }
            }
        }
        planted.push(PlantedCut {
            e_prime: new_prime,
            e_dprime: new_dprime,
        });
        debug_assert!(new_prime.1 >= n1 && new_dprime.1 >= n1);
        graph = glued;
        pieces.push(kind);
    }
    Ok(GluedInstance { graph, pieces, planted })
}

/// Labeled-graph isomorphism by backtracking with degree and multiplicity
/// checks. Intended for the small pieces of round-trip tests.
pub fn are_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // multiplicity matrices
    let ma = multiplicity_matrix(a);
    let mb = multiplicity_matrix(b);
    let order = bfs_order(a);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    iso_extend(&ma, &mb, a, b, &order, 0, &mut map, &mut used)
}

fn multiplicity_matrix(g: &Multigraph) -> Vec<Vec<u8>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0u8; n]; n];
    for &(x, y) in g.edges() {
        m[x][y] += 1;
        m[y][x] += 1;
    }
    m
}

fn bfs_order(g: &Multigraph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut i = order.len();
        order.push(s);
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &(w, _) in g.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn iso_extend(
    ma: &[Vec<u8>],
    mb: &[Vec<u8>],
    a: &Multigraph,
    b: &Multigraph,
    order: &[Vertex],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.vertex_count() {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x| ma[v][x] == mb[w][map[x]]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if iso_extend(ma, mb, a, b, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
