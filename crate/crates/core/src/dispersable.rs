//! Recursive construction of dispersable subhamiltonian book embeddings for
//! cubic planar bipartite multigraphs.
//!
//! A connected instance is either Θ (fixed embedding), has a disjoint
//! 2-edge-cut `{e', e''}` (split into two smaller patched pieces, embed both,
//! splice the spines and recolor so that the patch edges and the cut edges
//! share one page), or is 3-connected and goes to the exact base-case search.

use thiserror::Error;

use crate::book::{
    exact_dispersable_subhamiltonian, verify_matching_book_embedding, CyclicOrder, Page,
    PageColoring, SearchError, VerifyReport, GAMMA,
};
use crate::graph::{
    bipartition, check_entanglement, find_disjoint_two_edge_cut, Bipartition, CutSplit, EdgeId,
    GraphError, Multigraph, Side, Vertex,
};
use crate::planarity::{is_planar, KuratowskiWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: Vertex, degree: usize },
    #[error("not bipartite: odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<Vertex> },
    #[error("not planar")]
    NotPlanar { witness: Option<KuratowskiWitness> },
    #[error("base-case search exhausted on a {vertices}-vertex block after {limit} nodes")]
    BaseCaseExhausted { vertices: usize, limit: u64 },
    #[error("base-case search found no embedding for a {vertices}-vertex block")]
    BaseCaseFailed { vertices: usize },
    #[error("cut attachments are not entangled")]
    EntanglementViolated,
    #[error("spliced embedding failed verification: {report}")]
    CombineVerificationFailed { report: VerifyReport },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One side of a cut with its patch edge added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchedPiece {
    pub graph: Multigraph,
    /// Always the last edge of `graph`.
    pub patch_edge: EdgeId,
    /// Piece vertex to parent vertex.
    pub back_map: Vec<Vertex>,
    /// Piece edge to parent edge; `None` for the patch edge.
    pub edge_back_map: Vec<Option<EdgeId>>,
    /// `u''` (side One) or `w''` (side Two), in piece labels.
    pub attach_start: Vertex,
    /// `u'` or `w'`, in piece labels.
    pub attach_other: Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Theta,
    ThreeConnected,
}

/// The recursion tree. Vertices are labeled in the input graph's numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionTrace {
    Leaf {
        kind: BaseKind,
        vertices: Vec<Vertex>,
    },
    Split {
        /// `(u', w')` and `(u'', w'')`.
        e_prime: (Vertex, Vertex),
        e_dprime: (Vertex, Vertex),
        left: Box<DecompositionTrace>,
        right: Box<DecompositionTrace>,
    },
    /// Connected components, embedded independently and concatenated.
    Components(Vec<DecompositionTrace>),
}

impl DecompositionTrace {
    pub fn leaves(&self) -> Vec<(BaseKind, &[Vertex])> {
        match self {
            DecompositionTrace::Leaf { kind, vertices } => vec![(*kind, vertices.as_slice())],
            DecompositionTrace::Split { left, right, .. } => {
                let mut l = left.leaves();
                l.extend(right.leaves());
                l
            }
            DecompositionTrace::Components(parts) => parts.iter().flat_map(|t| t.leaves()).collect(),
        }
    }

    pub fn split_count(&self) -> usize {
        match self {
            DecompositionTrace::Leaf { .. } => 0,
            DecompositionTrace::Split { left, right, .. } => 1 + left.split_count() + right.split_count(),
            DecompositionTrace::Components(parts) => parts.iter().map(|t| t.split_count()).sum(),
        }
    }

    fn relabel(self, map: &[Vertex]) -> DecompositionTrace {
        match self {
            DecompositionTrace::Leaf { kind, vertices } => DecompositionTrace::Leaf {
                kind,
                vertices: vertices.into_iter().map(|v| map[v]).collect(),
            },
            DecompositionTrace::Split { e_prime, e_dprime, left, right } => DecompositionTrace::Split {
                e_prime: (map[e_prime.0], map[e_prime.1]),
                e_dprime: (map[e_dprime.0], map[e_dprime.1]),
                left: Box::new(left.relabel(map)),
                right: Box::new(right.relabel(map)),
            },
            DecompositionTrace::Components(parts) => {
                DecompositionTrace::Components(parts.into_iter().map(|t| t.relabel(map)).collect())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    pub order: CyclicOrder,
    pub coloring: PageColoring,
    pub trace: DecompositionTrace,
}

fn piece(g: &Multigraph, cut: &CutSplit, side: Side) -> PatchedPiece {
    let vertices = cut.side_vertices(side);
    let (sub, origin) = g.induced(&vertices);
    let (attach_start, attach_other) = match side {
        Side::One => (cut.u_dprime, cut.u_prime),
        Side::Two => (cut.w_dprime, cut.w_prime),
    };
    let local = |v: Vertex| vertices.binary_search(&v).unwrap();
    let mut edges = sub.edges().to_vec();
    edges.push((local(attach_other), local(attach_start)));
    let graph = Multigraph::new(vertices.len(), edges).expect("patched piece is loopless");
    let mut edge_back_map: Vec<Option<EdgeId>> = origin.into_iter().map(Some).collect();
    edge_back_map.push(None);
    PatchedPiece {
        patch_edge: graph.edge_count() - 1,
        graph,
        back_map: vertices.clone(),
        edge_back_map,
        attach_start: local(attach_start),
        attach_other: local(attach_other),
    }
}

/// `H1 = G1 + u'u''` and `H2 = G2 + w'w''`.
pub fn split_at_cut(
    g: &Multigraph,
    b: &Bipartition,
    cut: &CutSplit,
) -> Result<(PatchedPiece, PatchedPiece), EmbedError> {
    if !check_entanglement(b, cut) {
        return Err(EmbedError::EntanglementViolated);
    }
    Ok((piece(g, cut, Side::One), piece(g, cut, Side::Two)))
}

/// Swaps pages so that `e` lands on `target`.
pub fn normalize_colors(c: &PageColoring, e: EdgeId, target: Page) -> PageColoring {
    let current = c.page(e).expect("normalized edge must be colored");
    c.renamed(|p| {
        if p == current {
            target
        } else if p == target {
            current
        } else {
            p
        }
    })
}

/// Splices two piece embeddings along the cut. Each coloring must already
/// put its patch edge on γ; the cut edges join it there.
///
/// The spine is `λ1^op * λ2` where `λ1` starts at `u''` and `λ2` at `w''`,
/// so `u''` and `w''` end up adjacent. The page assignment is valid for
/// either walking direction, but the 2-page (subhamiltonian) property is
/// not: an edge at `u''` can cross `e'` without having crossed `e1`. The
/// four direction pairs are tried first, then the same four starting at
/// `u'` and `w'` (roles of `e'` and `e''` swapped); the first candidate that
/// passes the full verifier wins.
pub fn combine(
    g: &Multigraph,
    cut: &CutSplit,
    left: (&PatchedPiece, &CyclicOrder, &PageColoring),
    right: (&PatchedPiece, &CyclicOrder, &PageColoring),
) -> Result<(CyclicOrder, PageColoring), EmbedError> {
    let (p1, w1, c1) = left;
    let (p2, w2, c2) = right;
    debug_assert_eq!(c1.page(p1.patch_edge), Some(GAMMA));
    debug_assert_eq!(c2.page(p2.patch_edge), Some(GAMMA));

    let mut pages: Vec<Option<Page>> = vec![None; g.edge_count()];
    for (p, c) in [(p1, c1), (p2, c2)] {
        for (e, parent) in p.edge_back_map.iter().enumerate() {
            if let Some(pe) = parent {
                pages[*pe] = c.page(e);
            }
        }
    }
    pages[cut.e_prime] = Some(GAMMA);
    pages[cut.e_dprime] = Some(GAMMA);
    let coloring = PageColoring::partial(pages);

    let mut last = None;
    for (start1, start2) in [(p1.attach_start, p2.attach_start), (p1.attach_other, p2.attach_other)] {
        for (fwd1, fwd2) in [(true, true), (true, false), (false, true), (false, false)] {
            let l1 = w1.linearize(start1, fwd1).map(|v| p1.back_map[v]);
            let l2 = w2.linearize(start2, fwd2).map(|v| p2.back_map[v]);
            let order = l1.opposite().concat(&l2).to_cyclic().expect("pieces partition the vertices");
            let report = verify_matching_book_embedding(g, &order, &coloring);
            if report.ok && report.subhamiltonian {
                return Ok((order, coloring));
            }
            last = Some(report);
        }
    }
    Err(EmbedError::CombineVerificationFailed { report: last.unwrap() })
}

/// The fixed embedding of Θ: spine `(0, 1)`, parallel edges on pages in id
/// order.
pub fn theta_embedding(g: &Multigraph) -> (CyclicOrder, PageColoring) {
    debug_assert!(g.vertex_count() == 2 && g.edge_count() == 3);
    (CyclicOrder::identity(2), PageColoring::new(vec![0, 1, 2]))
}

#[derive(Debug, Clone, Copy)]
pub struct EmbedOptions {
    pub node_limit: u64,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions {
            node_limit: crate::book::DEFAULT_NODE_LIMIT,
        }
    }
}

pub fn embed_dispersable(g: &Multigraph) -> Result<Embedding, EmbedError> {
    embed_dispersable_with(g, EmbedOptions::default())
}

pub fn embed_dispersable_with(g: &Multigraph, opts: EmbedOptions) -> Result<Embedding, EmbedError> {
    check_hypotheses(g)?;
    let (comp, count) = g.components();
    let mut sequence = Vec::with_capacity(g.vertex_count());
    let mut pages: Vec<Option<Page>> = vec![None; g.edge_count()];
    let mut traces = Vec::new();
    for c in 0..count {
        let vertices: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| comp[v] == c).collect();
        let (sub, origin) = g.induced(&vertices);
        let (order, coloring, trace) = embed_connected(&sub, opts)?;
        sequence.extend(order.sequence().iter().map(|&v| vertices[v]));
        for (e, &pe) in origin.iter().enumerate() {
            pages[pe] = coloring.page(e);
        }
        traces.push(trace.relabel(&vertices));
    }
    let order = CyclicOrder::new(sequence).expect("components partition the vertices");
    let coloring = PageColoring::partial(pages);
    let report = verify_matching_book_embedding(g, &order, &coloring);
    if !(report.ok && report.subhamiltonian) {
        return Err(EmbedError::CombineVerificationFailed { report });
    }
    let trace = if traces.len() == 1 {
        traces.pop().unwrap()
    } else {
        DecompositionTrace::Components(traces)
    };
    Ok(Embedding { order, coloring, trace })
}

/// Cubic, bipartite, planar, in that order.
pub fn check_hypotheses(g: &Multigraph) -> Result<Bipartition, EmbedError> {
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) != 3) {
        return Err(EmbedError::NotCubic { vertex: v, degree: g.degree(v) });
    }
    let b = match bipartition(g) {
        Ok(b) => b,
        Err(GraphError::NotBipartite { cycle }) => return Err(EmbedError::NotBipartite { cycle }),
        Err(e) => return Err(e.into()),
    };
    let verdict = is_planar(g);
    if !verdict.planar {
        return Err(EmbedError::NotPlanar { witness: verdict.witness });
    }
    Ok(b)
}

fn embed_connected(
    g: &Multigraph,
    opts: EmbedOptions,
) -> Result<(CyclicOrder, PageColoring, DecompositionTrace), EmbedError> {
    let all: Vec<Vertex> = (0..g.vertex_count()).collect();
    if g.vertex_count() == 2 {
        let (w, c) = theta_embedding(g);
        return Ok((w, c, DecompositionTrace::Leaf { kind: BaseKind::Theta, vertices: all }));
    }
    let b = bipartition(g)?;
    let Some(cut) = find_disjoint_two_edge_cut(g)? else {
        let witness = exact_dispersable_subhamiltonian(g, opts.node_limit).map_err(|e| match e {
            SearchError::Exhausted { limit } => EmbedError::BaseCaseExhausted {
                vertices: g.vertex_count(),
                limit,
            },
            _ => EmbedError::BaseCaseFailed { vertices: g.vertex_count() },
        })?;
        return Ok((
            witness.order,
            witness.coloring,
            DecompositionTrace::Leaf { kind: BaseKind::ThreeConnected, vertices: all },
        ));
    };
    let (h1, h2) = split_at_cut(g, &b, &cut)?;
    debug_assert!(h1.graph.is_k_regular(3) && bipartition(&h1.graph).is_ok());
    debug_assert!(h2.graph.is_k_regular(3) && bipartition(&h2.graph).is_ok());
    debug_assert!(is_planar(&h1.graph).planar && is_planar(&h2.graph).planar);

    let (w1, c1, t1) = embed_connected(&h1.graph, opts)?;
    let (w2, c2, t2) = embed_connected(&h2.graph, opts)?;
    let c1 = normalize_colors(&c1, h1.patch_edge, GAMMA);
    let c2 = normalize_colors(&c2, h2.patch_edge, GAMMA);
    let (order, coloring) = combine(g, &cut, (&h1, &w1, &c1), (&h2, &w2, &c2))?;
    let trace = DecompositionTrace::Split {
        e_prime: (cut.u_prime, cut.w_prime),
        e_dprime: (cut.u_dprime, cut.w_dprime),
        left: Box::new(t1.relabel(&h1.back_map)),
        right: Box::new(t2.relabel(&h2.back_map)),
    };
    Ok((order, coloring, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Part;

    fn theta() -> Multigraph {
        Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    fn doubled_c4() -> Multigraph {
        Multigraph::new(4, [(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn split_doubled_c4_into_thetas() {
        let g = doubled_c4();
        let b = bipartition(&g).unwrap();
        let cut = find_disjoint_two_edge_cut(&g).unwrap().unwrap();
        let (h1, h2) = split_at_cut(&g, &b, &cut).unwrap();
        for h in [&h1, &h2] {
            assert_eq!(h.graph.vertex_count(), 2);
            assert_eq!(h.graph.multiplicity(0, 1), 3);
            assert_eq!(h.patch_edge, 2);
        }
        assert_eq!(h1.back_map, vec![0, 1]);
        assert_eq!(h2.back_map, vec![2, 3]);
        assert_eq!((h1.attach_start, h2.attach_start), (1, 1));
    }

    #[test]
    fn split_rejects_unentangled_cut() {
        let g = doubled_c4();
        let cut = find_disjoint_two_edge_cut(&g).unwrap().unwrap();
        let mut parts = bipartition(&g).unwrap().parts().to_vec();
        parts[1] = Part::White;
        let b = Bipartition::from_parts(parts);
        assert_eq!(split_at_cut(&g, &b, &cut), Err(EmbedError::EntanglementViolated));
    }

    #[test]
    fn normalize_swaps_pages() {
        let c = PageColoring::new(vec![0, 1, 2, 0]);
        assert_eq!(normalize_colors(&c, 0, GAMMA), PageColoring::new(vec![2, 1, 0, 2]));
        assert_eq!(normalize_colors(&c, 2, GAMMA), c);
    }

    #[test]
    fn combine_doubled_c4_by_hand() {
        let g = doubled_c4();
        let e = embed_dispersable(&g).unwrap();
        assert_eq!(e.order.sequence(), &[0, 1, 3, 2]);
        assert_eq!(e.coloring, PageColoring::new(vec![0, 1, 0, 1, 2, 2]));
        assert_eq!(e.trace.split_count(), 1);
    }

    #[test]
    fn theta_embeds_directly() {
        let e = embed_dispersable(&theta()).unwrap();
        assert_eq!(e.order.sequence(), &[0, 1]);
        assert_eq!(e.coloring.page_span(), 3);
        assert!(matches!(e.trace, DecompositionTrace::Leaf { kind: BaseKind::Theta, .. }));
    }

    #[test]
    fn hypothesis_failures() {
        let mut k33 = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                k33.push((a, b));
            }
        }
        let g = Multigraph::new(6, k33).unwrap();
        assert!(matches!(embed_dispersable(&g), Err(EmbedError::NotPlanar { witness: Some(_) })));
        let c4 = Multigraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(embed_dispersable(&c4), Err(EmbedError::NotCubic { .. })));
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(embed_dispersable(&k4), Err(EmbedError::NotBipartite { .. })));
    }

    #[test]
    fn two_thetas_side_by_side() {
        let g = Multigraph::new(4, [(0, 1), (2, 3), (0, 1), (2, 3), (0, 1), (2, 3)]).unwrap();
        let e = embed_dispersable(&g).unwrap();
        let r = verify_matching_book_embedding(&g, &e.order, &e.coloring);
        assert!(r.ok && r.subhamiltonian);
        assert_eq!(e.trace.leaves().len(), 2);
    }
}
