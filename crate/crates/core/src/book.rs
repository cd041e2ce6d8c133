//! Book embeddings: spine orders, page colorings, the crossing predicate,
//! a verifier and the exact searches.
//!
//! Two edges cross on a spine order when their endpoints interleave around
//! the circle. Edges that share an endpoint never cross; in particular
//! parallel copies of an edge never cross each other (they can be drawn
//! nested on any page).

use std::fmt;

use thiserror::Error;

use crate::graph::{bipartition, EdgeId, Multigraph, Vertex};

/// A permutation of all vertices, read cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicOrder {
    sequence: Vec<Vertex>,
    position: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sequence {0:?} is not a permutation of 0..{1}")]
pub struct NotAPermutation(pub Vec<Vertex>, pub usize);

fn positions(seq: &[Vertex]) -> Result<Vec<usize>, NotAPermutation> {
    let n = seq.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in seq.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(NotAPermutation(seq.to_vec(), n));
        }
        pos[v] = i;
    }
    Ok(pos)
}

impl CyclicOrder {
    pub fn new(sequence: Vec<Vertex>) -> Result<Self, NotAPermutation> {
        let position = positions(&sequence)?;
        Ok(CyclicOrder { sequence, position })
    }

    pub fn identity(n: usize) -> Self {
        CyclicOrder::new((0..n).collect()).unwrap()
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.sequence
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    /// The linear order that starts at `start` and walks forward (successor
    /// direction) or backward.
    pub fn linearize(&self, start: Vertex, forward: bool) -> LinearOrder {
        let n = self.len();
        let p = self.position[start];
        let sequence = (0..n)
            .map(|i| {
                let idx = if forward { (p + i) % n } else { (p + n - i) % n };
                self.sequence[idx]
            })
            .collect();
        LinearOrder { sequence }
    }

    pub fn reversed(&self) -> CyclicOrder {
        let mut s = self.sequence.clone();
        s.reverse();
        CyclicOrder::new(s).unwrap()
    }

    pub fn rotated(&self, k: usize) -> CyclicOrder {
        let mut s = self.sequence.clone();
        if !s.is_empty() {
            let k = k % s.len();
            s.rotate_left(k);
        }
        CyclicOrder::new(s).unwrap()
    }
}

/// A vertex sequence with a distinguished start. Unlike [`CyclicOrder`] it
/// need not cover `0..n`, so pieces can be concatenated before relabeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOrder {
    sequence: Vec<Vertex>,
}

impl LinearOrder {
    pub fn new(sequence: Vec<Vertex>) -> Self {
        LinearOrder { sequence }
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.sequence
    }

    pub fn opposite(&self) -> LinearOrder {
        let mut s = self.sequence.clone();
        s.reverse();
        LinearOrder { sequence: s }
    }

    pub fn concat(&self, other: &LinearOrder) -> LinearOrder {
        let mut s = self.sequence.clone();
        s.extend_from_slice(&other.sequence);
        LinearOrder { sequence: s }
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> LinearOrder {
        LinearOrder {
            sequence: self.sequence.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn to_cyclic(&self) -> Result<CyclicOrder, NotAPermutation> {
        CyclicOrder::new(self.sequence.clone())
    }
}

pub type Page = usize;

pub const ALPHA: Page = 0;
pub const BETA: Page = 1;
pub const GAMMA: Page = 2;

pub fn page_name(p: Page) -> String {
    match p {
        ALPHA => "alpha".into(),
        BETA => "beta".into(),
        GAMMA => "gamma".into(),
        p => format!("page{p}"),
    }
}

/// Edge-to-page assignment. Entries may be missing; the verifier reports
/// them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageColoring {
    page_of: Vec<Option<Page>>,
}

impl PageColoring {
    pub fn new(pages: Vec<Page>) -> Self {
        PageColoring {
            page_of: pages.into_iter().map(Some).collect(),
        }
    }

    pub fn partial(page_of: Vec<Option<Page>>) -> Self {
        PageColoring { page_of }
    }

    pub fn page(&self, e: EdgeId) -> Option<Page> {
        self.page_of.get(e).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.page_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.page_of.is_empty()
    }

    pub fn entries(&self) -> &[Option<Page>] {
        &self.page_of
    }

    /// One past the highest page used.
    pub fn page_span(&self) -> usize {
        self.page_of.iter().flatten().map(|&p| p + 1).max().unwrap_or(0)
    }

    /// Edges on page `p`, ascending by id.
    pub fn page_edges(&self, p: Page) -> Vec<EdgeId> {
        (0..self.page_of.len()).filter(|&e| self.page_of[e] == Some(p)).collect()
    }

    /// Applies a page permutation.
    pub fn renamed(&self, f: impl Fn(Page) -> Page) -> PageColoring {
        PageColoring {
            page_of: self.page_of.iter().map(|p| p.map(&f)).collect(),
        }
    }
}

/// Whether edges `e = (a, b)` and `f = (c, d)` cross on `order`.
pub fn crosses(order: &CyclicOrder, e: (Vertex, Vertex), f: (Vertex, Vertex)) -> bool {
    let (a, b) = e;
    let (c, d) = f;
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = {
        let (pa, pb) = (order.position(a), order.position(b));
        (pa.min(pb), pa.max(pb))
    };
    let inside = |v: Vertex| {
        let p = order.position(v);
        lo < p && p < hi
    };
    inside(c) != inside(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SharedEndpoint { page: Page, e: EdgeId, f: EdgeId },
    Crossing { page: Page, e: EdgeId, f: EdgeId },
    Uncolored { e: EdgeId },
    /// The order does not list exactly the graph's vertices.
    SpineMismatch { expected: usize, found: usize },
    /// Fewer or more pages than the maximum degree.
    PageCount { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SharedEndpoint { page, e, f: g } => {
                write!(f, "SharedEndpoint page={} edges={} {}", page_name(*page), e, g)
            }
            Violation::Crossing { page, e, f: g } => {
                write!(f, "Crossing page={} edges={} {}", page_name(*page), e, g)
            }
            Violation::Uncolored { e } => write!(f, "Uncolored edge={e}"),
            Violation::SpineMismatch { expected, found } => {
                write!(f, "SpineMismatch expected={expected} found={found}")
            }
            Violation::PageCount { expected, found } => {
                write!(f, "PageCount expected={expected} found={found}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub page_count: usize,
    pub violations: Vec<Violation>,
    pub subhamiltonian: bool,
}

impl VerifyReport {
    pub fn crossing_count(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| matches!(v, Violation::Crossing { .. }))
            .count()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ok={} pages={} crossings={} subhamiltonian={}",
            self.ok,
            self.page_count,
            self.crossing_count(),
            self.subhamiltonian
        )?;
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that every page is a crossing-free matching and that the number of
/// pages used equals the maximum degree.
pub fn verify_matching_book_embedding(
    g: &Multigraph,
    order: &CyclicOrder,
    coloring: &PageColoring,
) -> VerifyReport {
    if order.len() != g.vertex_count() {
        return VerifyReport {
            ok: false,
            page_count: coloring.page_span(),
            violations: vec![Violation::SpineMismatch {
                expected: g.vertex_count(),
                found: order.len(),
            }],
            subhamiltonian: false,
        };
    }
    let m = g.edge_count();
    let mut violations = Vec::new();
    for e in 0..m {
        if coloring.page(e).is_none() {
            violations.push(Violation::Uncolored { e });
        }
    }
    let mut used: Vec<Page> = (0..m).filter_map(|e| coloring.page(e)).collect();
    used.sort_unstable();
    used.dedup();
    for &p in &used {
        let on_page = coloring.page_edges(p);
        for (i, &e) in on_page.iter().enumerate() {
            for &f in &on_page[i + 1..] {
                let (ee, ff) = (g.endpoints(e), g.endpoints(f));
                if ee.0 == ff.0 || ee.0 == ff.1 || ee.1 == ff.0 || ee.1 == ff.1 {
                    violations.push(Violation::SharedEndpoint { page: p, e, f });
                } else if crosses(order, ee, ff) {
                    violations.push(Violation::Crossing { page: p, e, f });
                }
            }
        }
    }
    let page_count = used.len();
    if page_count != g.max_degree() {
        violations.push(Violation::PageCount {
            expected: g.max_degree(),
            found: page_count,
        });
    }
    VerifyReport {
        ok: violations.is_empty(),
        page_count,
        violations,
        subhamiltonian: is_subhamiltonian_order(g, order),
    }
}

/// Graph on the edges of `g`; two edges are adjacent iff they cross.
pub fn conflict_graph(g: &Multigraph, order: &CyclicOrder) -> Multigraph {
    let m = g.edge_count();
    let mut pairs = Vec::new();
    for e in 0..m {
        for f in e + 1..m {
            if crosses(order, g.endpoints(e), g.endpoints(f)) {
                pairs.push((e, f));
            }
        }
    }
    Multigraph::new(m, pairs).expect("conflict pairs are distinct edges")
}

/// Whether the edges admit a crossing-free 2-page assignment on `order`.
pub fn is_subhamiltonian_order(g: &Multigraph, order: &CyclicOrder) -> bool {
    bipartition(&conflict_graph(g, order)).is_ok()
}

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search exhausted after {limit} nodes")]
    Exhausted { limit: u64 },
    #[error("no embedding within {budget} pages")]
    NoneWithinBudget { budget: usize },
    #[error("no dispersable subhamiltonian embedding exists")]
    NoWitness,
    #[error("graph is not cubic and bipartite: {0}")]
    NotCubicBipartite(String),
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub order: CyclicOrder,
    pub coloring: PageColoring,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbtResult {
    pub value: usize,
    pub witness: Witness,
    pub nodes: u64,
}

/// Exact matching book thickness, searching page counts from the maximum
/// degree up to `page_budget`.
pub fn exact_mbt(g: &Multigraph, page_budget: usize, node_limit: u64) -> Result<MbtResult, SearchError> {
    if g.vertex_count() == 0 {
        return Err(SearchError::Empty);
    }
    let mut nodes = 0;
    for pages in g.max_degree()..=page_budget {
        let mut search = OrderSearch::new(g, pages, false, node_limit - nodes.min(node_limit));
        let found = search.run();
        nodes += search.nodes;
        match found {
            Some(witness) => return Ok(MbtResult { value: pages, witness, nodes }),
            None if search.exhausted => return Err(SearchError::Exhausted { limit: node_limit }),
            None => {}
        }
    }
    Err(SearchError::NoneWithinBudget { budget: page_budget })
}

/// Searches for a 3-page matching embedding whose spine order is also
/// subhamiltonian. Returns the first witness in canonical search order.
pub fn exact_dispersable_subhamiltonian(g: &Multigraph, node_limit: u64) -> Result<Witness, SearchError> {
    if g.vertex_count() == 0 {
        return Err(SearchError::Empty);
    }
    if !g.is_k_regular(3) {
        return Err(SearchError::NotCubicBipartite("not 3-regular".into()));
    }
    if bipartition(g).is_err() {
        return Err(SearchError::NotCubicBipartite("not bipartite".into()));
    }
    let mut search = OrderSearch::new(g, 3, true, node_limit);
    match search.run() {
        Some(w) => Ok(w),
        None if search.exhausted => Err(SearchError::Exhausted { limit: node_limit }),
        None => Err(SearchError::NoWitness),
    }
}

/// Depth-first search over spine orders with vertex 0 fixed first and
/// reflections quotiented out. Each partial order is pruned as soon as the
/// edges with both endpoints placed cannot be colored with the page budget
/// (or, when required, their crossing graph is not bipartite). Relative
/// positions of placed vertices never change, so both tests are monotone.
struct OrderSearch<'a> {
    g: &'a Multigraph,
    pages: usize,
    subhamiltonian: bool,
    node_limit: u64,
    nodes: u64,
    exhausted: bool,
    order: Vec<Vertex>,
    position: Vec<usize>,
    closed: Vec<EdgeId>,
    neighbors: Vec<Vec<usize>>,
}

impl<'a> OrderSearch<'a> {
    fn new(g: &'a Multigraph, pages: usize, subhamiltonian: bool, node_limit: u64) -> Self {
        OrderSearch {
            g,
            pages,
            subhamiltonian,
            node_limit,
            nodes: 0,
            exhausted: false,
            order: Vec::with_capacity(g.vertex_count()),
            position: vec![usize::MAX; g.vertex_count()],
            closed: Vec::new(),
            neighbors: Vec::new(),
        }
    }

    fn run(&mut self) -> Option<Witness> {
        self.place(0)?;
        self.extend()
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.exhausted = true;
        }
        !self.exhausted
    }

    /// Places `v` next and updates the constraint graph; `None` if pruned.
    fn place(&mut self, v: Vertex) -> Option<()> {
        self.position[v] = self.order.len();
        self.order.push(v);
        let before = self.closed.len();
        for &(w, e) in self.g.incident(v) {
            if self.position[w] != usize::MAX && w != v {
                self.closed.push(e);
            }
        }
        // extend the constraint adjacency (shared endpoint or crossing)
        for i in before..self.closed.len() {
            let e = self.closed[i];
            let ee = self.g.endpoints(e);
            let mut nb = Vec::new();
            for (j, &f) in self.closed[..i].iter().enumerate() {
                let ff = self.g.endpoints(f);
                let shares = ee.0 == ff.0 || ee.0 == ff.1 || ee.1 == ff.0 || ee.1 == ff.1;
                if shares || self.crosses_placed(ee, ff) {
                    nb.push(j);
                    self.neighbors[j].push(i);
                }
            }
            self.neighbors.push(nb);
        }
        if self.subhamiltonian && !self.crossings_bipartite() {
            return None;
        }
        Some(())
    }

    fn unplace(&mut self) {
        let v = self.order.pop().unwrap();
        self.position[v] = usize::MAX;
        let keep = self
            .closed
            .iter()
            .rposition(|&e| {
                let (a, b) = self.g.endpoints(e);
                a != v && b != v
            })
            .map_or(0, |i| i + 1);
        self.closed.truncate(keep);
        self.neighbors.truncate(keep);
        for nb in &mut self.neighbors {
            while nb.last().is_some_and(|&j| j >= keep) {
                nb.pop();
            }
        }
    }

    fn crosses_placed(&self, e: (Vertex, Vertex), f: (Vertex, Vertex)) -> bool {
        let (lo, hi) = {
            let (pa, pb) = (self.position[e.0], self.position[e.1]);
            (pa.min(pb), pa.max(pb))
        };
        let inside = |v: Vertex| {
            let p = self.position[v];
            lo < p && p < hi
        };
        inside(f.0) != inside(f.1)
    }

    fn crossings_bipartite(&self) -> bool {
        let k = self.closed.len();
        let mut side = vec![u8::MAX; k];
        for s in 0..k {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let ex = self.g.endpoints(self.closed[x]);
                for &y in &self.neighbors[x] {
                    let ey = self.g.endpoints(self.closed[y]);
                    let shares = ex.0 == ey.0 || ex.0 == ey.1 || ex.1 == ey.0 || ex.1 == ey.1;
                    if shares {
                        continue;
                    }
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        stack.push(y);
                    } else if side[y] == side[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn extend(&mut self) -> Option<Witness> {
        if self.exhausted || !self.tick() {
            return None;
        }
        let coloring = self.color_closed()?;
        let n = self.g.vertex_count();
        if self.order.len() == n {
            let witness = Witness {
                order: CyclicOrder::new(self.order.clone()).unwrap(),
                coloring: self.full_coloring(&coloring),
            };
            return Some(witness);
        }
        for v in 1..n {
            if self.position[v] != usize::MAX {
                continue;
            }
            // reflection: the second vertex must be smaller than the last
            if self.order.len() == n - 1 && n >= 3 && self.order[1] > v {
                continue;
            }
            if self.place(v).is_some() {
                if let Some(w) = self.extend() {
                    return Some(w);
                }
            }
            self.unplace();
            if self.exhausted {
                return None;
            }
        }
        None
    }

    fn full_coloring(&self, colors: &[Page]) -> PageColoring {
        let mut pages = vec![0; self.g.edge_count()];
        for (i, &e) in self.closed.iter().enumerate() {
            pages[e] = colors[i];
        }
        PageColoring::new(pages)
    }

    /// DSATUR-ordered backtracking coloring of the closed edges.
    fn color_closed(&mut self) -> Option<Vec<Page>> {
        let k = self.closed.len();
        let mut colors = vec![usize::MAX; k];
        if self.color_step(&mut colors, 0, 0) {
            Some(colors)
        } else {
            None
        }
    }

    fn color_step(&mut self, colors: &mut [usize], done: usize, used: usize) -> bool {
        let k = colors.len();
        if done == k {
            return true;
        }
        if !self.tick() {
            return false;
        }
        // most saturated uncolored edge, then most constrained, then lowest index
        let mut pick = usize::MAX;
        let mut best = (0usize, 0usize);
        for i in 0..k {
            if colors[i] != usize::MAX {
                continue;
            }
            let mut mask = 0u64;
            for &j in &self.neighbors[i] {
                if colors[j] != usize::MAX {
                    mask |= 1 << colors[j];
                }
            }
            let key = (mask.count_ones() as usize, self.neighbors[i].len());
            if pick == usize::MAX || key > best {
                pick = i;
                best = key;
            }
        }
        let limit = self.pages.min(used + 1);
        for c in 0..limit {
            if self.neighbors[pick].iter().any(|&j| colors[j] == c) {
                continue;
            }
            colors[pick] = c;
            if self.color_step(colors, done + 1, used.max(c + 1)) {
                return true;
            }
            colors[pick] = usize::MAX;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}
