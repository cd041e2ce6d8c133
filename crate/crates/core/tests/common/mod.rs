//! Brute-force oracles shared by the integration suites. None of these call
//! into the code paths they are used to check.
#![allow(dead_code)]

use std::collections::HashSet;

use bookembed::Multigraph;

pub fn theta() -> Multigraph {
    Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap()
}

pub fn cycle(n: usize) -> Multigraph {
    Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Multigraph {
    let mut e = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            e.push((a, b));
        }
    }
    Multigraph::new(n, e).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    let mut e = Vec::new();
    for x in 0..a {
        for y in 0..b {
            e.push((x, a + y));
        }
    }
    Multigraph::new(a + b, e).unwrap()
}

pub fn hypercube() -> Multigraph {
    let mut e = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                e.push((v, v | bit));
            }
        }
    }
    Multigraph::new(8, e).unwrap()
}

/// Component count by union-find, skipping removed vertices and edges.
pub fn count_components(g: &Multigraph, skip_vertex: Option<usize>, skip_edges: &[usize]) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        if skip_edges.contains(&id) || Some(a) == skip_vertex || Some(b) == skip_vertex {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let roots: HashSet<usize> = (0..n)
        .filter(|&v| Some(v) != skip_vertex)
        .map(|v| find(&mut parent, v))
        .collect();
    roots.len()
}

pub fn cutpoints_oracle(g: &Multigraph) -> Vec<usize> {
    let base = count_components(g, None, &[]);
    (0..g.vertex_count())
        .filter(|&v| {
            // an isolated vertex disappearing lowers the count; that is not a cut
            let isolated = g.degree(v) == 0;
            !isolated && count_components(g, Some(v), &[]) > base
        })
        .collect()
}

pub fn bridges_oracle(g: &Multigraph) -> Vec<usize> {
    let base = count_components(g, None, &[]);
    (0..g.edge_count())
        .filter(|&e| count_components(g, None, &[e]) > base)
        .collect()
}

/// Every vertex-disjoint edge pair `(e, f)`, `e < f`, whose removal
/// disconnects a connected graph.
pub fn disjoint_cuts_oracle(g: &Multigraph) -> Vec<(usize, usize)> {
    let m = g.edge_count();
    let mut out = Vec::new();
    for e in 0..m {
        for f in e + 1..m {
            let (a, b) = g.endpoints(e);
            let (c, d) = g.endpoints(f);
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if count_components(g, None, &[e, f]) > 1 {
                out.push((e, f));
            }
        }
    }
    out
}

/// Chord intersection with the vertices placed on a unit circle.
pub fn geometric_cross(seq: &[usize], e: (usize, usize), f: (usize, usize)) -> bool {
    let n = seq.len();
    let point = |v: usize| {
        let i = seq.iter().position(|&x| x == v).unwrap();
        let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        (t.cos(), t.sin())
    };
    if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
        return false;
    }
    let (p1, p2, p3, p4) = (point(e.0), point(e.1), point(f.0), point(f.1));
    let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    let d1 = orient(p3, p4, p1);
    let d2 = orient(p3, p4, p2);
    let d3 = orient(p1, p2, p3);
    let d4 = orient(p1, p2, p4);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// All permutations of `items` in lexicographic order.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Cyclic orders with vertex 0 first, one representative per reflection.
pub fn cyclic_orders(n: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = (1..n).collect();
    permutations(&rest)
        .into_iter()
        .filter(|p| p.len() < 2 || p[0] < p[p.len() - 1])
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect()
}

fn shares(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

fn interleaved(pos: &[usize], e: (usize, usize), f: (usize, usize)) -> bool {
    if shares(e, f) {
        return false;
    }
    let (lo, hi) = (pos[e.0].min(pos[e.1]), pos[e.0].max(pos[e.1]));
    let inside = |v: usize| lo < pos[v] && pos[v] < hi;
    inside(f.0) != inside(f.1)
}

fn positions(seq: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; seq.len()];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// Naive matching book thickness: every canonical cyclic order times every
/// page assignment in `0..p`, for increasing `p`.
pub fn naive_mbt(g: &Multigraph, max_pages: usize) -> Option<usize> {
    let m = g.edge_count();
    let edges = g.edges().to_vec();
    let orders = cyclic_orders(g.vertex_count());
    for p in 0..=max_pages {
        if m > 0 && p == 0 {
            continue;
        }
        for seq in &orders {
            let pos = positions(seq);
            let mut conflict = vec![Vec::new(); m];
            for e in 0..m {
                for f in e + 1..m {
                    if shares(edges[e], edges[f]) || interleaved(&pos, edges[e], edges[f]) {
                        conflict[e].push(f);
                    }
                }
            }
            let total = (p as u64).pow(m as u32);
            for code in 0..total {
                let mut c = code;
                let colors: Vec<usize> = (0..m)
                    .map(|_| {
                        let x = (c % p as u64) as usize;
                        c /= p as u64;
                        x
                    })
                    .collect();
                if (0..m).all(|e| conflict[e].iter().all(|&f| colors[e] != colors[f])) {
                    return Some(p);
                }
            }
        }
    }
    None
}

/// Whether some assignment of the edges to two pages avoids same-page
/// crossings (sharing endpoints allowed), by enumerating all 2^m splits.
pub fn two_page_oracle(g: &Multigraph, seq: &[usize]) -> bool {
    let m = g.edge_count();
    assert!(m <= 20);
    let pos = positions(seq);
    let edges = g.edges();
    let mut cross = Vec::new();
    for e in 0..m {
        for f in e + 1..m {
            if interleaved(&pos, edges[e], edges[f]) {
                cross.push((e, f));
            }
        }
    }
    (0u32..1 << m).any(|mask| cross.iter().all(|&(e, f)| (mask >> e & 1) != (mask >> f & 1)))
}

/// Planarity by exhaustive minor search: contract edges in every possible
/// way and look for a K5 or K3,3 subgraph. Simple graphs, n <= 8.
pub fn planar_by_minors(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    assert!(n <= 8);
    let mut adj = vec![0u16; n];
    for &(a, b) in g.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut seen = HashSet::new();
    !has_kuratowski_minor(adj, &mut seen)
}

fn has_kuratowski_minor(adj: Vec<u16>, seen: &mut HashSet<Vec<u16>>) -> bool {
    if !seen.insert(adj.clone()) {
        return false;
    }
    if has_kuratowski_subgraph(&adj) {
        return true;
    }
    let n = adj.len();
    if n <= 5 {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            if adj[a] >> b & 1 == 1 && has_kuratowski_minor(contract(&adj, a, b), seen) {
                return true;
            }
        }
    }
    false
}

fn contract(adj: &[u16], a: usize, b: usize) -> Vec<u16> {
    // merge b into a, then drop b and shift higher indices down
    let n = adj.len();
    let mut merged: Vec<u16> = adj.to_vec();
    merged[a] = (adj[a] | adj[b]) & !(1 << a) & !(1 << b);
    for v in 0..n {
        if v != a && adj[v] >> b & 1 == 1 {
            merged[v] |= 1 << a;
        }
    }
    let squeeze = |mask: u16| {
        let low = mask & ((1 << b) - 1);
        let high = (mask >> (b + 1)) << b;
        low | high
    };
    (0..n)
        .filter(|&v| v != b)
        .map(|v| squeeze(merged[v] & !(1 << b)))
        .collect()
}

fn has_kuratowski_subgraph(adj: &[u16]) -> bool {
    let n = adj.len();
    let verts: Vec<usize> = (0..n).collect();
    for combo in combinations(&verts, 5) {
        if combo
            .iter()
            .all(|&x| combo.iter().all(|&y| x == y || adj[x] >> y & 1 == 1))
        {
            return true;
        }
    }
    for combo in combinations(&verts, 6) {
        for left in combinations(&combo, 3) {
            if !left.contains(&combo[0]) {
                continue;
            }
            let right: Vec<usize> = combo.iter().copied().filter(|v| !left.contains(v)).collect();
            if left.iter().all(|&x| right.iter().all(|&y| adj[x] >> y & 1 == 1)) {
                return true;
            }
        }
    }
    false
}

pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mut rest in combinations(&items[1..], k - 1) {
        rest.insert(0, items[0]);
        out.push(rest);
    }
    out.extend(combinations(&items[1..], k));
    out
}
