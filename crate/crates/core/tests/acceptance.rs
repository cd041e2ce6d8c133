//! End-to-end acceptance run. Each criterion prints one PASS or FAIL line;
//! the process exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bookembed::book::{
    conflict_graph, crosses, exact_dispersable_subhamiltonian, exact_mbt, verify_matching_book_embedding, CyclicOrder,
    DEFAULT_NODE_LIMIT,
};
use bookembed::corpus::{
    are_isomorphic, build_corpus, gen_doubled_c4, gen_prism, gen_theta, glue, read_embedding, read_mel,
    write_embedding, write_mel, Lcg64, PieceKind, STANDARD_MENU,
};
use bookembed::dispersable::split_at_cut;
use bookembed::embed_dispersable;
use bookembed::graph::{bipartition, bridges, check_entanglement, cutpoints, CutSplit};
use bookembed::Multigraph;
use common::*;

/// Local 2-coloring by BFS, kept separate from the library's bipartition.
fn two_coloring(g: &Multigraph) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(a, b) in g.edges() {
                let w = if a == v { b } else if b == v { a } else { continue };
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Connected cubic bipartite multigraphs built from three random perfect
/// matchings between the two halves. Parallel edges occur naturally.
fn random_cubic_bipartite(seed: u64, half: usize) -> Option<Multigraph> {
    let mut rng = Lcg64::new(seed);
    let mut edges = Vec::new();
    for _ in 0..3 {
        let mut perm: Vec<usize> = (0..half).collect();
        for i in (1..half).rev() {
            perm.swap(i, rng.below(i + 1));
        }
        edges.extend((0..half).map(|i| (i, half + perm[i])));
    }
    let g = Multigraph::new(2 * half, edges).unwrap();
    (count_components(&g, None, &[]) == 1).then_some(g)
}

/// A 2j-cycle with every other edge doubled: cubic, bipartite, planar.
fn alternating_doubled_cycle(j: usize) -> Multigraph {
    let n = 2 * j;
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        if i % 2 == 0 {
            edges.push((i, (i + 1) % n));
        }
    }
    Multigraph::new(n, edges).unwrap()
}

fn even_cycle(n: usize) -> Multigraph {
    Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn corpus_embeds() -> String {
    let start = Instant::now();
    let corpus = build_corpus(2024, 220, 12, 84, &STANDARD_MENU);
    let mut max_n = 0;
    for inst in &corpus {
        let g = &inst.graph;
        let n = g.vertex_count();
        max_n = max_n.max(n);
        let e = embed_dispersable(g).unwrap_or_else(|err| panic!("embed failed on n={n}: {err}"));
        let r = verify_matching_book_embedding(g, &e.order, &e.coloring);
        assert!(r.ok, "{r}");
        assert_eq!(r.page_count, 3);
        assert_eq!(r.crossing_count(), 0);
        for p in 0..3 {
            let page = e.coloring.page_edges(p);
            assert_eq!(page.len() * 2, n, "page {p} is not a perfect matching");
            let mut covered = vec![false; n];
            for &f in &page {
                let (a, b) = g.endpoints(f);
                assert!(!covered[a] && !covered[b]);
                covered[a] = true;
                covered[b] = true;
            }
        }
        // no crossing on any page, checked pairwise here
        for f in 0..g.edge_count() {
            for h in f + 1..g.edge_count() {
                if e.coloring.page(f) == e.coloring.page(h) {
                    assert!(!crosses(&e.order, g.endpoints(f), g.endpoints(h)));
                }
            }
        }
        assert!(two_coloring(&conflict_graph(g, &e.order)).is_some(), "conflict graph not bipartite");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    format!("{} graphs, max n = {max_n}, {:.2?}", corpus.len(), elapsed)
}

fn exact_oracle_agrees() -> String {
    let start = Instant::now();
    let corpus = build_corpus(77, 200, 5, 10, &STANDARD_MENU);
    let mut distinct: Vec<Multigraph> = Vec::new();
    for inst in corpus {
        if !distinct.contains(&inst.graph) {
            distinct.push(inst.graph);
        }
    }
    for g in &distinct {
        assert!(g.vertex_count() <= 10);
        let r = exact_mbt(g, 6, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(r.value, 3, "{g:?}");
    }
    let value = |g: &Multigraph| exact_mbt(g, 6, DEFAULT_NODE_LIMIT).unwrap().value;
    assert_eq!(value(&even_cycle(4)), 2);
    assert_eq!(value(&gen_theta()), 3);
    assert_eq!(value(&complete(4)), 4);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    format!("{} distinct graphs with n <= 10 gave 3; C4=2 theta=3 K4=4; {:.2?}", distinct.len(), elapsed)
}

fn entanglement_holds() -> String {
    let mut graphs: Vec<Multigraph> = build_corpus(5, 120, 6, 12, &STANDARD_MENU)
        .into_iter()
        .map(|i| i.graph)
        .collect();
    graphs.extend([gen_theta(), gen_doubled_c4(), gen_prism(2).unwrap(), gen_prism(3).unwrap()]);
    graphs.extend((1..=6).map(alternating_doubled_cycle));
    for seed in 0..200 {
        if let Some(g) = random_cubic_bipartite(seed, 2 + seed as usize % 5) {
            graphs.push(g);
        }
    }
    let mut cuts = 0;
    for g in &graphs {
        assert!(g.vertex_count() <= 12);
        let color = two_coloring(g).expect("bipartite");
        let b = bipartition(g).unwrap();
        for (e, f) in disjoint_cuts_oracle(g) {
            cuts += 1;
            let split = CutSplit::from_edges(g, e, f).expect("oracle cut is a valid split");
            assert!(check_entanglement(&b, &split), "cut {e},{f} of {g:?}");
            // the same fact from the local coloring
            assert_ne!(color[split.u_prime], color[split.u_dprime]);
            assert_ne!(color[split.w_prime], color[split.w_dprime]);
        }
    }
    assert!(cuts > 0);
    format!("{cuts} disjoint 2-edge-cuts over {} graphs with n <= 12", graphs.len())
}

fn regular_bipartite_have_no_cutpoints_or_bridges() -> String {
    let mut graphs: Vec<Multigraph> = (1..=40).map(|j| even_cycle(2 * j)).collect();
    graphs.extend((1..=20).map(alternating_doubled_cycle));
    graphs.extend((2..=8).map(|k| gen_prism(k).unwrap()));
    graphs.extend(build_corpus(9, 40, 10, 84, &STANDARD_MENU).into_iter().map(|i| i.graph));
    graphs.extend((0..60).filter_map(|s| random_cubic_bipartite(1000 + s, 2 + s as usize % 9)));
    let mut multigraphs = 0;
    for g in &graphs {
        let k = g.degree(0);
        assert!(k == 2 || k == 3);
        assert!(g.is_k_regular(k));
        assert!(two_coloring(g).is_some());
        assert_eq!(count_components(g, None, &[]), 1);
        assert!(cutpoints(g).is_empty(), "{g:?}");
        assert!(bridges(g).is_empty(), "{g:?}");
        assert!(cutpoints_oracle(g).is_empty());
        assert!(bridges_oracle(g).is_empty());
        if g.has_parallel_edges() {
            multigraphs += 1;
        }
    }
    assert!(graphs.len() >= 100);
    format!("{} graphs ({multigraphs} with parallel edges)", graphs.len())
}

fn round_trips() -> String {
    let menu = [PieceKind::Theta, PieceKind::DoubledC4, PieceKind::Prism(2), PieceKind::Prism(3)];
    let mut rng = Lcg64::new(31337);
    for _ in 0..50 {
        let a = menu[rng.below(menu.len())].build();
        let b = menu[rng.below(menu.len())].build();
        assert!(a.vertex_count() <= 12 && b.vertex_count() <= 12);
        let (ea, eb) = (rng.below(a.edge_count()), rng.below(b.edge_count()));
        let g = glue(&a, ea, &b, eb);
        let m = g.edge_count();
        let cut = CutSplit::from_edges(&g, m - 2, m - 1).expect("glue plants a cut");
        let (h1, h2) = split_at_cut(&g, &bipartition(&g).unwrap(), &cut).unwrap();
        assert!(are_isomorphic(&h1.graph, &a));
        assert!(are_isomorphic(&h2.graph, &b));
    }
    let corpus = build_corpus(404, 60, 8, 84, &STANDARD_MENU);
    for inst in &corpus {
        let g = &inst.graph;
        let mel = write_mel(g);
        let back = read_mel(&mel).unwrap();
        assert_eq!(&back, g);
        assert_eq!(write_mel(&back), mel);
        let e = embed_dispersable(g).unwrap();
        let text = write_embedding(g, &e.order, &e.coloring);
        let file = read_embedding(&text).unwrap();
        assert_eq!(file.to_string(), text);
        assert_eq!(file.resolve(g).unwrap(), (e.order.clone(), e.coloring.clone()));
    }
    format!("50 glue/split constructions, {} byte-exact file round trips", corpus.len())
}

fn base_case_solver() -> String {
    let mut parts = Vec::new();
    for (name, g) in [("cube", gen_prism(2).unwrap()), ("hexagonal prism", gen_prism(3).unwrap())] {
        let w = exact_dispersable_subhamiltonian(&g, 1_000_000).unwrap_or_else(|e| panic!("{name}: {e}"));
        let r = verify_matching_book_embedding(&g, &w.order, &w.coloring);
        assert!(r.ok && r.subhamiltonian, "{name}: {r}");
        parts.push(format!("{name} ok"));
    }
    parts.join(", ")
}

fn crossing_predicate() -> String {
    let mut checks = 0u64;
    for n in 1..=6 {
        let verts: Vec<usize> = (0..n).collect();
        let pairs: Vec<(usize, usize)> = if n >= 2 {
            combinations(&verts, 2).into_iter().map(|c| (c[0], c[1])).collect()
        } else {
            Vec::new()
        };
        for seq in permutations(&verts) {
            let w = CyclicOrder::new(seq.clone()).unwrap();
            for &e in &pairs {
                for &f in &pairs {
                    assert_eq!(crosses(&w, e, f), geometric_cross(&seq, e, f), "{seq:?} {e:?} {f:?}");
                    checks += 1;
                }
            }
        }
    }
    format!("{checks} edge-pair checks over all orders with n <= 6")
}

type Criterion = (&'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 7] = [
        ("corpus embeds with 3 verified pages", corpus_embeds),
        ("exact search agrees on small graphs", exact_oracle_agrees),
        ("cut attachments lie in different parts", entanglement_holds),
        ("regular bipartite graphs are 2-connected", regular_bipartite_have_no_cutpoints_or_bridges),
        ("glue/split and file round trips", round_trips),
        ("base-case solver within 10^6 nodes", base_case_solver),
        ("crossing predicate matches geometry", crossing_predicate),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("PASS {}: {name} ({detail})", i + 1),
            Err(payload) => {
                failed += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL {}: {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
