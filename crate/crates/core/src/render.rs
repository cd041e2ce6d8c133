//! SVG arc diagrams of book embeddings.
//!
//! Vertices sit on a horizontal spine in order; even pages are drawn as arcs
//! above the spine and odd pages below, each page in its own stroke color.
//! Parallel edges get increasingly tall arcs so they stay distinguishable.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::book::{page_name, verify_matching_book_embedding, CyclicOrder, PageColoring, Violation};
use crate::graph::{EdgeId, Multigraph};

const SPACING: f64 = 48.0;
const MARGIN: f64 = 32.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];
const UNCOLORED: &str = "#7f7f7f";

pub fn page_color(p: usize) -> &'static str {
    PALETTE[p % PALETTE.len()]
}

/// Renders the embedding. With `highlight`, edges involved in a crossing or
/// shared-endpoint violation are drawn thick and dashed.
pub fn render_svg(g: &Multigraph, order: &CyclicOrder, coloring: &PageColoring, highlight: bool) -> String {
    let n = order.len();
    let half_span = (n.saturating_sub(1)) as f64 * SPACING / 2.0;
    let max_mult = g
        .edges()
        .iter()
        .map(|&(a, b)| g.multiplicity(a, b))
        .max()
        .unwrap_or(1);
    let arc_height = half_span * (1.0 + 0.25 * (max_mult.saturating_sub(1)) as f64) + SPACING / 2.0;
    let width = 2.0 * MARGIN + (n.saturating_sub(1)) as f64 * SPACING;
    let height = 2.0 * MARGIN + 2.0 * arc_height;
    let spine_y = MARGIN + arc_height;

    let mut flagged = vec![false; g.edge_count()];
    if highlight {
        for v in verify_matching_book_embedding(g, order, coloring).violations {
            if let Violation::Crossing { e, f, .. } | Violation::SharedEndpoint { e, f, .. } = v {
                flagged[e] = true;
                flagged[f] = true;
            }
        }
    }

    let mut copy_index: Vec<usize> = Vec::with_capacity(g.edge_count());
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for &(a, b) in g.edges() {
        let k = seen.entry((a.min(b), a.max(b))).or_insert(0);
        copy_index.push(*k);
        *k += 1;
    }

    let x = |v: usize| MARGIN + order.position(v) as f64 * SPACING;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    writeln!(
        out,
        r##"<line class="spine" x1="{:.1}" y1="{spine_y:.1}" x2="{:.1}" y2="{spine_y:.1}" stroke="#000000" stroke-width="1"/>"##,
        MARGIN,
        width - MARGIN
    )
    .unwrap();
    let mut page_groups: Vec<(Option<usize>, Vec<EdgeId>)> = (0..coloring.page_span())
        .map(|p| (Some(p), coloring.page_edges(p)))
        .collect();
    let uncolored: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| coloring.page(e).is_none()).collect();
    if !uncolored.is_empty() {
        page_groups.push((None, uncolored));
    }
    for (page, edges) in page_groups {
        let (name, color) = match page {
            Some(p) => (page_name(p), page_color(p)),
            None => ("uncolored".to_string(), UNCOLORED),
        };
        let above = page.is_none_or(|p| p % 2 == 0);
        writeln!(out, r#"<g class="page" data-page="{name}" stroke="{color}" fill="none" stroke-width="2">"#).unwrap();
        for e in edges {
            let (a, b) = g.endpoints(e);
            let (x1, x2) = {
                let (xa, xb) = (x(a), x(b));
                (xa.min(xb), xa.max(xb))
            };
            let rx = (x2 - x1) / 2.0;
            let ry = rx * (1.0 + 0.25 * copy_index[e] as f64);
            let sweep = if above { 1 } else { 0 };
            let extra = if flagged[e] {
                r#" class="violation" stroke-width="4" stroke-dasharray="6 3""#
            } else {
                ""
            };
            writeln!(
                out,
                r#"<path data-edge="{e}" d="M {x1:.1} {spine_y:.1} A {rx:.1} {ry:.1} 0 0 {sweep} {x2:.1} {spine_y:.1}"{extra}/>"#
            )
            .unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    for &v in order.sequence() {
        writeln!(
            out,
            r##"<circle class="vertex" data-vertex="{v}" cx="{:.1}" cy="{spine_y:.1}" r="5" fill="#000000"/>"##,
            x(v)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
