//! Instance generation and serialization.

pub mod format;
pub mod gen;

pub use format::{read_embedding, read_mel, write_embedding, write_mel, EdgeRef, EmbeddingFile, FormatError};
pub use gen::{
    are_isomorphic, gen_doubled_c4, gen_prism, gen_random_glued, gen_theta, glue, GenError, GluedInstance, Lcg64,
    PieceKind, PlantedCut,
};

/// The default gluing menu: Θ, doubled C4, the cube and the hexagonal prism.
pub const STANDARD_MENU: [PieceKind; 4] = [
    PieceKind::Theta,
    PieceKind::DoubledC4,
    PieceKind::Prism(2),
    PieceKind::Prism(3),
];

/// `count` random gluings over `menu` with at most `max_vertices` vertices.
/// Instance `i` tries seeds `base_seed + i`, `base_seed + i + count`, ...
/// until one fits; its piece count is drawn in `1..=max_pieces` from an
/// [`Lcg64`] seeded with `seed ^ 0x9e3779b97f4a7c15`.
pub fn build_corpus(
    base_seed: u64,
    count: usize,
    max_pieces: usize,
    max_vertices: usize,
    menu: &[PieceKind],
) -> Vec<GluedInstance> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count as u64 {
        let mut seed = base_seed + i;
        loop {
            let pieces = 1 + Lcg64::new(seed ^ 0x9e37_79b9_7f4a_7c15).below(max_pieces.max(1));
            let inst = gen_random_glued(seed, pieces, menu).expect("menu and piece count are valid");
            if inst.graph.vertex_count() <= max_vertices {
                out.push(inst);
                break;
            }
            seed += count as u64;
        }
    }
    out
}
