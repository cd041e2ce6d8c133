//! Dispersable, subhamiltonian book embeddings of cubic planar bipartite
//! multigraphs.
//!
//! Every such graph has a spine order with a crossing-free 3-page matching
//! book embedding whose edges also fit on 2 ordinary pages.
//! [`dispersable::embed_dispersable`] builds one by recursive splitting at
//! disjoint 2-edge-cuts; [`book`] holds the verifier and the exact searches
//! used for the 3-connected base case and for cross-checking.

pub mod book;
pub mod corpus;
pub mod dispersable;
pub mod graph;
pub mod planarity;
pub mod render;

pub use book::{CyclicOrder, LinearOrder, PageColoring, VerifyReport};
pub use dispersable::{embed_dispersable, EmbedError, Embedding};
pub use graph::{Bipartition, CutSplit, Multigraph};
