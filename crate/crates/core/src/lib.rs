//! Recognition, symmetric lifts and Henneberg-type constructions for
//! group-colored sparse graphs (Ross, cone-Laman and cylinder-Laman).

pub mod certificate;
pub mod dot;
pub mod error;
pub mod graph;
pub mod group;
pub mod henneberg;
pub mod lift;
pub mod pebble;
pub mod recognize;
pub mod sparsity;

pub use certificate::Certificate;
pub use error::{Error, Result};
pub use graph::{gauge_normalize, ColoredGraph, Edge, EdgeId, Subgraph, SubgraphCounts, VertexId};
pub use group::{rank_of_span, GroupElem, GroupSpec};
pub use henneberg::{apply_move, deconstruct, is_base, random_construct, reverse_candidates, verify_certificate, Move};
pub use lift::{build_lift, cone_laman_via_lift, SymmetricGraph};
pub use pebble::{fundamental_circuit, is_kl_sparse, is_kl_spanning, kl_basis, SparsityParams, UncoloredMultigraph};
pub use recognize::{check, Method};
pub use sparsity::{check_colored_sparsity, Family, Verdict};
