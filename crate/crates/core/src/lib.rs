//! Classification of Dehn functions of Bestvina-Brady groups from their
//! defining graphs, together with the supporting calculus: words in
//! right-angled Artin groups, finite presentations of the kernel of the
//! height map, coloured words and pushdowns, and combinatorial planar
//! diagrams with corridor and annulus analysis.
//!
//! ```
//! use dehnscope_core::classify::dehn_exponent;
//! use dehnscope_core::corpus;
//! use dehnscope_core::homology::DEFAULT_PI1_BUDGET;
//!
//! // The suspension of a path of length three has a cubic Dehn function.
//! let report = dehn_exponent(&corpus::gamma1(), DEFAULT_PI1_BUDGET).unwrap();
//! assert_eq!(report.exponent, 3);
//! assert!(report.cat0_obstructed);
//! ```
//!
//! ```
//! use dehnscope_core::corpus;
//! use dehnscope_core::words::{normal_form, words_equal, Word};
//!
//! let g = corpus::k3();
//! let u = Word::parse(&g, "b a a'").unwrap();
//! let v = Word::parse(&g, "b").unwrap();
//! assert!(words_equal(&g, &u, &v));
//! assert_eq!(normal_form(&g, &u), v);
//! ```

pub mod classify;
pub mod coloured;
pub mod corpus;
pub mod diagram;
pub mod graph;
pub mod homology;
pub mod presentation;
pub mod reducible;
pub mod witness;
pub mod words;

pub use graph::{GraphError, JoinDecomposition, SimplicialGraph, SpanningTree, VertexId, VertexSet};
