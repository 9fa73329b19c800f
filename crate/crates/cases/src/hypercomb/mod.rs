//! Closed 4-uniform hypergraphs and the matchings that feed the case engine.

pub mod find;
pub mod generate;
pub mod hypergraph;
pub mod k5;
pub mod six_eleven;

pub use find::{find_5_10_or_6_11, Found, FoundKind, LemmaCase};
pub use generate::{closed_hypergraphs, random_closed};
pub use hypergraph::*;
pub use k5::{enumerate_k5_schemes, reference_schemes, scheme_to_matching, PloughingScheme, SchemeClass, VertexMatching};
pub use six_eleven::{enumerate_6_11_matchings, SigmaPair, SixElevenClass, SixElevenClassification};
