//! Finite higher-rank graphs and their Kumjian-Pask algebras.
//!
//! The crate represents finite k-graphs by their colored skeleton and
//! factorization squares, computes exactly in the Kumjian-Pask algebra
//! over `Q` or `F_p`, and decides (proper) pure infiniteness of that
//! algebra, attaching explicit, re-verifiable witness matrices to every
//! positive answer.

pub mod algebra;
pub mod aperiodic;
pub mod classify;
pub mod corpus;
pub mod expr;
pub mod degree;
pub mod field;
pub mod format;
pub mod ideals;
pub mod kgraph;
pub mod matrix;
pub mod paths;
pub mod steinberg;
pub mod validate;
pub mod witness;

pub use degree::{Degree, Shift};
pub use format::{load_kgraph, write_kgraph, ParseError};
pub use kgraph::{Edge, EdgeId, GraphError, KGraph, KGraphBuilder, Path, PathError, Square, VertexId};
pub use validate::{validate, ValidationReport, Violation};
