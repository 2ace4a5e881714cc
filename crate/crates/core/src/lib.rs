//! Nonsignaling boxes with two inputs and two outputs per party.
//!
//! The crate covers bipartite and tripartite boxes, the Bell, Mermin and
//! Svetlichny discord measures built from the moduli of the corresponding
//! inequality operators, convex decompositions into PR/Svetlichny, Mermin and
//! classical parts, and Born-rule boxes from two- and three-qubit states.
//!
//! ```
//! use boxlab_core::boxcore::{vertex, VertexId, mix};
//! use boxlab_core::discord2::bell_discord;
//!
//! let iso = mix(&[vertex(VertexId::Pr(0, 0, 0)), vertex(VertexId::Noise)], &[0.3, 0.7]).unwrap();
//! assert!((bell_discord(&iso) - 1.2).abs() < 1e-12);
//! ```

pub mod boxcore;
pub mod discord2;
pub mod io;
pub mod polytope;
pub mod qstate;
pub mod sample;
pub mod tribox;
pub mod verify;

/// Tolerance for box validity checks.
pub const EPS: f64 = 1e-9;
/// Tolerance for quantities coming out of the LP solver.
pub const LP_EPS: f64 = 1e-7;

pub use boxcore::{BipartiteBox, BoxError, Lro, VertexId};
pub use tribox::{TriVertexId, TripartiteBox};
