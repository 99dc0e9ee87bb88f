//! Optimal homologous chains over the integers, solved by exact rational
//! linear programming, plus total-unimodularity and neutralization analysis
//! of simplicial boundary matrices.

pub mod complex;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod neutralization;
pub mod rational;
pub mod tu;

pub use complex::{build_complex, BoundaryMatrix, Chain, SimplicialComplex, Simplex, Vertex};
pub use rational::Q;
