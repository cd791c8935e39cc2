//! Exact computations around the correspondence between Dynkin diagrams of
//! the form `T_{p,q,r}` and grade-three perfect ideals: root systems and
//! Weyl double cosets, branching of fundamental representations to the Levi
//! factor, graded Betti-table restrictions, Buchsbaum–Eisenbud multipliers
//! and first structure maps, and explicit Schubert-variety examples.

pub mod betti_check;
pub mod error;
pub mod graded_res;
pub mod lie_core;
pub mod polyalg;
pub mod repdecomp;
pub mod schubert;
pub mod weyl;

pub use error::{Error, Result};
pub use lie_core::{CartanMatrix, DiagramType, DynkinName, Format, Node, RootSystem, TShape};
