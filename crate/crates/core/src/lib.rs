//! Finite quantum groups: Wedderburn decomposition of the dual, hulls and
//! synthesis of left ideals in the convolution algebra, idempotent states and
//! quasi-subgroups, cosets, and crossed products by finite group actions.

pub mod cli;
pub mod cosets;
pub mod crossed;
pub mod dual;
pub mod error;
pub mod group;
pub mod hopf;
pub mod ideals;
pub mod linalg;
pub mod quasigroup;

pub use dual::{wedderburn, Functional, IrrBlock, IrrTable};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use hopf::{Element, FiniteQuantumGroup};
pub use linalg::{Subspace, Tolerance, C64};
