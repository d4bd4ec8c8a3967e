//! Automorphism groups of algebras graded by finitely generated abelian
//! groups: `Aut_K(S)` for a graded polynomial ring, the stabilizer of an
//! ideal for `Aut_K(S/I)`, and the GIT-cone filter for Mori dream spaces.

pub mod autks;
pub mod cone;
pub mod error;
pub mod export;
pub mod git;
pub mod grading;
pub mod input;
pub mod limits;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod stabilizer;
pub mod symmetry;
pub mod validate;

pub use error::{Error, Result};
pub use limits::Limits;
