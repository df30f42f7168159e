//! Exact construction, verification and classification of division gradings
//! by abelian groups on the simple real algebras M_n(ℝ), M_n(ℂ) and M_n(ℍ).

pub mod classify;
pub mod error;
pub mod format;
pub mod forms;
pub mod graded;
pub mod group;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod par;
pub mod realize;
pub mod refine;
pub mod scalar;

pub use error::{Error, Result};
