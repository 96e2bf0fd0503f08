//! Hoffman graph machinery: slim/fat graphs, special matrices, dense
//! symmetric eigensolving, decompositions, the forbidden family M(t),
//! line-Hoffman certificates, associated Hoffman graphs, and the spectra
//! of the classical graph families.

pub mod assoc;
pub mod decomp;
pub mod error;
pub mod families;
pub mod forbidden;
pub mod graph;
pub mod hoffman;
pub mod io;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
