//! Combinatorial model of the mod 2 monodromy of the SL(2,C) Hitchin
//! fibration.
//!
//! The crate builds the spectral ring graph for a genus g >= 3 surface,
//! realizes the monodromy generators as GF(2) matrices on the edge space,
//! certifies the block structure of the induced action on the order-2 points
//! of the fibres, and enumerates the orbits that count the connected
//! components of the SL(2,R) Higgs-bundle moduli space.
//!
//! Module map:
//! - [`gf2`]: bit-packed exact linear algebra over the two-element field
//! - [`graph`]: the ring graph, its faces, boundary map and relation chains
//! - [`perm`]: permutations and a Schreier-Sims stabilizer chain
//! - [`monodromy`]: generators, semidirect splitting, adapted basis, block
//!   certificates
//! - [`orbits`]: orbit enumeration and the component census
//! - [`io`]: JSON and DOT serialization of graphs
//! - [`cli`]: the command-line front end

pub mod cli;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod monodromy;
pub mod orbits;
pub mod perm;
pub mod report;

pub use error::{Error, Result};
pub use graph::SpectralGraph;
