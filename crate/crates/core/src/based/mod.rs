//! Positively based rings and their based modules: H-cell rings, dihedral
//! small quotients, transitive module enumeration and spectral graphs.
//!
//! Enumerated modules and graphs are decategorified candidates only; no
//! claim is made about the 2-representations they may come from.

mod dihedral;
mod graphs;
mod hcell;
pub mod linalg;
mod modules;
mod ring;

pub use dihedral::{dihedral_ring_from_formulas, dihedral_ring_from_hecke, dihedral_small_quotient_ring};
pub use graphs::{classify_spectral_graphs, subtwo_census, EigenCertificate, Graph, SpectralGraph};
pub use hcell::{
    cell_quotient_ring, parabolic_reduction, small_quotient_ring, truncated_ring,
    two_sided_quotient_ring, ParabolicReduction,
};
pub use modules::{
    enumerate_transitive_modules, enumerate_with, BasedModule, Enumeration, EnumerationOptions,
    Matrix,
};
pub use ring::{cyclic_group_ring, quadratic_ring, trivial_ring, BasedRing, BasisCells};
