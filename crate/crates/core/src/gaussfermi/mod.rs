//! free-fermion Gaussian states on lattices

pub mod correlation;
pub mod fermi_surface;
pub mod geometry;
pub mod hamiltonian;
pub mod oracle;
pub mod strip;

pub use correlation::{
    escape_integral, gaussian_renyi1, ground_state_correlation, renyi1_series, replicated_moment, restrict, BlochGroundState,
    CorrelationMatrix, CorrelationSource, DenseGroundState,
};
pub use fermi_surface::{fermi_surface_area, fermi_surface_projection, DispersionGrid};
pub use geometry::{Boundary, LatticeGeometry, Region};
pub use hamiltonian::{anderson_2d, fermi_chain_1d, goe_hamiltonian, pi_flux_2d, square_lattice_2d, ModelMeta, QuadraticHamiltonian};
pub use oracle::{dense_oracle, jw_annihilation};
pub use strip::strip_renyi1;
