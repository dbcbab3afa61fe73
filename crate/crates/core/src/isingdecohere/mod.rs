//! ZZ-decohered Ising paramagnet: X-basis distributions, order parameters and the boundary-field Ising model

pub mod magnet;
pub mod nishimori;
pub mod oracle;
pub mod probs;
pub mod rbim;
pub mod region;

pub use magnet::{ising_magnetization_exact, ising_magnetization_mc, McEstimate, McSchedule};
pub use nishimori::{nishimori_params, NishimoriParams};
pub use oracle::{dense_xbasis_probabilities, embedded_xbasis_probabilities};
pub use probs::{fidelity_from_probs, renyi1_from_probs, renyi2k_from_probs, xbasis_probabilities, XBasisDistribution};
pub use rbim::{xbasis_probabilities_ising, xbasis_probabilities_rbim};
pub use region::RegionGraph;
