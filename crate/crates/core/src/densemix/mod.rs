//! exact dense mixed-state engine

pub mod channel;
pub mod connected;
pub mod entropy;
pub mod fidelity;
pub mod lowrank;
pub mod models;
pub mod nonabelian;
pub mod operator;
pub mod random;
pub mod state;
pub mod symmetry;
pub mod thermal;
pub mod unitary;

pub use channel::{apply_channel, make_pauli_channel, symmetric_channel_fuzz, KrausChannel, PauliKind};
pub use connected::{averaged_one_two_check, connected_fidelity_matrix, connected_renyi_matrix};
pub use entropy::{cmi, Tripartition};
pub use fidelity::{fidelity, lfc_one_point, renyi_one_point, two_point_fidelity, two_point_renyi};
pub use nonabelian::{nonabelian_lfc_channel, nonabelian_lfc_maxv, OperatorMultiplet};
pub use operator::LocalOperator;
pub use state::{DensityMatrix, Register};
pub use symmetry::{charge_decompose, disorder_parameter, order_disorder_check, SymmetryAction};
pub use thermal::{gibbs_state, thermal_renyi1_check};
pub use unitary::unitary_decompose;
