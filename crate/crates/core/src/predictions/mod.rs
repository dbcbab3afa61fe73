//! closed-form predictions and scaling fits

pub mod cft;
pub mod fermi;
pub mod fit;
pub mod scaling;

pub use cft::{cft_renyi1_zero_t, cft_renyi2n_interval, cft_thermal_limit, Beta, CftParams};
pub use fermi::{chiral_halfline, circular_fermi_momentum, disk_d, halfline_full, halfspace, midpoint_1d};
pub use fit::{fit_plateau, fit_power_law, FitMethod, FitResult};
pub use scaling::{thermal_plateau, ScalingClass};
