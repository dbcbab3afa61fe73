use serde::{Deserialize, Serialize};

/// free-fermion R^1 scaling classes: R^1 ~ ell^{-exponent}, or a plateau
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingClass {
    FermiMetal,
    DiracSemimetal,
    DiffusiveMetal,
    LocallyThermal,
}

impl ScalingClass {
    /// expected exponent and the tolerance used to accept a fitted value
    pub fn exponent(self) -> (f64, f64) {
        match self {
            ScalingClass::FermiMetal => (1.0, 0.1),
            ScalingClass::DiracSemimetal => (2.0, 0.15),
            ScalingClass::DiffusiveMetal => (2.0, 0.3),
            ScalingClass::LocallyThermal => (0.0, 0.0),
        }
    }

    pub fn accepts(self, fitted: f64) -> bool {
        let (e, tol) = self.exponent();
        (fitted - e).abs() <= tol
    }
}

/// sqrt(nu (1 - nu)), the locally thermal plateau of random Gaussian states
pub fn thermal_plateau(nu: f64) -> f64 {
    (nu * (1.0 - nu)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes() {
        assert!(ScalingClass::FermiMetal.accepts(1.05));
        assert!(!ScalingClass::DiracSemimetal.accepts(1.8));
        assert!(ScalingClass::DiffusiveMetal.accepts(1.75));
        assert!((thermal_plateau(0.2) - 0.4).abs() < 1e-15);
    }
}
