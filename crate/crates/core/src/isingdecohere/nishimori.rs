use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// error rate p, Nishimori inverse temperature beta and its Kramers-Wannier dual K
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NishimoriParams {
    pub p: f64,
    pub beta: f64,
    pub k: f64,
}

/// e^{-2 beta} = p / (1 - p) and e^{-2K} = tanh beta, for 0 < p < 1/2
pub fn nishimori_params(p: f64) -> Result<NishimoriParams> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::Invalid(format!("error rate {p} outside (0, 1/2)")));
    }
    let beta = 0.5 * ((1.0 - p) / p).ln();
    let k = -0.5 * beta.tanh().ln();
    Ok(NishimoriParams { p, beta, k })
}

impl NishimoriParams {
    pub fn from_beta(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Invalid(format!("beta {beta} must be positive and finite")));
        }
        nishimori_params(1.0 / (1.0 + (2.0 * beta).exp()))
    }

    /// largest violation of the two defining relations
    pub fn consistency(&self) -> f64 {
        let a = (-2.0 * self.beta).exp() - self.p / (1.0 - self.p);
        let b = (-2.0 * self.k).exp() - self.beta.tanh();
        a.abs().max(b.abs())
    }
}
