use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Beta {
    Finite(f64),
    Infinite,
}

/// interval (u, v) around the insertion x, inverse temperature, scaling dimension and replica half-count
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CftParams {
    pub u: f64,
    pub x: f64,
    pub v: f64,
    pub beta: Beta,
    pub delta: f64,
    pub n: f64,
}

impl CftParams {
    pub fn new(u: f64, x: f64, v: f64, beta: Beta, delta: f64, n: f64) -> Result<Self> {
        if !(u < x && x < v) {
            return Err(Error::Invalid("need u < x < v".into()));
        }
        if !(delta > 0.0) || !(n > 0.0) {
            return Err(Error::Invalid("scaling dimension and replica count must be positive".into()));
        }
        if let Beta::Finite(b) = beta {
            if !(b > 0.0) {
                return Err(Error::Invalid(format!("inverse temperature {b} must be positive")));
            }
        }
        Ok(CftParams { u, x, v, beta, delta, n })
    }

    /// symmetric interval of half-width l around x = 0
    pub fn symmetric(l: f64, beta: Beta, delta: f64, n: f64) -> Result<Self> {
        Self::new(-l, 0.0, l, beta, delta, n)
    }
}

/// ln sinh y for y > 0 without overflow
fn ln_sinh(y: f64) -> f64 {
    if y > 20.0 {
        y - std::f64::consts::LN_2 + (-(-2.0 * y).exp()).ln_1p()
    } else {
        y.sinh().ln()
    }
}

/// [ (pi / (4 n beta)) sinh(pi (v-u)/beta) / (sinh(pi (x-u)/beta) sinh(pi (v-x)/beta)) ]^{2 Delta},
/// with the linear limit of sinh at beta = infinity
pub fn cft_renyi2n_interval(p: &CftParams) -> Result<f64> {
    let (a, b, c) = (p.v - p.u, p.x - p.u, p.v - p.x);
    let log_base = match p.beta {
        Beta::Infinite => (a / (4.0 * p.n * b * c)).ln(),
        Beta::Finite(beta) => {
            if !(beta > 0.0) {
                return Err(Error::Invalid(format!("inverse temperature {beta} must be positive")));
            }
            let s = PI / beta;
            (s / (4.0 * p.n)).ln() + ln_sinh(s * a) - ln_sinh(s * b) - ln_sinh(s * c)
        }
    };
    Ok((2.0 * p.delta * log_base).exp())
}

/// ((1/l_L + 1/l_R) / 2)^{2 Delta}
pub fn cft_renyi1_zero_t(l_left: f64, l_right: f64, delta: f64) -> Result<f64> {
    if !(l_left > 0.0 && l_right > 0.0) {
        return Err(Error::Invalid("distances must be positive".into()));
    }
    Ok((0.5 * (1.0 / l_left + 1.0 / l_right)).powf(2.0 * delta))
}

/// (pi / beta)^{2 Delta}, the infinite-interval thermal value at n = 1/2
pub fn cft_thermal_limit(beta: f64, delta: f64) -> f64 {
    (PI / beta).powf(2.0 * delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plug_in_values() {
        let p = CftParams::new(0.0, 10.0, 20.0, Beta::Infinite, 0.5, 0.5).unwrap();
        assert!((cft_renyi2n_interval(&p).unwrap() - 0.1).abs() < 1e-15);
        assert!((cft_renyi1_zero_t(10.0, 30.0, 0.5).unwrap() - 1.0 / 15.0).abs() < 1e-15);
        assert!((cft_renyi1_zero_t(7.0, 7.0, 0.8).unwrap() - 7f64.powf(-1.6)).abs() < 1e-15);
        assert!((cft_renyi1_zero_t(3.0, 1e300, 1.0).unwrap() - 1.0 / 36.0).abs() < 1e-15);
    }

    #[test]
    fn limits() {
        let l = 12.0;
        let p = CftParams::symmetric(l, Beta::Infinite, 0.3, 0.5).unwrap();
        assert!((cft_renyi2n_interval(&p).unwrap() - l.powf(-0.6)).abs() < 1e-14);
        let big = CftParams::symmetric(l, Beta::Finite(1e6 * 2.0 * l), 0.3, 0.5).unwrap();
        let rel = cft_renyi2n_interval(&big).unwrap() / cft_renyi2n_interval(&p).unwrap() - 1.0;
        assert!(rel.abs() < 1e-6);
        let beta = 3.0;
        let wide = CftParams::symmetric(1e4, Beta::Finite(beta), 0.7, 0.5).unwrap();
        let t = cft_renyi2n_interval(&wide).unwrap();
        assert!((t / cft_thermal_limit(beta, 0.7) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn invalid() {
        assert!(CftParams::new(1.0, 0.0, 2.0, Beta::Infinite, 0.5, 0.5).is_err());
        assert!(CftParams::new(0.0, 1.0, 2.0, Beta::Finite(-1.0), 0.5, 0.5).is_err());
        assert!(cft_renyi1_zero_t(0.0, 1.0, 0.5).is_err());
    }
}
