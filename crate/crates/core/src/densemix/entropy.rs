use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Real;

use super::state::{DensityMatrix, Register};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tripartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl Tripartition {
    pub fn new(a: Vec<usize>, b: Vec<usize>, c: Vec<usize>) -> Self {
        Tripartition { a, b, c }
    }

    pub fn validate(&self, reg: &Register) -> Result<()> {
        let mut all: Vec<usize> = self.a.iter().chain(&self.b).chain(&self.c).copied().collect();
        let n = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != n {
            return Err(Error::Invalid("tripartition parts overlap".into()));
        }
        for &s in &all {
            reg.position(s)?;
        }
        if n != reg.len() {
            return Err(Error::Invalid("tripartition does not cover the register".into()));
        }
        Ok(())
    }
}

pub fn von_neumann<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    linalg::entropy(rho.matrix())
}

fn marginal_entropy<T: Real>(rho: &DensityMatrix<T>, keep: &[usize]) -> Result<T> {
    if keep.is_empty() {
        return Ok(T::zero());
    }
    von_neumann(&rho.partial_trace(keep)?)
}

/// I(A:C|B) = S(AB) + S(BC) - S(B) - S(ABC) in nats
pub fn cmi<T: Real>(rho: &DensityMatrix<T>, part: &Tripartition) -> Result<T> {
    part.validate(rho.register())?;
    let ab: Vec<usize> = part.a.iter().chain(&part.b).copied().collect();
    let bc: Vec<usize> = part.b.iter().chain(&part.c).copied().collect();
    let v = marginal_entropy(rho, &ab)? + marginal_entropy(rho, &bc)?
        - marginal_entropy(rho, &part.b)?
        - von_neumann(rho)?;
    if v.abs() < T::tol(1e-9) {
        Ok(T::zero())
    } else {
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemix::models::rho_infinity;
    use crate::densemix::random::random_state;

    #[test]
    fn product_has_zero_cmi() {
        let a = random_state::<f64>(&Register::qubit_sites(&[0]).unwrap(), 2, 1);
        let b = random_state::<f64>(&Register::qubit_sites(&[1, 2]).unwrap(), 4, 2);
        let c = random_state::<f64>(&Register::qubit_sites(&[3]).unwrap(), 2, 3);
        let rho = a.tensor(&b).unwrap().tensor(&c).unwrap();
        let v = cmi(&rho, &Tripartition::new(vec![0], vec![1, 2], vec![3])).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn parity_state_carries_one_bit() {
        let rho = rho_infinity::<f64>(6, 1);
        let v = cmi(&rho, &Tripartition::new(vec![0], vec![1, 2, 3, 4], vec![5])).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn bad_partitions_rejected() {
        let rho = rho_infinity::<f64>(3, 1);
        assert!(cmi(&rho, &Tripartition::new(vec![0], vec![0, 1], vec![2])).is_err());
        assert!(cmi(&rho, &Tripartition::new(vec![0], vec![1], vec![])).is_err());
    }
}
