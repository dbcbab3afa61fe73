use crate::error::{Error, Result};
use crate::linalg::{self, cx, herm_eigen};
use crate::scalar::{CMat, Real};

use super::fidelity::renyi_one_point;
use super::operator::LocalOperator;
use super::state::{DensityMatrix, Register};

fn shifted_exp<T: Real>(h: &CMat<T>, beta: T) -> Result<(CMat<T>, CMat<T>)> {
    let dev = linalg::hermitian_deviation(h);
    if dev > T::tol(1e-10) {
        return Err(Error::NotHermitian(dev.f()));
    }
    let e = herm_eigen(h)?;
    let e0 = e.values.first().copied().unwrap_or_else(T::zero);
    let full = e.apply(&e.values, |x| (-(x - e0) * beta).exp());
    let half = e.apply(&e.values, |x| (-(x - e0) * beta / T::c(2.0)).exp());
    Ok((full, half))
}

/// e^{-beta H} / Z, evaluated after shifting H by its ground energy
pub fn gibbs_state<T: Real>(reg: Register, h: &CMat<T>, beta: T) -> Result<DensityMatrix<T>> {
    if h.nrows() != reg.dim() {
        return Err(Error::Dimension("Hamiltonian does not match register".into()));
    }
    let (full, _) = shifted_exp(h, beta)?;
    let z = linalg::trace(&full).re;
    Ok(DensityMatrix::from_parts(reg, linalg::hermitize(&(full / cx(z)))))
}

/// (R^1(rho_beta; O), Tr(e^{-beta H/2} O e^{-beta H/2} O^dagger) / Z)
pub fn thermal_renyi1_check<T: Real>(reg: &Register, h: &CMat<T>, beta: T, op: &LocalOperator<T>) -> Result<(T, T)> {
    let rho = gibbs_state(reg.clone(), h, beta)?;
    let lhs = renyi_one_point(&rho, op, T::one())?;
    let (full, half) = shifted_exp(h, beta)?;
    let z = linalg::trace(&full).re;
    let o = op.embed(reg)?;
    let rhs = linalg::trace(&(&half * &o * &half * o.adjoint())).re / z;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemix::fidelity::two_point_fidelity;
    use crate::densemix::models::{paramagnet_sector, transverse_field_chain};

    #[test]
    fn zero_beta_is_maximally_mixed() {
        let reg = Register::qubits(3);
        let h = transverse_field_chain::<f64>(3, 1.0, 0.7);
        let rho = gibbs_state(reg.clone(), &h, 0.0).unwrap();
        assert!(linalg::max_abs(&(rho.matrix() - linalg::identity::<f64>(8) * cx(0.125))) < 1e-15);
        let op = LocalOperator::pauli_string(&[(0, 'X'), (1, 'Z')]).unwrap().scale(cx(0.5));
        let (l, r) = thermal_renyi1_check(&reg, &h, 0.0, &op).unwrap();
        assert!((l - 0.25).abs() < 1e-14 && (r - 0.25).abs() < 1e-14);
    }

    #[test]
    fn imaginary_time_identity() {
        let reg = Register::qubits(6);
        let h = transverse_field_chain::<f64>(6, 1.0, 1.3);
        let (l, r) = thermal_renyi1_check(&reg, &h, 1.0, &LocalOperator::pauli(2, 'Z')).unwrap();
        assert!((l - r).abs() < 1e-10, "{l} {r}");
    }

    #[test]
    fn large_beta_does_not_overflow() {
        let reg = Register::qubits(2);
        let h = transverse_field_chain::<f64>(2, 100.0, 30.0);
        let rho = gibbs_state(reg, &h, 50.0).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn sector_two_point_approaches_sech_squared() {
        let beta = 1.0f64;
        let target = 1.0 / beta.cosh().powi(2);
        let mut prev = f64::INFINITY;
        for n in [4, 6, 8, 10] {
            let rho = paramagnet_sector::<f64>(n, beta);
            let f = two_point_fidelity(&rho, &LocalOperator::pauli(0, 'Z'), &LocalOperator::pauli(n / 2, 'Z')).unwrap();
            let gap = (f - target).abs();
            assert!(gap < prev);
            prev = gap;
        }
        assert!(prev < 0.03);
    }
}
