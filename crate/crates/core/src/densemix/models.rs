//! small exact states used by tests, fixtures and acceptance

use crate::linalg::{self, cx};
use crate::scalar::{CMat, Real};

use super::operator::LocalOperator;
use super::state::{DensityMatrix, Register};

fn x_string<T: Real>(n: usize) -> CMat<T> {
    linalg::kron_all(&vec![linalg::pauli::<T>('X'); n])
}

/// (1 + s prod X) / 2^n with s = +1 or -1
pub fn rho_infinity<T: Real>(n: usize, sign: i32) -> DensityMatrix<T> {
    let d = 1usize << n;
    let s = if sign < 0 { -T::one() } else { T::one() };
    let m = (linalg::identity::<T>(d) + x_string::<T>(n) * cx(s)) / cx(T::c(d as f64));
    DensityMatrix::from_parts(Register::qubits(n), m)
}

fn exp_bx<T: Real>(beta: T) -> CMat<T> {
    linalg::identity::<T>(2) * cx(beta.cosh()) + linalg::pauli::<T>('X') * cx(beta.sinh())
}

/// product Gibbs state of H = -sum X
pub fn paramagnet_gibbs<T: Real>(n: usize, beta: T) -> DensityMatrix<T> {
    let single = exp_bx(beta) / cx(T::c(2.0) * beta.cosh());
    DensityMatrix::from_parts(Register::qubits(n), linalg::kron_all(&vec![single; n]))
}

/// Gibbs state of H = -sum X projected to the even sector of prod X
pub fn paramagnet_sector<T: Real>(n: usize, beta: T) -> DensityMatrix<T> {
    let e = exp_bx(beta);
    let xe = linalg::pauli::<T>('X') * &e;
    let m = linalg::kron_all(&vec![e; n]) + linalg::kron_all(&vec![xe; n]);
    let tr = linalg::trace(&m).re;
    DensityMatrix::from_parts(Register::qubits(n), m / cx(tr))
}

/// F(rho_A; Z_i) of the even-sector paramagnet: sqrt(1 - t^{2|Abar|}) / (1 + t^N) / cosh(beta)
pub fn paramagnet_lfc_closed_form(n: usize, region: usize, beta: f64) -> f64 {
    let t = beta.tanh();
    (1.0 - t.powi(2 * (n - region) as i32)).sqrt() / (1.0 + t.powi(n as i32)) / beta.cosh()
}

/// (t^{|Abar|} + t^{|A|}) / (t^N + 1), the disorder parameter of the reduced even-sector paramagnet
pub fn paramagnet_epsilon(n: usize, region: usize, beta: f64) -> f64 {
    let t = beta.tanh();
    (t.powi((n - region) as i32) + t.powi(region as i32)) / (t.powi(n as i32) + 1.0)
}

/// H = -J sum Z_i Z_{i+1} - h sum X_i on an open chain
pub fn transverse_field_chain<T: Real>(n: usize, j: T, h: T) -> CMat<T> {
    let reg = Register::qubits(n);
    let d = reg.dim();
    let mut m = CMat::zeros(d, d);
    for i in 0..n {
        let x = LocalOperator::<T>::pauli(i, 'X').embed(&reg).unwrap();
        m -= x * cx(h);
        if i + 1 < n {
            let zz = LocalOperator::<T>::pauli_string(&[(i, 'Z'), (i + 1, 'Z')]).unwrap().embed(&reg).unwrap();
            m -= zz * cx(j);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemix::fidelity::lfc_one_point;

    #[test]
    fn rho_infinity_marginal_is_maximally_mixed() {
        let rho = rho_infinity::<f64>(4, 1);
        for keep in [[0, 1, 2], [0, 1, 3], [1, 2, 3]] {
            let r = rho.partial_trace(&keep).unwrap();
            assert!(linalg::max_abs(&(r.matrix() - linalg::identity::<f64>(8) * cx(0.125))) < 1e-15);
        }
        assert!(DensityMatrix::new(Register::qubits(4), rho.into_matrix()).is_ok());
    }

    #[test]
    fn paramagnet_sector_matches_closed_form() {
        let (n, beta) = (6, 1.0f64);
        let rho = paramagnet_sector::<f64>(n, beta);
        let ra = rho.partial_trace(&[0, 1, 2]).unwrap();
        let f = lfc_one_point(&ra, &LocalOperator::pauli(0, 'Z')).unwrap();
        let t = beta.tanh();
        let expect = (1.0 - t.powi(6)).sqrt() / (1.0 + t.powi(6)) / beta.cosh();
        assert!((f - expect).abs() < 1e-8);
        assert!((paramagnet_lfc_closed_form(n, 3, beta) - expect).abs() < 1e-15);
    }

    #[test]
    fn chain_is_hermitian() {
        let h = transverse_field_chain::<f64>(4, 1.0, 0.5);
        assert!(linalg::hermitian_deviation(&h) < 1e-15);
    }
}
