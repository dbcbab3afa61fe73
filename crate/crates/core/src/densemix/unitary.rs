use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, cx};
use crate::scalar::{CMat, Real};

/// M = (U1 + U2)/2 with U1,2 = U diag(s ± i sqrt(1 - s^2)) V^dagger from M = U diag(s) V^dagger
pub fn unitary_decompose<T: Real>(m: &CMat<T>) -> Result<(CMat<T>, CMat<T>)> {
    if !m.is_square() {
        return Err(Error::Dimension("unitary decomposition needs a square matrix".into()));
    }
    let (u, s, v) = T::svd(m).ok_or(Error::Linalg("svd"))?;
    let top = s.first().copied().unwrap_or_else(T::zero);
    if top > T::one() + T::tol(1e-12) {
        return Err(Error::Invalid(format!("operator norm {} exceeds 1", top.f())));
    }
    let plus: Vec<Complex<T>> = s
        .iter()
        .map(|&x| {
            let x = if x > T::one() - T::tol(1e-12) { T::one() } else { x };
            Complex::new(x, (T::one() - x * x).sqrt())
        })
        .collect();
    let minus: Vec<Complex<T>> = plus.iter().map(|z| z.conj()).collect();
    let u1 = &u * linalg::diag(&plus) * v.adjoint();
    let u2 = &u * linalg::diag(&minus) * v.adjoint();
    Ok((u1, u2))
}

/// rescale so that the operator norm is at most one, returning the factor used
pub fn normalize_norm<T: Real>(m: &CMat<T>) -> Result<(CMat<T>, T)> {
    let n = linalg::op_norm(m)?;
    if n <= T::one() {
        return Ok((m.clone(), T::one()));
    }
    Ok((m / cx(n), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemix::random::{ginibre, haar_unitary, rng};

    fn check(m: &CMat<f64>) -> (CMat<f64>, CMat<f64>) {
        let (u1, u2) = unitary_decompose(m).unwrap();
        assert!(linalg::unitarity_deviation(&u1) < 1e-10);
        assert!(linalg::unitarity_deviation(&u2) < 1e-10);
        assert!(linalg::max_abs(&((&u1 + &u2) * cx(0.5) - m)) < 1e-10);
        (u1, u2)
    }

    #[test]
    fn unitary_input_is_fixed() {
        let u = haar_unitary::<f64>(4, &mut rng(5));
        let (u1, u2) = check(&u);
        assert!(linalg::max_abs(&(u1 - &u)) < 1e-10);
        assert!(linalg::max_abs(&(u2 - &u)) < 1e-10);
    }

    #[test]
    fn zero_splits_into_opposites() {
        let (u1, u2) = check(&CMat::zeros(3, 3));
        assert!(linalg::max_abs(&(u1 + u2)) < 1e-12);
    }

    #[test]
    fn diagonal_example() {
        let m = linalg::diag(&[cx(0.5f64), cx(1.0)]);
        let (u1, u2) = check(&m);
        let th = 0.5f64.acos();
        let e = Complex::new(th.cos(), th.sin());
        let a = linalg::diag(&[e, cx(1.0)]);
        let b = linalg::diag(&[e.conj(), cx(1.0)]);
        assert!(linalg::max_abs(&(u1 - a)) < 1e-12);
        assert!(linalg::max_abs(&(u2 - b)) < 1e-12);
    }

    #[test]
    fn random_contractions() {
        let mut r = rng(2);
        for _ in 0..10 {
            let g = ginibre::<f64>(4, 4, &mut r);
            let (m, _) = normalize_norm(&g).unwrap();
            check(&m);
        }
        assert!(unitary_decompose(&(linalg::identity::<f64>(2) * cx(1.1))).is_err());
    }
}
