//! seeded random states and matrices for fuzzing

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{self, cx};
use crate::scalar::{CMat, Real};

use super::state::{DensityMatrix, Register};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian<T: Real>(r: &mut impl Rng) -> T {
    T::c(r.sample::<f64, _>(StandardNormal))
}

/// complex Ginibre matrix with unit-variance entries
pub fn ginibre<T: Real>(rows: usize, cols: usize, r: &mut impl Rng) -> CMat<T> {
    let h = T::c(0.5f64.sqrt());
    CMat::from_fn(rows, cols, |_, _| {
        let re: T = gaussian(r);
        let im: T = gaussian(r);
        Complex::new(re * h, im * h)
    })
}

/// reduced state of a Gaussian random pure state on register ⊗ ancilla
pub fn random_state<T: Real>(reg: &Register, ancilla: usize, seed: u64) -> DensityMatrix<T> {
    random_state_with(reg, ancilla, &mut rng(seed))
}

pub fn random_state_with<T: Real>(reg: &Register, ancilla: usize, r: &mut impl Rng) -> DensityMatrix<T> {
    let g = ginibre::<T>(reg.dim(), ancilla.max(1), r);
    let m = &g * g.adjoint();
    let tr = linalg::trace(&m).re;
    DensityMatrix::from_parts(reg.clone(), linalg::hermitize(&(m / cx(tr))))
}

pub fn random_pure<T: Real>(reg: &Register, seed: u64) -> (Vec<Complex<T>>, DensityMatrix<T>) {
    let mut r = rng(seed);
    let g = ginibre::<T>(reg.dim(), 1, &mut r);
    let n = g.norm();
    let psi: Vec<Complex<T>> = g.iter().map(|z| z / cx(n)).collect();
    let v = nalgebra::DVector::from_column_slice(&psi);
    let rho = DensityMatrix::from_parts(reg.clone(), &v * v.adjoint());
    (psi, rho)
}

/// Haar-distributed unitary via QR of a Ginibre matrix
pub fn haar_unitary<T: Real>(n: usize, r: &mut impl Rng) -> CMat<T> {
    let g = ginibre::<T>(n, n, r);
    let qr = g.qr();
    let (q, rr) = (qr.q(), qr.r());
    let mut u = q;
    for j in 0..n {
        let d = rr[(j, j)];
        let ph = if d.norm_sqr().sqrt() > T::zero() { d / cx(d.norm_sqr().sqrt()) } else { cx(T::one()) };
        for i in 0..n {
            u[(i, j)] *= ph;
        }
    }
    u
}

pub fn random_hermitian<T: Real>(n: usize, r: &mut impl Rng) -> CMat<T> {
    linalg::hermitize(&ginibre::<T>(n, n, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn states_valid_and_seeded() {
        let reg = Register::qubits(3);
        let a = random_state::<f64>(&reg, 8, 4);
        let b = random_state::<f64>(&reg, 8, 4);
        assert_eq!(a.matrix(), b.matrix());
        assert!(DensityMatrix::new(reg, a.into_matrix()).is_ok());
    }

    #[test]
    fn haar_is_unitary() {
        let u = haar_unitary::<f64>(5, &mut rng(1));
        assert!(linalg::unitarity_deviation(&u) < 1e-12);
    }
}
