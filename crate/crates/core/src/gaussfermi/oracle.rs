use num_complex::Complex;

use crate::densemix::{DensityMatrix, LocalOperator, Register};
use crate::error::{Error, Result};
use crate::linalg::{self, cx};
use crate::scalar::{CMat, Real};

use super::correlation::CorrelationMatrix;

pub const ORACLE_MAX_SITES: usize = 10;

/// c_y in the Jordan-Wigner basis over `n` modes: site 0 is the most significant bit, |1> occupied
fn annihilate<T: Real>(n: usize, y: usize, m: &CMat<T>, coeff: Complex<T>, out: &mut CMat<T>) {
    let bit = 1usize << (n - 1 - y);
    let string_mask = !((bit << 1) - 1) & ((1usize << n) - 1);
    for b in 0..(1usize << n) {
        if b & bit == 0 {
            continue;
        }
        let sign = if (b & string_mask).count_ones() % 2 == 0 { T::one() } else { -T::one() };
        let row = b ^ bit;
        let c = coeff * cx(sign);
        for col in 0..m.ncols() {
            out[(row, col)] += c * m[(b, col)];
        }
    }
}

fn create<T: Real>(n: usize, y: usize, m: &CMat<T>, coeff: Complex<T>, out: &mut CMat<T>) {
    let bit = 1usize << (n - 1 - y);
    let string_mask = !((bit << 1) - 1) & ((1usize << n) - 1);
    for b in 0..(1usize << n) {
        if b & bit != 0 {
            continue;
        }
        let sign = if (b & string_mask).count_ones() % 2 == 0 { T::one() } else { -T::one() };
        let row = b | bit;
        let c = coeff * cx(sign);
        for col in 0..m.ncols() {
            out[(row, col)] += c * m[(b, col)];
        }
    }
}

/// many-body Gaussian state with two-point function C, on qubits labelled by the sites of C
pub fn dense_oracle<T: Real>(ca: &CorrelationMatrix<T>) -> Result<DensityMatrix<T>> {
    let n = ca.len();
    if n > ORACLE_MAX_SITES {
        return Err(Error::SizeCap(format!("dense oracle limited to {ORACLE_MAX_SITES} sites, got {n}")));
    }
    let eig = linalg::herm_eigen(ca.matrix())?;
    let dim = 1usize << n;
    let mut rho = linalg::identity::<T>(dim);
    for (a, &lam) in eig.values.iter().enumerate() {
        let lam = lam.max(T::zero()).min(T::one());
        let mut d = CMat::zeros(dim, dim);
        for y in 0..n {
            annihilate(n, y, &rho, eig.vectors[(y, a)], &mut d);
        }
        let mut nd = CMat::zeros(dim, dim);
        for y in 0..n {
            create(n, y, &d, eig.vectors[(y, a)].conj(), &mut nd);
        }
        rho = rho * cx(T::one() - lam) + nd * cx(T::c(2.0) * lam - T::one());
    }
    DensityMatrix::normalized(Register::qubit_sites(ca.sites())?, rho)
}

/// Jordan-Wigner image of c_x on the register of the oracle; the string runs over earlier sites
pub fn jw_annihilation<T: Real>(register: &Register, site: usize) -> Result<LocalOperator<T>> {
    let y = register.position(site)?;
    let support = Register::qubit_sites(&register.sites()[..=y])?;
    let n = y + 1;
    let mut m = CMat::zeros(1 << n, 1 << n);
    annihilate(n, y, &linalg::identity::<T>(1 << n), cx(T::one()), &mut m);
    LocalOperator::new(support, m)
}

/// <c_x^dagger c_y> of a many-body state in the Jordan-Wigner basis
pub fn two_point<T: Real>(rho: &DensityMatrix<T>, x: usize, y: usize) -> Result<Complex<T>> {
    let reg = rho.register();
    let n = reg.len();
    let (px, py) = (reg.position(x)?, reg.position(y)?);
    let dim = 1 << n;
    let mut t = CMat::zeros(dim, dim);
    annihilate(n, py, rho.matrix(), cx(T::one()), &mut t);
    let mut u = CMat::zeros(dim, dim);
    create(n, px, &t, cx(T::one()), &mut u);
    Ok(linalg::trace(&u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemix::random::{random_hermitian, rng};
    use crate::densemix::renyi_one_point;
    use crate::gaussfermi::correlation::gaussian_renyi1;
    use crate::gaussfermi::geometry::{Boundary, LatticeGeometry};

    fn random_c(n: usize, seed: u64, projector: bool) -> CorrelationMatrix<f64> {
        let h = random_hermitian::<f64>(n, &mut rng(seed));
        let e = linalg::herm_eigen(&h).unwrap();
        let lam: Vec<f64> = (0..n)
            .map(|i| if projector { f64::from(u8::from(i % 2 == 0)) } else { 1.0 / (1.0 + (-3.0 * e.values[i]).exp()) })
            .collect();
        let c = &e.vectors * linalg::diag(&lam.iter().map(|&l| cx(l)).collect::<Vec<_>>()) * e.vectors.adjoint();
        let g = LatticeGeometry::chain(n, Boundary::Open);
        CorrelationMatrix::new(g, (0..n).collect(), linalg::hermitize(&c)).unwrap()
    }

    #[test]
    fn one_site() {
        let g = LatticeGeometry::chain(3, Boundary::Open);
        let c = CorrelationMatrix::new(g, vec![1], CMat::from_element(1, 1, cx(0.3f64))).unwrap();
        let rho = dense_oracle(&c).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 0.7).abs() < 1e-14);
        assert!((rho.matrix()[(1, 1)].re - 0.3).abs() < 1e-14);
    }

    #[test]
    fn projector_is_pure() {
        let rho = dense_oracle(&random_c(2, 3, true)).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reproduces_two_point_function() {
        let c = random_c(5, 9, false);
        let rho = dense_oracle(&c).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert!((two_point(&rho, x, y).unwrap() - c.matrix()[(x, y)]).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn renyi1_cross_check() {
        let c = random_c(6, 21, false);
        let rho = dense_oracle(&c).unwrap();
        for x in [0, 3, 5] {
            let op = jw_annihilation(rho.register(), x).unwrap();
            let dense = renyi_one_point(&rho, &op, 1.0).unwrap();
            let gauss = gaussian_renyi1(&c, x).unwrap();
            assert!((dense - gauss).abs() < 1e-8, "{dense} {gauss}");
            let dag = renyi_one_point(&rho, &op.dagger(), 1.0).unwrap();
            assert!((dag - gauss).abs() < 1e-8);
        }
    }

    #[test]
    fn size_cap() {
        assert!(matches!(dense_oracle(&random_c(11, 1, false)), Err(Error::SizeCap(_))));
    }
}
