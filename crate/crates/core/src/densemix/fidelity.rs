use crate::error::{Error, Result};
use crate::linalg::{self, herm_eigen};
use crate::scalar::{CMat, Real};

use super::operator::{act_left, LocalOperator};
use super::state::DensityMatrix;

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)); sigma may be subnormalized
pub fn fidelity<T: Real>(rho: &DensityMatrix<T>, sigma: &CMat<T>) -> Result<T> {
    let d = rho.register().dim();
    if sigma.nrows() != d || sigma.ncols() != d {
        return Err(Error::Dimension(format!("state dimension {d}, sigma {}x{}", sigma.nrows(), sigma.ncols())));
    }
    let dev = linalg::hermitian_deviation(sigma);
    if dev > T::tol(linalg::PSD_TOL) {
        return Err(Error::NotHermitian(dev.f()));
    }
    let sr = linalg::sqrt_psd(rho.matrix())?;
    let ss = linalg::sqrt_psd(sigma)?;
    linalg::nuclear_norm(&(sr * ss))
}

/// F(rho, O rho O^dagger) without renormalizing the second argument
pub fn lfc_one_point<T: Real>(rho: &DensityMatrix<T>, op: &LocalOperator<T>) -> Result<T> {
    let sr = linalg::sqrt_psd(rho.matrix())?;
    let osr = act_left(rho.register(), op, &sr)?;
    linalg::nuclear_norm(&(sr * osr))
}

/// Tr(rho^{a/2} O rho^{a/2} O^dagger) / Tr(rho^a) on the support of rho
pub fn renyi_one_point<T: Real>(rho: &DensityMatrix<T>, op: &LocalOperator<T>, alpha: T) -> Result<T> {
    if alpha <= T::zero() {
        return Err(Error::Invalid(format!("Renyi index must be positive, got {}", alpha.f())));
    }
    let e = herm_eigen(rho.matrix())?;
    let w = e.clipped_spectrum()?;
    let keep: Vec<usize> = (0..w.len()).filter(|&i| w[i] > T::zero()).collect();
    let v = e.vectors.select_columns(&keep);
    let ov = act_left(rho.register(), op, &v)?;
    let ohat = v.adjoint() * ov;
    let half = alpha / T::c(2.0);
    let p: Vec<T> = keep.iter().map(|&i| w[i].powf(half)).collect();
    let mut num = T::zero();
    for i in 0..p.len() {
        for j in 0..p.len() {
            num += p[i] * p[j] * ohat[(i, j)].norm_sqr();
        }
    }
    let den = p.iter().fold(T::zero(), |a, &x| a + x * x);
    Ok(num / den)
}

fn pair<T: Real>(ox: &LocalOperator<T>, oy: &LocalOperator<T>) -> Result<LocalOperator<T>> {
    if !ox.disjoint(oy) {
        return Err(Error::OverlappingSupports);
    }
    ox.product(&oy.dagger())
}

/// F(rho, Ox Oy^dagger rho Oy Ox^dagger)
pub fn two_point_fidelity<T: Real>(rho: &DensityMatrix<T>, ox: &LocalOperator<T>, oy: &LocalOperator<T>) -> Result<T> {
    lfc_one_point(rho, &pair(ox, oy)?)
}

pub fn two_point_renyi<T: Real>(
    rho: &DensityMatrix<T>,
    ox: &LocalOperator<T>,
    oy: &LocalOperator<T>,
    alpha: T,
) -> Result<T> {
    renyi_one_point(rho, &pair(ox, oy)?, alpha)
}
