use crate::error::{Error, Result};
use crate::scalar::{RMat, Real};

use super::fidelity::{lfc_one_point, renyi_one_point};
use super::operator::LocalOperator;
use super::state::DensityMatrix;

fn connected<T: Real>(
    ops: &[LocalOperator<T>],
    f: impl Fn(&LocalOperator<T>) -> Result<T>,
) -> Result<RMat<T>> {
    let n = ops.len();
    let one = ops.iter().map(&f).collect::<Result<Vec<_>>>()?;
    let one_dag = ops.iter().map(|o| f(&o.dagger())).collect::<Result<Vec<_>>>()?;
    let mut m = RMat::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            let p = ops[x].product(&ops[y].dagger())?;
            m[(x, y)] = f(&p)? - one[x] * one_dag[y];
        }
    }
    Ok(m)
}

/// [F_c]_{xy} = F(rho; Ox Oy^dagger) - F(rho; Ox) F(rho; Oy^dagger); supports may overlap
pub fn connected_fidelity_matrix<T: Real>(rho: &DensityMatrix<T>, ops: &[LocalOperator<T>]) -> Result<RMat<T>> {
    connected(ops, |o| lfc_one_point(rho, o))
}

pub fn connected_renyi_matrix<T: Real>(rho: &DensityMatrix<T>, ops: &[LocalOperator<T>], alpha: T) -> Result<RMat<T>> {
    connected(ops, |o| renyi_one_point(rho, o, alpha))
}

/// ((1/|W|^2) sum_{x,y} F(rho; Ox Oy^dagger), ((1/|W|) sum_x F(rho; Ox))^2), diagonal included
pub fn averaged_one_two_check<T: Real>(rho: &DensityMatrix<T>, ops: &[LocalOperator<T>]) -> Result<(T, T)> {
    let n = ops.len();
    if n == 0 {
        return Err(Error::Invalid("empty operator collection".into()));
    }
    for x in 0..n {
        for y in x + 1..n {
            if !ops[x].disjoint(&ops[y]) {
                return Err(Error::OverlappingSupports);
            }
        }
    }
    let mut two = T::zero();
    let mut one = T::zero();
    for x in 0..n {
        one += lfc_one_point(rho, &ops[x])?;
        for y in 0..n {
            two += lfc_one_point(rho, &ops[x].product(&ops[y].dagger())?)?;
        }
    }
    let nn = T::c(n as f64);
    Ok((two / (nn * nn), (one / nn) * (one / nn)))
}

pub fn min_eigenvalue<T: Real>(m: &RMat<T>) -> Result<T> {
    let sym = (m + m.transpose()) * T::c(0.5);
    let (w, _) = T::sym_eig(&sym).ok_or(Error::Linalg("symmetric eigensolver"))?;
    Ok(w.first().copied().unwrap_or_else(T::zero))
}
