//! scalar abstraction: f32 or f64 with dense eigen/svd backends

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;

pub type Cplx<T> = Complex<T>;
pub type CMat<T> = DMatrix<Complex<T>>;
pub type RMat<T> = DMatrix<T>;

/// floating point scalar used throughout the crate
pub trait Real: RealField + num_traits::FromPrimitive + Copy + Send + Sync + 'static {
    /// machine epsilon
    fn eps() -> Self;

    /// Hermitian eigendecomposition, eigenvalues ascending
    fn herm_eig(m: &CMat<Self>) -> Option<(Vec<Self>, CMat<Self>)>;

    /// real symmetric eigendecomposition, eigenvalues ascending
    fn sym_eig(m: &RMat<Self>) -> Option<(Vec<Self>, RMat<Self>)>;

    /// thin singular value decomposition m = u diag(s) v^dagger, s descending
    fn svd(m: &CMat<Self>) -> Option<(CMat<Self>, Vec<Self>, CMat<Self>)>;

    /// singular values only, descending
    fn singular_values(m: &CMat<Self>) -> Option<Vec<Self>>;

    fn c(x: f64) -> Self {
        <Self as num_traits::FromPrimitive>::from_f64(x).unwrap()
    }

    fn f(self) -> f64 {
        nalgebra::try_convert::<Self, f64>(self).unwrap()
    }

    /// tolerance stated for f64, floored at a small multiple of this type's epsilon
    fn tol(x: f64) -> Self {
        let floor = Self::eps() * Self::c(1e3);
        let t = Self::c(x);
        if t > floor {
            t
        } else {
            floor
        }
    }
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            fn eps() -> Self {
                <$t>::EPSILON
            }

            fn herm_eig(m: &CMat<Self>) -> Option<(Vec<Self>, CMat<Self>)> {
                let n = m.nrows();
                if n == 0 {
                    return Some((vec![], CMat::zeros(0, 0)));
                }
                let a = faer::Mat::<Complex<$t>>::from_fn(n, n, |i, j| m[(i, j)]);
                let e = a.self_adjoint_eigen(faer::Side::Lower).ok()?;
                let s = e.S().column_vector();
                let u = e.U();
                let vals = (0..n).map(|i| s[i].re).collect();
                let vecs = CMat::from_fn(n, n, |i, j| u[(i, j)]);
                Some((vals, vecs))
            }

            fn sym_eig(m: &RMat<Self>) -> Option<(Vec<Self>, RMat<Self>)> {
                let n = m.nrows();
                if n == 0 {
                    return Some((vec![], RMat::zeros(0, 0)));
                }
                let a = faer::Mat::<$t>::from_fn(n, n, |i, j| m[(i, j)]);
                let e = a.self_adjoint_eigen(faer::Side::Lower).ok()?;
                let s = e.S().column_vector();
                let u = e.U();
                let vals = (0..n).map(|i| s[i]).collect();
                let vecs = RMat::from_fn(n, n, |i, j| u[(i, j)]);
                Some((vals, vecs))
            }

            fn svd(m: &CMat<Self>) -> Option<(CMat<Self>, Vec<Self>, CMat<Self>)> {
                let (r, c) = m.shape();
                let k = r.min(c);
                if k == 0 {
                    return Some((CMat::zeros(r, 0), vec![], CMat::zeros(c, 0)));
                }
                let a = faer::Mat::<Complex<$t>>::from_fn(r, c, |i, j| m[(i, j)]);
                let d = a.thin_svd().ok()?;
                let s = d.S().column_vector();
                let (u, v) = (d.U(), d.V());
                Some((
                    CMat::from_fn(r, k, |i, j| u[(i, j)]),
                    (0..k).map(|i| s[i].re).collect(),
                    CMat::from_fn(c, k, |i, j| v[(i, j)]),
                ))
            }

            fn singular_values(m: &CMat<Self>) -> Option<Vec<Self>> {
                let (r, c) = m.shape();
                if r.min(c) == 0 {
                    return Some(vec![]);
                }
                let a = faer::Mat::<Complex<$t>>::from_fn(r, c, |i, j| m[(i, j)]);
                let s = a.singular_values().ok()?;
                Some(s.into_iter().collect())
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);
