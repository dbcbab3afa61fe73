//! dense complex helpers shared by the engines

use nalgebra::DVector;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{CMat, Real};

/// clip threshold for negative spectrum of PSD inputs
pub const PSD_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct HermEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: CMat<T>,
}

/// run decompositions single-threaded so results do not depend on the size of the worker pool
pub fn sequential_kernels() {
    faer::set_global_parallelism(faer::Par::Seq);
}

pub fn cx<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

pub fn cxf<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::c(re), T::c(im))
}

pub fn identity<T: Real>(n: usize) -> CMat<T> {
    CMat::identity(n, n)
}

pub fn trace<T: Real>(m: &CMat<T>) -> Complex<T> {
    (0..m.nrows().min(m.ncols())).fold(Complex::new(T::zero(), T::zero()), |a, i| a + m[(i, i)])
}

/// max entrywise |m - m^dagger|
pub fn hermitian_deviation<T: Real>(m: &CMat<T>) -> T {
    let n = m.nrows();
    let mut d = T::zero();
    for i in 0..n {
        for j in 0..n {
            let e = (m[(i, j)] - m[(j, i)].conj()).norm_sqr().sqrt();
            if e > d {
                d = e;
            }
        }
    }
    d
}

pub fn hermitize<T: Real>(m: &CMat<T>) -> CMat<T> {
    (m + m.adjoint()) * cx(T::c(0.5))
}

pub fn herm_eigen<T: Real>(m: &CMat<T>) -> Result<HermEigen<T>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", m.nrows(), m.ncols())));
    }
    let (values, vectors) = T::herm_eig(&hermitize(m)).ok_or(Error::Linalg("hermitian eigensolver"))?;
    Ok(HermEigen { values, vectors })
}

/// eigenvalues below this are numerically zero for a PSD matrix with the given top eigenvalue
pub fn support_cutoff<T: Real>(top: T, dim: usize) -> T {
    let scale = if top > T::one() { top } else { T::one() };
    T::eps() * T::c(16.0 * dim.max(4) as f64) * scale
}

impl<T: Real> HermEigen<T> {
    /// spectrum with noise in [-tol, 0) clipped and numerically zero values set to 0
    pub fn clipped_spectrum(&self) -> Result<Vec<T>> {
        let tol = T::tol(PSD_TOL);
        let top = self.values.iter().copied().fold(T::zero(), |a, b| if b > a { b } else { a });
        let cut = support_cutoff(top, self.values.len());
        self.values
            .iter()
            .map(|&v| {
                if v < -tol {
                    Err(Error::NotPositive(v.f()))
                } else if v <= cut {
                    Ok(T::zero())
                } else {
                    Ok(v)
                }
            })
            .collect()
    }

    /// V diag(f(w)) V^dagger
    pub fn apply(&self, w: &[T], f: impl Fn(T) -> T) -> CMat<T> {
        let n = self.vectors.nrows();
        let mut scaled = self.vectors.clone();
        for (j, &x) in w.iter().enumerate() {
            let s = cx(f(x));
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

/// principal square root of a PSD matrix
pub fn sqrt_psd<T: Real>(m: &CMat<T>) -> Result<CMat<T>> {
    let e = herm_eigen(m)?;
    let w = e.clipped_spectrum()?;
    Ok(e.apply(&w, |x| x.sqrt()))
}

pub fn check_psd<T: Real>(m: &CMat<T>) -> Result<()> {
    let dev = hermitian_deviation(m);
    if dev > T::tol(PSD_TOL) {
        return Err(Error::NotHermitian(dev.f()));
    }
    herm_eigen(m)?.clipped_spectrum().map(|_| ())
}

pub fn kron<T: Real>(a: &CMat<T>, b: &CMat<T>) -> CMat<T> {
    a.kronecker(b)
}

pub fn kron_all<T: Real>(ms: &[CMat<T>]) -> CMat<T> {
    ms.iter().fold(identity(1), |acc, m| kron(&acc, m))
}

pub fn op_norm<T: Real>(m: &CMat<T>) -> Result<T> {
    let s = T::singular_values(m).ok_or(Error::Linalg("svd"))?;
    Ok(s.first().copied().unwrap_or_else(T::zero))
}

pub fn nuclear_norm<T: Real>(m: &CMat<T>) -> Result<T> {
    let s = T::singular_values(m).ok_or(Error::Linalg("svd"))?;
    Ok(s.iter().fold(T::zero(), |a, &b| a + b))
}

/// max entrywise |u^dagger u - 1|
pub fn unitarity_deviation<T: Real>(u: &CMat<T>) -> T {
    if !u.is_square() {
        return T::max_value().unwrap_or_else(T::one);
    }
    (u.adjoint() * u - identity::<T>(u.nrows())).iter().fold(T::zero(), |a, z| {
        let n = z.norm_sqr().sqrt();
        if n > a {
            n
        } else {
            a
        }
    })
}

pub fn max_abs<T: Real>(m: &CMat<T>) -> T {
    m.iter().fold(T::zero(), |a, z| if z.norm_sqr().sqrt() > a { z.norm_sqr().sqrt() } else { a })
}

pub fn diag<T: Real>(v: &[Complex<T>]) -> CMat<T> {
    CMat::from_diagonal(&DVector::from_column_slice(v))
}

pub fn pauli<T: Real>(which: char) -> CMat<T> {
    let o = cx(T::zero());
    let l = cx(T::one());
    let i = Complex::new(T::zero(), T::one());
    match which {
        'X' => CMat::from_row_slice(2, 2, &[o, l, l, o]),
        'Y' => CMat::from_row_slice(2, 2, &[o, -i, i, o]),
        'Z' => CMat::from_row_slice(2, 2, &[l, o, o, -l]),
        _ => identity(2),
    }
}

/// von Neumann entropy in nats of a PSD matrix
pub fn entropy<T: Real>(m: &CMat<T>) -> Result<T> {
    let w = herm_eigen(m)?.clipped_spectrum()?;
    Ok(w.iter().filter(|&&x| x > T::zero()).fold(T::zero(), |a, &x| a - x * x.ln()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_squares_back() {
        let a = CMat::<f64>::from_fn(3, 3, |i, j| Complex::new((i * 3 + j) as f64 * 0.1, (i as f64) - (j as f64)));
        let p = &a * a.adjoint();
        let r = sqrt_psd(&p).unwrap();
        assert!(max_abs(&(&r * &r - &p)) < 1e-12);
    }

    #[test]
    fn negative_input_rejected() {
        let m = diag(&[cx(1.0f64), cx(-1e-6)]);
        assert!(matches!(sqrt_psd(&m), Err(Error::NotPositive(_))));
        let ok = diag(&[cx(1.0f64), cx(-1e-12)]);
        assert!(sqrt_psd(&ok).is_ok());
    }

    #[test]
    fn pauli_algebra() {
        let x = pauli::<f64>('X');
        let y = pauli::<f64>('Y');
        let z = pauli::<f64>('Z');
        let i = Complex::new(0.0, 1.0);
        assert!(max_abs(&(&x * &y - z * i)) < 1e-15);
        assert!(unitarity_deviation(&y) < 1e-15);
    }
}
