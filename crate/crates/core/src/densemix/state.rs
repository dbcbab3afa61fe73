use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, cx, PSD_TOL};
use crate::scalar::{CMat, Real};

/// ordered list of site labels with local dimensions; first site is the most significant index
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    sites: Vec<usize>,
    dims: Vec<usize>,
}

impl Register {
    pub fn new(sites: Vec<usize>, dims: Vec<usize>) -> Result<Self> {
        if sites.len() != dims.len() {
            return Err(Error::Dimension(format!("{} labels but {} dimensions", sites.len(), dims.len())));
        }
        let mut sorted = sites.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("repeated site label".into()));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::Invalid("zero local dimension".into()));
        }
        Ok(Register { sites, dims })
    }

    pub fn qubits(n: usize) -> Self {
        Register { sites: (0..n).collect(), dims: vec![2; n] }
    }

    pub fn qubit_sites(sites: &[usize]) -> Result<Self> {
        Register::new(sites.to_vec(), vec![2; sites.len()])
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position(&self, site: usize) -> Result<usize> {
        self.sites.iter().position(|&s| s == site).ok_or(Error::UnknownSite(site))
    }

    pub fn contains(&self, site: usize) -> bool {
        self.sites.contains(&site)
    }

    pub fn local_dim(&self, site: usize) -> Result<usize> {
        Ok(self.dims[self.position(site)?])
    }

    pub fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            s[k] = s[k + 1] * self.dims[k + 1];
        }
        s
    }

    /// sub-register on the given labels, kept in this register's order
    pub fn subset(&self, keep: &[usize]) -> Result<Register> {
        for &k in keep {
            self.position(k)?;
        }
        let mut sites = vec![];
        let mut dims = vec![];
        for (i, &s) in self.sites.iter().enumerate() {
            if keep.contains(&s) {
                sites.push(s);
                dims.push(self.dims[i]);
            }
        }
        Ok(Register { sites, dims })
    }

    pub fn complement(&self, drop: &[usize]) -> Register {
        let keep: Vec<usize> = self.sites.iter().copied().filter(|s| !drop.contains(s)).collect();
        self.subset(&keep).expect("labels drawn from register")
    }

    /// concatenation of two registers with disjoint labels
    pub fn join(&self, other: &Register) -> Result<Register> {
        let mut sites = self.sites.clone();
        sites.extend_from_slice(&other.sites);
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Register::new(sites, dims)
    }

    /// digits of basis index i
    pub fn digits(&self, mut i: usize) -> Vec<usize> {
        let mut d = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            d[k] = i % self.dims[k];
            i /= self.dims[k];
        }
        d
    }
}

#[derive(Clone, Debug)]
pub struct DensityMatrix<T: Real> {
    register: Register,
    data: CMat<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// validated: Hermitian, PSD and unit trace to 1e-10
    pub fn new(register: Register, data: CMat<T>) -> Result<Self> {
        let d = register.dim();
        if data.nrows() != d || data.ncols() != d {
            return Err(Error::Dimension(format!("register dimension {d}, matrix {}x{}", data.nrows(), data.ncols())));
        }
        linalg::check_psd(&data)?;
        let tr = linalg::trace(&data);
        if (tr - cx(T::one())).norm_sqr().sqrt() > T::tol(PSD_TOL) {
            return Err(Error::Trace(tr.re.f()));
        }
        Ok(DensityMatrix { register, data })
    }

    /// rescales a PSD matrix to unit trace
    pub fn normalized(register: Register, data: CMat<T>) -> Result<Self> {
        let tr = linalg::trace(&data).re;
        if tr <= T::zero() {
            return Err(Error::Trace(tr.f()));
        }
        DensityMatrix::new(register, data / cx(tr))
    }

    pub(crate) fn from_parts(register: Register, data: CMat<T>) -> Self {
        DensityMatrix { register, data }
    }

    pub fn pure(register: Register, psi: &[num_complex::Complex<T>]) -> Result<Self> {
        let v = nalgebra::DVector::from_column_slice(psi);
        let n = v.norm();
        if n <= T::zero() {
            return Err(Error::Invalid("zero state vector".into()));
        }
        let v = v / cx(n);
        DensityMatrix::new(register, &v * v.adjoint())
    }

    pub fn maximally_mixed(register: Register) -> Self {
        let d = register.dim();
        let data = linalg::identity::<T>(d) / cx(T::c(d as f64));
        DensityMatrix { register, data }
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.data
    }

    pub fn into_matrix(self) -> CMat<T> {
        self.data
    }

    pub fn purity(&self) -> T {
        linalg::trace(&(&self.data * &self.data)).re
    }

    pub fn tensor(&self, other: &DensityMatrix<T>) -> Result<Self> {
        let reg = self.register.join(&other.register)?;
        Ok(DensityMatrix { register: reg, data: linalg::kron(&self.data, &other.data) })
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        let kept = self.register.subset(keep)?;
        let traced = self.register.complement(keep);
        let strides = self.register.strides();
        let offsets = |sub: &Register| -> Vec<usize> {
            let pos: Vec<usize> = sub.sites().iter().map(|&s| self.register.position(s).unwrap()).collect();
            (0..sub.dim())
                .map(|i| sub.digits(i).iter().zip(&pos).map(|(d, &p)| d * strides[p]).sum())
                .collect()
        };
        let ko = offsets(&kept);
        let to = offsets(&traced);
        let dk = ko.len();
        let mut out = CMat::zeros(dk, dk);
        for a in 0..dk {
            for b in 0..dk {
                let mut s = cx(T::zero());
                for &t in &to {
                    s += self.data[(ko[a] + t, ko[b] + t)];
                }
                out[(a, b)] = s;
            }
        }
        Ok(DensityMatrix { register: kept, data: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn register_strides_and_digits() {
        let r = Register::new(vec![7, 3, 5], vec![2, 3, 2]).unwrap();
        assert_eq!(r.strides(), vec![6, 2, 1]);
        assert_eq!(r.digits(11), vec![1, 2, 1]);
        assert!(Register::new(vec![1, 1], vec![2, 2]).is_err());
    }

    #[test]
    fn product_state_trace() {
        let a = DensityMatrix::<f64>::new(
            Register::qubit_sites(&[0]).unwrap(),
            CMat::from_row_slice(2, 2, &[cx(0.7), Complex::new(0.1, 0.2), Complex::new(0.1, -0.2), cx(0.3)]),
        )
        .unwrap();
        let b = DensityMatrix::<f64>::new(Register::qubit_sites(&[1]).unwrap(), linalg::diag(&[cx(0.25), cx(0.75)])).unwrap();
        let ab = a.tensor(&b).unwrap();
        let ra = ab.partial_trace(&[0]).unwrap();
        assert!(linalg::max_abs(&(ra.matrix() - a.matrix())) < 1e-15);
        let rb = ab.partial_trace(&[1]).unwrap();
        assert!(linalg::max_abs(&(rb.matrix() - b.matrix())) < 1e-15);
    }

    #[test]
    fn ghz_marginal_is_mixed() {
        let s = 0.5f64.sqrt();
        let psi = [cx(s), cx(0.0), cx(0.0), cx(s)];
        let rho = DensityMatrix::pure(Register::qubits(2), &psi).unwrap();
        let r = rho.partial_trace(&[1]).unwrap();
        assert!(linalg::max_abs(&(r.matrix() - linalg::identity::<f64>(2) * cx(0.5))) < 1e-15);
    }

    #[test]
    fn rejects_bad_states() {
        let reg = Register::qubits(1);
        assert!(matches!(
            DensityMatrix::<f64>::new(reg.clone(), linalg::diag(&[cx(0.5), cx(0.4)])),
            Err(Error::Trace(_))
        ));
        assert!(matches!(
            DensityMatrix::<f64>::new(reg.clone(), linalg::diag(&[cx(1.1), cx(-0.1)])),
            Err(Error::NotPositive(_))
        ));
        assert!(DensityMatrix::<f64>::new(reg, linalg::identity(4)).is_err());
        assert!(DensityMatrix::<f64>::maximally_mixed(Register::qubits(2)).partial_trace(&[9]).is_err());
    }
}
