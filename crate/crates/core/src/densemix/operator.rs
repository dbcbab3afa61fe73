use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, cx};
use crate::scalar::{CMat, Real};

use super::state::Register;

/// complex matrix acting on a declared set of sites
#[derive(Clone, Debug)]
pub struct LocalOperator<T: Real> {
    support: Register,
    data: CMat<T>,
    /// character lambda(g) per symmetry generator, if declared
    charge: Option<Vec<Complex<T>>>,
}

impl<T: Real> LocalOperator<T> {
    pub fn new(support: Register, data: CMat<T>) -> Result<Self> {
        let d = support.dim();
        if data.nrows() != d || data.ncols() != d {
            return Err(Error::Dimension(format!("support dimension {d}, matrix {}x{}", data.nrows(), data.ncols())));
        }
        Ok(LocalOperator { support, data, charge: None })
    }

    /// single-qubit operator on one site
    pub fn qubit(site: usize, data: CMat<T>) -> Result<Self> {
        LocalOperator::new(Register::qubit_sites(&[site])?, data)
    }

    pub fn pauli(site: usize, which: char) -> Self {
        LocalOperator::qubit(site, linalg::pauli(which)).expect("2x2")
    }

    /// tensor product of Paulis, e.g. pauli_string(&[(0,'Z'),(2,'Z')])
    pub fn pauli_string(ops: &[(usize, char)]) -> Result<Self> {
        let sites: Vec<usize> = ops.iter().map(|o| o.0).collect();
        let mats: Vec<CMat<T>> = ops.iter().map(|o| linalg::pauli(o.1)).collect();
        LocalOperator::new(Register::qubit_sites(&sites)?, linalg::kron_all(&mats))
    }

    pub fn support(&self) -> &Register {
        &self.support
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.data
    }

    pub fn charge(&self) -> Option<&[Complex<T>]> {
        self.charge.as_deref()
    }

    pub(crate) fn set_charge(&mut self, c: Vec<Complex<T>>) {
        self.charge = Some(c);
    }

    pub fn dagger(&self) -> Self {
        LocalOperator {
            support: self.support.clone(),
            data: self.data.adjoint(),
            charge: self.charge.as_ref().map(|c| c.iter().map(|z| z.conj()).collect()),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        LocalOperator { support: self.support.clone(), data: &self.data * s, charge: self.charge.clone() }
    }

    pub fn disjoint(&self, other: &LocalOperator<T>) -> bool {
        self.support.sites().iter().all(|s| !other.support.contains(*s))
    }

    pub fn operator_norm(&self) -> Result<T> {
        linalg::op_norm(&self.data)
    }

    pub fn unitarity_deviation(&self) -> T {
        linalg::unitarity_deviation(&self.data)
    }

    /// the same operator expressed on a larger register containing its support
    pub fn embed(&self, reg: &Register) -> Result<CMat<T>> {
        act_left(reg, self, &linalg::identity(reg.dim()))
    }

    /// self * other on the union of supports
    pub fn product(&self, other: &LocalOperator<T>) -> Result<Self> {
        let extra: Vec<usize> =
            other.support.sites().iter().copied().filter(|s| !self.support.contains(*s)).collect();
        let extra_dims = extra.iter().map(|&s| other.support.local_dim(s)).collect::<Result<Vec<_>>>()?;
        for &s in other.support.sites() {
            if self.support.contains(s) && self.support.local_dim(s)? != other.support.local_dim(s)? {
                return Err(Error::Dimension(format!("site {s} has inconsistent local dimension")));
            }
        }
        let reg = self.support.join(&Register::new(extra, extra_dims)?)?;
        let a = self.embed(&reg)?;
        let b = other.embed(&reg)?;
        let charge = match (&self.charge, &other.charge) {
            (Some(x), Some(y)) if x.len() == y.len() => Some(x.iter().zip(y).map(|(a, b)| a * b).collect()),
            _ => None,
        };
        Ok(LocalOperator { support: reg, data: a * b, charge })
    }
}

/// (O ⊗ 1) m where m is indexed by `reg` on its rows
pub fn act_left<T: Real>(reg: &Register, op: &LocalOperator<T>, m: &CMat<T>) -> Result<CMat<T>> {
    if m.nrows() != reg.dim() {
        return Err(Error::Dimension(format!("register dimension {}, matrix rows {}", reg.dim(), m.nrows())));
    }
    let sup = op.support();
    let strides = reg.strides();
    let pos = sup.sites().iter().map(|&s| reg.position(s)).collect::<Result<Vec<_>>>()?;
    for (k, &p) in pos.iter().enumerate() {
        if reg.dims()[p] != sup.dims()[k] {
            return Err(Error::Dimension(format!("site {} dimension mismatch", sup.sites()[k])));
        }
    }
    let dl = sup.dim();
    let offset: Vec<usize> =
        (0..dl).map(|a| sup.digits(a).iter().zip(&pos).map(|(d, &p)| d * strides[p]).sum()).collect();
    let n = reg.dim();
    let mut local = vec![0usize; n];
    let mut base = vec![0usize; n];
    for i in 0..n {
        let dg = reg.digits(i);
        let mut a = 0;
        for &p in &pos {
            a = a * reg.dims()[p] + dg[p];
        }
        local[i] = a;
        base[i] = i - offset[a];
    }
    let o = op.matrix();
    let mut out = CMat::zeros(n, m.ncols());
    for j in 0..m.ncols() {
        for i in 0..n {
            let mut s = cx(T::zero());
            let a = local[i];
            for ap in 0..dl {
                let c = o[(a, ap)];
                if c.re != T::zero() || c.im != T::zero() {
                    s += c * m[(base[i] + offset[ap], j)];
                }
            }
            out[(i, j)] = s;
        }
    }
    Ok(out)
}

/// O m O^dagger
pub fn conjugate<T: Real>(reg: &Register, op: &LocalOperator<T>, m: &CMat<T>) -> Result<CMat<T>> {
    let left = act_left(reg, op, m)?;
    Ok(act_left(reg, op, &left.adjoint())?.adjoint())
}
