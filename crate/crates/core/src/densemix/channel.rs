use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, cx};
use crate::scalar::{CMat, Real};

use super::operator::{conjugate, LocalOperator};
use super::random::{ginibre, random_hermitian, rng};
use super::state::{DensityMatrix, Register};

const TP_TOL: f64 = 1e-10;

/// Kraus operators sharing one support
#[derive(Clone, Debug)]
pub struct KrausChannel<T: Real> {
    kraus: Vec<LocalOperator<T>>,
}

impl<T: Real> KrausChannel<T> {
    pub fn new(support: Register, kraus: Vec<CMat<T>>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::Invalid("empty Kraus set".into()));
        }
        let ops = kraus
            .into_iter()
            .map(|k| LocalOperator::new(support.clone(), k))
            .collect::<Result<Vec<_>>>()?;
        let d = support.dim();
        let mut s = CMat::zeros(d, d);
        for k in &ops {
            s += k.matrix().adjoint() * k.matrix();
        }
        let dev = linalg::max_abs(&(s - linalg::identity::<T>(d)));
        if dev > T::tol(TP_TOL) {
            return Err(Error::NotTracePreserving(dev.f()));
        }
        Ok(KrausChannel { kraus: ops })
    }

    pub fn kraus(&self) -> &[LocalOperator<T>] {
        &self.kraus
    }

    pub fn support(&self) -> &Register {
        self.kraus[0].support()
    }
}

/// sum_k K rho K^dagger for each channel in sequence
pub fn apply_channel<T: Real>(rho: &DensityMatrix<T>, channels: &[KrausChannel<T>]) -> Result<DensityMatrix<T>> {
    let reg = rho.register().clone();
    let mut m = rho.matrix().clone();
    for ch in channels {
        let mut acc = CMat::zeros(m.nrows(), m.ncols());
        for k in ch.kraus() {
            acc += conjugate(&reg, k, &m)?;
        }
        m = acc;
    }
    Ok(DensityMatrix::from_parts(reg, linalg::hermitize(&m)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PauliKind {
    Z,
    ZZ,
}

/// (1-p) rho + p P rho P on every target: single sites for Z, site pairs for ZZ
pub fn make_pauli_channel<T: Real>(targets: &[Vec<usize>], p: T, kind: PauliKind) -> Result<Vec<KrausChannel<T>>> {
    if p < T::zero() || p > T::one() {
        return Err(Error::Invalid(format!("probability {} outside [0,1]", p.f())));
    }
    let arity = match kind {
        PauliKind::Z => 1,
        PauliKind::ZZ => 2,
    };
    targets
        .iter()
        .map(|t| {
            if t.len() != arity {
                return Err(Error::Invalid(format!("{kind:?} target needs {arity} sites")));
            }
            let reg = Register::qubit_sites(t)?;
            let pz = linalg::kron_all(&vec![linalg::pauli::<T>('Z'); arity]);
            let id = linalg::identity::<T>(reg.dim());
            KrausChannel::new(reg, vec![id * cx((T::one() - p).sqrt()), pz * cx(p.sqrt())])
        })
        .collect()
}

fn xx<T: Real>() -> CMat<T> {
    linalg::kron(&linalg::pauli::<T>('X'), &linalg::pauli::<T>('X'))
}

fn symmetrize<T: Real>(a: &CMat<T>) -> CMat<T> {
    let s = xx::<T>();
    (a + &s * a * &s) * cx(T::c(0.5))
}

/// random two-qubit Kraus set whose members all commute with X ⊗ X
pub fn random_symmetric_kraus<T: Real>(sites: [usize; 2], rank: usize, r: &mut impl Rng) -> Result<KrausChannel<T>> {
    let raw: Vec<CMat<T>> = (0..rank.max(1)).map(|_| symmetrize(&ginibre::<T>(4, 4, r))).collect();
    let mut s = CMat::zeros(4, 4);
    for a in &raw {
        s += a.adjoint() * a;
    }
    let e = linalg::herm_eigen(&s)?;
    let inv_sqrt = e.apply(&e.values, |x| T::one() / x.sqrt());
    let kraus = raw.iter().map(|a| a * &inv_sqrt).collect();
    KrausChannel::new(Register::qubit_sites(&sites)?, kraus)
}

/// exp(iH) with H Hermitian and commuting with X ⊗ X
pub fn random_symmetric_unitary<T: Real>(sites: [usize; 2], r: &mut impl Rng) -> Result<KrausChannel<T>> {
    let h = symmetrize(&random_hermitian::<T>(4, r));
    let e = linalg::herm_eigen(&h)?;
    let n = e.vectors.nrows();
    let mut scaled = e.vectors.clone();
    for (j, &w) in e.values.iter().enumerate() {
        let ph = num_complex::Complex::new(w.cos(), w.sin());
        for i in 0..n {
            scaled[(i, j)] *= ph;
        }
    }
    let u = scaled * e.vectors.adjoint();
    KrausChannel::new(Register::qubit_sites(&sites)?, vec![u])
}

fn brickwork<T: Real>(
    reg: &Register,
    depth: usize,
    mut gate: impl FnMut([usize; 2]) -> Result<KrausChannel<T>>,
) -> Result<Vec<KrausChannel<T>>> {
    let s = reg.sites();
    let mut out = vec![];
    for layer in 0..depth {
        let mut i = layer % 2;
        while i + 1 < s.len() {
            out.push(gate([s[i], s[i + 1]])?);
            i += 2;
        }
    }
    Ok(out)
}

/// brickwork of random strongly symmetric (prod X) two-qubit channels on a qubit register
pub fn symmetric_channel_fuzz<T: Real>(rho: &DensityMatrix<T>, depth: usize, seed: u64) -> Result<DensityMatrix<T>> {
    check_qubits(rho.register())?;
    let mut r = rng(seed);
    let layers = brickwork(rho.register(), depth, |s| random_symmetric_kraus(s, 2, &mut r))?;
    apply_channel(rho, &layers)
}

/// brickwork of random prod-X symmetric two-qubit unitaries
pub fn symmetric_unitary_circuit<T: Real>(rho: &DensityMatrix<T>, depth: usize, seed: u64) -> Result<DensityMatrix<T>> {
    check_qubits(rho.register())?;
    let mut r = rng(seed);
    let layers = brickwork(rho.register(), depth, |s| random_symmetric_unitary(s, &mut r))?;
    apply_channel(rho, &layers)
}

fn check_qubits(reg: &Register) -> Result<()> {
    if reg.dims().iter().any(|&d| d != 2) {
        return Err(Error::Invalid("symmetric circuits act on qubits".into()));
    }
    if reg.len() > 10 {
        return Err(Error::SizeCap(format!("{} qubits, at most 10", reg.len())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemix::fidelity::lfc_one_point;
    use crate::densemix::models::rho_infinity;
    use crate::densemix::random::random_state;
    use crate::densemix::symmetry::SymmetryAction;

    #[test]
    fn zero_probability_is_identity() {
        let reg = Register::qubits(2);
        let rho = random_state::<f64>(&reg, 4, 2);
        let ch = make_pauli_channel(&[vec![0, 1]], 0.0, PauliKind::ZZ).unwrap();
        let out = apply_channel(&rho, &ch).unwrap();
        assert!(linalg::max_abs(&(out.matrix() - rho.matrix())) < 1e-15);
    }

    #[test]
    fn full_dephasing_of_plus() {
        let s = 0.5f64.sqrt();
        let plus = DensityMatrix::pure(Register::qubits(1), &[cx(s), cx(s)]).unwrap();
        let ch = make_pauli_channel(&[vec![0]], 0.5, PauliKind::Z).unwrap();
        let out = apply_channel(&plus, &ch).unwrap();
        assert!(linalg::max_abs(&(out.matrix() - linalg::identity::<f64>(2) * cx(0.5))) < 1e-15);
    }

    #[test]
    fn non_trace_preserving_rejected() {
        let r = KrausChannel::<f64>::new(Register::qubits(1), vec![linalg::pauli('Z') * cx(0.9)]);
        assert!(matches!(r, Err(Error::NotTracePreserving(_))));
    }

    #[test]
    fn fuzz_channels_keep_strong_symmetry() {
        let rho = rho_infinity::<f64>(4, 1);
        assert_eq!(symmetric_channel_fuzz(&rho, 0, 1).unwrap().matrix(), rho.matrix());
        let out = symmetric_channel_fuzz(&rho, 3, 7).unwrap();
        let sym = SymmetryAction::z2_x(Register::qubits(4)).unwrap();
        assert!(sym.strong_violation(&out).unwrap() < 1e-12);
        assert!(DensityMatrix::new(Register::qubits(4), out.into_matrix()).is_ok());
    }

    #[test]
    fn symmetric_unitaries_keep_rho_infinity_lfc() {
        let rho = rho_infinity::<f64>(5, 1);
        let out = symmetric_unitary_circuit(&rho, 2, 3).unwrap();
        let ra = out.partial_trace(&[1, 2, 3]).unwrap();
        let f = lfc_one_point(&ra, &LocalOperator::pauli(2, 'Z')).unwrap();
        assert!((f - 1.0).abs() < 1e-10);
    }
}
