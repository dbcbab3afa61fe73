//! exact correlators of mixtures of a few matrix-product states on long qubit chains

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, cx};
use crate::scalar::{CMat, Real};

/// open-boundary qubit chain state: tensors[k][s] is a Dl x Dr matrix
#[derive(Clone, Debug)]
pub struct Mps<T: Real> {
    tensors: Vec<[CMat<T>; 2]>,
}

/// building block of a dimerized product state
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// (|01> - |10>)/sqrt 2 on two consecutive sites
    Singlet,
    /// computational basis state on one site
    Basis(u8),
}

impl<T: Real> Mps<T> {
    pub fn new(tensors: Vec<[CMat<T>; 2]>) -> Result<Self> {
        for w in tensors.windows(2) {
            if w[0][0].ncols() != w[1][0].nrows() {
                return Err(Error::Dimension("bond dimensions do not chain".into()));
            }
        }
        Ok(Mps { tensors })
    }

    pub fn from_blocks(blocks: &[Block]) -> Self {
        let h = T::c(0.5f64.sqrt());
        let z = cx(T::zero());
        let one = cx(T::one());
        let mut t = vec![];
        for b in blocks {
            match *b {
                Block::Singlet => {
                    t.push([CMat::from_row_slice(1, 2, &[one, z]), CMat::from_row_slice(1, 2, &[z, one])]);
                    t.push([CMat::from_row_slice(2, 1, &[z, -cx(h)]), CMat::from_row_slice(2, 1, &[cx(h), z])]);
                }
                Block::Basis(s) => {
                    let (a, b) = if s == 0 { (one, z) } else { (z, one) };
                    t.push([CMat::from_row_slice(1, 1, &[a]), CMat::from_row_slice(1, 1, &[b])]);
                }
            }
        }
        Mps { tensors: t }
    }

    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }

    /// full state vector, site 0 most significant
    pub fn to_vector(&self) -> Vec<Complex<T>> {
        let n = self.len();
        (0..1usize << n)
            .map(|i| {
                let mut m = CMat::<T>::identity(1, 1);
                for k in 0..n {
                    let s = (i >> (n - 1 - k)) & 1;
                    m = m * &self.tensors[k][s];
                }
                m[(0, 0)]
            })
            .collect()
    }
}

/// <a| prod_k O_k |b> for single-site operators given by site index
pub fn sandwich<T: Real>(a: &Mps<T>, b: &Mps<T>, ops: &[(usize, CMat<T>)]) -> Result<Complex<T>> {
    if a.len() != b.len() {
        return Err(Error::Dimension("chains of different length".into()));
    }
    let mut env = CMat::<T>::identity(1, 1);
    for k in 0..a.len() {
        let op = ops.iter().find(|o| o.0 == k).map(|o| &o.1);
        let (ra, rb) = (a.tensors[k][0].ncols(), b.tensors[k][0].ncols());
        let mut next = CMat::zeros(ra, rb);
        for s in 0..2 {
            for sp in 0..2 {
                let w = match op {
                    Some(m) => m[(s, sp)],
                    None if s == sp => cx(T::one()),
                    None => continue,
                };
                if w.re == T::zero() && w.im == T::zero() {
                    continue;
                }
                next += (a.tensors[k][s].adjoint() * &env * &b.tensors[k][sp]) * w;
            }
        }
        env = next;
    }
    Ok(env[(0, 0)])
}

/// rho = sum_i w_i |v_i><v_i| with v_i given as matrix-product states
#[derive(Clone, Debug)]
pub struct LowRankState<T: Real> {
    weights: Vec<T>,
    states: Vec<Mps<T>>,
}

struct Reduced<T: Real> {
    lambda: Vec<T>,
    /// operator matrix elements between eigenvectors of rho
    ohat: CMat<T>,
}

impl<T: Real> LowRankState<T> {
    pub fn new(weights: Vec<T>, states: Vec<Mps<T>>) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::Invalid("one weight per state required".into()));
        }
        if weights.iter().any(|&w| w < T::zero()) {
            return Err(Error::NotPositive(0.0));
        }
        let n = states[0].len();
        if states.iter().any(|s| s.len() != n) {
            return Err(Error::Dimension("all states need the same length".into()));
        }
        let s = LowRankState { weights, states };
        let tr = s.trace()?;
        if (tr - T::one()).abs() > T::tol(1e-10) {
            return Err(Error::Trace(tr.f()));
        }
        Ok(s)
    }

    pub fn sites(&self) -> usize {
        self.states[0].len()
    }

    fn gram(&self, ops: &[(usize, CMat<T>)]) -> Result<CMat<T>> {
        let r = self.states.len();
        let mut g = CMat::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                g[(i, j)] = sandwich(&self.states[i], &self.states[j], ops)?;
            }
        }
        Ok(g)
    }

    pub fn trace(&self) -> Result<T> {
        let g = self.gram(&[])?;
        Ok((0..self.weights.len()).fold(T::zero(), |a, i| a + self.weights[i] * g[(i, i)].re))
    }

    fn reduce(&self, ops: &[(usize, CMat<T>)]) -> Result<Reduced<T>> {
        let r = self.weights.len();
        let b: Vec<Complex<T>> = self.weights.iter().map(|w| cx(w.sqrt())).collect();
        let bm = linalg::diag(&b);
        let k = &bm * self.gram(&[])? * &bm;
        let e = linalg::herm_eigen(&k)?;
        let w = e.clipped_spectrum()?;
        let keep: Vec<usize> = (0..r).filter(|&i| w[i] > T::zero()).collect();
        let rv = e.vectors.select_columns(&keep);
        let sinv: Vec<Complex<T>> = keep.iter().map(|&i| cx(T::one() / w[i].sqrt())).collect();
        let si = linalg::diag(&sinv);
        let m = self.gram(ops)?;
        let ohat = &si * rv.adjoint() * &bm * m * &bm * &rv * &si;
        Ok(Reduced { lambda: keep.iter().map(|&i| w[i]).collect(), ohat })
    }

    /// Renyi-alpha correlator of a product of single-site operators
    pub fn renyi(&self, ops: &[(usize, CMat<T>)], alpha: T) -> Result<T> {
        if alpha <= T::zero() {
            return Err(Error::Invalid("Renyi index must be positive".into()));
        }
        let red = self.reduce(ops)?;
        let p: Vec<T> = red.lambda.iter().map(|&l| l.powf(alpha / T::c(2.0))).collect();
        let mut num = T::zero();
        for i in 0..p.len() {
            for j in 0..p.len() {
                num += p[i] * p[j] * red.ohat[(i, j)].norm_sqr();
            }
        }
        Ok(num / p.iter().fold(T::zero(), |a, &x| a + x * x))
    }

    /// F(rho, O rho O^dagger) for a product of single-site operators
    pub fn lfc(&self, ops: &[(usize, CMat<T>)]) -> Result<T> {
        let red = self.reduce(ops)?;
        let s: Vec<Complex<T>> = red.lambda.iter().map(|l| cx(l.sqrt())).collect();
        let sd = linalg::diag(&s);
        linalg::nuclear_norm(&(&sd * &red.ohat * &sd))
    }

    /// dense density matrix; only for short chains
    pub fn dense(&self) -> Result<CMat<T>> {
        let n = self.sites();
        if n > 12 {
            return Err(Error::SizeCap(format!("{n} sites, dense cap is 12")));
        }
        let d = 1usize << n;
        let mut m = CMat::zeros(d, d);
        for (w, s) in self.weights.iter().zip(&self.states) {
            let v = nalgebra::DVector::from_vec(s.to_vector());
            m += (&v * v.adjoint()) * cx(*w);
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimerWindow {
    /// [-2n, 2n+1]: aligned with dimers on (2k, 2k+1)
    A,
    /// [-2n-1, 2n]: aligned with dimers on (2k-1, 2k)
    B,
}

/// equal mixture of the two dimer coverings of a chain, reduced to a window of 4n+2 sites;
/// in window coordinates both window families see the same state, only the probe moves
pub fn dimer_window<T: Real>(n: usize) -> LowRankState<T> {
    let cut = 2 * n;
    let aligned = vec![Block::Singlet; 2 * n + 1];
    let mut weights = vec![T::c(0.5)];
    let mut states = vec![Mps::from_blocks(&aligned)];
    for l in 0..2u8 {
        for r in 0..2u8 {
            let mut b = vec![Block::Basis(l)];
            b.extend(std::iter::repeat(Block::Singlet).take(cut));
            b.push(Block::Basis(r));
            weights.push(T::c(0.125));
            states.push(Mps::from_blocks(&b));
        }
    }
    LowRankState { weights, states }
}

/// X_0 X_1 in window coordinates
pub fn dimer_probe<T: Real>(n: usize, window: DimerWindow) -> Vec<(usize, CMat<T>)> {
    let first = match window {
        DimerWindow::A => 2 * n,
        DimerWindow::B => 2 * n + 1,
    };
    vec![(first, linalg::pauli('X')), (first + 1, linalg::pauli('X'))]
}

/// 4^{a-1}/(4^{a-1}+1) for window A and 1/(4^{a-1}+1) for window B
pub fn dimer_limit(alpha: f64, window: DimerWindow) -> f64 {
    let q = 4f64.powf(alpha - 1.0);
    match window {
        DimerWindow::A => q / (q + 1.0),
        DimerWindow::B => 1.0 / (q + 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemix::fidelity::{lfc_one_point, renyi_one_point};
    use crate::densemix::operator::LocalOperator;
    use crate::densemix::state::{DensityMatrix, Register};

    fn dense_pair(n: usize, w: DimerWindow) -> (DensityMatrix<f64>, LocalOperator<f64>) {
        let st = dimer_window::<f64>(n);
        let reg = Register::qubits(st.sites());
        let rho = DensityMatrix::new(reg, st.dense().unwrap()).unwrap();
        let sites: Vec<(usize, char)> = dimer_probe::<f64>(n, w).iter().map(|o| (o.0, 'X')).collect();
        (rho, LocalOperator::pauli_string(&sites).unwrap())
    }

    #[test]
    fn mps_singlet_vector() {
        let v = Mps::<f64>::from_blocks(&[Block::Singlet]).to_vector();
        let h = 0.5f64.sqrt();
        let expect = [0.0, h, -h, 0.0];
        for (a, b) in v.iter().zip(expect) {
            assert!((a.re - b).abs() < 1e-15 && a.im.abs() < 1e-15);
        }
    }

    #[test]
    fn low_rank_matches_dense() {
        for n in 1..=2 {
            for w in [DimerWindow::A, DimerWindow::B] {
                let st = dimer_window::<f64>(n);
                assert!((st.trace().unwrap() - 1.0).abs() < 1e-14);
                let (rho, op) = dense_pair(n, w);
                let probe = dimer_probe::<f64>(n, w);
                for a in [0.5, 1.0, 2.0, 3.0] {
                    let x = st.renyi(&probe, a).unwrap();
                    let y = renyi_one_point(&rho, &op, a).unwrap();
                    assert!((x - y).abs() < 1e-12, "n={n} {w:?} a={a}: {x} {y}");
                }
                let f = st.lfc(&probe).unwrap();
                assert!((f - lfc_one_point(&rho, &op).unwrap()).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn finite_window_fixture() {
        let a = dimer_window::<f64>(2).renyi(&dimer_probe(2, DimerWindow::A), 2.0).unwrap();
        let b = dimer_window::<f64>(2).renyi(&dimer_probe(2, DimerWindow::B), 2.0).unwrap();
        assert!((a - 0.800312).abs() < 1e-6);
        assert!((b - 0.201248).abs() < 1e-6);
    }
}
