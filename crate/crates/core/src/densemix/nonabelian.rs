use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, cx};
use crate::scalar::{CMat, Real};

use super::fidelity::fidelity;
use super::operator::{act_left, conjugate, LocalOperator};
use super::state::DensityMatrix;
use super::symmetry::{transform, SymmetryAction};

const REP_TOL: f64 = 1e-10;
const POLISH_STEPS: usize = 50;

/// operators O^(a) on a common support with U_g O^(a) U_g^dagger = sum_b D_ab(g) O^(b)
#[derive(Clone, Debug)]
pub struct OperatorMultiplet<T: Real> {
    components: Vec<LocalOperator<T>>,
    irrep: Vec<CMat<T>>,
}

fn hs<T: Real>(a: &CMat<T>, b: &CMat<T>) -> Complex<T> {
    linalg::trace(&(a.adjoint() * b))
}

impl<T: Real> OperatorMultiplet<T> {
    /// validated against every generator of `sym`; irrep[g] is D(g)
    pub fn new(sym: &SymmetryAction<T>, components: Vec<LocalOperator<T>>, irrep: Vec<CMat<T>>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::Invalid("empty multiplet".into()));
        }
        if irrep.len() != sym.generator_count() || irrep.iter().any(|d| d.nrows() != n || d.ncols() != n) {
            return Err(Error::Dimension("one n x n representation matrix per generator required".into()));
        }
        let sup = components[0].support().clone();
        if components.iter().any(|c| c.support() != &sup) {
            return Err(Error::Invalid("multiplet components need a common support".into()));
        }
        let scale = components.iter().fold(T::zero(), |a, c| {
            let m = linalg::max_abs(c.matrix());
            if m > a {
                m
            } else {
                a
            }
        });
        for (g, d) in irrep.iter().enumerate() {
            for a in 0..n {
                let t = transform(sym, g, &components[a])?;
                let mut rhs = CMat::zeros(sup.dim(), sup.dim());
                for b in 0..n {
                    rhs += components[b].matrix() * d[(a, b)];
                }
                let dev = linalg::max_abs(&(t.matrix() - rhs)) / scale;
                if dev > T::tol(REP_TOL) {
                    return Err(Error::Charge(dev.f()));
                }
            }
        }
        Ok(OperatorMultiplet { components, irrep })
    }

    /// representation matrices obtained by Hilbert-Schmidt projection onto the components
    pub fn from_components(sym: &SymmetryAction<T>, components: Vec<LocalOperator<T>>) -> Result<Self> {
        let n = components.len();
        let gram = CMat::from_fn(n, n, |i, j| hs(components[i].matrix(), components[j].matrix()));
        let e = linalg::herm_eigen(&gram)?;
        if e.values.first().map_or(true, |&w| w <= T::eps()) {
            return Err(Error::Invalid("multiplet components are linearly dependent".into()));
        }
        let ginv = e.apply(&e.values, |w| T::one() / w);
        let mut irrep = vec![];
        for g in 0..sym.generator_count() {
            let mut d = CMat::zeros(n, n);
            for a in 0..n {
                let t = transform(sym, g, &components[a])?;
                let proj: Vec<Complex<T>> = (0..n).map(|c| hs(components[c].matrix(), t.matrix())).collect();
                for b in 0..n {
                    let mut s = cx(T::zero());
                    for c in 0..n {
                        s += ginv[(b, c)] * proj[c];
                    }
                    d[(a, b)] = s;
                }
            }
            irrep.push(d);
        }
        OperatorMultiplet::new(sym, components, irrep)
    }

    /// a single operator as a one-dimensional multiplet, without symmetry data
    pub fn singlet(op: LocalOperator<T>) -> Self {
        OperatorMultiplet { components: vec![op], irrep: vec![] }
    }

    pub fn components(&self) -> &[LocalOperator<T>] {
        &self.components
    }

    pub fn irrep(&self) -> &[CMat<T>] {
        &self.irrep
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// F(rho, tau_O[rho]) with tau_O = (1/n) sum_a O^(a) . O^(a)^dagger
pub fn nonabelian_lfc_channel<T: Real>(rho: &DensityMatrix<T>, mult: &OperatorMultiplet<T>) -> Result<T> {
    let d = rho.register().dim();
    let mut tau = CMat::zeros(d, d);
    for o in mult.components() {
        tau += conjugate(rho.register(), o, rho.matrix())?;
    }
    let tau = linalg::hermitize(&(tau / cx(T::c(mult.len() as f64))));
    fidelity(rho, &tau)
}

fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

const PRIMES: [usize; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// quasi-uniform points on the unit sphere of C^n: Halton points mapped to Gaussians and normalized
pub fn sphere_grid(n: usize, count: usize) -> Vec<Vec<Complex<f64>>> {
    assert!(n <= PRIMES.len() / 2, "multiplet too large for the built-in grid");
    (1..=count)
        .map(|i| {
            let mut v: Vec<Complex<f64>> = (0..n)
                .map(|a| {
                    let u1 = radical_inverse(i, PRIMES[2 * a]).max(1e-12);
                    let u2 = radical_inverse(i, PRIMES[2 * a + 1]);
                    let r = (-2.0 * u1.ln()).sqrt();
                    let th = std::f64::consts::TAU * u2;
                    Complex::new(r * th.cos(), r * th.sin())
                })
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.iter_mut().for_each(|z| *z /= norm);
            v
        })
        .collect()
}

/// max over unit v of F(rho, (v.O) rho (v.O)^dagger): grid search then shrinking-step pattern ascent
pub fn nonabelian_lfc_maxv<T: Real>(rho: &DensityMatrix<T>, mult: &OperatorMultiplet<T>, grid_resolution: usize) -> Result<T> {
    let sr = linalg::sqrt_psd(rho.matrix())?;
    let blocks = mult
        .components()
        .iter()
        .map(|o| act_left(rho.register(), o, &sr).map(|osr| &sr * osr))
        .collect::<Result<Vec<_>>>()?;
    let eval = |v: &[Complex<f64>]| -> Result<f64> {
        let mut m = CMat::zeros(sr.nrows(), sr.ncols());
        for (b, z) in blocks.iter().zip(v) {
            m += b * Complex::new(T::c(z.re), T::c(z.im));
        }
        Ok(linalg::nuclear_norm(&m)?.f())
    };
    let n = mult.len();
    let mut best = vec![Complex::new(1.0, 0.0); 1];
    best.resize(n, Complex::new(0.0, 0.0));
    let mut best_f = eval(&best)?;
    for a in 1..n {
        let mut e = vec![Complex::new(0.0, 0.0); n];
        e[a] = Complex::new(1.0, 0.0);
        let f = eval(&e)?;
        if f > best_f {
            best_f = f;
            best = e;
        }
    }
    for v in sphere_grid(n, grid_resolution) {
        let f = eval(&v)?;
        if f > best_f {
            best_f = f;
            best = v;
        }
    }
    let mut step = 0.5 / (grid_resolution.max(1) as f64).powf(1.0 / (2 * n) as f64);
    for _ in 0..POLISH_STEPS {
        let mut improved = false;
        for k in 0..2 * n {
            for sign in [1.0, -1.0] {
                let mut v = best.clone();
                let d = sign * step;
                if k % 2 == 0 {
                    v[k / 2].re += d;
                } else {
                    v[k / 2].im += d;
                }
                let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                v.iter_mut().for_each(|z| *z /= norm);
                let f = eval(&v)?;
                if f > best_f {
                    best_f = f;
                    best = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(T::c(best_f))
}

/// S3 = <r, s> acting on qubits by u(r) = exp(-i 2pi/3 Y) and u(s) = Z
pub fn s3_qubit_action<T: Real>(reg: super::state::Register) -> Result<SymmetryAction<T>> {
    let th = 2.0 * std::f64::consts::PI / 3.0;
    let r = CMat::from_row_slice(2, 2, &[cx(T::c(th.cos())), cx(T::c(-th.sin())), cx(T::c(th.sin())), cx(T::c(th.cos()))]);
    let s = linalg::pauli::<T>('Z');
    let n = reg.len();
    SymmetryAction::new(reg, vec![vec![r; n], vec![s; n]], None)
}

/// the doublet (Z, X) on one site under `s3_qubit_action`
pub fn s3_doublet<T: Real>(sym: &SymmetryAction<T>, site: usize) -> Result<OperatorMultiplet<T>> {
    OperatorMultiplet::from_components(sym, vec![LocalOperator::pauli(site, 'Z'), LocalOperator::pauli(site, 'X')])
}
