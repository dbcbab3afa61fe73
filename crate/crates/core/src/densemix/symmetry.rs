use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, cx};
use crate::scalar::{CMat, Real};

use super::fidelity::lfc_one_point;
use super::operator::{conjugate, LocalOperator};
use super::state::{DensityMatrix, Register};

const SYM_TOL: f64 = 1e-10;
const WEAK_TOL: f64 = 1e-8;
const SECTOR_FLOOR: f64 = 1e-12;

/// onsite group action: generators[g][k] is the unitary of generator g on site k of `register`
#[derive(Clone, Debug)]
pub struct SymmetryAction<T: Real> {
    register: Register,
    generators: Vec<Vec<CMat<T>>>,
    cyclic_order: Option<usize>,
}

impl<T: Real> SymmetryAction<T> {
    pub fn new(register: Register, generators: Vec<Vec<CMat<T>>>, cyclic_order: Option<usize>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid("symmetry needs at least one generator".into()));
        }
        for g in &generators {
            if g.len() != register.len() {
                return Err(Error::Dimension(format!("{} onsite unitaries for {} sites", g.len(), register.len())));
            }
            for (u, &d) in g.iter().zip(register.dims()) {
                if u.nrows() != d || u.ncols() != d {
                    return Err(Error::Dimension("onsite unitary has wrong size".into()));
                }
                let dev = linalg::unitarity_deviation(u);
                if dev > T::tol(SYM_TOL) {
                    return Err(Error::NotUnitary(dev.f()));
                }
            }
        }
        if let Some(n) = cyclic_order {
            if n == 0 || generators.len() != 1 {
                return Err(Error::Invalid("cyclic group needs order >= 1 and a single generator".into()));
            }
            for u in &generators[0] {
                let mut p = linalg::identity::<T>(u.nrows());
                for _ in 0..n {
                    p = &p * u;
                }
                let dev = linalg::max_abs(&(p - linalg::identity::<T>(u.nrows())));
                if dev > T::tol(SYM_TOL) {
                    return Err(Error::Invalid(format!("onsite unitary does not satisfy u^{n} = 1 (deviation {:e})", dev.f())));
                }
            }
        }
        Ok(SymmetryAction { register, generators, cyclic_order })
    }

    /// the same cyclic unitary on every site
    pub fn uniform_cyclic(register: Register, u: CMat<T>, order: usize) -> Result<Self> {
        let g = vec![u; register.len()];
        SymmetryAction::new(register, vec![g], Some(order))
    }

    /// Z2 generated by the product of X on every site
    pub fn z2_x(register: Register) -> Result<Self> {
        SymmetryAction::uniform_cyclic(register, linalg::pauli('X'), 2)
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn cyclic_order(&self) -> Option<usize> {
        self.cyclic_order
    }

    /// U_A(g) = product over sites of `sub` of u_i(g)
    pub fn region_unitary(&self, g: usize, sub: &Register) -> Result<CMat<T>> {
        let gen = self.generators.get(g).ok_or_else(|| Error::Invalid(format!("no generator {g}")))?;
        let mats = sub
            .sites()
            .iter()
            .map(|&s| self.register.position(s).map(|p| gen[p].clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(linalg::kron_all(&mats))
    }

    fn cyclic(&self) -> Result<usize> {
        self.cyclic_order.ok_or_else(|| Error::Invalid("operation needs a cyclic group".into()))
    }

    /// character lambda(g) of each generator on an operator, if it carries a definite charge
    pub fn charge_of(&self, op: &LocalOperator<T>) -> Result<Vec<Complex<T>>> {
        let o = op.matrix();
        let scale = linalg::max_abs(o);
        if scale <= T::zero() {
            return Err(Error::Charge(0.0));
        }
        let mut chars = vec![];
        for g in 0..self.generators.len() {
            let u = self.region_unitary(g, op.support())?;
            let t = &u * o * u.adjoint();
            let lam = linalg::trace(&(o.adjoint() * &t)) / linalg::trace(&(o.adjoint() * o));
            let dev = linalg::max_abs(&(t - o * lam)) / scale;
            if dev > T::tol(SYM_TOL) {
                return Err(Error::Charge(dev.f()));
            }
            chars.push(lam);
        }
        Ok(chars)
    }

    /// checks the charge and records it on the operator
    pub fn declare_charge(&self, op: &LocalOperator<T>) -> Result<LocalOperator<T>> {
        let c = self.charge_of(op)?;
        let mut out = op.clone();
        out.set_charge(c);
        Ok(out)
    }

    /// max |U rho U^dagger - rho| over generators
    pub fn weak_violation(&self, rho: &DensityMatrix<T>) -> Result<T> {
        let mut worst = T::zero();
        for g in 0..self.generators.len() {
            let u = self.region_unitary(g, rho.register())?;
            let d = linalg::max_abs(&(&u * rho.matrix() * u.adjoint() - rho.matrix()));
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    }

    /// max |U rho - lambda rho| over generators, with lambda fitted
    pub fn strong_violation(&self, rho: &DensityMatrix<T>) -> Result<T> {
        let mut worst = T::zero();
        for g in 0..self.generators.len() {
            let u = self.region_unitary(g, rho.register())?;
            let ur = &u * rho.matrix();
            let lam = linalg::trace(&(rho.matrix().adjoint() * &ur)) / cx(rho.purity());
            let d = linalg::max_abs(&(ur - rho.matrix() * lam));
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug)]
pub struct Sector<T: Real> {
    /// charge index k with U eigenvalue exp(2 pi i k / n)
    pub charge: usize,
    pub eigenvalue: Complex<T>,
    pub weight: T,
    pub state: DensityMatrix<T>,
}

fn root<T: Real>(k: usize, n: usize) -> Complex<T> {
    let th = T::two_pi() * T::c(k as f64) / T::c(n as f64);
    Complex::new(th.cos(), th.sin())
}

/// Pi_k = (1/n) sum_g omega^{-k g} U^g
fn projector<T: Real>(u: &CMat<T>, k: usize, n: usize) -> CMat<T> {
    let d = u.nrows();
    let mut p = CMat::zeros(d, d);
    let mut ug = linalg::identity::<T>(d);
    for g in 0..n {
        p += &ug * root::<T>((k * g) % n, n).conj();
        ug = &ug * u;
    }
    p / cx(T::c(n as f64))
}

/// isotypic decomposition of a weakly symmetric state under a cyclic symmetry
pub fn charge_decompose<T: Real>(rho: &DensityMatrix<T>, sym: &SymmetryAction<T>) -> Result<Vec<Sector<T>>> {
    let n = sym.cyclic()?;
    let v = sym.weak_violation(rho)?;
    if v > T::tol(WEAK_TOL) {
        return Err(Error::NotSymmetric(v.f()));
    }
    let u = sym.region_unitary(0, rho.register())?;
    let mut out = vec![];
    for k in 0..n {
        let p = projector(&u, k, n);
        let m = &p * rho.matrix() * &p;
        let w = linalg::trace(&m).re;
        if w > T::c(SECTOR_FLOOR) {
            out.push(Sector {
                charge: k,
                eigenvalue: root(k, n),
                weight: w,
                state: DensityMatrix::from_parts(rho.register().clone(), linalg::hermitize(&(m / cx(w)))),
            });
        }
    }
    Ok(out)
}

/// sector weights p_k for every charge k, including empty ones
pub fn sector_weights<T: Real>(rho: &DensityMatrix<T>, sym: &SymmetryAction<T>) -> Result<Vec<T>> {
    let n = sym.cyclic()?;
    let u = sym.region_unitary(0, rho.register())?;
    Ok((0..n).map(|k| linalg::trace(&(projector(&u, k, n) * rho.matrix())).re).collect())
}

/// <U_A(g)> = Tr(rho U_A^g) with g a power of the cyclic generator, or a generator index otherwise
pub fn disorder_parameter<T: Real>(rho: &DensityMatrix<T>, sym: &SymmetryAction<T>, g: usize) -> Result<Complex<T>> {
    let u = match sym.cyclic_order {
        Some(_) => {
            let u1 = sym.region_unitary(0, rho.register())?;
            let mut p = linalg::identity::<T>(u1.nrows());
            for _ in 0..g {
                p = &p * &u1;
            }
            p
        }
        None => sym.region_unitary(g, rho.register())?,
    };
    Ok(linalg::trace(&(rho.matrix() * u)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderDisorder {
    pub lhs: f64,
    pub bound: f64,
}

impl OrderDisorder {
    pub fn holds(&self) -> bool {
        self.lhs <= self.bound + 1e-9
    }
}

/// Z2: F^2 + |<U_A>|^2 against 1; Z_n: F against sum_k sqrt(p_k p_{k+m}) for an operator of charge m
pub fn order_disorder_check<T: Real>(
    rho: &DensityMatrix<T>,
    op: &LocalOperator<T>,
    sym: &SymmetryAction<T>,
) -> Result<OrderDisorder> {
    let n = sym.cyclic()?;
    let dev = op.unitarity_deviation();
    if dev > T::tol(SYM_TOL) {
        return Err(Error::NotUnitary(dev.f()));
    }
    let lam = sym.charge_of(op)?[0];
    let m = (0..n)
        .min_by(|&a, &b| {
            let da = (root::<T>(a, n) - lam).norm_sqr().sqrt();
            let db = (root::<T>(b, n) - lam).norm_sqr().sqrt();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    if m == 0 {
        return Err(Error::Invalid("order-disorder bound needs a charged operator".into()));
    }
    let f = lfc_one_point(rho, op)?;
    if n == 2 {
        let d = disorder_parameter(rho, sym, 1)?;
        return Ok(OrderDisorder { lhs: (f * f + d.norm_sqr()).f(), bound: 1.0 });
    }
    let p = sector_weights(rho, sym)?;
    let b = (0..n).fold(T::zero(), |a, k| {
        let x = p[k].max(T::zero()) * p[(k + m) % n].max(T::zero());
        a + x.sqrt()
    });
    Ok(OrderDisorder { lhs: f.f(), bound: b.f() })
}

/// weakly symmetric projection (1/n) sum_g U^g rho U^-g of an arbitrary state
pub fn twirl<T: Real>(rho: &DensityMatrix<T>, sym: &SymmetryAction<T>) -> Result<DensityMatrix<T>> {
    let n = sym.cyclic()?;
    let u = sym.region_unitary(0, rho.register())?;
    let mut acc = CMat::zeros(u.nrows(), u.ncols());
    let mut ug = linalg::identity::<T>(u.nrows());
    for _ in 0..n {
        acc += &ug * rho.matrix() * ug.adjoint();
        ug = &ug * &u;
    }
    Ok(DensityMatrix::from_parts(rho.register().clone(), linalg::hermitize(&(acc / cx(T::c(n as f64))))))
}

/// applies U O U^dagger for a generator, as an operator on the same support
pub fn transform<T: Real>(sym: &SymmetryAction<T>, g: usize, op: &LocalOperator<T>) -> Result<LocalOperator<T>> {
    let u = sym.region_unitary(g, op.support())?;
    let reg = op.support().clone();
    let ul = LocalOperator::new(reg.clone(), u)?;
    let m = conjugate(&reg, &ul, op.matrix())?;
    LocalOperator::new(reg, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemix::models::{paramagnet_gibbs, paramagnet_sector, rho_infinity};
    use crate::densemix::random::random_state;

    #[test]
    fn rho_infinity_single_sector() {
        let rho = rho_infinity::<f64>(4, 1);
        let sym = SymmetryAction::z2_x(Register::qubits(4)).unwrap();
        let s = charge_decompose(&rho, &sym).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].charge, 0);
        assert!((s[0].weight - 1.0).abs() < 1e-12);
        assert!(sym.strong_violation(&rho).unwrap() < 1e-12);
    }

    #[test]
    fn mixed_two_qubits_split_evenly() {
        let rho = DensityMatrix::<f64>::maximally_mixed(Register::qubits(2));
        let sym = SymmetryAction::z2_x(Register::qubits(2)).unwrap();
        let s = charge_decompose(&rho, &sym).unwrap();
        assert_eq!(s.len(), 2);
        for sec in &s {
            assert!((sec.weight - 0.5).abs() < 1e-12);
            assert!(sym.strong_violation(&sec.state).unwrap() < 1e-12);
        }
        let z = LocalOperator::pauli(0, 'Z');
        let od = order_disorder_check(&rho, &z, &sym).unwrap();
        assert!((od.lhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn paramagnet_reduced_weights() {
        let (n, beta) = (6, 0.7f64);
        let rho = paramagnet_sector::<f64>(n, beta);
        let a = [0, 1, 2];
        let ra = rho.partial_trace(&a).unwrap();
        let sym = SymmetryAction::z2_x(Register::qubit_sites(&a).unwrap()).unwrap();
        let s = charge_decompose(&ra, &sym).unwrap();
        let t = beta.tanh();
        let eps = (t.powi(3) + t.powi(3)) / (t.powi(6) + 1.0);
        assert!((s[0].weight - (1.0 + eps) / 2.0).abs() < 1e-12);
        assert!((s[1].weight - (1.0 - eps) / 2.0).abs() < 1e-12);
        assert!((disorder_parameter(&ra, &sym, 1).unwrap().re - eps).abs() < 1e-12);
    }

    #[test]
    fn gibbs_paramagnet_saturates() {
        let beta = 0.9f64;
        let rho = paramagnet_gibbs::<f64>(4, beta);
        let ra = rho.partial_trace(&[1]).unwrap();
        let sym = SymmetryAction::z2_x(Register::qubit_sites(&[1]).unwrap()).unwrap();
        let od = order_disorder_check(&ra, &LocalOperator::pauli(1, 'Z'), &sym).unwrap();
        assert!((od.lhs - 1.0).abs() < 1e-10);
    }

    #[test]
    fn asymmetric_state_rejected() {
        let reg = Register::qubits(2);
        let rho = random_state::<f64>(&reg, 4, 3);
        let sym = SymmetryAction::z2_x(reg).unwrap();
        assert!(matches!(charge_decompose(&rho, &sym), Err(Error::NotSymmetric(_))));
        let tw = twirl(&rho, &sym).unwrap();
        assert!(charge_decompose(&tw, &sym).is_ok());
    }

    #[test]
    fn charges_and_bad_groups() {
        let sym = SymmetryAction::<f64>::z2_x(Register::qubits(2)).unwrap();
        let c = sym.charge_of(&LocalOperator::pauli(0, 'Z')).unwrap();
        assert!((c[0] + cx(1.0)).norm() < 1e-12);
        assert!(sym.charge_of(&LocalOperator::pauli(0, 'Y')).is_ok());
        let mixed = LocalOperator::<f64>::new(Register::qubits(1), linalg::pauli::<f64>('X') + linalg::pauli::<f64>('Z')).unwrap();
        assert!(matches!(sym.charge_of(&mixed), Err(Error::Charge(_))));
        let z = linalg::pauli::<f64>('Z');
        assert!(SymmetryAction::uniform_cyclic(Register::qubits(1), z * cx(0.5), 2).is_err());
        let s = linalg::diag(&[cx(1.0f64), Complex::new(0.0, 1.0)]);
        assert!(SymmetryAction::uniform_cyclic(Register::qubits(1), s.clone(), 2).is_err());
        assert!(SymmetryAction::uniform_cyclic(Register::qubits(1), s, 4).is_ok());
    }

    #[test]
    fn z4_bound_holds() {
        let s = linalg::diag(&[cx(1.0f64), Complex::new(0.0, 1.0), cx(-1.0), Complex::new(0.0, -1.0)]);
        let reg = Register::new(vec![0, 1], vec![4, 4]).unwrap();
        let sym = SymmetryAction::uniform_cyclic(reg.clone(), s, 4).unwrap();
        let mut shift = CMat::<f64>::zeros(4, 4);
        for k in 0..4 {
            shift[((k + 1) % 4, k)] = cx(1.0);
        }
        let op = LocalOperator::new(Register::new(vec![0], vec![4]).unwrap(), shift).unwrap();
        for seed in 0..20 {
            let rho = twirl(&random_state::<f64>(&reg, 3, seed), &sym).unwrap();
            let od = order_disorder_check(&rho, &op, &sym).unwrap();
            assert!(od.holds(), "{od:?}");
        }
    }
}
