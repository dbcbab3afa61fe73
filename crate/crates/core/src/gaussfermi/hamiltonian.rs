use std::collections::BTreeMap;

use num_complex::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{CMat, RMat, Real};

use super::geometry::{Boundary, LatticeGeometry};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ModelMeta {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub seed: Option<u64>,
}

/// translation-invariant description: amplitude `amp` for c^dagger_{R+shift, to} c_{R, from}, plus h.c.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochTerm {
    pub from: usize,
    pub to: usize,
    pub shift: Vec<i64>,
    pub amp: Complex<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochModel {
    /// number of unit cells along each direction, all periodic
    pub cells: Vec<usize>,
    pub bands: usize,
    pub terms: Vec<BlochTerm>,
    pub onsite: Vec<f64>,
    /// lattice position of band a in cell R is cell_scale * R + offset[a]
    pub cell_scale: Vec<usize>,
    pub offsets: Vec<Vec<usize>>,
}

impl BlochModel {
    pub fn n_cells(&self) -> usize {
        self.cells.iter().product()
    }

    pub fn cell(&self, mut i: usize) -> Vec<usize> {
        let mut c = vec![0; self.cells.len()];
        for d in (0..self.cells.len()).rev() {
            c[d] = i % self.cells[d];
            i /= self.cells[d];
        }
        c
    }

    pub fn momentum(&self, m: &[usize]) -> Vec<f64> {
        m.iter().zip(&self.cells).map(|(&x, &l)| std::f64::consts::TAU * x as f64 / l as f64).collect()
    }

    /// H(k)_{to,from} += amp e^{-i k.shift}, plus the conjugate entry
    pub fn h_of_k(&self, k: &[f64]) -> CMat<f64> {
        let nb = self.bands;
        let mut h = CMat::<f64>::zeros(nb, nb);
        for (a, &e) in self.onsite.iter().enumerate() {
            h[(a, a)] += Complex::new(e, 0.0);
        }
        for t in &self.terms {
            let ph: f64 = t.shift.iter().zip(k).map(|(&s, &q)| s as f64 * q).sum();
            let z = t.amp * Complex::new(ph.cos(), -ph.sin());
            h[(t.to, t.from)] += z;
            h[(t.from, t.to)] += z.conj();
        }
        h
    }

    /// lattice site of band a in cell R
    pub fn site(&self, geom: &LatticeGeometry, cell: &[usize], band: usize) -> usize {
        let c: Vec<usize> = (0..cell.len()).map(|d| cell[d] * self.cell_scale[d] + self.offsets[band][d]).collect();
        geom.index(&c)
    }
}

/// H = sum_ij J_ij c_i^dagger c_j stored as sparse entries (both triangles)
#[derive(Clone, Debug)]
pub struct QuadraticHamiltonian<T: Real> {
    geometry: LatticeGeometry,
    entries: Vec<(usize, usize, Complex<T>)>,
    bloch: Option<BlochModel>,
    meta: ModelMeta,
}

impl<T: Real> QuadraticHamiltonian<T> {
    /// builds from entries of J; duplicates are summed; Hermiticity checked to 1e-12
    pub fn from_entries(geometry: LatticeGeometry, entries: Vec<(usize, usize, Complex<T>)>, meta: ModelMeta) -> Result<Self> {
        let n = geometry.n_sites();
        let mut map: BTreeMap<(usize, usize), Complex<T>> = BTreeMap::new();
        for (i, j, z) in entries {
            if i >= n || j >= n {
                return Err(Error::Invalid(format!("entry ({i},{j}) outside {n} sites")));
            }
            *map.entry((i, j)).or_insert(Complex::new(T::zero(), T::zero())) += z;
        }
        let tol = T::tol(1e-12);
        for (&(i, j), z) in &map {
            let w = map.get(&(j, i)).copied().unwrap_or(Complex::new(T::zero(), T::zero()));
            let dev = (*z - w.conj()).norm_sqr().sqrt();
            if dev > tol {
                return Err(Error::NotHermitian(dev.f()));
            }
        }
        let entries = map.into_iter().map(|((i, j), z)| (i, j, z)).collect();
        Ok(QuadraticHamiltonian { geometry, entries, bloch: None, meta })
    }

    pub fn from_dense(geometry: LatticeGeometry, m: &CMat<T>, meta: ModelMeta) -> Result<Self> {
        let n = geometry.n_sites();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::Dimension("matrix does not match lattice".into()));
        }
        let mut e = vec![];
        for j in 0..n {
            for i in 0..n {
                if m[(i, j)].norm_sqr().sqrt() > T::zero() {
                    e.push((i, j, m[(i, j)]));
                }
            }
        }
        QuadraticHamiltonian::from_entries(geometry, e, meta)
    }

    pub fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    pub fn entries(&self) -> &[(usize, usize, Complex<T>)] {
        &self.entries
    }

    pub fn meta(&self) -> &ModelMeta {
        &self.meta
    }

    pub fn bloch(&self) -> Option<&BlochModel> {
        self.bloch.as_ref()
    }

    pub fn n_sites(&self) -> usize {
        self.geometry.n_sites()
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.2.im == T::zero())
    }

    pub fn dense(&self) -> CMat<T> {
        let n = self.n_sites();
        let mut m = CMat::zeros(n, n);
        for &(i, j, z) in &self.entries {
            m[(i, j)] += z;
        }
        m
    }

    pub fn dense_real(&self) -> Option<RMat<T>> {
        if !self.is_real() {
            return None;
        }
        let n = self.n_sites();
        let mut m = RMat::zeros(n, n);
        for &(i, j, z) in &self.entries {
            m[(i, j)] += z.re;
        }
        Some(m)
    }

    /// J_ij
    pub fn amplitude(&self, i: usize, j: usize) -> Complex<T> {
        self.entries
            .iter()
            .filter(|e| e.0 == i && e.1 == j)
            .fold(Complex::new(T::zero(), T::zero()), |a, e| a + e.2)
    }
}

fn meta(name: &str, params: &[(&str, f64)], seed: Option<u64>) -> ModelMeta {
    ModelMeta {
        name: name.into(),
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        seed,
    }
}

fn from_bloch<T: Real>(geometry: LatticeGeometry, model: BlochModel, extra_onsite: Option<&[f64]>, m: ModelMeta, attach: bool) -> Result<QuadraticHamiltonian<T>> {
    let mut e: Vec<(usize, usize, Complex<T>)> = vec![];
    let cx = |z: Complex<f64>| Complex::new(T::c(z.re), T::c(z.im));
    for r in 0..model.n_cells() {
        let cell = model.cell(r);
        for (a, &v) in model.onsite.iter().enumerate() {
            if v != 0.0 {
                let s = model.site(&geometry, &cell, a);
                e.push((s, s, cx(Complex::new(v, 0.0))));
            }
        }
        for t in &model.terms {
            let from = model.site(&geometry, &cell, t.from);
            let shifted: Vec<i64> = (0..cell.len()).map(|d| t.shift[d] * model.cell_scale[d] as i64).collect();
            let Some(to_base) = geometry.shifted(model.site(&geometry, &cell, t.to), &shifted) else {
                continue;
            };
            e.push((to_base, from, cx(t.amp)));
            e.push((from, to_base, cx(t.amp.conj())));
        }
    }
    if let Some(v) = extra_onsite {
        for (i, &x) in v.iter().enumerate() {
            e.push((i, i, Complex::new(T::c(x), T::zero())));
        }
    }
    let mut h = QuadraticHamiltonian::from_entries(geometry.clone(), e, m)?;
    let periodic = geometry.boundary().iter().all(|&b| b == Boundary::Periodic);
    if attach && periodic {
        h.bloch = Some(model);
    }
    Ok(h)
}

fn check_size(ls: &[usize]) -> Result<()> {
    if ls.iter().any(|&l| l < 2) {
        return Err(Error::Invalid("lattice sizes must be at least 2".into()));
    }
    Ok(())
}

fn bc(pbc: bool) -> Boundary {
    if pbc {
        Boundary::Periodic
    } else {
        Boundary::Open
    }
}

/// nearest-neighbour chain with hopping -1
pub fn fermi_chain_1d<T: Real>(l: usize, pbc: bool) -> Result<QuadraticHamiltonian<T>> {
    check_size(&[l])?;
    let model = BlochModel {
        cells: vec![l],
        bands: 1,
        terms: vec![BlochTerm { from: 0, to: 0, shift: vec![1], amp: Complex::new(-1.0, 0.0) }],
        onsite: vec![0.0],
        cell_scale: vec![1],
        offsets: vec![vec![0]],
    };
    let geom = LatticeGeometry::chain(l, bc(pbc));
    from_bloch(geom, model, None, meta("fermi_chain_1d", &[("L", l as f64)], None), l > 2)
}

fn square_model(lx: usize, ly: usize) -> BlochModel {
    let t = |s: Vec<i64>| BlochTerm { from: 0, to: 0, shift: s, amp: Complex::new(-1.0, 0.0) };
    BlochModel {
        cells: vec![lx, ly],
        bands: 1,
        terms: vec![t(vec![1, 0]), t(vec![0, 1])],
        onsite: vec![0.0],
        cell_scale: vec![1, 1],
        offsets: vec![vec![0, 0]],
    }
}

/// square lattice with nearest-neighbour hopping -1
pub fn square_lattice_2d<T: Real>(lx: usize, ly: usize, pbc: bool) -> Result<QuadraticHamiltonian<T>> {
    check_size(&[lx, ly])?;
    let geom = LatticeGeometry::uniform(vec![lx, ly], bc(pbc));
    let m = meta("square_lattice_2d", &[("Lx", lx as f64), ("Ly", ly as f64)], None);
    from_bloch(geom, square_model(lx, ly), None, m, lx > 2 && ly > 2)
}

/// horizontal hopping -1, vertical hopping -(-1)^x: flux pi through every plaquette
pub fn pi_flux_2d<T: Real>(lx: usize, ly: usize, pbc: bool) -> Result<QuadraticHamiltonian<T>> {
    check_size(&[lx, ly])?;
    if pbc && lx % 2 == 1 {
        return Err(Error::Invalid("periodic pi-flux lattice needs even Lx".into()));
    }
    let t = |from: usize, to: usize, s: Vec<i64>, a: f64| BlochTerm { from, to, shift: s, amp: Complex::new(a, 0.0) };
    let model = BlochModel {
        cells: vec![lx / 2, ly],
        bands: 2,
        terms: vec![
            t(0, 1, vec![0, 0], -1.0),
            t(1, 0, vec![1, 0], -1.0),
            t(0, 0, vec![0, 1], -1.0),
            t(1, 1, vec![0, 1], 1.0),
        ],
        onsite: vec![0.0, 0.0],
        cell_scale: vec![2, 1],
        offsets: vec![vec![0, 0], vec![1, 0]],
    };
    let geom = LatticeGeometry::uniform(vec![lx, ly], bc(pbc));
    let m = meta("pi_flux_2d", &[("Lx", lx as f64), ("Ly", ly as f64)], None);
    if pbc {
        return from_bloch(geom, model, None, m, lx > 2 && ly > 2);
    }
    let mut e = vec![];
    for i in 0..geom.n_sites() {
        let x = geom.cell(i)[0];
        let v = if x % 2 == 0 { -1.0 } else { 1.0 };
        for (shift, amp) in [([1i64, 0i64], -1.0), ([0, 1], v)] {
            if let Some(j) = geom.shifted(i, &shift) {
                e.push((j, i, Complex::new(T::c(amp), T::zero())));
                e.push((i, j, Complex::new(T::c(amp), T::zero())));
            }
        }
    }
    QuadraticHamiltonian::from_entries(geom, e, m)
}

/// square lattice plus uniform on-site disorder in [-W/2, W/2], periodic
pub fn anderson_2d<T: Real>(l: usize, w: f64, seed: u64) -> Result<QuadraticHamiltonian<T>> {
    check_size(&[l])?;
    if w < 0.0 {
        return Err(Error::Invalid("disorder strength must be nonnegative".into()));
    }
    let geom = LatticeGeometry::uniform(vec![l, l], Boundary::Periodic);
    let m = meta("anderson_2d", &[("L", l as f64), ("W", w)], Some(seed));
    if w == 0.0 {
        return from_bloch(geom, square_model(l, l), None, m, l > 2);
    }
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let eps: Vec<f64> = (0..l * l).map(|_| w * (r.random::<f64>() - 0.5)).collect();
    from_bloch(geom, square_model(l, l), Some(&eps), m, false)
}

/// real symmetric GOE matrix: off-diagonal variance J^2/N, diagonal variance 2J^2/N
pub fn goe_hamiltonian<T: Real>(n: usize, j: f64, seed: u64) -> Result<QuadraticHamiltonian<T>> {
    check_size(&[n])?;
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let s = j / (n as f64).sqrt();
    let mut e = Vec::with_capacity(n * n);
    for a in 0..n {
        let d: f64 = r.sample(StandardNormal);
        e.push((a, a, Complex::new(T::c(d * s * 2f64.sqrt()), T::zero())));
        for b in a + 1..n {
            let x: f64 = r.sample(StandardNormal);
            let z = Complex::new(T::c(x * s), T::zero());
            e.push((a, b, z));
            e.push((b, a, z));
        }
    }
    let geom = LatticeGeometry::chain(n, Boundary::Periodic);
    QuadraticHamiltonian::from_entries(geom, e, meta("goe", &[("N", n as f64), ("J", j)], Some(seed)))
}

/// product of hopping amplitudes i->i+x->i+x+y->i+y->i around every plaquette
pub fn plaquette_fluxes<T: Real>(h: &QuadraticHamiltonian<T>) -> Vec<Complex<T>> {
    let g = h.geometry();
    let mut out = vec![];
    if g.dimension() != 2 {
        return out;
    }
    let t = |from: usize, to: usize| h.amplitude(to, from);
    for i in 0..g.n_sites() {
        let (Some(a), Some(c)) = (g.shifted(i, &[1, 0]), g.shifted(i, &[0, 1])) else { continue };
        let Some(b) = g.shifted(i, &[1, 1]) else { continue };
        out.push(t(i, a) * t(a, b) * t(b, c) * t(c, i));
    }
    out
}
