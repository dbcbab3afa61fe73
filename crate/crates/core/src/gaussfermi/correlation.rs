use num_complex::Complex;

use crate::container::{Container, Kind};
use crate::error::{Error, Result};
use crate::linalg::{self, cx};
use crate::scalar::{CMat, RMat, Real};

use super::geometry::{LatticeGeometry, Region};
use super::hamiltonian::{BlochModel, QuadraticHamiltonian};

const DEGENERACY_TOL: f64 = 1e-10;
const SPECTRUM_SLACK: f64 = 1e-9;
const CLIP_LIMIT: f64 = 1e-6;

/// two-point functions C(i,j) = <c_i^dagger c_j> of a Gaussian state on a lattice
pub trait CorrelationSource<T: Real>: Sync {
    fn geometry(&self) -> &LatticeGeometry;

    fn entry(&self, i: usize, j: usize) -> Complex<T>;

    fn block(&self, sites: &[usize]) -> CMat<T> {
        CMat::from_fn(sites.len(), sites.len(), |a, b| self.entry(sites[a], sites[b]))
    }

    fn warnings(&self) -> &[String] {
        &[]
    }
}

/// Hermitian C on a subset of lattice sites
#[derive(Clone, Debug)]
pub struct CorrelationMatrix<T: Real> {
    geometry: LatticeGeometry,
    sites: Vec<usize>,
    data: CMat<T>,
    warnings: Vec<String>,
}

impl<T: Real> CorrelationMatrix<T> {
    /// validated: Hermitian to 1e-10, spectrum within [-1e-9, 1 + 1e-9]
    pub fn new(geometry: LatticeGeometry, sites: Vec<usize>, data: CMat<T>) -> Result<Self> {
        if data.nrows() != sites.len() || data.ncols() != sites.len() {
            return Err(Error::Dimension("correlation matrix does not match site list".into()));
        }
        if sites.iter().any(|&s| s >= geometry.n_sites()) {
            return Err(Error::Invalid("site outside lattice".into()));
        }
        let dev = linalg::hermitian_deviation(&data);
        if dev > T::tol(1e-10) {
            return Err(Error::NotHermitian(dev.f()));
        }
        let (w, _) = spectrum(&data)?;
        let slack = T::tol(SPECTRUM_SLACK);
        if w.iter().any(|&x| x < -slack || x > T::one() + slack) {
            return Err(Error::Invalid("correlation spectrum outside [0,1]".into()));
        }
        Ok(CorrelationMatrix { geometry, sites, data, warnings: vec![] })
    }

    pub(crate) fn from_parts(geometry: LatticeGeometry, sites: Vec<usize>, data: CMat<T>, warnings: Vec<String>) -> Self {
        CorrelationMatrix { geometry, sites, data, warnings }
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn coords(&self) -> Vec<Vec<f64>> {
        self.sites.iter().map(|&s| self.geometry.coords(s)).collect()
    }

    pub fn position(&self, site: usize) -> Result<usize> {
        self.sites.iter().position(|&s| s == site).ok_or(Error::Invalid(format!("site {site} not in correlation matrix")))
    }

    /// 1 - C, the particle-hole conjugate
    pub fn particle_hole(&self) -> Self {
        let n = self.len();
        CorrelationMatrix {
            geometry: self.geometry.clone(),
            sites: self.sites.clone(),
            data: linalg::identity::<T>(n) - &self.data,
            warnings: self.warnings.clone(),
        }
    }

    /// principal submatrix on the given sites
    pub fn restrict_sites(&self, sites: &[usize]) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::Invalid("empty region".into()));
        }
        let pos = sites.iter().map(|&s| self.position(s)).collect::<Result<Vec<_>>>()?;
        let data = CMat::from_fn(pos.len(), pos.len(), |a, b| self.data[(pos[a], pos[b])]);
        Ok(CorrelationMatrix { geometry: self.geometry.clone(), sites: sites.to_vec(), data, warnings: self.warnings.clone() })
    }
}

impl CorrelationMatrix<f64> {
    /// binary container with the lattice, site list and coordinates as metadata
    pub fn to_container(&self) -> Result<Container> {
        let meta = serde_json::json!({
            "geometry": self.geometry,
            "sites": self.sites,
            "coords": self.coords(),
        });
        Ok(Container::complex(self.len(), self.len(), |i, j| self.data[(i, j)], meta))
    }

    pub fn from_container(c: &Container) -> Result<Self> {
        if c.kind != Kind::Complex || c.rows != c.cols {
            return Err(Error::Invalid("container does not hold a square complex matrix".into()));
        }
        let geometry: LatticeGeometry = serde_json::from_value(c.meta["geometry"].clone())?;
        let sites: Vec<usize> = serde_json::from_value(c.meta["sites"].clone())?;
        let data = CMat::from_fn(c.rows, c.cols, |i, j| c.entry(i, j));
        CorrelationMatrix::new(geometry, sites, data)
    }
}

impl<T: Real> CorrelationSource<T> for CorrelationMatrix<T> {
    fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    fn entry(&self, i: usize, j: usize) -> Complex<T> {
        match (self.position(i), self.position(j)) {
            (Ok(a), Ok(b)) => self.data[(a, b)],
            _ => Complex::new(T::zero(), T::zero()),
        }
    }

    fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// eigen-decomposition using the real solver when C has no imaginary part
fn spectrum<T: Real>(c: &CMat<T>) -> Result<(Vec<T>, CMat<T>)> {
    let real = c.iter().all(|z| z.im.abs() <= T::eps() * T::c(4.0));
    if real {
        let r = RMat::from_fn(c.nrows(), c.ncols(), |i, j| (c[(i, j)].re + c[(j, i)].re) / T::c(2.0));
        let (w, v) = T::sym_eig(&r).ok_or(Error::Linalg("symmetric eigensolver"))?;
        return Ok((w, v.map(cx)));
    }
    let e = linalg::herm_eigen(c)?;
    Ok((e.values, e.vectors))
}

enum Orbitals<T: Real> {
    Real(RMat<T>),
    Complex(CMat<T>),
}

/// Slater determinant of the lowest single-particle orbitals of a dense Hamiltonian
pub struct DenseGroundState<T: Real> {
    geometry: LatticeGeometry,
    orbitals: Orbitals<T>,
    energies: Vec<T>,
    warnings: Vec<String>,
}

pub fn occupancy(n: usize, filling: f64) -> Result<usize> {
    if !(0.0..=1.0).contains(&filling) {
        return Err(Error::Invalid(format!("filling {filling} outside [0,1]")));
    }
    Ok((filling * n as f64).round() as usize)
}

impl<T: Real> DenseGroundState<T> {
    pub fn new(h: &QuadraticHamiltonian<T>, filling: f64) -> Result<Self> {
        let n = h.n_sites();
        let nocc = occupancy(n, filling)?;
        let mut warnings = vec![];
        let (energies, orbitals) = match h.dense_real() {
            Some(m) => {
                let (w, v) = T::sym_eig(&m).ok_or(Error::Linalg("symmetric eigensolver"))?;
                (w, Orbitals::Real(v.columns(0, nocc).into_owned()))
            }
            None => {
                let e = linalg::herm_eigen(&h.dense())?;
                (e.values, Orbitals::Complex(e.vectors.columns(0, nocc).into_owned()))
            }
        };
        if nocc > 0 && nocc < n && (energies[nocc] - energies[nocc - 1]).abs() <= T::tol(DEGENERACY_TOL) {
            let msg = format!(
                "degenerate Fermi level at {} for {}: shell filled in eigensolver order",
                energies[nocc - 1].f(),
                h.meta().name
            );
            log::warn!("{msg}");
            warnings.push(msg);
        }
        Ok(DenseGroundState { geometry: h.geometry().clone(), orbitals, energies, warnings })
    }

    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn occupied(&self) -> usize {
        match &self.orbitals {
            Orbitals::Real(v) => v.ncols(),
            Orbitals::Complex(v) => v.ncols(),
        }
    }

    pub fn to_matrix(&self) -> CorrelationMatrix<T> {
        let sites: Vec<usize> = (0..self.geometry.n_sites()).collect();
        let data = self.block(&sites);
        CorrelationMatrix::from_parts(self.geometry.clone(), sites, data, self.warnings.clone())
    }
}

impl<T: Real> CorrelationSource<T> for DenseGroundState<T> {
    fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    fn entry(&self, i: usize, j: usize) -> Complex<T> {
        match &self.orbitals {
            Orbitals::Real(v) => cx(v.row(i).dot(&v.row(j))),
            Orbitals::Complex(v) => (0..v.ncols()).fold(cx(T::zero()), |a, k| a + v[(i, k)].conj() * v[(j, k)]),
        }
    }

    fn block(&self, sites: &[usize]) -> CMat<T> {
        match &self.orbitals {
            Orbitals::Real(v) => {
                let sub = v.select_rows(sites);
                (&sub * sub.transpose()).map(cx)
            }
            Orbitals::Complex(v) => {
                let sub = v.select_rows(sites);
                sub.conjugate() * sub.transpose()
            }
        }
    }

    fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// ground-state C = sum over the lowest round(nu N) orbitals of psi psi^dagger
pub fn ground_state_correlation<T: Real>(h: &QuadraticHamiltonian<T>, filling: f64) -> Result<CorrelationMatrix<T>> {
    if let Some(b) = h.bloch() {
        return Ok(BlochGroundState::new(h.geometry(), b, filling)?.to_matrix());
    }
    Ok(DenseGroundState::new(h, filling)?.to_matrix())
}

/// single-particle Bloch eigenstate: energy, cell-momentum label, band index, cell-basis vector
#[derive(Clone, Debug)]
pub(crate) struct BlochState {
    pub energy: f64,
    pub cell: usize,
    pub band: usize,
    pub vector: Vec<Complex<f64>>,
}

pub(crate) struct BlochFilling {
    pub states: Vec<BlochState>,
    pub chosen: Vec<usize>,
    pub fermi_energy: f64,
    pub warnings: Vec<String>,
}

/// lowest round(nu N) Bloch states; a degenerate shell is filled in ascending momentum-label order
pub(crate) fn fill_bloch(model: &BlochModel, filling: f64) -> Result<BlochFilling> {
    let nc = model.n_cells();
    let nb = model.bands;
    let nocc = occupancy(nc * nb, filling)?;
    let mut states = Vec::with_capacity(nc * nb);
    for r in 0..nc {
        let k = model.momentum(&model.cell(r));
        let (w, v) = <f64 as Real>::herm_eig(&model.h_of_k(&k)).ok_or(Error::Linalg("Bloch eigensolver"))?;
        for (b, &e) in w.iter().enumerate() {
            states.push(BlochState { energy: e, cell: r, band: b, vector: v.column(b).iter().copied().collect() });
        }
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.cell.cmp(&b.cell)).then(a.band.cmp(&b.band)));
    let mut warnings = vec![];
    let mut chosen: Vec<usize> = (0..nocc).collect();
    let fermi_energy = if nocc > 0 { states[nocc - 1].energy } else { f64::NEG_INFINITY };
    if nocc > 0 && nocc < states.len() && (states[nocc].energy - fermi_energy).abs() <= DEGENERACY_TOL {
        let shell: Vec<usize> = (0..states.len()).filter(|&i| (states[i].energy - fermi_energy).abs() <= DEGENERACY_TOL).collect();
        let below = shell[0];
        let mut sorted = shell.clone();
        sorted.sort_by_key(|&i| (states[i].cell, states[i].band));
        chosen = (0..below).chain(sorted.into_iter().take(nocc - below)).collect();
        let msg = format!(
            "degenerate Fermi level at {fermi_energy:.12}: {} of {} shell states filled by ascending momentum label",
            nocc - below,
            shell.len()
        );
        log::warn!("{msg}");
        warnings.push(msg);
    }
    Ok(BlochFilling { states, chosen, fermi_energy, warnings })
}

/// translation-invariant ground state from Bloch Hamiltonians; degenerate shells filled in
/// ascending momentum-label order (lexicographic cell index, then band)
pub struct BlochGroundState<T: Real> {
    geometry: LatticeGeometry,
    model: BlochModel,
    /// table[(a * bands + b) * cells + delta]
    table: Vec<Complex<T>>,
    cell_of: Vec<usize>,
    band_of: Vec<usize>,
    occupied: usize,
    fermi_energy: f64,
    warnings: Vec<String>,
}

impl<T: Real> BlochGroundState<T> {
    pub fn new(geometry: &LatticeGeometry, model: &BlochModel, filling: f64) -> Result<Self> {
        let nc = model.n_cells();
        let nb = model.bands;
        if nc * nb != geometry.n_sites() {
            return Err(Error::Dimension("Bloch model does not tile the lattice".into()));
        }
        let filled = fill_bloch(model, filling)?;
        let (states, chosen, fermi_energy, warnings) = (filled.states, filled.chosen, filled.fermi_energy, filled.warnings);
        let nocc = chosen.len();
        let mut cell_of = vec![0; nc * nb];
        let mut band_of = vec![0; nc * nb];
        for r in 0..nc {
            for b in 0..nb {
                let s = model.site(geometry, &model.cell(r), b);
                cell_of[s] = r;
                band_of[s] = b;
            }
        }
        let dims = model.cells.clone();
        let mut acc = vec![Complex::new(0.0, 0.0); nb * nb * nc];
        let phases: Vec<Vec<Complex<f64>>> = dims
            .iter()
            .map(|&l| (0..l).map(|x| Complex::from_polar(1.0, std::f64::consts::TAU * x as f64 / l as f64)).collect())
            .collect();
        for &i in &chosen {
            let st = &states[i];
            let (r, u) = (st.cell, &st.vector);
            let m = model.cell(r);
            let phase: Vec<Complex<f64>> = (0..nc)
                .map(|d| {
                    let dc = model.cell(d);
                    (0..dims.len()).fold(Complex::new(1.0, 0.0), |p, a| p * phases[a][(m[a] * dc[a]) % dims[a]])
                })
                .collect();
            for a in 0..nb {
                for b in 0..nb {
                    let w = u[a].conj() * u[b];
                    if w.norm() == 0.0 {
                        continue;
                    }
                    let base = (a * nb + b) * nc;
                    for d in 0..nc {
                        acc[base + d] += w * phase[d];
                    }
                }
            }
        }
        let inv = 1.0 / nc as f64;
        let table = acc.into_iter().map(|z| Complex::new(T::c(z.re * inv), T::c(z.im * inv))).collect();
        Ok(BlochGroundState {
            geometry: geometry.clone(),
            model: model.clone(),
            table,
            cell_of,
            band_of,
            occupied: nocc,
            fermi_energy,
            warnings,
        })
    }

    pub fn from_hamiltonian(h: &QuadraticHamiltonian<T>, filling: f64) -> Result<Self> {
        let b = h.bloch().ok_or_else(|| Error::Invalid("Hamiltonian has no Bloch description".into()))?;
        BlochGroundState::new(h.geometry(), b, filling)
    }

    pub fn occupied(&self) -> usize {
        self.occupied
    }

    pub fn fermi_energy(&self) -> f64 {
        self.fermi_energy
    }

    pub fn to_matrix(&self) -> CorrelationMatrix<T> {
        let sites: Vec<usize> = (0..self.geometry.n_sites()).collect();
        let data = self.block(&sites);
        CorrelationMatrix::from_parts(self.geometry.clone(), sites, data, self.warnings.clone())
    }
}

impl<T: Real> CorrelationSource<T> for BlochGroundState<T> {
    fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    fn entry(&self, i: usize, j: usize) -> Complex<T> {
        let (ri, rj) = (self.model.cell(self.cell_of[i]), self.model.cell(self.cell_of[j]));
        let dims = &self.model.cells;
        let delta: Vec<usize> = (0..dims.len()).map(|d| (rj[d] + dims[d] - ri[d]) % dims[d]).collect();
        let di = delta.iter().zip(dims).fold(0, |a, (&x, &l)| a * l + x);
        let nb = self.model.bands;
        self.table[(self.band_of[i] * nb + self.band_of[j]) * self.model.n_cells() + di]
    }

    fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// principal block of C on a region of its lattice
pub fn restrict<T: Real, S: CorrelationSource<T> + ?Sized>(c: &S, region: &Region) -> Result<CorrelationMatrix<T>> {
    let sites = c.geometry().sites_in(region)?;
    let data = c.block(&sites);
    Ok(CorrelationMatrix::from_parts(c.geometry().clone(), sites, data, c.warnings().to_vec()))
}

/// restricted spectrum clipped to [0,1]; deviations beyond 1e-6 are errors
fn clipped_modes<T: Real>(ca: &CorrelationMatrix<T>) -> Result<(Vec<T>, CMat<T>)> {
    let (w, v) = spectrum(ca.matrix())?;
    let lim = T::tol(CLIP_LIMIT);
    let w = w
        .into_iter()
        .map(|x| {
            if x < -lim || x > T::one() + lim {
                Err(Error::Invalid(format!("occupation {} outside [0,1]", x.f())))
            } else {
                Ok(x.max(T::zero()).min(T::one()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((w, v))
}

/// sum_a |phi_a(x)|^2 (lambda_a (1 - lambda_a))^q
pub fn replicated_moment<T: Real>(ca: &CorrelationMatrix<T>, x: usize, q: f64) -> Result<T> {
    if q <= 0.0 {
        return Err(Error::Invalid("moment order must be positive".into()));
    }
    let p = ca.position(x)?;
    let (w, v) = clipped_modes(ca)?;
    let q = T::c(q);
    Ok(w.iter().enumerate().fold(T::zero(), |a, (k, &l)| {
        let g = l * (T::one() - l);
        if g <= T::zero() {
            a
        } else {
            a + v[(p, k)].norm_sqr() * g.powf(q)
        }
    }))
}

/// [sqrt(C_A (1 - C_A))]_{xx}, the Renyi-1 correlator of c_x (and of c_x^dagger)
pub fn gaussian_renyi1<T: Real>(ca: &CorrelationMatrix<T>, x: usize) -> Result<T> {
    replicated_moment(ca, x, 0.5)
}

/// sum over y outside A of |C(x, y)|^2
pub fn escape_integral<T: Real, S: CorrelationSource<T> + ?Sized>(c: &S, region: &Region, x: usize) -> Result<T> {
    let inside = c.geometry().sites_in(region)?;
    if !inside.contains(&x) {
        return Err(Error::Invalid("insertion site outside region".into()));
    }
    let n = c.geometry().n_sites();
    let mut mask = vec![false; n];
    inside.iter().for_each(|&s| mask[s] = true);
    Ok((0..n).filter(|&y| !mask[y]).fold(T::zero(), |a, y| a + c.entry(x, y).norm_sqr()))
}

/// R^1 at the centre of nested regions, one value per region, using one source
pub fn renyi1_series<T: Real, S: CorrelationSource<T> + ?Sized>(c: &S, regions: &[Region], x: usize) -> Result<Vec<T>> {
    regions.iter().map(|r| gaussian_renyi1(&restrict(c, r)?, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussfermi::geometry::Boundary;
    use crate::gaussfermi::hamiltonian::{fermi_chain_1d, goe_hamiltonian, pi_flux_2d, square_lattice_2d};

    fn uniform(nu: f64, n: usize) -> CorrelationMatrix<f64> {
        let g = LatticeGeometry::chain(n, Boundary::Open);
        CorrelationMatrix::new(g, (0..n).collect(), linalg::identity::<f64>(n) * cx(nu)).unwrap()
    }

    #[test]
    fn trivial_fillings() {
        let h = square_lattice_2d::<f64>(4, 4, true).unwrap();
        let c0 = ground_state_correlation(&h, 0.0).unwrap();
        assert!(linalg::max_abs(c0.matrix()) < 1e-15);
        let c1 = ground_state_correlation(&h, 1.0).unwrap();
        assert!(linalg::max_abs(&(c1.matrix() - linalg::identity::<f64>(16))) < 1e-12);
        assert!(ground_state_correlation(&h, 1.5).is_err());
    }

    #[test]
    fn uniform_occupation_formula() {
        let c = uniform(0.2, 5);
        assert!((gaussian_renyi1(&c, 2).unwrap() - 0.4).abs() < 1e-12);
        assert!((replicated_moment(&c, 2, 1.0).unwrap() - 0.16).abs() < 1e-12);
        let r = replicated_moment(&c, 3, 0.5).unwrap();
        assert!((r - gaussian_renyi1(&c, 3).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn projector_gives_zero() {
        let h = fermi_chain_1d::<f64>(12, true).unwrap();
        let c = ground_state_correlation(&h, 0.25).unwrap();
        assert!(gaussian_renyi1(&c, 4).unwrap() < 1e-7);
        let p = c.matrix() * c.matrix();
        assert!(linalg::max_abs(&(p - c.matrix())) < 1e-9);
    }

    #[test]
    fn chain_matches_sine_kernel() {
        let l = 2000;
        let nu = 0.3;
        let h = fermi_chain_1d::<f64>(l, true).unwrap();
        let g = BlochGroundState::from_hamiltonian(&h, nu).unwrap();
        let kf = std::f64::consts::PI * nu;
        for d in 1..100usize {
            let exact = (kf * d as f64).sin() / (std::f64::consts::PI * d as f64);
            assert!((g.entry(500, 500 + d).re - exact).abs() < 1e-3);
        }
        assert!((g.entry(7, 7).re - nu).abs() < 1e-12);
    }

    #[test]
    fn bloch_and_dense_agree() {
        for h in [pi_flux_2d::<f64>(8, 6, true).unwrap(), square_lattice_2d::<f64>(7, 5, true).unwrap()] {
            let b = BlochGroundState::from_hamiltonian(&h, 0.4).unwrap();
            let d = DenseGroundState::new(&h, 0.4).unwrap();
            if d.warnings().is_empty() && b.warnings().is_empty() {
                let diff = linalg::max_abs(&(b.to_matrix().matrix() - d.to_matrix().matrix()));
                assert!(diff < 1e-10, "{diff}");
            }
            let c = b.to_matrix();
            assert!(linalg::max_abs(&(c.matrix() * c.matrix() - c.matrix())) < 1e-9);
        }
    }

    #[test]
    fn degenerate_shell_recorded() {
        let h = square_lattice_2d::<f64>(8, 8, true).unwrap();
        let b = BlochGroundState::from_hamiltonian(&h, 0.3).unwrap();
        assert!(!b.warnings().is_empty());
        assert_eq!(b.occupied(), 19);
        let c = b.to_matrix();
        assert!(linalg::max_abs(&(c.matrix() * c.matrix() - c.matrix())) < 1e-9);
    }

    #[test]
    fn escape_integral_identities() {
        let h = fermi_chain_1d::<f64>(64, true).unwrap();
        let g = BlochGroundState::from_hamiltonian(&h, 0.25).unwrap();
        let all = Region::Interval { center: 32, left: 31, right: 32 };
        assert!(escape_integral(&g, &all, 32).unwrap() < 1e-15);
        let one = Region::Explicit(vec![32]);
        assert!((escape_integral(&g, &one, 32).unwrap() - 0.25 * 0.75).abs() < 1e-12);
        let a = Region::Interval { center: 32, left: 5, right: 5 };
        let ca = restrict(&g, &a).unwrap();
        let m = replicated_moment(&ca, 32, 1.0).unwrap();
        assert!((m - escape_integral(&g, &a, 32).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn goe_local_statistics() {
        let n = 500;
        let nu = 0.2;
        let h = goe_hamiltonian::<f64>(n, 1.0, 11).unwrap();
        let c = ground_state_correlation(&h, nu).unwrap();
        let m = c.matrix();
        let diag = (0..n).map(|i| m[(i, i)].re).sum::<f64>() / n as f64;
        assert!((diag - nu).abs() < 0.01);
        let off = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].norm_sqr()).sum::<f64>()
            / (n * (n - 1)) as f64;
        assert!((off / (nu / n as f64) - 1.0).abs() < 0.25, "{}", off * n as f64);
    }

    #[test]
    fn container_round_trip() {
        let h = square_lattice_2d::<f64>(6, 6, true).unwrap();
        let c = restrict(&BlochGroundState::from_hamiltonian(&h, 0.3).unwrap(), &Region::Disk { center: 14, radius: 2.0 }).unwrap();
        let mut buf = vec![];
        c.to_container().unwrap().write(&mut buf).unwrap();
        let back = CorrelationMatrix::from_container(&Container::read(&buf[..]).unwrap()).unwrap();
        assert_eq!(back.sites(), c.sites());
        assert_eq!(back.matrix(), c.matrix());
    }

    #[test]
    fn out_of_range_spectrum_rejected() {
        let g = LatticeGeometry::chain(2, Boundary::Open);
        assert!(CorrelationMatrix::<f64>::new(g, vec![0, 1], linalg::identity::<f64>(2) * cx(1.1)).is_err());
    }
}
