use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::hamiltonian::BlochModel;

/// band energies on a periodic n^d momentum grid, k_i = -pi + 2 pi (i + 1/2) / n per axis
#[derive(Clone, Debug)]
pub struct DispersionGrid {
    n: usize,
    dim: usize,
    bands: usize,
    /// momentum units per axis, converting grid momenta to inverse lattice spacings
    scale: Vec<f64>,
    /// energies[b * n^d + flat index], row-major in the axes
    energies: Vec<f64>,
}

impl DispersionGrid {
    pub fn from_fn(n: usize, dim: usize, bands: usize, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        if n < 2 || !(1..=2).contains(&dim) || bands == 0 {
            return Err(Error::Invalid("dispersion grid needs n >= 2, d in {1, 2}, at least one band".into()));
        }
        let total = n.pow(dim as u32);
        let mut energies = vec![0.0; bands * total];
        for i in 0..total {
            let k = Self::momentum_of(n, dim, i);
            let e = f(&k);
            if e.len() != bands {
                return Err(Error::Dimension("band count mismatch".into()));
            }
            for (b, v) in e.into_iter().enumerate() {
                energies[b * total + i] = v;
            }
        }
        Ok(DispersionGrid { n, dim, bands, scale: vec![1.0; dim], energies })
    }

    /// epsilon(k) = |k|^2 over the zone [-pi, pi)^d
    pub fn quadratic(n: usize, dim: usize) -> Result<Self> {
        Self::from_fn(n, dim, 1, |k| vec![k.iter().map(|x| x * x).sum()])
    }

    /// nearest-neighbour hypercubic band -sum_a cos k_a
    pub fn cosine(n: usize, dim: usize) -> Result<Self> {
        Self::from_fn(n, dim, 1, |k| vec![-k.iter().map(|x| x.cos()).sum::<f64>()])
    }

    /// bands of a Bloch model; grid momenta are per unit cell and rescaled by the cell size
    pub fn from_bloch(model: &BlochModel, n: usize) -> Result<Self> {
        let dim = model.cells.len();
        let mut g = Self::from_fn(n, dim, model.bands, |k| {
            let (w, _) = <f64 as Real>::herm_eig(&model.h_of_k(k)).expect("Bloch eigensolver");
            w
        })?;
        g.scale = model.cell_scale.iter().map(|&s| 1.0 / s as f64).collect();
        Ok(g)
    }

    fn momentum_of(n: usize, dim: usize, mut i: usize) -> Vec<f64> {
        let mut k = vec![0.0; dim];
        for a in (0..dim).rev() {
            k[a] = -PI + TAU * ((i % n) as f64 + 0.5) / n as f64;
            i /= n;
        }
        k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bands(&self) -> usize {
        self.bands
    }

    fn value(&self, band: usize, idx: &[usize]) -> f64 {
        let flat = idx.iter().fold(0, |a, &i| a * self.n + i % self.n);
        self.energies[band * self.n.pow(self.dim as u32) + flat]
    }

    /// mu halfway between the last occupied and first empty grid energies
    pub fn chemical_potential(&self, filling: f64) -> Result<f64> {
        if !(filling > 0.0 && filling < 1.0) {
            return Err(Error::Invalid(format!("filling {filling} outside (0,1)")));
        }
        let mut e = self.energies.clone();
        e.sort_by(f64::total_cmp);
        let m = ((filling * e.len() as f64).round() as usize).clamp(1, e.len() - 1);
        Ok(0.5 * (e[m - 1] + e[m]))
    }

    /// level-set segments of epsilon = mu in lattice momentum units (d = 2)
    pub fn contour(&self, mu: f64) -> Result<Vec<[[f64; 2]; 2]>> {
        if self.dim != 2 {
            return Err(Error::Dimension("contours need a two-dimensional grid".into()));
        }
        let n = self.n;
        let h = TAU / n as f64;
        let mut segs = vec![];
        for b in 0..self.bands {
            for i in 0..n {
                for j in 0..n {
                    let corner = |di: usize, dj: usize| self.value(b, &[i + di, j + dj]) - mu;
                    // corners counterclockwise: (0,0) (1,0) (1,1) (0,1)
                    let v = [corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)];
                    let p = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
                    let code = v.iter().enumerate().fold(0, |c, (q, &x)| c | (usize::from(x >= 0.0) << q));
                    if code == 0 || code == 15 {
                        continue;
                    }
                    let cross = |e: usize| {
                        let (a, c) = (e, (e + 1) % 4);
                        let t = v[a] / (v[a] - v[c]);
                        [p[a][0] + t * (p[c][0] - p[a][0]), p[a][1] + t * (p[c][1] - p[a][1])]
                    };
                    let edges: Vec<usize> = (0..4).filter(|&e| (v[e] >= 0.0) != (v[(e + 1) % 4] >= 0.0)).collect();
                    let pairs: Vec<(usize, usize)> = if edges.len() == 2 {
                        vec![(edges[0], edges[1])]
                    } else {
                        let centre = v.iter().sum::<f64>() / 4.0;
                        if (centre >= 0.0) == (v[0] >= 0.0) {
                            vec![(1, 2), (3, 0)]
                        } else {
                            vec![(0, 1), (2, 3)]
                        }
                    };
                    let k0 = [-PI + (i as f64 + 0.5) * h, -PI + (j as f64 + 0.5) * h];
                    for (e1, e2) in pairs {
                        let (a, c) = (cross(e1), cross(e2));
                        let map = |q: [f64; 2]| [(k0[0] + q[0] * h) * self.scale[0], (k0[1] + q[1] * h) * self.scale[1]];
                        segs.push([map(a), map(c)]);
                    }
                }
            }
        }
        Ok(segs)
    }

    fn crossings_1d(&self, mu: f64) -> usize {
        (0..self.bands)
            .map(|b| (0..self.n).filter(|&i| (self.value(b, &[i]) >= mu) != (self.value(b, &[i + 1]) >= mu)).count())
            .sum()
    }
}

/// (d-1)-measure of the Fermi surface at filling nu: contour length for d = 2, point count for d = 1
pub fn fermi_surface_area(grid: &DispersionGrid, filling: f64) -> Result<f64> {
    let mu = grid.chemical_potential(filling)?;
    if grid.dim() == 1 {
        return Ok(grid.crossings_1d(mu) as f64);
    }
    Ok(grid.contour(mu)?.iter().map(|[a, b]| ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()).sum())
}

/// integral over the Fermi surface of |v_hat . n_hat| for a unit normal n in the plane
pub fn fermi_surface_projection(grid: &DispersionGrid, filling: f64, normal: [f64; 2]) -> Result<f64> {
    let mu = grid.chemical_potential(filling)?;
    let norm = normal[0].hypot(normal[1]);
    if norm == 0.0 {
        return Err(Error::Invalid("zero normal".into()));
    }
    let t = [-normal[1] / norm, normal[0] / norm];
    Ok(grid.contour(mu)?.iter().map(|[a, b]| ((b[0] - a[0]) * t[0] + (b[1] - a[1]) * t[1]).abs()).sum())
}
