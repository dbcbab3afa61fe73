use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    Periodic,
    Open,
}

/// hypercubic lattice with unit spacing; site index is row-major over the extents
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeGeometry {
    extents: Vec<usize>,
    boundary: Vec<Boundary>,
}

impl LatticeGeometry {
    pub fn new(extents: Vec<usize>, boundary: Vec<Boundary>) -> Result<Self> {
        if extents.is_empty() || extents.len() != boundary.len() {
            return Err(Error::Invalid("one boundary condition per extent required".into()));
        }
        if extents.iter().any(|&l| l == 0) {
            return Err(Error::Invalid("empty lattice direction".into()));
        }
        Ok(LatticeGeometry { extents, boundary })
    }

    pub fn uniform(extents: Vec<usize>, b: Boundary) -> Self {
        let n = extents.len();
        LatticeGeometry::new(extents, vec![b; n]).expect("nonempty extents")
    }

    pub fn chain(l: usize, b: Boundary) -> Self {
        LatticeGeometry::uniform(vec![l], b)
    }

    pub fn dimension(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn boundary(&self) -> &[Boundary] {
        &self.boundary
    }

    pub fn n_sites(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn cell(&self, mut i: usize) -> Vec<usize> {
        let mut c = vec![0; self.extents.len()];
        for d in (0..self.extents.len()).rev() {
            c[d] = i % self.extents[d];
            i /= self.extents[d];
        }
        c
    }

    pub fn coords(&self, i: usize) -> Vec<f64> {
        self.cell(i).into_iter().map(|x| x as f64).collect()
    }

    pub fn index(&self, c: &[usize]) -> usize {
        c.iter().zip(&self.extents).fold(0, |a, (&x, &l)| a * l + x)
    }

    /// index of a displaced site, wrapping periodic directions; None when it leaves an open edge
    pub fn shifted(&self, i: usize, shift: &[i64]) -> Option<usize> {
        let c = self.cell(i);
        let mut out = vec![0; c.len()];
        for d in 0..c.len() {
            let l = self.extents[d] as i64;
            let x = c[d] as i64 + shift.get(d).copied().unwrap_or(0);
            out[d] = match self.boundary[d] {
                Boundary::Periodic => x.rem_euclid(l) as usize,
                Boundary::Open if (0..l).contains(&x) => x as usize,
                Boundary::Open => return None,
            };
        }
        Some(self.index(&out))
    }

    /// displacement from i to j, minimum image along periodic directions
    pub fn displacement(&self, i: usize, j: usize) -> Vec<f64> {
        let (a, b) = (self.cell(i), self.cell(j));
        (0..a.len())
            .map(|d| {
                let mut x = b[d] as f64 - a[d] as f64;
                if self.boundary[d] == Boundary::Periodic {
                    let l = self.extents[d] as f64;
                    x -= l * (x / l).round();
                }
                x
            })
            .collect()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.displacement(i, j).iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// site closest to the geometric centre
    pub fn center(&self) -> usize {
        let c: Vec<usize> = self.extents.iter().map(|l| l / 2).collect();
        self.index(&c)
    }

    pub fn sites_in(&self, region: &Region) -> Result<Vec<usize>> {
        let n = self.n_sites();
        let sites: Vec<usize> = match region {
            Region::Interval { center, left, right } => {
                if self.dimension() != 1 {
                    return Err(Error::Invalid("intervals need a one-dimensional lattice".into()));
                }
                let mut v = vec![];
                for k in -(*left as i64)..=(*right as i64) {
                    if let Some(s) = self.shifted(*center, &[k]) {
                        v.push(s);
                    }
                }
                v.sort_unstable();
                v.dedup();
                v
            }
            Region::Disk { center, radius } => {
                (0..n).filter(|&j| self.distance(*center, j) <= radius + 1e-9).collect()
            }
            Region::HalfSpace { normal, offset } => {
                if normal.len() != self.dimension() {
                    return Err(Error::Dimension("half-space normal has wrong dimension".into()));
                }
                (0..n)
                    .filter(|&j| {
                        let x = self.coords(j);
                        x.iter().zip(normal).map(|(a, b)| a * b).sum::<f64>() >= *offset - 1e-9
                    })
                    .collect()
            }
            Region::Explicit(v) => {
                let mut v = v.clone();
                v.sort_unstable();
                v.dedup();
                if v.iter().any(|&s| s >= n) {
                    return Err(Error::Invalid("explicit region has sites outside the lattice".into()));
                }
                v
            }
        };
        if sites.is_empty() {
            return Err(Error::Invalid("empty region".into()));
        }
        Ok(sites)
    }
}

/// region predicates in lattice coordinates
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Region {
    /// sites center-left ..= center+right on a chain
    Interval { center: usize, left: usize, right: usize },
    /// sites within Euclidean (minimum-image) distance radius of center
    Disk { center: usize, radius: f64 },
    /// sites with normal . x >= offset in raw coordinates
    HalfSpace { normal: Vec<f64>, offset: f64 },
    Explicit(Vec<usize>),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimum_image() {
        let g = LatticeGeometry::uniform(vec![10, 10], Boundary::Periodic);
        let a = g.index(&[0, 0]);
        let b = g.index(&[9, 8]);
        assert!((g.distance(a, b) - 5f64.sqrt()).abs() < 1e-12);
        let o = LatticeGeometry::uniform(vec![10, 10], Boundary::Open);
        assert!((o.distance(a, b) - 145f64.sqrt()).abs() < 1e-12);
        assert_eq!(o.shifted(a, &[-1, 0]), None);
        assert_eq!(g.shifted(a, &[-1, 0]), Some(g.index(&[9, 0])));
    }

    #[test]
    fn regions() {
        let g = LatticeGeometry::uniform(vec![20, 20], Boundary::Periodic);
        let c = g.center();
        assert_eq!(g.sites_in(&Region::Disk { center: c, radius: 0.0 }).unwrap(), vec![c]);
        assert_eq!(g.sites_in(&Region::Disk { center: c, radius: 1.0 }).unwrap().len(), 5);
        assert_eq!(g.sites_in(&Region::Disk { center: c, radius: 2.0 }).unwrap().len(), 13);
        let chain = LatticeGeometry::chain(30, Boundary::Periodic);
        assert_eq!(chain.sites_in(&Region::Interval { center: 0, left: 2, right: 3 }).unwrap(), vec![0, 1, 2, 3, 28, 29]);
        assert!(g.sites_in(&Region::Explicit(vec![])).is_err());
        let h = g.sites_in(&Region::HalfSpace { normal: vec![1.0, 0.0], offset: 15.0 }).unwrap();
        assert_eq!(h.len(), 100);
    }
}
