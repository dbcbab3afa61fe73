use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// region A of a square lattice: sites, internal edges and boundary half-edges to the complement
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionGraph {
    coords: Vec<[i64; 2]>,
    internal: Vec<(usize, usize)>,
    /// one entry per half-edge; a corner site of a rectangle appears twice
    boundary: Vec<usize>,
    /// outside neighbour reached by each half-edge, when embedded in the plane
    outside: Vec<Option<[i64; 2]>>,
}

const STEPS: [[i64; 2]; 4] = [[1, 0], [-1, 0], [0, 1], [0, -1]];

impl RegionGraph {
    /// A given by explicit coordinates in the infinite square lattice
    pub fn from_sites(coords: Vec<[i64; 2]>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Invalid("empty region".into()));
        }
        let index: BTreeMap<[i64; 2], usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        if index.len() != coords.len() {
            return Err(Error::Invalid("duplicate coordinates".into()));
        }
        let mut internal = vec![];
        let mut boundary = vec![];
        let mut outside = vec![];
        for (i, c) in coords.iter().enumerate() {
            for s in STEPS {
                let n = [c[0] + s[0], c[1] + s[1]];
                match index.get(&n) {
                    Some(&j) if j > i => internal.push((i, j)),
                    Some(_) => {}
                    None => {
                        boundary.push(i);
                        outside.push(Some(n));
                    }
                }
            }
        }
        Ok(RegionGraph { coords, internal, boundary, outside })
    }

    /// w x h rectangle with corner at the origin, row-major (x fastest)
    pub fn rectangle(w: usize, h: usize) -> Result<Self> {
        if w == 0 || h == 0 {
            return Err(Error::Invalid("empty rectangle".into()));
        }
        let coords = (0..h).flat_map(|y| (0..w).map(move |x| [x as i64, y as i64])).collect();
        Self::from_sites(coords)
    }

    /// all sites of a periodic w x h torus: every edge internal, no boundary
    pub fn torus(w: usize, h: usize) -> Result<Self> {
        if w < 3 || h < 3 {
            return Err(Error::Invalid("torus sides must be at least 3".into()));
        }
        let coords: Vec<[i64; 2]> = (0..h).flat_map(|y| (0..w).map(move |x| [x as i64, y as i64])).collect();
        let mut internal = vec![];
        for y in 0..h {
            for x in 0..w {
                let i = y * w + x;
                internal.push((i, y * w + (x + 1) % w));
                internal.push((i, ((y + 1) % h) * w + x));
            }
        }
        Ok(RegionGraph { coords, internal, boundary: vec![], outside: vec![] })
    }

    /// general graph; boundary half-edges listed by site, one entry each
    pub fn explicit(n: usize, internal: Vec<(usize, usize)>, boundary: Vec<usize>) -> Result<Self> {
        if n == 0 || internal.iter().any(|&(i, j)| i >= n || j >= n || i == j) || boundary.iter().any(|&i| i >= n) {
            return Err(Error::Invalid("inconsistent region graph".into()));
        }
        let outside = vec![None; boundary.len()];
        Ok(RegionGraph { coords: (0..n as i64).map(|i| [i, 0]).collect(), internal, boundary, outside })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[[i64; 2]] {
        &self.coords
    }

    pub fn internal_edges(&self) -> &[(usize, usize)] {
        &self.internal
    }

    pub fn boundary_half_edges(&self) -> &[usize] {
        &self.boundary
    }

    pub fn outside_neighbours(&self) -> &[Option<[i64; 2]>] {
        &self.outside
    }

    /// number of boundary half-edges at each site
    pub fn field_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.len()];
        self.boundary.iter().for_each(|&i| c[i] += 1);
        c
    }

    /// site closest to the centroid; ties go to the lowest index
    pub fn central_site(&self) -> usize {
        let n = self.len() as f64;
        let cx = self.coords.iter().map(|c| c[0] as f64).sum::<f64>() / n;
        let cy = self.coords.iter().map(|c| c[1] as f64).sum::<f64>() / n;
        let d = |c: &[i64; 2]| (c[0] as f64 - cx).powi(2) + (c[1] as f64 - cy).powi(2);
        (0..self.len()).fold(0, |b, i| if d(&self.coords[i]) < d(&self.coords[b]) - 1e-12 { i } else { b })
    }

    /// lattice distance from site x to the nearest outside neighbour
    pub fn distance_to_complement(&self, x: usize) -> Option<f64> {
        let c = self.coords[x];
        self.outside
            .iter()
            .flatten()
            .map(|o| (((o[0] - c[0]).pow(2) + (o[1] - c[1]).pow(2)) as f64).sqrt())
            .min_by(f64::total_cmp)
    }
}
