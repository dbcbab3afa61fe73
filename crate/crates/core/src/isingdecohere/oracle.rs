use std::collections::BTreeMap;

use crate::densemix::{apply_channel, make_pauli_channel, DensityMatrix, PauliKind, Register};
use crate::error::{Error, Result};
use crate::linalg::cx;
use crate::scalar::CMat;

use super::probs::XBasisDistribution;
use super::region::RegionGraph;

pub const DENSE_QUBIT_CAP: usize = 12;

/// in-place Walsh-Hadamard transform over one index of a square matrix
fn hadamard_rows(m: &mut CMat<f64>) {
    let d = m.nrows();
    let mut h = 1;
    while h < d {
        for i in (0..d).step_by(2 * h) {
            for j in i..i + h {
                for c in 0..m.ncols() {
                    let (a, b) = (m[(j, c)], m[(j + h, c)]);
                    m[(j, c)] = a + b;
                    m[(j + h, c)] = a - b;
                }
            }
        }
        h *= 2;
    }
}

/// X-basis diagonal of a dense state, re-indexed so that bit i of the result is the register's i-th site
fn xbasis_diagonal(rho: &DensityMatrix<f64>, keep: usize) -> Result<XBasisDistribution> {
    let n = rho.register().len();
    let mut m = rho.matrix().clone();
    hadamard_rows(&mut m);
    let mut t = m.transpose();
    hadamard_rows(&mut t);
    let scale = (1usize << n) as f64;
    let mut probs = vec![0.0; 1 << keep];
    for a in 0..(1usize << n) {
        let s = (0..keep).fold(0, |acc, i| acc | ((a >> (n - 1 - i) & 1) << i));
        probs[s] += t[(a, a)].re / scale;
    }
    XBasisDistribution::new(keep, probs)
}

fn plus_state(n: usize, sites: &[usize]) -> Result<DensityMatrix<f64>> {
    let d = 1usize << n;
    let psi = vec![cx(1.0 / (d as f64).sqrt()); d];
    DensityMatrix::pure(Register::qubit_sites(sites)?, &psi)
}

/// reduced-state construction with dense channels: ZZ on internal edges, Z for each boundary half-edge
pub fn dense_xbasis_probabilities(region: &RegionGraph, p: f64) -> Result<XBasisDistribution> {
    let n = region.len();
    if n > DENSE_QUBIT_CAP {
        return Err(Error::SizeCap(format!("dense channels limited to {DENSE_QUBIT_CAP} qubits")));
    }
    let sites: Vec<usize> = (0..n).collect();
    let rho = plus_state(n, &sites)?;
    let zz: Vec<Vec<usize>> = region.internal_edges().iter().map(|&(i, j)| vec![i, j]).collect();
    let z: Vec<Vec<usize>> = region.boundary_half_edges().iter().map(|&i| vec![i]).collect();
    let mut channels = make_pauli_channel(&zz, p, PauliKind::ZZ)?;
    channels.extend(make_pauli_channel(&z, p, PauliKind::Z)?);
    xbasis_diagonal(&apply_channel(&rho, &channels)?, n)
}

/// A together with its outside neighbours, ZZ decoherence on every edge touching A, then traced to A
pub fn embedded_xbasis_probabilities(region: &RegionGraph, p: f64) -> Result<XBasisDistribution> {
    let n = region.len();
    let mut outside: BTreeMap<[i64; 2], usize> = BTreeMap::new();
    let mut edges: Vec<Vec<usize>> = region.internal_edges().iter().map(|&(i, j)| vec![i, j]).collect();
    for (&i, o) in region.boundary_half_edges().iter().zip(region.outside_neighbours()) {
        let o = o.ok_or_else(|| Error::Invalid("embedding needs lattice coordinates".into()))?;
        let next = n + outside.len();
        edges.push(vec![i, *outside.entry(o).or_insert(next)]);
    }
    let total = n + outside.len();
    if total > DENSE_QUBIT_CAP {
        return Err(Error::SizeCap(format!("embedding needs {total} qubits, cap {DENSE_QUBIT_CAP}")));
    }
    let sites: Vec<usize> = (0..total).collect();
    let rho = apply_channel(&plus_state(total, &sites)?, &make_pauli_channel(&edges, p, PauliKind::ZZ)?)?;
    xbasis_diagonal(&rho.partial_trace(&sites[..n])?, n)
}
