use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::region::RegionGraph;

pub const ISING_ENUMERATION_CAP: usize = 20;

/// local fields and couplings of H_A = sum_<ij> eta_i eta_j + sum_(boundary half-edges) eta_i
struct IsingGraph {
    neighbours: Vec<Vec<usize>>,
    field: Vec<i64>,
}

impl IsingGraph {
    fn new(region: &RegionGraph) -> Self {
        let mut neighbours = vec![vec![]; region.len()];
        for &(i, j) in region.internal_edges() {
            neighbours[i].push(j);
            neighbours[j].push(i);
        }
        let field = region.field_counts().into_iter().map(|c| c as i64).collect();
        IsingGraph { neighbours, field }
    }

    fn energy(&self, region: &RegionGraph, spins: usize) -> i64 {
        let eta = |i: usize| if spins >> i & 1 == 0 { 1i64 } else { -1 };
        let bonds: i64 = region.internal_edges().iter().map(|&(i, j)| eta(i) * eta(j)).sum();
        bonds + (0..region.len()).map(|i| self.field[i] * eta(i)).sum::<i64>()
    }
}

/// thermal weights exp(coupling * H_A) over all spin configurations, normalised; bit i set means eta_i = -1
pub fn ising_weights(region: &RegionGraph, coupling: f64) -> Result<Vec<f64>> {
    let n = region.len();
    if n > ISING_ENUMERATION_CAP {
        return Err(Error::SizeCap(format!("Ising enumeration limited to {ISING_ENUMERATION_CAP} spins, got {n}")));
    }
    let g = IsingGraph::new(region);
    let top = g.energy(region, 0) as f64;
    let mut w: Vec<f64> = (0..1usize << n).map(|s| (coupling * (g.energy(region, s) as f64 - top)).exp()).collect();
    let z: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= z);
    Ok(w)
}

/// <eta_x> under exp(2K H_A), by enumeration
pub fn ising_magnetization_exact(region: &RegionGraph, k: f64, x: usize) -> Result<f64> {
    if x >= region.len() {
        return Err(Error::UnknownSite(x));
    }
    if k.is_infinite() && k > 0.0 {
        return Ok(if region.boundary_half_edges().is_empty() { 0.0 } else { 1.0 });
    }
    let w = ising_weights(region, 2.0 * k)?;
    Ok(w.iter().enumerate().map(|(s, q)| if s >> x & 1 == 0 { *q } else { -q }).sum())
}

/// Metropolis schedule: thermalisation and measurement sweeps, batch count for error bars
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McSchedule {
    pub thermalization: usize,
    pub measurement: usize,
    pub batches: usize,
}

impl Default for McSchedule {
    fn default() -> Self {
        McSchedule { thermalization: 1_000, measurement: 10_000, batches: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub seed: u64,
    /// false when the batch-means error exceeds the requested tolerance
    pub converged: bool,
    /// eta_x after each measurement sweep
    pub trace: Vec<i8>,
}

impl McEstimate {
    /// sweep, eta_x with seed metadata in a comment line
    pub fn write_trace_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "# seed={}", self.seed)?;
        writeln!(w, "sweep,eta_x")?;
        for (i, e) in self.trace.iter().enumerate() {
            writeln!(w, "{i},{e}")?;
        }
        Ok(())
    }
}

/// single-spin Metropolis estimate of <eta_x> under exp(2K H_A), starting from the all-up state
pub fn ising_magnetization_mc(
    region: &RegionGraph,
    k: f64,
    x: usize,
    schedule: McSchedule,
    seed: u64,
    tolerance: Option<f64>,
) -> Result<McEstimate> {
    let n = region.len();
    if x >= n {
        return Err(Error::UnknownSite(x));
    }
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::Invalid("coupling must be finite and nonnegative".into()));
    }
    if schedule.batches < 2 || schedule.measurement < schedule.batches {
        return Err(Error::Invalid("need at least two batches with one sweep each".into()));
    }
    let g = IsingGraph::new(region);
    let mut eta = vec![1i64; n];
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let sweep = |eta: &mut Vec<i64>, r: &mut ChaCha8Rng| {
        for i in 0..n {
            let h: i64 = g.neighbours[i].iter().map(|&j| eta[j]).sum::<i64>() + g.field[i];
            let de = 2 * eta[i] * h;
            if de <= 0 || r.random::<f64>() < (-2.0 * k * de as f64).exp() {
                eta[i] = -eta[i];
            }
        }
    };
    for _ in 0..schedule.thermalization {
        sweep(&mut eta, &mut r);
    }
    let mut trace = Vec::with_capacity(schedule.measurement);
    for _ in 0..schedule.measurement {
        sweep(&mut eta, &mut r);
        trace.push(eta[x] as i8);
    }
    let per = schedule.measurement / schedule.batches;
    let means: Vec<f64> = (0..schedule.batches)
        .map(|b| trace[b * per..(b + 1) * per].iter().map(|&e| e as f64).sum::<f64>() / per as f64)
        .collect();
    let nb = means.len() as f64;
    let mean = means.iter().sum::<f64>() / nb;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (nb - 1.0);
    let stderr = (var / nb).sqrt();
    let converged = tolerance.is_none_or(|t| stderr <= t);
    if !converged {
        log::warn!("Metropolis estimate unconverged: stderr {stderr:.3e} above tolerance");
    }
    Ok(McEstimate { mean, stderr, seed, converged, trace })
}
