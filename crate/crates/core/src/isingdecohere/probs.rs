use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::region::RegionGraph;

pub const FLIP_SPACE_CAP: usize = 22;
const NORM_TOL: f64 = 1e-12;

/// probabilities p_s of X-basis strings; bit i of the index is s_i, 0 for |+>
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XBasisDistribution {
    sites: usize,
    probs: Vec<f64>,
}

impl XBasisDistribution {
    pub fn new(sites: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1usize << sites {
            return Err(Error::Dimension("distribution length must be 2^sites".into()));
        }
        if let Some(&m) = probs.iter().find(|&&q| q < 0.0) {
            return Err(Error::NotPositive(m));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::Trace(total));
        }
        Ok(XBasisDistribution { sites, probs })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total_variation(&self, other: &XBasisDistribution) -> Result<f64> {
        if self.sites != other.sites {
            return Err(Error::Dimension("distributions on different regions".into()));
        }
        Ok(0.5 * self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).sum::<f64>())
    }

    /// weight on odd-parity strings
    pub fn odd_weight(&self) -> f64 {
        self.probs.iter().enumerate().filter(|(s, _)| s.count_ones() % 2 == 1).map(|(_, q)| q).sum()
    }

    /// bitstring (site 0 first), probability
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "bitstring,probability")?;
        for (s, q) in self.probs.iter().enumerate() {
            let bits: String = (0..self.sites).map(|i| if s >> i & 1 == 1 { '1' } else { '0' }).collect();
            writeln!(w, "{bits},{q:.17e}")?;
        }
        Ok(())
    }
}

fn mix(p: &mut [f64], mask: usize, rate: f64) {
    for s in 0..p.len() {
        let t = s ^ mask;
        if s < t {
            let (a, b) = (p[s], p[t]);
            p[s] = (1.0 - rate) * a + rate * b;
            p[t] = (1.0 - rate) * b + rate * a;
        }
    }
}

/// exact p_s of the decohered paramagnet reduced to A: ZZ flips on internal edges, Z flips per boundary half-edge
pub fn xbasis_probabilities(region: &RegionGraph, p: f64) -> Result<XBasisDistribution> {
    let n = region.len();
    if n > FLIP_SPACE_CAP {
        return Err(Error::SizeCap(format!("flip space limited to {FLIP_SPACE_CAP} sites, got {n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Invalid(format!("error rate {p} outside [0,1]")));
    }
    let mut probs = vec![0.0; 1 << n];
    probs[0] = 1.0;
    for &(i, j) in region.internal_edges() {
        mix(&mut probs, (1 << i) | (1 << j), p);
    }
    for &i in region.boundary_half_edges() {
        mix(&mut probs, 1 << i, p);
    }
    Ok(XBasisDistribution { sites: n, probs })
}

fn check_site(d: &XBasisDistribution, x: usize) -> Result<usize> {
    if x >= d.sites {
        return Err(Error::UnknownSite(x));
    }
    Ok(1 << x)
}

/// sum_s sqrt(p_s p_{s + e_x}), the fidelity correlator of Z_x on the diagonal state
pub fn fidelity_from_probs(d: &XBasisDistribution, x: usize) -> Result<f64> {
    let m = check_site(d, x)?;
    Ok(d.probs.iter().enumerate().map(|(s, &q)| (q * d.probs[s ^ m]).sqrt()).sum())
}

/// sum_s p_s^k p_{s + e_x}^k / sum_s p_s^{2k}
pub fn renyi2k_from_probs(d: &XBasisDistribution, x: usize, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::Invalid("replica index k must be at least 1".into()));
    }
    let m = check_site(d, x)?;
    let k = k as i32;
    let num: f64 = d.probs.iter().enumerate().map(|(s, &q)| q.powi(k) * d.probs[s ^ m].powi(k)).sum();
    let den: f64 = d.probs.iter().map(|q| q.powi(2 * k)).sum();
    Ok(num / den)
}

/// Renyi-1 correlator of the diagonal state, sum_s p_s^{1/2} p_{s+e}^{1/2} / sum_s p_s
pub fn renyi1_from_probs(d: &XBasisDistribution, x: usize) -> Result<f64> {
    let total: f64 = d.probs.iter().sum();
    Ok(fidelity_from_probs(d, x)? / total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_rates() {
        let r = RegionGraph::rectangle(3, 2).unwrap();
        let d0 = xbasis_probabilities(&r, 0.0).unwrap();
        assert_eq!(d0.probs()[0], 1.0);
        assert_eq!(fidelity_from_probs(&d0, 2).unwrap(), 0.0);
        assert_eq!(renyi2k_from_probs(&d0, 2, 2).unwrap(), 0.0);
        let d = xbasis_probabilities(&r, 0.5).unwrap();
        assert!(d.probs().iter().all(|&q| (q - 1.0 / 64.0).abs() < 1e-15));
        assert!((fidelity_from_probs(&d, 1).unwrap() - 1.0).abs() < 1e-12);
        assert!((renyi2k_from_probs(&d, 1, 3).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalised_and_rated() {
        let r = RegionGraph::rectangle(3, 3).unwrap();
        let lo = xbasis_probabilities(&r, 0.05).unwrap();
        let hi = xbasis_probabilities(&r, 0.3).unwrap();
        assert!(XBasisDistribution::new(9, hi.probs().to_vec()).is_ok());
        let (a, b) = (fidelity_from_probs(&lo, 4).unwrap(), fidelity_from_probs(&hi, 4).unwrap());
        assert!(b > a);
        assert!((a - 0.591_433_636_626_580).abs() < 1e-12, "{a:.17}");
        assert!((b - 0.999_646_277_419_334).abs() < 1e-12, "{b:.17}");
    }

    #[test]
    fn torus_keeps_parity() {
        let t = RegionGraph::torus(3, 3).unwrap();
        let d = xbasis_probabilities(&t, 0.2).unwrap();
        assert!(d.odd_weight() < 1e-15);
        assert_eq!(fidelity_from_probs(&d, 4).unwrap(), 0.0);
    }

    #[test]
    fn size_cap_and_csv() {
        assert!(xbasis_probabilities(&RegionGraph::rectangle(5, 5).unwrap(), 0.1).is_err());
        let d = xbasis_probabilities(&RegionGraph::rectangle(2, 1).unwrap(), 0.1).unwrap();
        let mut buf = vec![];
        d.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().nth(2).unwrap().starts_with("10,"));
    }
}
