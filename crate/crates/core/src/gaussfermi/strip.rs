use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{CMat, Real};

use super::correlation::fill_bloch;
use super::hamiltonian::BlochModel;

/// R^1 inside a strip `width` cells thick along `axis` and periodic along the other axis of a
/// two-dimensional Bloch ground state; the restricted C splits into one block per transverse momentum
#[derive(Clone, Debug)]
pub struct StripRenyi {
    /// probe values, in the order of the requested (depth, band) pairs
    pub values: Vec<f64>,
    pub warnings: Vec<String>,
}

pub fn strip_renyi1(model: &BlochModel, filling: f64, axis: usize, width: usize, probes: &[(usize, usize)]) -> Result<StripRenyi> {
    if model.cells.len() != 2 || axis > 1 {
        return Err(Error::Dimension("strip evaluator needs a two-dimensional model".into()));
    }
    let na = model.cells[axis];
    let nt = model.cells[1 - axis];
    let nb = model.bands;
    if width == 0 || width >= na {
        return Err(Error::Invalid("strip width must lie in [1, N)".into()));
    }
    if probes.iter().any(|&(r, b)| r >= width || b >= nb) {
        return Err(Error::Invalid("probe outside strip".into()));
    }
    let filled = fill_bloch(model, filling)?;
    let mut by_t: Vec<Vec<usize>> = vec![vec![]; nt];
    for &i in &filled.chosen {
        let m = model.cell(filled.states[i].cell);
        by_t[m[1 - axis]].push(i);
    }
    let phase: Vec<Complex<f64>> = (0..na).map(|x| Complex::from_polar(1.0, std::f64::consts::TAU * x as f64 / na as f64)).collect();
    let dim = width * nb;
    let mut values = vec![0.0; probes.len()];
    for group in &by_t {
        if group.is_empty() {
            continue;
        }
        let mut table = vec![Complex::new(0.0, 0.0); nb * nb * na];
        for &i in group {
            let st = &filled.states[i];
            let ma = model.cell(st.cell)[axis];
            for a in 0..nb {
                for b in 0..nb {
                    let w = st.vector[a].conj() * st.vector[b];
                    let base = (a * nb + b) * na;
                    for d in 0..na {
                        table[base + d] += w * phase[(ma * d) % na];
                    }
                }
            }
        }
        let block = CMat::from_fn(dim, dim, |p, q| {
            let (r, a) = (p / nb, p % nb);
            let (s, b) = (q / nb, q % nb);
            table[(a * nb + b) * na + (s + na - r) % na] / na as f64
        });
        let (w, v) = <f64 as Real>::herm_eig(&block).ok_or(Error::Linalg("strip block eigensolver"))?;
        let g: Vec<f64> = w.iter().map(|&l| {
            let l = l.clamp(0.0, 1.0);
            (l * (1.0 - l)).sqrt()
        }).collect();
        for (out, &(r, b)) in values.iter_mut().zip(probes) {
            let p = r * nb + b;
            *out += (0..dim).map(|k| v[(p, k)].norm_sqr() * g[k]).sum::<f64>() / nt as f64;
        }
    }
    Ok(StripRenyi { values, warnings: filled.warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussfermi::correlation::{gaussian_renyi1, restrict, BlochGroundState};
    use crate::gaussfermi::fermi_surface::{fermi_surface_projection, DispersionGrid};
    use crate::gaussfermi::geometry::Region;
    use crate::gaussfermi::hamiltonian::{pi_flux_2d, square_lattice_2d};

    #[test]
    fn matches_direct_restriction() {
        for h in [square_lattice_2d::<f64>(14, 6, true).unwrap(), pi_flux_2d::<f64>(12, 6, true).unwrap()] {
            let model = h.bloch().unwrap();
            let g = BlochGroundState::from_hamiltonian(&h, 0.3).unwrap();
            let width = 4;
            let geom = h.geometry();
            let sites: Vec<usize> = (0..geom.n_sites()).filter(|&s| (geom.cell(s)[0] / model.cell_scale[0]) < width).collect();
            let ca = restrict(&g, &Region::Explicit(sites)).unwrap();
            let probes: Vec<(usize, usize)> = (0..width).flat_map(|r| (0..model.bands).map(move |b| (r, b))).collect();
            let s = strip_renyi1(model, 0.3, 0, width, &probes).unwrap();
            for (&(r, b), v) in probes.iter().zip(&s.values) {
                let site = model.site(geom, &[r, 2], b);
                let direct = gaussian_renyi1(&ca, site).unwrap();
                assert!((direct - v).abs() < 1e-7, "{direct} {v}");
            }
        }
    }

    #[test]
    fn half_plane_prefactor() {
        let nu = 0.2;
        let h = square_lattice_2d::<f64>(240, 160, true).unwrap();
        let probes: Vec<(usize, usize)> = (10..=16).map(|l| (l, 0)).collect();
        let s = strip_renyi1(h.bloch().unwrap(), nu, 0, 120, &probes).unwrap();
        let grid = DispersionGrid::cosine(512, 2).unwrap();
        let proj = fermi_surface_projection(&grid, nu, [1.0, 0.0]).unwrap();
        let pred = proj / (4.0 * std::f64::consts::PI) / std::f64::consts::TAU;
        for (&(l, _), v) in probes.iter().zip(&s.values) {
            let ratio = v * l as f64 / pred;
            assert!((ratio - 1.0).abs() < 0.1, "l={l}: {ratio}");
        }
    }
}
