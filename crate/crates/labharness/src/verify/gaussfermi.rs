//! free-fermion invariants

use std::f64::consts::{PI, TAU};

use swssb_core::densemix::random::{random_hermitian, rng};
use swssb_core::densemix::renyi_one_point;
use swssb_core::gaussfermi::hamiltonian::plaquette_fluxes;
use swssb_core::gaussfermi::{
    anderson_2d, dense_oracle, escape_integral, fermi_chain_1d, fermi_surface_area, fermi_surface_projection, gaussian_renyi1,
    goe_hamiltonian, ground_state_correlation, jw_annihilation, pi_flux_2d, renyi1_series, replicated_moment, restrict,
    square_lattice_2d, strip_renyi1, BlochGroundState, Boundary, CorrelationSource, DenseGroundState, DispersionGrid,
    LatticeGeometry, Region,
};
use swssb_core::linalg::{self, cx};
use swssb_core::predictions::{disk_d, midpoint_1d};
use swssb_core::CorrelationMatrix;

use super::Options;
use crate::error::HarnessResult;
use crate::report::Check;

const M: &str = "gaussfermi";

pub fn suite(opts: &Options) -> HarnessResult<Vec<Check>> {
    let mut out = vec![dense_oracle_agreement(20, opts.seed)?, particle_hole_random(20, opts.seed)?];
    out.extend(chain_checks()?);
    out.extend(square_checks()?);
    out.extend(goe_checks(opts.seed)?);
    out.extend(fermi_surface_checks()?);
    out.push(model_identities()?);
    out.push(half_space_prefactor()?);
    Ok(out)
}

/// C = U diag(lambda) U^dagger with lambda uniform in (0, 1) on six sites
pub fn random_correlation(n: usize, seed: u64) -> HarnessResult<CorrelationMatrix> {
    let mut r = rng(seed);
    let e = linalg::herm_eigen(&random_hermitian::<f64>(n, &mut r))?;
    let lam: Vec<_> = (0..n).map(|_| cx(rand::Rng::random::<f64>(&mut r))).collect();
    let c = &e.vectors * linalg::diag(&lam) * e.vectors.adjoint();
    Ok(CorrelationMatrix::new(LatticeGeometry::chain(n, Boundary::Open), (0..n).collect(), linalg::hermitize(&c))?)
}

/// largest |dense many-body R^1 - gaussian R^1| over every site of `count` random six-site states
pub fn dense_oracle_agreement(count: usize, seed: u64) -> HarnessResult<Check> {
    let mut worst: f64 = 0.0;
    for i in 0..count {
        let c = random_correlation(6, seed.wrapping_add(i as u64))?;
        let rho = dense_oracle(&c)?;
        for x in 0..6 {
            let op = jw_annihilation(rho.register(), x)?;
            worst = worst.max((renyi_one_point(&rho, &op, 1.0)? - gaussian_renyi1(&c, x)?).abs());
        }
    }
    Ok(Check::at_most(M, "dense_oracle_renyi1", worst, 1e-8).with_instances(count))
}

/// |R^1(C) - R^1(1 - C)| on random six-site states with occupations spread over (0, 1)
pub fn particle_hole_random(count: usize, seed: u64) -> HarnessResult<Check> {
    let mut worst: f64 = 0.0;
    for i in 0..count {
        let c = random_correlation(6, seed.wrapping_add(0x9e + i as u64))?;
        let ph = c.particle_hole();
        for x in 0..6 {
            worst = worst.max((gaussian_renyi1(&c, x)? - gaussian_renyi1(&ph, x)?).abs());
        }
    }
    Ok(Check::at_most(M, "particle_hole", worst, 1e-12).with_instances(count))
}

fn max_rise(v: &[f64]) -> f64 {
    v.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max)
}

fn chain_checks() -> HarnessResult<Vec<Check>> {
    let l = 2000;
    let h = fermi_chain_1d::<f64>(l, true)?;
    let x = l / 2;
    let mut out = vec![];

    let nu = 0.3;
    let g = BlochGroundState::from_hamiltonian(&h, nu)?;
    let kf = PI * nu;
    let mut dev: f64 = 0.0;
    for r in 0..100usize {
        let exact = if r == 0 { nu } else { (kf * r as f64).sin() / (PI * r as f64) };
        dev = dev.max((g.entry(x, x + r).re - exact).abs());
    }
    out.push(Check::at_most(M, "sine_kernel", dev, 1e-3).with_instances(100));

    let regions: Vec<Region> = (0..=40).map(|k| Region::Interval { center: x, left: k, right: k }).collect();
    let series = renyi1_series(&g, &regions, x)?;
    out.push(Check::at_most(M, "restriction_monotone_interval", max_rise(&series), 1e-9).with_instances(regions.len()));

    let mut proj: f64 = 0.0;
    let mut ph: f64 = 0.0;
    for r in regions.iter().step_by(5) {
        let ca = restrict(&g, r)?;
        proj = proj.max((replicated_moment(&ca, x, 1.0)? - escape_integral(&g, r, x)?).abs());
        ph = ph.max((gaussian_renyi1(&ca, x)? - gaussian_renyi1(&ca.particle_hole(), x)?).abs());
    }
    out.push(Check::at_most(M, "projector_identity_interval", proj, 1e-9));
    out.push(Check::at_most(M, "particle_hole_chain", ph, 1e-7).detail("occupations within 1e-16 of 0 or 1 enter through a square root"));

    let nu = 0.25;
    let g = BlochGroundState::from_hamiltonian(&h, nu)?;
    let one = escape_integral(&g, &Region::Explicit(vec![x]), x)?;
    out.push(Check::close(M, "single_site_escape", one, nu - nu * nu, 1e-12));
    let ca = restrict(&g, &Region::Interval { center: x, left: 50, right: 50 })?;
    let v = gaussian_renyi1(&ca, x)?;
    out.push(Check::at_most(M, "midpoint_chain_l50", (v / midpoint_1d(50.0) - 1.0).abs(), 0.05).detail(format!("R1 = {v:.6e}")));
    Ok(out)
}

/// R^1 l (2 pi)^2 / Area(FS) on disks of a periodic square lattice
pub fn disk_prefactor_ratios(side: usize, nu: f64, ells: &[usize]) -> HarnessResult<Vec<f64>> {
    let h = square_lattice_2d::<f64>(side, side, true)?;
    let g = BlochGroundState::from_hamiltonian(&h, nu)?;
    let area = fermi_surface_area(&DispersionGrid::cosine(512, 2)?, nu)?;
    let x = h.geometry().center();
    ells.iter()
        .map(|&l| {
            let v = gaussian_renyi1(&restrict(&g, &Region::Disk { center: x, radius: l as f64 })?, x)?;
            Ok(v / disk_d(l as f64, area, 2))
        })
        .collect()
}

fn square_checks() -> HarnessResult<Vec<Check>> {
    let h = square_lattice_2d::<f64>(40, 40, true)?;
    let g = BlochGroundState::from_hamiltonian(&h, 0.3)?;
    let x = h.geometry().center();
    let regions: Vec<Region> = (0..=8).map(|k| Region::Disk { center: x, radius: k as f64 }).collect();
    let series = renyi1_series(&g, &regions, x)?;
    let mut proj: f64 = 0.0;
    for r in &regions {
        proj = proj.max((replicated_moment(&restrict(&g, r)?, x, 1.0)? - escape_integral(&g, r, x)?).abs());
    }
    let ratios = disk_prefactor_ratios(60, 0.2, &[8, 12])?;
    let worst = ratios.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
    Ok(vec![
        Check::at_most(M, "restriction_monotone_disk", max_rise(&series), 1e-9).with_instances(regions.len()),
        Check::at_most(M, "projector_identity_disk", proj, 1e-9).with_instances(regions.len()),
        Check::at_most(M, "disk_prefactor_light", worst, 0.1).detail(format!("60x60, nu = 0.2, ratios {ratios:.4?}")),
    ])
}

/// sup |F_emp - F_semicircle| of a GOE spectrum of radius 2J
pub fn semicircle_distance(energies: &[f64], j: f64) -> f64 {
    let r = 2.0 * j;
    let cdf = |x: f64| {
        let x = x.clamp(-r, r);
        0.5 + x * (r * r - x * x).sqrt() / (PI * r * r) + (x / r).asin() / PI
    };
    let mut e = energies.to_vec();
    e.sort_by(f64::total_cmp);
    let n = e.len() as f64;
    e.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

fn goe_checks(seed: u64) -> HarnessResult<Vec<Check>> {
    let h = goe_hamiltonian::<f64>(1000, 1.0, seed.wrapping_add(17))?;
    let ks = semicircle_distance(DenseGroundState::new(&h, 0.5)?.energies(), 1.0);

    let n = 500;
    let nu = 0.2;
    let c = ground_state_correlation(&goe_hamiltonian::<f64>(n, 1.0, seed.wrapping_add(11))?, nu)?;
    let m = c.matrix();
    let diag = (0..n).map(|i| m[(i, i)].re).sum::<f64>() / n as f64;
    let mut off = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off += m[(i, j)].norm_sqr();
            }
        }
    }
    off /= (n * (n - 1)) as f64;
    let target = nu * (1.0 - nu) / (n - 1) as f64;
    Ok(vec![
        Check::at_most(M, "goe_semicircle_cdf", ks, 0.05).detail("N = 1000, Kolmogorov distance"),
        Check::close(M, "goe_mean_occupation", diag, nu, 0.01),
        Check::at_most(M, "goe_offdiagonal_weight", (off / target - 1.0).abs(), 0.05)
            .detail(format!("mean |C_xy|^2 = {off:.4e}, nu(1-nu)/(N-1) = {target:.4e}")),
    ])
}

fn fermi_surface_checks() -> HarnessResult<Vec<Check>> {
    let q = DispersionGrid::quadratic(512, 2)?;
    let mut worst: f64 = 0.0;
    for nu in [0.05, 0.1, 0.2] {
        let kf = 2.0 * (PI * nu).sqrt();
        worst = worst.max((fermi_surface_area(&q, nu)? / (TAU * kf) - 1.0).abs());
    }
    let c = DispersionGrid::cosine(512, 2)?;
    let diamond = fermi_surface_area(&c, 0.5)?;
    Ok(vec![
        Check::at_most(M, "fermi_surface_circle", worst, 0.02).with_instances(3),
        Check::at_most(M, "fermi_surface_diamond", (diamond / (4.0 * 2f64.sqrt() * PI) - 1.0).abs(), 0.01),
    ])
}

fn model_identities() -> HarnessResult<Check> {
    let a = anderson_2d::<f64>(8, 0.0, 3)?;
    let s = square_lattice_2d::<f64>(8, 8, true)?;
    let same = linalg::max_abs(&(a.dense() - s.dense())) < 1e-15;
    let fluxes = plaquette_fluxes(&pi_flux_2d::<f64>(8, 8, true)?);
    let flux_ok = !fluxes.is_empty() && fluxes.iter().all(|f| (f - cx(-1.0)).norm() < 1e-12);
    Ok(Check::flag(M, "model_identities", same && flux_ok, format!("clean anderson = square: {same}, pi flux on every plaquette: {flux_ok}")))
}

/// R^1 l against (1/4 pi) int dS |v.x| / 2 pi on a half-plane of a square-lattice metal
pub fn half_space_ratios() -> HarnessResult<Vec<(usize, f64)>> {
    let nu = 0.2;
    let h = square_lattice_2d::<f64>(240, 160, true)?;
    let bloch = h.bloch().ok_or_else(|| crate::HarnessError::Config("square lattice without a Bloch form".into()))?;
    let probes: Vec<(usize, usize)> = (10..=16).map(|l| (l, 0)).collect();
    let s = strip_renyi1(bloch, nu, 0, 120, &probes)?;
    let proj = fermi_surface_projection(&DispersionGrid::cosine(512, 2)?, nu, [1.0, 0.0])?;
    let pred = swssb_core::predictions::halfspace(1.0, proj, 2);
    Ok(probes.iter().zip(&s.values).map(|(&(l, _), v)| (l, v * l as f64 / pred)).collect())
}

fn half_space_prefactor() -> HarnessResult<Check> {
    let r = half_space_ratios()?;
    let worst = r.iter().map(|(_, x)| (x - 1.0).abs()).fold(0.0, f64::max);
    Ok(Check::at_most(M, "half_space_prefactor", worst, 0.1).with_instances(r.len()))
}
