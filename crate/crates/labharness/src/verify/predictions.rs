//! closed forms and fits

use rand::Rng;
use swssb_core::densemix::random::{gaussian, rng};
use swssb_core::gaussfermi::{fermi_chain_1d, renyi1_series, BlochGroundState, Region};
use swssb_core::predictions::{
    chiral_halfline, circular_fermi_momentum, cft_renyi1_zero_t, cft_renyi2n_interval, cft_thermal_limit, disk_d, fit_plateau,
    fit_power_law, halfline_full, halfspace, midpoint_1d, Beta, CftParams,
};
use swssb_core::{ScalingSeries, SeriesMeta};

use super::Options;
use crate::error::HarnessResult;
use crate::report::Check;

const M: &str = "predictions";

pub fn suite(opts: &Options) -> HarnessResult<Vec<Check>> {
    let mut out = cft_consistency(100, opts.seed)?;
    out.extend(examples()?);
    out.push(monotone()?);
    out.extend(synthetic_fits(opts.seed)?);
    out.push(fit_unbiased(100, opts.seed)?);
    out.push(chain_series_exponent()?);
    Ok(out)
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

/// zero-temperature limit, large finite beta, and the long-interval thermal value over random draws
pub fn cft_consistency(draws: usize, seed: u64) -> HarnessResult<Vec<Check>> {
    let mut r = rng(seed ^ 0xcf7);
    let (mut zero_t, mut finite, mut thermal) = (0f64, 0f64, 0f64);
    for _ in 0..draws {
        let u = r.random_range(-50.0..0.0);
        let x = u + r.random_range(0.5..50.0);
        let v = x + r.random_range(0.5..50.0);
        let delta = r.random_range(0.1..2.0);
        let limit = cft_renyi1_zero_t(x - u, v - x, delta)?;
        let inf = cft_renyi2n_interval(&CftParams::new(u, x, v, Beta::Infinite, delta, 0.5)?)?;
        let big = cft_renyi2n_interval(&CftParams::new(u, x, v, Beta::Finite(1e6 * (v - u)), delta, 0.5)?)?;
        zero_t = zero_t.max(rel(inf, limit));
        finite = finite.max(rel(big, limit));
        let beta = r.random_range(0.5..10.0);
        let wide = cft_renyi2n_interval(&CftParams::symmetric(40.0 * beta, Beta::Finite(beta), delta, 0.5)?)?;
        thermal = thermal.max(rel(wide, cft_thermal_limit(beta, delta)));
    }
    Ok(vec![
        Check::at_most(M, "cft_zero_temperature_limit", zero_t, 1e-6).with_instances(draws),
        Check::at_most(M, "cft_large_beta", finite, 1e-6).with_instances(draws),
        Check::at_most(M, "cft_thermal_limit", thermal, 1e-6).with_instances(draws),
    ])
}

fn examples() -> HarnessResult<Vec<Check>> {
    let cft = cft_renyi2n_interval(&CftParams::new(0.0, 10.0, 20.0, Beta::Infinite, 0.5, 0.5)?)?;
    let kf = circular_fermi_momentum(0.1);
    let disk = disk_d(7.0, std::f64::consts::TAU * kf, 2);
    Ok(vec![
        Check::close(M, "cft_interval_example", cft, 0.1, 1e-12),
        Check::close(M, "cft_anisotropic_example", cft_renyi1_zero_t(10.0, 30.0, 0.5)?, 1.0 / 15.0, 1e-12),
        Check::close(M, "midpoint_example", midpoint_1d(50.0), 1.0 / (50.0 * std::f64::consts::PI), 1e-15),
        Check::close(M, "two_chiral_branches", 2.0 * chiral_halfline(13.0), halfline_full(13.0), 1e-15),
        Check::close(M, "circular_disk_example", disk, kf / (std::f64::consts::TAU * 7.0), 1e-15),
    ])
}

fn monotone() -> HarnessResult<Check> {
    let ells: Vec<f64> = (1..=200).map(|i| 0.5 * i as f64).collect();
    let fns: Vec<Box<dyn Fn(f64) -> swssb_core::Result<f64>>> = vec![
        Box::new(|l| Ok(chiral_halfline(l))),
        Box::new(|l| Ok(halfline_full(l))),
        Box::new(|l| Ok(midpoint_1d(l))),
        Box::new(|l| Ok(disk_d(l, 3.0, 2))),
        Box::new(|l| Ok(halfspace(l, 2.0, 2))),
        Box::new(|l| cft_renyi1_zero_t(l, 2.0 * l, 0.7)),
        Box::new(|l| cft_renyi2n_interval(&CftParams::symmetric(l, Beta::Infinite, 0.5, 0.5)?)),
        Box::new(|l| cft_renyi2n_interval(&CftParams::symmetric(l, Beta::Finite(20.0), 0.5, 1.0)?)),
    ];
    let mut ok = true;
    for f in &fns {
        let v = ells.iter().map(|&l| f(l)).collect::<swssb_core::Result<Vec<_>>>()?;
        ok &= v.windows(2).all(|w| w[1] < w[0]);
    }
    Ok(Check::flag(M, "predictions_strictly_decreasing", ok, "eight closed forms on l = 0.5 .. 100").with_instances(fns.len()))
}

fn synthetic_fits(seed: u64) -> HarnessResult<Vec<Check>> {
    let ell: Vec<f64> = (2..=40).map(f64::from).collect();
    let y: Vec<f64> = ell.iter().map(|l| 3.0 / (l * l)).collect();
    let f = fit_power_law(&ScalingSeries::from_values(ell.clone(), y)?, (2.0, 40.0))?;
    let mut r = rng(seed ^ 0x91a7);
    let flat: Vec<f64> = ell.iter().map(|_| 0.4 + 0.001 * gaussian::<f64>(&mut r)).collect();
    let p = fit_plateau(&ScalingSeries::from_values(ell.clone(), flat)?, (2.0, 40.0))?;
    Ok(vec![
        Check::close(M, "synthetic_power_law_exponent", f.exponent, 2.0, 1e-6),
        Check::close(M, "synthetic_power_law_prefactor", f.prefactor, 3.0, 1e-6),
        Check::close(M, "synthetic_plateau", p.prefactor, 0.4, 0.001),
    ])
}

/// mean fitted exponent over noisy realizations, in units of its standard error
pub fn fit_unbiased(realizations: usize, seed: u64) -> HarnessResult<Check> {
    let truth = 1.5;
    let sigma = 0.02;
    let ell: Vec<f64> = (5..=60).step_by(5).map(f64::from).collect();
    let mut est = Vec::with_capacity(realizations);
    for i in 0..realizations {
        let mut r = rng(seed.wrapping_add(0x5eed + i as u64));
        let clean: Vec<f64> = ell.iter().map(|l| 2.0 * l.powf(-truth)).collect();
        let values: Vec<f64> = clean.iter().map(|c| c * (1.0 + sigma * gaussian::<f64>(&mut r))).collect();
        let err: Vec<f64> = clean.iter().map(|c| c * sigma).collect();
        let s = ScalingSeries::new(ell.clone(), values, err, SeriesMeta::default())?;
        est.push(fit_power_law(&s, (5.0, 60.0))?.exponent);
    }
    let (mean, se) = swssb_core::series::mean_stderr(&est);
    Ok(Check::at_most(M, "fit_unbiased", (mean - truth).abs() / se, 3.0)
        .with_instances(realizations)
        .detail(format!("mean exponent {mean:.5} +- {se:.5}")))
}

/// R^1 on the L = 2000 chain at nu = 0.25 over l = 20 .. 100
pub fn chain_series_exponent() -> HarnessResult<Check> {
    let l = 2000;
    let h = fermi_chain_1d::<f64>(l, true)?;
    let g = BlochGroundState::from_hamiltonian(&h, 0.25)?;
    let x = l / 2;
    let ells: Vec<usize> = (20..=100).step_by(10).collect();
    let regions: Vec<Region> = ells.iter().map(|&k| Region::Interval { center: x, left: k, right: k }).collect();
    let v = renyi1_series(&g, &regions, x)?;
    let s = ScalingSeries::from_values(ells.iter().map(|&k| k as f64).collect(), v)?;
    let f = fit_power_law(&s, (20.0, 100.0))?;
    Ok(Check::close(M, "chain_series_exponent", f.exponent, 1.0, 0.05))
}
