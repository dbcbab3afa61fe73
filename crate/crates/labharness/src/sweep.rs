//! covering sweeps: one estimate per region size, averaged over seeds

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use swssb_core::densemix::models::{paramagnet_gibbs, paramagnet_sector, transverse_field_chain};
use swssb_core::densemix::{gibbs_state, lfc_one_point, renyi_one_point, Register};
use swssb_core::gaussfermi::{
    anderson_2d, escape_integral, fermi_chain_1d, fermi_surface_area, gaussian_renyi1, goe_hamiltonian, pi_flux_2d, restrict,
    square_lattice_2d, strip_renyi1, BlochGroundState, CorrelationSource, DenseGroundState, DispersionGrid, Region,
};
use swssb_core::isingdecohere::{
    fidelity_from_probs, ising_magnetization_mc, nishimori_params, renyi2k_from_probs, xbasis_probabilities, McSchedule,
    RegionGraph,
};
use swssb_core::predictions::{disk_d, fit_plateau, fit_power_law, midpoint_1d, FitMethod, FitResult};
use swssb_core::series::mean_stderr;
use swssb_core::{DensityMatrix, LocalOperator, QuadraticHamiltonian, ScalingSeries, SeriesMeta};

use crate::config::{Estimator, ExperimentConfig, Growth, ModelSpec, Overlay, RegionFamily};
use crate::error::{HarnessError, HarnessResult};

/// grid used for Fermi-surface areas in overlays
const FS_GRID: usize = 512;
/// absolute slack on top of the statistical tolerance of the monotonicity check
const MONOTONE_SLACK: f64 = 1e-9;

/// a step along the covering where a non-increasing estimator grew beyond 3 standard errors
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub ell_from: f64,
    pub ell_to: f64,
    pub increase: f64,
    pub tolerance: f64,
    pub message: String,
}

/// everything a sweep produces; serialized as the JSON record
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub config: ExperimentConfig,
    pub series: ScalingSeries,
    pub fit: Option<FitResult>,
    /// whether the fitted exponent falls in the expected scaling class
    pub fit_accepted: Option<bool>,
    pub diagnostics: Vec<Diagnostic>,
    pub warnings: Vec<String>,
    /// (ell, value) of the analytic overlay
    pub overlay: Option<Vec<(f64, f64)>>,
}

impl SweepRecord {
    /// no monotonicity diagnostics and the fit, if any, in its class
    pub fn passed(&self) -> bool {
        self.diagnostics.is_empty() && self.fit_accepted != Some(false)
    }
}

/// worker count from SWSSB_JOBS, else the number of available cores
pub fn default_jobs() -> usize {
    std::env::var("SWSSB_JOBS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// run a config on `jobs` workers; the result is bit-identical for every worker count
pub fn covering_sweep(cfg: &ExperimentConfig, jobs: usize) -> HarnessResult<SweepRecord> {
    cfg.validate()?;
    swssb_core::linalg::sequential_kernels();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    pool.install(|| run(cfg))
}

fn run(cfg: &ExperimentConfig) -> HarnessResult<SweepRecord> {
    let ell = cfg.ell.values();
    let seeds = cfg.seed_list();
    if !cfg.model.is_disordered() && !cfg.estimator.is_stochastic() && cfg.seeds.realizations > 1 {
        log::warn!("{}: deterministic estimator, {} realizations collapse to one", cfg.name, cfg.seeds.realizations);
    }
    let per_seed: Vec<HarnessResult<(Vec<f64>, Vec<String>)>> = seeds.par_iter().map(|&s| evaluate(cfg, &ell, s)).collect();
    let mut samples = Vec::with_capacity(seeds.len());
    let mut warnings = vec![];
    for r in per_seed {
        let (v, w) = r?;
        samples.push(v);
        for m in w {
            if !warnings.contains(&m) {
                warnings.push(m);
            }
        }
    }
    let mut values = Vec::with_capacity(ell.len());
    let mut stderr = Vec::with_capacity(ell.len());
    for i in 0..ell.len() {
        let xs: Vec<f64> = samples.iter().map(|s| s[i]).collect();
        let (m, e) = mean_stderr(&xs);
        values.push(m);
        stderr.push(e);
    }
    let meta = SeriesMeta {
        model: cfg.model.id().into(),
        estimator: cfg.estimator.id().into(),
        seeds: seeds.clone(),
        realizations: seeds.len(),
        params: Default::default(),
        timestamp: None,
        notes: vec![format!("region={}", cfg.region.id())],
    };
    let series = ScalingSeries::new(ell, values, stderr, meta)?;
    let diagnostics = if cfg.estimator.monotone() { monotonicity(&series) } else { vec![] };
    for d in &diagnostics {
        log::warn!("{}: {}", cfg.name, d.message);
    }
    let fit = match &cfg.fit {
        Some(f) => Some(match f.method {
            FitMethod::LogLogLeastSquares => fit_power_law(&series, f.window)?,
            FitMethod::PlateauMean => fit_plateau(&series, f.window)?,
        }),
        None => None,
    };
    let fit_accepted = match (&cfg.fit, &fit) {
        (Some(spec), Some(r)) => spec.expect.map(|c| c.accepts(r.exponent)),
        _ => None,
    };
    let overlay = match &cfg.output.overlay {
        Some(o) => Some(overlay_points(cfg, o, &series, fit.as_ref())?),
        None => None,
    };
    Ok(SweepRecord { config: cfg.clone(), series, fit, fit_accepted, diagnostics, warnings, overlay })
}

/// non-increase within 3 combined standard errors between consecutive sizes
pub fn monotonicity(s: &ScalingSeries) -> Vec<Diagnostic> {
    let mut out = vec![];
    for i in 1..s.len() {
        let rise = s.values[i] - s.values[i - 1];
        let tol = 3.0 * (s.stderr[i].powi(2) + s.stderr[i - 1].powi(2)).sqrt() + MONOTONE_SLACK;
        if rise > tol {
            out.push(Diagnostic {
                ell_from: s.ell[i - 1],
                ell_to: s.ell[i],
                increase: rise,
                tolerance: tol,
                message: format!(
                    "estimator increased by {rise:.3e} from ell={} to ell={} (tolerance {tol:.3e})",
                    s.ell[i - 1],
                    s.ell[i]
                ),
            });
        }
    }
    out
}

fn evaluate(cfg: &ExperimentConfig, ell: &[f64], seed: u64) -> HarnessResult<(Vec<f64>, Vec<String>)> {
    match &cfg.model {
        ModelSpec::ThermalParamagnet { .. } | ModelSpec::TransverseFieldGibbs { .. } => Ok((dense_values(cfg, ell)?, vec![])),
        ModelSpec::DecoheredIsing { p } => Ok((ising_values(cfg, *p, ell, seed)?, vec![])),
        _ => gaussian_values(cfg, ell, seed),
    }
}

pub fn dense_state(model: &ModelSpec) -> HarnessResult<DensityMatrix> {
    Ok(match *model {
        ModelSpec::ThermalParamagnet { sites, beta, projected: false } => paramagnet_gibbs(sites, beta),
        ModelSpec::ThermalParamagnet { sites, beta, projected: true } => paramagnet_sector(sites, beta),
        ModelSpec::TransverseFieldGibbs { sites, coupling, field, beta } => {
            gibbs_state(Register::qubits(sites), &transverse_field_chain(sites, coupling, field), beta)?
        }
        _ => return Err(HarnessError::Config(format!("{} is not a dense model", model.id()))),
    })
}

fn interval_bounds(growth: Growth, l: usize) -> (usize, usize) {
    match growth {
        Growth::Symmetric => (l, l),
        Growth::LeftFirst => (l + 1, l),
    }
}

fn dense_values(cfg: &ExperimentConfig, ell: &[f64]) -> HarnessResult<Vec<f64>> {
    let rho = dense_state(&cfg.model)?;
    let n = rho.register().len();
    let RegionFamily::Interval { center, growth } = cfg.region else {
        return Err(HarnessError::Config("dense models use interval regions".into()));
    };
    let x = center.unwrap_or(n / 2);
    if x >= n {
        return Err(HarnessError::Config(format!("insertion {x} outside the {n}-site chain")));
    }
    let op = LocalOperator::pauli(x, 'Z');
    ell.par_iter()
        .map(|&l| {
            let (left, right) = interval_bounds(growth, l as usize);
            if left > x || x + right >= n {
                return Err(HarnessError::Config(format!("interval of size {l} leaves the {n}-site chain")));
            }
            let sites: Vec<usize> = (x - left..=x + right).collect();
            let ra = rho.partial_trace(&sites)?;
            Ok(match cfg.estimator {
                Estimator::Fidelity => lfc_one_point(&ra, &op)?,
                Estimator::Renyi { alpha } => renyi_one_point(&ra, &op, alpha)?,
                _ => unreachable!("validated estimator class"),
            })
        })
        .collect()
}

fn ising_values(cfg: &ExperimentConfig, p: f64, ell: &[f64], seed: u64) -> HarnessResult<Vec<f64>> {
    let RegionFamily::Rectangle { height } = cfg.region else {
        return Err(HarnessError::Config("the decohered Ising model uses rectangle regions".into()));
    };
    ell.par_iter()
        .map(|&l| {
            let w = 2 * l as usize + 1;
            let region = RegionGraph::rectangle(w, height.unwrap_or(w))?;
            let x = region.central_site();
            Ok(match cfg.estimator {
                Estimator::IsingFidelity => fidelity_from_probs(&xbasis_probabilities(&region, p)?, x)?,
                Estimator::IsingRenyi2k { k } => renyi2k_from_probs(&xbasis_probabilities(&region, p)?, x, k)?,
                Estimator::IsingMagnetization { thermalization, measurement } => {
                    let d = McSchedule::default();
                    let schedule = McSchedule {
                        thermalization: thermalization.unwrap_or(d.thermalization),
                        measurement: measurement.unwrap_or(d.measurement),
                        batches: d.batches,
                    };
                    let k = match p {
                        0.0 => 0.0,
                        0.5 => f64::INFINITY,
                        _ => nishimori_params(p)?.k,
                    };
                    if k.is_infinite() {
                        1.0
                    } else {
                        ising_magnetization_mc(&region, k, x, schedule, seed, None)?.mean
                    }
                }
                _ => unreachable!("validated estimator class"),
            })
        })
        .collect()
}

pub fn hamiltonian(model: &ModelSpec, seed: u64) -> HarnessResult<QuadraticHamiltonian> {
    Ok(match *model {
        ModelSpec::FermiChain { length, periodic, .. } => fermi_chain_1d(length, periodic)?,
        ModelSpec::SquareLattice { lx, ly, .. } => square_lattice_2d(lx, ly, true)?,
        ModelSpec::PiFlux { lx, ly, .. } => pi_flux_2d(lx, ly, true)?,
        ModelSpec::Anderson { length, disorder, .. } => anderson_2d(length, disorder, seed)?,
        ModelSpec::Goe { size, coupling, .. } => goe_hamiltonian(size, coupling, seed)?,
        _ => return Err(HarnessError::Config(format!("{} is not a Gaussian model", model.id()))),
    })
}

fn filling(model: &ModelSpec) -> f64 {
    match *model {
        ModelSpec::FermiChain { filling, .. }
        | ModelSpec::SquareLattice { filling, .. }
        | ModelSpec::PiFlux { filling, .. }
        | ModelSpec::Anderson { filling, .. }
        | ModelSpec::Goe { filling, .. } => filling,
        _ => f64::NAN,
    }
}

/// correlations of the ground state, by Bloch tables when the model is translation invariant
pub fn ground_state(h: &QuadraticHamiltonian, nu: f64) -> HarnessResult<Box<dyn CorrelationSource<f64>>> {
    Ok(match h.bloch() {
        Some(_) => Box::new(BlochGroundState::from_hamiltonian(h, nu)?),
        None => Box::new(DenseGroundState::new(h, nu)?),
    })
}

fn gaussian_values(cfg: &ExperimentConfig, ell: &[f64], seed: u64) -> HarnessResult<(Vec<f64>, Vec<String>)> {
    let h = hamiltonian(&cfg.model, seed)?;
    let nu = filling(&cfg.model);
    if let RegionFamily::HalfSpace { axis, width, band } = cfg.region {
        let model = h.bloch().ok_or_else(|| HarnessError::Config("half-space sweeps need a Bloch model".into()))?;
        let probes: Vec<(usize, usize)> = ell.iter().map(|&l| (l as usize, band)).collect();
        let r = strip_renyi1(model, nu, axis, width, &probes)?;
        return Ok((r.values, r.warnings));
    }
    let src = ground_state(&h, nu)?;
    let geom = src.geometry().clone();
    let values = ell
        .par_iter()
        .map(|&l| {
            let (region, x) = match cfg.region {
                RegionFamily::Interval { center, growth } => {
                    let x = center.unwrap_or_else(|| geom.center());
                    let (left, right) = interval_bounds(growth, l as usize);
                    (Region::Interval { center: x, left, right }, x)
                }
                RegionFamily::Disk { center } => {
                    let x = center.unwrap_or_else(|| geom.center());
                    (Region::Disk { center: x, radius: l }, x)
                }
                _ => (Region::Explicit(vec![geom.center()]), geom.center()),
            };
            if x >= geom.n_sites() {
                return Err(HarnessError::Config(format!("insertion {x} outside the lattice")));
            }
            Ok(match cfg.estimator {
                Estimator::GaussianRenyi1 => gaussian_renyi1(&restrict(src.as_ref(), &region)?, x)?,
                Estimator::EscapeIntegral => escape_integral(src.as_ref(), &region, x)?,
                Estimator::CorrelationAbs => {
                    let mut shift = vec![0i64; geom.dimension()];
                    shift[0] = l as i64;
                    let y = geom
                        .shifted(x, &shift)
                        .ok_or_else(|| HarnessError::Config(format!("distance {l} leaves the lattice")))?;
                    src.entry(x, y).norm()
                }
                _ => unreachable!("validated estimator class"),
            })
        })
        .collect::<HarnessResult<Vec<f64>>>()?;
    Ok((values, src.warnings().to_vec()))
}

/// Fermi-surface length of a translation-invariant model, from the marching contour
pub fn model_fermi_surface_area(model: &ModelSpec) -> HarnessResult<f64> {
    let h = hamiltonian(model, 0)?;
    let b = h.bloch().ok_or_else(|| HarnessError::Config(format!("{} has no Bloch form", model.id())))?;
    let grid = DispersionGrid::from_bloch(b, FS_GRID)?;
    Ok(fermi_surface_area(&grid, filling(model))?)
}

fn overlay_points(cfg: &ExperimentConfig, o: &Overlay, s: &ScalingSeries, fit: Option<&FitResult>) -> HarnessResult<Vec<(f64, f64)>> {
    let f: Box<dyn Fn(f64) -> f64> = match o {
        Overlay::Midpoint1d => Box::new(midpoint_1d),
        Overlay::Disk2d { area } => {
            let a = match area {
                Some(a) => *a,
                None => model_fermi_surface_area(&cfg.model)?,
            };
            Box::new(move |l| disk_d(l, a, 2))
        }
        Overlay::Plateau { value } => {
            let v = *value;
            Box::new(move |_| v)
        }
        Overlay::PowerLaw { prefactor, exponent } => {
            let (a, e) = (*prefactor, *exponent);
            Box::new(move |l: f64| a * l.powf(-e))
        }
        Overlay::Fit => {
            let r = fit.ok_or_else(|| HarnessError::Config("fit overlay requires a fit spec".into()))?;
            let (a, e) = (r.prefactor, r.exponent);
            Box::new(move |l: f64| a * l.powf(-e))
        }
    };
    Ok(s.ell.iter().filter(|&&l| l > 0.0).map(|&l| (l, f(l))).collect())
}
