//! acceptance criteria, one pass/fail line each

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use swssb_core::densemix::connected::min_eigenvalue;
use swssb_core::predictions::disk_d;
use swssb_lab::fuzz::{inequality_fuzz, Hooks};
use swssb_lab::sweep::model_fermi_surface_area;
use swssb_lab::verify::densemix::{
    two_level_fidelity_expected, two_level_matrices, two_level_r1_expected, two_level_r2_printed, dimer_covering, paramagnet,
    sector_two_point_gaps, DIMER_N,
};
use swssb_lab::verify::gaussfermi::dense_oracle_agreement;
use swssb_lab::verify::isingdecohere::{dense_channel_agreement, embedded_agreement, mc_agreement, monotone_in_p, replica_identity};
use swssb_lab::verify::predictions::cft_consistency;
use swssb_lab::{covering_sweep, Check, ExperimentConfig, SweepRecord};

const SEED: u64 = 0;

const FUZZ_INSTANCES: usize = 1000;
const FUZZ_BUDGET: Duration = Duration::from_secs(120);
const MATRIX_TOL: f64 = 1e-12;
const PARAMAGNET_MAX_N: usize = 10;
const ORACLE_STATES: usize = 20;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const MIDPOINT_TOL: f64 = 0.05;
const CHAIN_BUDGET: Duration = Duration::from_secs(120);
const DISK_BAND: (f64, f64) = (0.9, 1.1);
const SQUARE_BUDGET: Duration = Duration::from_secs(600);
const DIRAC_EXPONENT: (f64, f64) = (2.0, 0.15);
const DOPED_FLUX_EXPONENT: (f64, f64) = (1.0, 0.15);
const FLUX_BUDGET: Duration = Duration::from_secs(600);
const DIFFUSIVE_EXPONENT: (f64, f64) = (2.0, 0.3);
const CLEAN_EXPONENT: (f64, f64) = (1.0, 0.1);
const ANDERSON_MIN_REALIZATIONS: usize = 50;
const ANDERSON_BUDGET: Duration = Duration::from_secs(1800);
const GOE_PLATEAU: f64 = 0.4;
const GOE_PLATEAU_TOL: f64 = 0.05;
const GOE_CORRELATION_CEILING: f64 = 0.05;
const GOE_BUDGET: Duration = Duration::from_secs(300);
const ISING_BUDGET: Duration = Duration::from_secs(300);
const COVERING_TOL: f64 = 1e-6;

fn emit(id: u32, title: &str, passed: bool, detail: &str, elapsed: Duration) {
    let line = format!(
        "[{}] AC{id:02} {title}: {detail} ({:.1}s)",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
    assert!(passed, "{line}");
}

fn failures(checks: &[Check]) -> String {
    let bad: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.line()).collect();
    if bad.is_empty() {
        format!("{} checks passed", checks.len())
    } else {
        bad.join("; ")
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn sweep(name: &str) -> SweepRecord {
    let cfg = ExperimentConfig::load(fixture(name)).expect("fixture loads");
    covering_sweep(&cfg, 1).expect("sweep runs")
}

fn within(x: f64, (target, tol): (f64, f64)) -> bool {
    (x - target).abs() <= tol
}

fn exponent(rec: &SweepRecord) -> f64 {
    rec.fit.as_ref().expect("fixture has a fit").exponent
}

#[test]
fn ac01_inequality_fuzz() {
    let t = Instant::now();
    let checks = inequality_fuzz(FUZZ_INSTANCES, SEED, &Hooks::default()).unwrap();
    let enough = checks.iter().all(|c| c.instances >= FUZZ_INSTANCES);
    let el = t.elapsed();
    let ok = enough && checks.iter().all(|c| c.passed) && el < FUZZ_BUDGET;
    let worst = checks.iter().map(|c| c.measured).fold(f64::NEG_INFINITY, f64::max);
    emit(1, "inequality fuzz", ok, &format!("{FUZZ_INSTANCES} instances, largest lhs - rhs {worst:.3e}; {}", failures(&checks)), el);
}

#[test]
fn ac02_counterexample_matrices() {
    let t = Instant::now();
    let [fc, r1, r2] = two_level_matrices().unwrap();
    let f_dev = (&fc - two_level_fidelity_expected()).amax();
    let f_min = min_eigenvalue(&fc).unwrap();
    let r1_dev = (&r1 - two_level_r1_expected()).amax();
    let r2_dev = (&r2 - two_level_r2_printed()).amax();
    let r1_min = min_eigenvalue(&r1).unwrap();
    let r2_min = min_eigenvalue(&r2).unwrap();
    let ok = f_dev <= MATRIX_TOL && f_min < 0.0 && r1_dev <= MATRIX_TOL && r2_dev <= MATRIX_TOL && r1_min >= -1e-12 && r2_min >= -1e-12;
    emit(
        2,
        "two-level counterexample",
        ok,
        &format!(
            "|F_c - stated| {f_dev:.1e}, min eig F_c {f_min:.4}; |R1_c - stated| {r1_dev:.1e}; |R2_c - stated| {r2_dev:.3e}; min eig R1_c {r1_min:.1e}, R2_c {r2_min:.1e}"
        ),
        t.elapsed(),
    );
}

#[test]
fn ac03_paramagnet_closed_forms() {
    let t = Instant::now();
    let checks = paramagnet(PARAMAGNET_MAX_N).unwrap();
    let gaps = sector_two_point_gaps(PARAMAGNET_MAX_N).unwrap();
    let trend = gaps.windows(2).all(|w| w[1].1 < w[0].1);
    let ok = checks.iter().all(|c| c.passed) && trend;
    let g: Vec<String> = gaps.iter().map(|(n, g)| format!("N={n}: {g:.3e}")).collect();
    emit(3, "paramagnet closed forms", ok, &format!("{}; sector gap to 1/cosh^2 beta {}", failures(&checks), g.join(", ")), t.elapsed());
}

#[test]
fn ac04_dimer_covering() {
    let t = Instant::now();
    let checks = dimer_covering(DIMER_N).unwrap();
    let ok = checks.iter().all(|c| c.passed);
    let worst = checks.iter().map(|c| c.measured).fold(0.0, f64::max);
    emit(4, "dimer covering dependence", ok, &format!("n = {DIMER_N}, largest deviation {worst:.2e}; {}", failures(&checks)), t.elapsed());
}

#[test]
fn ac05_gaussian_dense_oracle() {
    let t = Instant::now();
    let c = dense_oracle_agreement(ORACLE_STATES, SEED).unwrap();
    let el = t.elapsed();
    emit(5, "gaussian vs dense oracle", c.passed && el < ORACLE_BUDGET, &c.line(), el);
}

#[test]
fn ac06_chain_midpoint_law() {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for name in ["chain_nu010", "chain_nu025", "chain_nu050"] {
        let rec = sweep(name);
        for (&l, &v) in rec.series.ell.iter().zip(&rec.series.values) {
            if (20.0..=100.0).contains(&l) {
                worst = worst.max((v * std::f64::consts::PI * l - 1.0).abs());
                points += 1;
            }
        }
    }
    let el = t.elapsed();
    let ok = points > 0 && worst < MIDPOINT_TOL && el < CHAIN_BUDGET;
    emit(6, "1d Fermi gas midpoint law", ok, &format!("max |R1 pi l - 1| = {worst:.4} over {points} points"), el);
}

#[test]
fn ac07_square_disk_prefactor() {
    let t = Instant::now();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for name in ["square_nu010", "square_nu020", "square_nu030"] {
        let rec = sweep(name);
        let area = model_fermi_surface_area(&rec.config.model).unwrap();
        for (&l, &v) in rec.series.ell.iter().zip(&rec.series.values) {
            if (8.0..=20.0).contains(&l) {
                let r = v / disk_d(l, area, 2);
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
    }
    let el = t.elapsed();
    let ok = lo >= DISK_BAND.0 && hi <= DISK_BAND.1 && el < SQUARE_BUDGET;
    emit(7, "2d square-lattice disk prefactor", ok, &format!("R1 l (2 pi)^2 / Area(FS) in [{lo:.4}, {hi:.4}]"), el);
}

#[test]
fn ac08_pi_flux_exponents() {
    let t = Instant::now();
    let half = exponent(&sweep("piflux_nu050"));
    let doped = exponent(&sweep("piflux_nu040"));
    let el = t.elapsed();
    let ok = within(half, DIRAC_EXPONENT) && within(doped, DOPED_FLUX_EXPONENT) && el < FLUX_BUDGET;
    emit(8, "pi-flux exponents", ok, &format!("nu = 0.5: {half:.4}, nu = 0.4: {doped:.4}"), el);
}

#[test]
fn ac09_anderson_diffusive_exponent() {
    let t = Instant::now();
    let dirty = sweep("anderson_w3");
    let clean = sweep("anderson_clean");
    let el = t.elapsed();
    let (d, c) = (exponent(&dirty), exponent(&clean));
    let n = dirty.series.meta.realizations;
    let ok = n >= ANDERSON_MIN_REALIZATIONS && within(d, DIFFUSIVE_EXPONENT) && within(c, CLEAN_EXPONENT) && el < ANDERSON_BUDGET;
    emit(9, "Anderson diffusive exponent", ok, &format!("W = 3 over {n} realizations: {d:.4}; clean control: {c:.4}"), el);
}

#[test]
fn ac10_goe_locally_thermal() {
    let t = Instant::now();
    let plateau = sweep("goe_plateau");
    let corr = sweep("goe_correlation");
    let el = t.elapsed();
    let mut dev: f64 = 0.0;
    let mut first_miss = None;
    for (&l, &v) in plateau.series.ell.iter().zip(&plateau.series.values) {
        if (10.0..=200.0).contains(&l) {
            let d = (v / GOE_PLATEAU - 1.0).abs();
            if d >= GOE_PLATEAU_TOL && first_miss.is_none() {
                first_miss = Some(l);
            }
            dev = dev.max(d);
        }
    }
    let cmax = corr.series.values.iter().copied().fold(0.0, f64::max);
    let ok = dev < GOE_PLATEAU_TOL && cmax < GOE_CORRELATION_CEILING && el < GOE_BUDGET;
    emit(
        10,
        "GOE plateau",
        ok,
        &format!(
            "max |R1 / 0.4 - 1| = {dev:.4} (first miss at l = {}), max averaged |C| = {cmax:.4}",
            first_miss.map_or("none".into(), |l| l.to_string())
        ),
        el,
    );
}

#[test]
fn ac11_decohered_ising() {
    let t = Instant::now();
    let checks = vec![
        dense_channel_agreement(&[(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)], 0.1).unwrap(),
        embedded_agreement(&[(2, 1)], 0.1).unwrap(),
        replica_identity(&[(2, 2), (3, 3), (4, 3), (4, 4)], &[0.05, 0.1, 0.2]).unwrap(),
        mc_agreement(SEED).unwrap(),
        monotone_in_p(3, 3).unwrap(),
    ];
    let el = t.elapsed();
    emit(11, "decohered Ising", checks.iter().all(|c| c.passed) && el < ISING_BUDGET, &failures(&checks), el);
}

#[test]
fn ac12_cft_consistency() {
    let t = Instant::now();
    let checks = cft_consistency(100, SEED).unwrap();
    let worst = checks.iter().map(|c| c.measured).fold(0.0, f64::max);
    emit(12, "CFT consistency", checks.iter().all(|c| c.passed), &format!("largest relative deviation {worst:.2e}; {}", failures(&checks)), t.elapsed());
}

fn cli_outputs(name: &str, jobs: usize, dir: &Path) -> Vec<(String, Vec<u8>)> {
    let out = dir.join(format!("jobs{jobs}"));
    let status = Command::new(env!("CARGO_BIN_EXE_swssb"))
        .args(["sweep", fixture(name).to_str().unwrap(), "--jobs", &jobs.to_string(), "--out", out.to_str().unwrap()])
        .env("RUST_LOG", "off")
        .output()
        .expect("swssb runs");
    assert!(status.status.code().is_some_and(|c| c <= 1), "{}", String::from_utf8_lossy(&status.stderr));
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn ac13_covering_independence_and_determinism() {
    let t = Instant::now();
    let mut gap: f64 = 0.0;
    let mut covering_ok = true;
    for model in ["tfi", "paramagnet"] {
        let a = sweep(&format!("covering_{model}_symmetric"));
        let b = sweep(&format!("covering_{model}_left_first"));
        let i = a.series.len() - 1;
        let tol = COVERING_TOL.max(3.0 * a.series.stderr[i].hypot(b.series.stderr[i]));
        let d = (a.series.values[i] - b.series.values[i]).abs();
        covering_ok &= d < tol;
        gap = gap.max(d);
    }
    let mut identical = true;
    let mut compared = 0;
    for name in ["ising_magnetization_p010", "goe_correlation", "square_nu010"] {
        let dir = std::env::temp_dir().join(format!("swssb-ac13-{}-{name}", std::process::id()));
        let one = cli_outputs(name, 1, &dir);
        for jobs in [2, 3] {
            identical &= one == cli_outputs(name, jobs, &dir);
        }
        compared += one.len();
        std::fs::remove_dir_all(&dir).ok();
        let lib = |j| serde_json::to_string(&covering_sweep(&ExperimentConfig::load(fixture(name)).unwrap(), j).unwrap()).unwrap();
        identical &= lib(1) == lib(4);
    }
    let ok = covering_ok && identical && compared > 0;
    emit(
        13,
        "covering independence and determinism",
        ok,
        &format!("largest covering gap {gap:.2e} (dense fixtures); outputs bit-identical across --jobs 1/2/3: {identical} ({compared} files)"),
        t.elapsed(),
    );
}
