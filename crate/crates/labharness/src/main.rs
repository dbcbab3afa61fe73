use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use swssb_core::predictions::{fit_plateau, fit_power_law, ScalingClass};
use swssb_lab::fuzz::Hooks;
use swssb_lab::sweep::default_jobs;
use swssb_lab::{catalog, covering_sweep, emit, run_verify, ExperimentConfig, HarnessError, HarnessResult, Options, SweepRecord};

#[derive(Parser)]
#[command(name = "swssb", version, about = "local fidelity and Renyi correlators: sweeps, verification and fits")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// run a covering sweep from a JSON config
    Sweep {
        config: PathBuf,
        /// override the config's base seed
        #[arg(long)]
        seed: Option<u64>,
        /// worker threads (default SWSSB_JOBS, else all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// directory for the outputs
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// run an invariant suite: densemix, gaussfermi, isingdecohere, predictions or all
    Verify {
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        /// random instances per fuzzed invariant
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// file or directory for the JSON report
        #[arg(long)]
        out: Option<PathBuf>,
        /// replace the fidelity by its square root, to check that the suite notices
        #[arg(long, hide = true)]
        mutate_fidelity: bool,
    },
    /// fit a power law (or a plateau) to a series CSV or a sweep JSON record
    Fit {
        series: PathBuf,
        /// a,b; the whole series when omitted
        #[arg(long, value_delimiter = ',')]
        window: Vec<f64>,
        #[arg(long)]
        plateau: bool,
        /// fermi_metal, dirac_semimetal, diffusive_metal or locally_thermal
        #[arg(long)]
        expect: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// list model kinds, their parameters and estimators
    Models {
        #[arg(long)]
        json: bool,
    },
}

fn pool(jobs: Option<usize>) -> HarnessResult<usize> {
    let j = jobs.unwrap_or_else(default_jobs);
    if j == 0 {
        return Err(HarnessError::Config("--jobs must be positive".into()));
    }
    Ok(j)
}

fn sweep(config: &Path, seed: Option<u64>, jobs: Option<usize>, out: Option<&Path>) -> HarnessResult<bool> {
    let mut cfg = ExperimentConfig::load(config)?;
    if let Some(s) = seed {
        cfg.seeds.base = s;
    }
    let rec = covering_sweep(&cfg, pool(jobs)?)?;
    println!("# {} ({} / {})", cfg.name, cfg.model.id(), cfg.estimator.id());
    println!("ell,value,stderr");
    for i in 0..rec.series.len() {
        println!("{},{:.10e},{:.3e}", rec.series.ell[i], rec.series.values[i], rec.series.stderr[i]);
    }
    if let Some(f) = &rec.fit {
        println!(
            "# fit exponent {:.4} +- {:.4}, prefactor {:.4e}, window {:?}{}",
            f.exponent,
            f.stderr,
            f.prefactor,
            f.window,
            match rec.fit_accepted {
                Some(true) => ", in class",
                Some(false) => ", OUT OF CLASS",
                None => "",
            }
        );
    }
    for d in &rec.diagnostics {
        eprintln!("diagnostic: {}", d.message);
    }
    for w in &rec.warnings {
        eprintln!("warning: {w}");
    }
    for p in emit::emit_record(&rec, out)? {
        eprintln!("wrote {}", p.display());
    }
    Ok(rec.passed())
}

fn verify(suite: &str, opts: &Options, jobs: Option<usize>, out: Option<&Path>) -> HarnessResult<bool> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(pool(jobs)?).build()?;
    let report = pool.install(|| run_verify(suite, opts))?;
    for c in &report.checks {
        println!("{}", c.line());
    }
    let failed = report.failures().count();
    println!("{}: {} checks, {} failed", report.suite, report.checks.len(), failed);
    if let Some(o) = out {
        let path = if o.extension().is_some_and(|e| e == "json") { o.to_path_buf() } else { o.join(format!("verify-{suite}.json")) };
        emit::write_json(&report, &path)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(report.passed)
}

fn fit(series: &Path, window: &[f64], plateau: bool, expect: Option<&str>, out: Option<&Path>) -> HarnessResult<bool> {
    let s = if series.extension().is_some_and(|e| e == "json") {
        let text = std::fs::read_to_string(series).map_err(|e| HarnessError::io(series, e))?;
        serde_json::from_str::<SweepRecord>(&text)?.series
    } else {
        emit::read_csv(series)?
    };
    let w = match window {
        [] => (f64::NEG_INFINITY, f64::INFINITY),
        [a, b] => (*a, *b),
        _ => return Err(HarnessError::Config("--window takes two values a,b".into())),
    };
    let class = expect
        .map(|c| serde_json::from_value::<ScalingClass>(serde_json::Value::String(c.into())))
        .transpose()
        .map_err(|e| HarnessError::Config(format!("--expect: {e}")))?;
    let plateau = plateau || class == Some(ScalingClass::LocallyThermal);
    let f = if plateau { fit_plateau(&s, w)? } else { fit_power_law(&s, w)? };
    println!("{}", serde_json::to_string_pretty(&f)?);
    if let Some(o) = out {
        emit::write_json(&f, o)?;
    }
    Ok(match class {
        Some(ScalingClass::LocallyThermal) | None => true,
        Some(c) => c.accepts(f.exponent),
    })
}

fn run(cli: Cli) -> HarnessResult<bool> {
    match cli.cmd {
        Cmd::Sweep { config, seed, jobs, out } => sweep(&config, seed, jobs, out.as_deref()),
        Cmd::Verify { suite, seed, instances, jobs, out, mutate_fidelity } => {
            let hooks = if mutate_fidelity { Hooks::sqrt_mutant() } else { Hooks::default() };
            let opts = Options { instances, seed: seed.unwrap_or(0), hooks };
            verify(&suite, &opts, jobs, out.as_deref())
        }
        Cmd::Fit { series, window, plateau, expect, out } => fit(&series, &window, plateau, expect.as_deref(), out.as_deref()),
        Cmd::Models { json } => {
            if json {
                println!("{}", serde_json::to_string_pretty(catalog::MODELS)?);
            } else {
                print!("{}", catalog::table());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
