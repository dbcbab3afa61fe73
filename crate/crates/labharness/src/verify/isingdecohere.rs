//! decohered Ising invariants

use swssb_core::isingdecohere::{
    dense_xbasis_probabilities, embedded_xbasis_probabilities, fidelity_from_probs, ising_magnetization_exact,
    ising_magnetization_mc, nishimori_params, renyi1_from_probs, renyi2k_from_probs, xbasis_probabilities,
    xbasis_probabilities_ising, xbasis_probabilities_rbim, McSchedule, RegionGraph,
};

use super::Options;
use crate::error::HarnessResult;
use crate::report::Check;

const M: &str = "isingdecohere";

/// LFC at the centre of a 3x3 region
pub const FIXTURE_P005: f64 = 0.591_433_636_626_580;
pub const FIXTURE_P03: f64 = 0.999_646_277_419_334;
pub const NISHIMORI_BETA: f64 = 1.050_498_272_620_833;
pub const NISHIMORI_K: f64 = 0.122_950_269_218_413;

pub fn suite(opts: &Options) -> HarnessResult<Vec<Check>> {
    let mut out = vec![dense_channel_agreement(&[(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)], 0.1)?];
    out.push(embedded_agreement(&[(2, 1)], 0.1)?);
    out.push(replica_identity(&[(2, 2), (3, 3), (4, 3), (4, 4)], &[0.05, 0.1, 0.2])?);
    out.push(three_routes()?);
    out.push(torus_parity()?);
    out.push(monotone_in_p(3, 3)?);
    out.push(renyi1_equals_fidelity()?);
    out.extend(fixtures()?);
    out.push(mc_agreement(opts.seed)?);
    Ok(out)
}

/// largest TV distance between flip enumeration and the dense ZZ-channel pipeline
pub fn dense_channel_agreement(shapes: &[(usize, usize)], p: f64) -> HarnessResult<Check> {
    let mut worst: f64 = 0.0;
    for &(w, h) in shapes {
        let r = RegionGraph::rectangle(w, h)?;
        worst = worst.max(xbasis_probabilities(&r, p)?.total_variation(&dense_xbasis_probabilities(&r, p)?)?);
    }
    Ok(Check::at_most(M, "dense_channel_tv", worst, 1e-12).with_instances(shapes.len()))
}

/// the same against channels on the region and its neighbours, traced back to the region
pub fn embedded_agreement(shapes: &[(usize, usize)], p: f64) -> HarnessResult<Check> {
    let mut worst: f64 = 0.0;
    for &(w, h) in shapes {
        let r = RegionGraph::rectangle(w, h)?;
        worst = worst.max(xbasis_probabilities(&r, p)?.total_variation(&embedded_xbasis_probabilities(&r, p)?)?);
    }
    Ok(Check::at_most(M, "embedded_channel_tv", worst, 1e-12).with_instances(shapes.len()))
}

/// R^2 at the centre against <eta_x> at coupling 2K, both by enumeration
pub fn replica_identity(shapes: &[(usize, usize)], rates: &[f64]) -> HarnessResult<Check> {
    let mut worst: f64 = 0.0;
    for &(w, h) in shapes {
        let r = RegionGraph::rectangle(w, h)?;
        let x = r.central_site();
        for &p in rates {
            let k = nishimori_params(p)?.k;
            let lhs = renyi2k_from_probs(&xbasis_probabilities(&r, p)?, x, 1)?;
            worst = worst.max((lhs - ising_magnetization_exact(&r, k, x)?).abs());
        }
    }
    Ok(Check::at_most(M, "replica_identity", worst, 1e-10).with_instances(shapes.len() * rates.len()))
}

fn three_routes() -> HarnessResult<Check> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (w, h) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let r = RegionGraph::rectangle(w, h)?;
        for p in [0.03, 0.1, 0.3] {
            let flips = xbasis_probabilities(&r, p)?;
            worst = worst
                .max(flips.total_variation(&xbasis_probabilities_ising(&r, p)?)?)
                .max(flips.total_variation(&xbasis_probabilities_rbim(&r, p)?)?);
            count += 1;
        }
    }
    Ok(Check::at_most(M, "flip_ising_rbim_routes", worst, 1e-12).with_instances(count))
}

fn torus_parity() -> HarnessResult<Check> {
    let t = RegionGraph::torus(3, 3)?;
    let d = xbasis_probabilities(&t, 0.2)?;
    let f = fidelity_from_probs(&d, t.central_site())?;
    Ok(Check::at_most(M, "torus_parity_conserved", d.odd_weight().max(f), 1e-15).detail("odd-parity weight and single-flip LFC"))
}

/// largest drop of the centre LFC along p = 0, 0.025, ..., 0.5
pub fn monotone_in_p(w: usize, h: usize) -> HarnessResult<Check> {
    let r = RegionGraph::rectangle(w, h)?;
    let x = r.central_site();
    let vals = (0..=20)
        .map(|i| fidelity_from_probs(&xbasis_probabilities(&r, 0.025 * i as f64)?, x).map_err(Into::into))
        .collect::<HarnessResult<Vec<f64>>>()?;
    let drop = vals.windows(2).map(|v| v[0] - v[1]).fold(f64::NEG_INFINITY, f64::max);
    Ok(Check::at_most(M, "lfc_monotone_in_p", drop, 1e-12).with_instances(vals.len()).detail(format!("{w}x{h} centre")))
}

fn renyi1_equals_fidelity() -> HarnessResult<Check> {
    let r = RegionGraph::rectangle(3, 3)?;
    let mut worst: f64 = 0.0;
    for p in [0.05, 0.1, 0.2, 0.4] {
        let d = xbasis_probabilities(&r, p)?;
        for x in 0..r.len() {
            worst = worst.max((renyi1_from_probs(&d, x)? - fidelity_from_probs(&d, x)?).abs());
        }
    }
    Ok(Check::at_most(M, "diagonal_renyi1_equals_fidelity", worst, 1e-14))
}

fn fixtures() -> HarnessResult<Vec<Check>> {
    let r = RegionGraph::rectangle(3, 3)?;
    let x = r.central_site();
    let lo = fidelity_from_probs(&xbasis_probabilities(&r, 0.05)?, x)?;
    let hi = fidelity_from_probs(&xbasis_probabilities(&r, 0.3)?, x)?;
    let n = nishimori_params(0.109)?;
    Ok(vec![
        Check::close(M, "fixture_lfc_p0.05", lo, FIXTURE_P005, 1e-12),
        Check::close(M, "fixture_lfc_p0.3", hi, FIXTURE_P03, 1e-12),
        Check::close(M, "nishimori_beta_p0.109", n.beta, NISHIMORI_BETA, 1e-12),
        Check::close(M, "nishimori_k_p0.109", n.k, NISHIMORI_K, 1e-12),
    ])
}

/// |MC - exact| in units of the batch-means error on a 3x3 region at p = 0.1
pub fn mc_agreement(seed: u64) -> HarnessResult<Check> {
    let r = RegionGraph::rectangle(3, 3)?;
    let x = r.central_site();
    let k = nishimori_params(0.1)?.k;
    let exact = ising_magnetization_exact(&r, k, x)?;
    let mc = ising_magnetization_mc(&r, k, x, McSchedule::default(), seed, None)?;
    let z = (mc.mean - exact).abs() / mc.stderr.max(f64::MIN_POSITIVE);
    Ok(Check::at_most(M, "mc_within_3_stderr", z, 3.0).detail(format!("mc {:.5} +- {:.5}, exact {exact:.5}", mc.mean, mc.stderr)))
}
