//! seeded random instances for the dense inequalities

use num_complex::Complex;
use rand::Rng;
use rayon::prelude::*;
use swssb_core::densemix::connected::min_eigenvalue;
use swssb_core::densemix::random::{ginibre, random_state_with, rng};
use swssb_core::densemix::symmetry::twirl;
use swssb_core::densemix::{
    averaged_one_two_check, connected_renyi_matrix, disorder_parameter, lfc_one_point, renyi_one_point, two_point_fidelity,
    Register, SymmetryAction,
};
use swssb_core::linalg;
use swssb_core::{CMat, DensityMatrix, LocalOperator};

use crate::error::HarnessResult;
use crate::report::Check;

/// slack allowed on every fuzzed inequality
pub const FUZZ_SLACK: f64 = 1e-9;
pub const CONNECTED_ALPHAS: [f64; 4] = [0.5, 1.0, 2.0, 3.0];

pub type LfcFn = fn(&DensityMatrix, &LocalOperator) -> swssb_core::Result<f64>;

/// routines under test; swapping one in lets the suites be checked against a known mutant
#[derive(Clone, Copy)]
pub struct Hooks {
    pub lfc: LfcFn,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks { lfc: lfc_one_point }
    }
}

fn sqrt_lfc(rho: &DensityMatrix, op: &LocalOperator) -> swssb_core::Result<f64> {
    lfc_one_point(rho, op).map(f64::sqrt)
}

impl Hooks {
    /// fidelity replaced by its square root
    pub fn sqrt_mutant() -> Self {
        Hooks { lfc: sqrt_lfc }
    }
}

fn instance_rng(seed: u64, family: u64, i: usize) -> impl Rng {
    rng(seed ^ family.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (i as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9))
}

fn random_op(site: usize, r: &mut impl Rng) -> LocalOperator {
    let scale = 0.25 + r.random::<f64>();
    LocalOperator::qubit(site, ginibre::<f64>(2, 2, r) * Complex::new(scale, 0.0)).expect("2x2")
}

fn random_state(n: usize, r: &mut impl Rng) -> DensityMatrix {
    let rank = r.random_range(1..=(1usize << n));
    random_state_with(&Register::qubits(n), rank, r)
}

fn weakly_symmetric(n: usize, r: &mut impl Rng) -> HarnessResult<DensityMatrix> {
    let rho = random_state(n, r);
    Ok(twirl(&rho, &SymmetryAction::z2_x(Register::qubits(n))?)?)
}

/// cos t Z + sin t Y up to a phase: unitary, charge -1 under X
fn charged_unitary(site: usize, r: &mut impl Rng) -> LocalOperator {
    let t = r.random::<f64>() * std::f64::consts::TAU;
    let phase = Complex::from_polar(1.0, r.random::<f64>() * std::f64::consts::TAU);
    let m: CMat<f64> = (linalg::pauli::<f64>('Z') * Complex::new(t.cos(), 0.0) + linalg::pauli::<f64>('Y') * Complex::new(t.sin(), 0.0)) * phase;
    LocalOperator::qubit(site, m).expect("2x2")
}

fn worst(name: &str, instances: usize, f: impl Fn(usize) -> HarnessResult<f64> + Sync + Send) -> HarnessResult<Check> {
    let v: Vec<f64> = (0..instances).into_par_iter().map(f).collect::<HarnessResult<_>>()?;
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Check::at_most("densemix", name, m, FUZZ_SLACK).with_instances(instances).detail("largest violation lhs - rhs"))
}

/// Thm 1 with A = {0, 1}, O_x on 0 and O_y on 2
pub fn thm1(instances: usize, seed: u64, hooks: &Hooks) -> HarnessResult<Check> {
    worst("thm1_one_point_bounds_two_point", instances, |i| {
        let mut r = instance_rng(seed, 1, i);
        let rho = random_state(3, &mut r);
        let ox = random_op(0, &mut r);
        let oy = random_op(2, &mut r);
        let lhs = oy.operator_norm()? * (hooks.lfc)(&rho.partial_trace(&[0, 1])?, &ox)?;
        Ok(two_point_fidelity(&rho, &ox, &oy)? - lhs)
    })
}

/// F and R^1 non-increasing from A = {0, 1} to A+ = {0, 1, 2} on 4 qubits
pub fn dpi(instances: usize, seed: u64, hooks: &Hooks) -> HarnessResult<(Check, Check)> {
    let f = worst("dpi_fidelity_monotone", instances, |i| {
        let mut r = instance_rng(seed, 2, i);
        let rho = random_state(4, &mut r);
        let o = random_op(r.random_range(0..2), &mut r);
        Ok((hooks.lfc)(&rho.partial_trace(&[0, 1, 2])?, &o)? - (hooks.lfc)(&rho.partial_trace(&[0, 1])?, &o)?)
    })?;
    let r1 = worst("r1_monotone", instances, |i| {
        let mut r = instance_rng(seed, 3, i);
        let rho = random_state(4, &mut r);
        let o = random_op(r.random_range(0..2), &mut r);
        Ok(renyi_one_point(&rho.partial_trace(&[0, 1, 2])?, &o, 1.0)? - renyi_one_point(&rho.partial_trace(&[0, 1])?, &o, 1.0)?)
    })?;
    Ok((f, r1))
}

/// F^2 <= R^1 <= ||O|| F on two-qubit marginals of three-qubit states
pub fn sandwich(instances: usize, seed: u64, hooks: &Hooks) -> HarnessResult<Check> {
    worst("sandwich_f2_r1_f", instances, |i| {
        let mut r = instance_rng(seed, 4, i);
        let rho = random_state(3, &mut r).partial_trace(&[0, 1])?;
        let o = random_op(1, &mut r);
        let f = (hooks.lfc)(&rho, &o)?;
        let r1 = renyi_one_point(&rho, &o, 1.0)?;
        Ok((f * f - r1).max(r1 - o.operator_norm()? * f))
    })
}

/// averaged two-point against squared averaged one-point for Z_0, Z_1, Z_2
pub fn thm8(instances: usize, seed: u64) -> HarnessResult<Check> {
    worst("thm8_averaged_inequality", instances, |i| {
        let mut r = instance_rng(seed, 5, i);
        let rho = weakly_symmetric(3, &mut r)?;
        let ops: Vec<LocalOperator> = (0..3).map(|s| LocalOperator::pauli(s, 'Z')).collect();
        let (two, one_sq) = averaged_one_two_check(&rho, &ops)?;
        Ok(one_sq - two)
    })
}

/// F^2 + |<U_A>|^2 <= 1 for charged unitaries on weakly symmetric states
pub fn order_disorder(instances: usize, seed: u64, hooks: &Hooks) -> HarnessResult<Check> {
    worst("order_disorder_bound", instances, |i| {
        let mut r = instance_rng(seed, 6, i);
        let rho = weakly_symmetric(3, &mut r)?;
        let o = charged_unitary(r.random_range(0..3), &mut r);
        let f = (hooks.lfc)(&rho, &o)?;
        let d = disorder_parameter(&rho, &SymmetryAction::z2_x(Register::qubits(3))?, 1)?;
        Ok(f * f + d.norm_sqr() - 1.0)
    })
}

/// smallest eigenvalue of connected Renyi matrices, one check per alpha
pub fn connected_psd(instances: usize, seed: u64) -> HarnessResult<Vec<Check>> {
    CONNECTED_ALPHAS
        .iter()
        .enumerate()
        .map(|(k, &alpha)| {
            worst(&format!("connected_renyi_psd_alpha_{alpha}"), instances, |i| {
                let mut r = instance_rng(seed, 7 + k as u64, i);
                let rho = random_state(3, &mut r);
                let ops: Vec<LocalOperator> = (0..3).map(|s| random_op(s, &mut r)).collect();
                Ok(-min_eigenvalue(&connected_renyi_matrix(&rho, &ops, alpha)?)?)
            })
        })
        .collect()
}

/// all fuzzed inequalities in a fixed order
pub fn inequality_fuzz(instances: usize, seed: u64, hooks: &Hooks) -> HarnessResult<Vec<Check>> {
    let mut out = vec![thm1(instances, seed, hooks)?];
    let (f, r1) = dpi(instances, seed, hooks)?;
    out.push(f);
    out.push(r1);
    out.push(sandwich(instances, seed, hooks)?);
    out.push(thm8(instances, seed)?);
    out.push(order_disorder(instances, seed, hooks)?);
    out.extend(connected_psd(instances, seed)?);
    Ok(out)
}
