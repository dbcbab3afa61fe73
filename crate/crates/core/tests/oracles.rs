//! hand-derived values

use std::f64::consts::PI;

use swssb_core::densemix::models::{paramagnet_lfc_closed_form, paramagnet_sector};
use swssb_core::densemix::{fidelity, lfc_one_point, renyi_one_point, DensityMatrix, LocalOperator, Register};
use swssb_core::gaussfermi::{fermi_chain_1d, gaussian_renyi1, restrict, BlochGroundState, CorrelationSource, Region};
use swssb_core::isingdecohere::{fidelity_from_probs, nishimori_params, xbasis_probabilities, RegionGraph};
use swssb_core::linalg::{self, cx};
use swssb_core::predictions::{cft_thermal_limit, midpoint_1d};

fn diag2(p: f64) -> DensityMatrix<f64> {
    DensityMatrix::new(Register::qubits(1), linalg::diag(&[cx(p), cx(1.0 - p)])).unwrap()
}

#[test]
fn pure_state_fidelity_is_the_overlap() {
    let s = 0.5f64.sqrt();
    let zero = DensityMatrix::pure(Register::qubits(1), &[cx(1.0), cx(0.0)]).unwrap();
    let plus = DensityMatrix::pure(Register::qubits(1), &[cx(s), cx(s)]).unwrap();
    assert!((fidelity(&zero, plus.matrix()).unwrap() - s).abs() < 1e-12);
}

#[test]
fn diagonal_qubit_lfc() {
    for p in [0.0, 0.1, 0.3, 0.5] {
        let rho = diag2(p);
        let x = lfc_one_point(&rho, &LocalOperator::pauli(0, 'X')).unwrap();
        assert!((x - 2.0 * (p * (1.0 - p)).sqrt()).abs() < 1e-7, "p = {p}: {x}");
        assert!((lfc_one_point(&rho, &LocalOperator::pauli(0, 'Z')).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn maximally_mixed_renyi_is_one_for_every_index() {
    let rho = DensityMatrix::<f64>::maximally_mixed(Register::qubits(2));
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        assert!((renyi_one_point(&rho, &LocalOperator::pauli(1, 'Y'), alpha).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn sector_paramagnet_matches_closed_form() {
    let (n, beta) = (5, 0.7);
    let rho = paramagnet_sector::<f64>(n, beta);
    for a in 1..n {
        let sites: Vec<usize> = (0..a).collect();
        let v = lfc_one_point(&rho.partial_trace(&sites).unwrap(), &LocalOperator::pauli(0, 'Z')).unwrap();
        assert!((v - paramagnet_lfc_closed_form(n, a, beta)).abs() < 1e-8, "|A| = {a}");
    }
}

#[test]
fn chain_correlations_follow_the_sine_kernel() {
    let (l, nu) = (1000, 0.2);
    let g = BlochGroundState::from_hamiltonian(&fermi_chain_1d::<f64>(l, true).unwrap(), nu).unwrap();
    for r in 1..20usize {
        let exact = (PI * nu * r as f64).sin() / (PI * r as f64);
        assert!((g.entry(500, 500 + r).re - exact).abs() < 2e-3, "r = {r}");
    }
    assert!((g.entry(3, 3).re - nu).abs() < 1e-12);
}

#[test]
fn midpoint_law_on_a_long_chain() {
    let l = 2000;
    let g = BlochGroundState::from_hamiltonian(&fermi_chain_1d::<f64>(l, true).unwrap(), 0.5).unwrap();
    let ca = restrict(&g, &Region::Interval { center: 1000, left: 40, right: 40 }).unwrap();
    let v = gaussian_renyi1(&ca, 1000).unwrap();
    assert!((v / midpoint_1d(40.0) - 1.0).abs() < 0.05, "{v}");
}

#[test]
fn isolated_spin_under_four_flippable_bonds() {
    let r = RegionGraph::rectangle(1, 1).unwrap();
    assert_eq!(r.boundary_half_edges().len(), 4);
    for p in [0.0f64, 0.05, 0.2, 0.5] {
        let q = (1.0 - (1.0 - 2.0 * p).powi(4)) / 2.0;
        let f = fidelity_from_probs(&xbasis_probabilities(&r, p).unwrap(), 0).unwrap();
        assert!((f - 2.0 * (q * (1.0 - q)).sqrt()).abs() < 1e-12, "p = {p}: {f}");
    }
}

#[test]
fn nishimori_near_threshold() {
    let n = nishimori_params(0.109).unwrap();
    assert!((n.beta - (0.891f64 / 0.109).sqrt().ln()).abs() < 1e-14);
    assert!((n.k + 0.5 * n.beta.tanh().ln()).abs() < 1e-14);
}

#[test]
fn thermal_limit_value() {
    assert!((cft_thermal_limit(2.0, 0.5) - PI / 2.0).abs() < 1e-14);
}
