//! randomized invariants

use proptest::prelude::*;
use swssb_core::densemix::random::{random_hermitian, random_state, rng};
use swssb_core::densemix::{
    apply_channel, fidelity, lfc_one_point, make_pauli_channel, renyi_one_point, two_point_fidelity, LocalOperator, PauliKind,
    Register,
};
use swssb_core::gaussfermi::{gaussian_renyi1, restrict, Boundary, CorrelationMatrix, LatticeGeometry, Region};
use swssb_core::isingdecohere::{fidelity_from_probs, nishimori_params, xbasis_probabilities, NishimoriParams, RegionGraph};
use swssb_core::linalg::{self, cx};
use swssb_core::predictions::{cft_renyi2n_interval, cft_thermal_limit, fit_power_law, Beta, CftParams};
use swssb_core::ScalingSeries;

fn correlation(n: usize, seed: u64) -> CorrelationMatrix<f64> {
    let mut r = rng(seed);
    let e = linalg::herm_eigen(&random_hermitian::<f64>(n, &mut r)).unwrap();
    let lam: Vec<_> = (0..n).map(|_| cx(rand::Rng::random::<f64>(&mut r))).collect();
    let c = &e.vectors * linalg::diag(&lam) * e.vectors.adjoint();
    CorrelationMatrix::new(LatticeGeometry::chain(n, Boundary::Open), (0..n).collect(), linalg::hermitize(&c)).unwrap()
}

fn pauli() -> impl Strategy<Value = char> {
    prop::sample::select(vec!['X', 'Y', 'Z'])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fidelity_is_symmetric_and_bounded(seed in any::<u64>(), n in 1usize..=3, anc in 1usize..=4) {
        let reg = Register::qubits(n);
        let a = random_state::<f64>(&reg, anc, seed);
        let b = random_state::<f64>(&reg, anc, seed ^ 0xabc);
        let ab = fidelity(&a, b.matrix()).unwrap();
        let ba = fidelity(&b, a.matrix()).unwrap();
        prop_assert!((ab - ba).abs() < 1e-10);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&ab));
        prop_assert!((fidelity(&a, a.matrix()).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lfc_sandwich_and_restriction(seed in any::<u64>(), site in 0usize..3, p in pauli()) {
        let reg = Register::qubits(3);
        let rho = random_state::<f64>(&reg, 3, seed);
        let op = LocalOperator::pauli(site, p);
        let f = lfc_one_point(&rho, &op).unwrap();
        let r1 = renyi_one_point(&rho, &op, 1.0).unwrap();
        prop_assert!(f * f <= r1 + 1e-9 && r1 <= f + 1e-9);
        let keep: Vec<usize> = (0..3).filter(|&s| s != (site + 1) % 3).collect();
        let smaller = lfc_one_point(&rho.partial_trace(&keep).unwrap(), &op).unwrap();
        prop_assert!(smaller >= f - 1e-9);
    }

    #[test]
    fn two_point_of_disjoint_paulis_is_bounded(seed in any::<u64>(), p in pauli(), q in pauli()) {
        let rho = random_state::<f64>(&Register::qubits(3), 2, seed);
        let f = two_point_fidelity(&rho, &LocalOperator::pauli(0, p), &LocalOperator::pauli(2, q)).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
    }

    #[test]
    fn pauli_channels_preserve_trace_and_order(seed in any::<u64>(), p in 0.0f64..0.5) {
        let reg = Register::qubits(3);
        let rho = random_state::<f64>(&reg, 2, seed);
        let ch = make_pauli_channel::<f64>(&[vec![0, 1], vec![1, 2]], p, PauliKind::ZZ).unwrap();
        let out = apply_channel(&rho, &ch).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(linalg::max_abs(&(out.matrix() - out.matrix().adjoint())) < 1e-12);
        let x = LocalOperator::pauli(1, 'X');
        prop_assert!(lfc_one_point(&out, &x).unwrap() >= lfc_one_point(&rho, &x).unwrap() - 1e-9);
    }

    #[test]
    fn gaussian_renyi1_bounds_and_symmetry(seed in any::<u64>(), x in 0usize..6, k in 0usize..6) {
        let c = correlation(6, seed);
        let v = gaussian_renyi1(&c, x).unwrap();
        prop_assert!((0.0..=0.5 + 1e-12).contains(&v));
        prop_assert!((v - gaussian_renyi1(&c.particle_hole(), x).unwrap()).abs() < 1e-12);
        let mut sites: Vec<usize> = (0..6).filter(|&s| s != k || s == x).collect();
        sites.sort();
        let sub = restrict(&c, &Region::Explicit(sites)).unwrap();
        prop_assert!(gaussian_renyi1(&sub, x).unwrap() >= v - 1e-10);
    }

    #[test]
    fn ising_distribution_is_normalized(p in 0.0f64..=0.5, w in 1usize..=3, h in 1usize..=3) {
        let r = RegionGraph::rectangle(w, h).unwrap();
        let d = xbasis_probabilities(&r, p).unwrap();
        prop_assert!((d.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(d.probs().iter().all(|&q| q >= 0.0));
        let f = fidelity_from_probs(&d, r.central_site()).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
    }

    #[test]
    fn nishimori_round_trip(p in 0.001f64..0.499) {
        let a = nishimori_params(p).unwrap();
        let b = NishimoriParams::from_beta(a.beta).unwrap();
        prop_assert!((a.k - b.k).abs() < 1e-10);
        prop_assert!(a.consistency() < 1e-10);
    }

    #[test]
    fn exact_power_laws_are_recovered(a in 0.1f64..10.0, e in 0.2f64..3.0) {
        let ell: Vec<f64> = (4..=40).map(f64::from).collect();
        let y = ell.iter().map(|l| a * l.powf(-e)).collect();
        let f = fit_power_law(&ScalingSeries::from_values(ell, y).unwrap(), (4.0, 40.0)).unwrap();
        prop_assert!((f.exponent - e).abs() < 1e-8);
        prop_assert!((f.prefactor / a - 1.0).abs() < 1e-8);
    }

    #[test]
    fn cft_correlator_decays_with_interval(l in 1.0f64..50.0, grow in 0.1f64..10.0, delta in 0.1f64..2.0, beta in 0.5f64..20.0) {
        let at = |l, b| cft_renyi2n_interval(&CftParams::symmetric(l, b, delta, 0.5).unwrap()).unwrap();
        prop_assert!(at(l + grow, Beta::Infinite) < at(l, Beta::Infinite));
        let (near, far) = (at(l, Beta::Finite(beta)), at(l + grow, Beta::Finite(beta)));
        prop_assert!(far <= near * (1.0 + 1e-13) && far >= cft_thermal_limit(beta, delta) * (1.0 - 1e-12));
    }

    #[test]
    fn csv_round_trip_is_lossless(vals in prop::collection::vec(1e-12f64..1e3, 1..30)) {
        let ell: Vec<f64> = (1..=vals.len()).map(|i| i as f64).collect();
        let s = ScalingSeries::from_values(ell, vals.clone()).unwrap();
        let mut buf = vec![];
        s.write_csv(&mut buf).unwrap();
        let back = ScalingSeries::read_csv(buf.as_slice()).unwrap();
        for (a, b) in vals.iter().zip(&back.values) {
            prop_assert!((a - b).abs() <= 1e-15 * a.abs());
        }
    }
}

#[test]
fn single_precision_tracks_double() {
    let reg = Register::qubits(2);
    let d = random_state::<f64>(&reg, 2, 9);
    let s = swssb_core::densemix::DensityMatrix::<f32>::new(reg, d.matrix().map(|z| num_complex::Complex::new(z.re as f32, z.im as f32)))
        .unwrap();
    let op = LocalOperator::pauli(0, 'Z');
    let lo = lfc_one_point(&s, &LocalOperator::<f32>::pauli(0, 'Z')).unwrap();
    let hi = lfc_one_point(&d, &op).unwrap();
    assert!((f64::from(lo) - hi).abs() < 1e-4, "{lo} {hi}");
}
