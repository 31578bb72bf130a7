use std::collections::BTreeMap;
use std::f64::consts::PI;

use globent_core::ed::{extrapolate, ground_state, oracle_measures, ChainSpec, DEFAULT_TOL};
use globent_core::ising::{
    eg1_ising, g_correlator_with, xx_correlator_sized, Denominator, IsingPoint, QuadratureSpec, ToeplitzSize,
};
use globent_core::qstate::{g2_of_state_cyclic, linear_entropy, partial_trace};

fn extrapolated(lambda: f64, sizes: &[usize], f: impl Fn(&globent_core::ed::OracleReport) -> f64) -> f64 {
    let values: BTreeMap<usize, f64> = sizes
        .iter()
        .map(|&n| {
            let r = oracle_measures(&ChainSpec::new(n, lambda).unwrap(), 3).unwrap();
            (n, f(&r.to_ferromagnetic().unwrap()))
        })
        .collect();
    extrapolate(&values).unwrap().value
}

#[test]
fn ground_state_is_translation_invariant() {
    let spec = ChainSpec::new(10, 0.8).unwrap();
    let gs = ground_state(&spec, DEFAULT_TOL).unwrap();
    let s0 = linear_entropy(&partial_trace(&gs.state, &[0]).unwrap());
    let pair0 = partial_trace(&gs.state, &[0, 3]).unwrap();
    for j in 1..10 {
        let sj = linear_entropy(&partial_trace(&gs.state, &[j]).unwrap());
        assert!((sj - s0).abs() < 1e-9, "site {j}");
        let pair = partial_trace(&gs.state, &[j, (j + 3) % 10]).unwrap();
        assert!(pair.max_abs_diff(&pair0) < 1e-9, "pair at {j}");
    }
}

#[test]
fn cyclic_pairs_are_reflection_symmetric() {
    let spec = ChainSpec::new(10, 1.0).unwrap();
    let gs = ground_state(&spec, DEFAULT_TOL).unwrap();
    for l in 1..10 {
        let a = g2_of_state_cyclic(&gs.state, l).unwrap();
        let b = g2_of_state_cyclic(&gs.state, 10 - l).unwrap();
        assert!((a - b).abs() < 1e-9, "l={l}");
    }
}

#[test]
fn no_transverse_order_below_critical_coupling() {
    for lambda in [0.2, 0.6, 1.0] {
        let r = oracle_measures(&ChainSpec::new(12, lambda).unwrap(), 2).unwrap();
        assert!(r.sx.abs() < 1e-9, "lambda={lambda}");
    }
}

#[test]
fn critical_chain_of_fourteen_is_near_the_infinite_chain() {
    let r = oracle_measures(&ChainSpec::new(14, 1.0).unwrap(), 3).unwrap();
    let limit = 1.0 - 4.0 / (PI * PI);
    assert!((r.measures.eg1 - limit).abs() < 0.05, "{}", r.measures.eg1);
}

#[test]
fn finite_chains_converge_towards_the_infinite_chain() {
    let target = eg1_ising(0.5, &QuadratureSpec::default()).unwrap();
    let e12 = oracle_measures(&ChainSpec::new(12, 0.5).unwrap(), 2).unwrap().measures.eg1;
    let e16 = oracle_measures(&ChainSpec::new(16, 0.5).unwrap(), 2).unwrap().measures.eg1;
    assert!((e16 - target).abs() < (e12 - target).abs());
    assert!((e16 - target).abs() < 1e-4, "{e16} vs {target}");
}

#[test]
fn critical_magnetization_extrapolates_to_two_over_pi() {
    let sz = extrapolated(1.0, &[12, 14, 16], |r| r.sz);
    assert!((sz - 2.0 / PI).abs() < 1e-2, "{sz}");

    // the unrooted dispersion would put g(0) at 1/2
    let unrooted = g_correlator_with(1.0, 0, &QuadratureSpec::default(), Denominator::Unrooted).unwrap();
    assert!((sz - unrooted).abs() > 0.1);
}

#[test]
fn nearest_neighbour_correlator_matches_extrapolation() {
    let quad = QuadratureSpec::default();
    for lambda in [0.5, 1.0] {
        let point = IsingPoint::new(lambda, 2, &quad).unwrap();
        let ed = extrapolated(lambda, &[12, 14, 16], |r| r.xx_at(1).unwrap());
        let analytic = xx_correlator_sized(&point, 1, ToeplitzSize::Separation).unwrap();
        assert!((ed - analytic).abs() < 1e-3, "lambda={lambda}: ed {ed} analytic {analytic}");
    }
}

#[test]
fn toeplitz_size_is_fixed_by_the_oracle() {
    let quad = QuadratureSpec::default();
    for lambda in [0.5, 1.0] {
        let point = IsingPoint::new(lambda, 4, &quad).unwrap();
        for l in [1usize, 2, 3] {
            let ed = extrapolated(lambda, &[12, 14, 16], |r| r.xx_at(l).unwrap());
            let full = xx_correlator_sized(&point, l, ToeplitzSize::Separation).unwrap();
            let short = xx_correlator_sized(&point, l, ToeplitzSize::SeparationMinusOne).unwrap();
            assert!((ed - full).abs() < 5e-3, "lambda={lambda} l={l}: ed {ed} analytic {full}");
            assert!((ed - short).abs() > 5e-2, "lambda={lambda} l={l}");
        }
    }
}

#[test]
fn slow_convergence_below_criticality_is_monotone() {
    // at lambda = 0.8 finite rings approach the infinite-chain value
    // geometrically; the raw error must shrink with every size step
    let point = IsingPoint::new(0.8, 4, &QuadratureSpec::default()).unwrap();
    let target = xx_correlator_sized(&point, 3, ToeplitzSize::Separation).unwrap();
    let errors: Vec<f64> = [10, 12, 14, 16]
        .iter()
        .map(|&n| {
            let r = oracle_measures(&ChainSpec::new(n, 0.8).unwrap(), 3).unwrap();
            (r.to_ferromagnetic().unwrap().xx[2] - target).abs()
        })
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn strong_coupling_approaches_ferromagnetic_saturation() {
    let r = oracle_measures(&ChainSpec::new(16, 50.0).unwrap(), 1).unwrap();
    let f = r.to_ferromagnetic().unwrap();
    let target = (1.0 - 50f64.powi(-2)).powf(0.25);
    assert!((f.xx[0] - target).abs() < 1e-3, "{} vs {target}", f.xx[0]);
}
