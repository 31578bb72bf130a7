use globent_core::ising::QuadratureSpec;
use globent_core::paradigm::Paradigm;
use globent_core::runner::{
    read_sweep_csv, round_sig, run_gl_profile, run_oracle_compare, run_sweep, run_table1, write_compare_csv,
    write_gl_csv, write_sweep_csv, write_table1_csv, CompareStatus, OracleConfig, RefineWindow, SweepConfig,
};

fn small_sweep() -> SweepConfig {
    SweepConfig {
        lambda_min: 0.0,
        lambda_max: 2.0,
        steps: 21,
        refine: Some(RefineWindow {
            center: 1.0,
            half_width: 0.01,
            step: 0.005,
        }),
        l_max: 4,
        ..SweepConfig::default()
    }
}

#[test]
fn sweep_csv_round_trips_at_printed_precision() {
    let reports = run_sweep(&small_sweep()).unwrap();
    let mut buf = Vec::new();
    write_sweep_csv(&reports, &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert_eq!(text.lines().next().unwrap(), "lambda,eg1,sv,g2_1,g2_2,g2_3,g2_4,eg2,upper_bound");
    assert_eq!(text.lines().count(), reports.len() + 1);

    let parsed = read_sweep_csv(buf.as_slice()).unwrap();
    assert_eq!(parsed.len(), reports.len());
    for (p, r) in parsed.iter().zip(&reports) {
        assert_eq!(p.lambda, round_sig(r.lambda));
        assert_eq!(p.eg1, round_sig(r.eg1));
        assert_eq!(p.sv_single_site, round_sig(r.sv_single_site));
        assert_eq!(p.eg2, round_sig(r.eg2));
        assert_eq!(p.upper_bound, r.upper_bound);
        for (a, b) in p.g2l.iter().zip(&r.g2l) {
            assert_eq!(*a, round_sig(*b));
        }
    }
}

#[test]
fn sweep_rows_are_sorted_and_flagged() {
    let reports = run_sweep(&small_sweep()).unwrap();
    assert!(reports.windows(2).all(|w| w[0].lambda < w[1].lambda));
    for r in &reports {
        assert_eq!(r.upper_bound, r.lambda > 1.0);
        assert!((0.0..=1.0).contains(&r.eg1));
        assert!(r.g2l.iter().all(|g| (0.0..=1.0).contains(g)));
    }
    let zero = &reports[0];
    assert_eq!((zero.eg1, zero.eg2, zero.sv_single_site), (0.0, 0.0, 0.0));
}

#[test]
fn output_is_independent_of_worker_count() {
    let one = run_sweep(&SweepConfig { threads: Some(1), ..small_sweep() }).unwrap();
    let four = run_sweep(&SweepConfig { threads: Some(4), ..small_sweep() }).unwrap();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    write_sweep_csv(&one, &mut a).unwrap();
    write_sweep_csv(&four, &mut b).unwrap();
    assert_eq!(a, b);
}

#[test]
fn table1_rows_match_closed_forms() {
    let rows = run_table1(&[4, 6, 8]).unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.max_abs_diff < 1e-12));
    let find = |tag: Paradigm, n: usize| rows.iter().find(|r| r.family.tag() == tag && r.family.n() == n).unwrap();
    let epr6 = find(Paradigm::Epr, 6).closed.eg2;
    assert!((epr6 - 0.88).abs() < 1e-12);
    let w8 = find(Paradigm::W, 8);
    assert!((w8.brute.eg1 - 0.4375).abs() < 1e-12);

    let mut buf = Vec::new();
    write_table1_csv(&rows, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 10);
}

#[test]
fn gl_profile_grows_with_separation_at_criticality() {
    let rows = run_gl_profile(1.0, &[1, 15], &QuadratureSpec::default()).unwrap();
    assert!(rows[1].1 > rows[0].1);
    let mut buf = Vec::new();
    write_gl_csv(&rows, &mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().starts_with("l,g2\n1,"));
}

#[test]
fn oracle_compare_rows() {
    let config = OracleConfig {
        n_list: vec![8, 10, 12],
        lambdas: vec![0.0, 0.5],
        l_max: 2,
        ..OracleConfig::default()
    };
    let rows = run_oracle_compare(&config).unwrap();
    for r in rows.iter().filter(|r| r.lambda == 0.0 && r.quantity.starts_with(['e', 'g'])) {
        if r.quantity != "gap" {
            assert_eq!(r.ed, Some(0.0), "{r:?}");
        }
    }
    let eg1_diff: Vec<f64> = rows
        .iter()
        .filter(|r| r.lambda == 0.5 && r.quantity == "eg1" && r.n.is_some())
        .map(|r| r.diff().unwrap().abs())
        .collect();
    assert_eq!(eg1_diff.len(), 3);
    assert!(eg1_diff.windows(2).all(|w| w[1] < w[0]), "{eg1_diff:?}");
    assert!(rows.iter().any(|r| r.status == CompareStatus::Extrapolated));

    let mut buf = Vec::new();
    write_compare_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("n,lambda,quantity,ed,analytic,diff,status\n"));
    assert!(text.contains("inf,0.5,sz,"));
}
