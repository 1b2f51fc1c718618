mod common;

use arakheight::northcott::{derive_box, enumerate_bounded, northcott_report, Status};
use arakheight::*;
use common::*;

#[test]
fn box_constants() {
    let cfg = NorthcottConfig::default();
    let fs = Polarization::fs(1);
    let b = derive_box(1, 1, 0.4, &fs, &cfg).unwrap();
    // 2(0.4 + ε)/log 2 < 2, and |coef| ≤ e^{1/2}/sup|X0 X1| · e^{0.4 + ε} = 2e^{0.9} < 3
    assert_eq!(b.degree_bounds, vec![1]);
    assert_eq!(b.coeff_bound, 2);
    assert!(derive_box(1, 1, -0.1, &fs, &cfg).unwrap().is_empty());
    let b2 = derive_box(1, 2, 1.0, &Polarization::fs(2), &cfg).unwrap();
    assert_eq!(b2.degree_bounds, vec![2, 2]);
}

#[test]
fn enumerated_heights_match_quadrature() {
    let engine = Engine::default();
    let e = enumerate_bounded(&engine, 1, 1, 0.51, &Polarization::fs(1), &NorthcottConfig::default()).unwrap();
    assert_eq!(e.points.len(), 8);
    for bp in &e.points {
        assert_eq!(bp.status, Status::In);
        let deg = bp.point.multidegree()[0];
        let oracle = fs_height_1d(bp.point.coords(), deg, 2000, 128) + deg as f64 / 2.0;
        assert!((bp.height.numeric - oracle).abs() < 1e-8, "{}: {}", bp.point, bp.height);
        assert!(bp.height.numeric <= 0.51);
    }
}

#[test]
fn ladder_is_monotone() {
    let engine = Engine::default();
    let rows = northcott_report(
        &engine,
        1,
        1,
        &[-0.1, 0.0, 0.3, 0.4, 0.45, 0.51],
        &Polarization::fs(1),
        &NorthcottConfig::default(),
    )
    .unwrap();
    let counts: Vec<usize> = rows.iter().map(|r| r.count).collect();
    assert_eq!(counts, vec![0, 2, 2, 4, 4, 8]);
}

#[test]
fn budget_is_enforced() {
    let engine = Engine::default();
    let cfg = NorthcottConfig { budget: 10, ..NorthcottConfig::default() };
    let r = enumerate_bounded(&engine, 1, 1, 0.51, &Polarization::fs(1), &cfg);
    assert!(matches!(r, Err(Error::BoxOverflow { .. })));
}
