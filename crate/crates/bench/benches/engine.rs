use arakheight::chow::chow_form;
use arakheight::heights::height_point_with;
use arakheight::northcott::enumerate_bounded;
use arakheight::{normalize, Engine, NorthcottConfig, Polarization, ZeroCycle};
use arakheight_bench::{line_points, plane_points, point, reducible_tuple};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn polyring(c: &mut Criterion) {
    let t = reducible_tuple();
    c.bench_function("normalize/reducible", |b| b.iter(|| normalize(black_box(&t)).unwrap()));
}

fn heights(c: &mut Criterion) {
    let mut g = c.benchmark_group("height");
    for (k, p) in line_points().iter().enumerate() {
        g.bench_function(format!("d1/p{k}"), |b| {
            // a fresh engine per run so the memo table does not hide the work
            b.iter(|| height_point_with(&Engine::default(), p, &Polarization::fs(1), 1e-8).unwrap())
        });
    }
    g.sample_size(10);
    for (k, p) in plane_points().iter().enumerate() {
        g.bench_function(format!("d2/p{k}"), |b| {
            b.iter(|| height_point_with(&Engine::default(), p, &Polarization::fs(2), 1e-4).unwrap())
        });
    }
    g.finish();
}

fn northcott(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for bound in [0.4, 0.51] {
        g.bench_function(format!("P1/Q(z)/M={bound}"), |b| {
            b.iter(|| {
                enumerate_bounded(&Engine::default(), 1, 1, bound, &Polarization::fs(1), &NorthcottConfig::default())
                    .unwrap()
            })
        });
    }
    g.finish();
}

fn chow(c: &mut Criterion) {
    let z = ZeroCycle::point(point("(3, 5)"))
        .unwrap()
        .add(&ZeroCycle::point(point("(1, -2)")).unwrap())
        .unwrap()
        .add(&ZeroCycle::point(point("(7, 4)")).unwrap())
        .unwrap();
    c.bench_function("chow_form/degree3", |b| b.iter(|| chow_form(black_box(&z)).unwrap()));
}

criterion_group!(benches, polyring, heights, northcott, chow);
criterion_main!(benches);
