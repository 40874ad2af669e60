//! Kernels timed on a single-thread rayon pool and on the default pool.
//! Build with `--no-default-features` to time the plain sequential loops.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use invconn::connections::invariant_connection_space;
use invconn::identities::identity_report;
use invconn::lie::generate_model;
use invconn::reductive::{ly_axiom_report, Decomposition, LieYamaguti};
use invconn::{RatMatrix, Rational, Tensor3};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        (
            "1-thread",
            rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap(),
        ),
        ("default", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn dense_matrix(rows: usize, cols: usize) -> RatMatrix {
    let data = (0..rows * cols)
        .map(|k| Rational::new(((k * 7919) % 13) as i64 - 6, (k % 5 + 1) as i64))
        .collect();
    RatMatrix::from_vec(rows, cols, data).unwrap()
}

fn kernels(c: &mut Criterion) {
    let gl3 = generate_model("gl:3").unwrap();
    let so3xr = generate_model("so3xR").unwrap();
    let so3xr_d = Decomposition::new(4, vec![2], None).unwrap();
    let gl3_d = Decomposition::new(9, vec![0, 4, 8], None).unwrap();
    let ly = LieYamaguti::from_decomposition(&gl3, &gl3_d).unwrap();
    let alpha = Tensor3::from_fn(4, |i, j, k| Rational::new(((i + 2 * j + 3 * k) % 5) as i64 - 2, 2));
    let m = dense_matrix(24, 28);

    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("conn_space/so3xR", name), |b| {
            pool.install(|| b.iter(|| invariant_connection_space(&so3xr, &so3xr_d).unwrap()))
        });
        group.bench_function(BenchmarkId::new("conn_space/gl3-diag", name), |b| {
            pool.install(|| b.iter(|| invariant_connection_space(&gl3, &gl3_d).unwrap()))
        });
        group.bench_function(BenchmarkId::new("ly_axioms/gl3-diag", name), |b| {
            pool.install(|| b.iter(|| ly_axiom_report(&ly)))
        });
        group.bench_function(BenchmarkId::new("identities/dim4", name), |b| {
            pool.install(|| b.iter(|| identity_report(&alpha)))
        });
        group.bench_function(BenchmarkId::new("null_space/24x28", name), |b| {
            pool.install(|| b.iter(|| m.null_space_basis()))
        });
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
