use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use umbra_core::evolution::{evolve_exact, evolve_numeric};
use umbra_core::exact::{from_cumulants, from_generating_series};
use umbra_core::lattice::{pathint_approx, pathint_exp, split_exact, DEFAULT_MAX_PATHS};
use umbra_core::spectral::{spectral_eval, QuadratureConfig};
use umbra_core::{catalog_get, Rational};

fn rising() -> umbra_core::CatalogEntry {
    catalog_get("rising", &[]).unwrap()
}

fn exact_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("triangle");
    for n in [8usize, 16, 24] {
        let cumulants = rising().cumulants(n);
        group.bench_with_input(BenchmarkId::new("recursion", n), &n, |b, &n| {
            b.iter(|| from_cumulants(black_box(&cumulants), n))
        });
        group.bench_with_input(BenchmarkId::new("generating_series", n), &n, |b, &n| {
            b.iter(|| from_generating_series(black_box(&cumulants), n))
        });
    }
    group.finish();
}

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral");
    let cfg = QuadratureConfig::default();
    for n in [4usize, 10] {
        let cumulants = rising().cumulants(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| spectral_eval(black_box(&cumulants), n, 1.5, &cfg).unwrap())
        });
    }
    group.finish();
}

fn paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("paths");
    let x = Rational::new(3, 2).unwrap();
    let cumulants = rising().cumulants(6);
    let t = from_cumulants(&cumulants, 6);
    group.bench_function("pathint_exp/6", |b| {
        b.iter(|| pathint_exp(&cumulants, 6, black_box(&x)))
    });
    for steps in [16usize, 256] {
        group.bench_with_input(
            BenchmarkId::new("pathint_approx", steps),
            &steps,
            |b, &s| b.iter(|| pathint_approx(&cumulants, 6, black_box(&x), s).unwrap()),
        );
    }
    group.bench_function("split_exact/6/5", |b| {
        b.iter(|| split_exact(&t, 6, black_box(&x), 5, DEFAULT_MAX_PATHS).unwrap())
    });
    group.finish();
}

fn evolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolution");
    let cumulants = rising().cumulants(10);
    let x = Rational::new(3, 2).unwrap();
    group.bench_function("exact/10", |b| {
        b.iter(|| evolve_exact(&cumulants, 10, black_box(&x)))
    });
    group.bench_function("rk4/10/64", |b| {
        b.iter(|| evolve_numeric(&cumulants, 10, black_box(1.5), 64))
    });
    group.finish();
}

criterion_group!(benches, exact_routes, spectral, paths, evolution);
criterion_main!(benches);
