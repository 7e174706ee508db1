use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use minorbit_core::gysin::minimal_orbit_cohomology;
use minorbit_core::orbitposet::build_level_diagram;
use minorbit_core::weyl::{coset_reps, DEFAULT_CAP};
use minorbit_core::zlinalg::cokernel;
use minorbit_core::{Family, RootSystem};

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("cohomology");
    for (f, n) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::A, 16),
        (Family::D, 16),
    ] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{f}{n}")),
            &(f, n),
            |b, &(f, n)| b.iter(|| minimal_orbit_cohomology(&RootSystem::build(f, n).unwrap())),
        );
    }
    group.finish();
}

fn smith(c: &mut Criterion) {
    let rs = RootSystem::build(Family::E, 8).unwrap();
    let mats = build_level_diagram(&rs).differential_matrices();
    c.bench_function("cokernels E8", |b| {
        b.iter(|| mats.iter().map(|d| cokernel(&d.matrix)).collect::<Vec<_>>())
    });
}

fn cosets(c: &mut Criterion) {
    let mut group = c.benchmark_group("coset_reps");
    for (f, n) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
    ] {
        let rs = RootSystem::build(f, n).unwrap();
        group.bench_function(format!("{f}{n}"), |b| {
            b.iter(|| coset_reps(&rs, rs.i_tilde(), DEFAULT_CAP).unwrap().len())
        });
    }
    group.finish();
}

criterion_group!(benches, pipeline, smith, cosets);
criterion_main!(benches);
