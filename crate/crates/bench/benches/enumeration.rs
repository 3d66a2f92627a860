use criterion::{black_box, criterion_group, criterion_main, Criterion};

use mpoly_bench::{cube_polytope, prism_polytope};
use mpoly_core::cube_models::{cube, random_ordering};
use mpoly_core::orderings::{
    enumerate_orderings, is_k_ordering, is_shelling_ordering_fast, EnumerationOptions, Filter,
};
use mpoly_core::reconstruction::find_good_orientations;
use mpoly_core::{FaceLattice, OrientedMatroid};

fn lattice(c: &mut Criterion) {
    let c3 = cube(3).unwrap();
    c.bench_function("cube3 oriented matroid + faces", |b| {
        b.iter(|| {
            let om = OrientedMatroid::from_points(black_box(&c3)).unwrap();
            FaceLattice::from_oriented_matroid(&om).unwrap()
        })
    });
    let c3 = cube(3).unwrap();
    c.bench_function("cube3 full covector closure", |b| {
        b.iter(|| OrientedMatroid::from_points(black_box(&c3)).unwrap().covectors().len())
    });
}

fn checks(c: &mut Criterion) {
    let poly = cube_polytope(3);
    poly.oriented_matroid().covectors();
    let ords: Vec<_> = (0..64).map(|s| random_ordering(8, s)).collect();
    c.bench_function("cube3 K check x64", |b| {
        b.iter(|| ords.iter().filter(|o| is_k_ordering(&poly, o).unwrap()).count())
    });
    c.bench_function("cube3 shelling check x64", |b| {
        b.iter(|| {
            ords.iter().filter(|o| is_shelling_ordering_fast(poly.oriented_matroid(), o).unwrap()).count()
        })
    });
}

fn enumeration(c: &mut Criterion) {
    let prism = prism_polytope();
    let opts = EnumerationOptions { filter: Filter::KNotShelling, ..Default::default() };
    c.bench_function("prism exhaustive enumeration", |b| {
        b.iter(|| enumerate_orderings(&prism, &opts).unwrap().summary.counts.k)
    });
    let poly = cube_polytope(3);
    let mut group = c.benchmark_group("cube3");
    group.sample_size(10);
    group.bench_function("exhaustive enumeration", |b| {
        b.iter(|| enumerate_orderings(&poly, &opts).unwrap().summary.counts.k)
    });
    group.bench_function("good orientations", |b| {
        b.iter(|| find_good_orientations(poly.graph(), None).unwrap().min_score)
    });
    group.finish();
}

criterion_group!(benches, lattice, checks, enumeration);
criterion_main!(benches);
