use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use reebscope::approx::{distortion_from_matrix, max_contour_diameter, LevelSampling, Pairs};
use reebscope::complex::{generate_space, DistanceMatrix, FieldKind, Generator, SpaceSpec};
use reebscope::exec::Exec;
use reebscope::reeb::build_reeb;
use std::hint::black_box;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench(c: &mut Criterion) {
    let fx = generate_space(&SpaceSpec::new(Generator::Torus, 0.15)).unwrap();
    let field = fx.field_of(FieldKind::Distance(0));
    let (g, map) = build_reeb(&fx.complex, &field).unwrap();
    let matrix = DistanceMatrix::all_pairs(&fx.complex, Exec::Parallel);
    let sampling = LevelSampling::Gaps {
        per_gap: 1,
        vertex_levels: true,
    };

    let mut group = c.benchmark_group("all_pairs");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| DistanceMatrix::all_pairs(black_box(&fx.complex), exec))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("distortion");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| distortion_from_matrix(&fx.complex, &matrix, &g, &map, Pairs::All, exec).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("contour_diameter");
    group.sample_size(20);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| max_contour_diameter(&fx.complex, &field, sampling, &matrix, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
