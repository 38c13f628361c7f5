use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use wedgelab::components::{enumerate_minimal_primes_with, minimal_tuples, MonomialHypersurface};
use wedgelab::monomial_ideal::intersect_all;
use wedgelab::multiplicity::{conjecture_sweep, Strategy};
use wedgelab::scheme::{build_wedge_ideal_with, AffineIdealInput};
use wedgelab::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("conjecture_sweep_r4_m5");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| conjecture_sweep(4, 5, Strategy::randomized(0), exec).unwrap())
        });
    }
    g.finish();
}

fn tuples(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimal_tuples");
    for m in [8u32, 14] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, m), &m, |b, &m| {
                b.iter(|| minimal_tuples(black_box(&[1, 2, 3, 2, 1]), m, exec))
            });
        }
    }
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let hyp = MonomialHypersurface::in_own_space(vec![1, 2, 1]).unwrap();
    let m = 6;
    let ideals: Vec<_> = enumerate_minimal_primes_with(&hyp, m, Execution::Sequential)
        .iter()
        .map(|p| p.expand(&hyp).as_ideal())
        .collect();
    let mut g = c.benchmark_group("intersect_components_a121_m6");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| intersect_all(black_box(&ideals), exec)));
    }
    g.finish();
}

fn builder(c: &mut Criterion) {
    let gens = [
        "x^2*y - z^3",
        "x*y*z*w - 1",
        "x^3 + y^3 + z^3 + w^3",
        "x*w - y*z",
    ];
    let input = AffineIdealInput::parse(&gens, None).unwrap();
    let mut g = c.benchmark_group("build_wedge_m6");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| build_wedge_ideal_with(&input, 6, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sweep, tuples, decomposition, builder);
criterion_main!(benches);
