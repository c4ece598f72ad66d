use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use emw_bench::benchmark_instance;
use emw_core::{decide_emwidth, exact_treewidth_capped, generate_gadget, grid, GadgetSpec};

fn bench_face_enumeration(c: &mut Criterion) {
    let g = benchmark_instance(200);
    c.bench_function("faces/random-200", |b| b.iter(|| std::hint::black_box(&g).faces()));
}

fn bench_exact_treewidth(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact-treewidth");
    for (p, q) in [(3, 4), (4, 4), (4, 5)] {
        let g = grid(p, q).to_abstract();
        group.bench_with_input(BenchmarkId::from_parameter(format!("grid-{p}x{q}")), &g, |b, g| {
            b.iter(|| exact_treewidth_capped(g, 25).unwrap().0)
        });
    }
    group.finish();
}

fn bench_decide_on_gadget(c: &mut Criterion) {
    let g = generate_gadget(&GadgetSpec { p: 2, q: 4, k: 2, n: None }).unwrap();
    c.bench_function("decide/gadget-2x4x2", |b| {
        b.iter(|| decide_emwidth(std::hint::black_box(&g), 5).unwrap().decision)
    });
}

criterion_group!(
    benches,
    bench_face_enumeration,
    bench_exact_treewidth,
    bench_decide_on_gadget
);
criterion_main!(benches);
