use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use proxtr::{
    find_problem, initial_gamma_heuristic, ppg_inner, ppg_with_backtracking, random_quadratic, solve, CompositeProblem,
    PpgConfig, Regularizer, TrConfig, TrustRegionModel, Vector,
};

fn prox(c: &mut Criterion) {
    let mut group = c.benchmark_group("prox");
    let d = 50;
    let x = Vector::from_fn(d, |i, _| (i as f64 * 0.37).sin() * 3.0);
    let regs = [
        ("l1", Regularizer::l1(0.5, d).unwrap()),
        ("squared_l2", Regularizer::squared_l2(0.5, d).unwrap()),
        ("ball", Regularizer::ball(Vector::zeros(d), 1.0).unwrap()),
    ];
    for (name, reg) in &regs {
        group.bench_function(*name, |b| b.iter(|| reg.prox(black_box(0.1), black_box(&x)).unwrap()));
    }
    group.finish();
}

fn quadratic_model(d: usize) -> TrustRegionModel {
    let q = random_quadratic(d, -1.0, 10.0, 7).unwrap();
    let p = CompositeProblem::new(Arc::new(q), Regularizer::l1(1.0, d).unwrap()).unwrap();
    TrustRegionModel::from_problem(&p, p.x0()).unwrap()
}

fn subproblem(c: &mut Criterion) {
    let mut group = c.benchmark_group("ppg");
    for d in [10, 50] {
        let m = quadratic_model(d);
        let gamma = initial_gamma_heuristic(&m);
        for n in [15, 50] {
            let cfg = PpgConfig::with_n(n);
            group.bench_with_input(BenchmarkId::new(format!("inner_N{n}"), d), &m, |b, m| {
                b.iter(|| ppg_inner(m, black_box(1.0), gamma, &cfg).unwrap())
            });
            group.bench_with_input(BenchmarkId::new(format!("backtracking_N{n}"), d), &m, |b, m| {
                b.iter(|| ppg_with_backtracking(m, black_box(1.0), &cfg, gamma).unwrap())
            });
        }
    }
    group.finish();
}

fn full_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(20);
    let cfg = TrConfig::default();
    for name in ["ROSENBR", "BEALE", "TRIDIA"] {
        let p = find_problem(name).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| solve(&p, &cfg, &PpgConfig::default(), &[]).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, prox, subproblem, full_solve);
criterion_main!(benches);
