use criterion::{black_box, criterion_group, criterion_main, Criterion};
use glueconn::{bridge_glue, estimate_time_constant, simulate, BridgeSpec, Method, SimConfig};
use glueconn_bench::two_team_graphs;

fn consensus(c: &mut Criterion) {
    let (g1, g2) = two_team_graphs();
    let g = bridge_glue(&g1, &g2, &BridgeSpec::new(vec![(1, 0)]).unwrap()).unwrap().graph;
    let x0 = [3., 1., 2., -1., 2., -1., -2., 2., -1., 1.];
    let rk4 = SimConfig::recommended(&g).unwrap();
    let euler = SimConfig {
        method: Method::ForwardEuler,
        ..rk4
    };
    c.bench_function("simulate/rk4/two_team_k1", |b| {
        b.iter(|| simulate(black_box(&g), black_box(&x0), &rk4).unwrap())
    });
    c.bench_function("simulate/euler/two_team_k1", |b| {
        b.iter(|| simulate(black_box(&g), black_box(&x0), &euler).unwrap())
    });
    let traj = simulate(&g, &x0, &rk4).unwrap();
    c.bench_function("estimate_time_constant/two_team_k1", |b| {
        b.iter(|| estimate_time_constant(black_box(&traj), &g).unwrap())
    });
}

criterion_group!(benches, consensus);
criterion_main!(benches);
