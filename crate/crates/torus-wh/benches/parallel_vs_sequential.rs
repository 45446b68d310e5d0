use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64 as C64;
use torus_wh::blocks::{eval_on_gamma_with, make_s};
use torus_wh::contour::{make_grid, BoundaryFunction};
use torus_wh::par::Exec;
use torus_wh::scalarfact::{factor_batch, Tolerances};
use torus_wh::surface::SurfaceParams;

fn modes() -> Vec<(&'static str, Exec)> {
    let mut m = vec![("sequential", Exec::Sequential)];
    if cfg!(feature = "parallel") {
        m.push(("parallel", Exec::Parallel));
    }
    m
}

fn bench(c: &mut Criterion) {
    let s = SurfaceParams::new(2.0).unwrap();
    let grid = make_grid(&s, 1024).unwrap();
    let tol = Tolerances::for_surface(&s);
    let theta = make_s(&s);

    let mut group = c.benchmark_group("sample_theta_quotient");
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| eval_on_gamma_with(exec, &theta, &grid).unwrap())
        });
    }
    group.finish();

    // a sweep of exp(t tau/(1 + xi^2)) over the invariant range
    let symbols: Vec<BoundaryFunction> = (0..32)
        .map(|j| {
            let t = -1.5 + 3.0 * j as f64 / 31.0;
            BoundaryFunction::from_fn(grid.clone(), |i, sg| C64::new(t * sg * grid.nodes[i].rho_scaled, 0.0).exp())
        })
        .collect();
    let mut group = c.benchmark_group("factor_batch_32");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| factor_batch(exec, &symbols, &tol))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
