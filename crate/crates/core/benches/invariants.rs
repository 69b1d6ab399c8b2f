//! Benchmarks for the exact pipeline, comparing the rayon path against a
//! sequential baseline.
//!
//! With the default `parallel` feature every workload is registered twice:
//! `<name>/par` runs on the global rayon pool and `<name>/seq1` inside a
//! one-thread pool, so the speedup (and the overhead on small inputs) is
//! visible in one report. Building with `--no-default-features` registers
//! `<name>/seq` only, measuring the fully sequential fallback code path.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use coincidence::corpus::{grid_torus, grid_torus_shift, Corpus};
use coincidence::lefschetz::{canonical_theta, coincidence_lefschetz, theta_lefschetz};
use coincidence::{homology, Manifold, RatMatrix, Rational};

fn seeded_matrix(rows: usize, cols: usize, seed: u64) -> RatMatrix {
    let mut state = seed | 1;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        state >> 33
    };
    let entries: Vec<Rational> = (0..rows * cols)
        .map(|_| {
            let numer = (next() % 19) as i64 - 9;
            let denom = (next() % 7) as i64 + 1;
            Rational::new(numer, denom)
        })
        .collect();
    RatMatrix::from_fn(rows, cols, |i, j| entries[i * cols + j].clone())
}

/// Register one workload under both execution modes.
fn run_modes<R: Send>(c: &mut Criterion, name: &str, f: impl Fn() -> R + Sync) {
    #[cfg(feature = "parallel")]
    {
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("pool");
        c.bench_function(&format!("{name}/seq1"), |b| {
            b.iter(|| single.install(|| black_box(f())))
        });
        c.bench_function(&format!("{name}/par"), |b| b.iter(|| black_box(f())));
    }
    #[cfg(not(feature = "parallel"))]
    c.bench_function(&format!("{name}/seq"), |b| b.iter(|| black_box(f())));
}

fn bench_linalg(c: &mut Criterion) {
    let a = seeded_matrix(48, 48, 7);
    let b = seeded_matrix(48, 48, 11);
    run_modes(c, "matmul/48x48-rational", || a.mul(&b));

    let torus = grid_torus(8).expect("valid grid torus");
    let d1 = torus.boundary_matrix(1).expect("in range");
    run_modes(c, "rank/grid-torus-8-boundary-1", || d1.rank());
}

fn bench_homology(c: &mut Criterion) {
    let torus = grid_torus(6).expect("valid grid torus");
    run_modes(c, "homology/grid-torus-6", || homology(&torus));
}

fn bench_invariants(c: &mut Criterion) {
    let torus = Arc::new(grid_torus(4).expect("valid grid torus"));
    run_modes(c, "manifold/grid-torus-4", || {
        Manifold::new(torus.clone()).expect("orientable")
    });

    let corpus = Corpus::builtin();
    let entry = corpus.get("t2-9").expect("built-in");
    let m = Manifold::new(entry.complex.clone()).expect("orientable");
    let shift = entry.map("shift").expect("named");
    let id = entry.map("identity").expect("named");
    run_modes(c, "coincidence/t2-9-shift-id", || {
        coincidence_lefschetz(shift, id, &m, &m).expect("computes")
    });

    let theta = canonical_theta(&m, &m, m.dim()).expect("connected");
    run_modes(c, "theta/t2-9-shift-id", || {
        theta_lefschetz(shift, id, &theta, &m, &m).expect("computes")
    });

    let big = Arc::new(grid_torus(4).expect("valid grid torus"));
    let big_m = Manifold::new(big.clone()).expect("orientable");
    let big_shift = grid_torus_shift(&big, 4).expect("simplicial");
    let big_id = coincidence::SimplicialMap::identity(big.clone());
    run_modes(c, "coincidence/grid-torus-4-shift-id", || {
        coincidence_lefschetz(&big_shift, &big_id, &big_m, &big_m).expect("computes")
    });
}

fn config() -> Criterion {
    Criterion::default()
        .sample_size(10)
        .measurement_time(std::time::Duration::from_secs(3))
        .warm_up_time(std::time::Duration::from_millis(500))
}

criterion_group! {
    name = benches;
    config = config();
    targets = bench_linalg, bench_homology, bench_invariants
}
criterion_main!(benches);
