//! Compares the rayon-backed ensemble map against the sequential reference
//! on the two hot workloads: Haar block-entropy realizations and Page
//! random-state samples.
//!
//! Run with `cargo bench -p ffent-core`; build with
//! `--no-default-features` to bench the sequential build alone.

use criterion::{criterion_group, criterion_main, Criterion};

use ffent_core::ensembles::{sample_haar_unitary, EntryDistribution, RngStream};
use ffent_core::fermion::{entanglement_entropy, restricted_projection, EntropyBase};
use ffent_core::radiation::{random_pure_state, reduced_density_matrix, von_neumann_entropy};
use ffent_core::{exec, Result};

fn haar_realization(i: usize) -> Result<f64> {
    let (n, k, l) = (96, 48, 48);
    let u = sample_haar_unitary(&RngStream::new(17, i as u64), n);
    let p = u.as_complex().block(0..n, 0..k)?.gram();
    let pb = restricted_projection(&p, l)?;
    Ok(entanglement_entropy(&pb, EntropyBase::Bits)?.entropy)
}

fn page_sample(i: usize) -> Result<f64> {
    let state = random_pure_state(
        &RngStream::new(23, i as u64),
        48,
        96,
        EntryDistribution::ComplexGaussian,
    )?;
    von_neumann_entropy(&reduced_density_matrix(&state), EntropyBase::Nats)
}

fn bench_haar_ensemble(c: &mut Criterion) {
    let reals = 16;
    let mut group = c.benchmark_group("haar_block_entropy_16x96");
    group.sample_size(10);
    group.bench_function("map_indexed", |b| {
        b.iter(|| {
            let out = exec::map_indexed(reals, haar_realization);
            out.into_iter().map(|r| r.unwrap()).sum::<f64>()
        })
    });
    group.bench_function("map_indexed_seq", |b| {
        b.iter(|| {
            let out = exec::map_indexed_seq(reals, haar_realization);
            out.into_iter().map(|r| r.unwrap()).sum::<f64>()
        })
    });
    group.finish();
}

fn bench_page_ensemble(c: &mut Criterion) {
    let samples = 32;
    let mut group = c.benchmark_group("page_states_32x48");
    group.sample_size(10);
    group.bench_function("map_indexed", |b| {
        b.iter(|| {
            let out = exec::map_indexed(samples, page_sample);
            out.into_iter().map(|r| r.unwrap()).sum::<f64>()
        })
    });
    group.bench_function("map_indexed_seq", |b| {
        b.iter(|| {
            let out = exec::map_indexed_seq(samples, page_sample);
            out.into_iter().map(|r| r.unwrap()).sum::<f64>()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_haar_ensemble, bench_page_ensemble);
criterion_main!(benches);
