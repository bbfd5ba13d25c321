use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mvcurl_core::ansatz::{collect_linear_system, multivector_basis};
use mvcurl_core::curl::curl;
use mvcurl_core::identities::{run_identity, Identity};
use mvcurl_core::{Execution, VolumeForm};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn identity_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("identity-suite");
    group.sample_size(10);
    for identity in [Identity::SchoutenCurlWedge, Identity::CurlSquared] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(identity.name(), name), &exec, |b, &exec| {
                b.iter(|| run_identity(identity, black_box(1), 16, exec))
            });
        }
    }
    group.finish();
}

fn linear_system(c: &mut Criterion) {
    let mut group = c.benchmark_group("collect-linear-system");
    group.sample_size(10);
    let basis = multivector_basis(4, 2, 2);
    let v = VolumeForm::unit(4);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| collect_linear_system(black_box(&basis), |a| curl(&v, a), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, identity_suite, linear_system);
criterion_main!(benches);
