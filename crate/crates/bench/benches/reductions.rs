use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kqbf::reductions::{reduce_dnf_to_4qbf, reduce_dnf_to_fe_dqbf};
use kqbf_bench::dnf_corpus;

fn two_block(c: &mut Criterion) {
    let mut group = c.benchmark_group("two_block");
    for m in [16, 256, 4096] {
        let corpus = dnf_corpus(4, 20, m);
        for d in [3, 4] {
            group.bench_with_input(
                BenchmarkId::new(format!("d{d}"), m),
                &corpus,
                |b, corpus| {
                    b.iter(|| {
                        for psi in corpus {
                            black_box(reduce_dnf_to_fe_dqbf(psi, d).unwrap().existential_count);
                        }
                    })
                },
            );
        }
    }
    group.finish();
}

fn four_block(c: &mut Criterion) {
    let mut group = c.benchmark_group("four_block");
    for n in [6, 10, 14] {
        let corpus = dnf_corpus(4, n, 10);
        group.bench_with_input(BenchmarkId::from_parameter(n), &corpus, |b, corpus| {
            b.iter(|| {
                for psi in corpus {
                    black_box(reduce_dnf_to_4qbf(psi, 40).unwrap().existential_count);
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, two_block, four_block);
criterion_main!(benches);
