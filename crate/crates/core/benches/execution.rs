use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use posetres::classical::taylor;
use posetres::io::parse_ideal;
use posetres::verify::{betti_oracle, verify_resolution};
use posetres::{build_sequence, random, Execution, LcmLattice, MonomialIdeal, Rationals, Variant};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn rp2() -> MonomialIdeal {
    parse_ideal(include_str!("../fixtures/rp2.ideal")).unwrap().ideal
}

fn sequence(c: &mut Criterion) {
    let lattice = LcmLattice::build(&rp2(), 22).unwrap();
    let poset = random::ranked_poset(&mut ChaCha8Rng::seed_from_u64(1), 25, true);
    let mut g = c.benchmark_group("build_sequence");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("rp2_gamma", name), &exec, |b, &exec| {
            b.iter(|| build_sequence(black_box(lattice.poset()), &Rationals, Variant::Gamma, exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("rp2_delta", name), &exec, |b, &exec| {
            b.iter(|| build_sequence(black_box(lattice.poset()), &Rationals, Variant::Delta, exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("ranked25_delta", name), &exec, |b, &exec| {
            b.iter(|| build_sequence(black_box(&poset), &Rationals, Variant::Delta, exec).unwrap())
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let ideal = rp2();
    let mut g = c.benchmark_group("betti_oracle");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("rp2", name), &exec, |b, &exec| {
            b.iter(|| betti_oracle(&Rationals, black_box(&ideal), 22, exec).unwrap())
        });
    }
    g.finish();
}

fn verification(c: &mut Criterion) {
    let ideal = random::ideal(&mut ChaCha8Rng::seed_from_u64(2), 4, 8, 3);
    let t = taylor(&Rationals, &ideal, 22).unwrap();
    let mut g = c.benchmark_group("verify_resolution");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("taylor", name), &exec, |b, &exec| {
            b.iter(|| verify_resolution(black_box(&t), &ideal, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sequence, oracle, verification);
criterion_main!(benches);
