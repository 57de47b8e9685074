use criterion::{black_box, criterion_group, criterion_main, Criterion};

use jordan3::autgroup::{random_word, verify_automorphism, GroupElem};
use jordan3::classify::orbit_invariants;
use jordan3::random::Sampler;
use jordan3::reduce::{jacobi_sweep, reduce_to_canonical};
use jordan3::scalar::{Gaussian, Q};
use jordan3_bench::{alg, elems, hidden_nilpotent, mats, octonion_matrix};

fn algebra(c: &mut Criterion) {
    let (x, y) = elems::<Q>("O", 1);
    c.bench_function("octonion product (Q)", |b| b.iter(|| black_box(&x) * black_box(&y)));
    let (x, y) = elems::<Gaussian>("Oc", 1);
    c.bench_function("complex octonion product (Q(i))", |b| b.iter(|| black_box(&x) * black_box(&y)));
}

fn jordan(c: &mut Criterion) {
    let (x, y) = mats::<Q>("Os", 2);
    c.bench_function("cross product J3(Os)", |b| b.iter(|| black_box(&x).cross(black_box(&y))));
    c.bench_function("det J3(Os)", |b| b.iter(|| black_box(&x).det()));
    c.bench_function("v_dim J3(Os)", |b| b.iter(|| black_box(&x).v_dim()));
}

fn classify(c: &mut Criterion) {
    let x = hidden_nilpotent("Oc", 3);
    c.bench_function("orbit invariants, hidden E + M23 over Oc", |b| b.iter(|| orbit_invariants(black_box(&x))));
}

fn group(c: &mut Criterion) {
    let a = alg("Hs");
    let word = random_word::<Q>(a, &mut Sampler::new(4), 4);
    c.bench_function("word to matrix, Hs length 4", |b| b.iter(|| GroupElem::from_word(a, black_box(word.clone()))));
    let g = GroupElem::from_word(a, word).expect("valid word");
    c.bench_function("verify_automorphism, Hs length 4", |b| b.iter(|| verify_automorphism(black_box(&g), 0)));
}

fn reduce(c: &mut Criterion) {
    let x = hidden_nilpotent("Os", 5);
    c.bench_function("reduce hidden E + M23 over Os", |b| b.iter(|| reduce_to_canonical(black_box(&x))));
    let o = octonion_matrix(6).to_c64();
    c.bench_function("jacobi J3(O)", |b| b.iter(|| jacobi_sweep(black_box(&o))));
}

criterion_group!(benches, algebra, jordan, classify, group, reduce);
criterion_main!(benches);
