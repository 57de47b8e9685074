//! Fixtures shared by the benchmarks.

use jordan3::autgroup::{apply_word, random_word};
use jordan3::cdalgebra::{AlgElem, AlgebraId};
use jordan3::classify::{family_representative, Family};
use jordan3::jordan::HMat3;
use jordan3::random::Sampler;
use jordan3::scalar::{Field, Gaussian, Q};

pub fn alg(tag: &str) -> AlgebraId {
    AlgebraId::from_tag(tag).expect("known tag")
}

pub fn elems<F: Field>(tag: &str, seed: u64) -> (AlgElem<F>, AlgElem<F>) {
    let mut s = Sampler::new(seed);
    (s.elem(alg(tag)), s.elem(alg(tag)))
}

pub fn mats<F: Field>(tag: &str, seed: u64) -> (HMat3<F>, HMat3<F>) {
    let mut s = Sampler::new(seed);
    (s.mat(alg(tag)), s.mat(alg(tag)))
}

/// `E + M23` conjugated by a random word: the hardest reduction path.
pub fn hidden_nilpotent(tag: &str, seed: u64) -> HMat3<Gaussian> {
    let a = alg(tag);
    let x = family_representative(a, Family::III3, &[Gaussian::one()]).expect("occurs");
    let mut s = Sampler::new(seed);
    apply_word(&random_word(a, &mut s, 3), &x)
}

/// Generic exact octonion matrix for the Jacobi benchmark.
pub fn octonion_matrix(seed: u64) -> HMat3<Q> {
    Sampler::new(seed).mat(alg("O"))
}
