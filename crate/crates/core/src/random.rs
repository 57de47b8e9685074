//! Seeded sampling of small exact elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdalgebra::{AlgElem, AlgebraId};
use crate::jordan::{special_unit, HMat3};
use crate::scalar::{Field, Q};

pub struct Sampler {
    pub rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// `n/d` with `|n| <= 4`, `1 <= d <= 3`.
    pub fn q(&mut self) -> Q {
        let n: i64 = self.rng.gen_range(-4..=4);
        let d: i64 = self.rng.gen_range(1..=3);
        Q::new(n.into(), d.into())
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> Q {
        Q::from_i64(self.rng.gen_range(lo..=hi))
    }

    /// Real for real algebras, Gaussian for complexified ones.
    pub fn scalar<F: Field>(&mut self, alg: AlgebraId) -> F {
        let re = self.q();
        if alg.is_complexified() && F::COMPLEX {
            let im = self.q();
            F::from_gaussian(&re, &im).expect("complex field")
        } else {
            F::from_q(&re)
        }
    }

    pub fn real<F: Field>(&mut self) -> F {
        F::from_q(&self.q())
    }

    pub fn elem<F: Field>(&mut self, alg: AlgebraId) -> AlgElem<F> {
        AlgElem { alg, coeffs: (0..alg.dim()).map(|_| self.scalar(alg)).collect() }
    }

    /// Element with entries mostly zero, to reach degenerate strata.
    pub fn sparse_elem<F: Field>(&mut self, alg: AlgebraId) -> AlgElem<F> {
        let mut x = AlgElem::zero(alg);
        for k in 0..alg.dim() {
            if self.rng.gen_bool(0.3) {
                x.coeffs[k] = self.scalar(alg);
            }
        }
        x
    }

    pub fn mat<F: Field>(&mut self, alg: AlgebraId) -> HMat3<F> {
        HMat3 {
            alg,
            r: std::array::from_fn(|_| self.scalar(alg)),
            x: std::array::from_fn(|_| self.elem(alg)),
        }
    }

    pub fn real_mat<F: Field>(&mut self, alg: AlgebraId) -> HMat3<F> {
        let mut m = HMat3::zero(alg);
        for i in 0..3 {
            m.r[i] = self.real();
            m.x[i].coeffs = (0..alg.dim()).map(|_| self.real()).collect();
        }
        m
    }

    /// Element of norm `sign` (+1 or -1), obtained by reflecting a base
    /// point of that norm in a random non-isotropic vector. `None` if the
    /// algebra has no element of that norm.
    pub fn unit<F: Field>(&mut self, alg: AlgebraId, sign: i64) -> Option<AlgElem<F>> {
        let base = if sign > 0 {
            AlgElem::one(alg)
        } else if alg.is_division() {
            return None;
        } else {
            special_unit::<F>(alg).ok()?
        };
        for _ in 0..32 {
            let w: AlgElem<F> = self.sparse_elem(alg);
            let n = w.norm();
            let Some(inv) = n.inv() else { continue };
            let c = F::from_i64(2) * base.bilinear(&w) * inv;
            return Some(&base - &w.scale(&c));
        }
        Some(base)
    }

    /// Unit of norm 1 orthogonal to 1.
    pub fn imaginary_unit<F: Field>(&mut self, alg: AlgebraId) -> Option<AlgElem<F>> {
        if alg.dim() < 2 {
            return None;
        }
        for _ in 0..64 {
            let mut w: AlgElem<F> = self.sparse_elem(alg);
            w.coeffs[0] = F::zero();
            if w.is_zero() {
                continue;
            }
            // reflect the imaginary unit e1 (norm 1) through w, staying imaginary
            let e1 = AlgElem::basis(alg, 1);
            let base = if e1.norm() == F::one() { e1 } else { continue };
            let n = w.norm();
            let Some(inv) = n.inv() else { continue };
            let c = F::from_i64(2) * base.bilinear(&w) * inv;
            return Some(&base - &w.scale(&c));
        }
        None
    }

    pub fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        items[self.rng.gen_range(0..items.len())].clone()
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
