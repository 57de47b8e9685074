//! Reference implementations built from full 3x3 matrices over the
//! algebra. They share no code with the closed forms in the parent module
//! and serve as test oracles.

use super::HMat3;
use crate::cdalgebra::AlgElem;
use crate::scalar::Field;

pub type Full<F> = [[AlgElem<F>; 3]; 3];

pub fn to_full<F: Field>(m: &HMat3<F>) -> Full<F> {
    let s = |c: &F| AlgElem::scalar(m.alg, c.clone());
    let [x1, x2, x3] = &m.x;
    [
        [s(&m.r[0]), x3.clone(), x2.conj()],
        [x3.conj(), s(&m.r[1]), x1.clone()],
        [x2.clone(), x1.conj(), s(&m.r[2])],
    ]
}

/// Reads a hermitian matrix back; panics if it is not hermitian.
pub fn from_full<F: Field>(a: &Full<F>) -> HMat3<F> {
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(a[i][j].conj(), a[j][i], "result is not hermitian at ({i},{j})");
        }
        assert!(a[i][i].coeffs[1..].iter().all(|c| c.is_zero()), "diagonal not scalar");
    }
    HMat3 {
        alg: a[0][0].alg,
        r: std::array::from_fn(|i| a[i][i].coeffs[0].clone()),
        x: [a[1][2].clone(), a[2][0].clone(), a[0][1].clone()],
    }
}

pub fn full_mul<F: Field>(a: &Full<F>, b: &Full<F>) -> Full<F> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let p0 = &a[i][0] * &b[0][j];
            let p1 = &a[i][1] * &b[1][j];
            let p2 = &a[i][2] * &b[2][j];
            &(&p0 + &p1) + &p2
        })
    })
}

/// `(XY + YX) / 2` computed entrywise.
pub fn jordan<F: Field>(x: &HMat3<F>, y: &HMat3<F>) -> HMat3<F> {
    let (a, b) = (to_full(x), to_full(y));
    let (p, q) = (full_mul(&a, &b), full_mul(&b, &a));
    let h = F::half();
    let s: Full<F> = std::array::from_fn(|i| std::array::from_fn(|j| (&p[i][j] + &q[i][j]).scale(&h)));
    from_full(&s)
}

pub fn trace<F: Field>(x: &HMat3<F>) -> F {
    to_full(x).iter().enumerate().fold(F::zero(), |acc, (i, row)| acc + row[i].coeffs[0].clone())
}

/// `tr(X o Y)`
pub fn bilinear<F: Field>(x: &HMat3<F>, y: &HMat3<F>) -> F {
    trace(&jordan(x, y))
}

/// `X o Y - 1/2 (tr X Y + tr Y X - (tr X tr Y - (X|Y)) E)`
pub fn cross<F: Field>(x: &HMat3<F>, y: &HMat3<F>) -> HMat3<F> {
    let (tx, ty) = (trace(x), trace(y));
    let e = HMat3::identity(x.alg);
    let inner = y
        .scale(&tx)
        .add(&x.scale(&ty))
        .sub(&e.scale(&(tx.clone() * ty.clone() - bilinear(x, y))));
    jordan(x, y).sub(&inner.scale(&F::half()))
}

/// `(X x X | X) / 3`
pub fn det<F: Field>(x: &HMat3<F>) -> F {
    bilinear(&cross(x, x), x) * F::from_ratio(1, 3)
}
