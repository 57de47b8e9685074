use super::*;
use crate::random::Sampler;
use crate::scalar::{Gaussian, Q};

fn alg(tag: &str) -> AlgebraId {
    AlgebraId::from_tag(tag).unwrap()
}

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

#[test]
fn product_tables() {
    let a = alg("Os");
    let mut s = Sampler::new(1);
    let h = Q::half();
    for _ in 0..10 {
        let (x, y): (AlgElem<Q>, AlgElem<Q>) = (s.elem(a), s.elem(a));
        for i in 0..3 {
            let (j, k) = (nxt(i), prv(i));
            let e = |m| HMat3::<Q>::e(a, m);
            let f = |m, v: &AlgElem<Q>| HMat3::f(m, v.clone());
            assert_eq!(e(i).jordan(&e(i)), e(i));
            assert!(e(i).jordan(&e(j)).is_zero());
            assert!(e(i).jordan(&f(i, &x)).is_zero());
            assert_eq!(e(i).jordan(&f(j, &x)), f(j, &x).scale(&h));
            assert_eq!(f(i, &x).jordan(&f(i, &y)), e(j).add(&e(k)).scale(&x.bilinear(&y)));
            assert_eq!(f(i, &x).jordan(&f(j, &y)), f(k, &(&x * &y).conj()).scale(&h));

            assert!(e(i).cross(&e(i)).is_zero());
            assert_eq!(e(i).cross(&e(j)), e(k).scale(&h));
            assert_eq!(e(i).cross(&f(i, &x)), f(i, &x).scale(&-h.clone()));
            assert!(e(i).cross(&f(j, &x)).is_zero());
            assert_eq!(f(i, &x).cross(&f(i, &y)), e(i).scale(&-x.bilinear(&y)));
            assert_eq!(f(i, &x).cross(&f(j, &y)), f(k, &(&x * &y).conj()).scale(&h));
        }
    }
}

fn closed_vs_oracle<F: Field>(tag: &str, seed: u64) {
    let a = alg(tag);
    let mut s = Sampler::new(seed);
    for _ in 0..5 {
        let (x, y): (HMat3<F>, HMat3<F>) = (s.mat(a), s.mat(a));
        assert_eq!(x.jordan(&y), oracle::jordan(&x, &y));
        assert_eq!(x.bilinear(&y), oracle::bilinear(&x, &y));
        assert_eq!(x.cross(&y), oracle::cross(&x, &y));
        assert_eq!(x.det(), oracle::det(&x));
        assert_eq!(x.trace_cross_sq(), x.cross_sq().trace());
    }
}

#[test]
fn closed_forms_match_definitions() {
    for tag in ["R", "C", "H", "O", "Cs", "Hs", "Os"] {
        closed_vs_oracle::<Q>(tag, 7);
    }
    for tag in ["Rc", "Cc", "Hc", "Oc"] {
        closed_vs_oracle::<Gaussian>(tag, 7);
    }
}

#[test]
fn hamilton_cayley_and_jordan_identity() {
    for tag in ["O", "Os"] {
        let a = alg(tag);
        let mut s = Sampler::new(3);
        for _ in 0..5 {
            let (x, y): (HMat3<Q>, HMat3<Q>) = (s.mat(a), s.mat(a));
            let d = x.det();
            let sq = x.cross_sq();
            assert_eq!(sq.jordan(&x), HMat3::identity(a).scale(&d));
            assert_eq!(sq.cross_sq(), x.scale(&d));
            let xx = x.jordan(&x);
            assert_eq!(x.jordan(&xx.jordan(&y)), xx.jordan(&x.jordan(&y)));
            let e = HMat3::identity(a);
            assert_eq!(e.cross(&x).scale(&q(2)), e.scale(&x.trace()).sub(&x));
        }
    }
}

#[test]
fn char_poly_and_delta_on_diagonal() {
    let a = alg("Hs");
    let x = HMat3::diag(a, [q(1), q(2), q(3)]);
    // (l-1)(l-2)(l-3)
    assert_eq!(x.char_poly().coeffs(), &[q(-6), q(11), q(-6), q(1)]);
    assert_eq!(x.delta(&q(1)), Q::new(1.into(), 2.into()));
    assert_eq!(x.v_dim().unwrap(), 3);
    assert_eq!(HMat3::<Q>::diag(a, [q(2), q(2), q(5)]).v_dim().unwrap(), 2);
    assert_eq!(HMat3::<Q>::identity(a).scale(&q(4)).v_dim().unwrap(), 1);
    let f = HMat3::<crate::scalar::C64>::identity(a);
    assert!(matches!(f.v_dim(), Err(Error::Precision(_))));
}

#[test]
fn trace_identities() {
    for tag in ["C", "Hs", "Oc"] {
        let a = alg(tag);
        let mut s = Sampler::new(5);
        let x: HMat3<Gaussian> = s.mat(a);
        let d = Gaussian::from_i64(a.dim() as i64);
        assert_eq!(x.jordan_left_trace(), (d.clone() + Gaussian::one()) * x.trace());
        assert_eq!(x.cross_left_trace(), -Gaussian::half() * d * x.trace());
    }
}

#[test]
fn special_nilpotents() {
    for tag in ["Rc", "Cc", "Hc", "Oc"] {
        let a = alg(tag);
        let m1 = HMat3::<Gaussian>::m1(a).unwrap();
        let m23 = HMat3::<Gaussian>::m23(a).unwrap();
        assert!(m1.cross_sq().is_zero());
        assert_eq!(m23.cross_sq(), m1);
        let mem = Membership::of(&m1).unwrap();
        assert!(mem.m1 && !mem.m23 && mem.n1);
        let mem = Membership::of(&m23).unwrap();
        assert!(mem.m23 && !mem.m1 && mem.n2);
        assert_eq!(Membership::of(&m1).unwrap().s2_value, Some(Gaussian::zero()));
    }
    for tag in ["Cs", "Hs", "Os"] {
        let a = alg(tag);
        let m1 = HMat3::<Q>::m1(a).unwrap();
        let m23 = HMat3::<Q>::m23(a).unwrap();
        assert!(m1.cross_sq().is_zero());
        assert_eq!(m23.cross_sq(), m1);
        assert!(Membership::of(&m23).unwrap().n2);
    }
    assert!(matches!(HMat3::<Q>::m1(alg("O")), Err(Error::Unsupported(_))));
}

#[test]
fn nilpotent_cross_products() {
    let mut s = Sampler::new(11);
    let a = alg("Oc");
    for _ in 0..5 {
        let (x, y): (AlgElem<Gaussian>, AlgElem<Gaussian>) = (s.elem(a), s.elem(a));
        let m = |v: &AlgElem<Gaussian>| HMat3::m1_of(v).unwrap();
        let n = |v: &AlgElem<Gaussian>| HMat3::m23_of(v).unwrap();
        let c = x.bilinear(&y) - x.real_part() * y.real_part();
        assert_eq!(m(&x).cross(&m(&y)), HMat3::e(a, 0).scale(&c));
        assert_eq!(n(&x).cross(&n(&y)), HMat3::m1(a).unwrap().scale(&x.bilinear(&y)));
    }
    let a = alg("Os");
    for _ in 0..5 {
        let (x, y): (AlgElem<Q>, AlgElem<Q>) = (s.elem(a), s.elem(a));
        let m = |v: &AlgElem<Q>| HMat3::m1_of(v).unwrap();
        let n = |v: &AlgElem<Q>| HMat3::m23_of(v).unwrap();
        let c = x.bilinear(&y) - x.real_part() * y.real_part();
        assert_eq!(m(&x).cross(&m(&y)), HMat3::e(a, 0).scale(&c));
        assert_eq!(n(&x).cross(&n(&y)), HMat3::m1(a).unwrap().scale(&x.bilinear(&y)));
    }
}

#[test]
fn spectral_idempotent_lies_in_p2() {
    let a = alg("Os");
    let mut s = Sampler::new(2);
    let x: HMat3<Q> = s.mat(a);
    // pick a rational diagonal case so the eigenvalue is exact
    let d = HMat3::diag(a, [q(2), q(5), q(2)]);
    let p = d.spectral_idempotent(&q(5)).unwrap();
    assert_eq!(p, HMat3::e(a, 1));
    assert!(d.spectral_idempotent(&q(2)).is_err());
    let _ = x;
}

#[test]
fn delta_and_derivative_agree() {
    let a = alg("Hc");
    let mut s = Sampler::new(9);
    let x: HMat3<Gaussian> = s.mat(a);
    let l = Gaussian::from_ratio(3, 2);
    let dphi = x.char_poly().derivative().eval(&l);
    assert_eq!(dphi.clone(), x.shifted(&l).cross_sq().trace());
    let t = x.trace();
    let rhs = Gaussian::from_i64(-2) * x.delta(&l)
        - Gaussian::half() * (t.clone() * t - Gaussian::from_i64(3) * x.bilinear(&x));
    assert_eq!(dphi, rhs);
}

#[test]
fn json_round_trip_and_hermitian_rows() {
    let a = alg("Os");
    let mut s = Sampler::new(4);
    let x: HMat3<Q> = s.mat(a);
    let raw = RawMat::from_json(&x.to_json(), None).unwrap();
    assert_eq!(HMat3::<Q>::from_raw(&raw).unwrap(), x);

    let rows = serde_json::json!({
        "algebra": "C",
        "rows": [[["1","0"], ["0","1"], ["2","0"]],
                 [["0","-1"], ["3","0"], ["0","0"]],
                 [["2","0"], ["0","0"], ["5","0"]]]
    });
    let m = HMat3::<Q>::from_raw(&RawMat::from_json(&rows, None).unwrap()).unwrap();
    assert_eq!(m.r, [q(1), q(3), q(5)]);
    assert_eq!(m.x[2].coeffs, vec![q(0), q(1)]);
    let bad = serde_json::json!({
        "algebra": "C",
        "rows": [[["1","0"], ["0","1"], ["0","0"]],
                 [["0","1"], ["3","0"], ["0","0"]],
                 [["0","0"], ["0","0"], ["5","0"]]]
    });
    assert!(matches!(RawMat::from_json(&bad, None), Err(Error::Domain(_))));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn sample(k: usize, seed: u64) -> (HMat3<Gaussian>, HMat3<Gaussian>) {
        let a = AlgebraId::ALL[k];
        let mut s = Sampler::new(seed);
        (s.mat(a), s.mat(a))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn hamilton_cayley_triple(k in 0..11usize, seed in any::<u64>()) {
            let (x, _) = sample(k, seed);
            let e = HMat3::identity(x.alg);
            let (sq, tr, d) = (x.cross_sq(), x.trace(), x.det());
            let trsq = sq.trace();
            // X^x2 x X = -1/2 (tr X X^x2 + tr(X^x2) X - (tr(X^x2) tr X - det X) E)
            let rhs = sq.scale(&tr).add(&x.scale(&trsq)).sub(&e.scale(&(trsq.clone() * tr.clone() - d.clone())));
            prop_assert_eq!(sq.cross(&x), rhs.scale(&-Gaussian::half()));
            prop_assert_eq!(sq.jordan(&x), e.scale(&d));
            prop_assert_eq!(sq.cross_sq(), x.scale(&d));
        }

        #[test]
        fn trilinear_form_is_symmetric(k in 0..11usize, seed in any::<u64>()) {
            let (x, y) = sample(k, seed);
            let z = x.add(&y.scale(&Gaussian::from_i64(3)));
            let t = x.trilinear(&y, &z);
            prop_assert_eq!(t.clone(), y.trilinear(&z, &x));
            prop_assert_eq!(t, z.trilinear(&y, &x));
            prop_assert_eq!(x.cross(&y), y.cross(&x));
        }

        #[test]
        fn tau_commutes_with_the_structure(k in 0..11usize, seed in any::<u64>()) {
            let (x, y) = sample(k, seed);
            prop_assert_eq!(x.tau().det(), x.det().conj());
            prop_assert_eq!(x.tau().cross(&y.tau()), x.cross(&y).tau());
            prop_assert_eq!(x.tau().jordan(&y.tau()), x.jordan(&y).tau());
            prop_assert_eq!(x.gamma().det(), x.det());
        }

        #[test]
        fn characteristic_derivative_is_a_trace(k in 0..11usize, seed in any::<u64>(), l in -5i64..5) {
            let (x, _) = sample(k, seed);
            let l = Gaussian::from_i64(l);
            // Phi'(l) = tr((lE - X)^x2)
            let p = x.char_poly().derivative().eval(&l);
            prop_assert_eq!(p, x.shifted(&l).cross_sq().trace());
        }
    }
}
