use super::*;
use crate::autgroup::{apply_word, random_word};
use crate::cdalgebra::AlgElem;
use crate::random::Sampler;
use crate::scalar::{parse_gaussian, Gaussian};

fn alg(tag: &str) -> AlgebraId {
    AlgebraId::from_tag(tag).unwrap()
}

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

#[test]
fn distinct_diagonal() {
    let x = HMat3::diag(alg("Cc"), [q(1), q(2), q(3)]);
    let l = orbit_invariants(&x).unwrap();
    assert_eq!((l.multiplicity, l.v, l.family), (3, 3, Family::I));
    assert_eq!(l.real_case, None);
    let l = orbit_invariants(&HMat3::diag(alg("Cs"), [q(1), q(2), q(3)])).unwrap();
    assert_eq!((l.family, l.real_case), (Family::I1, Some(RealCase::AllReal)));
    let Canonical::Exact(c) = canonical_representative(&l, 0).unwrap() else { panic!() };
    assert_eq!(c, HMat3::diag(alg("Cs"), [q(3), q(2), q(1)]));
}

#[test]
fn repeated_root_diagonal() {
    let l = orbit_invariants(&HMat3::diag(alg("Hc"), [q(5), q(2), q(2)])).unwrap();
    assert_eq!((l.multiplicity, l.v, l.family), (2, 2, Family::II1));
    assert_eq!((l.simple_root, l.repeated_root), (Some(q(5)), Some(q(2))));
}

#[test]
fn shifted_nilpotent_of_the_second_kind() {
    let a = alg("Os");
    let x = HMat3::<Q>::identity(a).scale(&q(7)).add(&HMat3::m23(a).unwrap());
    let l = orbit_invariants(&x).unwrap();
    assert_eq!((l.multiplicity, l.v, l.family), (1, 3, Family::III3));
    assert_eq!(l.repeated_root, Some(q(7)));
}

#[test]
fn canonical_examples() {
    let e = |tag, f, p: Vec<Gaussian>| family_representative(alg(tag), f, &p).unwrap();
    let g = |n| Gaussian::from_i64(n);
    assert_eq!(e("Oc", Family::III1, vec![g(4)]), HMat3::identity(alg("Oc")).scale(&g(4)));
    assert_eq!(e("Oc", Family::III3, vec![g(0)]), HMat3::m23(alg("Oc")).unwrap());
    let b = special_unit::<Gaussian>(alg("Os")).unwrap();
    let want = HMat3::diag(alg("Os"), [g(0), g(1), g(1)]).add(&HMat3::f(0, b.scale(&g(2))));
    assert_eq!(e("Os", Family::I2, vec![g(0), g(1), g(2)]), want);
    let l = orbit_invariants(&want).unwrap();
    assert_eq!((l.family, l.real_case), (Family::I2, Some(RealCase::ConjugatePair)));
    // roots 0, 1 + 2i, 1 - 2i
    assert!((l.numeric_roots[1] - C64::new(1.0, 2.0)).norm() < 1e-12);
    assert_eq!(canonical_representative(&l, 5).unwrap(), Canonical::Exact(want));
    assert!(family_representative::<Q>(alg("O"), Family::III1, &[q(1)]).is_err());
    assert!(family_representative::<Q>(alg("Os"), Family::I, &[q(1), q(2), q(3)]).is_err());
    assert!(family_representative::<Q>(alg("Os"), Family::II1, &[q(1)]).is_err());
}

#[test]
fn same_orbit_examples() {
    let a = alg("Hc");
    let m1 = HMat3::<Gaussian>::m1(a).unwrap();
    assert!(same_orbit(&m1, &m1.scale(&Gaussian::from_i64(2))).unwrap());
    assert!(!same_orbit(&m1, &HMat3::m23(a).unwrap()).unwrap());
    let mut s = Sampler::new(1);
    let x: HMat3<Gaussian> = s.mat(a);
    let gx = apply_word(&random_word(a, &mut s, 6), &x);
    assert!(same_orbit(&x, &gx).unwrap());
    assert!(same_orbit(&x, &HMat3::<Gaussian>::zero(alg("Oc"))).is_err());
}

#[test]
fn reports() {
    let r = classify_report(&HMat3::<Q>::identity(alg("Cs"))).unwrap();
    assert_eq!(r.label.family, Family::III1);
    assert_eq!(r.canonical, Canonical::Exact(HMat3::identity(alg("Cs"))));
    let a = alg("Hs");
    let x = HMat3::<Q>::identity(a).add(&HMat3::m1(a).unwrap());
    let r = classify_report(&x).unwrap();
    assert_eq!(r.label.family, Family::III2);
    assert_eq!(r.canonical, Canonical::Exact(x));
    let j = r.to_json();
    assert_eq!(j["label"]["family"], "iii-2");
    assert_eq!(j["label"]["orbit_key"], "Hs|3,3,1|2");
}

#[test]
fn refusals() {
    assert!(matches!(orbit_invariants(&HMat3::<Q>::identity(alg("O"))), Err(Error::Unsupported(_))));
    assert!(matches!(orbit_invariants(&HMat3::<C64>::identity(alg("Os"))), Err(Error::Precision(_))));
    let mut x = HMat3::<Gaussian>::identity(alg("Cs"));
    x.r[0] = parse_gaussian("i").unwrap();
    assert!(matches!(orbit_invariants(&x), Err(Error::Domain(_))));
}

#[test]
fn irrational_roots_fill_numerically() {
    // diag(1, 0, 0) + F3(1) + F1(1): lambda^3 - lambda^2 - 2 lambda + 1
    let a = alg("Cs");
    let x = HMat3::diag(a, [q(1), q(0), q(0)]).add(&HMat3::f(2, AlgElem::one(a))).add(&HMat3::f(0, AlgElem::one(a)));
    let l = orbit_invariants(&x).unwrap();
    assert_eq!(l.family, Family::I1);
    assert!(l.exact_roots.is_empty());
    assert!(canonical_representative(&l, 0).is_err());
    let Canonical::Numeric(c) = canonical_representative(&l, 12).unwrap() else { panic!() };
    let phi = c.char_poly();
    for (k, want) in [1.0, -2.0, -1.0].iter().enumerate() {
        assert!((phi.coeff(k) - C64::new(*want, 0.0)).norm() < 1e-10);
    }
    assert!(c.r[0].re > c.r[1].re && c.r[1].re > c.r[2].re);
}

#[test]
fn planted_families_round_trip() {
    for a in AlgebraId::ALL.into_iter().filter(|a| !a.is_division()) {
        let mut s = Sampler::new(5);
        for f in Family::ALL.into_iter().filter(|f| f.occurs_on(a)) {
            for _ in 0..3 {
                let x: HMat3<Gaussian> = planted_representative(a, f, &mut s).unwrap();
                let l = orbit_invariants(&x).unwrap();
                assert!(ADMISSIBLE.contains(&(l.multiplicity, l.v)));
                let Canonical::Exact(c) = canonical_representative(&l, 0).unwrap() else {
                    panic!("{a} {f}: expected exact canonical")
                };
                assert_eq!(orbit_invariants(&c).unwrap(), l, "{a} {f}");
                let gx = apply_word(&random_word(a, &mut s, 4), &x);
                assert_eq!(orbit_invariants(&gx).unwrap(), l, "{a} {f}");
            }
        }
    }
}

#[test]
fn random_matrices_are_admissible() {
    let mut s = Sampler::new(77);
    for a in AlgebraId::ALL.into_iter().filter(|a| !a.is_division()) {
        for _ in 0..10 {
            let x: HMat3<Gaussian> = if a.is_split() { s.real_mat(a) } else { s.mat(a) };
            let l = orbit_invariants(&x).unwrap();
            assert!(ADMISSIBLE.contains(&(l.multiplicity, l.v)));
            let g = crate::scalar::poly_gcd(&x.char_poly(), &x.char_poly().derivative()).unwrap();
            assert_eq!(l.multiplicity, 3 - g.degree().unwrap());
        }
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn non_division(k: usize) -> AlgebraId {
        AlgebraId::ALL.into_iter().filter(|a| !a.is_division()).nth(k).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn invariants_survive_random_words(k in 0..7usize, f in 0..8usize, seed in any::<u64>()) {
            let a = non_division(k);
            let family = Family::ALL[f];
            prop_assume!(family.occurs_on(a));
            let mut s = Sampler::new(seed);
            let x: HMat3<Gaussian> = planted_representative(a, family, &mut s).unwrap();
            let gx = apply_word(&random_word(a, &mut s, 3), &x);
            let (lx, lg) = (orbit_invariants(&x).unwrap(), orbit_invariants(&gx).unwrap());
            prop_assert_eq!(&lx.char_poly, &lg.char_poly);
            prop_assert_eq!(lx.v, lg.v);
            prop_assert_eq!(lg.family, family);
            prop_assert!(same_orbit(&x, &gx).unwrap());
            prop_assert!(ADMISSIBLE.contains(&(lg.multiplicity, lg.v)));
        }

        #[test]
        fn shifted_root_square_is_nilpotent(k in 0..7usize, f in 0..8usize, seed in any::<u64>()) {
            // (lE - X)^x2 squares to zero at every root l
            let a = non_division(k);
            let family = Family::ALL[f];
            prop_assume!(family.occurs_on(a));
            let mut s = Sampler::new(seed);
            let x: HMat3<Gaussian> = planted_representative(a, family, &mut s).unwrap();
            let gx = apply_word(&random_word(a, &mut s, 2), &x);
            for l in orbit_invariants(&gx).unwrap().exact_roots {
                prop_assert!(gx.shifted(&l).cross_sq().cross_sq().is_zero());
            }
        }

        #[test]
        fn exact_canonical_forms_reproduce_the_label(k in 0..7usize, seed in any::<u64>()) {
            let a = non_division(k);
            let mut s = Sampler::new(seed);
            let x: HMat3<Gaussian> = s.mat(a);
            let label = orbit_invariants(&x).unwrap();
            if let Canonical::Exact(c) = canonical_representative(&label, DEFAULT_DIGITS).unwrap() {
                prop_assert!(same_orbit(&x, &c).unwrap());
            }
        }
    }
}
