use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{poly_gcd, rationalize, Field, Poly, C64, Q};
use crate::error::{Error, Result};

/// Root structure of a monic cubic over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct RootStructure<F: Field> {
    /// Number of distinct roots (1, 2 or 3).
    pub distinct_count: usize,
    /// The double or triple root, exact.
    pub repeated_root: Option<F>,
    /// The simple root when there are exactly two distinct roots.
    pub simple_root: Option<F>,
    pub discriminant: F,
    /// Real coefficients: real roots first (descending), then the
    /// conjugate pair with positive imaginary part first. Otherwise
    /// ordered by (re, im).
    pub numeric_roots: [C64; 3],
    /// Realness of each numeric root; `None` for non-real coefficients.
    pub real_flags: Option<[bool; 3]>,
}

fn discriminant<F: Field>(a: &F, b: &F, c: &F) -> F {
    let i = |n| F::from_i64(n);
    let (a, b, c) = (a.clone(), b.clone(), c.clone());
    i(18) * a.clone() * b.clone() * c.clone()
        - i(4) * a.clone() * a.clone() * a.clone() * c.clone()
        + a.clone() * a * b.clone() * b.clone()
        - i(4) * b.clone() * b.clone() * b
        - i(27) * c.clone() * c
}

fn cmp_lex(x: &C64, y: &C64) -> Ordering {
    x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
}

/// Numeric roots of `x^3 + a x^2 + b x + c` (Durand-Kerner, then Newton).
pub(crate) fn numeric_cubic_roots(a: C64, b: C64, c: C64) -> [C64; 3] {
    let f = |z: C64| ((z + a) * z + b) * z + c;
    let df = |z: C64| (3.0 * z + 2.0 * a) * z + b;
    let bound = 1.0 + a.norm().max(b.norm()).max(c.norm());
    let seed = C64::new(0.4, 0.9);
    let mut z = [seed * bound, seed * seed * bound, seed * seed * seed * bound];
    for _ in 0..500 {
        let mut change = 0f64;
        for k in 0..3 {
            let mut den = C64::new(1.0, 0.0);
            for j in 0..3 {
                if j != k {
                    den *= z[k] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = C64::new(1e-300, 0.0);
            }
            let step = f(z[k]) / den;
            z[k] -= step;
            change = change.max(step.norm());
        }
        if change <= 1e-17 * bound {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let d = df(*zk);
            if d.norm() == 0.0 {
                break;
            }
            let next = *zk - f(*zk) / d;
            if f(next).norm() < f(*zk).norm() {
                *zk = next;
            } else {
                break;
            }
        }
    }
    z
}

fn order_real_case(mut z: [C64; 3], all_real: bool) -> ([C64; 3], [bool; 3]) {
    if all_real {
        for w in z.iter_mut() {
            w.im = 0.0;
        }
        z.sort_by(|x, y| y.re.total_cmp(&x.re));
        return (z, [true; 3]);
    }
    // one real root and a conjugate pair
    z.sort_by(|x, y| x.im.abs().total_cmp(&y.im.abs()));
    let real = C64::new(z[0].re, 0.0);
    let re = 0.5 * (z[1].re + z[2].re);
    let im = 0.5 * (z[1].im.abs() + z[2].im.abs());
    ([real, C64::new(re, im), C64::new(re, -im)], [true, false, false])
}

fn exact_sign<F: Field>(x: &F) -> Option<Ordering> {
    let (re, im) = x.to_gaussian()?;
    if !num_traits::Zero::is_zero(&im) {
        return None;
    }
    Some(re.cmp(&Q::from_i64(0)))
}

/// Root structure of a monic cubic over an exact field.
pub fn cubic_root_structure<F: Field>(p: &Poly<F>) -> Result<RootStructure<F>> {
    if !F::EXACT {
        return Err(Error::Precision("root structure needs exact coefficients".into()));
    }
    if p.degree() != Some(3) || p.lead() != Some(&F::one()) {
        return Err(Error::Domain("expected a monic cubic".into()));
    }
    let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let disc = discriminant(&a, &b, &c);
    let real_coeffs = a.is_real() && b.is_real() && c.is_real();
    let g = poly_gcd(p, &p.derivative())?;
    let third = F::from_ratio(1, 3);
    let (distinct, repeated, simple) = match g.degree() {
        Some(0) => (3, None, None),
        Some(1) => {
            let r = -g.coeff(0);
            let s = -a.clone() - F::from_i64(2) * r.clone();
            (2, Some(r), Some(s))
        }
        Some(2) => (1, Some(-a.clone() * third), None),
        _ => return Err(Error::Internal("unexpected gcd degree".into())),
    };
    let roots = match (&repeated, &simple) {
        (Some(r), Some(s)) => [s.to_c64(), r.to_c64(), r.to_c64()],
        (Some(r), None) => [r.to_c64(); 3],
        _ => numeric_cubic_roots(a.to_c64(), b.to_c64(), c.to_c64()),
    };
    let (numeric_roots, real_flags) = if real_coeffs {
        let all_real = distinct < 3 || exact_sign(&disc) == Some(Ordering::Greater);
        let (z, f) = order_real_case(roots, all_real);
        (z, Some(f))
    } else {
        let mut z = roots;
        z.sort_by(cmp_lex);
        (z, None)
    };
    Ok(RootStructure {
        distinct_count: distinct,
        repeated_root: repeated,
        simple_root: simple,
        discriminant: disc,
        numeric_roots,
        real_flags,
    })
}

fn common_denominator<F: Field>(p: &Poly<F>) -> Option<BigInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        let (re, im) = c.to_gaussian()?;
        l = l.lcm(re.denom()).lcm(im.denom());
    }
    Some(l)
}

fn candidates(x: f64, l: &BigInt) -> Vec<Q> {
    let mut out = vec![rationalize(x, 1_000_000)];
    if let Some(lf) = l.to_f64() {
        if lf * x.abs().max(1.0) < 2f64.powi(52) {
            let n = (x * lf).round();
            out.push(Q::new(BigInt::from(n as i128), l.clone()));
        }
    }
    out
}

/// Roots of `p` lying in the coefficient field, found by testing rational
/// candidates near the numeric roots and verified exactly. Listed once each,
/// in the order of `rs.numeric_roots`.
pub fn exact_roots<F: Field>(p: &Poly<F>, rs: &RootStructure<F>) -> Vec<F> {
    let mut found: Vec<F> = Vec::new();
    let push = |found: &mut Vec<F>, r: F| {
        if !found.contains(&r) {
            found.push(r);
        }
    };
    let l = match common_denominator(p) {
        Some(l) => l,
        None => return found,
    };
    for z in rs.numeric_roots {
        if let (Some(r), Some(s)) = (&rs.repeated_root, &rs.simple_root) {
            let pick = if (z - r.to_c64()).norm() <= (z - s.to_c64()).norm() { r } else { s };
            push(&mut found, pick.clone());
            continue;
        }
        if let Some(r) = &rs.repeated_root {
            push(&mut found, r.clone());
            continue;
        }
        'outer: for re in candidates(z.re, &l) {
            let ims = if F::COMPLEX { candidates(z.im, &l) } else { vec![Q::from_i64(0)] };
            for im in ims {
                if let Some(r) = F::from_gaussian(&re, &im) {
                    if p.eval(&r).is_zero() {
                        push(&mut found, r);
                        break 'outer;
                    }
                }
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_gaussian, Gaussian};

    fn pq(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&x| Q::from_i64(x)).collect())
    }

    #[test]
    fn one_real_and_a_conjugate_pair() {
        // (x-1)(x^2+1)
        let rs = cubic_root_structure(&pq(&[-1, 1, -1, 1])).unwrap();
        assert_eq!(rs.distinct_count, 3);
        assert_eq!(rs.real_flags, Some([true, false, false]));
        assert!((rs.numeric_roots[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((rs.numeric_roots[1] - C64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((rs.numeric_roots[2] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!(rs.discriminant < Q::from_i64(0));
    }

    #[test]
    fn double_root_is_exact() {
        // (x-2)^2 (x+1)
        let rs = cubic_root_structure(&pq(&[4, 0, -3, 1])).unwrap();
        assert_eq!(rs.distinct_count, 2);
        assert_eq!(rs.repeated_root, Some(Q::from_i64(2)));
        assert_eq!(rs.simple_root, Some(Q::from_i64(-1)));
        assert_eq!(rs.discriminant, Q::from_i64(0));
    }

    #[test]
    fn triple_root() {
        let rs = cubic_root_structure(&pq(&[-8, 12, -6, 1])).unwrap();
        assert_eq!(rs.distinct_count, 1);
        assert_eq!(rs.repeated_root, Some(Q::from_i64(2)));
    }

    #[test]
    fn three_real_roots_descending() {
        // (x-1)(x-2)(x-3)
        let p = pq(&[-6, 11, -6, 1]);
        let rs = cubic_root_structure(&p).unwrap();
        assert_eq!(rs.real_flags, Some([true; 3]));
        let re: Vec<f64> = rs.numeric_roots.iter().map(|z| z.re).collect();
        assert!((re[0] - 3.0).abs() < 1e-12 && (re[2] - 1.0).abs() < 1e-12);
        assert_eq!(
            exact_roots(&p, &rs),
            vec![Q::from_i64(3), Q::from_i64(2), Q::from_i64(1)]
        );
    }

    #[test]
    fn irrational_roots_are_not_reported_exact() {
        // x (x^2 - 2)
        let p = pq(&[0, -2, 0, 1]);
        let rs = cubic_root_structure(&p).unwrap();
        assert_eq!(exact_roots(&p, &rs), vec![Q::from_i64(0)]);
    }

    #[test]
    fn gaussian_roots() {
        // (x - i)(x + i)(x - 1/2) = x^3 - 1/2 x^2 + x - 1/2
        let g = |s: &str| parse_gaussian(s).unwrap();
        let p: Poly<Gaussian> = Poly::new(vec![g("-1/2"), g("1"), g("-1/2"), g("1")]);
        let rs = cubic_root_structure(&p).unwrap();
        assert_eq!(rs.real_flags.map(|f| f[0]), Some(true));
        let ex = exact_roots(&p, &rs);
        assert_eq!(ex.len(), 3);
        // genuinely complex coefficients: (x - i)^2 (x - 1)
        let expanded = Poly::new(vec![g("-i"), g("1")])
            .mul(&Poly::new(vec![g("-i"), g("1")]))
            .mul(&Poly::new(vec![g("-1"), g("1")]));
        let rs = cubic_root_structure(&expanded).unwrap();
        assert_eq!(rs.distinct_count, 2);
        assert_eq!(rs.repeated_root, Some(g("i")));
        assert_eq!(rs.real_flags, None);
    }

    #[test]
    fn rejects_non_monic_and_float() {
        assert!(cubic_root_structure(&pq(&[1, 0, 0, 2])).is_err());
        let f: Poly<C64> = Poly::new(vec![C64::new(1.0, 0.0); 4]);
        assert!(matches!(cubic_root_structure(&f), Err(Error::Precision(_))));
    }
}
