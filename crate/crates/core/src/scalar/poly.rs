use super::{Field, Gaussian, Scalar, Q};
use crate::error::{Error, Result};

/// Univariate polynomial, coefficients stored lowest degree first with no
/// trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn monomial(c: F, deg: usize) -> Self {
        let mut v = vec![F::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead().and_then(|l| l.inv()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let inv = divisor.lead()?.inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() * inv.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * b.clone();
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }
}

/// Monic greatest common divisor over an exact field; `gcd(0, 0) = 0`.
pub fn poly_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    if !F::EXACT {
        return Err(Error::Precision(
            "polynomial gcd needs exact coefficients".into(),
        ));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part<F: Field>(p: &Poly<F>) -> Result<Poly<F>> {
    if p.is_zero() {
        return Ok(Poly::zero());
    }
    let g = poly_gcd(p, &p.derivative())?;
    let (q, _) = p.div_rem(&g).expect("gcd of a nonzero polynomial is nonzero");
    Ok(q.monic())
}

/// gcd of polynomials given as dynamic scalars (lowest degree first).
/// All coefficients must share an exact variant; rationals are promoted to
/// Gaussians when the other side is Gaussian.
pub fn scalar_poly_gcd(a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
    let all = a.iter().chain(b);
    if all.clone().any(|s| !s.is_exact()) {
        if all.clone().any(|s| s.is_exact()) {
            return Err(Error::VariantMismatch(
                "mixed exact and float polynomial coefficients".into(),
            ));
        }
        return Err(Error::Precision(
            "polynomial gcd needs exact coefficients".into(),
        ));
    }
    if all.clone().any(|s| matches!(s, Scalar::Gaussian(_))) {
        let conv = |v: &[Scalar]| -> Result<Poly<Gaussian>> {
            Ok(Poly::new(v.iter().map(Gaussian::from_scalar).collect::<Result<_>>()?))
        };
        let g = poly_gcd(&conv(a)?, &conv(b)?)?;
        Ok(g.coeffs().iter().map(Field::to_scalar).collect())
    } else {
        let conv = |v: &[Scalar]| -> Result<Poly<Q>> {
            Ok(Poly::new(v.iter().map(Q::from_scalar).collect::<Result<_>>()?))
        };
        let g = poly_gcd(&conv(a)?, &conv(b)?)?;
        Ok(g.coeffs().iter().map(Field::to_scalar).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C64;
    use proptest::prelude::*;

    fn pq(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&x| Q::from_i64(x)).collect())
    }

    #[test]
    fn gcd_of_double_root_cubic_and_derivative() {
        // (x-2)^2 (x+1) = x^3 - 3x^2 + 4
        let p = pq(&[4, 0, -3, 1]);
        assert_eq!(poly_gcd(&p, &p.derivative()).unwrap(), pq(&[-2, 1]));
    }

    #[test]
    fn gcd_edge_cases() {
        assert!(poly_gcd(&Poly::<Q>::zero(), &Poly::zero()).unwrap().is_zero());
        let p = pq(&[3, 6]);
        assert_eq!(poly_gcd(&p, &Poly::zero()).unwrap(), pq(&[1, 2]).monic());
        let f = Poly::new(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        assert!(matches!(poly_gcd(&f, &f), Err(Error::Precision(_))));
    }

    #[test]
    fn squarefree_of_triple_root() {
        // (x-1)^3
        let p = pq(&[-1, 3, -3, 1]);
        assert_eq!(squarefree_part(&p).unwrap(), pq(&[-1, 1]));
    }

    #[test]
    fn dynamic_gcd_rejects_mixed_variants() {
        let a = vec![Scalar::parse("1").unwrap(), Scalar::Float(C64::new(1.0, 0.0))];
        let b = vec![Scalar::parse("1").unwrap()];
        assert!(matches!(scalar_poly_gcd(&a, &b), Err(Error::VariantMismatch(_))));
        let a = vec![Scalar::parse("-1").unwrap(), Scalar::parse("0").unwrap(), Scalar::parse("1").unwrap()];
        let b = vec![Scalar::parse("i").unwrap(), Scalar::parse("1").unwrap()];
        // x^2 - 1 and x + i are coprime
        assert_eq!(scalar_poly_gcd(&a, &b).unwrap(), vec![Scalar::Gaussian(Gaussian::from_q(&Q::from_i64(1)))]);
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in prop::collection::vec(-5i64..5, 1..5),
                            b in prop::collection::vec(-5i64..5, 1..5),
                            c in prop::collection::vec(-5i64..5, 1..4)) {
            let (a, b, c) = (pq(&a), pq(&b), pq(&c));
            let (x, y) = (a.mul(&c), b.mul(&c));
            let g = poly_gcd(&x, &y).unwrap();
            if !g.is_zero() {
                prop_assert!(x.div_rem(&g).unwrap().1.is_zero());
                prop_assert!(y.div_rem(&g).unwrap().1.is_zero());
                // the common factor divides the gcd
                if !c.is_zero() {
                    prop_assert!(g.div_rem(&c).unwrap().1.is_zero());
                }
            }
        }

        #[test]
        fn div_rem_reconstructs(a in prop::collection::vec(-9i64..9, 0..6),
                                b in prop::collection::vec(-9i64..9, 1..4)) {
            let (a, b) = (pq(&a), pq(&b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
