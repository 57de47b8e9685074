//! Scalar fields used throughout the crate.
//!
//! Three concrete fields implement [`Field`]: exact rationals ([`Q`]),
//! exact Gaussian rationals ([`Gaussian`]) and complex doubles ([`C64`]).
//! Algebra and matrix code is generic over the field, so exact and float
//! values cannot be mixed by accident. The dynamic [`Scalar`] enum is what
//! crosses the serialization boundary.

mod cubic;
mod gaussian;
mod poly;
mod text;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use cubic::{cubic_root_structure, exact_roots, RootStructure};
pub use gaussian::Gaussian;
pub use num_complex::Complex64 as C64;
pub use num_rational::BigRational as Q;
pub use poly::{poly_gcd, scalar_poly_gcd, squarefree_part, Poly};
pub use text::{parse_gaussian, parse_rational};

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Exact arithmetic (equality tests are meaningful).
    const EXACT: bool;
    /// Contains a square root of -1.
    const COMPLEX: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_q(q: &Q) -> Self;
    /// `None` when the field is real and `im` is nonzero.
    fn from_gaussian(re: &Q, im: &Q) -> Option<Self>;
    /// Only the float field accepts doubles.
    fn from_c64(z: C64) -> Option<Self>;
    fn imag_unit() -> Option<Self>;
    /// Complex conjugation of the scalar (identity on real fields).
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn to_c64(&self) -> C64;
    /// Real and imaginary parts, for exact fields only.
    fn to_gaussian(&self) -> Option<(Q, Q)>;
    fn to_scalar(&self) -> Scalar;
    fn from_scalar(s: &Scalar) -> Result<Self>;

    fn half() -> Self {
        Self::from_q(&Q::new(BigInt::one(), BigInt::from(2)))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_q(&Q::new(BigInt::from(n), BigInt::from(d)))
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn re(&self) -> Self {
        (self.clone() + self.conj()) * Self::half()
    }

    fn is_real(&self) -> bool {
        self.conj() == *self
    }

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Exact equality for exact fields; relative tolerance for floats.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            let (a, b) = (self.to_c64(), other.to_c64());
            (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
        }
    }
}

impl Field for Q {
    const EXACT: bool = true;
    const COMPLEX: bool = false;
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        Q::from_integer(BigInt::from(n))
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn from_gaussian(re: &Q, im: &Q) -> Option<Self> {
        Zero::is_zero(im).then(|| re.clone())
    }
    fn from_c64(_: C64) -> Option<Self> {
        None
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn to_c64(&self) -> C64 {
        C64::new(q_to_f64(self), 0.0)
    }
    fn to_gaussian(&self) -> Option<(Q, Q)> {
        Some((self.clone(), <Q as Field>::zero()))
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Rational(q) => Ok(q.clone()),
            Scalar::Gaussian(g) if Zero::is_zero(&g.im) => Ok(g.re.clone()),
            Scalar::Gaussian(_) => Err(Error::Domain(
                "non-real scalar where a real one is required".into(),
            )),
            Scalar::Float(_) => Err(Error::VariantMismatch(
                "float scalar where an exact one is required".into(),
            )),
        }
    }
}

impl Field for Gaussian {
    const EXACT: bool = true;
    const COMPLEX: bool = true;
    const NAME: &'static str = "gaussian";

    fn zero() -> Self {
        Gaussian::new(<Q as Field>::zero(), <Q as Field>::zero())
    }
    fn one() -> Self {
        Gaussian::new(<Q as Field>::one(), <Q as Field>::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn from_i64(n: i64) -> Self {
        Gaussian::new(Q::from_i64(n), <Q as Field>::zero())
    }
    fn from_q(q: &Q) -> Self {
        Gaussian::new(q.clone(), <Q as Field>::zero())
    }
    fn from_gaussian(re: &Q, im: &Q) -> Option<Self> {
        Some(Gaussian::new(re.clone(), im.clone()))
    }
    fn from_c64(_: C64) -> Option<Self> {
        None
    }
    fn imag_unit() -> Option<Self> {
        Some(Gaussian::new(<Q as Field>::zero(), <Q as Field>::one()))
    }
    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn to_c64(&self) -> C64 {
        C64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
    fn to_gaussian(&self) -> Option<(Q, Q)> {
        Some((self.re.clone(), self.im.clone()))
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Gaussian(self.clone())
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Rational(q) => Ok(Gaussian::from_q(q)),
            Scalar::Gaussian(g) => Ok(g.clone()),
            Scalar::Float(_) => Err(Error::VariantMismatch(
                "float scalar where an exact one is required".into(),
            )),
        }
    }
}

impl Field for C64 {
    const EXACT: bool = false;
    const COMPLEX: bool = true;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn from_q(q: &Q) -> Self {
        C64::new(q_to_f64(q), 0.0)
    }
    fn from_gaussian(re: &Q, im: &Q) -> Option<Self> {
        Some(C64::new(q_to_f64(re), q_to_f64(im)))
    }
    fn from_c64(z: C64) -> Option<Self> {
        Some(z)
    }
    fn imag_unit() -> Option<Self> {
        Some(C64::new(0.0, 1.0))
    }
    fn conj(&self) -> Self {
        num_complex::Complex::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Field::is_zero(self)).then(|| 1.0 / *self)
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn to_gaussian(&self) -> Option<(Q, Q)> {
        None
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Float(z) => Ok(*z),
            _ => Err(Error::VariantMismatch(
                "exact scalar where a float one is required".into(),
            )),
        }
    }
}

pub fn q_to_f64(q: &Q) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // huge numerator/denominator: shift both down first
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn q_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions).
pub fn rationalize(x: f64, max_den: i64) -> Q {
    if !x.is_finite() {
        return <Q as Field>::zero();
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-14 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return Q::from_integer(BigInt::from(x.round() as i128));
    }
    Q::new(BigInt::from(h1), BigInt::from(k1))
}

/// A scalar whose field is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Q),
    Gaussian(Gaussian),
    Float(C64),
}

impl Scalar {
    pub fn tag(&self) -> &'static str {
        match self {
            Scalar::Rational(_) => "rational",
            Scalar::Gaussian(_) => "gaussian",
            Scalar::Float(_) => "float",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => Field::is_zero(q),
            Scalar::Gaussian(g) => Field::is_zero(g),
            Scalar::Float(z) => Field::is_zero(z),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Float(_))
    }

    fn lift(a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar)> {
        use Scalar::*;
        match (a, b) {
            (Float(_), Float(_)) | (Rational(_), Rational(_)) | (Gaussian(_), Gaussian(_)) => {
                Ok((a.clone(), b.clone()))
            }
            (Rational(x), Gaussian(_)) => Ok((Gaussian(gaussian::Gaussian::from_q(x)), b.clone())),
            (Gaussian(_), Rational(y)) => Ok((a.clone(), Gaussian(gaussian::Gaussian::from_q(y)))),
            _ => Err(Error::VariantMismatch(format!(
                "cannot combine {} with {}",
                a.tag(),
                b.tag()
            ))),
        }
    }

    fn binop(
        &self,
        other: &Scalar,
        fq: fn(Q, Q) -> Option<Q>,
        fg: fn(Gaussian, Gaussian) -> Option<Gaussian>,
        ff: fn(C64, C64) -> Option<C64>,
    ) -> Result<Scalar> {
        let div_err = || Error::Domain("division by zero".into());
        match Scalar::lift(self, other)? {
            (Scalar::Rational(a), Scalar::Rational(b)) => fq(a, b).map(Scalar::Rational).ok_or_else(div_err),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => fg(a, b).map(Scalar::Gaussian).ok_or_else(div_err),
            (Scalar::Float(a), Scalar::Float(b)) => ff(a, b).map(Scalar::Float).ok_or_else(div_err),
            _ => unreachable!(),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.binop(other, |a, b| Some(a + b), |a, b| Some(a + b), |a, b| Some(a + b))
    }
    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.binop(other, |a, b| Some(a - b), |a, b| Some(a - b), |a, b| Some(a - b))
    }
    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.binop(other, |a, b| Some(a * b), |a, b| Some(a * b), |a, b| Some(a * b))
    }
    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.binop(other, |a, b| a.div(&b), |a, b| a.div(&b), |a, b| Field::div(&a, &b))
    }

    /// Parse the textual exact form (`"p/q"` or `"p/q+r/s*i"`).
    pub fn parse(s: &str) -> Result<Scalar> {
        if s.contains('i') {
            parse_gaussian(s).map(Scalar::Gaussian)
        } else {
            parse_rational(s).map(Scalar::Rational)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(q) => serde_json::Value::String(q.to_string()),
            Scalar::Gaussian(g) => serde_json::Value::String(g.to_string()),
            Scalar::Float(z) => serde_json::json!([z.re, z.im]),
        }
    }

    /// Strings are exact, numbers and `[re, im]` pairs are floats.
    pub fn from_json(v: &serde_json::Value) -> Result<Scalar> {
        use serde_json::Value;
        match v {
            Value::String(s) => Scalar::parse(s),
            Value::Number(n) => n
                .as_f64()
                .map(|x| Scalar::Float(C64::new(x, 0.0)))
                .ok_or_else(|| Error::Parse(format!("bad number {n}"))),
            Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
                (Some(re), Some(im)) => Ok(Scalar::Float(C64::new(re, im))),
                _ => Err(Error::Parse("float pair must hold two numbers".into())),
            },
            other => Err(Error::Parse(format!(
                "expected a scalar string or [re, im] pair, found {other}"
            ))),
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Gaussian(g) => write!(f, "{g}"),
            Scalar::Float(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Scalar::Float(z) => write!(f, "{}{:+}*i", z.re, z.im),
        }
    }
}

/// Serialize any field element through the dynamic scalar form.
pub fn scalar_json<F: Field>(x: &F) -> serde_json::Value {
    x.to_scalar().to_json()
}
