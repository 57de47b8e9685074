//! Composition algebras of dimension 1, 2, 4, 8 in their division, split
//! and complexified forms.
//!
//! Structure tables are produced by repeated doubling. The local basis of
//! the 2- and 4-dimensional algebras sits inside the octonions as
//! `{e0, e4}` and `{e0, e1, e4, e5}`; the upper half of the local basis is
//! the doubled part. Split forms replace the doubled basis vectors `e_j` by
//! `i*e_j` inside the complexification.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    R,
    C,
    H,
    O,
}

impl Kind {
    pub fn dim(self) -> usize {
        match self {
            Kind::R => 1,
            Kind::C => 2,
            Kind::H => 4,
            Kind::O => 8,
        }
    }

    /// Positions of the local basis inside the octonion basis.
    pub fn octonion_indices(self) -> &'static [usize] {
        match self {
            Kind::R => &[0],
            Kind::C => &[0, 4],
            Kind::H => &[0, 1, 4, 5],
            Kind::O => &[0, 1, 2, 3, 4, 5, 6, 7],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    Division,
    Split,
    Complexified,
}

/// One of the eleven supported algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId {
    pub kind: Kind,
    pub form: Form,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 11] = [
        AlgebraId { kind: Kind::R, form: Form::Division },
        AlgebraId { kind: Kind::C, form: Form::Division },
        AlgebraId { kind: Kind::H, form: Form::Division },
        AlgebraId { kind: Kind::O, form: Form::Division },
        AlgebraId { kind: Kind::C, form: Form::Split },
        AlgebraId { kind: Kind::H, form: Form::Split },
        AlgebraId { kind: Kind::O, form: Form::Split },
        AlgebraId { kind: Kind::R, form: Form::Complexified },
        AlgebraId { kind: Kind::C, form: Form::Complexified },
        AlgebraId { kind: Kind::H, form: Form::Complexified },
        AlgebraId { kind: Kind::O, form: Form::Complexified },
    ];

    pub fn new(kind: Kind, form: Form) -> Result<Self> {
        if kind == Kind::R && form == Form::Split {
            return Err(Error::Unsupported("the real line has no split form".into()));
        }
        Ok(AlgebraId { kind, form })
    }

    pub fn dim(self) -> usize {
        self.kind.dim()
    }

    /// Index of the first doubled basis vector (`d/2`, or 1 for `R`).
    pub fn half(self) -> usize {
        (self.dim() / 2).max(1)
    }

    pub fn is_split(self) -> bool {
        self.form == Form::Split
    }

    pub fn is_complexified(self) -> bool {
        self.form == Form::Complexified
    }

    pub fn is_division(self) -> bool {
        self.form == Form::Division
    }

    pub fn tag(self) -> &'static str {
        use Form::*;
        use Kind::*;
        match (self.kind, self.form) {
            (R, Division) => "R",
            (C, Division) => "C",
            (H, Division) => "H",
            (O, Division) => "O",
            (R, Split) => "Rs",
            (C, Split) => "Cs",
            (H, Split) => "Hs",
            (O, Split) => "Os",
            (R, Complexified) => "Rc",
            (C, Complexified) => "Cc",
            (H, Complexified) => "Hc",
            (O, Complexified) => "Oc",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        AlgebraId::ALL
            .iter()
            .copied()
            .find(|a| a.tag() == tag)
            .ok_or_else(|| {
                let known: Vec<_> = AlgebraId::ALL.iter().map(|a| a.tag()).collect();
                Error::Parse(format!("unknown algebra {tag:?} (expected one of {})", known.join(", ")))
            })
    }

    fn index(self) -> usize {
        AlgebraId::ALL.iter().position(|&a| a == self).expect("valid algebra id")
    }

    pub fn descriptor(self) -> &'static Descriptor {
        static TABLES: OnceLock<Vec<Descriptor>> = OnceLock::new();
        &TABLES.get_or_init(|| AlgebraId::ALL.iter().map(|&a| Descriptor::build(a)).collect())
            [self.index()]
    }

    /// Name of a local basis vector, written with octonion indices.
    pub fn basis_name(self, k: usize) -> String {
        let o = self.kind.octonion_indices()[k];
        if self.is_split() && k >= self.half() {
            format!("ie{o}")
        } else {
            format!("e{o}")
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Signed basis vector: `e_i e_j = sign * e_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub sign: i8,
    pub index: usize,
}

#[derive(Debug)]
pub struct Descriptor {
    pub id: AlgebraId,
    pub dim: usize,
    table: Vec<Entry>,
    /// Diagonal of the norm form in the local basis.
    pub signature: Vec<i8>,
}

impl Descriptor {
    pub fn product(&self, i: usize, j: usize) -> Entry {
        self.table[i * self.dim + j]
    }

    fn build(id: AlgebraId) -> Descriptor {
        let d = id.dim();
        let base = division_table(id.kind);
        let h = id.half();
        let (table, signature) = if id.is_split() {
            let grade = |k: usize| (k >= h) as i32;
            let t = (0..d * d)
                .map(|n| {
                    let (i, j) = (n / d, n % d);
                    let e = base[n];
                    let p = grade(i) + grade(j) - grade(e.index);
                    debug_assert!(p == 0 || p == 2);
                    Entry { sign: if p == 2 { -e.sign } else { e.sign }, index: e.index }
                })
                .collect();
            let sig = (0..d).map(|k| if k >= h { -1 } else { 1 }).collect();
            (t, sig)
        } else {
            (base, vec![1; d])
        };
        Descriptor { id, dim: d, table, signature }
    }
}

// Product in the doubled algebra of two dense vectors over the base table.
fn dense_mul(table: &[Entry], m: usize, x: &[i32], y: &[i32]) -> Vec<i32> {
    let mut out = vec![0; m];
    for i in 0..m {
        for j in 0..m {
            if x[i] != 0 && y[j] != 0 {
                let e = table[i * m + j];
                out[e.index] += e.sign as i32 * x[i] * y[j];
            }
        }
    }
    out
}

fn dense_conj(x: &[i32]) -> Vec<i32> {
    x.iter().enumerate().map(|(k, &v)| if k == 0 { v } else { -v }).collect()
}

/// `(x + y l)(x' + y' l) = (x x' - conj(y') y) + (y conj(x') + y' x) l`,
/// with the upper basis vector `k` equal to `signs[k] * (e_k l)`.
fn double(table: &[Entry], m: usize, signs: &[i32]) -> Vec<Entry> {
    let n = 2 * m;
    let split = |k: usize| -> (Vec<i32>, Vec<i32>) {
        let mut x = vec![0; m];
        let mut y = vec![0; m];
        if k < m {
            x[k] = 1;
        } else {
            y[k - m] = signs[k - m];
        }
        (x, y)
    };
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let (x, y) = split(a);
            let (x2, y2) = split(b);
            let lower: Vec<i32> = dense_mul(table, m, &x, &x2)
                .iter()
                .zip(dense_mul(table, m, &dense_conj(&y2), &y))
                .map(|(p, q)| p - q)
                .collect();
            let upper: Vec<i32> = dense_mul(table, m, &y, &dense_conj(&x2))
                .iter()
                .zip(dense_mul(table, m, &y2, &x))
                .map(|(p, q)| p + q)
                .collect();
            let mut coeffs = lower;
            coeffs.extend(upper.iter().enumerate().map(|(k, v)| v * signs[k]));
            let nz: Vec<usize> = (0..n).filter(|&k| coeffs[k] != 0).collect();
            assert!(nz.len() == 1 && coeffs[nz[0]].abs() == 1, "basis product not a signed basis vector");
            out.push(Entry { sign: coeffs[nz[0]] as i8, index: nz[0] });
        }
    }
    out
}

fn division_table(kind: Kind) -> Vec<Entry> {
    let real = vec![Entry { sign: 1, index: 0 }];
    let complex = double(&real, 1, &[1]);
    match kind {
        Kind::R => real,
        Kind::C => complex,
        Kind::H => double(&complex, 2, &[1, 1]),
        Kind::O => {
            let quat = double(&complex, 2, &[1, 1]);
            // e5 = e1 e4, e6 = -e2 e4, e7 = e3 e4
            double(&quat, 4, &[1, 1, -1, 1])
        }
    }
}

/// Element of a composition algebra: coefficients in the local basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElem<F: Field> {
    pub alg: AlgebraId,
    pub coeffs: Vec<F>,
}

fn same<F: Field>(a: &AlgElem<F>, b: &AlgElem<F>) {
    assert!(a.alg == b.alg, "algebra mismatch: {} vs {}", a.alg, b.alg);
}

impl<F: Field> AlgElem<F> {
    pub fn zero(alg: AlgebraId) -> Self {
        AlgElem { alg, coeffs: vec![F::zero(); alg.dim()] }
    }

    pub fn scalar(alg: AlgebraId, c: F) -> Self {
        let mut x = Self::zero(alg);
        x.coeffs[0] = c;
        x
    }

    pub fn one(alg: AlgebraId) -> Self {
        Self::scalar(alg, F::one())
    }

    pub fn basis(alg: AlgebraId, k: usize) -> Self {
        let mut x = Self::zero(alg);
        x.coeffs[k] = F::one();
        x
    }

    /// The doubled-half unit `e_{d/2}` (`i*e4` in the split forms).
    pub fn doubling_unit(alg: AlgebraId) -> Self {
        Self::basis(alg, alg.half())
    }

    /// Checked constructor: length must match and real algebras need real
    /// exact coefficients.
    pub fn new(alg: AlgebraId, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.len() != alg.dim() {
            return Err(Error::Domain(format!(
                "{} expects {} coefficients, got {}",
                alg,
                alg.dim(),
                coeffs.len()
            )));
        }
        if F::EXACT && !alg.is_complexified() && coeffs.iter().any(|c| !c.is_real()) {
            return Err(Error::Domain(format!("{alg} has real coefficients only")));
        }
        Ok(AlgElem { alg, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        AlgElem { alg: self.alg, coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg.to_string(), other.alg.to_string()));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let desc = self.alg.descriptor();
        let d = desc.dim;
        let mut out = vec![F::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = desc.product(i, j);
                let p = a.clone() * b.clone();
                out[e.index] = if e.sign > 0 { out[e.index].clone() + p } else { out[e.index].clone() - p };
            }
        }
        AlgElem { alg: self.alg, coeffs: out }
    }

    /// `(x|y) = sum s_k x_k y_k`, bilinear even over complex scalars.
    pub fn bilinear(&self, other: &Self) -> F {
        same(self, other);
        let sig = &self.alg.descriptor().signature;
        let mut acc = F::zero();
        for k in 0..self.dim() {
            let p = self.coeffs[k].clone() * other.coeffs[k].clone();
            acc = if sig[k] > 0 { acc + p } else { acc - p };
        }
        acc
    }

    pub fn norm(&self) -> F {
        self.bilinear(self)
    }

    /// `(x|1)`
    pub fn real_part(&self) -> F {
        self.coeffs[0].clone()
    }

    /// Algebra conjugation `x -> 2(x|1) - x`.
    pub fn conj(&self) -> Self {
        let mut c: Vec<F> = self.coeffs.iter().map(|x| -x.clone()).collect();
        c[0] = self.coeffs[0].clone();
        AlgElem { alg: self.alg, coeffs: c }
    }

    /// Negates the doubled half.
    pub fn gamma(&self) -> Self {
        let h = self.alg.half();
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, x)| if k >= h { -x.clone() } else { x.clone() })
            .collect();
        AlgElem { alg: self.alg, coeffs: c }
    }

    /// Complex conjugation of the complexification, restricted to this
    /// form: conjugates scalars, and on split forms also negates the
    /// doubled half (it is spanned by `i*e_j`).
    pub fn tau(&self) -> Self {
        let conj = AlgElem { alg: self.alg, coeffs: self.coeffs.iter().map(|x| x.conj()).collect() };
        if self.alg.is_split() {
            conj.gamma()
        } else {
            conj
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        let inv = n.inv().ok_or_else(|| Error::Domain("element of norm zero has no inverse".into()))?;
        Ok(self.conj().scale(&inv))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> AlgElem<G> {
        AlgElem { alg: self.alg, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_c64(&self) -> AlgElem<crate::scalar::C64> {
        self.map(|c| c.to_c64())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }

    pub fn coeffs_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| c.to_scalar().to_json()).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({ "algebra": self.alg.tag(), "coeffs": self.coeffs_json() })
    }

    pub fn from_scalars(alg: AlgebraId, coeffs: &[Scalar]) -> Result<Self> {
        let c = coeffs.iter().map(F::from_scalar).collect::<Result<Vec<F>>>()?;
        Self::new(alg, c)
    }
}

/// Parse `{"algebra": .., "coeffs": [..]}` (or a bare coefficient list when
/// the algebra is supplied by the caller).
pub fn parse_elem_json(v: &Value, alg: Option<AlgebraId>) -> Result<(AlgebraId, Vec<Scalar>)> {
    let (alg, coeffs) = match v {
        Value::Object(m) => {
            let tag = m
                .get("algebra")
                .and_then(Value::as_str)
                .map(AlgebraId::from_tag)
                .transpose()?;
            let alg = match (tag, alg) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::AlgebraMismatch(a.to_string(), b.to_string()))
                }
                (Some(a), _) | (None, Some(a)) => a,
                (None, None) => return Err(Error::Parse("element without an algebra tag".into())),
            };
            let c = m.get("coeffs").ok_or_else(|| Error::Parse("element without coeffs".into()))?;
            (alg, c)
        }
        Value::Array(_) => (
            alg.ok_or_else(|| Error::Parse("bare coefficient list without an algebra".into()))?,
            v,
        ),
        other => return Err(Error::Parse(format!("expected an algebra element, found {other}"))),
    };
    let list = coeffs
        .as_array()
        .ok_or_else(|| Error::Parse("coeffs must be a list".into()))?;
    if list.len() != alg.dim() {
        return Err(Error::Domain(format!("{} expects {} coefficients, got {}", alg, alg.dim(), list.len())));
    }
    let s = list.iter().map(Scalar::from_json).collect::<Result<Vec<_>>>()?;
    Ok((alg, s))
}

impl<'a, F: Field> Add for &'a AlgElem<F> {
    type Output = AlgElem<F>;
    fn add(self, o: &'a AlgElem<F>) -> AlgElem<F> {
        same(self, o);
        AlgElem {
            alg: self.alg,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<'a, F: Field> Sub for &'a AlgElem<F> {
    type Output = AlgElem<F>;
    fn sub(self, o: &'a AlgElem<F>) -> AlgElem<F> {
        same(self, o);
        AlgElem {
            alg: self.alg,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<'a, F: Field> Mul for &'a AlgElem<F> {
    type Output = AlgElem<F>;
    /// Panics on mixed algebras; use [`AlgElem::try_mul`] for a checked product.
    fn mul(self, o: &'a AlgElem<F>) -> AlgElem<F> {
        same(self, o);
        self.mul_unchecked(o)
    }
}

impl<F: Field> Neg for &AlgElem<F> {
    type Output = AlgElem<F>;
    fn neg(self) -> AlgElem<F> {
        AlgElem { alg: self.alg, coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

impl<F: Field> fmt::Display for AlgElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({})*{}", c.to_scalar(), self.alg.basis_name(k)))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
