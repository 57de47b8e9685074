//! The 27-dimensional (for octonions) algebra of 3x3 hermitian matrices
//! `X(r; x) = sum r_i E_i + sum F_i(x_i)`.
//!
//! Slots are 0-based: `E(0)` is the first diagonal idempotent and `F(0, x)`
//! holds `x` in position (2,3) and its conjugate in (3,2). `F(1, x)` holds
//! `x` in (3,1), `F(2, x)` holds `x` in (1,2).

pub mod oracle;

use serde_json::{json, Value};

use crate::cdalgebra::{parse_elem_json, AlgElem, AlgebraId};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::scalar::{Field, Poly, Scalar, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct HMat3<F: Field> {
    pub alg: AlgebraId,
    pub r: [F; 3],
    pub x: [AlgElem<F>; 3],
}

pub(crate) fn nxt(i: usize) -> usize {
    (i + 1) % 3
}

pub(crate) fn prv(i: usize) -> usize {
    (i + 2) % 3
}

impl<F: Field> HMat3<F> {
    pub fn zero(alg: AlgebraId) -> Self {
        HMat3 {
            alg,
            r: [F::zero(), F::zero(), F::zero()],
            x: [AlgElem::zero(alg), AlgElem::zero(alg), AlgElem::zero(alg)],
        }
    }

    pub fn identity(alg: AlgebraId) -> Self {
        Self::diag(alg, [F::one(), F::one(), F::one()])
    }

    pub fn diag(alg: AlgebraId, r: [F; 3]) -> Self {
        HMat3 { r, ..Self::zero(alg) }
    }

    pub fn e(alg: AlgebraId, i: usize) -> Self {
        let mut m = Self::zero(alg);
        m.r[i] = F::one();
        m
    }

    pub fn f(i: usize, a: AlgElem<F>) -> Self {
        let mut m = Self::zero(a.alg);
        m.x[i] = a;
        m
    }

    pub fn new(alg: AlgebraId, r: [F; 3], x: [AlgElem<F>; 3]) -> Result<Self> {
        if let Some(bad) = x.iter().find(|a| a.alg != alg) {
            return Err(Error::AlgebraMismatch(alg.to_string(), bad.alg.to_string()));
        }
        if F::EXACT && !alg.is_complexified() && r.iter().any(|c| !c.is_real()) {
            return Err(Error::Domain(format!("{alg} has real diagonal entries only")));
        }
        Ok(HMat3 { alg, r, x })
    }

    /// `3 + 3d`
    pub fn coord_len(alg: AlgebraId) -> usize {
        3 + 3 * alg.dim()
    }

    /// `[r1, r2, r3, x1.., x2.., x3..]`
    pub fn to_coords(&self) -> Vec<F> {
        let mut v = self.r.to_vec();
        for a in &self.x {
            v.extend(a.coeffs.iter().cloned());
        }
        v
    }

    pub fn from_coords(alg: AlgebraId, v: &[F]) -> Self {
        let d = alg.dim();
        assert_eq!(v.len(), 3 + 3 * d, "coordinate length");
        let elem = |k: usize| AlgElem { alg, coeffs: v[3 + k * d..3 + (k + 1) * d].to_vec() };
        HMat3 { alg, r: [v[0].clone(), v[1].clone(), v[2].clone()], x: [elem(0), elem(1), elem(2)] }
    }

    pub fn basis(alg: AlgebraId, k: usize) -> Self {
        let mut v = vec![F::zero(); Self::coord_len(alg)];
        v[k] = F::one();
        Self::from_coords(alg, &v)
    }

    fn zip(&self, o: &Self, f: impl Fn(F, F) -> F, g: impl Fn(&AlgElem<F>, &AlgElem<F>) -> AlgElem<F>) -> Self {
        assert!(self.alg == o.alg, "algebra mismatch: {} vs {}", self.alg, o.alg);
        HMat3 {
            alg: self.alg,
            r: std::array::from_fn(|i| f(self.r[i].clone(), o.r[i].clone())),
            x: std::array::from_fn(|i| g(&self.x[i], &o.x[i])),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b, |a, b| a - b)
    }

    pub fn scale(&self, c: &F) -> Self {
        HMat3 {
            alg: self.alg,
            r: std::array::from_fn(|i| self.r[i].clone() * c.clone()),
            x: std::array::from_fn(|i| self.x[i].scale(c)),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(|c| c.is_zero()) && self.x.iter().all(|a| a.is_zero())
    }

    pub fn trace(&self) -> F {
        self.r[0].clone() + self.r[1].clone() + self.r[2].clone()
    }

    /// `(X|Y) = sum r_i s_i + 2 (x_i|y_i)`
    pub fn bilinear(&self, o: &Self) -> F {
        let two = F::from_i64(2);
        (0..3).fold(F::zero(), |acc, i| {
            acc + self.r[i].clone() * o.r[i].clone() + two.clone() * self.x[i].bilinear(&o.x[i])
        })
    }

    pub fn jordan(&self, o: &Self) -> Self {
        assert!(self.alg == o.alg, "algebra mismatch: {} vs {}", self.alg, o.alg);
        let half = F::half();
        let mut out = Self::zero(self.alg);
        for i in 0..3 {
            let (j, k) = (nxt(i), prv(i));
            out.r[i] = self.r[i].clone() * o.r[i].clone()
                + self.x[j].bilinear(&o.x[j])
                + self.x[k].bilinear(&o.x[k]);
            let lin = &o.x[i].scale(&(self.r[j].clone() + self.r[k].clone()))
                + &self.x[i].scale(&(o.r[j].clone() + o.r[k].clone()));
            let quad = &(&self.x[j] * &o.x[k]).conj() + &(&o.x[j] * &self.x[k]).conj();
            out.x[i] = (&lin + &quad).scale(&half);
        }
        out
    }

    /// Closed form of the cross product.
    pub fn cross(&self, o: &Self) -> Self {
        assert!(self.alg == o.alg, "algebra mismatch: {} vs {}", self.alg, o.alg);
        let half = F::half();
        let two = F::from_i64(2);
        let mut out = Self::zero(self.alg);
        for i in 0..3 {
            let (j, k) = (nxt(i), prv(i));
            out.r[i] = half.clone()
                * (self.r[j].clone() * o.r[k].clone() + o.r[j].clone() * self.r[k].clone()
                    - two.clone() * self.x[i].bilinear(&o.x[i]));
            let quad = (&(&self.x[j] * &o.x[k]) + &(&o.x[j] * &self.x[k])).conj();
            let lin = &o.x[i].scale(&self.r[i]) + &self.x[i].scale(&o.r[i]);
            out.x[i] = (&quad - &lin).scale(&half);
        }
        out
    }

    pub fn cross_sq(&self) -> Self {
        self.cross(self)
    }

    /// `(X|Y|Z) = (X x Y | Z)`
    pub fn trilinear(&self, y: &Self, z: &Self) -> F {
        self.cross(y).bilinear(z)
    }

    pub fn det(&self) -> F {
        let [r1, r2, r3] = self.r.clone();
        let two = F::from_i64(2);
        let cubic = two * self.x[0].conj().bilinear(&(&self.x[1] * &self.x[2]));
        let lin = (0..3).fold(F::zero(), |acc, j| acc + self.r[j].clone() * self.x[j].norm());
        r1 * r2 * r3 + cubic - lin
    }

    /// `tr(X x X) = sum r_{i+1} r_{i+2} - sum N(x_i)`
    pub fn trace_cross_sq(&self) -> F {
        (0..3).fold(F::zero(), |acc, i| {
            acc + self.r[nxt(i)].clone() * self.r[prv(i)].clone() - self.x[i].norm()
        })
    }

    /// `lambda^3 - tr lambda^2 + tr(X x X) lambda - det`
    pub fn char_poly(&self) -> Poly<F> {
        Poly::new(vec![-self.det(), self.trace_cross_sq(), -self.trace(), F::one()])
    }

    /// `-1/2 (3 l^2 - 2 tr l + tr^2 - 2 (X|X))`
    pub fn delta(&self, l: &F) -> F {
        let t = self.trace();
        let i = |n| F::from_i64(n);
        -F::half()
            * (i(3) * l.clone() * l.clone() - i(2) * t.clone() * l.clone() + t.clone() * t
                - i(2) * self.bilinear(self))
    }

    /// `lambda E - X`
    pub fn shifted(&self, l: &F) -> Self {
        HMat3::identity(self.alg).scale(l).sub(self)
    }

    /// Idempotent `phi^{x2} / tr(phi^{x2})` for `phi = lambda E - X`; the
    /// trace vanishes exactly when `lambda` is a multiple root.
    pub fn spectral_idempotent(&self, l: &F) -> Result<Self> {
        let p = self.shifted(l).cross_sq();
        let t = p.trace();
        let inv = t.inv().ok_or_else(|| Error::Domain("eigenvalue is not a simple root".into()))?;
        Ok(p.scale(&inv))
    }

    /// Dimension of span{E, X, X x X}; exact fields only.
    pub fn v_dim(&self) -> Result<usize> {
        if !F::EXACT {
            return Err(Error::Precision("v_dim refuses float input".into()));
        }
        let rows = vec![
            HMat3::identity(self.alg).to_coords(),
            self.to_coords(),
            self.cross_sq().to_coords(),
        ];
        Ok(rank(&rows))
    }

    pub fn gamma(&self) -> Self {
        HMat3 { alg: self.alg, r: self.r.clone(), x: std::array::from_fn(|i| self.x[i].gamma()) }
    }

    pub fn tau(&self) -> Self {
        HMat3 {
            alg: self.alg,
            r: std::array::from_fn(|i| self.r[i].conj()),
            x: std::array::from_fn(|i| self.x[i].tau()),
        }
    }

    /// Trace of the linear map `Y -> X o Y`.
    pub fn jordan_left_trace(&self) -> F {
        let n = Self::coord_len(self.alg);
        (0..n).fold(F::zero(), |acc, k| acc + self.jordan(&Self::basis(self.alg, k)).to_coords()[k].clone())
    }

    /// Trace of the linear map `Y -> X x Y`.
    pub fn cross_left_trace(&self) -> F {
        let n = Self::coord_len(self.alg);
        (0..n).fold(F::zero(), |acc, k| acc + self.cross(&Self::basis(self.alg, k)).to_coords()[k].clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> HMat3<G> {
        HMat3 {
            alg: self.alg,
            r: std::array::from_fn(|i| f(&self.r[i])),
            x: std::array::from_fn(|i| self.x[i].map(f)),
        }
    }

    pub fn to_c64(&self) -> HMat3<C64> {
        self.map(|c| c.to_c64())
    }

    pub fn max_abs(&self) -> f64 {
        self.to_coords().iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.alg == o.alg && self.to_coords().iter().zip(o.to_coords()).all(|(a, b)| a.approx_eq(&b, tol))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.alg.tag(),
            "diag": self.r.iter().map(|c| c.to_scalar().to_json()).collect::<Vec<_>>(),
            "off": self.x.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_raw(raw: &RawMat) -> Result<Self> {
        let r = raw.diag.iter().map(F::from_scalar).collect::<Result<Vec<F>>>()?;
        let x = raw
            .off
            .iter()
            .map(|c| AlgElem::from_scalars(raw.alg, c))
            .collect::<Result<Vec<_>>>()?;
        let r: [F; 3] = r.try_into().map_err(|_| Error::Parse("diag needs 3 entries".into()))?;
        let x: [AlgElem<F>; 3] = x.try_into().map_err(|_| Error::Parse("off needs 3 entries".into()))?;
        HMat3::new(raw.alg, r, x)
    }
}

impl<F: Field> HMat3<F> {
    /// `(x|1)(E2 - E3) + F1(u x)`, `u = i` (complexified) or the doubling
    /// unit `i*e4` (split).
    pub fn m1_of(x: &AlgElem<F>) -> Result<Self> {
        let alg = x.alg;
        let ux = &special_unit::<F>(alg)? * x;
        let c = x.real_part();
        Ok(HMat3::diag(alg, [F::zero(), c.clone(), -c]).add(&HMat3::f(0, ux)))
    }

    /// `F2(i conj(x)) + F3(x)` (complexified) or `F2(-b conj(x)) + F3(x)`
    /// with `b = i*e4` (split).
    pub fn m23_of(x: &AlgElem<F>) -> Result<Self> {
        let alg = x.alg;
        let u = special_unit::<F>(alg)?;
        let second = if alg.is_split() { -&(&u * &x.conj()) } else { &u * &x.conj() };
        Ok(HMat3::f(1, second).add(&HMat3::f(2, x.clone())))
    }

    /// The distinguished nilpotent of the first kind (`x = 1`).
    pub fn m1(alg: AlgebraId) -> Result<Self> {
        Self::m1_of(&AlgElem::one(alg))
    }

    /// The distinguished nilpotent of the second kind (`x = 1`).
    pub fn m23(alg: AlgebraId) -> Result<Self> {
        Self::m23_of(&AlgElem::one(alg))
    }
}

/// `i*1` for complexified algebras, `i*e4` for split ones.
pub fn special_unit<F: Field>(alg: AlgebraId) -> Result<AlgElem<F>> {
    if alg.is_split() {
        Ok(AlgElem::doubling_unit(alg))
    } else if alg.is_complexified() {
        let i = F::imag_unit()
            .ok_or_else(|| Error::Domain(format!("{alg} needs complex scalars")))?;
        Ok(AlgElem::scalar(alg, i))
    } else {
        Err(Error::Unsupported(format!("no nilpotent normal forms over the division algebra {alg}")))
    }
}

/// Membership of an element in the distinguished subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership<F: Field> {
    /// `X x X = 0` and `tr X = 1`
    pub p2: bool,
    pub trace_zero: bool,
    /// trace zero, nonzero, `X x X = 0`
    pub m1: bool,
    /// trace zero, `X x X != 0`, `tr(X x X) = det X = 0`
    pub m23: bool,
    /// trace zero and `M1 x X = 0`
    pub n1: bool,
    /// trace zero and `X x X = M1`
    pub n2: bool,
    pub tau_fixed: bool,
    /// `(X|X)` when `2 E1 x X = -X`
    pub s2_value: Option<F>,
    pub warnings: Vec<String>,
}

impl<F: Field> Membership<F> {
    pub fn of(x: &HMat3<F>) -> Result<Self> {
        if !F::EXACT {
            return Err(Error::Precision("membership tests need exact input".into()));
        }
        let alg = x.alg;
        let sq = x.cross_sq();
        let tr0 = x.trace().is_zero();
        let mut warnings = Vec::new();
        let (n1, n2) = match HMat3::<F>::m1(alg) {
            Ok(m1) => (tr0 && m1.cross(x).is_zero(), tr0 && sq == m1),
            Err(e) => {
                warnings.push(format!("N1/N2 undefined: {e}"));
                (false, false)
            }
        };
        let two_e1 = HMat3::e(alg, 0).scale(&F::from_i64(2));
        let s2_value = (two_e1.cross(x) == x.neg()).then(|| x.bilinear(x));
        Ok(Membership {
            p2: sq.is_zero() && x.trace() == F::one(),
            trace_zero: tr0,
            m1: tr0 && !x.is_zero() && sq.is_zero(),
            m23: tr0 && !sq.is_zero() && x.trace_cross_sq().is_zero() && x.det().is_zero(),
            n1,
            n2,
            tau_fixed: x.tau() == *x,
            s2_value,
            warnings,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "P2": self.p2,
            "trace_zero": self.trace_zero,
            "M1": self.m1,
            "M23": self.m23,
            "N1": self.n1,
            "N2": self.n2,
            "tau_fixed": self.tau_fixed,
            "S2": self.s2_value.as_ref().map(|v| v.to_scalar().to_json()),
            "warnings": self.warnings,
        })
    }
}

/// Matrix parsed from JSON before its scalar field is fixed.
#[derive(Clone, Debug)]
pub struct RawMat {
    pub alg: AlgebraId,
    pub diag: Vec<Scalar>,
    pub off: Vec<Vec<Scalar>>,
}

impl RawMat {
    pub fn scalars(&self) -> impl Iterator<Item = &Scalar> {
        self.diag.iter().chain(self.off.iter().flatten())
    }

    /// Accepts `{"algebra", "diag", "off"}` or a full hermitian
    /// `{"algebra", "rows"}` (each entry an element or coefficient list).
    pub fn from_json(v: &Value, alg: Option<AlgebraId>) -> Result<Self> {
        let m = v.as_object().ok_or_else(|| Error::Parse("matrix must be a JSON object".into()))?;
        let tag = m.get("algebra").and_then(Value::as_str).map(AlgebraId::from_tag).transpose()?;
        let alg = match (tag, alg) {
            (Some(a), Some(b)) if a != b => return Err(Error::AlgebraMismatch(a.to_string(), b.to_string())),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::Parse("matrix without an algebra tag".into())),
        };
        if let Some(rows) = m.get("rows") {
            return Self::from_rows(alg, rows);
        }
        let diag = m
            .get("diag")
            .and_then(Value::as_array)
            .filter(|d| d.len() == 3)
            .ok_or_else(|| Error::Parse("\"diag\" must list 3 scalars".into()))?
            .iter()
            .map(Scalar::from_json)
            .collect::<Result<Vec<_>>>()?;
        let off = m
            .get("off")
            .and_then(Value::as_array)
            .filter(|d| d.len() == 3)
            .ok_or_else(|| Error::Parse("\"off\" must list 3 algebra elements".into()))?
            .iter()
            .map(|e| parse_elem_json(e, Some(alg)).map(|(_, c)| c))
            .collect::<Result<Vec<_>>>()?;
        Ok(RawMat { alg, diag, off })
    }

    fn from_rows(alg: AlgebraId, rows: &Value) -> Result<Self> {
        let rows = rows
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| Error::Parse("\"rows\" must be a 3x3 array".into()))?;
        let mut ent = Vec::new();
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == 3)
                .ok_or_else(|| Error::Parse("each row needs 3 entries".into()))?;
            for e in row {
                ent.push(parse_elem_json(e, Some(alg))?.1);
            }
        }
        let at = |i: usize, j: usize| &ent[3 * i + j];
        let zero = Scalar::Rational(crate::scalar::Q::from_i64(0));
        let conj = |c: &Vec<Scalar>| -> Result<Vec<Scalar>> {
            c.iter()
                .enumerate()
                .map(|(k, s)| if k == 0 { Ok(s.clone()) } else { zero.try_sub(s) })
                .collect()
        };
        let same = |a: &Vec<Scalar>, b: &Vec<Scalar>| -> Result<bool> {
            for (x, y) in a.iter().zip(b) {
                if !x.try_sub(y)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let mut diag = Vec::new();
        for i in 0..3 {
            let d = at(i, i);
            if !d[1..].iter().all(Scalar::is_zero) {
                return Err(Error::Domain(format!("diagonal entry ({},{}) is not a scalar", i + 1, i + 1)));
            }
            diag.push(d[0].clone());
        }
        // F1 at (2,3), F2 at (3,1), F3 at (1,2)
        let pos = [(1usize, 2usize), (2, 0), (0, 1)];
        let mut off = Vec::new();
        for &(i, j) in &pos {
            if !same(&conj(at(i, j))?, at(j, i))? {
                return Err(Error::Domain(format!(
                    "not hermitian: entry ({},{}) is not the conjugate of ({},{})",
                    j + 1, i + 1, i + 1, j + 1
                )));
            }
            off.push(at(i, j).clone());
        }
        Ok(RawMat { alg, diag, off })
    }
}

#[cfg(test)]
mod tests;
