//! Exact orbit invariants, canonical representatives and the same-orbit
//! test.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use crate::cdalgebra::AlgebraId;
use crate::error::{Error, Result};
use crate::jordan::{special_unit, HMat3, Membership};
use crate::random::Sampler;
use crate::scalar::{cubic_root_structure, exact_roots, q_sqrt, Field, C64, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RealCase {
    AllReal,
    ConjugatePair,
    Repeated,
}

impl RealCase {
    pub fn tag(self) -> &'static str {
        match self {
            RealCase::AllReal => "all_real",
            RealCase::ConjugatePair => "conjugate_pair",
            RealCase::Repeated => "repeated",
        }
    }
}

/// Orbit families. `I` is the distinct-root family over complexified
/// algebras; `I1`/`I2` split it by realness over split algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    I,
    I1,
    I2,
    II1,
    II2,
    III1,
    III2,
    III3,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::I, Family::I1, Family::I2, Family::II1, Family::II2, Family::III1, Family::III2, Family::III3];

    pub fn tag(self) -> &'static str {
        match self {
            Family::I => "i",
            Family::I1 => "i-1",
            Family::I2 => "i-2",
            Family::II1 => "ii-1",
            Family::II2 => "ii-2",
            Family::III1 => "iii-1",
            Family::III2 => "iii-2",
            Family::III3 => "iii-3",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }

    /// `(number of distinct roots, v)`; `v` is 3 for every distinct-root family.
    pub fn signature(self) -> (usize, usize) {
        match self {
            Family::I | Family::I1 | Family::I2 => (3, 3),
            Family::II1 => (2, 2),
            Family::II2 => (2, 3),
            Family::III1 => (1, 1),
            Family::III2 => (1, 2),
            Family::III3 => (1, 3),
        }
    }

    /// Whether the family occurs over `alg`.
    pub fn occurs_on(self, alg: AlgebraId) -> bool {
        match self {
            Family::I => alg.is_complexified(),
            Family::I1 | Family::I2 => alg.is_split(),
            _ => !alg.is_division(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub const ADMISSIBLE: [(usize, usize); 6] = [(3, 3), (2, 2), (2, 3), (1, 1), (1, 2), (1, 3)];

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitLabel<F: Field> {
    pub algebra: AlgebraId,
    /// `(tr X, tr(X x X), det X)`.
    pub char_poly: [F; 3],
    /// Number of distinct characteristic roots.
    pub multiplicity: usize,
    pub v: usize,
    /// Split algebras only.
    pub real_case: Option<RealCase>,
    /// Roots lying in the scalar field, in the order of `numeric_roots`.
    pub exact_roots: Vec<F>,
    pub numeric_roots: [C64; 3],
    /// Repeated root (multiplicity 1 or 2) and simple root (multiplicity 2).
    pub repeated_root: Option<F>,
    pub simple_root: Option<F>,
    pub family: Family,
}

impl<F: Field> OrbitLabel<F> {
    pub fn orbit_key(&self) -> String {
        let [a, b, c] = &self.char_poly;
        format!("{}|{},{},{}|{}", self.algebra.tag(), a.to_scalar(), b.to_scalar(), c.to_scalar(), self.v)
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &F| Value::String(x.to_scalar().to_string());
        json!({
            "algebra": self.algebra.tag(),
            "char_poly": {
                "trace": s(&self.char_poly[0]),
                "trace_cross_sq": s(&self.char_poly[1]),
                "det": s(&self.char_poly[2]),
            },
            "multiplicity": self.multiplicity,
            "v": self.v,
            "real_case": self.real_case.map(RealCase::tag),
            "exact_roots": self.exact_roots.iter().map(s).collect::<Vec<_>>(),
            "numeric_roots": self.numeric_roots.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
            "family": self.family.tag(),
            "orbit_key": self.orbit_key(),
        })
    }
}

fn require_classifiable<F: Field>(x: &HMat3<F>) -> Result<()> {
    if !F::EXACT {
        return Err(Error::Precision("classification needs exact scalars".into()));
    }
    if x.alg.is_division() {
        return Err(Error::Unsupported(format!(
            "{} is a division algebra; use the reduce command for diagonalization",
            x.alg
        )));
    }
    if x.alg.is_split() && !x.to_coords().iter().all(Field::is_real) {
        return Err(Error::Domain(format!("{} takes real scalars", x.alg)));
    }
    Ok(())
}

fn sign<F: Field>(x: &F) -> Option<Ordering> {
    let (re, im) = x.to_gaussian()?;
    num_traits::Zero::is_zero(&im).then(|| re.cmp(&<Q as Field>::zero()))
}

pub fn orbit_invariants<F: Field>(x: &HMat3<F>) -> Result<OrbitLabel<F>> {
    require_classifiable(x)?;
    let phi = x.char_poly();
    let rs = cubic_root_structure(&phi)?;
    let v = x.v_dim()?;
    let multiplicity = rs.distinct_count;
    let real_case = x.alg.is_split().then(|| match (multiplicity, sign(&rs.discriminant)) {
        (3, Some(Ordering::Greater)) => RealCase::AllReal,
        (3, _) => RealCase::ConjugatePair,
        _ => RealCase::Repeated,
    });
    let family = match (multiplicity, v, real_case) {
        (3, _, Some(RealCase::AllReal)) => Family::I1,
        (3, _, Some(_)) => Family::I2,
        (3, _, None) => Family::I,
        (2, 2, _) => Family::II1,
        (2, _, _) => Family::II2,
        (1, 1, _) => Family::III1,
        (1, 2, _) => Family::III2,
        _ => Family::III3,
    };
    if !ADMISSIBLE.contains(&(multiplicity, v)) {
        return Err(Error::Internal(format!("inadmissible pair (multiplicity {multiplicity}, v {v})")));
    }
    Ok(OrbitLabel {
        algebra: x.alg,
        char_poly: [x.trace(), x.trace_cross_sq(), x.det()],
        multiplicity,
        v,
        real_case,
        exact_roots: exact_roots(&phi, &rs),
        numeric_roots: rs.numeric_roots,
        repeated_root: rs.repeated_root,
        simple_root: rs.simple_root,
        family,
    })
}

/// The representative of `family` with the given parameters:
/// `I`, `I1`: the three roots; `I2`: `(lambda1, p, q)`; `II*`:
/// `(simple, repeated)`; `III*`: the triple root.
pub fn family_representative<F: Field>(alg: AlgebraId, family: Family, params: &[F]) -> Result<HMat3<F>> {
    if !family.occurs_on(alg) {
        return Err(Error::Unsupported(format!("family {family} does not occur over {alg}")));
    }
    let want = match family {
        Family::I | Family::I1 | Family::I2 => 3,
        Family::II1 | Family::II2 => 2,
        _ => 1,
    };
    if params.len() != want {
        return Err(Error::Parameter(format!("family {family} takes {want} parameters, got {}", params.len())));
    }
    let p = |k: usize| params[k].clone();
    let e = HMat3::identity(alg);
    Ok(match family {
        Family::I | Family::I1 => HMat3::diag(alg, [p(0), p(1), p(2)]),
        Family::I2 => {
            let b = special_unit::<F>(alg)?;
            HMat3::diag(alg, [p(0), p(1), p(1)]).add(&HMat3::f(0, b.scale(&p(2))))
        }
        Family::II1 => HMat3::diag(alg, [p(0), p(1), p(1)]),
        Family::II2 => HMat3::diag(alg, [p(0), p(1), p(1)]).add(&HMat3::m1(alg)?),
        Family::III1 => e.scale(&p(0)),
        Family::III2 => e.scale(&p(0)).add(&HMat3::m1(alg)?),
        Family::III3 => e.scale(&p(0)).add(&HMat3::m23(alg)?),
    })
}

/// A canonical representative, exact when the roots allow it.
#[derive(Clone, Debug, PartialEq)]
pub enum Canonical<F: Field> {
    Exact(HMat3<F>),
    Numeric(HMat3<C64>),
}

impl<F: Field> Canonical<F> {
    pub fn is_exact(&self) -> bool {
        matches!(self, Canonical::Exact(_))
    }

    pub fn to_c64(&self) -> HMat3<C64> {
        match self {
            Canonical::Exact(m) => m.to_c64(),
            Canonical::Numeric(m) => m.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Canonical::Exact(m) => m.to_json(),
            Canonical::Numeric(m) => m.to_json(),
        }
    }
}

fn round_digits(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let d = digits.min(17) as i32;
    format!("{:.*e}", (d - 1).max(0) as usize, x).parse().unwrap_or(x)
}

fn conjugate_pair_params<F: Field>(label: &OrbitLabel<F>) -> Option<[F; 3]> {
    // lambda1 must be exact; then p and q^2 are rational
    let l1 = label.exact_roots.iter().find(|r| r.is_real())?.clone();
    let [t, s2, _] = &label.char_poly;
    let p = (t.clone() - l1.clone()) * F::half();
    // quadratic factor lambda^2 - 2p lambda + c with c = s2 - lambda1 * 2p
    let c = s2.clone() - l1.clone() * F::from_i64(2) * p.clone();
    let q2 = c - p.clone() * p.clone();
    let (re, _) = q2.to_gaussian()?;
    let q = q_sqrt(&re)?;
    Some([l1, p, F::from_q(&q)])
}

/// Representative named by `label`. Irrational distinct roots are filled
/// numerically, rounded to `digits` significant digits.
pub fn canonical_representative<F: Field>(label: &OrbitLabel<F>, digits: u32) -> Result<Canonical<F>> {
    let alg = label.algebra;
    let exact = |params: Vec<F>| family_representative(alg, label.family, &params).map(Canonical::Exact);
    match label.family {
        Family::II1 | Family::II2 => {
            let (s, r) = (label.simple_root.clone(), label.repeated_root.clone());
            exact(vec![s.ok_or_else(missing)?, r.ok_or_else(missing)?])
        }
        Family::III1 | Family::III2 | Family::III3 => exact(vec![label.repeated_root.clone().ok_or_else(missing)?]),
        Family::I | Family::I1 if label.exact_roots.len() == 3 => exact(label.exact_roots.clone()),
        Family::I2 => match conjugate_pair_params(label) {
            Some(p) => exact(p.to_vec()),
            None => numeric_fill(label, digits),
        },
        _ => numeric_fill(label, digits),
    }
}

fn missing() -> Error {
    Error::Internal("label lacks its exact repeated root".into())
}

fn numeric_fill<F: Field>(label: &OrbitLabel<F>, digits: u32) -> Result<Canonical<F>> {
    if digits == 0 {
        return Err(Error::Parameter("numeric fill needs a positive precision".into()));
    }
    let rd = |z: C64| C64::new(round_digits(z.re, digits), round_digits(z.im, digits));
    let z = label.numeric_roots.map(rd);
    let params: Vec<C64> = match label.family {
        Family::I2 => vec![C64::new(z[0].re, 0.0), C64::new(z[1].re, 0.0), C64::new(z[1].im.abs(), 0.0)],
        Family::I1 => z.iter().map(|w| C64::new(w.re, 0.0)).collect(),
        _ => z.to_vec(),
    };
    family_representative(label.algebra, label.family, &params).map(Canonical::Numeric)
}

/// Same orbit of the identity component: equal characteristic polynomials
/// and equal `v`.
pub fn same_orbit<F: Field>(x: &HMat3<F>, y: &HMat3<F>) -> Result<bool> {
    if x.alg != y.alg {
        return Err(Error::AlgebraMismatch(x.alg.to_string(), y.alg.to_string()));
    }
    let (a, b) = (orbit_invariants(x)?, orbit_invariants(y)?);
    Ok(a.char_poly == b.char_poly && a.v == b.v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport<F: Field> {
    pub label: OrbitLabel<F>,
    pub canonical: Canonical<F>,
    pub membership: Membership<F>,
    pub notes: Vec<String>,
}

impl<F: Field> ClassReport<F> {
    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label.to_json(),
            "canonical": self.canonical.to_json(),
            "canonical_exact": self.canonical.is_exact(),
            "membership": self.membership.to_json(),
            "notes": self.notes,
        })
    }
}

/// Representative of `family` over `alg` with small random rational roots
/// (Gaussian over complexified algebras), redrawn until the roots are
/// distinct where the family needs it.
pub fn planted_representative<F: Field>(alg: AlgebraId, family: Family, s: &mut Sampler) -> Result<HMat3<F>> {
    for _ in 0..64 {
        let p: Vec<F> = (0..3).map(|_| s.scalar::<F>(alg)).collect();
        let params = match family {
            Family::I | Family::I1 => p,
            Family::I2 => vec![p[0].clone(), p[1].clone(), F::from_i64(1 + s.below(4) as i64)],
            Family::II1 | Family::II2 => p[..2].to_vec(),
            _ => p[..1].to_vec(),
        };
        let x = family_representative(alg, family, &params)?;
        if orbit_invariants(&x)?.family == family {
            return Ok(x);
        }
    }
    Err(Error::Internal(format!("could not plant family {family}")))
}

pub const DEFAULT_DIGITS: u32 = 17;

pub fn classify_report<F: Field>(x: &HMat3<F>) -> Result<ClassReport<F>> {
    let label = orbit_invariants(x)?;
    let canonical = canonical_representative(&label, DEFAULT_DIGITS)?;
    let mut notes = Vec::new();
    match &canonical {
        Canonical::Numeric(_) => notes.push("distinct roots leave the scalar field; canonical form is numeric".into()),
        Canonical::Exact(c) => {
            if c.char_poly() != x.char_poly() || c.v_dim()? != label.v {
                return Err(Error::Internal("canonical form does not reproduce the label".into()));
            }
        }
    }
    if label.family == Family::I {
        notes.push("diagonal ordered by (re, im) of the roots".into());
    }
    Ok(ClassReport { membership: Membership::of(x)?, label, canonical, notes })
}

#[cfg(test)]
mod tests;
