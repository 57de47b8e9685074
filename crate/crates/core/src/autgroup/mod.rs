//! Generators of the identity component of the automorphism group and
//! words built from them.

use std::fmt;

use serde_json::{json, Value};

use crate::cdalgebra::{parse_elem_json, AlgElem, AlgebraId};
use crate::error::{Error, Result};
use crate::jordan::{special_unit, HMat3};
use crate::linalg::Matrix;
use crate::random::Sampler;
use crate::scalar::{rationalize, Field, Scalar, C64};

fn nxt(i: usize) -> usize {
    (i + 1) % 3
}

fn prv(i: usize) -> usize {
    (i + 2) % 3
}

fn check_slot(i: usize) -> Result<()> {
    (i < 3).then_some(()).ok_or_else(|| Error::Parameter(format!("slot index {i} out of range 0..3")))
}

fn check_value<F: Field>(got: &F, want: &F, what: &str) -> Result<()> {
    if got.approx_eq(want, 1e-9) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{what}: expected {}, got {}", want.to_scalar(), got.to_scalar())))
    }
}

/// `(c, s)` on the circle (`nu2 = -1`) or hyperbola (`nu2 = +1`)
/// `c^2 - nu2 s^2 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationParams<F: Field> {
    pub nu2: i8,
    pub c: F,
    pub s: F,
}

impl<F: Field> RotationParams<F> {
    pub fn new(nu2: i8, c: F, s: F) -> Result<Self> {
        if nu2 != 1 && nu2 != -1 {
            return Err(Error::Parameter(format!("nu^2 must be +1 or -1, got {nu2}")));
        }
        let lhs = c.clone() * c.clone() - F::from_i64(nu2 as i64) * s.clone() * s.clone();
        check_value(&lhs, &F::one(), "rotation constraint c^2 - nu^2 s^2")?;
        Ok(RotationParams { nu2, c, s })
    }

    /// cos/cosh of the double angle.
    pub fn c2(&self) -> F {
        self.c.clone() * self.c.clone() + F::from_i64(self.nu2 as i64) * self.s.clone() * self.s.clone()
    }

    /// sin/sinh of the double angle.
    pub fn s2(&self) -> F {
        F::from_i64(2) * self.s.clone() * self.c.clone()
    }

    pub fn inverse(&self) -> Self {
        RotationParams { nu2: self.nu2, c: self.c.clone(), s: -self.s.clone() }
    }

    /// Rational point from the half-angle parameter `u`:
    /// circle `((1-u^2)/(1+u^2), 2u/(1+u^2))`, hyperbola
    /// `((1+u^2)/(1-u^2), 2u/(1-u^2))`.
    pub fn from_half_angle(nu2: i8, u: &F) -> Result<Self> {
        let uu = u.clone() * u.clone();
        let (num, den) = if nu2 < 0 {
            (F::one() - uu.clone(), F::one() + uu)
        } else {
            (F::one() + uu.clone(), F::one() - uu)
        };
        let inv = den.inv().ok_or_else(|| Error::Parameter("degenerate half-angle parameter".into()))?;
        Self::new(nu2, num * inv.clone(), F::from_i64(2) * u.clone() * inv)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransvectionKind {
    /// `B2(i) - B3(1)`, complexified algebras.
    B23,
    /// `B2(1) - B3(b)`, split algebras.
    B23Prime,
    /// `B2(-b) - B3(1)`, split algebras.
    B2Prime3,
}

impl TransvectionKind {
    pub fn tag(self) -> &'static str {
        match self {
            TransvectionKind::B23 => "b23",
            TransvectionKind::B23Prime => "b23'",
            TransvectionKind::B2Prime3 => "b2'3",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "b23" => Ok(TransvectionKind::B23),
            "b23'" => Ok(TransvectionKind::B23Prime),
            "b2'3" => Ok(TransvectionKind::B2Prime3),
            _ => Err(Error::Parse(format!("unknown transvection kind {s:?}"))),
        }
    }

    /// The two derivation arguments `(u, v)` of `B2(u) - B3(v)`.
    fn arguments<F: Field>(self, alg: AlgebraId) -> Result<(AlgElem<F>, AlgElem<F>)> {
        let ok = match self {
            TransvectionKind::B23 => alg.is_complexified(),
            _ => alg.is_split(),
        };
        if !ok {
            return Err(Error::Unsupported(format!("transvection {} is not defined on {alg}", self.tag())));
        }
        let one = AlgElem::one(alg);
        let u = special_unit::<F>(alg)?;
        Ok(match self {
            TransvectionKind::B23 => (u, one),
            TransvectionKind::B23Prime => (one, u),
            TransvectionKind::B2Prime3 => (-&u, one),
        })
    }
}

/// The derivation `B_i(a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<F: Field> {
    pub i: usize,
    pub a: AlgElem<F>,
}

impl<F: Field> Derivation<F> {
    pub fn new(i: usize, a: AlgElem<F>) -> Result<Self> {
        check_slot(i)?;
        Ok(Derivation { i, a })
    }

    pub fn apply(&self, m: &HMat3<F>) -> HMat3<F> {
        let (i, j, k) = (self.i, nxt(self.i), prv(self.i));
        let a = &self.a;
        let two = F::from_i64(2);
        let p = two * a.bilinear(&m.x[i]);
        let mut out = HMat3::zero(m.alg);
        out.r[j] = p.clone();
        out.r[k] = -p;
        out.x[i] = a.scale(&-(m.r[j].clone() - m.r[k].clone()));
        out.x[j] = -&(&m.x[k] * a).conj();
        out.x[k] = (a * &m.x[j]).conj();
        out
    }
}

fn transvection_apply<F: Field>(kind: TransvectionKind, t: &F, m: &HMat3<F>) -> HMat3<F> {
    let (u, v) = kind.arguments::<F>(m.alg).expect("validated at construction");
    let (b2, b3) = (Derivation { i: 1, a: u }, Derivation { i: 2, a: v });
    let gen = |x: &HMat3<F>| b2.apply(x).sub(&b3.apply(x));
    let mut out = m.clone();
    let mut term = m.clone();
    let limit = if F::EXACT { HMat3::<F>::coord_len(m.alg) + 1 } else { 8 };
    for k in 1..=limit {
        term = gen(&term).scale(&(t.clone() * F::from_ratio(1, k as i64)));
        if term.is_zero() {
            return out;
        }
        out = out.add(&term);
    }
    assert!(!F::EXACT, "transvection generator is not nilpotent");
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generator<F: Field> {
    /// Rotation in the plane of `E_{i+1} - E_{i+2}` and `F_i(a)`.
    Beta { i: usize, rot: RotationParams<F>, a: AlgElem<F> },
    /// Negates the two off-diagonal slots other than `i`.
    Sigma { i: usize },
    /// Swaps the diagonal entries other than `i` (quarter turn).
    BetaHat { i: usize },
    /// `x_i -> a x_i a`, `x_{i+1} -> conj(a) x_{i+1}`, `x_{i+2} -> x_{i+2} conj(a)`.
    Delta { i: usize, a: AlgElem<F> },
    /// `x_i -> a x_i conj(a)`, `x_{i+1} -> a x_{i+1}`, `x_{i+2} -> x_{i+2} conj(a)`;
    /// associative algebras only.
    BetaAssoc { i: usize, a: AlgElem<F> },
    /// `exp(t B)` for a nilpotent derivation `B`.
    Transvection { alg: AlgebraId, kind: TransvectionKind, t: F },
}

impl<F: Field> Generator<F> {
    pub fn beta(i: usize, rot: RotationParams<F>, a: AlgElem<F>) -> Result<Self> {
        check_slot(i)?;
        check_value(&a.norm(), &F::from_i64(-(rot.nu2 as i64)), "norm of the rotation axis")?;
        Ok(Generator::Beta { i, rot, a })
    }

    pub fn delta(i: usize, a: AlgElem<F>) -> Result<Self> {
        check_slot(i)?;
        check_value(&a.norm(), &F::one(), "norm of the delta argument")?;
        Ok(Generator::Delta { i, a })
    }

    pub fn beta_assoc(i: usize, a: AlgElem<F>) -> Result<Self> {
        check_slot(i)?;
        if a.alg.dim() > 4 {
            return Err(Error::Unsupported("beta_assoc needs an associative algebra (d <= 4)".into()));
        }
        check_value(&a.norm(), &F::one(), "norm of the beta_assoc argument")?;
        Ok(Generator::BetaAssoc { i, a })
    }

    pub fn sigma(i: usize) -> Result<Self> {
        check_slot(i)?;
        Ok(Generator::Sigma { i })
    }

    pub fn beta_hat(i: usize) -> Result<Self> {
        check_slot(i)?;
        Ok(Generator::BetaHat { i })
    }

    pub fn transvection(alg: AlgebraId, kind: TransvectionKind, t: F) -> Result<Self> {
        kind.arguments::<F>(alg)?;
        Ok(Generator::Transvection { alg, kind, t })
    }

    fn axis_alg(&self) -> Option<AlgebraId> {
        match self {
            Generator::Beta { a, .. } | Generator::Delta { a, .. } | Generator::BetaAssoc { a, .. } => Some(a.alg),
            Generator::Transvection { alg, .. } => Some(*alg),
            _ => None,
        }
    }

    pub fn check_algebra(&self, alg: AlgebraId) -> Result<()> {
        match self.axis_alg() {
            Some(a) if a != alg => Err(Error::AlgebraMismatch(a.to_string(), alg.to_string())),
            _ => Ok(()),
        }
    }

    pub fn apply(&self, m: &HMat3<F>) -> HMat3<F> {
        let mut out = m.clone();
        match self {
            Generator::Beta { i, rot, a } => {
                let (i, j, k) = (*i, nxt(*i), prv(*i));
                let half = F::half();
                let (c2, s2) = (rot.c2(), rot.s2());
                let ss = rot.s.clone() * rot.s.clone();
                let sum = (m.r[j].clone() + m.r[k].clone()) * half.clone();
                let dif = (m.r[j].clone() - m.r[k].clone()) * half;
                let ax = a.bilinear(&m.x[i]);
                let shift = dif.clone() * c2 + ax.clone() * s2.clone();
                out.r[j] = sum.clone() + shift.clone();
                out.r[k] = sum - shift;
                let coef = dif * s2 + F::from_i64(2) * ax * ss;
                out.x[i] = &m.x[i] - &a.scale(&coef);
                out.x[j] = &m.x[j].scale(&rot.c) - &(&m.x[k] * a).conj().scale(&rot.s);
                out.x[k] = &m.x[k].scale(&rot.c) + &(a * &m.x[j]).conj().scale(&rot.s);
            }
            Generator::Sigma { i } => {
                out.x[nxt(*i)] = -&m.x[nxt(*i)];
                out.x[prv(*i)] = -&m.x[prv(*i)];
            }
            Generator::BetaHat { i } => {
                let (i, j, k) = (*i, nxt(*i), prv(*i));
                out.r[j] = m.r[k].clone();
                out.r[k] = m.r[j].clone();
                out.x[i] = -&m.x[i].conj();
                out.x[j] = -&m.x[k].conj();
                out.x[k] = m.x[j].conj();
            }
            Generator::Delta { i, a } => {
                let (i, j, k) = (*i, nxt(*i), prv(*i));
                let ab = a.conj();
                out.x[i] = &(a * &m.x[i]) * a;
                out.x[j] = &ab * &m.x[j];
                out.x[k] = &m.x[k] * &ab;
            }
            Generator::BetaAssoc { i, a } => {
                let (i, j, k) = (*i, nxt(*i), prv(*i));
                let ab = a.conj();
                out.x[i] = &(a * &m.x[i]) * &ab;
                out.x[j] = a * &m.x[j];
                out.x[k] = &m.x[k] * &ab;
            }
            Generator::Transvection { kind, t, .. } => out = transvection_apply(*kind, t, m),
        }
        out
    }

    /// A generator undoing this one.
    pub fn inverse(&self) -> Vec<Generator<F>> {
        match self {
            Generator::Beta { i, rot, a } => vec![Generator::Beta { i: *i, rot: rot.inverse(), a: a.clone() }],
            Generator::Sigma { .. } => vec![self.clone()],
            Generator::BetaHat { i } => vec![self.clone(), Generator::Sigma { i: *i }],
            Generator::Delta { i, a } => vec![Generator::Delta { i: *i, a: a.conj() }],
            Generator::BetaAssoc { i, a } => vec![Generator::BetaAssoc { i: *i, a: a.conj() }],
            Generator::Transvection { alg, kind, t } => {
                vec![Generator::Transvection { alg: *alg, kind: *kind, t: -t.clone() }]
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Beta { .. } => "beta",
            Generator::Sigma { .. } => "sigma",
            Generator::BetaHat { .. } => "beta_hat",
            Generator::Delta { .. } => "delta",
            Generator::BetaAssoc { .. } => "beta_assoc",
            Generator::Transvection { .. } => "transvection",
        }
    }

    pub fn to_json(&self) -> Value {
        let sj = |x: &F| x.to_scalar().to_json();
        match self {
            Generator::Beta { i, rot, a } => json!({
                "gen": "beta", "i": i + 1, "nu2": rot.nu2,
                "c": sj(&rot.c), "s": sj(&rot.s), "a": a.to_json()
            }),
            Generator::Sigma { i } | Generator::BetaHat { i } => json!({ "gen": self.name(), "i": i + 1 }),
            Generator::Delta { i, a } | Generator::BetaAssoc { i, a } => {
                json!({ "gen": self.name(), "i": i + 1, "a": a.to_json() })
            }
            Generator::Transvection { alg, kind, t } => json!({
                "gen": "transvection", "algebra": alg.tag(), "kind": kind.tag(), "t": sj(t)
            }),
        }
    }

    pub fn from_json(v: &Value, alg: AlgebraId) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("generator without {k:?}")));
        let scalar = |k: &str| -> Result<F> { F::from_scalar(&Scalar::from_json(field(k)?)?) };
        let slot = || -> Result<usize> {
            let i = field("i")?.as_u64().ok_or_else(|| Error::Parse("\"i\" must be 1, 2 or 3".into()))?;
            if !(1..=3).contains(&i) {
                return Err(Error::Parameter(format!("slot {i} out of range 1..3")));
            }
            Ok(i as usize - 1)
        };
        let elem = || -> Result<AlgElem<F>> {
            let (a, c) = parse_elem_json(field("a")?, Some(alg))?;
            AlgElem::from_scalars(a, &c)
        };
        let name = field("gen")?.as_str().ok_or_else(|| Error::Parse("\"gen\" must be a string".into()))?;
        match name {
            "beta" => {
                let nu2 = field("nu2")?.as_i64().ok_or_else(|| Error::Parse("\"nu2\" must be +1 or -1".into()))?;
                let rot = RotationParams::new(nu2 as i8, scalar("c")?, scalar("s")?)?;
                Generator::beta(slot()?, rot, elem()?)
            }
            "sigma" => Generator::sigma(slot()?),
            "beta_hat" => Generator::beta_hat(slot()?),
            "delta" => Generator::delta(slot()?, elem()?),
            "beta_assoc" => Generator::beta_assoc(slot()?, elem()?),
            "transvection" => {
                let kind = TransvectionKind::from_tag(
                    field("kind")?.as_str().ok_or_else(|| Error::Parse("\"kind\" must be a string".into()))?,
                )?;
                Generator::transvection(alg, kind, scalar("t")?)
            }
            other => Err(Error::Parse(format!("unknown generator {other:?}"))),
        }
    }
}

impl<F: Field> fmt::Display for Generator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Beta { i, rot, a } => write!(
                f,
                "beta_{}(c={}, s={}, nu2={}; a={})",
                i + 1,
                rot.c.to_scalar(),
                rot.s.to_scalar(),
                rot.nu2,
                a
            ),
            Generator::Sigma { i } => write!(f, "sigma_{}", i + 1),
            Generator::BetaHat { i } => write!(f, "beta_hat_{}", i + 1),
            Generator::Delta { i, a } => write!(f, "delta_{}({a})", i + 1),
            Generator::BetaAssoc { i, a } => write!(f, "beta_assoc_{}({a})", i + 1),
            Generator::Transvection { kind, t, .. } => write!(f, "exp({} {})", t.to_scalar(), kind.tag()),
        }
    }
}

pub fn apply_word<F: Field>(word: &[Generator<F>], m: &HMat3<F>) -> HMat3<F> {
    word.iter().fold(m.clone(), |acc, g| g.apply(&acc))
}

pub fn word_json<F: Field>(word: &[Generator<F>]) -> Value {
    Value::Array(word.iter().map(Generator::to_json).collect())
}

pub fn word_from_json<F: Field>(v: &Value, alg: AlgebraId) -> Result<Vec<Generator<F>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("a word is a JSON list of generators".into()))?
        .iter()
        .map(|g| Generator::from_json(g, alg))
        .collect()
}

/// Group element: dense matrix on the `3 + 3d` coordinates together with
/// the word (in application order) that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElem<F: Field> {
    pub alg: AlgebraId,
    pub matrix: Matrix<F>,
    pub word: Vec<Generator<F>>,
}

impl<F: Field> GroupElem<F> {
    pub fn identity(alg: AlgebraId) -> Self {
        GroupElem { alg, matrix: Matrix::identity(HMat3::<F>::coord_len(alg)), word: Vec::new() }
    }

    pub fn from_word(alg: AlgebraId, word: Vec<Generator<F>>) -> Result<Self> {
        for g in &word {
            g.check_algebra(alg)?;
        }
        let n = HMat3::<F>::coord_len(alg);
        let cols: Vec<Vec<F>> = (0..n)
            .map(|k| apply_word(&word, &HMat3::basis(alg, k)).to_coords())
            .collect();
        Ok(GroupElem { alg, matrix: Matrix::from_columns(&cols), word })
    }

    pub fn apply(&self, m: &HMat3<F>) -> Result<HMat3<F>> {
        if m.alg != self.alg {
            return Err(Error::AlgebraMismatch(self.alg.to_string(), m.alg.to_string()));
        }
        Ok(HMat3::from_coords(self.alg, &self.matrix.apply(&m.to_coords())))
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg.to_string(), other.alg.to_string()));
        }
        let mut word = other.word.clone();
        word.extend(self.word.iter().cloned());
        Ok(GroupElem { alg: self.alg, matrix: self.matrix.mul(&other.matrix), word })
    }
}

/// Outcome of an automorphism check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: usize,
    pub failure: Option<String>,
}

/// Checks `gE = E`, `det(gP) = det(P)` on the coordinate basis, on sums of
/// basis pairs and on random probes, and `g(P x Q) = gP x gQ` on random
/// pairs. Exact for exact fields.
pub fn verify_automorphism<F: Field>(g: &GroupElem<F>, seed: u64) -> VerifyReport {
    let alg = g.alg;
    let tol = 1e-9;
    let ap = |m: &HMat3<F>| g.apply(m).expect("same algebra");
    let mut checks = 1;
    let e = HMat3::identity(alg);
    if !ap(&e).approx_eq(&e, tol) {
        return VerifyReport { passed: false, checks, failure: Some("E is not fixed".into()) };
    }
    let n = HMat3::<F>::coord_len(alg);
    let mut sampler = Sampler::new(seed);
    let mut probes: Vec<HMat3<F>> = (0..n).map(|k| HMat3::basis(alg, k)).collect();
    for k in 0..n {
        probes.push(HMat3::basis(alg, k).add(&HMat3::basis(alg, (k + 1) % n)).add(&HMat3::basis(alg, (k + 5) % n)));
    }
    for _ in 0..6 {
        probes.push(sampler.mat(alg));
    }
    for p in &probes {
        checks += 1;
        let gp = ap(p);
        let scale = gp.max_abs().max(p.max_abs()).max(1.0).powi(3);
        let (a, b) = (gp.det(), p.det());
        if !a.approx_eq(&b, tol * scale) {
            return VerifyReport {
                passed: false,
                checks,
                failure: Some(format!("det changed on probe {}: {} -> {}", p.to_json(), b.to_scalar(), a.to_scalar())),
            };
        }
    }
    for _ in 0..4 {
        checks += 1;
        let (p, q): (HMat3<F>, HMat3<F>) = (sampler.mat(alg), sampler.mat(alg));
        let (gp, gq) = (ap(&p), ap(&q));
        let scale = (gp.max_abs() * gq.max_abs()).max(1.0);
        if !ap(&p.cross(&q)).approx_eq(&gp.cross(&gq), tol * scale) {
            return VerifyReport {
                passed: false,
                checks,
                failure: Some(format!("cross product not preserved for P = {}", p.to_json())),
            };
        }
    }
    VerifyReport { passed: true, checks, failure: None }
}

/// Word of transpositions carrying `diag(r)` to `diag(r[mu[0]], r[mu[1]], r[mu[2]])`.
pub fn permutation_word<F: Field>(mu: [usize; 3]) -> Result<Vec<Generator<F>>> {
    let mut seen = [false; 3];
    for &m in &mu {
        if m > 2 || seen[m] {
            return Err(Error::Parameter(format!("{mu:?} is not a permutation of 0, 1, 2")));
        }
        seen[m] = true;
    }
    let mut cur = [0usize, 1, 2];
    let mut word = Vec::new();
    for pos in 0..3 {
        let q = (0..3).find(|&k| cur[k] == mu[pos]).unwrap();
        if q != pos {
            let third = 3 - pos - q;
            word.push(Generator::BetaHat { i: third });
            cur.swap(pos, q);
        }
    }
    Ok(word)
}

/// Random word of `len` generators valid on `alg`, drawn from small
/// rational (Gaussian for complexified algebras) parameters.
pub fn random_word<F: Field>(alg: AlgebraId, sampler: &mut Sampler, len: usize) -> Vec<Generator<F>> {
    (0..len).map(|_| random_generator(alg, sampler)).collect()
}

pub fn random_generator<F: Field>(alg: AlgebraId, s: &mut Sampler) -> Generator<F> {
    let mut families = vec!["circle", "delta", "sigma", "beta_hat"];
    if !alg.is_division() {
        families.push("hyperbolic");
        families.push("transvection");
    }
    if alg.dim() <= 4 {
        families.push("beta_assoc");
    }
    let i = s.below(3);
    loop {
        let g = match s.pick(&families) {
            "circle" | "hyperbolic" => {
                let nu2: i8 = if s.coin() && !alg.is_division() { 1 } else { -1 };
                let u: F = if alg.is_complexified() && s.coin() { s.scalar(alg) } else { s.real() };
                let u = u * F::from_ratio(1, 3);
                let (Ok(rot), Some(a)) = (RotationParams::from_half_angle(nu2, &u), s.unit::<F>(alg, -(nu2 as i64)))
                else {
                    continue;
                };
                Generator::beta(i, rot, a)
            }
            "delta" => Generator::delta(i, s.unit(alg, 1).unwrap()),
            "beta_assoc" => Generator::beta_assoc(i, s.unit(alg, 1).unwrap()),
            "sigma" => Generator::sigma(i),
            "beta_hat" => Generator::beta_hat(i),
            _ => {
                let kind = if alg.is_complexified() {
                    TransvectionKind::B23
                } else if s.coin() {
                    TransvectionKind::B23Prime
                } else {
                    TransvectionKind::B2Prime3
                };
                Generator::transvection(alg, kind, s.scalar(alg))
            }
        };
        if let Ok(g) = g {
            return g;
        }
    }
}

fn rational_scalar<E: Field>(z: C64, max_den: i64) -> E {
    let (re, im) = (rationalize(z.re, max_den), rationalize(z.im, max_den));
    E::from_gaussian(&re, &im).unwrap_or_else(|| E::from_q(&re))
}

/// Nearby point of norm `N(base)` on the quadric through `base`.
fn rational_unit<E: Field>(a: &AlgElem<C64>, base: AlgElem<E>, max_den: i64) -> AlgElem<E> {
    let r = a.map(|c| rational_scalar::<E>(*c, max_den));
    let w = &r - &base;
    match w.norm().inv() {
        Some(inv) => {
            let c = E::from_i64(2) * base.bilinear(&w) * inv;
            &base - &w.scale(&c)
        }
        None => base,
    }
}

impl Generator<C64> {
    /// Exact generator with parameters close to this float one and
    /// satisfying every constraint exactly.
    pub fn rationalize<E: Field>(&self, alg: AlgebraId) -> Result<Generator<E>> {
        self.rationalize_with(alg, 1_000_000)
    }

    /// As `rationalize`, with parameter denominators up to `max_den`.
    /// Smaller bounds keep long exact words cheap to evaluate.
    pub fn rationalize_with<E: Field>(&self, alg: AlgebraId, max_den: i64) -> Result<Generator<E>> {
        if !E::EXACT {
            return Err(Error::Precision("rationalize needs an exact target field".into()));
        }
        match self {
            Generator::Beta { i, rot, a } => {
                let one_plus_c = C64::new(1.0, 0.0) + rot.c;
                let rot = if one_plus_c.norm() < 1e-9 {
                    RotationParams::new(rot.nu2, -E::one(), E::zero())?
                } else {
                    let u = rational_scalar::<E>(rot.s / one_plus_c, max_den);
                    RotationParams::from_half_angle(rot.nu2, &u)?
                };
                let base = if rot.nu2 < 0 { AlgElem::one(alg) } else { special_unit::<E>(alg)? };
                Generator::beta(*i, rot, rational_unit(a, base, max_den))
            }
            Generator::Sigma { i } => Generator::sigma(*i),
            Generator::BetaHat { i } => Generator::beta_hat(*i),
            Generator::Delta { i, a } => Generator::delta(*i, rational_unit(a, AlgElem::one(alg), max_den)),
            Generator::BetaAssoc { i, a } => Generator::beta_assoc(*i, rational_unit(a, AlgElem::one(alg), max_den)),
            Generator::Transvection { kind, t, .. } => Generator::transvection(alg, *kind, rational_scalar(*t, max_den)),
        }
    }
}
