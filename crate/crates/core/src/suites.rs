//! Property suites over every algebra, shared by `jordan3 verify` and the
//! acceptance test. Each suite draws its inputs from one seeded sampler and
//! tallies exact (or pinned-tolerance) checks.

use std::fmt;

use serde_json::{json, Value};

use crate::autgroup::{
    apply_word, random_word, verify_automorphism, Derivation, Generator, GroupElem, RotationParams, TransvectionKind,
};
use crate::cdalgebra::{AlgElem, AlgebraId};
use crate::classify::{family_representative, orbit_invariants, same_orbit, Family, ADMISSIBLE};
use crate::error::{Error, Result};
use crate::jordan::{oracle, HMat3, Membership};
use crate::random::Sampler;
use crate::reduce::{diagonal_root_error, jacobi_sweep, reduce_to_canonical, DRIFT_TOL, JACOBI_TOL, RESIDUAL_TOL};
use crate::scalar::{cubic_root_structure, Field, Gaussian, Poly, Q};

/// Round-trip samples keep `|gX| <= ENVELOPE * max(1, |X|)`. Beyond that
/// double rounding alone exceeds the residual bound.
pub const ENVELOPE: f64 = 100.0;
/// Diagonal entries reached by Jacobi must match the roots this closely.
pub const ROOT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Norm,
    Tables,
    Identities,
    Traces,
    Generators,
    Invariance,
    Planted,
    RoundTrip,
    Nilpotent,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Norm,
        Suite::Tables,
        Suite::Identities,
        Suite::Traces,
        Suite::Generators,
        Suite::Invariance,
        Suite::Planted,
        Suite::RoundTrip,
        Suite::Nilpotent,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Suite::Norm => "norm",
            Suite::Tables => "tables",
            Suite::Identities => "identities",
            Suite::Traces => "traces",
            Suite::Generators => "generators",
            Suite::Invariance => "invariance",
            Suite::Planted => "planted",
            Suite::RoundTrip => "roundtrip",
            Suite::Nilpotent => "nilpotent",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.tag() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown suite {s:?}")))
    }

    pub fn describe(self) -> &'static str {
        match self {
            Suite::Norm => "N(xy) = N(x)N(y)",
            Suite::Tables => "product tables and closed forms against full-matrix definitions",
            Suite::Identities => "Hamilton-Cayley pair, Jordan identity, 2E x X = tr(X)E - X",
            Suite::Traces => "traces of left multiplication by o and x",
            Suite::Generators => "generator families and random words are automorphisms; derivations obey Leibniz",
            Suite::Invariance => "characteristic polynomial, v and orbit are invariant under random words",
            Suite::Planted => "planted families classify to their own labels",
            Suite::RoundTrip => "numeric reduction round trips and octonion Jacobi",
            Suite::Nilpotent => "first nilpotent set splits into M1 and M23",
        }
    }

    /// Main sample count (per algebra or per family where that applies).
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Norm => 1000,
            Suite::Tables | Suite::Identities | Suite::RoundTrip => 200,
            Suite::Traces => 50,
            Suite::Generators => 100,
            Suite::Invariance | Suite::Nilpotent => 500,
            Suite::Planted => 20,
        }
    }

    pub fn run(self, cfg: &Config) -> Outcome {
        let mut s = Sampler::new(cfg.seed);
        let n = cfg.samples.unwrap_or(self.default_samples());
        let mut t = Tally::default();
        match self {
            Suite::Norm => norm(&mut t, &mut s, n),
            Suite::Tables => tables(&mut t, &mut s, n),
            Suite::Identities => identities(&mut t, &mut s, n),
            Suite::Traces => traces(&mut t, &mut s, n),
            Suite::Generators => generators(&mut t, &mut s, n),
            Suite::Invariance => invariance(&mut t, &mut s, n),
            Suite::Planted => planted(&mut t, &mut s, n),
            Suite::RoundTrip => round_trip(&mut t, &mut s, n, cfg.residual_tol),
            Suite::Nilpotent => nilpotent(&mut t, &mut s, n),
        }
        Outcome { suite: self, checked: t.checked, failed: t.failed, first_failure: t.first, notes: t.notes }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    /// Overrides `Suite::default_samples`.
    pub samples: Option<usize>,
    pub residual_tol: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, samples: None, residual_tol: RESIDUAL_TOL }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub suite: Suite,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.tag(),
            "checked": self.checked,
            "failed": self.failed,
            "passed": self.passed(),
            "first_failure": self.first_failure,
            "notes": self.notes,
        })
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failed: usize,
    first: Option<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    /// Counts an error as a failed check.
    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }
}

macro_rules! exact {
    ($alg:expr, $f:ident ( $($arg:expr),* )) => {
        if $alg.is_complexified() { $f::<Gaussian>($($arg),*) } else { $f::<Q>($($arg),*) }
    };
}

fn non_division() -> Vec<AlgebraId> {
    AlgebraId::ALL.into_iter().filter(|a| !a.is_division()).collect()
}

// ---- algebra and Jordan identities ----

fn norm(t: &mut Tally, s: &mut Sampler, n: usize) {
    for alg in AlgebraId::ALL {
        exact!(alg, norm_on(t, s, alg, n));
    }
}

fn norm_on<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId, n: usize) {
    for _ in 0..n {
        let (x, y): (AlgElem<F>, AlgElem<F>) = (s.elem(alg), s.elem(alg));
        let ok = (&x * &y).norm() == x.norm() * y.norm();
        t.check(ok, || format!("{alg}: N(xy) != N(x)N(y) for x = {x}, y = {y}"));
    }
}

fn tables(t: &mut Tally, s: &mut Sampler, n: usize) {
    for alg in AlgebraId::ALL {
        exact!(alg, tables_on(t, s, alg, n));
    }
}

fn tables_on<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId, n: usize) {
    let h = F::half();
    let e = |m| HMat3::<F>::e(alg, m);
    let f = |m, v: &AlgElem<F>| HMat3::f(m, v.clone());
    for _ in 0..n {
        let (x, y): (AlgElem<F>, AlgElem<F>) = (s.elem(alg), s.elem(alg));
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let xy_bar = (&x * &y).conj();
            let rows: [(&str, bool); 12] = [
                ("Ei o Ei = Ei", e(i).jordan(&e(i)) == e(i)),
                ("Ei o Ej = 0", e(i).jordan(&e(j)).is_zero()),
                ("Ei o Fi(x) = 0", e(i).jordan(&f(i, &x)).is_zero()),
                ("Ei o Fj(x) = Fj(x)/2", e(i).jordan(&f(j, &x)) == f(j, &x).scale(&h)),
                ("Fi(x) o Fi(y)", f(i, &x).jordan(&f(i, &y)) == e(j).add(&e(k)).scale(&x.bilinear(&y))),
                ("Fi(x) o Fj(y)", f(i, &x).jordan(&f(j, &y)) == f(k, &xy_bar).scale(&h)),
                ("Ei x Ei = 0", e(i).cross(&e(i)).is_zero()),
                ("Ei x Ej = Ek/2", e(i).cross(&e(j)) == e(k).scale(&h)),
                ("Ei x Fi(x) = -Fi(x)/2", e(i).cross(&f(i, &x)) == f(i, &x).scale(&-h.clone())),
                ("Ei x Fj(x) = 0", e(i).cross(&f(j, &x)).is_zero()),
                ("Fi(x) x Fi(y)", f(i, &x).cross(&f(i, &y)) == e(i).scale(&-x.bilinear(&y))),
                ("Fi(x) x Fj(y)", f(i, &x).cross(&f(j, &y)) == f(k, &xy_bar).scale(&h)),
            ];
            for (name, ok) in rows {
                t.check(ok, || format!("{alg}: table identity {name} fails at i = {}", i + 1));
            }
        }
        let (a, b): (HMat3<F>, HMat3<F>) = (s.mat(alg), s.mat(alg));
        let forms: [(&str, bool); 5] = [
            ("jordan product", a.jordan(&b) == oracle::jordan(&a, &b)),
            ("bilinear form", a.bilinear(&b) == oracle::bilinear(&a, &b)),
            ("cross product", a.cross(&b) == oracle::cross(&a, &b)),
            ("determinant", a.det() == oracle::det(&a)),
            ("tr(X x Y)", a.cross(&b).trace() == (a.trace() * b.trace() - a.bilinear(&b)) * h.clone()),
        ];
        for (name, ok) in forms {
            t.check(ok, || format!("{alg}: closed-form {name} differs from its definition"));
        }
    }
}

fn identities(t: &mut Tally, s: &mut Sampler, n: usize) {
    for alg in AlgebraId::ALL {
        exact!(alg, identities_on(t, s, alg, n));
    }
}

fn identities_on<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId, n: usize) {
    let e = HMat3::<F>::identity(alg);
    for _ in 0..n {
        let (x, y): (HMat3<F>, HMat3<F>) = (s.mat(alg), s.mat(alg));
        let d = x.det();
        let sq = x.cross_sq();
        let xx = x.jordan(&x);
        let rows: [(&str, bool); 4] = [
            ("X^x2 o X = det(X) E", sq.jordan(&x) == e.scale(&d)),
            ("(X^x2)^x2 = det(X) X", sq.cross_sq() == x.scale(&d)),
            ("Jordan identity", x.jordan(&xx.jordan(&y)) == xx.jordan(&x.jordan(&y))),
            ("2E x X = tr(X)E - X", e.cross(&x).scale(&F::from_i64(2)) == e.scale(&x.trace()).sub(&x)),
        ];
        for (name, ok) in rows {
            t.check(ok, || format!("{alg}: {name} fails for X = {}", x.to_json()));
        }
    }
}

fn traces(t: &mut Tally, s: &mut Sampler, n: usize) {
    for alg in AlgebraId::ALL {
        exact!(alg, traces_on(t, s, alg, n));
    }
}

fn traces_on<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId, n: usize) {
    let d = F::from_i64(alg.dim() as i64);
    for _ in 0..n {
        let x: HMat3<F> = s.mat(alg);
        let tr = x.trace();
        t.check(x.jordan_left_trace() == (d.clone() + F::one()) * tr.clone(), || {
            format!("{alg}: trace of X o . is not (d+1) tr X")
        });
        t.check(x.cross_left_trace() == -F::half() * d.clone() * tr, || {
            format!("{alg}: trace of X x . is not -d tr X / 2")
        });
    }
}

// ---- automorphisms ----

fn verify_word<F: Field>(t: &mut Tally, alg: AlgebraId, word: Vec<Generator<F>>, seed: u64, what: &str) {
    let names: Vec<String> = word.iter().map(|g| g.to_string()).collect();
    if let Some(g) = t.ok(GroupElem::from_word(alg, word), || format!("{alg}: {what}")) {
        let rep = verify_automorphism(&g, seed);
        t.check(rep.passed, || format!("{alg}: {what} [{}]: {}", names.join(", "), rep.failure.unwrap_or_default()));
    }
}

/// Rotations at `n` rational points, then every other family once per
/// slot and algebra, then `n` random words of length 1..=8, then `n / 2`
/// Leibniz probes (at least 50).
fn generators(t: &mut Tally, s: &mut Sampler, n: usize) {
    let algs = AlgebraId::ALL;
    let mut k = 0;
    while k < n {
        let alg = algs[k % algs.len()];
        let before = t.checked;
        exact!(alg, rotation_point(t, s, alg, k));
        if t.checked > before {
            k += 1;
        }
    }
    for alg in algs {
        exact!(alg, fixed_families(t, s, alg));
    }
    for k in 0..n {
        let alg = algs[k % algs.len()];
        let len = 1 + s.below(8);
        exact!(alg, random_word_check(t, s, alg, len, k as u64));
    }
    for k in 0..(n / 2).max(50) {
        let alg = algs[k % algs.len()];
        exact!(alg, leibniz(t, s, alg));
    }
}

fn rotation_point<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId, k: usize) {
    let nu2: i8 = if alg.is_division() || k.is_multiple_of(2) { -1 } else { 1 };
    let u: F = s.scalar(alg);
    let (Ok(rot), Some(a)) = (RotationParams::from_half_angle(nu2, &u), s.unit::<F>(alg, -(nu2 as i64))) else {
        return;
    };
    if let Some(g) = t.ok(Generator::beta(k % 3, rot, a), || format!("{alg}: rotation constructor")) {
        verify_word(t, alg, vec![g], k as u64, "rotation");
    }
}

fn fixed_families<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId) {
    for i in 0..3 {
        let unit = s.unit::<F>(alg, 1).expect("positive units exist");
        let mut gens = vec![Generator::delta(i, unit.clone()), Generator::sigma(i), Generator::beta_hat(i)];
        if alg.dim() <= 4 {
            gens.push(Generator::beta_assoc(i, unit));
        }
        for g in gens {
            if let Some(g) = t.ok(g, || format!("{alg}: generator constructor at slot {}", i + 1)) {
                let name = g.name();
                verify_word(t, alg, vec![g], i as u64, name);
            }
        }
    }
    let kinds: &[TransvectionKind] = if alg.is_complexified() {
        &[TransvectionKind::B23]
    } else if alg.is_split() {
        &[TransvectionKind::B23Prime, TransvectionKind::B2Prime3]
    } else {
        &[]
    };
    for &kind in kinds {
        let tv: F = s.scalar(alg);
        if let Some(g) = t.ok(Generator::transvection(alg, kind, tv), || format!("{alg}: transvection {}", kind.tag())) {
            verify_word(t, alg, vec![g], 3, kind.tag());
        }
    }
}

fn random_word_check<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId, len: usize, seed: u64) {
    let word: Vec<Generator<F>> = random_word(alg, s, len);
    verify_word(t, alg, word, seed, "random word");
}

fn leibniz<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId) {
    let Ok(d) = Derivation::new(s.below(3), s.elem::<F>(alg)) else { return };
    let (x, y): (HMat3<F>, HMat3<F>) = (s.mat(alg), s.mat(alg));
    let jordan = d.apply(&x.jordan(&y)) == d.apply(&x).jordan(&y).add(&x.jordan(&d.apply(&y)));
    let cross = d.apply(&x.cross(&y)) == d.apply(&x).cross(&y).add(&x.cross(&d.apply(&y)));
    t.check(jordan && cross, || format!("{alg}: derivation at slot {} breaks Leibniz", d.i + 1));
}

// ---- classification ----

fn distinct<F: Field>(s: &mut Sampler, alg: AlgebraId, n: usize) -> Vec<F> {
    loop {
        let v: Vec<F> = (0..n).map(|_| s.scalar(alg)).collect();
        if (0..n).all(|a| (a + 1..n).all(|b| v[a] != v[b])) {
            return v;
        }
    }
}

/// Canonical form of `family` with random rational parameters; roots are
/// kept distinct by construction, not by asking the classifier.
fn plant<F: Field>(s: &mut Sampler, alg: AlgebraId, family: Family) -> Result<HMat3<F>> {
    let params: Vec<F> = match family {
        Family::I | Family::I1 => distinct(s, alg, 3),
        Family::I2 => {
            let mut p: Vec<F> = vec![s.real(), s.real()];
            p.push(F::from_i64(1 + s.below(4) as i64));
            p
        }
        Family::II1 | Family::II2 => distinct(s, alg, 2),
        _ => vec![s.scalar(alg)],
    };
    family_representative(alg, family, &params)
}

fn planted(t: &mut Tally, s: &mut Sampler, n: usize) {
    for alg in non_division() {
        for f in Family::ALL.into_iter().filter(|f| f.occurs_on(alg)) {
            for _ in 0..n {
                exact!(alg, planted_once(t, s, alg, f));
            }
        }
    }
    t.notes.push(format!("{} families, {n} instances per (algebra, family)", Family::ALL.len()));
}

fn planted_once<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId, f: Family) {
    let Some(x) = t.ok(plant::<F>(s, alg, f), || format!("{alg} {f}: plant")) else { return };
    let gx = apply_word(&random_word::<F>(alg, s, 2), &x);
    if let Some(label) = t.ok(orbit_invariants(&gx), || format!("{alg} {f}: classify")) {
        let pair = (label.multiplicity, label.v);
        t.check(label.family == f && ADMISSIBLE.contains(&pair), || {
            format!("{alg}: planted {f} classified as {} with (mult, v) = {pair:?}", label.family)
        });
    }
}

fn invariance(t: &mut Tally, s: &mut Sampler, n: usize) {
    let algs = non_division();
    for k in 0..n {
        let alg = algs[k % algs.len()];
        exact!(alg, invariance_once(t, s, alg, k));
    }
}

fn invariance_once<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId, k: usize) {
    // alternate generic matrices with planted degenerate ones so v < 3 occurs
    let x: HMat3<F> = if k.is_multiple_of(2) {
        s.mat(alg)
    } else {
        let fams: Vec<Family> = Family::ALL.into_iter().filter(|f| f.occurs_on(alg)).collect();
        let f = s.pick(&fams);
        match t.ok(plant(s, alg, f), || format!("{alg} {f}: plant")) {
            Some(x) => x,
            None => return,
        }
    };
    let len = 1 + s.below(4);
    let gx = apply_word(&random_word::<F>(alg, s, len), &x);
    let same_poly = gx.char_poly() == x.char_poly();
    let same_v = matches!((gx.v_dim(), x.v_dim()), (Ok(a), Ok(b)) if a == b);
    let Some(orbit) = t.ok(same_orbit(&x, &gx), || format!("{alg}: same_orbit")) else { return };
    t.check(same_poly && same_v && orbit, || {
        format!("{alg}: invariance broken (poly {same_poly}, v {same_v}, orbit {orbit}) for X = {}", x.to_json())
    });
}

// ---- numeric reduction ----

fn round_trip(t: &mut Tally, s: &mut Sampler, n: usize, tol: f64) {
    let algs = non_division();
    for f in Family::ALL {
        let on: Vec<AlgebraId> = algs.iter().copied().filter(|a| f.occurs_on(*a)).collect();
        let mut stats = RoundTripStats::default();
        let mut k = 0;
        while stats.accepted < n {
            let alg = on[k % on.len()];
            k += 1;
            exact!(alg, round_trip_once(t, s, alg, f, tol, &mut stats));
        }
        t.notes.push(format!(
            "{f}: {} samples, {} outside the envelope, worst residual {:.2e}, worst drift {:.2e}",
            stats.accepted, stats.rejected, stats.residual, stats.drift
        ));
    }
    jacobi_octonion(t, s, n);
}

#[derive(Default)]
struct RoundTripStats {
    accepted: usize,
    rejected: usize,
    residual: f64,
    drift: f64,
}

fn round_trip_once<F: Field>(
    t: &mut Tally,
    s: &mut Sampler,
    alg: AlgebraId,
    f: Family,
    tol: f64,
    stats: &mut RoundTripStats,
) {
    let Some(x) = t.ok(plant::<F>(s, alg, f), || format!("{alg} {f}: plant")) else { return };
    let gx = apply_word(&random_word::<F>(alg, s, 4), &x);
    if gx.max_abs() > ENVELOPE * x.max_abs().max(1.0) {
        stats.rejected += 1;
        return;
    }
    stats.accepted += 1;
    if let Some(tr) = t.ok(reduce_to_canonical(&gx), || format!("{alg} {f}: reduce")) {
        stats.residual = stats.residual.max(tr.residual);
        stats.drift = stats.drift.max(tr.invariant_drift);
        t.check(tr.residual < tol && tr.invariant_drift < DRIFT_TOL, || {
            format!("{alg} {f}: residual {:.3e}, drift {:.3e}", tr.residual, tr.invariant_drift)
        });
    }
}

fn jacobi_octonion(t: &mut Tally, s: &mut Sampler, n: usize) {
    let o = AlgebraId::from_tag("O").expect("tag");
    let (mut off_worst, mut root_worst, mut sweeps) = (0.0f64, 0.0f64, 0);
    for _ in 0..n {
        let x: HMat3<Q> = s.mat(o);
        let roots = match cubic_root_structure(&x.char_poly()) {
            Ok(rs) => rs.numeric_roots,
            Err(e) => {
                t.check(false, || format!("O: root structure: {e}"));
                continue;
            }
        };
        let Some(tr) = t.ok(jacobi_sweep(&x.to_c64()), || "O: jacobi".into()) else { continue };
        let off = tr.result.x.iter().map(|a| a.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()).sum::<f64>().sqrt();
        let err = diagonal_root_error(tr.result.r, roots);
        off_worst = off_worst.max(off);
        root_worst = root_worst.max(err);
        sweeps = sweeps.max(tr.sweeps);
        t.check(off < JACOBI_TOL && err < ROOT_TOL, || format!("O: off-diagonal {off:.3e}, root error {err:.3e}"));
    }
    t.notes.push(format!(
        "octonion Jacobi: {n} samples, worst off-diagonal {off_worst:.2e}, worst root error {root_worst:.2e}, at most {sweeps} sweeps"
    ));
}

// ---- nilpotents ----

fn nilpotent(t: &mut Tally, s: &mut Sampler, n: usize) {
    let algs = non_division();
    let (mut m1, mut m23) = (0, 0);
    for k in 0..n {
        let alg = algs[k % algs.len()];
        match exact!(alg, nilpotent_once(t, s, alg)) {
            Some(true) => m1 += 1,
            Some(false) => m23 += 1,
            None => {}
        }
    }
    t.notes.push(format!("{m1} samples in M1, {m23} in M23"));
}

/// Sum of disjoint null pairs `c (e_j + w e_k)` of imaginary units with
/// `N(e_j) = -w^2 N(e_k)`, so the result is imaginary with norm zero.
fn null_imaginary<F: Field>(s: &mut Sampler, alg: AlgebraId) -> AlgElem<F> {
    let d = alg.dim();
    let mut z = AlgElem::zero(alg);
    let pairs: Vec<(usize, usize, F)> = if alg.is_split() {
        // compact imaginary units 1..d/2 against the lower half
        let mut lower: Vec<usize> = (d / 2..d).collect();
        (1..d / 2)
            .map(|j| {
                let k = lower.remove(s.below(lower.len()));
                (j, k, F::from_i64(if s.coin() { 1 } else { -1 }))
            })
            .collect()
    } else {
        let mut imag: Vec<usize> = (1..d).collect();
        let mut out = Vec::new();
        while imag.len() >= 2 {
            let j = imag.remove(s.below(imag.len()));
            let k = imag.remove(s.below(imag.len()));
            let sign = Q::from_i64(if s.coin() { 1 } else { -1 });
            out.push((j, k, F::from_gaussian(&Q::from_i64(0), &sign).expect("complexified scalars")));
        }
        out
    };
    for (j, k, w) in pairs {
        if s.coin() {
            let c: F = s.scalar(alg);
            z.coeffs[j] = c.clone();
            z.coeffs[k] = w * c;
        }
    }
    z
}

/// `M1(x) + M23(y)` with `x = a + z`, `z` null imaginary, which is the
/// nilpotent part of the parameterized set. Returns whether the sample
/// landed in M1.
fn nilpotent_once<F: Field>(t: &mut Tally, s: &mut Sampler, alg: AlgebraId) -> Option<bool> {
    let x = loop {
        let a: F = if s.below(4) == 0 { F::zero() } else { s.scalar(alg) };
        let x = &AlgElem::scalar(alg, a) + &null_imaginary(s, alg);
        let y: AlgElem<F> = match s.below(4) {
            0 => AlgElem::zero(alg),
            1 => s.sparse_elem(alg),
            _ => s.elem(alg),
        };
        let m = t.ok(HMat3::m1_of(&x).and_then(|a| Ok(a.add(&HMat3::m23_of(&y)?))), || format!("{alg}: builders"))?;
        if !m.is_zero() {
            break m;
        }
    };
    let cube = Poly::new(vec![F::zero(), F::zero(), F::zero(), F::one()]);
    let flags = t.ok(Membership::of(&x), || format!("{alg}: membership"))?;
    let nilpotent = x.trace().is_zero() && x.char_poly() == cube;
    t.check(nilpotent && flags.m1 != flags.m23, || {
        format!("{alg}: nilpotent {nilpotent}, in M1 {}, in M23 {} for X = {}", flags.m1, flags.m23, x.to_json())
    });
    if flags.m23 {
        let sq = t.ok(Membership::of(&x.cross_sq()), || format!("{alg}: membership of the square"))?;
        t.check(sq.m1, || format!("{alg}: square of an M23 sample is not in M1: {}", x.to_json()));
    }
    Some(flags.m1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite, n: usize) -> Outcome {
        suite.run(&Config { seed: 1, samples: Some(n), ..Config::default() })
    }

    #[test]
    fn every_suite_passes_at_small_size() {
        for suite in Suite::ALL {
            let n = match suite {
                Suite::Generators => 12,
                Suite::RoundTrip => 3,
                _ => 4,
            };
            let out = small(suite, n);
            assert!(out.passed(), "{suite}: {:?}", out.first_failure);
        }
    }

    #[test]
    fn tags_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(Suite::from_tag(suite.tag()).unwrap(), suite);
        }
        assert!(Suite::from_tag("nope").is_err());
    }

    #[test]
    fn tolerance_is_honoured() {
        let out = Suite::RoundTrip.run(&Config { seed: 1, samples: Some(2), residual_tol: 0.0 });
        assert!(!out.passed());
    }

    #[test]
    fn outcome_json_is_deterministic() {
        let a = small(Suite::Norm, 3).to_json().to_string();
        let b = small(Suite::Norm, 3).to_json().to_string();
        assert_eq!(a, b);
    }
}
