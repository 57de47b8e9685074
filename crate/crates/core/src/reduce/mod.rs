//! Floating-point reduction: explicit generator words carrying a matrix
//! onto its canonical representative. The exact classifier decides the
//! target; this module only constructs the word and reports how close it
//! lands.

use serde_json::{json, Value};

use crate::autgroup::{word_json, Generator, RotationParams, TransvectionKind};
use crate::cdalgebra::{AlgElem, AlgebraId};
use crate::classify::{canonical_representative, orbit_invariants, Family, OrbitLabel, DEFAULT_DIGITS};
use crate::error::{Error, Result};
use crate::jordan::{special_unit, HMat3};
use crate::scalar::{Field, C64};

/// Off-diagonal bound the Jacobi stage must reach (absolute).
pub const JACOBI_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 200;
/// Acceptance bounds for a reduction.
pub const RESIDUAL_TOL: f64 = 1e-8;
pub const DRIFT_TOL: f64 = 1e-9;
/// `|c|` below this (relative) counts as a null vector when no branch is
/// supplied.
pub const NULL_TOL: f64 = 1e-12;

type M = HMat3<C64>;
type G = Generator<C64>;

fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Euclidean size of an element's coefficient vector.
fn mag(a: &AlgElem<C64>) -> f64 {
    a.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn invariants(m: &M) -> [C64; 3] {
    [m.trace(), m.trace_cross_sq(), m.det()]
}

/// Result of a reduction.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub word: Vec<G>,
    pub result: M,
    pub target: M,
    /// Max-abs coordinate distance from `result` to `target`.
    pub residual: f64,
    /// Max change of `tr`, `tr(X x X)` and `det` over the steps, divided
    /// by `s`, `s^2`, `s^3` for `s = max(1, largest starting entry)`.
    pub invariant_drift: f64,
    pub sweeps: usize,
    /// Jacobi steps that lowered the sum of squared diagonal entries.
    pub objective_drops: usize,
    pub family: Option<Family>,
    pub log: Vec<String>,
}

impl ReductionTrace {
    pub fn passed(&self) -> bool {
        self.residual < RESIDUAL_TOL && self.invariant_drift < DRIFT_TOL
    }

    pub fn to_json(&self, with_log: bool) -> Value {
        let mut v = json!({
            "word": word_json(&self.word),
            "result": self.result.to_json(),
            "target": self.target.to_json(),
            "residual": self.residual,
            "invariant_drift": self.invariant_drift,
            "sweeps": self.sweeps,
            "family": self.family.map(Family::tag),
            "passed": self.passed(),
        });
        if with_log {
            v["log"] = json!(self.log);
        }
        v
    }
}

/// Applies generators to a driven matrix and any number of passengers,
/// tracking the invariant drift of each.
struct Walker {
    items: Vec<M>,
    start: Vec<([C64; 3], f64)>,
    word: Vec<G>,
    drift: f64,
    sweeps: usize,
    drops: usize,
    log: Vec<String>,
}

impl Walker {
    fn new(items: Vec<M>) -> Self {
        let start = items.iter().map(|m| (invariants(m), m.max_abs().max(1.0))).collect();
        Walker { items, start, word: Vec::new(), drift: 0.0, sweeps: 0, drops: 0, log: Vec::new() }
    }

    fn x(&self) -> &M {
        &self.items[0]
    }

    fn alg(&self) -> AlgebraId {
        self.items[0].alg
    }

    /// Makes item `k` the driven one.
    fn drive(&mut self, k: usize) {
        self.items.swap(0, k);
        self.start.swap(0, k);
    }

    fn push(&mut self, g: G) {
        for (it, (inv, scale)) in self.items.iter_mut().zip(&self.start) {
            *it = g.apply(it);
            let now = invariants(it);
            for k in 0..3 {
                self.drift = self.drift.max((now[k] - inv[k]).norm() / scale.powi(k as i32 + 1));
            }
        }
        self.word.push(g);
    }

    fn push_r(&mut self, g: Result<G>) -> Result<()> {
        self.push(g?);
        Ok(())
    }

    fn finish(self, result: M, target: M, family: Option<Family>) -> ReductionTrace {
        let residual = result.sub(&target).max_abs();
        ReductionTrace {
            word: self.word,
            result,
            target,
            residual,
            invariant_drift: self.drift,
            sweeps: self.sweeps,
            objective_drops: self.drops,
            family,
            log: self.log,
        }
    }
}

/// Which real slice of the coefficients a Jacobi pass diagonalizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Real,
    Imag,
    /// Real parts of the diagonal and of the lower (compact) half.
    SplitCompact,
}

fn part_scalar(p: Part, z: C64) -> f64 {
    match p {
        Part::Imag => z.im,
        _ => z.re,
    }
}

fn part_elem(p: Part, a: &AlgElem<C64>) -> AlgElem<C64> {
    let h = a.alg.dim() / 2;
    let mut out = a.map(|z| cr(part_scalar(p, *z)));
    if p == Part::SplitCompact {
        for k in h..a.alg.dim() {
            out.coeffs[k] = cr(0.0);
        }
    }
    out
}

fn nxt(i: usize) -> usize {
    (i + 1) % 3
}

fn prv(i: usize) -> usize {
    (i + 2) % 3
}

fn rotation(nu2: i8, t: C64) -> Result<RotationParams<C64>> {
    let (c, s) = if nu2 < 0 { (t.cos(), t.sin()) } else { (t.cosh(), t.sinh()) };
    RotationParams::new(nu2, c, s)
}

/// Half-angle `(c, s)` with `c^2 - s^2 = cos2`, `2sc = sin2` on the circle.
fn circle_half(cos2: C64, sin2: C64) -> Result<RotationParams<C64>> {
    let c = ((cr(1.0) + cos2) * 0.5).sqrt();
    let (c, s) = if c.norm() > 1e-4 {
        (c, sin2 / (c * 2.0))
    } else {
        let s = ((cr(1.0) - cos2) * 0.5).sqrt();
        (sin2 / (s * 2.0), s)
    };
    RotationParams::new(-1, c, s)
}

fn jacobi_rotation(x: &M, j: usize, part: Part) -> Option<Result<G>> {
    let v = part_elem(part, &x.x[j]);
    let eps = mag(&v);
    if eps == 0.0 {
        return None;
    }
    let a = v.scale(&cr(1.0 / eps));
    let w = (part_scalar(part, x.r[nxt(j)]) - part_scalar(part, x.r[prv(j)])) / 2.0;
    let t = eps.atan2(w) / 2.0;
    Some(rotation(-1, cr(t)).and_then(|rot| Generator::beta(j, rot, a)))
}

fn off_norms(x: &M, part: Part) -> [f64; 3] {
    std::array::from_fn(|j| mag(&part_elem(part, &x.x[j])))
}

/// Cyclic Jacobi on one real slice of the driven matrix, largest slot first.
fn jacobi(wk: &mut Walker, part: Part) -> Result<f64> {
    let scale = wk.x().max_abs().max(1.0);
    let floor = 1e-15 * scale;
    let mut prev = f64::INFINITY;
    for sweep in 0..=MAX_SWEEPS {
        let n = off_norms(wk.x(), part);
        let top = n.iter().cloned().fold(0.0, f64::max);
        let stalled = top < 1e-10 * scale && top >= 0.5 * prev;
        if top <= floor || stalled {
            wk.log.push(format!("jacobi {part:?}: {sweep} sweeps, off-diagonal {top:.3e}"));
            wk.sweeps += sweep;
            if top > JACOBI_TOL * scale {
                return Err(Error::NonConvergence { sweeps: sweep, residual: top });
            }
            return Ok(top);
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        prev = top;
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| n[b].total_cmp(&n[a]).then(a.cmp(&b)));
        for j in order {
            if mag(&part_elem(part, &wk.x().x[j])) <= floor {
                continue;
            }
            if let Some(g) = jacobi_rotation(wk.x(), j, part) {
                let before: f64 = wk.x().r.iter().map(|r| part_scalar(part, *r).powi(2)).sum();
                wk.push(g?);
                let after: f64 = wk.x().r.iter().map(|r| part_scalar(part, *r).powi(2)).sum();
                if after < before - 1e-12 * scale * scale {
                    wk.drops += 1;
                }
            }
        }
    }
    let top = off_norms(wk.x(), part).iter().cloned().fold(0.0, f64::max);
    Err(Error::NonConvergence { sweeps: MAX_SWEEPS, residual: top })
}

/// Branch of the slot-1 normalization, fixed by the exact label when known.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Branch {
    /// Decide from the sign/vanishing of `c = (W|W)`.
    Auto,
    /// `W -> rho (E2 - E3)`, `rho` chosen nearest the hint when given.
    Positive(Option<C64>),
    /// Split only: `W -> q F1(b)`, `q > 0`.
    Negative,
    /// `W -> M1` (null, nonzero `W`).
    Zero,
}

fn normalize(wk: &mut Walker, branch: Branch) -> Result<()> {
    let alg = wk.alg();
    if alg.is_split() {
        normalize_split(wk, branch)
    } else if alg.is_complexified() {
        normalize_complex(wk, branch)
    } else {
        Err(Error::Unsupported(format!("no slot normalization over the division algebra {alg}")))
    }
}

fn half_diff(x: &M) -> C64 {
    (x.r[1] - x.r[2]) * 0.5
}

fn normalize_split(wk: &mut Walker, branch: Branch) -> Result<()> {
    let alg = wk.alg();
    let b = special_unit::<C64>(alg)?;
    let lower = part_elem(Part::SplitCompact, &wk.x().x[0]);
    let eps = mag(&lower);
    if eps > 0.0 {
        let w = half_diff(wk.x()).re;
        let t = eps.atan2(w) / 2.0;
        wk.push_r(Generator::beta(0, rotation(-1, cr(t))?, lower.scale(&cr(1.0 / eps))))?;
    } else if half_diff(wk.x()).re < 0.0 {
        wk.push(Generator::BetaHat { i: 0 });
    }
    // x1 is now m b with m in the lower half; rotate m to a positive real
    let noise = 1e-14 * wk.x().max_abs().max(1.0);
    let m = part_elem(Part::SplitCompact, &(&wk.x().x[0] * &b));
    let mm = mag(&m);
    if mm > noise {
        wk.push_r(Generator::delta(2, m.scale(&cr(1.0 / mm))))?;
    }
    let w = half_diff(wk.x()).re;
    let u = -wk.x().x[0].bilinear(&b).re;
    let scale = (w * w + u * u).max(f64::MIN_POSITIVE);
    let branch = match branch {
        Branch::Auto if w == 0.0 && u == 0.0 => return Ok(()),
        Branch::Auto if (w * w - u * u).abs() <= NULL_TOL * scale => Branch::Zero,
        Branch::Auto if w > u => Branch::Positive(None),
        Branch::Auto => Branch::Negative,
        other => other,
    };
    let t = match branch {
        Branch::Positive(_) if u == 0.0 => return Ok(()),
        Branch::Positive(_) if w > u => (u / w).atanh() / 2.0,
        Branch::Negative if u > w => (w / u).atanh() / 2.0,
        Branch::Zero if u > 0.0 => ((w + u) / 2.0).ln() / 2.0,
        _ => {
            return Err(Error::Domain(format!(
                "slot normalization branch {branch:?} does not fit (w, u) = ({w:.3e}, {u:.3e})"
            )))
        }
    };
    wk.push_r(Generator::beta(0, rotation(1, cr(t))?, b))
}

fn normalize_complex(wk: &mut Walker, branch: Branch) -> Result<()> {
    let alg = wk.alg();
    let one = AlgElem::<C64>::one(alg);
    let im = part_elem(Part::Imag, &wk.x().x[0]);
    let eps = mag(&im);
    if eps > 0.0 {
        let t = eps.atan2(half_diff(wk.x()).im) / 2.0;
        wk.push_r(Generator::beta(0, rotation(-1, cr(t))?, im.scale(&cr(1.0 / eps))))?;
    }
    let re = part_elem(Part::Real, &wk.x().x[0]);
    let n = mag(&re);
    if n > 1e-14 * wk.x().max_abs().max(1.0) {
        wk.push_r(Generator::delta(2, re.scale(&cr(1.0 / n))))?;
    }
    let w = half_diff(wk.x());
    let u = wk.x().x[0].bilinear(&one);
    let cc = w * w + u * u;
    let size = (w.norm_sqr() + u.norm_sqr()).max(f64::MIN_POSITIVE);
    let branch = match branch {
        Branch::Auto if size == f64::MIN_POSITIVE => return Ok(()),
        Branch::Auto if cc.norm() <= NULL_TOL * size => Branch::Zero,
        Branch::Auto => Branch::Positive(None),
        other => other,
    };
    match branch {
        Branch::Positive(hint) => {
            let mut rho = cc.sqrt();
            if let Some(h) = hint {
                if (rho + h).norm() < (rho - h).norm() {
                    rho = -rho;
                }
            }
            if rho.norm() == 0.0 {
                return Err(Error::Domain("positive branch on a null slot".into()));
            }
            wk.push_r(Generator::beta(0, circle_half(w / rho, u / rho)?, one))
        }
        Branch::Zero => {
            if u.norm() == 0.0 {
                return Err(Error::Domain("null branch on a vanishing slot".into()));
            }
            // target relation w = -i u
            let iu = C64::new(0.0, 1.0) * u;
            if (w - iu).norm() < (w + iu).norm() {
                wk.push(Generator::Sigma { i: 2 });
            }
            let p = wk.x().x[0].bilinear(&one);
            let cos2 = C64::new(0.0, -1.0) * (p - p.inv()) * 0.5;
            let sin2 = (p + p.inv()) * 0.5;
            wk.push_r(Generator::beta(0, circle_half(cos2, sin2)?, one))
        }
        Branch::Negative => Err(Error::Unsupported("the negative branch exists only over split algebras".into())),
        Branch::Auto => unreachable!(),
    }
}

fn bring_slot_to_front(wk: &mut Walker, m: usize) {
    match m {
        1 => wk.push(Generator::BetaHat { i: 2 }),
        2 => wk.push(Generator::BetaHat { i: 1 }),
        _ => {}
    }
}

fn largest_slot(x: &M) -> (usize, f64) {
    (0..3).map(|k| (k, mag(&x.x[k]))).fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a })
}

/// Carries a diagonal idempotent `E_k` to `E1`.
fn diagonal_to_e1(wk: &mut Walker) {
    let k = (0..3).fold(0, |a, b| if wk.x().r[b].re > wk.x().r[a].re { b } else { a });
    bring_slot_to_front(wk, k);
}

/// Carries the driven idempotent (trace 1, zero cross square) to `E1`.
fn transport(wk: &mut Walker) -> Result<()> {
    let alg = wk.alg();
    let thr = 1e-7 * wk.x().max_abs().max(1.0);
    let case2 = |wk: &mut Walker, m: usize| -> Result<()> {
        bring_slot_to_front(wk, m);
        normalize(wk, Branch::Positive(Some(cr(0.5))))?;
        wk.push(Generator::BetaHat { i: 2 });
        Ok(())
    };
    if alg.is_split() {
        jacobi(wk, Part::SplitCompact)?;
        let (m, size) = largest_slot(wk.x());
        if size <= thr {
            diagonal_to_e1(wk);
            Ok(())
        } else {
            case2(wk, m)
        }
    } else if alg.is_complexified() {
        jacobi(wk, Part::Imag)?;
        let big: Vec<usize> = (0..3).filter(|&k| mag(&part_elem(Part::Real, &wk.x().x[k])) > thr).collect();
        match big.len() {
            0 => {
                diagonal_to_e1(wk);
                Ok(())
            }
            1 => case2(wk, big[0]),
            _ => {
                jacobi(wk, Part::Real)?;
                diagonal_to_e1(wk);
                Ok(())
            }
        }
    } else {
        jacobi(wk, Part::Real)?;
        diagonal_to_e1(wk);
        Ok(())
    }
}

fn check_tau_fixed(x: &M) -> Result<Part> {
    let alg = x.alg;
    let part = if alg.is_split() { Part::SplitCompact } else { Part::Real };
    let scale = x.max_abs().max(1.0);
    let stray = x
        .r
        .iter()
        .map(|r| r.im.abs())
        .chain(x.x.iter().map(|a| mag(&(a - &part_elem(part, a)))))
        .fold(0.0, f64::max);
    if stray > 1e-12 * scale {
        return Err(Error::Domain(format!("input is not tau-fixed (stray part {stray:.3e})")));
    }
    Ok(part)
}

/// Jacobi diagonalization of a tau-fixed matrix (compact real form).
pub fn jacobi_sweep(x: &M) -> Result<ReductionTrace> {
    let part = check_tau_fixed(x)?;
    let mut wk = Walker::new(vec![x.clone()]);
    jacobi(&mut wk, part)?;
    let result = wk.x().clone();
    let target = HMat3::diag(x.alg, result.r);
    Ok(wk.finish(result, target, None))
}

/// Sorted-descending real characteristic roots of a tau-fixed matrix,
/// compared with the diagonal reached by Jacobi.
pub fn diagonal_root_error(diag: [C64; 3], roots: [C64; 3]) -> f64 {
    let mut d: Vec<f64> = diag.iter().map(|z| z.re).collect();
    let mut r: Vec<f64> = roots.iter().map(|z| z.re).collect();
    d.sort_by(f64::total_cmp);
    r.sort_by(f64::total_cmp);
    d.iter().zip(&r).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn in_slot_eigenspace(w: &M) -> bool {
    let s = w.max_abs().max(1.0) * 1e-9;
    w.r[0].norm() <= s && (w.r[1] + w.r[2]).norm() <= s && mag(&w.x[1]) <= s && mag(&w.x[2]) <= s
}

/// Normalizes `W = w(E2 - E3) + F1(x)` with `E1`-stabilizing generators.
pub fn normalize_s2(w: &M, branch: Branch) -> Result<ReductionTrace> {
    if !in_slot_eigenspace(w) {
        return Err(Error::Domain("W is not of the form w(E2 - E3) + F1(x)".into()));
    }
    let mut wk = Walker::new(vec![w.clone()]);
    normalize(&mut wk, branch)?;
    let result = wk.x().clone();
    let target = slot_target(&result);
    Ok(wk.finish(result, target, None))
}

/// Nearest of the four normal forms to an already normalized `W`.
fn slot_target(w: &M) -> M {
    let alg = w.alg;
    let mut t = HMat3::zero(alg);
    let dw = half_diff(w);
    if mag(&w.x[0]) <= 1e-6 * w.max_abs().max(1.0) {
        t.r[1] = dw;
        t.r[2] = -dw;
        return t;
    }
    if dw.norm() <= 1e-6 * w.max_abs().max(1.0) {
        let b = special_unit::<C64>(alg).expect("non-division");
        let q = w.x[0].bilinear(&b) / b.norm();
        return HMat3::f(0, b.scale(&cr(q.re)));
    }
    HMat3::m1(alg).expect("non-division")
}

/// Word carrying the spectral idempotent of `lambda1` to `E1`.
pub fn idempotent_transport(x: &M, lambda1: C64) -> Result<ReductionTrace> {
    let e = x.spectral_idempotent(&lambda1)?;
    let mut wk = Walker::new(vec![e]);
    transport(&mut wk)?;
    let result = wk.x().clone();
    Ok(wk.finish(result, HMat3::e(x.alg, 0), None))
}

fn target_of<E: Field>(label: &OrbitLabel<E>) -> Result<M> {
    Ok(canonical_representative(label, DEFAULT_DIGITS)?.to_c64())
}

fn check_label<E: Field>(x: &M, label: &OrbitLabel<E>) -> Result<()> {
    if x.alg != label.algebra {
        return Err(Error::AlgebraMismatch(label.algebra.to_string(), x.alg.to_string()));
    }
    Ok(())
}

/// Simple-root families (distinct roots, and the repeated-root families).
pub fn reduce_simple_root<E: Field>(x: &M, label: &OrbitLabel<E>) -> Result<ReductionTrace> {
    check_label(x, label)?;
    let target = target_of(label)?;
    let (lambda1, branch) = match label.family {
        Family::I | Family::I1 => (target.r[0], Branch::Positive(Some(half_diff(&target)))),
        Family::I2 => (target.r[0], Branch::Negative),
        Family::II1 | Family::II2 => {
            let s = label.simple_root.as_ref().ok_or_else(|| Error::Internal("label without simple root".into()))?;
            (s.to_c64(), if label.family == Family::II2 { Branch::Zero } else { Branch::Auto })
        }
        f => return Err(Error::Domain(format!("family {f} has no simple root"))),
    };
    let e = x.spectral_idempotent(&lambda1)?;
    let mut wk = Walker::new(vec![e.clone(), x.clone()]);
    wk.log.push(format!("decomposition defect {:.3e}", decomposition_defect(x, &e, lambda1)));
    transport(&mut wk)?;
    wk.log.push(format!("idempotent residual {:.3e}", wk.x().sub(&HMat3::e(x.alg, 0)).max_abs()));
    wk.drive(1);
    if label.family != Family::II1 {
        normalize(&mut wk, branch)?;
    }
    let result = wk.x().clone();
    Ok(wk.finish(result, target, Some(label.family)))
}

/// Largest deviation in the orthogonality relations of the splitting
/// `X = l E + (tr - l)/2 (1 - E) + W`:
/// `(E|W) = 0`, `(E|E) = 1`, `(1-E|1-E) = 2`, `(W|W) = Delta(l)`.
pub fn decomposition_defect(x: &M, e: &M, l: C64) -> f64 {
    let id = HMat3::identity(x.alg);
    let rest = id.sub(e);
    let w = x.sub(&e.scale(&l)).sub(&rest.scale(&((x.trace() - l) * 0.5)));
    [
        e.bilinear(&w),
        e.bilinear(e) - cr(1.0),
        rest.bilinear(&rest) - cr(2.0),
        w.bilinear(&w) - x.delta(&l),
    ]
    .iter()
    .map(|z| z.norm())
    .fold(0.0, f64::max)
}

/// Driven element in the first nilpotent orbit: carry it to `M1`.
fn reduce_first_kind(wk: &mut Walker) -> Result<()> {
    let part = if wk.alg().is_split() { Part::SplitCompact } else { Part::Imag };
    jacobi(wk, part)?;
    let (m, _) = largest_slot(wk.x());
    bring_slot_to_front(wk, m);
    normalize(wk, Branch::Zero)
}

/// Driven element `s M1 + M23(y)`, `N(y) = 1`: carry it to `M23` inside the
/// stabilizer of `M1`.
fn finish_second_kind(wk: &mut Walker) -> Result<()> {
    let alg = wk.alg();
    let y = wk.x().x[2].clone();
    let s = wk.x().r[1];
    let shape = HMat3::m1(alg)?.scale(&s).add(&HMat3::m23_of(&y)?);
    wk.log.push(format!("second-kind shape defect {:.3e}", wk.x().sub(&shape).max_abs()));
    let unit = |a: &AlgElem<C64>| {
        let n = a.norm().sqrt();
        let n = if n.re < 0.0 { -n } else { n };
        a.scale(&n.inv())
    };
    let d = alg.dim();
    let kind = if alg.is_split() { TransvectionKind::B2Prime3 } else { TransvectionKind::B23 };
    if d == 1 {
        if y.coeffs[0].re < 0.0 {
            wk.push(Generator::Sigma { i: 0 });
        }
    } else if (alg.is_complexified() && d <= 4) || (alg.is_split() && d == 2) {
        wk.push_r(Generator::beta_assoc(0, unit(&y)))?;
    } else if alg.is_complexified() {
        // pick a pure imaginary unit orthogonal to y
        let xi = &y.coeffs;
        let mut best = (1, 2, cr(0.0));
        for i in 1..d {
            for j in (i + 1)..d {
                let v = xi[i] * xi[i] + xi[j] * xi[j];
                if v.norm() > best.2.norm() {
                    best = (i, j, v);
                }
            }
        }
        if best.2.norm() < 1e-12 {
            if y.coeffs[0].re < 0.0 {
                wk.push(Generator::Sigma { i: 0 });
            }
        } else {
            let (i, j, v) = best;
            let c = v.sqrt();
            let a = &AlgElem::basis(alg, i).scale(&(xi[j] / c)) - &AlgElem::basis(alg, j).scale(&(xi[i] / c));
            wk.push_r(Generator::delta(0, a))?;
            wk.push(Generator::Sigma { i: 2 });
            let y1 = unit(&wk.x().x[2]);
            wk.push_r(Generator::delta(0, y1))?;
            wk.push(Generator::Sigma { i: 2 });
        }
    } else {
        // split, d >= 4: lower-half unit orthogonal to the lower part of b y
        let b = special_unit::<C64>(alg)?;
        let qbar = part_elem(Part::SplitCompact, &(&b * &y));
        let h = d / 2;
        let qn = mag(&qbar);
        let q1 = (0..h)
            .map(|k| {
                let e = AlgElem::<C64>::basis(alg, k);
                if qn == 0.0 {
                    return e;
                }
                let qh = qbar.scale(&cr(1.0 / qn));
                &e - &qh.scale(&e.bilinear(&qh))
            })
            .fold(None::<AlgElem<C64>>, |best, v| match best {
                Some(b) if mag(&b) >= mag(&v) => Some(b),
                _ => Some(v),
            })
            .expect("lower half is nonempty");
        wk.push_r(Generator::delta(0, unit(&q1)))?;
        let y1 = unit(&wk.x().x[2]);
        wk.push_r(Generator::delta(0, y1))?;
    }
    let s = wk.x().r[1];
    wk.push_r(Generator::transvection(alg, kind, -s * 0.5))
}

/// Single-root families: `lambda E`, `lambda E + M1`, `lambda E + M23`.
pub fn reduce_nilpotent<E: Field>(x: &M, label: &OrbitLabel<E>) -> Result<ReductionTrace> {
    check_label(x, label)?;
    let target = target_of(label)?;
    let lambda = label
        .repeated_root
        .as_ref()
        .ok_or_else(|| Error::Internal("label without repeated root".into()))?
        .to_c64();
    let n = x.sub(&HMat3::identity(x.alg).scale(&lambda));
    let mut wk = match label.family {
        Family::III1 => Walker::new(vec![x.clone()]),
        Family::III2 => {
            let mut wk = Walker::new(vec![n, x.clone()]);
            reduce_first_kind(&mut wk)?;
            wk.drive(1);
            wk
        }
        Family::III3 => {
            let mut wk = Walker::new(vec![n.cross_sq(), n, x.clone()]);
            reduce_first_kind(&mut wk)?;
            wk.drive(1);
            finish_second_kind(&mut wk)?;
            wk.drive(2);
            wk
        }
        f => return Err(Error::Domain(format!("family {f} is not a single-root family"))),
    };
    let result = wk.x().clone();
    wk.log.push(format!("family {}", label.family));
    Ok(wk.finish(result, target, Some(label.family)))
}

/// Dispatch on an exact label computed elsewhere.
pub fn reduce_with_label<E: Field>(x: &M, label: &OrbitLabel<E>) -> Result<ReductionTrace> {
    match label.family {
        Family::III1 | Family::III2 | Family::III3 => reduce_nilpotent(x, label),
        _ => reduce_simple_root(x, label),
    }
}

/// Division algebras: diagonalize a tau-fixed matrix and sort the diagonal
/// in descending order.
fn reduce_division(x: &M) -> Result<ReductionTrace> {
    let part = check_tau_fixed(x)?;
    let mut wk = Walker::new(vec![x.clone()]);
    jacobi(&mut wk, part)?;
    let r = wk.x().r;
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| r[b].re.total_cmp(&r[a].re));
    for g in crate::autgroup::permutation_word::<C64>(idx)? {
        wk.push(g);
    }
    let result = wk.x().clone();
    let target = HMat3::diag(x.alg, result.r).map(|z| cr(z.re));
    Ok(wk.finish(result, target, None))
}

/// Entry point: exact input is classified exactly, then reduced in floats.
/// Float input needs a label (`reduce_with_label`) unless it is a
/// tau-fixed matrix over a division algebra.
pub fn reduce_to_canonical<F: Field>(x: &HMat3<F>) -> Result<ReductionTrace> {
    if x.alg.is_division() {
        return reduce_division(&x.to_c64());
    }
    if !F::EXACT {
        return Err(Error::Precision("float input needs an exact label; pass exact entries".into()));
    }
    let label = orbit_invariants(x)?;
    reduce_with_label(&x.to_c64(), &label)
}

#[cfg(test)]
mod tests;
