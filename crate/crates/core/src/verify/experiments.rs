use std::ops::Range;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::report::{Verdict, VerdictReport};
use super::scan::{Counters, Hit, Scan, ScanOutcome};
use super::small::SmallField;
use super::ExperimentSpec;
use crate::arith::{checked_pow, prime_power};
use crate::error::{invalid, Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::linpoly::QPoly;
use crate::planar::{check_family_params, planar_family_check, q_from_pair};
use crate::quadform::{is_permutation_brute, permutes_cosets};
use crate::spread::{component_from_pair, orbit, OrbitKind, Spread, SpreadKind};

/// How a component is parametrized by a `q`-polynomial `L`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentForm {
    /// `{x + δL(x)}`
    #[serde(rename = "x+dL")]
    XPlusDeltaL,
    /// `{L(x) + δx}`
    #[serde(rename = "L+dx")]
    LPlusDeltaX,
}

impl ComponentForm {
    /// `(A, B)` with the component `{A(x) + δB(x)}`.
    pub fn pair(self, l: &QPoly) -> (QPoly, QPoly) {
        let id = QPoly::identity(l.ctx());
        match self {
            ComponentForm::XPlusDeltaL => (id, l.clone()),
            ComponentForm::LPlusDeltaX => (l.clone(), id),
        }
    }
}

/// What the kernel follow-up found for a candidate whose orbit is a spread.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KernelClass {
    /// `L` is linear over a subfield of this `F_p`-degree, larger than `F_q`.
    Linear(u32),
    /// Kernel size of the verified `β`-orbit spread.
    Spread(u64),
}

/// Kernel of the `β`-orbit spread of the component, or the larger linearity
/// field of `L` that already forces a larger kernel.
pub fn kernel_class(form: ComponentForm, l: &QPoly, delta: Elt) -> Result<KernelClass> {
    let ctx = l.ctx();
    let deg = l.linearity_field();
    if deg > ctx.e() {
        return Ok(KernelClass::Linear(deg));
    }
    let (a, b) = form.pair(l);
    let w = component_from_pair(&a, &b, delta)?;
    let mut s = Spread::new(ctx, SpreadKind::Custom, orbit(ctx, &w, OrbitKind::Beta));
    if !s.verify()? {
        return Err(Error::Inconsistent(
            "Q permutes but the beta-orbit is not a spread".into(),
        ));
    }
    Ok(KernelClass::Spread(s.kernel().expect("verified").size))
}

pub(crate) fn field_for(q: u64, n: u32) -> Result<Arc<FieldCtx>> {
    let (p, e) = prime_power(q).ok_or_else(|| invalid(format!("{q} is not a prime power")))?;
    Ok(Arc::new(FieldCtx::new(p, e, n)?))
}

fn check_work(work: u128, budget: u64) -> Result<()> {
    if work > budget as u128 {
        return Err(Error::BudgetExceeded {
            size: work,
            budget,
        });
    }
    Ok(())
}

/// `F_{q^{2n}} ∖ F_{q^n}` in encoding order.
pub fn outside_mid(ctx: &FieldCtx) -> Vec<Elt> {
    let mut v: Vec<Elt> = ctx
        .elements(ctx.ambient())
        .filter(|&d| !ctx.contains(ctx.mid_field(), d))
        .collect();
    v.sort();
    v
}

fn finish(
    experiment: &str,
    params: Value,
    candidates: u64,
    out: ScanOutcome,
    started: Instant,
) -> VerdictReport {
    VerdictReport {
        experiment: experiment.to_string(),
        params,
        verdict: if out.hit.is_some() {
            Verdict::Counterexample
        } else {
            Verdict::Confirmed
        },
        counterexample: out.hit.map(|h| h.payload),
        candidates,
        scanned: out.scanned,
        counters: out.counters,
        wall_time_secs: started.elapsed().as_secs_f64(),
    }
}

/// `Q = A² + sAB + tB²` on `F_{q^n}` with index tables, for a fixed `L`.
struct MidScan {
    ctx: Arc<FieldCtx>,
    sf: SmallField,
    frob: Vec<Vec<u16>>,
    form: ComponentForm,
    deltas: Vec<Elt>,
    pair_of: Vec<u32>,
    pairs: Vec<(u16, u16)>,
}

impl MidScan {
    fn new(ctx: &Arc<FieldCtx>, form: ComponentForm) -> Result<Self> {
        let sf = SmallField::new(ctx, ctx.mid_field())?;
        let frob = (0..ctx.n()).map(|j| sf.pow_map(ctx.q().pow(j))).collect();
        let deltas = outside_mid(ctx);
        let mut pairs: Vec<(u16, u16)> = Vec::new();
        let mut pair_of = Vec::with_capacity(deltas.len());
        for &d in &deltas {
            let dq = ctx.frob_q(d, ctx.n());
            let st = (
                sf.index(ctx, ctx.add(d, dq)),
                sf.index(ctx, ctx.mul(d, dq)),
            );
            let id = match pairs.iter().position(|&p| p == st) {
                Some(i) => i,
                None => {
                    pairs.push(st);
                    pairs.len() - 1
                }
            };
            pair_of.push(id as u32);
        }
        Ok(MidScan {
            ctx: ctx.clone(),
            sf,
            frob,
            form,
            deltas,
            pair_of,
            pairs,
        })
    }

    fn size(&self) -> usize {
        self.sf.size()
    }

    /// Coefficients of the `li`-th polynomial, `c_0` most significant.
    fn coeffs(&self, mut li: u64) -> Vec<u16> {
        let m = self.size() as u64;
        let n = self.ctx.n() as usize;
        let mut c = vec![0u16; n];
        for j in (0..n).rev() {
            c[j] = (li % m) as u16;
            li /= m;
        }
        c
    }

    fn qpoly(&self, coeffs: &[u16]) -> QPoly {
        let c: Vec<Elt> = coeffs.iter().map(|&i| self.sf.elt(i)).collect();
        QPoly::new(&self.ctx, &c).expect("coefficients lie in F_{q^n}")
    }

    fn values(&self, coeffs: &[u16]) -> Vec<u16> {
        (0..self.size())
            .map(|x| {
                coeffs.iter().zip(&self.frob).fold(0u16, |acc, (&c, f)| {
                    self.sf.add(acc, self.sf.mul(c, f[x]))
                })
            })
            .collect()
    }

    #[inline(always)]
    fn q_at(&self, x: u16, lx: u16, s: u16, t: u16) -> u16 {
        let (a, b) = match self.form {
            ComponentForm::XPlusDeltaL => (x, lx),
            ComponentForm::LPlusDeltaX => (lx, x),
        };
        let sf = &self.sf;
        let v = sf.add(sf.mul(a, a), sf.mul(s, sf.mul(a, b)));
        sf.add(v, sf.mul(t, sf.mul(b, b)))
    }

    /// `Q` permutes `F_{q^n}`.
    fn permutes(&self, lv: &[u16], pair: usize, seen: &mut Stamps) -> bool {
        let (s, t) = self.pairs[pair];
        seen.next();
        (0..self.size()).all(|x| seen.insert(self.q_at(x as u16, lv[x], s, t) as usize))
    }

    /// `Q` permutes `F_{q^n}^*/F_q^*`; coset labels are indices mod `classes`.
    fn permutes_cosets(&self, lv: &[u16], pair: usize, seen: &mut Stamps) -> bool {
        let (s, t) = self.pairs[pair];
        let classes = (self.size() - 1) / (self.ctx.q() as usize - 1);
        seen.next();
        (1..=classes).all(|x| {
            let v = self.q_at(x as u16, lv[x], s, t);
            v != 0 && seen.insert((v as usize - 1) % classes)
        })
    }
}

/// Visited set cleared in O(1) by bumping a generation stamp.
struct Stamps {
    marks: Vec<u32>,
    stamp: u32,
}

impl Stamps {
    fn new(size: usize) -> Self {
        Stamps {
            marks: vec![0; size],
            stamp: 0,
        }
    }

    fn next(&mut self) {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.marks.fill(0);
            self.stamp = 1;
        }
    }

    /// `false` if already present.
    #[inline(always)]
    fn insert(&mut self, i: usize) -> bool {
        std::mem::replace(&mut self.marks[i], self.stamp) != self.stamp
    }
}

fn elts_json(c: &[Elt]) -> Vec<u32> {
    c.iter().map(|e| e.0).collect()
}

/// Shared driver for the two type-C nonexistence scans.
fn no_typec(
    spec: &ExperimentSpec,
    name: &str,
    ctx: &Arc<FieldCtx>,
    form: ComponentForm,
    cosets: bool,
) -> Result<VerdictReport> {
    let started = Instant::now();
    let mid_size = ctx.qn();
    let n = ctx.n();
    let polys = checked_pow(mid_size, n).ok_or_else(|| invalid("search space overflows"))?;
    let nd = ctx.order() - mid_size;
    let total = polys * nd as u128;
    check_work(total * mid_size as u128, spec.budget)?;
    let total = total as u64;
    let ms = MidScan::new(ctx, form)?;
    let params = json!({"q": ctx.q(), "n": n, "form": form});
    let q = ctx.q();
    let scan = Scan {
        experiment: name,
        params: &params,
        total,
        jobs: spec.jobs,
        checkpoint: spec.checkpoint.as_deref(),
    };
    let work = |r: Range<u64>, c: &mut Counters| -> Result<Option<Hit>> {
        let mut seen = Stamps::new(ms.size());
        let mut memo = vec![-1i8; ms.pairs.len()];
        let mut cur = u64::MAX;
        let mut coeffs = Vec::new();
        let mut lv = Vec::new();
        let (mut hits, mut excluded) = (0u64, 0u64);
        let mut found = None;
        for ci in r {
            let (li, di) = (ci / nd, (ci % nd) as usize);
            if li != cur {
                coeffs = ms.coeffs(li);
                lv = ms.values(&coeffs);
                memo.fill(-1);
                cur = li;
            }
            let injected = spec.inject == Some(ci);
            let pid = ms.pair_of[di] as usize;
            if memo[pid] < 0 {
                let ok = if cosets {
                    ms.permutes_cosets(&lv, pid, &mut seen)
                } else {
                    ms.permutes(&lv, pid, &mut seen)
                };
                memo[pid] = ok as i8;
            }
            if memo[pid] == 0 && !injected {
                continue;
            }
            let l = ms.qpoly(&coeffs);
            let delta = ms.deltas[di];
            let mut payload = json!({
                "index": ci,
                "L": elts_json(l.coeffs()),
                "delta": delta.0,
                "injected": injected,
            });
            if injected {
                found = Some(Hit { index: ci, payload });
                break;
            }
            hits += 1;
            match kernel_class(form, &l, delta)? {
                KernelClass::Spread(k) if k == q => {
                    payload["kernel"] = json!(k);
                    found = Some(Hit { index: ci, payload });
                    break;
                }
                _ => excluded += 1,
            }
        }
        c.add(if cosets { "permutes_cosets" } else { "permutations" }, hits);
        c.add("excluded_larger_kernel", excluded);
        Ok(found)
    };
    let out = scan.run(work)?;
    Ok(finish(name, params, total, out, started))
}

/// No type-C spread with kernel `F_q` for odd `q` and even `n`.
pub fn verify_no_typec_odd(spec: &ExperimentSpec) -> Result<VerdictReport> {
    let q = spec.q.unwrap_or(3);
    let n = spec.n.unwrap_or(2);
    if q.is_multiple_of(2) || !n.is_multiple_of(2) || n == 0 {
        return Err(invalid("no-typec-odd needs q odd and n even"));
    }
    let ctx = field_for(q, n)?;
    no_typec(spec, "no-typec-odd", &ctx, ComponentForm::XPlusDeltaL, true)
}

/// No type-C spread of `F_{q^8}` with kernel `F_q`.
pub fn verify_no_typec_even8(spec: &ExperimentSpec) -> Result<VerdictReport> {
    let q = spec.q.unwrap_or(2);
    if !q.is_multiple_of(2) {
        return Err(Error::OddCharacteristic);
    }
    if spec.n.is_some_and(|n| n != 4) {
        return Err(invalid("no-typec-even8 has n = 4"));
    }
    let ctx = field_for(q, 4)?;
    no_typec(spec, "no-typec-even8", &ctx, ComponentForm::LPlusDeltaX, false)
}

/// Monic `q`-polynomials of `q`-degree 1 and 2 over `F_{q^3}`, in the order
/// `X^q + bX` by `b`, then `X^{q^2} + aX^q + bX` by `(a, b)`.
fn monic_coeffs(li: u64, m: u64) -> [u16; 3] {
    if li < m {
        [li as u16, 1, 0]
    } else {
        let r = li - m;
        [(r % m) as u16, (r / m) as u16, 1]
    }
}

/// `u ∈ F_{q^3}^*` and `c ∈ F_{q^3}` with `L(x) = u^{-1}tr(u^q x) + cx`.
fn trace_shapes(l: &QPoly) -> Vec<(Elt, Elt)> {
    let ctx = l.ctx();
    let mid = ctx.mid_field();
    let tr = QPoly::trace(ctx);
    let basis = crate::spread::mid_p_basis(ctx);
    ctx.elements(mid)
        .skip(1)
        .filter_map(|u| {
            let ui = ctx.inv(u);
            let uq = ctx.frob_q(u, 1);
            let rest = |x: Elt| ctx.sub(l.eval_unchecked(x), ctx.mul(ui, tr.eval_unchecked(ctx.mul(uq, x))));
            let c = rest(Elt::ONE);
            basis
                .iter()
                .all(|&x| rest(x) == ctx.mul(c, x))
                .then_some((u, c))
        })
        .collect()
}

fn shape_predicate(ctx: &FieldCtx, shapes: &[(Elt, Elt)], delta: Elt) -> bool {
    shapes.iter().any(|&(u, c)| {
        let d = ctx.add(delta, c);
        let di = ctx.inv(d);
        let v = ctx.add(di, ctx.frob_q(di, 3));
        let w = ctx.mul(v, ctx.pow(u, ctx.q() - 1));
        !w.is_zero() && ctx.contains(ctx.base_field(), w)
    })
}

/// The classification predicate for `L(x) + δx`, `q` even, `n = 3`.
pub fn even3_predicate(l: &QPoly, delta: Elt) -> bool {
    shape_predicate(l.ctx(), &trace_shapes(l), delta)
}

/// Brute permutation test agrees with the classification predicate.
pub fn verify_even_n3_classification(spec: &ExperimentSpec) -> Result<VerdictReport> {
    let started = Instant::now();
    let q = spec.q.unwrap_or(2);
    if !q.is_multiple_of(2) {
        return Err(Error::OddCharacteristic);
    }
    if spec.n.is_some_and(|n| n != 3) {
        return Err(invalid("even-n3-classification has n = 3"));
    }
    let ctx = field_for(q, 3)?;
    let m = ctx.qn();
    let nl = m + m * m;
    let nd = ctx.order() - m;
    check_work(nl as u128 * nd as u128 * m as u128, spec.budget)?;
    let total = nl * nd;
    let ms = MidScan::new(&ctx, ComponentForm::LPlusDeltaX)?;
    let name = "even-n3-classification";
    let params = json!({"q": q, "n": 3});
    let scan = Scan {
        experiment: name,
        params: &params,
        total,
        jobs: spec.jobs,
        checkpoint: spec.checkpoint.as_deref(),
    };
    let work = |r: Range<u64>, c: &mut Counters| -> Result<Option<Hit>> {
        let mut seen = Stamps::new(ms.size());
        let mut cur = u64::MAX;
        let mut l = QPoly::zero(&ctx);
        let mut lv = Vec::new();
        let mut shapes = Vec::new();
        let mut perms = 0u64;
        let mut found = None;
        for ci in r {
            let (li, di) = (ci / nd, (ci % nd) as usize);
            if li != cur {
                let coeffs = monic_coeffs(li, m);
                l = ms.qpoly(&coeffs);
                lv = ms.values(&coeffs);
                shapes = trace_shapes(&l);
                cur = li;
            }
            let delta = ms.deltas[di];
            let brute = ms.permutes(&lv, ms.pair_of[di] as usize, &mut seen);
            let mut pred = shape_predicate(&ctx, &shapes, delta);
            let injected = spec.inject == Some(ci);
            if injected {
                pred = !brute;
            }
            perms += brute as u64;
            if brute != pred {
                found = Some(Hit {
                    index: ci,
                    payload: json!({
                        "index": ci,
                        "L": elts_json(l.coeffs()),
                        "delta": delta.0,
                        "permutation": brute,
                        "predicate": pred,
                        "injected": injected,
                    }),
                });
                break;
            }
        }
        c.add("permutation_pairs", perms);
        Ok(found)
    };
    let out = scan.run(work)?;
    Ok(finish(name, params, total, out, started))
}

fn hermite_ctx_check(ctx: &FieldCtx, delta: Elt) -> Result<()> {
    if !ctx.is_even() {
        return Err(Error::OddCharacteristic);
    }
    if ctx.n() != 3 {
        return Err(invalid("the Hermite check needs n = 3"));
    }
    ctx.ensure_in(ctx.ambient(), delta)?;
    if ctx.contains(ctx.mid_field(), delta) {
        return Err(invalid("delta must lie outside F_{q^3}"));
    }
    Ok(())
}

/// Coefficient of `X^{q^3-1}` in `Q^{q^2-1} mod X^{q^3} - X` for
/// `Q = (X^q + δX)(X^q + δ^{q^3}X)`, by polynomial arithmetic and by the
/// closed form `s^{q^2+q-1} Σ_{ℓ<e} (ts^{-2})^{2^ℓ q}`.
pub fn hermite_coefficient(ctx: &FieldCtx, delta: Elt) -> Result<(Elt, Elt)> {
    hermite_ctx_check(ctx, delta)?;
    let q = ctx.q() as usize;
    let dq = ctx.frob_q(delta, 3);
    let s = ctx.add(delta, dq);
    let t = ctx.mul(delta, dq);
    let top = q * q * q;
    let reduce = |k: usize| if k >= top { (k - 1) % (top - 1) + 1 } else { k };
    let qpoly = [(2 * q, Elt::ONE), (q + 1, s), (2, t)];
    let mut acc = vec![Elt::ZERO; top];
    acc[0] = Elt::ONE;
    for _ in 0..q * q - 1 {
        let mut next = vec![Elt::ZERO; top];
        for (k, &c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(j, d) in &qpoly {
                let slot = &mut next[reduce(k + j)];
                *slot = ctx.add(*slot, ctx.mul(c, d));
            }
        }
        acc = next;
    }
    let brute = acc[top - 1];

    let r = ctx.mul(t, ctx.inv(ctx.mul(s, s)));
    let sum = ctx.sum((0..ctx.e()).map(|l| ctx.pow(r, (1u64 << l) * q as u64)));
    let closed = ctx.mul(ctx.pow(s, (q * q + q - 1) as u64), sum);
    Ok((brute, closed))
}

/// The two computations agree and the coefficient is nonzero.
pub fn hermite_coefficient_check(ctx: &FieldCtx, delta: Elt) -> Result<bool> {
    let (brute, closed) = hermite_coefficient(ctx, delta)?;
    Ok(brute == closed && !brute.is_zero())
}

pub fn verify_hermite(spec: &ExperimentSpec) -> Result<VerdictReport> {
    let started = Instant::now();
    let q = spec.q.unwrap_or(2);
    if !q.is_multiple_of(2) {
        return Err(Error::OddCharacteristic);
    }
    let ctx = field_for(q, 3)?;
    check_work(ctx.order() as u128 * (q as u128).pow(5), spec.budget)?;
    let deltas = outside_mid(&ctx);
    let total = deltas.len() as u64;
    let name = "hermite";
    let params = json!({"q": q, "n": 3});
    let scan = Scan {
        experiment: name,
        params: &params,
        total,
        jobs: spec.jobs,
        checkpoint: spec.checkpoint.as_deref(),
    };
    let work = |r: Range<u64>, _: &mut Counters| -> Result<Option<Hit>> {
        for ci in r {
            let delta = deltas[ci as usize];
            let (brute, closed) = hermite_coefficient(&ctx, delta)?;
            let injected = spec.inject == Some(ci);
            if injected || brute != closed || brute.is_zero() {
                return Ok(Some(Hit {
                    index: ci,
                    payload: json!({
                        "index": ci,
                        "delta": delta.0,
                        "brute": brute.0,
                        "closed": closed.0,
                        "injected": injected,
                    }),
                }));
            }
        }
        Ok(None)
    };
    let out = scan.run(work)?;
    Ok(finish(name, params, total, out, started))
}

/// Value tables for `(aX + bX^{q^m})^2 - wX^{2q^k}` on `F_{q^{2m}}`.
struct PlanarTables {
    x2: Vec<Elt>,
    x1qm: Vec<Elt>,
    x2qm: Vec<Elt>,
    wx2qk: Vec<Elt>,
}

impl PlanarTables {
    fn new(ctx: &FieldCtx, w: Elt, k: u32) -> Self {
        let m = ctx.n();
        let elts: Vec<Elt> = (0..ctx.order() as u32).map(Elt).collect();
        let sq = |x: Elt| ctx.mul(x, x);
        PlanarTables {
            x2: elts.iter().map(|&x| sq(x)).collect(),
            x1qm: elts.iter().map(|&x| ctx.mul(x, ctx.frob_q(x, m))).collect(),
            x2qm: elts.iter().map(|&x| sq(ctx.frob_q(x, m))).collect(),
            wx2qk: elts.iter().map(|&x| ctx.mul(w, sq(ctx.frob_q(x, k)))).collect(),
        }
    }

    fn is_planar(&self, ctx: &FieldCtx, a: Elt, b: Elt, counts: &mut Vec<u8>) -> bool {
        let a2 = ctx.mul(a, a);
        let ab2 = ctx.mul(ctx.scalar(2), ctx.mul(a, b));
        let b2 = ctx.mul(b, b);
        counts.clear();
        counts.resize(self.x2.len(), 0);
        for x in 0..self.x2.len() {
            let v = ctx.add(ctx.mul(a2, self.x2[x]), ctx.mul(ab2, self.x1qm[x]));
            let v = ctx.sub(ctx.add(v, ctx.mul(b2, self.x2qm[x])), self.wx2qk[x]);
            let slot = &mut counts[v.0 as usize];
            *slot += 1;
            if *slot > 2 || (v.is_zero() && *slot > 1) {
                return false;
            }
        }
        true
    }
}

/// Default number of random `ab ≠ 0` pairs in sample mode.
pub const DEFAULT_PLANAR_SAMPLE: u64 = 10_000;

/// `(aX + bX^{q^m})^2 - wX^{2q^k}` is planar iff `ab = 0`.
pub fn verify_planar_dichotomy(spec: &ExperimentSpec) -> Result<VerdictReport> {
    let started = Instant::now();
    let q = spec.q.unwrap_or(3);
    let m = spec.m.or(spec.n).unwrap_or(3);
    let k = spec.k.unwrap_or(1);
    let ctx = field_for(q, m)?;
    let w = ctx.least_nonsquare(ctx.ambient())?;
    check_family_params(&ctx, w, k)?;
    let size = ctx.order();
    let sample = spec.sample.unwrap_or(DEFAULT_PLANAR_SAMPLE);
    let total: u128 = if spec.full {
        size as u128 * size as u128
    } else {
        (2 * size - 1 + sample) as u128
    };
    check_work(total * size as u128, spec.budget)?;
    let total = total as u64;
    let boundary = 2 * size - 1;
    let random: Vec<(Elt, Elt)> = if spec.full {
        Vec::new()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        (0..sample)
            .map(|_| {
                let a = rng.gen_range(1..size as u32);
                let b = rng.gen_range(1..size as u32);
                (Elt(a), Elt(b))
            })
            .collect()
    };
    let pair = |ci: u64| -> (Elt, Elt) {
        if spec.full {
            (Elt((ci / size) as u32), Elt((ci % size) as u32))
        } else if ci < size {
            (Elt(ci as u32), Elt::ZERO)
        } else if ci < boundary {
            (Elt::ZERO, Elt((ci - size + 1) as u32))
        } else {
            random[(ci - boundary) as usize]
        }
    };
    let tables = PlanarTables::new(&ctx, w, k);
    let name = "planar-dichotomy";
    let params = json!({
        "q": q, "m": m, "k": k, "w": w.0,
        "mode": if spec.full { "full" } else { "sample" },
        "sample": if spec.full { Value::Null } else { json!(sample) },
        "seed": if spec.full { Value::Null } else { json!(spec.seed) },
    });
    let scan = Scan {
        experiment: name,
        params: &params,
        total,
        jobs: spec.jobs,
        checkpoint: spec.checkpoint.as_deref(),
    };
    let work = |r: Range<u64>, c: &mut Counters| -> Result<Option<Hit>> {
        let mut counts = Vec::new();
        let mut planar_count = 0u64;
        let mut found = None;
        for ci in r {
            let (a, b) = pair(ci);
            let planar = tables.is_planar(&ctx, a, b, &mut counts);
            planar_count += planar as u64;
            let injected = spec.inject == Some(ci);
            if injected || planar != (a.is_zero() || b.is_zero()) {
                found = Some(Hit {
                    index: ci,
                    payload: json!({
                        "index": ci,
                        "a": a.0,
                        "b": b.0,
                        "planar": planar,
                        "injected": injected,
                    }),
                });
                break;
            }
        }
        c.add("planar", planar_count);
        Ok(found)
    };
    let out = scan.run(work)?;
    Ok(finish(name, params, total, out, started))
}

fn num<T: TryFrom<u64>>(v: &Value, key: &str) -> Result<T> {
    v.get(key)
        .and_then(Value::as_u64)
        .and_then(|x| T::try_from(x).ok())
        .ok_or_else(|| invalid(format!("missing or bad field `{key}`")))
}

fn elt_list(v: &Value, key: &str) -> Result<Vec<Elt>> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| invalid(format!("missing field `{key}`")))?;
    arr.iter()
        .map(|x| {
            x.as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .map(Elt)
                .ok_or_else(|| invalid(format!("bad entry in `{key}`")))
        })
        .collect()
}

/// Recomputes a counterexample payload with the general library routines
/// and reports whether it really violates the statement under test.
pub fn candidate_violates(experiment: &str, params: &Value, payload: &Value) -> Result<bool> {
    let q: u64 = num(params, "q")?;
    match experiment {
        "no-typec-odd" | "no-typec-even8" => {
            let ctx = field_for(q, num(params, "n")?)?;
            let form: ComponentForm = serde_json::from_value(
                params.get("form").cloned().ok_or_else(|| invalid("missing form"))?,
            )?;
            let l = QPoly::new(&ctx, &elt_list(payload, "L")?)?;
            let delta = Elt(num(payload, "delta")?);
            ctx.ensure_in(ctx.ambient(), delta)?;
            let (a, b) = form.pair(&l);
            let qf = q_from_pair(&a, &b, delta)?;
            let spread = if ctx.is_even() {
                is_permutation_brute(&qf)
            } else {
                permutes_cosets(&qf)?
            };
            Ok(spread && kernel_class(form, &l, delta)? == KernelClass::Spread(q))
        }
        "even-n3-classification" => {
            let ctx = field_for(q, 3)?;
            let l = QPoly::new(&ctx, &elt_list(payload, "L")?)?;
            let delta = Elt(num(payload, "delta")?);
            ctx.ensure_in(ctx.ambient(), delta)?;
            let qf = q_from_pair(&l, &QPoly::identity(&ctx), delta)?;
            Ok(is_permutation_brute(&qf) != even3_predicate(&l, delta))
        }
        "hermite" => {
            let ctx = field_for(q, 3)?;
            Ok(!hermite_coefficient_check(&ctx, Elt(num(payload, "delta")?))?)
        }
        "planar-dichotomy" => {
            let ctx = field_for(q, num(params, "m")?)?;
            let (a, b) = (Elt(num(payload, "a")?), Elt(num(payload, "b")?));
            let w = Elt(num(params, "w")?);
            let planar = planar_family_check(&ctx, a, b, w, num(params, "k")?)?;
            Ok(planar != (a.is_zero() || b.is_zero()))
        }
        other => Err(Error::UnknownExperiment(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{planar_family_poly, q_from_component};
    use crate::quadform::DOPoly;

    fn spec(name: &str) -> ExperimentSpec {
        ExperimentSpec {
            jobs: 1,
            ..ExperimentSpec::new(name)
        }
    }

    #[test]
    fn fast_mid_scan_matches_library() {
        for (q, n, form, cosets) in [
            (3, 2, ComponentForm::XPlusDeltaL, true),
            (2, 4, ComponentForm::LPlusDeltaX, false),
            (2, 3, ComponentForm::LPlusDeltaX, false),
        ] {
            let ctx = field_for(q, n).unwrap();
            let ms = MidScan::new(&ctx, form).unwrap();
            let mut seen = Stamps::new(ms.size());
            let polys = (ms.size() as u64).pow(n);
            for li in (0..polys).step_by((polys / 97).max(1) as usize) {
                let coeffs = ms.coeffs(li);
                let l = ms.qpoly(&coeffs);
                let lv = ms.values(&coeffs);
                for x in 0..ms.size() {
                    assert_eq!(ms.sf.elt(lv[x]), l.eval_unchecked(ms.sf.elt(x as u16)));
                }
                for (di, &d) in ms.deltas.iter().enumerate().step_by(7) {
                    let (a, b) = form.pair(&l);
                    let qf = q_from_pair(&a, &b, d).unwrap();
                    let pid = ms.pair_of[di] as usize;
                    let (fast, slow) = if cosets {
                        (ms.permutes_cosets(&lv, pid, &mut seen), permutes_cosets(&qf).unwrap())
                    } else {
                        (ms.permutes(&lv, pid, &mut seen), is_permutation_brute(&qf))
                    };
                    assert_eq!(fast, slow, "q={q} n={n} L={li} delta={d}");
                }
            }
        }
    }

    #[test]
    fn coefficient_order_is_lexicographic() {
        let ctx = field_for(2, 4).unwrap();
        let ms = MidScan::new(&ctx, ComponentForm::LPlusDeltaX).unwrap();
        assert_eq!(ms.coeffs(1), vec![0, 0, 0, 1]);
        assert_eq!(ms.coeffs(16), vec![0, 0, 1, 0]);
        assert_eq!(ms.coeffs(16u64.pow(3)), vec![1, 0, 0, 0]);
        assert_eq!(ms.pairs.len(), 120);
    }

    #[test]
    fn desarguesian_candidates_are_excluded() {
        let ctx = field_for(2, 4).unwrap();
        let d = outside_mid(&ctx)[0];
        let l = QPoly::zero(&ctx);
        let qf = q_from_pair(&l, &QPoly::identity(&ctx), d).unwrap();
        assert!(is_permutation_brute(&qf));
        assert_eq!(
            kernel_class(ComponentForm::LPlusDeltaX, &l, d).unwrap(),
            KernelClass::Linear(4)
        );
        let payload = json!({"L": [0, 0, 0, 0], "delta": d.0});
        let params = json!({"q": 2, "n": 4, "form": "L+dx"});
        assert!(!candidate_violates("no-typec-even8", &params, &payload).unwrap());
    }

    #[test]
    fn monomial_components_never_permute_at_even_n() {
        let ctx = field_for(2, 4).unwrap();
        for k in 1..4 {
            let l = QPoly::monomial(&ctx, k, Elt::ONE).unwrap();
            for d in outside_mid(&ctx) {
                let qf = q_from_pair(&l, &QPoly::identity(&ctx), d).unwrap();
                assert!(!is_permutation_brute(&qf));
            }
        }
    }

    #[test]
    fn odd_typec_small_run() {
        let r = verify_no_typec_odd(&spec("no-typec-odd")).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.candidates, 81 * 72);
        assert_eq!(r.scanned, r.candidates);
        let bad = ExperimentSpec {
            n: Some(3),
            ..spec("no-typec-odd")
        };
        assert!(verify_no_typec_odd(&bad).is_err());
    }

    #[test]
    fn injected_counterexample_is_reported_and_rejected_on_recheck() {
        let s = ExperimentSpec {
            inject: Some(100),
            ..spec("no-typec-odd")
        };
        let r = verify_no_typec_odd(&s).unwrap();
        assert_eq!(r.verdict, Verdict::Counterexample);
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.scanned, 101);
        let p = r.counterexample.unwrap();
        assert_eq!(p["injected"], json!(true));
        assert!(!candidate_violates(&r.experiment, &r.params, &p).unwrap());
    }

    #[test]
    fn even3_predicate_on_trace_component() {
        let ctx = field_for(2, 3).unwrap();
        let tr = QPoly::trace(&ctx);
        for d in outside_mid(&ctx) {
            let qf = q_from_pair(&tr, &QPoly::identity(&ctx), d).unwrap();
            let adm = crate::spread::even3_delta_admissible(&ctx, d);
            assert_eq!(is_permutation_brute(&qf), adm);
            assert_eq!(even3_predicate(&tr, d), adm);
        }
    }

    #[test]
    fn even3_classification_q2() {
        let r = verify_even_n3_classification(&spec("even-n3-classification")).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.candidates, 72 * 56);
        assert!(r.counters.get("permutation_pairs") > 0);
    }

    #[test]
    fn hermite_q2_and_q4() {
        for q in [2, 4] {
            let ctx = field_for(q, 3).unwrap();
            for d in outside_mid(&ctx) {
                assert!(hermite_coefficient_check(&ctx, d).unwrap());
            }
            assert!(hermite_coefficient(&ctx, Elt::ONE).is_err());
        }
        let r = verify_hermite(&spec("hermite")).unwrap();
        assert_eq!((r.verdict, r.candidates), (Verdict::Confirmed, 56));
    }

    #[test]
    fn hermite_brute_matches_norm_power() {
        // the reduced polynomial's coefficients reproduce Q^{q^2-1} pointwise
        let ctx = field_for(2, 3).unwrap();
        let d = outside_mid(&ctx)[5];
        let l = QPoly::monomial(&ctx, 1, Elt::ONE).unwrap();
        let qf = q_from_pair(&l, &QPoly::identity(&ctx), d).unwrap();
        let sum: Elt = ctx.sum(ctx.elements(ctx.mid_field()).map(|x| ctx.pow(qf.eval_unchecked(x), 3)));
        // Σ_x Q(x)^{q^2-1} = -(coefficient of X^{q^3-1})
        let (brute, _) = hermite_coefficient(&ctx, d).unwrap();
        assert_eq!(sum, ctx.neg(brute));
    }

    #[test]
    fn planar_tables_match_library() {
        let ctx = field_for(3, 3).unwrap();
        let w = ctx.least_nonsquare(ctx.ambient()).unwrap();
        let t = PlanarTables::new(&ctx, w, 1);
        let mut counts = Vec::new();
        for (a, b) in [(1, 0), (0, 1), (0, 0), (5, 7), (1, 1), (300, 2)] {
            let (a, b) = (Elt(a), Elt(b));
            let f: DOPoly = planar_family_poly(&ctx, a, b, w, 1).unwrap();
            let lib = crate::planar::is_planar_2to1(&crate::planar::FieldMap::Do(f)).unwrap();
            assert_eq!(t.is_planar(&ctx, a, b, &mut counts), lib);
        }
    }

    #[test]
    fn planar_a_equals_b_is_not_planar() {
        // (aX + aX^{q^m})^2 - wX^{2q^k}
        let ctx = field_for(3, 3).unwrap();
        let w = ctx.least_nonsquare(ctx.ambient()).unwrap();
        for a in [Elt::ONE, ctx.gamma()] {
            assert!(!planar_family_check(&ctx, a, a, w, 1).unwrap());
        }
    }

    #[test]
    fn planar_sample_small() {
        let s = ExperimentSpec {
            sample: Some(50),
            seed: 7,
            ..spec("planar-dichotomy")
        };
        let r = verify_planar_dichotomy(&s).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.candidates, 1457 + 50);
        assert_eq!(r.counters.get("planar"), 1457);
        let again = verify_planar_dichotomy(&s).unwrap();
        assert_eq!(again.counters, r.counters);
    }

    #[test]
    fn budget_is_enforced() {
        let s = ExperimentSpec {
            budget: 1000,
            ..spec("no-typec-odd")
        };
        assert!(matches!(
            verify_no_typec_odd(&s),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn component_form_matches_q_from_component() {
        let ctx = field_for(3, 2).unwrap();
        let l = QPoly::monomial(&ctx, 1, ctx.subfield_generator(ctx.mid_field())).unwrap();
        let d = outside_mid(&ctx)[3];
        let (a, b) = ComponentForm::XPlusDeltaL.pair(&l);
        let x = q_from_pair(&a, &b, d).unwrap();
        let y = q_from_component(&l, d).unwrap();
        assert_eq!(x.value_table(), y.value_table());
    }
}
