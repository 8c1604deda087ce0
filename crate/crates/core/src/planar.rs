//! Planar functions, presemifields and their nuclei, rank two commutative
//! semifields, and the quadratic maps attached to spread components.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{invalid, Error, Result};
use crate::field::{Elt, FieldCtx, Subfield};
use crate::linpoly::QPoly;
use crate::quadform::{Base, DOPoly};

/// Explicit values of a map on a subfield, in subfield-index order.
#[derive(Clone)]
pub struct ValueTable {
    pub ctx: Arc<FieldCtx>,
    pub field: Subfield,
    pub values: Vec<Elt>,
}

impl ValueTable {
    pub fn new(ctx: &Arc<FieldCtx>, field: Subfield, values: Vec<Elt>) -> Result<Self> {
        if values.len() as u64 != ctx.size(field) {
            return Err(invalid("value table has the wrong length"));
        }
        for &v in &values {
            ctx.ensure_in(field, v)?;
        }
        Ok(ValueTable {
            ctx: ctx.clone(),
            field,
            values,
        })
    }

    pub fn from_fn(ctx: &Arc<FieldCtx>, field: Subfield, f: impl Fn(Elt) -> Elt) -> Result<Self> {
        let values = ctx.elements(field).map(f).collect();
        Self::new(ctx, field, values)
    }
}

/// A map on a subfield, either as a DO polynomial or as raw values.
#[derive(Clone)]
pub enum FieldMap {
    Do(DOPoly),
    Table(ValueTable),
}

impl FieldMap {
    fn parts(&self) -> (&Arc<FieldCtx>, Subfield, Vec<Elt>) {
        match self {
            FieldMap::Do(f) => (f.ctx(), f.field(), f.value_table()),
            FieldMap::Table(t) => (&t.ctx, t.field, t.values.clone()),
        }
    }
}

impl From<DOPoly> for FieldMap {
    fn from(f: DOPoly) -> Self {
        FieldMap::Do(f)
    }
}

/// Full difference-map scan: every `x ↦ f(x+a) - f(x) - f(a)`, `a ≠ 0`,
/// must be a bijection.
pub fn is_planar_direct(f: &FieldMap) -> Result<bool> {
    let (ctx, field, vals) = f.parts();
    if ctx.is_even() {
        return Err(Error::EvenCharacteristic);
    }
    let elts: Vec<Elt> = ctx.elements(field).collect();
    let mut stamp = vec![usize::MAX; elts.len()];
    for (ia, &a) in elts.iter().enumerate().skip(1) {
        let fa = vals[ia];
        for (ix, &x) in elts.iter().enumerate() {
            let s = ctx.index_of(field, ctx.add(x, a));
            let d = ctx.sub(ctx.sub(vals[s], vals[ix]), fa);
            let id = ctx.index_of(field, d);
            if stamp[id] == ia {
                return Ok(false);
            }
            stamp[id] = ia;
        }
    }
    Ok(true)
}

/// Planarity of a DO polynomial through the 2-to-1 criterion.
pub fn is_planar_2to1(f: &FieldMap) -> Result<bool> {
    let f = match f {
        FieldMap::Do(f) => f,
        FieldMap::Table(_) => {
            return Err(Error::NotDembowskiOstrom(
                "the 2-to-1 criterion needs a DO polynomial".into(),
            ))
        }
    };
    if f.ctx().is_even() {
        return Err(Error::EvenCharacteristic);
    }
    Ok(do_is_two_to_one(f, &mut Vec::new()))
}

/// `f(0) = 0` is the only zero and every other value has 0 or 2 preimages.
/// `counts` is scratch space.
pub(crate) fn do_is_two_to_one(f: &DOPoly, counts: &mut Vec<u8>) -> bool {
    let ctx = f.ctx();
    let field = f.field();
    let size = ctx.size(field) as usize;
    counts.clear();
    counts.resize(size, 0);
    for x in ctx.elements(field) {
        let i = ctx.index_of(field, f.eval_unchecked(x));
        counts[i] += 1;
        if counts[i] > 2 || (i == 0 && counts[i] > 1) {
            return false;
        }
    }
    true
}

/// `(A + δB)(A + δ^{q^n}B)` as a DO polynomial over `F_{q^n}`.
pub fn q_from_pair(a: &QPoly, b: &QPoly, delta: Elt) -> Result<DOPoly> {
    let ctx = a.ctx().clone();
    if *ctx != **b.ctx() {
        return Err(Error::ContextMismatch);
    }
    if ctx.contains(ctx.mid_field(), delta) || delta.0 as u64 >= ctx.order() {
        return Err(invalid("delta must lie outside F_{q^n}"));
    }
    let n = ctx.n();
    let dq = ctx.frob_q(delta, n);
    let s = ctx.add(delta, dq);
    let t = ctx.mul(delta, dq);
    let q = DOPoly::product(a, a)?
        .add(&DOPoly::product(a, b)?.scale(s)?)?
        .add(&DOPoly::product(b, b)?.scale(t)?)?;
    for x in ctx.elements(ctx.mid_field()) {
        let u = ctx.mul(delta, b.eval_unchecked(x));
        let v = ctx.mul(dq, b.eval_unchecked(x));
        let ax = a.eval_unchecked(x);
        let direct = ctx.mul(ctx.add(ax, u), ctx.add(ax, v));
        if direct != q.eval_unchecked(x) {
            return Err(Error::Inconsistent(
                "expanded Q disagrees with its defining product".into(),
            ));
        }
    }
    Ok(q)
}

/// `Q(X) = (X + δL(X))(X + δ^{q^n}L(X))`.
pub fn q_from_component(l: &QPoly, delta: Elt) -> Result<DOPoly> {
    q_from_pair(&QPoly::identity(l.ctx()), l, delta)
}

/// Checks `f = L1 ∘ g ∘ L2` pointwise on `F_{q^n}`.
pub fn is_equivalent_via(f: &DOPoly, g: &DOPoly, l1: &QPoly, l2: &QPoly) -> Result<bool> {
    let ctx = f.ctx();
    let mid = ctx.mid_field();
    if f.field() != mid || g.field() != mid {
        return Err(invalid("equivalence witnesses act on F_{q^n}"));
    }
    Ok(ctx
        .elements(mid)
        .all(|x| f.eval_unchecked(x) == l1.eval_unchecked(g.eval_unchecked(l2.eval_unchecked(x)))))
}

/// A bi-additive multiplication on a subfield, stored as a table of
/// subfield indices.
#[derive(Clone)]
pub struct Presemifield {
    ctx: Arc<FieldCtx>,
    field: Subfield,
    size: usize,
    table: Vec<u32>,
    identity: Option<usize>,
}

impl std::fmt::Debug for Presemifield {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Presemifield")
            .field("size", &self.size)
            .field("identity", &self.identity)
            .finish()
    }
}

impl Presemifield {
    /// Tabulates an arbitrary multiplication rule; checks for zero divisors.
    pub fn from_rule(
        ctx: &Arc<FieldCtx>,
        field: Subfield,
        rule: impl Fn(Elt, Elt) -> Elt,
    ) -> Result<Self> {
        let elts: Vec<Elt> = ctx.elements(field).collect();
        let size = elts.len();
        let mut table = Vec::with_capacity(size * size);
        for &x in &elts {
            for &y in &elts {
                let v = rule(x, y);
                ctx.ensure_in(field, v)?;
                table.push(ctx.index_of(field, v) as u32);
            }
        }
        let mut s = Presemifield {
            ctx: ctx.clone(),
            field,
            size,
            table,
            identity: None,
        };
        if s.has_zero_divisors() {
            return Err(Error::ZeroDivisors);
        }
        s.identity = s.find_identity();
        Ok(s)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn field(&self) -> Subfield {
        self.field
    }

    pub fn order(&self) -> usize {
        self.size
    }

    #[inline]
    fn at(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    pub fn mul(&self, x: Elt, y: Elt) -> Elt {
        let i = self.ctx.index_of(self.field, x);
        let j = self.ctx.index_of(self.field, y);
        self.ctx.element_at(self.field, self.at(i, j))
    }

    pub fn identity(&self) -> Option<Elt> {
        self.identity.map(|i| self.ctx.element_at(self.field, i))
    }

    fn has_zero_divisors(&self) -> bool {
        (1..self.size).any(|x| (1..self.size).any(|y| self.at(x, y) == 0))
    }

    fn find_identity(&self) -> Option<usize> {
        (1..self.size).find(|&e| (0..self.size).all(|x| self.at(e, x) == x && self.at(x, e) == x))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|x| (0..x).all(|y| self.at(x, y) == self.at(y, x)))
    }

    /// The isotope `x∘y = R_e^{-1}(x) ∗ L_e^{-1}(y)`, whose identity is `e∗e`.
    pub fn normalize(&self, e: Elt) -> Result<Presemifield> {
        self.ctx.ensure_in(self.field, e)?;
        if e.is_zero() {
            return Err(invalid("normalization needs a nonzero element"));
        }
        let ie = self.ctx.index_of(self.field, e);
        let mut r_inv = vec![usize::MAX; self.size];
        let mut l_inv = vec![usize::MAX; self.size];
        for x in 0..self.size {
            r_inv[self.at(x, ie)] = x;
            l_inv[self.at(ie, x)] = x;
        }
        if r_inv.contains(&usize::MAX) || l_inv.contains(&usize::MAX) {
            return Err(Error::ZeroDivisors);
        }
        let mut table = Vec::with_capacity(self.size * self.size);
        for x in 0..self.size {
            for y in 0..self.size {
                table.push(self.at(r_inv[x], l_inv[y]) as u32);
            }
        }
        let one = self.at(ie, ie);
        let s = Presemifield {
            ctx: self.ctx.clone(),
            field: self.field,
            size: self.size,
            table,
            identity: Some(one),
        };
        debug_assert_eq!(s.find_identity(), Some(one));
        Ok(s)
    }

    fn nucleus_by(&self, assoc: impl Fn(usize, usize, usize) -> bool) -> Result<Vec<Elt>> {
        if self.identity.is_none() {
            return Err(Error::NoIdentity);
        }
        let n = self.size;
        Ok((0..n)
            .filter(|&a| (0..n).all(|x| (0..n).all(|y| assoc(a, x, y))))
            .map(|a| self.ctx.element_at(self.field, a))
            .collect())
    }

    /// `{α : (α∗x)∗y = α∗(x∗y)}`.
    pub fn nucleus_set(&self) -> Result<Vec<Elt>> {
        self.nucleus_by(|a, x, y| self.at(self.at(a, x), y) == self.at(a, self.at(x, y)))
    }

    /// `{α : (x∗α)∗y = x∗(α∗y)}`.
    pub fn middle_nucleus_set(&self) -> Result<Vec<Elt>> {
        self.nucleus_by(|a, x, y| self.at(self.at(x, a), y) == self.at(x, self.at(a, y)))
    }

    fn checked_size(&self, set: &[Elt]) -> Result<u64> {
        let p = self.ctx.p();
        let mut s = set.len() as u64;
        while s.is_multiple_of(p) {
            s /= p;
        }
        if s != 1 {
            return Err(Error::Inconsistent(format!(
                "nucleus of size {} is not a power of p",
                set.len()
            )));
        }
        Ok(set.len() as u64)
    }

    pub fn nucleus(&self) -> Result<u64> {
        let n = self.nucleus_set()?;
        let m = self.middle_nucleus_set()?;
        if !n.iter().all(|a| m.contains(a)) {
            return Err(Error::Inconsistent(
                "nucleus is not contained in the middle nucleus".into(),
            ));
        }
        self.checked_size(&n)
    }

    pub fn middle_nucleus(&self) -> Result<u64> {
        let m = self.middle_nucleus_set()?;
        self.checked_size(&m)
    }
}

/// `x∗y = f(x+y) - f(x) - f(y)` for a planar DO polynomial `f`.
pub fn planar_to_presemifield(f: &DOPoly) -> Result<Presemifield> {
    if !is_planar_2to1(&FieldMap::Do(f.clone()))? {
        return Err(Error::NotPlanar);
    }
    let ctx = f.ctx();
    let vals = f.value_table();
    let field = f.field();
    let at = |x: Elt| vals[ctx.index_of(field, x)];
    Presemifield::from_rule(ctx, field, |x, y| {
        ctx.sub(ctx.sub(at(ctx.add(x, y)), at(x)), at(y))
    })
}

/// Data of the Cohen-Ganley multiplication on `F_{q^2}`.
///
/// `g` and `f` are additive maps of `F_q` given by `p`-indexed coefficients,
/// so `g(z) = Σ g_i z^{p^i}`.
#[derive(Clone, Debug)]
pub struct RtcsSpec {
    pub ctx: Arc<FieldCtx>,
    pub t: Elt,
    pub g: Vec<Elt>,
    pub f: Vec<Elt>,
}

impl RtcsSpec {
    fn validate(&self) -> Result<()> {
        let ctx = &self.ctx;
        if ctx.is_even() {
            return Err(Error::EvenCharacteristic);
        }
        if ctx.n() != 1 {
            return Err(invalid("RTCS context must have n = 1"));
        }
        if self.t.0 as u64 >= ctx.order() || ctx.contains(ctx.base_field(), self.t) {
            return Err(invalid("t must lie in F_{q^2} outside F_q"));
        }
        if self.g.len() > ctx.e() as usize || self.f.len() > ctx.e() as usize {
            return Err(invalid("too many linearized coefficients"));
        }
        for c in self.g.iter().chain(&self.f) {
            ctx.ensure_in(ctx.base_field(), *c)?;
        }
        Ok(())
    }

    fn apply(&self, coeffs: &[Elt], z: Elt) -> Elt {
        let ctx = &self.ctx;
        ctx.sum(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| ctx.mul(c, ctx.frob(z, i as u32))),
        )
    }

    pub fn eval_g(&self, z: Elt) -> Elt {
        self.apply(&self.g, z)
    }

    pub fn eval_f(&self, z: Elt) -> Elt {
        self.apply(&self.f, z)
    }

    /// Coordinates `(x, y)` of `z = xt + y`.
    pub fn coords(&self, z: Elt) -> (Elt, Elt) {
        let ctx = &self.ctx;
        let tq = ctx.frob_q(self.t, 1);
        let x = ctx.div(ctx.sub(z, ctx.frob_q(z, 1)), ctx.sub(self.t, tq));
        (x, ctx.sub(z, ctx.mul(x, self.t)))
    }

    /// `(xt+y)∘(ut+v) = (xv+yu+g(xu))t + yv + f(xu)`.
    pub fn multiply(&self, a: Elt, b: Elt) -> Elt {
        let ctx = &self.ctx;
        let (x, y) = self.coords(a);
        let (u, v) = self.coords(b);
        let xu = ctx.mul(x, u);
        let hi = ctx.sum([ctx.mul(x, v), ctx.mul(y, u), self.eval_g(xu)]);
        let lo = ctx.add(ctx.mul(y, v), self.eval_f(xu));
        ctx.add(ctx.mul(hi, self.t), lo)
    }
}

/// `g(x)^2 + 4x f(x)` is a nonsquare for every `x ∈ F_q^*`.
pub fn rtcs_check(spec: &RtcsSpec) -> Result<bool> {
    spec.validate()?;
    let ctx = &spec.ctx;
    let base = ctx.base_field();
    let four = ctx.scalar(4);
    Ok(ctx.elements(base).skip(1).all(|x| {
        let g = spec.eval_g(x);
        let v = ctx.add(ctx.mul(g, g), ctx.mul(four, ctx.mul(x, spec.eval_f(x))));
        !ctx.is_square_unchecked(v, base)
    }))
}

pub fn rtcs_build(spec: &RtcsSpec) -> Result<Presemifield> {
    spec.validate()?;
    Presemifield::from_rule(&spec.ctx, spec.ctx.ambient(), |a, b| spec.multiply(a, b))
}

/// The map `Ψ(x₀ζ + x₁, y₀ζ + y₁) = (x₁y₁, x₀y₀, x₀y₁ + x₁y₀)` on
/// `F_{q^{2m}}`, with `m = n` of the context.
#[derive(Clone, Debug)]
pub struct PsiMap {
    ctx: Arc<FieldCtx>,
    zeta: Elt,
    half: Elt,
}

impl PsiMap {
    pub fn new(ctx: &Arc<FieldCtx>) -> Result<Self> {
        let zeta = ctx.least_zeta()?;
        Ok(PsiMap {
            ctx: ctx.clone(),
            zeta,
            half: ctx.inv(ctx.scalar(2)),
        })
    }

    pub fn zeta(&self) -> Elt {
        self.zeta
    }

    /// `(x₀, x₁)` with `x = x₀ζ + x₁`.
    pub fn split(&self, x: Elt) -> (Elt, Elt) {
        let ctx = &self.ctx;
        let xc = ctx.frob_q(x, ctx.n());
        let x1 = ctx.mul(ctx.add(x, xc), self.half);
        let x0 = ctx.div(ctx.mul(ctx.sub(x, xc), self.half), self.zeta);
        (x0, x1)
    }

    pub fn map(&self, x: Elt, y: Elt) -> (Elt, Elt, Elt) {
        let ctx = &self.ctx;
        let (x0, x1) = self.split(x);
        let (y0, y1) = self.split(y);
        (
            ctx.mul(x1, y1),
            ctx.mul(x0, y0),
            ctx.add(ctx.mul(x0, y1), ctx.mul(x1, y0)),
        )
    }
}

/// Exhaustively checks that `Ψ` hits exactly the triples with `C² - 4AB` a
/// square, and vanishes exactly when `x = 0` or `y = 0`.
pub fn psi_image_check(ctx: &Arc<FieldCtx>) -> Result<bool> {
    let psi = PsiMap::new(ctx)?;
    let mid = ctx.mid_field();
    let m = ctx.size(mid) as usize;
    let idx = |v: Elt| ctx.index_of(mid, v);
    let mut hit = vec![false; m * m * m];
    let elts: Vec<Elt> = ctx.elements(ctx.ambient()).collect();
    for &x in &elts {
        for &y in &elts {
            let (a, b, c) = psi.map(x, y);
            let zero = a.is_zero() && b.is_zero() && c.is_zero();
            if zero != (x.is_zero() || y.is_zero()) {
                return Ok(false);
            }
            hit[(idx(a) * m + idx(b)) * m + idx(c)] = true;
        }
    }
    let four = ctx.scalar(4);
    for a in ctx.elements(mid) {
        for b in ctx.elements(mid) {
            for c in ctx.elements(mid) {
                let disc = ctx.sub(ctx.mul(c, c), ctx.mul(four, ctx.mul(a, b)));
                let square = ctx.is_square_unchecked(disc, mid);
                if square != hit[(idx(a) * m + idx(b)) * m + idx(c)] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `(aX + bX^{q^m})^2 - wX^{2q^k}` over `F_{q^{2m}}`, `m = n` of the context.
pub fn planar_family_poly(ctx: &Arc<FieldCtx>, a: Elt, b: Elt, w: Elt, k: u32) -> Result<DOPoly> {
    let m = ctx.n();
    let two_ab = ctx.mul(ctx.scalar(2), ctx.mul(a, b));
    DOPoly::new(
        ctx,
        ctx.ambient(),
        Base::Q,
        [
            (0, 0, ctx.mul(a, a)),
            (0, m, two_ab),
            (m, m, ctx.mul(b, b)),
            (k, k, ctx.neg(w)),
        ],
    )
}

pub(crate) fn check_family_params(ctx: &FieldCtx, w: Elt, k: u32) -> Result<()> {
    if ctx.is_even() {
        return Err(Error::EvenCharacteristic);
    }
    let m = ctx.n();
    if m < 3 || k == 0 || k >= m || gcd(k as u64, m as u64) != 1 {
        return Err(invalid(format!(
            "need m >= 3, 1 <= k < m and gcd(k, m) = 1 (m = {m}, k = {k})"
        )));
    }
    ctx.ensure_in(ctx.ambient(), w)?;
    if ctx.is_square_unchecked(w, ctx.ambient()) {
        return Err(invalid("w must be a nonsquare"));
    }
    Ok(())
}

/// Planarity of `(aX + bX^{q^m})^2 - wX^{2q^k}` over `F_{q^{2m}}`.
pub fn planar_family_check(ctx: &Arc<FieldCtx>, a: Elt, b: Elt, w: Elt, k: u32) -> Result<bool> {
    check_family_params(ctx, w, k)?;
    ctx.ensure_in(ctx.ambient(), a)?;
    ctx.ensure_in(ctx.ambient(), b)?;
    let f = planar_family_poly(ctx, a, b, w, k)?;
    Ok(do_is_two_to_one(&f, &mut Vec::new()))
}

/// CLI-facing verdict for a single polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanarVerdict {
    pub input: serde_json::Value,
    pub planar: bool,
    pub nucleus: Option<u64>,
    pub middle_nucleus: Option<u64>,
}

/// Planarity plus nuclei of the normalized semifield, when planar.
pub fn planar_verdict(f: &DOPoly) -> Result<PlanarVerdict> {
    let planar = is_planar_2to1(&FieldMap::Do(f.clone()))?;
    let (nucleus, middle) = if planar {
        let s = planar_to_presemifield(f)?.normalize(Elt::ONE)?;
        (Some(s.nucleus()?), Some(s.middle_nucleus()?))
    } else {
        (None, None)
    };
    Ok(PlanarVerdict {
        input: serde_json::to_value(f.to_json())?,
        planar,
        nucleus,
        middle_nucleus: middle,
    })
}
