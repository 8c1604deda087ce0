//! Subspaces of the ambient field, Singer-orbit spreads and their checks.
//!
//! Subspaces are stored by a canonical `F_p`-basis: the reduced row echelon
//! form of their spanning vectors written in base-`p` digits. Two subspaces
//! are equal exactly when their canonical rows are equal.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{invalid, Error, Result};
use crate::field::{Elt, FieldCtx, FieldCtxJson};
use crate::linalg::{nullspace_mod_p, rref_mod_p};
use crate::linpoly::QPoly;
use crate::planar::{do_is_two_to_one, q_from_pair};
use crate::quadform::{is_permutation_brute, permutes_cosets};

/// An `F_p`-subspace of the ambient field in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Elt>,
}

impl Subspace {
    /// `F_p`-span of `gens`.
    pub fn span(ctx: &FieldCtx, gens: &[Elt]) -> Subspace {
        let mut m: Vec<Vec<u32>> = gens.iter().map(|&g| ctx.digits(g)).collect();
        if m.is_empty() {
            return Subspace { rows: Vec::new() };
        }
        rref_mod_p(ctx.p() as u32, &mut m);
        Subspace {
            rows: m.iter().map(|r| ctx.from_digits(r)).collect(),
        }
    }

    /// `F_q`-span of `gens`.
    pub fn span_fq(ctx: &FieldCtx, gens: &[Elt]) -> Subspace {
        let fq = fq_p_basis(ctx);
        let all: Vec<Elt> = gens
            .iter()
            .flat_map(|&g| fq.iter().map(move |&b| ctx.mul(b, g)))
            .collect();
        Self::span(ctx, &all)
    }

    /// Canonical `F_p`-basis.
    pub fn rows(&self) -> &[Elt] {
        &self.rows
    }

    pub fn dim_p(&self) -> usize {
        self.rows.len()
    }

    /// Dimension over `F_q`; the subspace must be `F_q`-closed.
    pub fn dim_q(&self, ctx: &FieldCtx) -> usize {
        self.rows.len() / ctx.e() as usize
    }

    pub fn contains(&self, ctx: &FieldCtx, x: Elt) -> bool {
        let mut gens = self.rows.clone();
        gens.push(x);
        Subspace::span(ctx, &gens).dim_p() == self.dim_p()
    }

    /// Whether multiplication by `F_q` preserves the subspace.
    pub fn is_fq_closed(&self, ctx: &FieldCtx) -> bool {
        let g = ctx.subfield_generator(ctx.base_field());
        self.rows.iter().all(|&r| self.contains(ctx, ctx.mul(g, r)))
    }

    /// Image under `z ↦ c·z`.
    pub fn scale(&self, ctx: &FieldCtx, c: Elt) -> Subspace {
        let img: Vec<Elt> = self.rows.iter().map(|&r| ctx.mul(c, r)).collect();
        Subspace::span(ctx, &img)
    }

    /// Image under an additive map.
    pub fn map(&self, ctx: &FieldCtx, f: impl Fn(Elt) -> Elt) -> Subspace {
        let img: Vec<Elt> = self.rows.iter().map(|&r| f(r)).collect();
        Subspace::span(ctx, &img)
    }

    pub fn sum(&self, ctx: &FieldCtx, other: &Subspace) -> Subspace {
        let gens: Vec<Elt> = self.rows.iter().chain(&other.rows).copied().collect();
        Subspace::span(ctx, &gens)
    }

    /// `F_p`-dimension of the intersection.
    pub fn intersection_dim(&self, ctx: &FieldCtx, other: &Subspace) -> usize {
        self.dim_p() + other.dim_p() - self.sum(ctx, other).dim_p()
    }

    /// All vectors of the subspace.
    pub fn elements(&self, ctx: &FieldCtx) -> Vec<Elt> {
        let scalars: Vec<Elt> = (1..ctx.p()).map(|c| ctx.scalar(c as i64)).collect();
        let mut out = vec![Elt::ZERO];
        for &r in &self.rows {
            let prev = out.len();
            for &c in &scalars {
                let cr = ctx.mul(c, r);
                for i in 0..prev {
                    out.push(ctx.add(out[i], cr));
                }
            }
        }
        out
    }
}

/// `F_p`-basis `1, g, ..., g^{e-1}` of `F_q`.
fn fq_p_basis(ctx: &FieldCtx) -> Vec<Elt> {
    let g = ctx.subfield_generator(ctx.base_field());
    (0..ctx.e() as u64).map(|i| ctx.pow(g, i)).collect()
}

/// `F_p`-basis `1, θ, ..., θ^{ne-1}` of `F_{q^n}`.
pub fn mid_p_basis(ctx: &FieldCtx) -> Vec<Elt> {
    let t = ctx.subfield_generator(ctx.mid_field());
    (0..ctx.mid_field().degree() as u64)
        .map(|i| ctx.pow(t, i))
        .collect()
}

/// `W = {A(x) + δB(x) : x ∈ F_{q^n}}`.
pub fn component_from_pair(a: &QPoly, b: &QPoly, delta: Elt) -> Result<Subspace> {
    let ctx = a.ctx();
    if **ctx != **b.ctx() {
        return Err(Error::ContextMismatch);
    }
    if delta.0 as u64 >= ctx.order() || ctx.contains(ctx.mid_field(), delta) {
        return Err(invalid("delta must lie outside F_{q^n}"));
    }
    let img: Vec<Elt> = mid_p_basis(ctx)
        .into_iter()
        .map(|x| ctx.add(a.eval_unchecked(x), ctx.mul(delta, b.eval_unchecked(x))))
        .collect();
    let w = Subspace::span(ctx, &img);
    if w.dim_p() != img.len() {
        return Err(Error::NotInjective {
            rank: w.dim_p(),
            expected: img.len(),
        });
    }
    Ok(w)
}

/// `W = {x + δL(x)}`.
pub fn component_from_poly(l: &QPoly, delta: Elt) -> Result<Subspace> {
    component_from_pair(&QPoly::identity(l.ctx()), l, delta)
}

/// Group acting on a component.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrbitKind {
    /// `⟨Θ(β)⟩`.
    Beta,
    /// `⟨Θ(β²)⟩`.
    Beta2,
    /// The `β²`-orbits of `W` and of `ψ(W)` with `ψ(z) = ηz^{q^n}`.
    TypeH { eta: Elt },
}

/// `z ↦ ηz^{q^n}`.
pub fn psi(ctx: &FieldCtx, eta: Elt, z: Elt) -> Elt {
    ctx.mul(eta, ctx.frob_q(z, ctx.n()))
}

/// `[c^i W : 0 <= i < count]`, duplicates kept.
pub fn orbit_raw(ctx: &FieldCtx, w: &Subspace, c: Elt, count: u64) -> Vec<Subspace> {
    (0..count).map(|i| w.scale(ctx, ctx.pow(c, i))).collect()
}

fn dedup(list: impl IntoIterator<Item = Subspace>) -> Vec<Subspace> {
    let mut seen = HashSet::new();
    list.into_iter().filter(|s| seen.insert(s.clone())).collect()
}

/// Distinct images of `W` in first-occurrence order.
pub fn orbit(ctx: &FieldCtx, w: &Subspace, kind: OrbitKind) -> Vec<Subspace> {
    let qn = ctx.qn();
    let beta = ctx.beta();
    let beta2 = ctx.mul(beta, beta);
    match kind {
        OrbitKind::Beta => dedup(orbit_raw(ctx, w, beta, qn + 1)),
        OrbitKind::Beta2 => dedup(orbit_raw(ctx, w, beta2, qn.div_ceil(2))),
        OrbitKind::TypeH { eta } => {
            let pw = w.map(ctx, |z| psi(ctx, eta, z));
            let mut all = orbit_raw(ctx, w, beta2, qn.div_ceil(2));
            all.extend(orbit_raw(ctx, &pw, beta2, qn.div_ceil(2)));
            dedup(all)
        }
    }
}

fn coverage(ctx: &FieldCtx, comps: &[Subspace]) -> Result<Vec<u8>> {
    if let Some(first) = comps.first() {
        if comps.iter().any(|c| c.dim_p() != first.dim_p()) {
            return Err(Error::DimensionMismatch);
        }
    }
    let mut count = vec![0u8; ctx.order() as usize];
    for c in comps {
        for x in c.elements(ctx).into_iter().skip(1) {
            let slot = &mut count[x.0 as usize];
            *slot = slot.saturating_add(1);
        }
    }
    Ok(count)
}

/// Every nonzero vector lies in at most one component.
pub fn is_partial_spread(ctx: &FieldCtx, comps: &[Subspace]) -> Result<bool> {
    Ok(coverage(ctx, comps)?.iter().all(|&c| c <= 1))
}

/// `q^n + 1` components of `F_q`-dimension `n` partitioning the nonzero vectors.
pub fn is_spread(ctx: &FieldCtx, comps: &[Subspace]) -> Result<bool> {
    let cov = coverage(ctx, comps)?;
    let n_p = ctx.mid_field().degree() as usize;
    Ok(comps.len() as u64 == ctx.qn() + 1
        && comps.iter().all(|c| c.dim_p() == n_p)
        && cov[1..].iter().all(|&c| c == 1))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpreadKind {
    #[serde(rename = "typeC")]
    TypeC,
    #[serde(rename = "typeH")]
    TypeH,
    #[serde(rename = "evenC")]
    EvenC,
    #[serde(rename = "custom")]
    Custom,
}

/// Linear kernel of a spread.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelInfo {
    /// `p^dim` for the `F_p`-dimension of the solution space.
    pub size: u64,
    pub dim_p: u32,
    /// Whether `size` is a power of `q`; a `false` here is flagged, not fixed.
    pub is_q_power: bool,
    /// Whether every nonzero solution was checked to be invertible.
    pub field_checked: bool,
}

#[derive(Clone, Debug)]
pub struct Spread {
    ctx: Arc<FieldCtx>,
    kind: SpreadKind,
    components: Vec<Subspace>,
    verified: bool,
    kernel: Option<KernelInfo>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpreadJson {
    pub ctx: FieldCtxJson,
    pub kind: SpreadKind,
    pub components: Vec<Vec<u32>>,
    pub verified: bool,
    pub kernel: Option<u64>,
}

impl Spread {
    pub fn new(ctx: &Arc<FieldCtx>, kind: SpreadKind, components: Vec<Subspace>) -> Self {
        Spread {
            ctx: ctx.clone(),
            kind,
            components,
            verified: false,
            kernel: None,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn kind(&self) -> SpreadKind {
        self.kind
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn kernel(&self) -> Option<KernelInfo> {
        self.kernel
    }

    /// Runs the partition check and, on success, the kernel computation.
    pub fn verify(&mut self) -> Result<bool> {
        let ctx = &*self.ctx;
        self.verified = is_spread(ctx, &self.components)?
            && self.components.iter().all(|c| c.is_fq_closed(ctx));
        self.kernel = if self.verified {
            Some(kernel_info(ctx, &self.components))
        } else {
            None
        };
        Ok(self.verified)
    }

    fn verified_or_err(mut self) -> Result<Spread> {
        if self.verify()? {
            Ok(self)
        } else {
            Err(Error::VerificationFailed(format!(
                "{:?} construction does not partition the nonzero vectors",
                self.kind
            )))
        }
    }

    pub fn to_json(&self) -> SpreadJson {
        SpreadJson {
            ctx: self.ctx.to_json(),
            kind: self.kind,
            components: self
                .components
                .iter()
                .map(|c| c.rows().iter().map(|r| r.0).collect())
                .collect(),
            verified: self.verified,
            kernel: self.kernel.map(|k| k.size),
        }
    }

    /// Loads components (spanned over `F_q`); the result is unverified.
    pub fn from_json(json: &SpreadJson) -> Result<Spread> {
        let ctx = Arc::new(FieldCtx::from_json(&json.ctx)?);
        let mut comps = Vec::with_capacity(json.components.len());
        for c in &json.components {
            let gens: Vec<Elt> = c.iter().map(|&v| Elt(v)).collect();
            for &g in &gens {
                ctx.ensure_in(ctx.ambient(), g)?;
            }
            comps.push(Subspace::span_fq(&ctx, &gens));
        }
        Ok(Spread::new(&ctx, json.kind, comps))
    }
}

/// Kernel size of a verified spread.
pub fn kernel_of_spread(s: &Spread) -> Result<u64> {
    if !s.verified {
        return Err(Error::UnverifiedSpread);
    }
    Ok(s.kernel.expect("verified spreads carry a kernel").size)
}

const KERNEL_FIELD_CHECK_LIMIT: u64 = 4096;

/// Solves for `F_p`-linear `T` with `T(W) ⊆ W` for every component.
pub fn kernel_info(ctx: &FieldCtx, comps: &[Subspace]) -> KernelInfo {
    let p = ctx.p() as u32;
    let d = ctx.degree() as usize;
    let mut system: Vec<Vec<u32>> = Vec::new();
    for c in comps {
        let rows: Vec<Vec<u32>> = c.rows().iter().map(|&r| ctx.digits(r)).collect();
        let ann = nullspace_mod_p(p, &rows, d);
        for h in &ann {
            for b in &rows {
                // Σ_{r,c} h_r T_{r,c} b_c = 0
                let mut eq = vec![0u32; d * d];
                for (r, &hr) in h.iter().enumerate() {
                    if hr == 0 {
                        continue;
                    }
                    for (col, &bc) in b.iter().enumerate() {
                        eq[r * d + col] = hr * bc % p;
                    }
                }
                system.push(eq);
            }
        }
        if system.len() > 2 * d * d {
            rref_mod_p(p, &mut system);
        }
    }
    let sols = if system.is_empty() {
        (0..d * d)
            .map(|i| {
                let mut v = vec![0; d * d];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        nullspace_mod_p(p, &system, d * d)
    };
    let dim = sols.len() as u32;
    let size = (p as u64).pow(dim);
    let q = ctx.q();
    let mut t = size;
    while t.is_multiple_of(q) && t > 1 {
        t /= q;
    }
    let field_checked = size <= KERNEL_FIELD_CHECK_LIMIT;
    if field_checked {
        debug_assert!(all_invertible(p, d, &sols), "kernel is not a field");
    }
    KernelInfo {
        size,
        dim_p: dim,
        is_q_power: t == 1,
        field_checked,
    }
}

fn all_invertible(p: u32, d: usize, basis: &[Vec<u32>]) -> bool {
    let k = basis.len();
    let total = (p as u64).pow(k as u32);
    (1..total).all(|mut idx| {
        let mut m = vec![0u32; d * d];
        for b in basis {
            let c = (idx % p as u64) as u32;
            idx /= p as u64;
            for (slot, &v) in m.iter_mut().zip(b) {
                *slot = (*slot + c * v) % p;
            }
        }
        let mut rows: Vec<Vec<u32>> = m.chunks(d).map(<[u32]>::to_vec).collect();
        rref_mod_p(p, &mut rows).len() == d
    })
}

fn require_odd_delta(ctx: &FieldCtx, delta: Elt) -> Result<()> {
    if ctx.is_even() {
        return Err(Error::EvenCharacteristic);
    }
    ctx.ensure_in(ctx.ambient(), delta)?;
    if ctx.pow(delta, ctx.qn() - 1) != ctx.scalar(-1) {
        return Err(invalid("delta must satisfy delta^{q^n-1} = -1"));
    }
    Ok(())
}

fn coprime_index(ctx: &FieldCtx, i: u32) -> Result<()> {
    let n = ctx.n();
    if i == 0 || i >= n || gcd(i as u64, n as u64) != 1 {
        return Err(invalid(format!(
            "index {i} must satisfy 1 <= i <= n-1 and gcd(i, n) = 1"
        )));
    }
    Ok(())
}

/// `β`-orbit of `W = {x + δx^{q^i}}`.
pub fn build_typec(ctx: &Arc<FieldCtx>, i: u32, delta: Elt) -> Result<Spread> {
    require_odd_delta(ctx, delta)?;
    coprime_index(ctx, i)?;
    let l = QPoly::monomial(ctx, i, Elt::ONE)?;
    let w = component_from_poly(&l, delta)?;
    Spread::new(ctx, SpreadKind::TypeC, orbit(ctx, &w, OrbitKind::Beta)).verified_or_err()
}

/// Checks the conditions on `η` for the type-H construction.
pub fn eta_admissible(ctx: &FieldCtx, k: u32, eta: Elt) -> Result<()> {
    ctx.ensure_in(ctx.ambient(), eta)?;
    if eta.is_zero() || ctx.is_square_unchecked(eta, ctx.ambient()) {
        return Err(invalid("eta must be a nonsquare"));
    }
    let e = (1 + ctx.qn()) * (ctx.q().pow(k) - 1);
    if ctx.pow(eta, e) != Elt::ONE {
        return Err(invalid("eta^{(1+q^n)(q^k-1)} must be 1"));
    }
    Ok(())
}

/// `⟨Θ(β²), ψ⟩`-orbit of `W = {x + δx^{q^k}}`.
pub fn build_typeh(ctx: &Arc<FieldCtx>, k: u32, delta: Elt, eta: Elt) -> Result<Spread> {
    require_odd_delta(ctx, delta)?;
    if ctx.n().is_multiple_of(2) {
        return Err(invalid("type H needs n odd"));
    }
    coprime_index(ctx, k)?;
    eta_admissible(ctx, k, eta)?;
    let l = QPoly::monomial(ctx, k, Elt::ONE)?;
    let w = component_from_poly(&l, delta)?;
    let half = ctx.qn().div_ceil(2) as usize;
    let o1 = orbit(ctx, &w, OrbitKind::Beta2);
    let pw = w.map(ctx, |z| psi(ctx, eta, z));
    let o2 = orbit(ctx, &pw, OrbitKind::Beta2);
    if o1.len() != half || o2.len() != half {
        return Err(Error::VerificationFailed(format!(
            "beta^2-orbits have sizes {} and {}, expected {half}",
            o1.len(),
            o2.len()
        )));
    }
    let s = Spread::new(ctx, SpreadKind::TypeH, orbit(ctx, &w, OrbitKind::TypeH { eta }))
        .verified_or_err()?;
    if !is_transitive(ctx, &s, eta) {
        return Err(Error::VerificationFailed(
            "group does not act transitively on the components".into(),
        ));
    }
    Ok(s)
}

/// Orbit of the first component under `Θ(β²)` and `ψ` covers the spread
/// and stays inside it.
pub fn is_transitive(ctx: &FieldCtx, s: &Spread, eta: Elt) -> bool {
    let comps: HashSet<&Subspace> = s.components.iter().collect();
    let Some(start) = s.components.first() else {
        return false;
    };
    let b2 = ctx.mul(ctx.beta(), ctx.beta());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(w) = queue.pop_front() {
        for next in [w.scale(ctx, b2), w.map(ctx, |z| psi(ctx, eta, z))] {
            if !comps.contains(&next) {
                return false;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len() == s.components.len()
}

/// `δ^{-1} + δ^{-q^3} ∈ F_q^*`.
pub fn even3_delta_admissible(ctx: &FieldCtx, delta: Elt) -> bool {
    if delta.is_zero() || ctx.contains(ctx.mid_field(), delta) {
        return false;
    }
    let inv = ctx.inv(delta);
    let v = ctx.add(inv, ctx.frob_q(inv, ctx.n()));
    !v.is_zero() && ctx.contains(ctx.base_field(), v)
}

/// `β`-orbit of `W = {tr(x) + δx}` in `F_{q^6}`, `q` even.
pub fn build_even_n3(ctx: &Arc<FieldCtx>, delta: Elt) -> Result<Spread> {
    if !ctx.is_even() {
        return Err(Error::OddCharacteristic);
    }
    if ctx.n() != 3 {
        return Err(invalid("the even construction needs n = 3"));
    }
    ctx.ensure_in(ctx.ambient(), delta)?;
    if !even3_delta_admissible(ctx, delta) {
        return Err(invalid("delta^{-1} + delta^{-q^3} must lie in F_q^*"));
    }
    let w = component_from_pair(&QPoly::trace(ctx), &QPoly::identity(ctx), delta)?;
    Spread::new(ctx, SpreadKind::EvenC, orbit(ctx, &w, OrbitKind::Beta)).verified_or_err()
}

/// `A(x, y) = tr_{q^6/q}((δ + δ^{q^3})^{-1} x y^{q^3})`.
pub fn symplectic_form(ctx: &FieldCtx, delta: Elt, x: Elt, y: Elt) -> Elt {
    let s = ctx.inv(ctx.add(delta, ctx.frob_q(delta, ctx.n())));
    let v = ctx.mul(s, ctx.mul(x, ctx.frob_q(y, ctx.n())));
    ctx.trace_unchecked(v, ctx.ambient(), ctx.base_field())
}

/// `A` is alternating, bi-additive and nondegenerate, and every component is
/// totally isotropic.
pub fn symplectic_check(s: &Spread, delta: Elt) -> Result<bool> {
    let ctx = &*s.ctx;
    if delta.is_zero() || ctx.contains(ctx.mid_field(), delta) {
        return Err(invalid("delta must lie outside F_{q^n}"));
    }
    let a = |x, y| symplectic_form(ctx, delta, x, y);
    if !ctx.elements(ctx.ambient()).all(|x| a(x, x).is_zero()) {
        return Ok(false);
    }
    let basis: Vec<Elt> = (0..ctx.degree() as u64).map(|i| ctx.exp(i)).collect();
    let basis = Subspace::span(ctx, &basis).rows().to_vec();
    for &u in &basis {
        for &v in &basis {
            for &w in &basis {
                if a(ctx.add(u, v), w) != ctx.add(a(u, w), a(v, w))
                    || a(w, ctx.add(u, v)) != ctx.add(a(w, u), a(w, v))
                {
                    return Ok(false);
                }
            }
        }
    }
    // nondegenerate iff tr_{q/p} ∘ A has a nonsingular Gram matrix over F_p
    let p = ctx.p() as u32;
    let mut gram: Vec<Vec<u32>> = basis
        .iter()
        .map(|&u| {
            basis
                .iter()
                .map(|&v| {
                    let t = ctx.trace_unchecked(a(u, v), ctx.base_field(), ctx.prime_field());
                    t.0
                })
                .collect()
        })
        .collect();
    if rref_mod_p(p, &mut gram).len() != basis.len() {
        return Ok(false);
    }
    Ok(s.components.iter().all(|c| {
        c.rows()
            .iter()
            .all(|&u| c.rows().iter().all(|&v| a(u, v).is_zero()))
    }))
}

/// One equivalence of the key lemma, both sides computed independently.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: u8,
    pub geometric: bool,
    pub algebraic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyLemmaReport {
    pub claims: Vec<ClaimCheck>,
}

impl KeyLemmaReport {
    pub fn agrees(&self) -> bool {
        self.claims.iter().all(|c| c.geometric == c.algebraic)
    }
}

/// Key-lemma check for `W = {x + δL(x)}`.
pub fn check_key_lemma(l: &QPoly, delta: Elt) -> Result<KeyLemmaReport> {
    check_key_lemma_pair(&QPoly::identity(l.ctx()), l, delta)
}

/// Key-lemma check for `W = {A(x) + δB(x)}` with `Q = (A+δB)(A+δ^{q^n}B)`.
///
/// Odd `q`: (1) the `β²`-orbit is a partial spread iff `Q` is planar, and
/// (2) the `β`-orbit is a spread iff `Q` permutes `F_{q^n}^*/F_q^*`.
/// Even `q`: (3) the `β`-orbit is a spread iff `Q` permutes `F_{q^n}`.
pub fn check_key_lemma_pair(a: &QPoly, b: &QPoly, delta: Elt) -> Result<KeyLemmaReport> {
    let ctx = a.ctx();
    let w = component_from_pair(a, b, delta)?;
    let q = q_from_pair(a, b, delta)?;
    let qn = ctx.qn();
    let beta = ctx.beta();
    let mut claims = Vec::new();
    if ctx.is_even() {
        let full = orbit_raw(ctx, &w, beta, qn + 1);
        claims.push(ClaimCheck {
            claim: 3,
            geometric: is_spread(ctx, &full)?,
            algebraic: is_permutation_brute(&q),
        });
    } else {
        let b2 = ctx.mul(beta, beta);
        let half = orbit_raw(ctx, &w, b2, qn.div_ceil(2));
        claims.push(ClaimCheck {
            claim: 1,
            geometric: is_partial_spread(ctx, &half)?,
            algebraic: do_is_two_to_one(&q, &mut Vec::new()),
        });
        let full = orbit_raw(ctx, &w, beta, qn + 1);
        claims.push(ClaimCheck {
            claim: 2,
            geometric: is_spread(ctx, &full)?,
            algebraic: permutes_cosets(&q)?,
        });
    }
    let report = KeyLemmaReport { claims };
    if !report.agrees() {
        return Err(Error::Inconsistent(format!(
            "key lemma sides disagree: {:?}",
            report.claims
        )));
    }
    Ok(report)
}

/// `gcd((q^n+1)/2, ne) = 1` for odd `p`, `gcd(q^n+1, ne) = 1` for `p = 2`.
pub fn gcd_condition(p: u64, e: u32, n: u32) -> bool {
    let qn = p.pow(e).pow(n);
    let a = if p == 2 { qn + 1 } else { qn.div_ceil(2) };
    gcd(a, (n * e) as u64) == 1
}
