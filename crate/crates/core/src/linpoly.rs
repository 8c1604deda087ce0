//! Reduced q-polynomials `Σ d_i X^{q^i}` over `F_{q^n}`.
//!
//! Exponent indices live in `Z/nZ`, so reduction modulo `X^{q^n} - X` is
//! implicit in every operation.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{invalid, Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::linalg;

#[derive(Clone)]
pub struct QPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<Elt>,
}

impl std::fmt::Debug for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("QPoly").field(&self.coeffs).finish()
    }
}

impl PartialEq for QPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.coeffs == other.coeffs
    }
}

impl Eq for QPoly {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolyJson {
    pub coeffs: Vec<u32>,
}

impl QPoly {
    /// Builds `Σ c_i X^{q^i}`, folding indices modulo `n`. Coefficients must
    /// lie in `F_{q^n}`.
    pub fn new(ctx: &Arc<FieldCtx>, coeffs: &[Elt]) -> Result<Self> {
        let n = ctx.n() as usize;
        let mid = ctx.mid_field();
        let mut folded = vec![Elt::ZERO; n];
        for (i, &c) in coeffs.iter().enumerate() {
            ctx.ensure_in(mid, c)?;
            folded[i % n] = ctx.add(folded[i % n], c);
        }
        Ok(QPoly {
            ctx: ctx.clone(),
            coeffs: folded,
        })
    }

    pub(crate) fn from_raw(ctx: &Arc<FieldCtx>, coeffs: Vec<Elt>) -> Self {
        debug_assert_eq!(coeffs.len(), ctx.n() as usize);
        QPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_raw(ctx, vec![Elt::ZERO; ctx.n() as usize])
    }

    /// `c X^{q^i}`.
    pub fn monomial(ctx: &Arc<FieldCtx>, i: u32, c: Elt) -> Result<Self> {
        let mut v = vec![Elt::ZERO; i as usize + 1];
        v[i as usize] = c;
        Self::new(ctx, &v)
    }

    /// The identity map `X`.
    pub fn identity(ctx: &Arc<FieldCtx>) -> Self {
        Self::monomial(ctx, 0, Elt::ONE).expect("1 lies in every subfield")
    }

    /// `Σ_{i<n} X^{q^i}`, the trace from `F_{q^n}` to `F_q`.
    pub fn trace(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_raw(ctx, vec![Elt::ONE; ctx.n() as usize])
    }

    /// The subspace polynomial `Π_{a∈U} (X - a)` of the `F_q`-span of
    /// `basis`. The span must be a proper subspace of `F_{q^n}`.
    pub fn subspace_poly(ctx: &Arc<FieldCtx>, basis: &[Elt]) -> Result<Self> {
        let mut l = Self::identity(ctx);
        for &u in basis {
            ctx.ensure_in(ctx.mid_field(), u)?;
            let v = l.eval_unchecked(u);
            if v.is_zero() {
                return Err(invalid("basis is not F_q-independent"));
            }
            // L ↦ L^q - L(u)^{q-1} L
            let c = ctx.neg(ctx.pow(v, ctx.q() - 1));
            let mut step = vec![Elt::ZERO; ctx.n() as usize];
            step[0] = c;
            if ctx.n() == 1 {
                return Err(invalid("subspace must be proper"));
            }
            step[1] = Elt::ONE;
            l = QPoly::from_raw(ctx, step).compose(&l)?;
        }
        if l.coeffs.iter().all(|c| c.is_zero()) {
            return Err(invalid("subspace must be proper"));
        }
        Ok(l)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: Elt) -> Result<Elt> {
        self.ctx.ensure_in(self.ctx.mid_field(), x)?;
        Ok(self.eval_unchecked(x))
    }

    #[inline]
    pub fn eval_unchecked(&self, x: Elt) -> Elt {
        let ctx = &*self.ctx;
        let mut acc = Elt::ZERO;
        for (i, &d) in self.coeffs.iter().enumerate() {
            if !d.is_zero() {
                acc = ctx.add(acc, ctx.mul(d, ctx.frob_q(x, i as u32)));
            }
        }
        acc
    }

    fn check_ctx(&self, other: &QPoly) -> Result<()> {
        if *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &QPoly) -> Result<QPoly> {
        self.check_ctx(other)?;
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ctx.add(*a, *b))
            .collect();
        Ok(QPoly::from_raw(&self.ctx, c))
    }

    /// `c · L`.
    pub fn scale(&self, c: Elt) -> Result<QPoly> {
        self.ctx.ensure_in(self.ctx.mid_field(), c)?;
        let v = self.coeffs.iter().map(|&d| self.ctx.mul(c, d)).collect();
        Ok(QPoly::from_raw(&self.ctx, v))
    }

    /// `L ∘ M`.
    pub fn compose(&self, m: &QPoly) -> Result<QPoly> {
        self.check_ctx(m)?;
        let ctx = &*self.ctx;
        let n = self.coeffs.len();
        let mut out = vec![Elt::ZERO; n];
        for (i, &d) in self.coeffs.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for (j, &c) in m.coeffs.iter().enumerate() {
                let t = ctx.mul(d, ctx.frob_q(c, i as u32));
                out[(i + j) % n] = ctx.add(out[(i + j) % n], t);
            }
        }
        Ok(QPoly::from_raw(&self.ctx, out))
    }

    /// `Σ d_i^{q^{n-i}} X^{q^{n-i}}`.
    pub fn adjoint(&self) -> QPoly {
        let n = self.coeffs.len();
        let mut out = vec![Elt::ZERO; n];
        for (i, &d) in self.coeffs.iter().enumerate() {
            let k = (n - i) % n;
            out[k] = self.ctx.frob_q(d, k as u32);
        }
        QPoly::from_raw(&self.ctx, out)
    }

    pub fn assoc_matrix(&self) -> AssocMatrix {
        let n = self.coeffs.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.ctx.frob_q(self.coeffs[(j + n - i) % n], i as u32));
            }
        }
        AssocMatrix { n, entries }
    }

    /// `F_q`-dimension of the kernel, as `n - rank(M)`.
    pub fn kernel_dim(&self) -> usize {
        let m = self.assoc_matrix();
        self.coeffs.len() - m.rank(&self.ctx)
    }

    /// An `F_q`-basis of the kernel, found by scanning `F_{q^n}`.
    pub fn kernel_basis(&self) -> Vec<Elt> {
        let ctx = &*self.ctx;
        let kernel: Vec<Elt> = ctx
            .elements(ctx.mid_field())
            .filter(|&x| self.eval_unchecked(x).is_zero())
            .collect();
        span_basis(ctx, &kernel)
    }

    pub fn is_permutation(&self) -> bool {
        self.kernel_dim() == 0
    }

    /// Degree over `F_p` of `{λ ∈ F_{q^n} : L(λx) = λL(x) ∀x}`.
    pub fn linearity_field(&self) -> u32 {
        let e = self.ctx.e();
        linearity_degree(
            self.ctx.mid_field().degree(),
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| e * i as u32),
        )
    }

    pub fn to_json(&self) -> QPolyJson {
        QPolyJson {
            coeffs: self.coeffs.iter().map(|c| c.0).collect(),
        }
    }

    pub fn from_json(ctx: &Arc<FieldCtx>, json: &QPolyJson) -> Result<Self> {
        let c: Vec<Elt> = json.coeffs.iter().map(|&v| Elt(v)).collect();
        if c.len() > ctx.n() as usize {
            return Err(invalid("too many coefficients"));
        }
        Self::new(ctx, &c)
    }
}

/// Degree of the linearity field of an additive map on a field of degree
/// `field_degree` over `F_p` whose nonzero terms are `X^{p^i}` for the given
/// `i`.
pub fn linearity_degree(field_degree: u32, p_indices: impl IntoIterator<Item = u32>) -> u32 {
    p_indices
        .into_iter()
        .fold(field_degree as u64, |g, i| gcd(g, i as u64)) as u32
}

/// Linearity field of `Σ c_i X^{p^i}` on `F_{q^n}`, with `c_i` given
/// `p`-indexed.
pub fn p_linearity_field(ctx: &FieldCtx, p_coeffs: &[Elt]) -> u32 {
    let d = ctx.mid_field().degree();
    linearity_degree(
        d,
        p_coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i as u32 % d),
    )
}

/// Greedy `F_q`-basis of the span of `elts`.
pub(crate) fn span_basis(ctx: &FieldCtx, elts: &[Elt]) -> Vec<Elt> {
    let scalars: Vec<Elt> = ctx.elements(ctx.base_field()).collect();
    let mut span: HashSet<Elt> = HashSet::from([Elt::ZERO]);
    let mut basis = Vec::new();
    for &x in elts {
        if span.contains(&x) {
            continue;
        }
        basis.push(x);
        let old: Vec<Elt> = span.iter().copied().collect();
        for s in old {
            for &c in &scalars[1..] {
                span.insert(ctx.add(s, ctx.mul(c, x)));
            }
        }
    }
    basis
}

/// The matrix `M[i][j] = d_{(j-i) mod n}^{q^i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocMatrix {
    n: usize,
    entries: Vec<Elt>,
}

impl AssocMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Elt>> {
        self.entries.chunks(self.n).map(<[Elt]>::to_vec).collect()
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        linalg::rank(ctx, &self.rows())
    }
}
