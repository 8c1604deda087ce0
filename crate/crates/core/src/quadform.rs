//! Dembowski-Ostrom polynomials and quadratic spaces over `F_q`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::field::{Elt, FieldCtx, Subfield};
use crate::linalg;
use crate::linpoly::QPoly;

/// Exponent base of a DO polynomial.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "q")]
    Q,
}

/// `Σ c_ij X^{s^i + s^j}` over a subfield `F`, with `s ∈ {p, q}` and indices
/// reduced modulo `[F : F_s]`.
#[derive(Clone)]
pub struct DOPoly {
    ctx: Arc<FieldCtx>,
    field: Subfield,
    base: Base,
    terms: Vec<(u32, u32, Elt)>,
}

impl std::fmt::Debug for DOPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DOPoly")
            .field("field", &self.field.degree())
            .field("base", &self.base)
            .field("terms", &self.terms)
            .finish()
    }
}

impl PartialEq for DOPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx
            && self.field == other.field
            && self.base == other.base
            && self.terms == other.terms
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DOTermJson {
    pub i: u32,
    pub j: u32,
    pub c: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DOPolyJson {
    pub base: Base,
    pub coeffs: Vec<DOTermJson>,
}

impl DOPoly {
    pub fn new(
        ctx: &Arc<FieldCtx>,
        field: Subfield,
        base: Base,
        terms: impl IntoIterator<Item = (u32, u32, Elt)>,
    ) -> Result<Self> {
        let bd = match base {
            Base::P => 1,
            Base::Q => ctx.e(),
        };
        if !field.degree().is_multiple_of(bd) || !ctx.degree().is_multiple_of(field.degree()) {
            return Err(invalid("field is not an extension of the exponent base"));
        }
        let m = field.degree() / bd;
        let mut out: Vec<(u32, u32, Elt)> = Vec::new();
        for (i, j, c) in terms {
            ctx.ensure_in(field, c)?;
            let (a, b) = (i % m, j % m);
            let key = (a.min(b), a.max(b));
            match out.iter_mut().find(|t| (t.0, t.1) == key) {
                Some(t) => t.2 = ctx.add(t.2, c),
                None => out.push((key.0, key.1, c)),
            }
        }
        out.retain(|t| !t.2.is_zero());
        out.sort_by_key(|t| (t.0, t.1));
        Ok(DOPoly {
            ctx: ctx.clone(),
            field,
            base,
            terms: out,
        })
    }

    /// A q-based DO polynomial over `F_{q^n}`.
    pub fn over_mid(
        ctx: &Arc<FieldCtx>,
        terms: impl IntoIterator<Item = (u32, u32, Elt)>,
    ) -> Result<Self> {
        Self::new(ctx, ctx.mid_field(), Base::Q, terms)
    }

    /// The product `A(X)·B(X)` of two q-polynomials.
    pub fn product(a: &QPoly, b: &QPoly) -> Result<Self> {
        if **a.ctx() != **b.ctx() {
            return Err(Error::ContextMismatch);
        }
        let ctx = a.ctx();
        let mut terms = Vec::new();
        for (i, &x) in a.coeffs().iter().enumerate() {
            for (j, &y) in b.coeffs().iter().enumerate() {
                if !x.is_zero() && !y.is_zero() {
                    terms.push((i as u32, j as u32, ctx.mul(x, y)));
                }
            }
        }
        Self::over_mid(ctx, terms)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn field(&self) -> Subfield {
        self.field
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// Sorted `(i, j, c)` with `i <= j`.
    pub fn terms(&self) -> &[(u32, u32, Elt)] {
        &self.terms
    }

    fn base_degree(&self) -> u32 {
        match self.base {
            Base::P => 1,
            Base::Q => self.ctx.e(),
        }
    }

    /// Number of distinct exponent indices, `[F : F_s]`.
    pub fn index_modulus(&self) -> u32 {
        self.field.degree() / self.base_degree()
    }

    pub fn add(&self, other: &DOPoly) -> Result<DOPoly> {
        if *self.ctx != *other.ctx || self.field != other.field || self.base != other.base {
            return Err(Error::ContextMismatch);
        }
        DOPoly::new(
            &self.ctx,
            self.field,
            self.base,
            self.terms.iter().chain(&other.terms).copied(),
        )
    }

    pub fn scale(&self, c: Elt) -> Result<DOPoly> {
        DOPoly::new(
            &self.ctx,
            self.field,
            self.base,
            self.terms.iter().map(|&(i, j, d)| (i, j, self.ctx.mul(c, d))),
        )
    }

    pub fn eval(&self, x: Elt) -> Result<Elt> {
        self.ctx.ensure_in(self.field, x)?;
        Ok(self.eval_unchecked(x))
    }

    #[inline]
    pub fn eval_unchecked(&self, x: Elt) -> Elt {
        let ctx = &*self.ctx;
        let bd = self.base_degree();
        let m = self.index_modulus() as usize;
        let mut pw = [Elt::ZERO; 32];
        for (i, slot) in pw.iter_mut().enumerate().take(m) {
            *slot = ctx.frob(x, bd * i as u32);
        }
        let mut acc = Elt::ZERO;
        for &(i, j, c) in &self.terms {
            let t = ctx.mul(c, ctx.mul(pw[i as usize], pw[j as usize]));
            acc = ctx.add(acc, t);
        }
        acc
    }

    /// Values on the field in subfield-index order.
    pub fn value_table(&self) -> Vec<Elt> {
        self.ctx
            .elements(self.field)
            .map(|x| self.eval_unchecked(x))
            .collect()
    }

    pub fn to_json(&self) -> DOPolyJson {
        DOPolyJson {
            base: self.base,
            coeffs: self
                .terms
                .iter()
                .map(|&(i, j, c)| DOTermJson { i, j, c: c.0 })
                .collect(),
        }
    }

    pub fn from_json(ctx: &Arc<FieldCtx>, field: Subfield, json: &DOPolyJson) -> Result<Self> {
        DOPoly::new(
            ctx,
            field,
            json.base,
            json.coeffs.iter().map(|t| (t.i, t.j, Elt(t.c))),
        )
    }
}

/// Char-2 quadratic form types; `OddChar` tags forms classified by rank only.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormType {
    Hyperbolic,
    Elliptic,
    Parabolic,
    OddChar,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub form_type: FormType,
    pub r: usize,
    pub s: usize,
    pub rank: usize,
    /// Predicted number of zeros.
    pub n0: u64,
}

/// A quadratic map `F_q^dim → F_q`, stored as a value table indexed by
/// `Σ idx(a_i) q^i`.
#[derive(Clone)]
pub struct QuadSpace {
    ctx: Arc<FieldCtx>,
    dim: usize,
    values: Vec<Elt>,
    radical: Vec<Vec<Elt>>,
}

impl std::fmt::Debug for QuadSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuadSpace")
            .field("dim", &self.dim)
            .field("radical_dim", &self.radical.len())
            .finish()
    }
}

impl QuadSpace {
    pub fn from_values(ctx: &Arc<FieldCtx>, dim: usize, values: Vec<Elt>) -> Result<Self> {
        let q = ctx.q() as usize;
        if values.len() != q.pow(dim as u32) {
            return Err(invalid("value table has the wrong length"));
        }
        for &v in &values {
            ctx.ensure_in(ctx.base_field(), v)?;
        }
        let mut s = QuadSpace {
            ctx: ctx.clone(),
            dim,
            values,
            radical: Vec::new(),
        };
        s.radical = s.compute_radical();
        Ok(s)
    }

    /// Tabulates `f` on every coordinate vector of `F_q^dim`.
    pub fn from_fn(ctx: &Arc<FieldCtx>, dim: usize, f: impl Fn(&[Elt]) -> Elt) -> Result<Self> {
        let q = ctx.q() as usize;
        let values = (0..q.pow(dim as u32))
            .map(|idx| f(&coords(ctx, dim, idx)))
            .collect();
        Self::from_values(ctx, dim, values)
    }

    /// `x ↦ tr_{q^n/q}(y·Q(x))` on `F_{q^n}`, in the `F_q`-basis `θ^i` for
    /// the primitive element `θ` of `F_{q^n}`.
    pub fn from_trace(q_poly: &DOPoly, y: Elt) -> Result<Self> {
        let ctx = q_poly.ctx();
        let mid = ctx.mid_field();
        if q_poly.field() != mid {
            return Err(invalid("trace forms need a polynomial over F_{q^n}"));
        }
        ctx.ensure_in(mid, y)?;
        let n = ctx.n() as usize;
        let points = mid_points(ctx);
        let values = points
            .iter()
            .map(|&x| {
                let v = ctx.mul(y, q_poly.eval_unchecked(x));
                ctx.trace_unchecked(v, mid, ctx.base_field())
            })
            .collect();
        Self::from_values(ctx, n, values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Elt] {
        &self.values
    }

    fn index(&self, v: &[Elt]) -> usize {
        let q = self.ctx.q() as usize;
        let base = self.ctx.base_field();
        v.iter()
            .rev()
            .fold(0, |acc, &a| acc * q + self.ctx.index_of(base, a))
    }

    pub fn value(&self, v: &[Elt]) -> Elt {
        self.values[self.index(v)]
    }

    /// Polar form `B(u, v) = Q(u+v) - Q(u) - Q(v)`.
    pub fn bilinear(&self, u: &[Elt], v: &[Elt]) -> Elt {
        let ctx = &*self.ctx;
        let w: Vec<Elt> = u.iter().zip(v).map(|(a, b)| ctx.add(*a, *b)).collect();
        ctx.sub(ctx.sub(self.value(&w), self.value(u)), self.value(v))
    }

    fn compute_radical(&self) -> Vec<Vec<Elt>> {
        let n = self.dim;
        let unit = |i: usize| {
            let mut v = vec![Elt::ZERO; n];
            v[i] = Elt::ONE;
            v
        };
        let gram: Vec<Vec<Elt>> = (0..n)
            .map(|i| (0..n).map(|j| self.bilinear(&unit(i), &unit(j))).collect())
            .collect();
        linalg::nullspace(&self.ctx, &gram, n)
    }

    /// Basis of the radical in coordinates.
    pub fn radical(&self) -> &[Vec<Elt>] {
        &self.radical
    }

    pub fn count_zeros(&self) -> u64 {
        self.values.iter().filter(|v| v.is_zero()).count() as u64
    }

    /// Type, radical dimension and rank of a form in characteristic two.
    pub fn classify_char2(&self) -> Result<Classification> {
        if !self.ctx.is_even() {
            return Err(Error::OddCharacteristic);
        }
        let q = self.ctx.q() as i128;
        let n = self.dim;
        let r = self.radical.len();
        if !(n - r).is_multiple_of(2) {
            return Err(Error::Inconsistent(
                "radical codimension is odd in characteristic two".into(),
            ));
        }
        let s = (n - r) / 2;
        let n0 = |eps: i128| -> u64 {
            let base = q.pow(n as u32 - 1);
            let tail = if r + s == 0 {
                0
            } else {
                (q - 1) * q.pow((r + s - 1) as u32) * eps
            };
            (base + tail) as u64
        };
        if self.radical.iter().any(|v| !self.value(v).is_zero()) {
            return Ok(Classification {
                form_type: FormType::Parabolic,
                r,
                s,
                rank: 2 * s + 1,
                n0: n0(0),
            });
        }
        let zeros = self.count_zeros();
        let form_type = if zeros == n0(1) {
            FormType::Hyperbolic
        } else if zeros == n0(-1) {
            FormType::Elliptic
        } else {
            return Err(Error::Inconsistent(format!(
                "zero count {zeros} matches neither hyperbolic nor elliptic"
            )));
        };
        let eps = if form_type == FormType::Hyperbolic { 1 } else { -1 };
        Ok(Classification {
            form_type,
            r,
            s,
            rank: 2 * s,
            n0: n0(eps),
        })
    }

    /// Classification in any characteristic; odd forms report rank `n - r`.
    pub fn classify(&self) -> Result<Classification> {
        if self.ctx.is_even() {
            return self.classify_char2();
        }
        let r = self.radical.len();
        Ok(Classification {
            form_type: FormType::OddChar,
            r,
            s: (self.dim - r) / 2,
            rank: self.dim - r,
            n0: self.count_zeros(),
        })
    }
}

/// Coordinates of a packed index.
fn coords(ctx: &FieldCtx, dim: usize, mut idx: usize) -> Vec<Elt> {
    let q = ctx.q() as usize;
    let base = ctx.base_field();
    (0..dim)
        .map(|_| {
            let a = ctx.element_at(base, idx % q);
            idx /= q;
            a
        })
        .collect()
}

/// The `F_q`-basis `1, θ, ..., θ^{n-1}` of `F_{q^n}`.
pub fn mid_basis(ctx: &FieldCtx) -> Vec<Elt> {
    let mid = ctx.mid_field();
    let theta = ctx.subfield_generator(mid);
    (0..ctx.n() as u64).map(|i| ctx.pow(theta, i)).collect()
}

/// Every element of `F_{q^n}`, listed by packed coordinate index over the
/// basis [`mid_basis`].
pub fn mid_points(ctx: &FieldCtx) -> Vec<Elt> {
    let q = ctx.q() as usize;
    let n = ctx.n() as usize;
    let basis = mid_basis(ctx);
    let scalars: Vec<Elt> = ctx.elements(ctx.base_field()).collect();
    let mut points = vec![Elt::ZERO];
    for b in basis.iter().take(n) {
        let prev = points.clone();
        points = Vec::with_capacity(prev.len() * q);
        for &c in &scalars {
            let cb = ctx.mul(c, *b);
            points.extend(prev.iter().map(|&x| ctx.add(x, cb)));
        }
    }
    points
}

/// Permutation test through the rank of every trace form (`q` even).
pub fn is_permutation_via_rank(q_poly: &DOPoly) -> Result<bool> {
    let ctx = q_poly.ctx();
    if !ctx.is_even() {
        return Err(Error::OddCharacteristic);
    }
    for y in ctx.elements(ctx.mid_field()).skip(1) {
        let c = QuadSpace::from_trace(q_poly, y)?.classify_char2()?;
        if c.rank % 2 == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bijectivity of `Q` on its field by a full scan.
pub fn is_permutation_brute(q_poly: &DOPoly) -> bool {
    let ctx = q_poly.ctx();
    let field = q_poly.field();
    let mut seen = vec![false; ctx.size(field) as usize];
    for x in ctx.elements(field) {
        let i = ctx.index_of(field, q_poly.eval_unchecked(x));
        if std::mem::replace(&mut seen[i], true) {
            return false;
        }
    }
    true
}

/// Whether `Q` induces a bijection of `F^*/F_q^*`.
///
/// Cosets are labelled by the discrete log modulo `(|F|-1)/(q-1)`, which
/// needs `Q(λx) ∈ Q(x)F_q^*`; base-`p` polynomials are accepted only when
/// `q = p`.
pub fn permutes_cosets(q_poly: &DOPoly) -> Result<bool> {
    let ctx = q_poly.ctx();
    let field = q_poly.field();
    if q_poly.base() == Base::P && ctx.e() != 1 {
        return Err(invalid("coset action needs a q-based polynomial"));
    }
    if !field.degree().is_multiple_of(ctx.e()) {
        return Err(invalid("field does not contain F_q"));
    }
    let size = ctx.size(field);
    let classes = ((size - 1) / (ctx.q() - 1)) as usize;
    let mut seen = vec![false; classes];
    for j in 0..classes {
        let x = ctx.element_at(field, j + 1);
        let v = q_poly.eval_unchecked(x);
        if v.is_zero() {
            return Ok(false);
        }
        let label = (ctx.index_of(field, v) - 1) % classes;
        if std::mem::replace(&mut seen[label], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, e: u32, n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, e, n).unwrap())
    }

    fn square(c: &Arc<FieldCtx>) -> DOPoly {
        DOPoly::over_mid(c, [(0, 0, Elt::ONE)]).unwrap()
    }

    #[test]
    fn terms_are_normalized() {
        let c = ctx(3, 1, 3);
        let g = c.subfield_generator(c.mid_field());
        let f = DOPoly::over_mid(&c, [(2, 0, g), (0, 2, g), (4, 1, Elt::ONE), (3, 3, Elt::ZERO)])
            .unwrap();
        assert_eq!(f.terms(), &[(0, 2, c.add(g, g)), (1, 1, Elt::ONE)]);
        assert!(DOPoly::over_mid(&c, [(0, 0, c.gamma())]).is_err());
    }

    #[test]
    fn eval_matches_power() {
        let c = ctx(3, 1, 3);
        let f = DOPoly::over_mid(&c, [(0, 1, Elt::ONE)]).unwrap();
        for x in c.elements(c.mid_field()) {
            assert_eq!(f.eval(x).unwrap(), c.pow(x, 4));
        }
        let fp = DOPoly::new(&c, c.ambient(), Base::P, [(1, 1, Elt::ONE)]).unwrap();
        assert_eq!(fp.eval(c.gamma()).unwrap(), c.pow(c.gamma(), 6));
    }

    #[test]
    fn homogeneity() {
        let c = ctx(2, 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mid = c.mid_field();
        let rand_mid = |rng: &mut ChaCha8Rng| c.element_at(mid, rng.gen_range(0..16));
        let f = DOPoly::over_mid(
            &c,
            [(0, 1, rand_mid(&mut rng)), (1, 1, rand_mid(&mut rng))],
        )
        .unwrap();
        for lam in c.elements(c.base_field()) {
            let x = rand_mid(&mut rng);
            assert_eq!(
                f.eval_unchecked(c.mul(lam, x)),
                c.mul(c.mul(lam, lam), f.eval_unchecked(x))
            );
        }
    }

    #[test]
    fn json_shape() {
        let c = ctx(3, 1, 3);
        let f = DOPoly::over_mid(&c, [(0, 1, Elt(2))]).unwrap();
        let s = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(s, r#"{"base":"q","coeffs":[{"i":0,"j":1,"c":2}]}"#);
        let back = DOPoly::from_json(&c, c.mid_field(), &serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn mid_points_cover_the_field() {
        for (p, e, n) in [(2, 1, 3), (3, 1, 2), (2, 2, 2)] {
            let c = ctx(p, e, n);
            let mut pts = mid_points(&c);
            assert_eq!(pts[1], Elt::ONE);
            pts.sort();
            pts.dedup();
            assert_eq!(pts.len() as u64, c.size(c.mid_field()));
            assert!(pts.iter().all(|&x| c.contains(c.mid_field(), x)));
        }
    }

    #[test]
    fn trace_of_square_is_nondegenerate_in_odd_char() {
        let c = ctx(3, 1, 3);
        let s = QuadSpace::from_trace(&square(&c), Elt::ONE).unwrap();
        assert!(s.radical().is_empty());
        let z = QuadSpace::from_trace(&square(&c), Elt::ZERO).unwrap();
        assert_eq!(z.radical().len(), 3);
        assert_eq!(z.count_zeros(), 27);
    }

    #[test]
    fn polar_form_of_x_1_plus_q() {
        // B(u, v) = tr(u v^q + u^q v) for Q = X^{1+q}, y = 1
        let c = ctx(2, 1, 3);
        let mid = c.mid_field();
        let f = DOPoly::over_mid(&c, [(0, 1, Elt::ONE)]).unwrap();
        let s = QuadSpace::from_trace(&f, Elt::ONE).unwrap();
        let pts = mid_points(&c);
        for (iu, &u) in pts.iter().enumerate() {
            for (iv, &v) in pts.iter().enumerate() {
                let cu = coords(&c, 3, iu);
                let cv = coords(&c, 3, iv);
                let direct = c.add(c.mul(u, c.frob_q(v, 1)), c.mul(c.frob_q(u, 1), v));
                let direct = c.trace(direct, mid, c.base_field()).unwrap();
                assert_eq!(s.bilinear(&cu, &cv), direct);
            }
        }
    }

    fn form(c: &Arc<FieldCtx>, dim: usize, f: impl Fn(&FieldCtx, &[Elt]) -> Elt) -> QuadSpace {
        let cc = c.clone();
        QuadSpace::from_fn(c, dim, move |v| f(&cc, v)).unwrap()
    }

    #[test]
    fn classical_forms_over_f2() {
        let c = ctx(2, 1, 1);
        let hyp = form(&c, 2, |k, v| k.mul(v[0], v[1]));
        assert!(hyp.radical().is_empty());
        assert_eq!(hyp.count_zeros(), 3);
        let cl = hyp.classify_char2().unwrap();
        assert_eq!((cl.form_type, cl.rank, cl.n0), (FormType::Hyperbolic, 2, 3));

        let par = form(&c, 1, |k, v| k.mul(v[0], v[0]));
        assert_eq!(par.count_zeros(), 1);
        assert_eq!(par.classify_char2().unwrap().form_type, FormType::Parabolic);

        let zero = form(&c, 3, |_, _| Elt::ZERO);
        assert_eq!(zero.count_zeros(), 8);
        let cl = zero.classify_char2().unwrap();
        assert_eq!((cl.form_type, cl.rank, cl.r), (FormType::Hyperbolic, 0, 3));

        let h4 = form(&c, 4, |k, v| k.add(k.mul(v[0], v[1]), k.mul(v[2], v[3])));
        let cl = h4.classify_char2().unwrap();
        assert_eq!((cl.form_type, cl.r, cl.s, cl.rank, cl.n0), (FormType::Hyperbolic, 0, 2, 4, 10));
        assert_eq!(h4.count_zeros(), 10);

        let p3 = form(&c, 3, |k, v| k.add(k.mul(v[0], v[0]), k.mul(v[1], v[2])));
        let cl = p3.classify_char2().unwrap();
        assert_eq!((cl.form_type, cl.rank, cl.n0), (FormType::Parabolic, 3, 4));
        assert_eq!(p3.count_zeros(), 4);

        // x^2 + xy + y^2: X^2 + X + 1 is irreducible over F_2
        let ell = form(&c, 2, |k, v| {
            k.sum([k.mul(v[0], v[0]), k.mul(v[0], v[1]), k.mul(v[1], v[1])])
        });
        let cl = ell.classify_char2().unwrap();
        assert_eq!((cl.form_type, cl.n0), (FormType::Elliptic, 1));
        assert_eq!(ell.count_zeros(), 1);

        let odd = ctx(3, 1, 1);
        let f = form(&odd, 1, |k, v| k.mul(v[0], v[0]));
        assert!(matches!(f.classify_char2(), Err(Error::OddCharacteristic)));
    }

    #[test]
    fn permutation_examples() {
        let c = ctx(2, 1, 3);
        assert!(is_permutation_via_rank(&square(&c)).unwrap());
        assert!(is_permutation_brute(&square(&c)));

        let c4 = ctx(2, 1, 4);
        for k in 1..4 {
            let f = DOPoly::over_mid(&c4, [(0, k, Elt::ONE)]).unwrap();
            let brute = is_permutation_brute(&f);
            assert_eq!(is_permutation_via_rank(&f).unwrap(), brute);
        }
        // X^{1+q} at n = 4: X^{1+2} = X^3 and gcd(3, 15) = 3
        let f = DOPoly::over_mid(&c4, [(0, 1, Elt::ONE)]).unwrap();
        assert!(!is_permutation_brute(&f));

        let odd = ctx(3, 1, 3);
        assert!(matches!(
            is_permutation_via_rank(&square(&odd)),
            Err(Error::OddCharacteristic)
        ));
    }

    #[test]
    fn squaring_on_cosets() {
        let c = ctx(3, 1, 3);
        assert!(!is_permutation_brute(&square(&c)));
        assert!(permutes_cosets(&square(&c)).unwrap());
        let c = ctx(3, 1, 2);
        assert!(!permutes_cosets(&square(&c)).unwrap());
        // a polynomial with a kernel
        let f = DOPoly::over_mid(&c, [(0, 0, Elt::ONE), (1, 1, c.scalar(-1))]).unwrap();
        assert!(!permutes_cosets(&f).unwrap());
    }

    fn brute_cosets(q_poly: &DOPoly) -> bool {
        let c = q_poly.ctx();
        let mid = c.mid_field();
        let scalars: Vec<Elt> = c.elements(c.base_field()).skip(1).collect();
        let canon = |z: Elt| scalars.iter().map(|&a| c.mul(a, z)).min().unwrap();
        let mut images = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for x in c.elements(mid).skip(1) {
            if !seen.insert(canon(x)) {
                continue;
            }
            let v = q_poly.eval_unchecked(x);
            if v.is_zero() {
                return false;
            }
            images.push(canon(v));
        }
        let n = images.len();
        images.sort();
        images.dedup();
        images.len() == n
    }

    #[test]
    fn coset_labels_match_min_representatives() {
        let c = ctx(3, 1, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mid = c.mid_field();
        for _ in 0..200 {
            let terms: Vec<(u32, u32, Elt)> = (0..rng.gen_range(1..4))
                .map(|_| {
                    (
                        rng.gen_range(0..3),
                        rng.gen_range(0..3),
                        c.element_at(mid, rng.gen_range(0..27)),
                    )
                })
                .collect();
            let f = DOPoly::over_mid(&c, terms).unwrap();
            assert_eq!(permutes_cosets(&f).unwrap(), brute_cosets(&f));
        }
    }
}
