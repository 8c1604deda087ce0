//! The field tower `F_p ⊂ F_q ⊂ F_{q^n} ⊂ F_{q^{2n}}`.
//!
//! Everything lives inside the single ambient field `F_{p^D}`, `D = 2ne`,
//! built as `F_p[x]/(f)` for the lexicographically least monic irreducible
//! `f` of degree `D`. Elements are encoded as the base-`p` integer of their
//! coefficient vector in the power basis `1, x, ..., x^{D-1}`, so `0` and `1`
//! encode to themselves and the prime field occupies encodings `0..p`.
//!
//! Multiplication goes through discrete log / antilog tables with respect to
//! the least primitive encoding `γ`. Addition is `XOR` in characteristic two
//! and a Zech-logarithm lookup otherwise.
//!
//! Subfields are never materialized as separate structures. The subfield of
//! degree `d` over `F_p` is `{0} ∪ ⟨γ^{(p^D-1)/(p^d-1)}⟩`, which gives every
//! subfield element a dense index: `0` for zero and `1 + log(x)/step`
//! otherwise.

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, gcd, is_prime, prime_divisors};
use crate::error::{invalid, Error, Result};

/// Default cap on the ambient field size.
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 24;

/// Environment variable overriding [`DEFAULT_TABLE_BUDGET`].
pub const TABLE_BUDGET_ENV: &str = "SPREADLAB_TABLE_BUDGET";

const NO_LOG: u32 = u32::MAX;

/// A field element, stored as its canonical base-`p` encoding.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elt(pub u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for Elt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subfield of the ambient field, identified by its degree over `F_p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subfield(u32);

impl Subfield {
    #[inline]
    pub fn degree(self) -> u32 {
        self.0
    }
}

/// JSON form of a [`FieldCtx`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCtxJson {
    pub p: u64,
    pub e: u32,
    pub n: u32,
    /// Coefficients `c_0, ..., c_D` of the defining polynomial, constant term first.
    pub defining_poly: Vec<u32>,
    pub gamma: u32,
    pub beta: u32,
}

/// Immutable field tower context. Cheap to share across threads.
pub struct FieldCtx {
    p: u32,
    e: u32,
    n: u32,
    degree: u32,
    order: u32,
    defining_poly: Vec<u32>,
    gamma: Elt,
    beta: Elt,
    /// `exp[k] = γ^k` for `0 <= k < order - 1`.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + γ^k)`, odd characteristic only.
    zech: Vec<u32>,
    /// `p^k mod (order - 1)` for `0 <= k < degree`.
    frob_exp: Vec<u64>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("n", &self.n)
            .field("defining_poly", &self.defining_poly)
            .field("gamma", &self.gamma)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.n == other.n
    }
}

impl Eq for FieldCtx {}

/// Reads the table budget from the environment, falling back to the default.
pub fn table_budget() -> u64 {
    std::env::var(TABLE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_TABLE_BUDGET)
}

impl FieldCtx {
    /// Builds the tower for `q = p^e`, `F_{q^n}` and ambient `F_{q^{2n}}`.
    pub fn new(p: u64, e: u32, n: u32) -> Result<Self> {
        Self::with_budget(p, e, n, table_budget())
    }

    pub fn with_budget(p: u64, e: u32, n: u32, budget: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || n == 0 {
            return Err(invalid("e and n must be positive"));
        }
        let degree = 2 * n * e;
        let size = checked_pow(p, degree).unwrap_or(u128::MAX);
        if size > budget as u128 || size > u32::MAX as u128 {
            return Err(Error::BudgetExceeded { size, budget });
        }
        let p32 = p as u32;
        let order = size as u32;
        let modulus = least_irreducible(p32, degree as usize);
        let gamma = least_primitive(p32, &modulus, order);

        let m = (order - 1) as usize;
        let mut exp = vec![0u32; m];
        let mut log = vec![NO_LOG; order as usize];
        let gamma_digits = to_digits(gamma, p32, degree as usize);
        let mut cur = vec![0u32; degree as usize];
        cur[0] = 1;
        for k in 0..m {
            let enc = from_digits(&cur, p32);
            debug_assert_eq!(log[enc as usize], NO_LOG, "gamma is not primitive");
            exp[k] = enc;
            log[enc as usize] = k as u32;
            cur = poly_mul_small(&cur, &gamma_digits, &modulus, p32);
        }

        let zech = if p32 == 2 {
            Vec::new()
        } else {
            exp.iter()
                .map(|&v| {
                    let d0 = v % p32;
                    let w = v - d0 + (d0 + 1) % p32;
                    if w == 0 {
                        NO_LOG
                    } else {
                        log[w as usize]
                    }
                })
                .collect()
        };

        let frob_exp = (0..degree)
            .map(|k| crate::arith::mod_pow(p, k as u64, m as u64))
            .collect();

        let mut ctx = FieldCtx {
            p: p32,
            e,
            n,
            degree,
            order,
            defining_poly: modulus,
            gamma: Elt(gamma),
            beta: Elt::ONE,
            exp,
            log,
            zech,
            frob_exp,
        };
        let qn = ctx.qn();
        ctx.beta = ctx.pow(ctx.gamma, (qn - 1) / (ctx.q() - 1));
        Ok(ctx)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `q = p^e`.
    #[inline]
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    /// `q^n`.
    #[inline]
    pub fn qn(&self) -> u64 {
        self.q().pow(self.n)
    }

    /// Degree `D = 2ne` of the ambient field over `F_p`.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements of the ambient field.
    #[inline]
    pub fn order(&self) -> u64 {
        self.order as u64
    }

    #[inline]
    pub fn gamma(&self) -> Elt {
        self.gamma
    }

    /// `γ^{(q^n-1)/(q-1)}`, of multiplicative order `(q^n+1)(q-1)`.
    #[inline]
    pub fn beta(&self) -> Elt {
        self.beta
    }

    pub fn defining_poly(&self) -> &[u32] {
        &self.defining_poly
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    pub fn to_json(&self) -> FieldCtxJson {
        let mut poly = self.defining_poly.clone();
        poly.push(1);
        FieldCtxJson {
            p: self.p(),
            e: self.e,
            n: self.n,
            defining_poly: poly,
            gamma: self.gamma.0,
            beta: self.beta.0,
        }
    }

    /// Rebuilds a context from its JSON form, checking that the recorded
    /// defining polynomial and special elements match.
    pub fn from_json(json: &FieldCtxJson) -> Result<Self> {
        let ctx = FieldCtx::new(json.p, json.e, json.n)?;
        if ctx.to_json() != *json {
            return Err(invalid(
                "context JSON does not match the deterministic construction",
            ));
        }
        Ok(ctx)
    }

    // ---- subfields ----

    pub fn prime_field(&self) -> Subfield {
        Subfield(1)
    }

    /// `F_q`.
    pub fn base_field(&self) -> Subfield {
        Subfield(self.e)
    }

    /// `F_{q^n}`.
    pub fn mid_field(&self) -> Subfield {
        Subfield(self.e * self.n)
    }

    /// `F_{q^{2n}}`.
    pub fn ambient(&self) -> Subfield {
        Subfield(self.degree)
    }

    /// The subfield of degree `d` over `F_p`.
    pub fn subfield(&self, d: u32) -> Result<Subfield> {
        if d == 0 || !self.degree.is_multiple_of(d) {
            return Err(invalid(format!(
                "no subfield of degree {d} in a field of degree {}",
                self.degree
            )));
        }
        Ok(Subfield(d))
    }

    /// `F_{q^k}`.
    pub fn q_subfield(&self, k: u32) -> Result<Subfield> {
        self.subfield(self.e * k)
    }

    pub fn size(&self, sub: Subfield) -> u64 {
        (self.p as u64).pow(sub.0)
    }

    #[inline]
    fn step(&self, sub: Subfield) -> u32 {
        ((self.order as u64 - 1) / (self.size(sub) - 1)) as u32
    }

    #[inline]
    pub fn contains(&self, sub: Subfield, x: Elt) -> bool {
        x.0 == 0 || self.log[x.0 as usize].is_multiple_of(self.step(sub))
    }

    pub fn ensure_in(&self, sub: Subfield, x: Elt) -> Result<()> {
        if (x.0 as u64) < self.order as u64 && self.contains(sub, x) {
            Ok(())
        } else {
            Err(Error::NotInSubfield {
                elt: x.0,
                degree: sub.0,
            })
        }
    }

    /// Dense index of `x` inside `sub`; `x` must lie in `sub`.
    #[inline]
    pub fn index_of(&self, sub: Subfield, x: Elt) -> usize {
        if x.0 == 0 {
            0
        } else {
            (self.log[x.0 as usize] / self.step(sub)) as usize + 1
        }
    }

    /// Inverse of [`FieldCtx::index_of`].
    #[inline]
    pub fn element_at(&self, sub: Subfield, idx: usize) -> Elt {
        if idx == 0 {
            Elt::ZERO
        } else {
            Elt(self.exp[(idx - 1) * self.step(sub) as usize])
        }
    }

    /// All elements of `sub` in index order.
    pub fn elements(&self, sub: Subfield) -> impl Iterator<Item = Elt> + '_ {
        (0..self.size(sub) as usize).map(move |i| self.element_at(sub, i))
    }

    /// A primitive element of `sub`.
    pub fn subfield_generator(&self, sub: Subfield) -> Elt {
        if self.size(sub) == 2 {
            return Elt::ONE;
        }
        self.element_at(sub, 2)
    }

    // ---- arithmetic ----

    /// Embeds an integer into the prime field.
    #[inline]
    pub fn scalar(&self, c: i64) -> Elt {
        Elt(c.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.p == 2 {
            return Elt(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let m = self.order - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + m - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            return Elt::ZERO;
        }
        let s = la + z;
        Elt(self.exp[if s >= m { s - m } else { s } as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let m = self.order - 1;
        let s = self.log[a.0 as usize] + m / 2;
        Elt(self.exp[if s >= m { s - m } else { s } as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        let m = self.order - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elt(self.exp[if s >= m { s - m } else { s } as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        assert!(a.0 != 0, "inverse of zero");
        let m = self.order - 1;
        let l = self.log[a.0 as usize];
        Elt(self.exp[if l == 0 { 0 } else { m - l } as usize])
    }

    #[inline]
    pub fn div(&self, a: Elt, b: Elt) -> Elt {
        self.mul(a, self.inv(b))
    }

    #[inline]
    pub fn pow(&self, a: Elt, k: u64) -> Elt {
        if k == 0 {
            return Elt::ONE;
        }
        if a.0 == 0 {
            return Elt::ZERO;
        }
        let m = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elt(self.exp[((l * (k % m)) % m) as usize])
    }

    /// `a^{p^k}`.
    #[inline]
    pub fn frob(&self, a: Elt, k: u32) -> Elt {
        if a.0 == 0 {
            return a;
        }
        let m = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        let f = self.frob_exp[(k % self.degree) as usize];
        Elt(self.exp[((l * f) % m) as usize])
    }

    /// `a^{q^k}`.
    #[inline]
    pub fn frob_q(&self, a: Elt, k: u32) -> Elt {
        self.frob(a, (self.e * k) % self.degree)
    }

    /// Discrete log base `γ`, `None` for zero.
    pub fn log(&self, a: Elt) -> Option<u64> {
        (a.0 != 0).then(|| self.log[a.0 as usize] as u64)
    }

    /// `γ^k`.
    pub fn exp(&self, k: u64) -> Elt {
        Elt(self.exp[(k % (self.order as u64 - 1)) as usize])
    }

    pub fn multiplicative_order(&self, a: Elt) -> u64 {
        let m = self.order as u64 - 1;
        let l = self.log(a).expect("order of zero");
        m / gcd(l, m)
    }

    /// Base-`p` digits of the encoding, constant coefficient first.
    pub fn digits(&self, a: Elt) -> Vec<u32> {
        to_digits(a.0, self.p, self.degree as usize)
    }

    pub fn from_digits(&self, d: &[u32]) -> Elt {
        Elt(from_digits(d, self.p))
    }

    /// Digit-wise addition, independent of the Zech tables.
    pub fn add_by_digits(&self, a: Elt, b: Elt) -> Elt {
        let da = self.digits(a);
        let db = self.digits(b);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn sum<I: IntoIterator<Item = Elt>>(&self, it: I) -> Elt {
        it.into_iter().fold(Elt::ZERO, |acc, x| self.add(acc, x))
    }

    // ---- traces, norms, squares ----

    /// Relative trace `from -> to`.
    pub fn trace(&self, x: Elt, from: Subfield, to: Subfield) -> Result<Elt> {
        self.check_tower(from, to)?;
        self.ensure_in(from, x)?;
        Ok(self.trace_unchecked(x, from, to))
    }

    #[inline]
    pub(crate) fn trace_unchecked(&self, x: Elt, from: Subfield, to: Subfield) -> Elt {
        let r = from.0 / to.0;
        let mut acc = Elt::ZERO;
        for i in 0..r {
            acc = self.add(acc, self.frob(x, to.0 * i));
        }
        acc
    }

    /// Relative norm `from -> to`.
    pub fn norm(&self, x: Elt, from: Subfield, to: Subfield) -> Result<Elt> {
        self.check_tower(from, to)?;
        self.ensure_in(from, x)?;
        let r = from.0 / to.0;
        let mut acc = Elt::ONE;
        for i in 0..r {
            acc = self.mul(acc, self.frob(x, to.0 * i));
        }
        Ok(acc)
    }

    fn check_tower(&self, from: Subfield, to: Subfield) -> Result<()> {
        if !from.0.is_multiple_of(to.0) || !self.degree.is_multiple_of(from.0) {
            return Err(invalid(format!(
                "degree {} is not an extension of degree {}",
                from.0, to.0
            )));
        }
        Ok(())
    }

    /// Quadratic character test; zero counts as a square.
    pub fn is_square(&self, x: Elt, sub: Subfield) -> Result<bool> {
        if self.is_even() {
            return Err(Error::EvenCharacteristic);
        }
        self.ensure_in(sub, x)?;
        Ok(self.is_square_unchecked(x, sub))
    }

    #[inline]
    pub(crate) fn is_square_unchecked(&self, x: Elt, sub: Subfield) -> bool {
        x.0 == 0 || self.pow(x, (self.size(sub) - 1) / 2) == Elt::ONE
    }

    /// Least-encoding nonsquare of `sub` (odd characteristic).
    pub fn least_nonsquare(&self, sub: Subfield) -> Result<Elt> {
        if self.is_even() {
            return Err(Error::EvenCharacteristic);
        }
        (1..self.order)
            .map(Elt)
            .find(|&x| self.contains(sub, x) && !self.is_square_unchecked(x, sub))
            .ok_or_else(|| Error::Inconsistent("no nonsquare found".into()))
    }

    // ---- special elements ----

    /// All `δ` with `δ^{q^n-1} = -1`, in increasing `γ`-exponent order.
    pub fn find_deltas(&self) -> Result<Vec<Elt>> {
        if self.is_even() {
            return Err(Error::EvenCharacteristic);
        }
        let qn = self.qn();
        Ok((0..qn - 1)
            .map(|j| self.exp(qn.div_ceil(2) + j * (qn + 1)))
            .collect())
    }

    /// All nonsquares `η` of the ambient field with `η^{(1+q^n)(q^k-1)} = 1`,
    /// in increasing `γ`-exponent order.
    pub fn find_etas(&self, k: u32) -> Result<Vec<Elt>> {
        if self.is_even() {
            return Err(Error::EvenCharacteristic);
        }
        if k == 0 || k >= self.n {
            return Err(invalid(format!("k = {k} must satisfy 1 <= k <= n-1")));
        }
        let m = self.order as u64 - 1;
        let qn = self.qn();
        let target = ((1 + qn) as u128 * (self.q().pow(k) - 1) as u128 % m as u128) as u64;
        let g = gcd(target, m);
        let step = m / g;
        Ok((0..g)
            .map(|j| j * step)
            .filter(|a| a % 2 == 1)
            .map(|a| self.exp(a))
            .collect())
    }

    /// Least-encoding `ζ` with `ζ^{q^n-1} = -1`.
    pub fn least_zeta(&self) -> Result<Elt> {
        if self.is_even() {
            return Err(Error::EvenCharacteristic);
        }
        let minus_one = self.scalar(-1);
        (1..self.order)
            .map(Elt)
            .find(|&x| self.pow(x, self.qn() - 1) == minus_one)
            .ok_or_else(|| Error::Inconsistent("no zeta found".into()))
    }
}

// ---- construction helpers over F_p ----

fn to_digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0u32; len];
    for slot in d.iter_mut() {
        *slot = v % p;
        v /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &x| acc * p + x)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    crate::arith::mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Product of two polynomials reduced modulo the monic `f` (given without
/// its leading coefficient), over `F_p`.
fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let d = f.len();
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    for k in (d..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &fi) in f.iter().enumerate() {
            let idx = k - d + i;
            prod[idx] = (prod[idx] + (p - fi) * c) % p;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

/// Multiplication of `a` by a low-degree `g`, reducing by repeated `x`-shifts.
fn poly_mul_small(a: &[u32], g: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let d = f.len();
    let top = g.iter().rposition(|&c| c != 0).unwrap_or(0);
    let mut shifted = a.to_vec();
    let mut acc = vec![0u32; d];
    for (j, &gj) in g.iter().enumerate().take(top + 1) {
        if j > 0 {
            let carry = shifted[d - 1];
            for i in (1..d).rev() {
                shifted[i] = shifted[i - 1];
            }
            shifted[0] = 0;
            if carry != 0 {
                for (i, &fi) in f.iter().enumerate() {
                    shifted[i] = (shifted[i] + (p - fi) * carry) % p;
                }
            }
        }
        if gj != 0 {
            for i in 0..d {
                acc[i] = (acc[i] + gj * shifted[i]) % p;
            }
        }
    }
    acc
}

fn poly_powmod(base: &[u32], mut k: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![0u32; f.len()];
    acc[0] = 1;
    let mut b = base.to_vec();
    b.resize(f.len(), 0);
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        k >>= 1;
    }
    acc
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let idx = k - db + i;
            r[idx] = (r[idx] + (p - bi * c % p)) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd_is_one(a: &[u32], b: &[u32], p: u32) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x.len() == 1
}

/// Ben-Or irreducibility test for the monic polynomial `x^d + Σ f_i x^i`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len();
    if f[0] == 0 {
        return d == 1;
    }
    let mut full = f.to_vec();
    full.push(1);
    let mut xp = vec![0u32; d];
    if d == 1 {
        return true;
    }
    xp[1] = 1;
    for _ in 1..=d / 2 {
        xp = poly_powmod(&xp, p as u64, f, p);
        let mut h = xp.clone();
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        if h.is_empty() || !poly_gcd_is_one(&full, &h, p) {
            return false;
        }
    }
    true
}

/// Least monic irreducible of degree `d` over `F_p`, as coefficients
/// `c_0..c_{d-1}` (leading one omitted).
pub(crate) fn least_irreducible(p: u32, d: usize) -> Vec<u32> {
    let limit = (p as u64).pow(d as u32);
    (0..limit)
        .map(|v| to_digits(v as u32, p, d))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn least_primitive(p: u32, f: &[u32], order: u32) -> u32 {
    let m = order as u64 - 1;
    let primes = prime_divisors(m);
    (1..order)
        .find(|&v| {
            let g = to_digits(v, p, f.len());
            primes.iter().all(|&r| {
                let t = poly_powmod(&g, m / r, f, p);
                !(t[0] == 1 && t[1..].iter().all(|&c| c == 0))
            })
        })
        .expect("the multiplicative group is cyclic")
}
