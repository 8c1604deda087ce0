#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use spreadlab::quadform::{Base, DOPoly, QuadSpace};
use spreadlab::{Elt, FieldCtx, QPoly};

pub fn ctx(p: u64, e: u32, n: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, e, n).unwrap())
}

pub fn mid_elt(c: &FieldCtx, i: usize) -> Elt {
    c.element_at(c.mid_field(), i % c.qn() as usize)
}

/// Half of the coefficients are zero on average.
pub fn sparse_mid(c: &FieldCtx, rng: &mut impl Rng) -> Elt {
    if rng.gen_bool(0.5) {
        Elt::ZERO
    } else {
        mid_elt(c, rng.gen_range(0..c.qn() as usize))
    }
}

pub fn rand_mid(c: &FieldCtx, rng: &mut impl Rng) -> Elt {
    mid_elt(c, rng.gen_range(0..c.qn() as usize))
}

pub fn rand_outside_mid(c: &FieldCtx, rng: &mut impl Rng) -> Elt {
    loop {
        let d = Elt(rng.gen_range(0..c.order() as u32));
        if !c.contains(c.mid_field(), d) {
            return d;
        }
    }
}

pub fn rand_poly(c: &Arc<FieldCtx>, rng: &mut impl Rng) -> QPoly {
    let coeffs: Vec<Elt> = (0..c.n()).map(|_| sparse_mid(c, rng)).collect();
    QPoly::new(c, &coeffs).unwrap()
}

/// Random `Σ c_{ij} X^{q^i + q^j}` over `F_{q^n}`.
pub fn rand_do(c: &Arc<FieldCtx>, rng: &mut impl Rng) -> DOPoly {
    let n = c.n();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i..n {
            terms.push((i, j, sparse_mid(c, rng)));
        }
    }
    DOPoly::new(c, c.mid_field(), Base::Q, terms).unwrap()
}

/// Random quadratic form `Σ_{i<=j} a_ij x_i x_j` on `F_q^dim`.
pub fn rand_form(c: &Arc<FieldCtx>, dim: usize, rng: &mut impl Rng) -> QuadSpace {
    let base = c.base_field();
    let q = c.q() as usize;
    let coeffs: Vec<Vec<Elt>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    if rng.gen_bool(0.4) {
                        Elt::ZERO
                    } else {
                        c.element_at(base, rng.gen_range(0..q))
                    }
                })
                .collect()
        })
        .collect();
    QuadSpace::from_fn(c, dim, |v| {
        let mut s = Elt::ZERO;
        for i in 0..dim {
            for j in i..dim {
                s = c.add(s, c.mul(coeffs[i][j], c.mul(v[i], v[j])));
            }
        }
        s
    })
    .unwrap()
}

/// `log_q` of the number of roots of `L` in `F_{q^n}`.
pub fn brute_kernel_dim(l: &QPoly) -> usize {
    let c = l.ctx();
    let zeros = c
        .elements(c.mid_field())
        .filter(|&x| l.eval(x).unwrap().is_zero())
        .count() as u64;
    let mut d = 0;
    let mut s = 1;
    while s < zeros {
        s *= c.q();
        d += 1;
    }
    assert_eq!(s, zeros, "root count is not a power of q");
    d
}

/// `N0 = q^{n-1} + (q-1)q^{r+s-1}ε`.
pub fn n0_formula(q: u64, n: usize, r: usize, s: usize, eps: i64) -> u64 {
    let base = q.pow(n as u32 - 1) as i64;
    let tail = if r + s == 0 {
        0
    } else {
        (q as i64 - 1) * (q as i64).pow((r + s - 1) as u32) * eps
    };
    (base + tail) as u64
}
