//! Index-table arithmetic on a small subfield for the experiment inner loops.
//!
//! Elements are the dense indices of [`FieldCtx::index_of`]: 0 is zero and
//! `i >= 1` is `g^{i-1}` for a fixed generator `g`, so products are sums of
//! indices and only addition needs a table.

use crate::error::{invalid, Result};
use crate::field::{Elt, FieldCtx, Subfield};

pub struct SmallField {
    sub: Subfield,
    size: usize,
    elts: Vec<Elt>,
    add: Vec<u16>,
}

impl SmallField {
    pub const MAX_SIZE: u64 = 1024;

    pub fn new(ctx: &FieldCtx, sub: Subfield) -> Result<Self> {
        let size = ctx.size(sub);
        if size > Self::MAX_SIZE {
            return Err(invalid(format!(
                "subfield of size {size} is too large for index tables"
            )));
        }
        let size = size as usize;
        let elts: Vec<Elt> = ctx.elements(sub).collect();
        let mut add = vec![0u16; size * size];
        for (i, &a) in elts.iter().enumerate() {
            for (j, &b) in elts.iter().enumerate() {
                add[i * size + j] = ctx.index_of(sub, ctx.add(a, b)) as u16;
            }
        }
        Ok(SmallField {
            sub,
            size,
            elts,
            add,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, ctx: &FieldCtx, x: Elt) -> u16 {
        ctx.index_of(self.sub, x) as u16
    }

    pub fn elt(&self, i: u16) -> Elt {
        self.elts[i as usize]
    }

    #[inline(always)]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.size - 1;
        let s = (a - 1) as usize + (b - 1) as usize;
        (if s >= m { s - m } else { s }) as u16 + 1
    }

    /// Table of `x ↦ x^k`.
    pub fn pow_map(&self, k: u64) -> Vec<u16> {
        let m = (self.size - 1) as u64;
        (0..self.size)
            .map(|i| {
                if i == 0 {
                    if k == 0 {
                        1
                    } else {
                        0
                    }
                } else {
                    ((i as u64 - 1) * (k % m) % m + 1) as u16
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_field_arithmetic() {
        let ctx = FieldCtx::new(2, 1, 4).unwrap();
        let sf = SmallField::new(&ctx, ctx.mid_field()).unwrap();
        let cube = sf.pow_map(3);
        for i in 0..16u16 {
            assert_eq!(sf.elt(cube[i as usize]), ctx.pow(sf.elt(i), 3));
            for j in 0..16u16 {
                let (a, b) = (sf.elt(i), sf.elt(j));
                assert_eq!(sf.elt(sf.add(i, j)), ctx.add(a, b));
                assert_eq!(sf.elt(sf.mul(i, j)), ctx.mul(a, b));
            }
        }
        assert!(SmallField::new(&ctx, ctx.ambient()).is_ok());
        let big = FieldCtx::new(2, 1, 6).unwrap();
        assert!(SmallField::new(&big, big.ambient()).is_err());
    }
}
