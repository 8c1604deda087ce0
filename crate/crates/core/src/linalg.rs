//! Dense Gaussian elimination over subfields of the ambient field, and over
//! `F_p` with plain integer entries.

use crate::field::{Elt, FieldCtx};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(ctx: &FieldCtx, rows: &mut Vec<Vec<Elt>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = ctx.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = ctx.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = ctx.neg(rows[i][c]);
            for j in c..ncols {
                let t = ctx.mul(f, rows[r][j]);
                rows[i][j] = ctx.add(rows[i][j], t);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(ctx: &FieldCtx, rows: &[Vec<Elt>]) -> usize {
    let mut m = rows.to_vec();
    rref(ctx, &mut m).len()
}

/// Basis of `{v : M v = 0}` for an `m × ncols` matrix.
pub fn nullspace(ctx: &FieldCtx, rows: &[Vec<Elt>], ncols: usize) -> Vec<Vec<Elt>> {
    let mut m = rows.to_vec();
    let pivots = rref(ctx, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Elt::ZERO; ncols];
            v[f] = Elt::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = ctx.neg(row[f]);
            }
            v
        })
        .collect()
}

/// Reduced row echelon form over `F_p` for rows of integers in `0..p`.
pub fn rref_mod_p(p: u32, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let inv: Vec<u32> = (0..p)
        .map(|a| {
            if a == 0 {
                0
            } else {
                crate::arith::mod_pow(a as u64, p as u64 - 2, p as u64) as u32
            }
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let iv = inv[rows[r][c] as usize];
        if iv != 1 {
            for v in rows[r].iter_mut() {
                *v = *v * iv % p;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if i == r || f == 0 {
                continue;
            }
            for j in c..ncols {
                row[j] = (row[j] + (p - f) * pivot_row[j]) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Nullspace basis over `F_p`.
pub fn nullspace_mod_p(p: u32, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref_mod_p(p, &mut m);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u32; ncols];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_over_f9() {
        let ctx = FieldCtx::new(3, 1, 1).unwrap();
        let a = ctx.gamma();
        let rows = vec![vec![Elt::ONE, a, Elt::ZERO], vec![a, ctx.mul(a, a), Elt::ZERO]];
        assert_eq!(rank(&ctx, &rows), 1);
        let ns = nullspace(&ctx, &rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &rows {
                let s = ctx.sum(row.iter().zip(&v).map(|(x, y)| ctx.mul(*x, *y)));
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn nullspace_mod_3() {
        let rows = vec![vec![1, 2, 0, 1], vec![2, 1, 0, 2]];
        let ns = nullspace_mod_p(3, &rows, 4);
        assert_eq!(ns.len(), 3);
        for v in ns {
            for row in &rows {
                assert_eq!(row.iter().zip(&v).map(|(a, b)| a * b).sum::<u32>() % 3, 0);
            }
        }
    }
}
