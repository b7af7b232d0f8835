//! Sparse row echelon forms over F_p.

use crate::modarith::{PrimeCtx, Residue};

/// Nonzero entries sorted by column.
pub type SparseRow = Vec<(u32, Residue)>;

const NONE: u32 = u32::MAX;

/// `a + c * b` for sorted sparse rows.
fn axpy(a: &[(u32, Residue)], c: Residue, b: &[(u32, Residue)], ctx: PrimeCtx) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        if y == b.len() || (x < a.len() && a[x].0 < b[y].0) {
            out.push(a[x]);
            x += 1;
        } else if x == a.len() || b[y].0 < a[x].0 {
            let v = ctx.mul(c, b[y].1);
            if v != 0 {
                out.push((b[y].0, v));
            }
            y += 1;
        } else {
            let v = ctx.add(a[x].1, ctx.mul(c, b[y].1));
            if v != 0 {
                out.push((a[x].0, v));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

pub fn normalise(row: &mut SparseRow, ctx: PrimeCtx) {
    if let Some(&(_, lead)) = row.first() {
        if lead != 1 {
            let inv = ctx.inv(lead);
            for e in row.iter_mut() {
                e.1 = ctx.mul(e.1, inv);
            }
        }
    }
}

/// Rows with distinct leading columns, each normalised to leading entry 1.
/// Entries to the right of a pivot are not cleared until [`Echelon::into_rref`].
#[derive(Debug, Clone)]
pub struct Echelon {
    ctx: PrimeCtx,
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<u32>,
}

impl Echelon {
    pub fn new(ctx: PrimeCtx, ncols: usize) -> Self {
        Echelon {
            ctx,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NONE; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Residual of `row` after clearing every pivot column it meets.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut k = 0;
        while k < row.len() {
            let (col, val) = row[k];
            let pr = self.pivot_row[col as usize];
            if pr == NONE {
                k += 1;
                continue;
            }
            let prow = &self.rows[pr as usize];
            let c = self.ctx.neg(val);
            let head = row[..k].to_vec();
            let tail = axpy(&row[k..], c, prow, self.ctx);
            row = head;
            row.extend(tail);
        }
        row
    }

    /// Leading-column reduction only; cheaper than [`Echelon::reduce`].
    fn reduce_leading(&self, mut row: SparseRow) -> SparseRow {
        while let Some(&(col, val)) = row.first() {
            let pr = self.pivot_row[col as usize];
            if pr == NONE {
                break;
            }
            row = axpy(&row, self.ctx.neg(val), &self.rows[pr as usize], self.ctx);
        }
        row
    }

    /// Adds `row`; returns whether it raised the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce_leading(row);
        if row.is_empty() {
            return false;
        }
        normalise(&mut row, self.ctx);
        self.pivot_row[row[0].0 as usize] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    pub fn is_in_span(&self, row: &SparseRow) -> bool {
        self.reduce_leading(row.clone()).is_empty()
    }

    /// The reduced row echelon form, rows sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseRow> {
        let ctx = self.ctx;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        let mut rows = self.rows;
        let pivot_row = self.pivot_row;
        for &r in &order {
            let mut row = std::mem::take(&mut rows[r]);
            let mut k = 1;
            while k < row.len() {
                let (col, val) = row[k];
                let pr = pivot_row[col as usize];
                if pr == NONE {
                    k += 1;
                    continue;
                }
                let head = row[..k].to_vec();
                let tail = axpy(&row[k..], ctx.neg(val), &rows[pr as usize], ctx);
                row = head;
                row.extend(tail);
            }
            rows[r] = row;
        }
        order.reverse();
        order.into_iter().map(|r| std::mem::take(&mut rows[r])).collect()
    }

    /// A basis of `{v : row . v = 0 for all rows}`, one vector per free
    /// column, in reduced echelon form.
    pub fn kernel(self) -> Vec<SparseRow> {
        let ncols = self.ncols;
        let ctx = self.ctx;
        let pivots: Vec<bool> = self.pivot_row.iter().map(|&x| x != NONE).collect();
        let rref = self.into_rref();
        let mut kern: Vec<SparseRow> = Vec::new();
        let mut slot = vec![NONE; ncols];
        for f in 0..ncols {
            if !pivots[f] {
                slot[f] = kern.len() as u32;
                kern.push(Vec::new());
            }
        }
        for row in &rref {
            let pc = row[0].0;
            for &(col, val) in &row[1..] {
                kern[slot[col as usize] as usize].push((pc, ctx.neg(val)));
            }
        }
        for f in 0..ncols {
            if !pivots[f] {
                kern[slot[f] as usize].push((f as u32, 1 % ctx.p()));
            }
        }
        // Pivot columns were pushed in increasing order, then the free one.
        let mut e = Echelon::new(ctx, ncols);
        for v in kern {
            let mut v = v;
            v.sort_by_key(|x| x.0);
            e.insert(v);
        }
        e.into_rref()
    }
}

/// Dense to sparse, dropping zeros.
pub fn sparse_from_dense(v: &[Residue]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(k, &x)| (k as u32, x))
        .collect()
}

pub fn dense_from_sparse(v: &SparseRow, ncols: usize) -> Vec<Residue> {
    let mut out = vec![0; ncols];
    for &(c, x) in v {
        out[c as usize] = x;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PrimeCtx {
        PrimeCtx::new(p).unwrap()
    }

    #[test]
    fn small_kernel() {
        let c = ctx(5);
        let mut e = Echelon::new(c, 3);
        assert!(e.insert(sparse_from_dense(&[1, 2, 3])));
        assert!(!e.insert(sparse_from_dense(&[2, 4, 1])) || e.rank() == 2);
        let k = e.kernel();
        for v in &k {
            let d = dense_from_sparse(v, 3);
            assert_eq!((d[0] + 2 * d[1] + 3 * d[2]) % 5, 0);
        }
    }

    #[test]
    fn kernel_dimension_and_orthogonality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 7] {
            let c = ctx(p);
            for _ in 0..50 {
                let ncols = rng.gen_range(1..12);
                let nrows = rng.gen_range(0..12);
                let rows: Vec<Vec<Residue>> = (0..nrows)
                    .map(|_| {
                        (0..ncols)
                            .map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..p as u32) } else { 0 })
                            .collect()
                    })
                    .collect();
                let mut e = Echelon::new(c, ncols);
                for r in &rows {
                    e.insert(sparse_from_dense(r));
                }
                let rank = e.rank();
                let k = e.kernel();
                assert_eq!(k.len(), ncols - rank);
                for v in &k {
                    let d = dense_from_sparse(v, ncols);
                    for r in &rows {
                        let dot = r.iter().zip(&d).fold(0u32, |acc, (a, b)| c.add(acc, c.mul(*a, *b)));
                        assert_eq!(dot, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn rref_is_canonical() {
        let c = ctx(3);
        let mut a = Echelon::new(c, 4);
        a.insert(sparse_from_dense(&[1, 1, 0, 2]));
        a.insert(sparse_from_dense(&[0, 1, 1, 1]));
        let mut b = Echelon::new(c, 4);
        b.insert(sparse_from_dense(&[1, 2, 1, 0]));
        b.insert(sparse_from_dense(&[0, 2, 2, 2]));
        assert_eq!(a.into_rref(), b.into_rref());
    }
}
