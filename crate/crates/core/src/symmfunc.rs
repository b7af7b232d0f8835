//! Concrete invariants: `e_i`, `h_i`, `p_i` of one matrix, their pattern
//! versions `f_b` on several matrices, and the divided families.
//!
//! `e`, `h`, `p` and brackets are ordinary polynomials; `Poly::to_dp`
//! gives their images in `D`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::divpow::{dp_gamma, dp_mul, DPElement, Poly, VarSet};
use crate::error::{DpError, Result};
use crate::modarith::PrimeCtx;
use crate::partitions::{CyclePattern, MultiPartition, Partition, YoungData};
use crate::perm::Perm;
use crate::tensorinv::{class_sum, to_dp_element_young, ClassSpec};
use crate::vecscovecs::VecCovecCtx;

/// `m` matrices of size `n` over F_p.
#[derive(Debug, Clone)]
pub struct MatrixVarCtx {
    n: usize,
    m: usize,
    ctx: PrimeCtx,
    vars: Arc<VarSet>,
}

impl MatrixVarCtx {
    pub fn new(n: usize, m: usize, ctx: PrimeCtx) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(DpError::InvalidArgument("n and m must be positive".into()));
        }
        Ok(MatrixVarCtx {
            n,
            m,
            ctx,
            vars: VarSet::matrices(m, n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ctx(&self) -> PrimeCtx {
        self.ctx
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// The generic matrix `X_slot` with polynomial entries.
    pub fn matrix(&self, slot: usize) -> PolyMatrix {
        (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .map(|j| {
                        Poly::var(self.vars.clone(), self.ctx, self.vars.matrix_var(slot, i, j))
                    })
                    .collect()
            })
            .collect()
    }
}

pub type PolyMatrix = Vec<Vec<Poly>>;

pub fn matrix_mul(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = Poly::zero(a[0][0].vars().clone(), a[0][0].ctx());
            for k in 0..n {
                acc = acc.add(&a[i][k].mul(&b[k][j])?)?;
            }
            row.push(acc);
        }
        out.push(row);
    }
    Ok(out)
}

pub fn trace(a: &PolyMatrix) -> Result<Poly> {
    let mut acc = Poly::zero(a[0][0].vars().clone(), a[0][0].ctx());
    for (i, row) in a.iter().enumerate() {
        acc = acc.add(&row[i])?;
    }
    Ok(acc)
}

/// Sum of the `i x i` principal minors, each expanded over permutations.
fn principal_minor_sum(a: &PolyMatrix, i: usize) -> Result<Poly> {
    let n = a.len();
    let vars = a[0][0].vars().clone();
    let ctx = a[0][0].ctx();
    let mut acc = Poly::zero(vars.clone(), ctx);
    if i == 0 {
        return Ok(Poly::one(vars, ctx));
    }
    for subset in subsets(n, i) {
        for sigma in Perm::all(i) {
            let mut term = Poly::one(vars.clone(), ctx);
            for (k, &row) in subset.iter().enumerate() {
                term = term.mul(&a[row][subset[sigma.apply(k)]])?;
                if term.is_zero() {
                    break;
                }
            }
            if perm_sign(&sigma) < 0 {
                term = term.neg();
            }
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

fn perm_sign(pi: &Perm) -> i32 {
    let even = pi.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0;
    if even {
        1
    } else {
        -1
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `e_i(A)`, zero for `i > n`.
pub fn e_of_matrix(a: &PolyMatrix, i: usize) -> Result<Poly> {
    if i > a.len() {
        return Ok(Poly::zero(a[0][0].vars().clone(), a[0][0].ctx()));
    }
    principal_minor_sum(a, i)
}

/// `h_i(A)` from `h_k = sum_{j=1}^k (-1)^{j-1} e_j h_{k-j}`, the cofactor
/// expansion of the Jacobi-Trudi determinant in the `e_j`.
pub fn h_of_matrix(a: &PolyMatrix, i: usize) -> Result<Poly> {
    let es: Vec<Poly> = (0..=i).map(|j| e_of_matrix(a, j)).collect::<Result<_>>()?;
    let mut hs: Vec<Poly> = vec![es[0].clone()];
    for k in 1..=i {
        let mut acc = Poly::zero(es[0].vars().clone(), es[0].ctx());
        for j in 1..=k {
            let term = es[j].mul(&hs[k - j])?;
            acc = if j % 2 == 1 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        hs.push(acc);
    }
    Ok(hs.pop().unwrap())
}

/// `p_i(A) = tr(A^i)`.
pub fn p_of_matrix(a: &PolyMatrix, i: usize) -> Result<Poly> {
    if i == 0 {
        return Ok(Poly::constant(
            a[0][0].vars().clone(),
            a[0][0].ctx(),
            a.len() as u32,
        ));
    }
    let mut m = a.clone();
    for _ in 1..i {
        m = matrix_mul(&m, a)?;
    }
    trace(&m)
}

fn single(ctx: &MatrixVarCtx) -> Result<()> {
    if ctx.m != 1 {
        return Err(DpError::InvalidArgument("expected a single matrix".into()));
    }
    Ok(())
}

/// `e_i(X)`, the sum of the `i x i` principal minors; `1 <= i <= n`.
pub fn elementary_e(i: usize, ctx: &MatrixVarCtx) -> Result<Poly> {
    single(ctx)?;
    if i == 0 || i > ctx.n {
        return Err(DpError::InvalidArgument(format!(
            "e_{i} needs 1 <= i <= n = {}",
            ctx.n
        )));
    }
    e_of_matrix(&ctx.matrix(1), i)
}

/// `h_i(X) = tr(S^i X)`.
pub fn complete_h(i: usize, ctx: &MatrixVarCtx) -> Result<Poly> {
    single(ctx)?;
    if i == 0 {
        return Err(DpError::InvalidArgument("h_i needs i >= 1".into()));
    }
    h_of_matrix(&ctx.matrix(1), i)
}

/// `p_i(X) = tr(X^i)`.
pub fn power_p(i: usize, ctx: &MatrixVarCtx) -> Result<Poly> {
    single(ctx)?;
    if i == 0 {
        return Err(DpError::InvalidArgument("p_i needs i >= 1".into()));
    }
    p_of_matrix(&ctx.matrix(1), i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    E,
    H,
    P,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::E => "e",
            Kind::H => "h",
            Kind::P => "p",
        };
        write!(f, "{s}")
    }
}

/// The product `X_{b_1} .. X_{b_t}` along a pattern.
pub fn pattern_matrix(b: &CyclePattern, ctx: &MatrixVarCtx) -> Result<PolyMatrix> {
    if b.word().iter().any(|&x| x == 0 || x as usize > ctx.m) {
        return Err(DpError::InvalidArgument(format!(
            "pattern {b} uses letters outside 1..={}",
            ctx.m
        )));
    }
    let mut acc = ctx.matrix(b.word()[0] as usize);
    for &x in &b.word()[1..] {
        acc = matrix_mul(&acc, &ctx.matrix(x as usize))?;
    }
    Ok(acc)
}

/// `f_b(X_1, .., X_m) = f(X_{b_1} .. X_{b_t})` for `f` one of `e_i, h_i, p_i`.
pub fn pattern_function(kind: Kind, i: usize, b: &CyclePattern, ctx: &MatrixVarCtx) -> Result<Poly> {
    let a = pattern_matrix(b, ctx)?;
    match kind {
        Kind::E => e_of_matrix(&a, i),
        Kind::H => h_of_matrix(&a, i),
        Kind::P => p_of_matrix(&a, i),
    }
}

/// Which partition data indexes a divided family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyIndex {
    Single(Partition),
    Multi(MultiPartition),
}

/// Divided `e_lambda`, `h_lambda` or `p_lambda`.
///
/// For `e` and `h` this is `prod_i gamma_{m_i}(f_i)`, pattern by pattern
/// for multipartitions. For `p` it is the class sum mapped into `D`.
pub fn divided_family(index: &FamilyIndex, kind: Kind, ctx: &MatrixVarCtx) -> Result<DPElement> {
    let pctx = ctx.ctx;
    match (kind, index) {
        (Kind::P, FamilyIndex::Single(lambda)) => {
            single(ctx)?;
            let u = class_sum(
                &ClassSpec::Class {
                    lambda: lambda.parts().to_vec(),
                },
                pctx,
            )?;
            to_dp_element_young(&u, &YoungData::new(vec![lambda.size()]), ctx.n)
        }
        (Kind::P, FamilyIndex::Multi(bl)) => {
            let young = YoungData::new(bl.content(ctx.m));
            let u = class_sum(
                &ClassSpec::AlphaClass {
                    alpha: young.alpha().to_vec(),
                    cycle_type: bl.to_string(),
                },
                pctx,
            )?;
            to_dp_element_young(&u, &young, ctx.n)
        }
        (_, FamilyIndex::Single(lambda)) => {
            single(ctx)?;
            divided_product(kind, lambda, &CyclePattern::single(1), ctx)
        }
        (_, FamilyIndex::Multi(bl)) => {
            let mut acc = DPElement::one(ctx.vars.clone(), pctx);
            for (b, lambda) in bl.iter() {
                acc = dp_mul(&acc, &divided_product(kind, lambda, b, ctx)?)?;
            }
            Ok(acc)
        }
    }
}

fn divided_product(
    kind: Kind,
    lambda: &Partition,
    b: &CyclePattern,
    ctx: &MatrixVarCtx,
) -> Result<DPElement> {
    let mut acc = DPElement::one(ctx.vars.clone(), ctx.ctx);
    for (i, m) in lambda.multiplicities() {
        let f = pattern_function(kind, i as usize, b, ctx)?.to_dp();
        acc = dp_mul(&acc, &dp_gamma(m as u64, &f)?)?;
    }
    Ok(acc)
}

/// `<x_i, y_j> = sum_a x_i[a] y_j[a]`.
pub fn bracket(i: usize, j: usize, vc: &VecCovecCtx) -> Result<Poly> {
    if i == 0 || i > vc.m1() || j == 0 || j > vc.m2() {
        return Err(DpError::InvalidArgument(format!(
            "bracket <x{i}, y{j}> out of range"
        )));
    }
    let vars = vc.vars().clone();
    let ctx = vc.ctx();
    let mut acc = Poly::zero(vars.clone(), ctx);
    for a in 1..=vc.n() {
        let x = Poly::var(vars.clone(), ctx, vars.vector_var(i, a));
        let y = Poly::var(vars.clone(), ctx, vars.covector_var(j, a));
        acc = acc.add(&x.mul(&y)?)?;
    }
    Ok(acc)
}
