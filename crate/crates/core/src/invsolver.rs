//! Invariants of `GL_n` and of Lie subalgebras of `gl_n` in explicit graded
//! modules, by exact linear algebra over F_p.
//!
//! A vector is `GL_n`-invariant iff it has torus weight zero and, for each
//! root subgroup `I + t E_ab`, every positive power of `t` in the action
//! kills it. A vector is killed by `E_ab` iff the `t^1` coefficient kills
//! it, and by `E_ii` iff its `i`-th weight vanishes mod p. Simple roots
//! generate both the group and the Lie algebra, so they are the default.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divpow::{DPElement, Monomial, Poly, VarLabel, VarSet};
use crate::error::{DpError, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::modarith::{binom_mod_p, multinomial_mod_p, PrimeCtx, Residue};

/// Degree of a vectors/covectors module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VcDegree {
    /// All monomials of this total degree.
    Total(u32),
    /// Vector degree and covector degree.
    Bi(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ModuleKind {
    /// Degree `r` part of the truncated ring `A_s` in `x[i,j]`.
    Asr { n: usize, s: u32, r: u32 },
    /// Degree `r` part of `D_s` in `x[i,j]`.
    Dsr { n: usize, s: u32, r: u32 },
    /// Multidegree `alpha` part of `D_s` in `m = |alpha|` matrices.
    SeveralMatrices { n: usize, s: u32, alpha: Vec<u32> },
    /// Part of `D_s` in `m1` vectors and `m2` covectors.
    VecCovec {
        n: usize,
        m1: usize,
        m2: usize,
        s: u32,
        degree: VcDegree,
    },
    /// The tensor power `gl_n^{(x) r}` with the adjoint action.
    Tensor { n: usize, r: u32 },
}

impl ModuleKind {
    pub fn n(&self) -> usize {
        match self {
            ModuleKind::Asr { n, .. }
            | ModuleKind::Dsr { n, .. }
            | ModuleKind::SeveralMatrices { n, .. }
            | ModuleKind::VecCovec { n, .. }
            | ModuleKind::Tensor { n, .. } => *n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_degree: u32,
    pub max_basis: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_degree: 64,
            max_basis: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Algebra {
    /// Truncated polynomial ring with exponents below `q`.
    Ordinary { q: u64 },
    /// Divided powers with exponents below `q` (`u64::MAX` for no bound).
    Divided { q: u64 },
    Tensor,
}

/// An explicit module: basis labels, torus weights, and the action of the
/// root subgroups computed on demand.
#[derive(Debug, Clone)]
pub struct GradedModuleSpec {
    kind: ModuleKind,
    ctx: PrimeCtx,
    n: usize,
    algebra: Algebra,
    vars: Option<Arc<VarSet>>,
    labels: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, u32>,
    weights: Vec<i32>,
    t_cap: usize,
}

/// Number of exponent vectors of length `k`, entries `< q`, summing to `d`.
fn count_bounded(k: usize, d: u32, q: u64) -> u128 {
    let mut ways = vec![0u128; d as usize + 1];
    ways[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u128; d as usize + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let mut e = 0u64;
            while e < q && s + e as usize <= d as usize {
                next[s + e as usize] = next[s + e as usize].saturating_add(w);
                e += 1;
            }
        }
        ways = next;
    }
    ways[d as usize]
}

/// Exponent vectors of length `k` with entries `< q` summing to `d`.
fn bounded_compositions(k: usize, d: u32, q: u64) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; k];
    fn rec(pos: usize, rest: u32, q: u64, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        let k = cur.len();
        if pos == k {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let remaining = (k - pos - 1) as u64;
        let top = (rest as u64).min(q - 1);
        for e in (0..=top).rev() {
            if (rest as u64 - e) > remaining.saturating_mul(q - 1) {
                break;
            }
            cur[pos] = e as u16;
            rec(pos + 1, rest - e as u32, q, cur, out);
        }
        cur[pos] = 0;
    }
    if k == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, q, &mut cur, &mut out);
    out
}

/// Exponent vectors over variable groups, each group with its own degree.
fn grouped_monomials(groups: &[(usize, u32)], q: u64) -> Vec<Vec<u16>> {
    let mut acc: Vec<Vec<u16>> = vec![Vec::new()];
    for &(k, d) in groups {
        let parts = bounded_compositions(k, d, q);
        let mut next = Vec::with_capacity(acc.len() * parts.len());
        for a in &acc {
            for b in &parts {
                let mut v = a.clone();
                v.extend_from_slice(b);
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn check_basis_size(count: u128, caps: &Caps) -> Result<()> {
    if count > caps.max_basis as u128 {
        return Err(DpError::CapExceeded {
            what: "basis size",
            value: count.min(u64::MAX as u128) as u64,
            cap: caps.max_basis as u64,
        });
    }
    Ok(())
}

/// Builds the module with its canonical basis order.
pub fn build_module(kind: ModuleKind, ctx: PrimeCtx, caps: &Caps) -> Result<GradedModuleSpec> {
    let n = kind.n();
    if n == 0 {
        return Err(DpError::InvalidArgument("n must be positive".into()));
    }
    if n > 255 {
        return Err(DpError::InvalidArgument("n must be below 256".into()));
    }
    let degree_of = |d: u32| -> Result<()> {
        if d > caps.max_degree {
            return Err(DpError::CapExceeded {
                what: "degree",
                value: d as u64,
                cap: caps.max_degree as u64,
            });
        }
        Ok(())
    };
    let (algebra, vars, groups, t_cap): (Algebra, Option<Arc<VarSet>>, Vec<Vec<(usize, u32)>>, usize) =
        match &kind {
            ModuleKind::Asr { s, r, .. } => {
                degree_of(*r)?;
                (
                    Algebra::Ordinary { q: ctx.pow_p(*s) },
                    Some(VarSet::matrix(n)),
                    vec![vec![(n * n, *r)]],
                    2 * *r as usize,
                )
            }
            ModuleKind::Dsr { s, r, .. } => {
                degree_of(*r)?;
                (
                    Algebra::Divided { q: ctx.pow_p(*s) },
                    Some(VarSet::matrix(n)),
                    vec![vec![(n * n, *r)]],
                    2 * *r as usize,
                )
            }
            ModuleKind::SeveralMatrices { s, alpha, .. } => {
                let r: u32 = alpha.iter().sum();
                degree_of(r)?;
                if alpha.is_empty() {
                    return Err(DpError::InvalidArgument("empty composition".into()));
                }
                (
                    Algebra::Divided { q: ctx.pow_p(*s) },
                    Some(VarSet::matrices(alpha.len(), n)),
                    vec![alpha.iter().map(|&a| (n * n, a)).collect()],
                    2 * r as usize,
                )
            }
            ModuleKind::VecCovec {
                m1, m2, s, degree, ..
            } => {
                let groups = match degree {
                    VcDegree::Total(d) => {
                        degree_of(*d)?;
                        (0..=*d).map(|r1| vec![(m1 * n, r1), (m2 * n, d - r1)]).collect()
                    }
                    VcDegree::Bi(r1, r2) => {
                        degree_of(r1 + r2)?;
                        vec![vec![(m1 * n, *r1), (m2 * n, *r2)]]
                    }
                };
                let d = match degree {
                    VcDegree::Total(d) => *d,
                    VcDegree::Bi(a, b) => a + b,
                };
                (
                    Algebra::Divided { q: ctx.pow_p(*s) },
                    Some(VarSet::vec_covec(n, *m1, *m2)),
                    groups,
                    d as usize,
                )
            }
            ModuleKind::Tensor { r, .. } => {
                degree_of(*r)?;
                (Algebra::Tensor, None, Vec::new(), 2 * *r as usize)
            }
        };

    let mut labels: Vec<Vec<u16>> = Vec::new();
    match algebra {
        Algebra::Tensor => {
            let r = match kind {
                ModuleKind::Tensor { r, .. } => r,
                _ => unreachable!(),
            };
            let count = (n as u128).pow(2 * r);
            check_basis_size(count, caps)?;
            for code in 0..count as u64 {
                let mut c = code;
                let mut lab = vec![0u16; 2 * r as usize];
                for x in lab.iter_mut().rev() {
                    *x = (c % n as u64) as u16 + 1;
                    c /= n as u64;
                }
                labels.push(lab);
            }
        }
        Algebra::Ordinary { q } | Algebra::Divided { q } => {
            let mut count: u128 = 0;
            for g in &groups {
                count += g
                    .iter()
                    .map(|&(k, d)| count_bounded(k, d, q))
                    .product::<u128>();
            }
            check_basis_size(count, caps)?;
            for g in &groups {
                labels.extend(grouped_monomials(g, q));
            }
            labels.sort_by(|a, b| Monomial::new(a.clone()).cmp(&Monomial::new(b.clone())));
        }
    }

    let index: HashMap<Vec<u16>, u32> = labels
        .iter()
        .enumerate()
        .map(|(k, l)| (l.clone(), k as u32))
        .collect();

    let mut weights = vec![0i32; labels.len() * n];
    for (k, lab) in labels.iter().enumerate() {
        let w = &mut weights[k * n..(k + 1) * n];
        match &vars {
            None => {
                for pair in lab.chunks(2) {
                    w[pair[0] as usize - 1] += 1;
                    w[pair[1] as usize - 1] -= 1;
                }
            }
            Some(vs) => {
                for (v, &e) in lab.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let e = e as i32;
                    match vs.label(v) {
                        VarLabel::Matrix { i, j, .. } => {
                            w[i as usize - 1] += e;
                            w[j as usize - 1] -= e;
                        }
                        VarLabel::Vector { a, .. } => w[a as usize - 1] += e,
                        VarLabel::Covector { a, .. } => w[a as usize - 1] -= e,
                        VarLabel::Plain => {}
                    }
                }
            }
        }
    }

    Ok(GradedModuleSpec {
        kind,
        ctx,
        n,
        algebra,
        vars,
        labels,
        index,
        weights,
        t_cap,
    })
}

/// Image of a variable under `I + t E_ab`: `(t-degree, variable, coefficient)`.
fn substitute_var(vars: &VarSet, v: usize, a: usize, b: usize, ctx: PrimeCtx) -> Vec<(u8, usize, Residue)> {
    let minus = ctx.neg(1);
    let mut out = vec![(0u8, v, 1 % ctx.p())];
    match vars.label(v) {
        VarLabel::Matrix { slot, i, j } => {
            let (slot, i, j) = (slot as usize, i as usize, j as usize);
            if i == a {
                out.push((1, vars.matrix_var(slot, b, j), minus));
            }
            if j == b {
                out.push((1, vars.matrix_var(slot, i, a), 1 % ctx.p()));
            }
            if i == a && j == b {
                out.push((2, vars.matrix_var(slot, b, a), minus));
            }
        }
        VarLabel::Vector { slot, a: c } => {
            if c as usize == a {
                out.push((1, vars.vector_var(slot as usize, b), minus));
            }
        }
        VarLabel::Covector { slot, a: c } => {
            if c as usize == b {
                out.push((1, vars.covector_var(slot as usize, a), 1 % ctx.p()));
            }
        }
        VarLabel::Plain => {}
    }
    out
}

/// `L^e` (ordinary) or `gamma_e(L)` (divided) for a linear form whose terms
/// involve distinct variables, truncated at t-degree `cap`.
fn expand_power(
    lin: &[(u8, usize, Residue)],
    e: u16,
    divided: bool,
    cap: usize,
    ctx: PrimeCtx,
) -> Vec<(usize, Vec<(usize, u16)>, Residue)> {
    let mut out = Vec::new();
    let mut ks = vec![0u16; lin.len()];
    fn rec(
        pos: usize,
        rest: u16,
        tdeg: usize,
        lin: &[(u8, usize, Residue)],
        ks: &mut Vec<u16>,
        divided: bool,
        cap: usize,
        ctx: PrimeCtx,
        out: &mut Vec<(usize, Vec<(usize, u16)>, Residue)>,
    ) {
        if pos + 1 == lin.len() {
            let tdeg = tdeg + lin[pos].0 as usize * rest as usize;
            if tdeg > cap {
                return;
            }
            ks[pos] = rest;
            let mut coeff = 1 % ctx.p();
            for (l, &k) in ks.iter().enumerate() {
                coeff = ctx.mul(coeff, ctx.pow(lin[l].2, k as u64));
            }
            if !divided {
                let parts: Vec<u64> = ks.iter().map(|&k| k as u64).collect();
                coeff = ctx.mul(coeff, multinomial_mod_p(&parts, ctx));
            }
            if coeff != 0 {
                let factors = ks
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(l, &k)| (lin[l].1, k))
                    .collect();
                out.push((tdeg, factors, coeff));
            }
            return;
        }
        for k in 0..=rest {
            let t = tdeg + lin[pos].0 as usize * k as usize;
            if t > cap {
                break;
            }
            ks[pos] = k;
            rec(pos + 1, rest - k, t, lin, ks, divided, cap, ctx, out);
        }
    }
    rec(0, e, 0, lin, &mut ks, divided, cap, ctx, &mut out);
    out
}

impl GradedModuleSpec {
    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn ctx(&self) -> PrimeCtx {
        self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn vars(&self) -> Option<&Arc<VarSet>> {
        self.vars.as_ref()
    }

    pub fn label(&self, k: usize) -> &[u16] {
        &self.labels[k]
    }

    pub fn index_of(&self, label: &[u16]) -> Option<usize> {
        self.index.get(label).map(|&k| k as usize)
    }

    pub fn torus_weight(&self, k: usize) -> &[i32] {
        &self.weights[k * self.n..(k + 1) * self.n]
    }

    /// Largest power of `t` occurring in the action.
    pub fn t_cap(&self) -> usize {
        self.t_cap
    }

    /// The action of `I + t E_ab` on basis vector `k`, as one sparse vector
    /// per power of `t` from `0` to `cap`.
    pub fn rho(&self, a: usize, b: usize, k: usize, cap: usize) -> Vec<Vec<(usize, Residue)>> {
        assert!(a != b && a >= 1 && b >= 1 && a <= self.n && b <= self.n);
        let ctx = self.ctx;
        let mut out: Vec<HashMap<usize, Residue>> = vec![HashMap::new(); cap + 1];
        let push = |out: &mut Vec<HashMap<usize, Residue>>, d: usize, lab: &[u16], c: Residue| {
            let idx = *self
                .index
                .get(lab)
                .expect("module is stable under the action") as usize;
            let e = out[d].entry(idx).or_insert(0);
            *e = ctx.add(*e, c);
        };
        match self.algebra {
            Algebra::Tensor => {
                let lab = &self.labels[k];
                let r = lab.len() / 2;
                let minus = ctx.neg(1);
                let images: Vec<Vec<(usize, u16, u16, Residue)>> = (0..r)
                    .map(|f| {
                        let (i, j) = (lab[2 * f] as usize, lab[2 * f + 1] as usize);
                        let mut v = vec![(0, i as u16, j as u16, 1 % ctx.p())];
                        if b == i {
                            v.push((1, a as u16, j as u16, 1 % ctx.p()));
                        }
                        if j == a {
                            v.push((1, i as u16, b as u16, minus));
                        }
                        if b == i && j == a {
                            v.push((2, a as u16, b as u16, minus));
                        }
                        v
                    })
                    .collect();
                let mut cur = vec![0u16; 2 * r];
                fn rec(
                    f: usize,
                    d: usize,
                    c: Residue,
                    images: &[Vec<(usize, u16, u16, Residue)>],
                    cur: &mut Vec<u16>,
                    cap: usize,
                    ctx: PrimeCtx,
                    sink: &mut dyn FnMut(usize, &[u16], Residue),
                ) {
                    if f == images.len() {
                        sink(d, cur, c);
                        return;
                    }
                    for &(dd, i, j, cc) in &images[f] {
                        if d + dd > cap {
                            continue;
                        }
                        cur[2 * f] = i;
                        cur[2 * f + 1] = j;
                        rec(f + 1, d + dd, ctx.mul(c, cc), images, cur, cap, ctx, sink);
                    }
                }
                let mut sink = |d: usize, l: &[u16], c: Residue| push(&mut out, d, l, c);
                rec(0, 0, 1 % ctx.p(), &images, &mut cur, cap, ctx, &mut sink);
            }
            Algebra::Ordinary { q } | Algebra::Divided { q } => {
                let divided = matches!(self.algebra, Algebra::Divided { .. });
                let vars = self.vars.as_ref().unwrap();
                let lab = &self.labels[k];
                let nv = lab.len();
                let mut acc: HashMap<(usize, Vec<u16>), Residue> = HashMap::new();
                acc.insert((0, vec![0u16; nv]), 1 % ctx.p());
                for (v, &e) in lab.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let lin = substitute_var(vars, v, a, b, ctx);
                    let pw = expand_power(&lin, e, divided, cap, ctx);
                    let mut next: HashMap<(usize, Vec<u16>), Residue> = HashMap::new();
                    for ((d1, m1), &c1) in &acc {
                        'terms: for (d2, factors, c2) in &pw {
                            if d1 + d2 > cap {
                                continue;
                            }
                            let mut m = m1.clone();
                            let mut c = ctx.mul(c1, *c2);
                            for &(w, kk) in factors {
                                let old = m[w];
                                let new = old + kk;
                                if new as u64 >= q {
                                    continue 'terms;
                                }
                                if divided && old > 0 {
                                    c = ctx.mul(c, binom_mod_p(new as u64, kk as u64, ctx));
                                }
                                m[w] = new;
                            }
                            if c == 0 {
                                continue;
                            }
                            let entry = next.entry((d1 + d2, m)).or_insert(0);
                            *entry = ctx.add(*entry, c);
                        }
                    }
                    next.retain(|_, c| *c != 0);
                    acc = next;
                }
                for ((d, m), c) in acc {
                    push(&mut out, d, &m, c);
                }
            }
        }
        out.into_iter()
            .map(|h| {
                let mut v: Vec<(usize, Residue)> = h.into_iter().filter(|&(_, c)| c != 0).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Sparse coordinates of a polynomial in an `A_s` module. Terms with an
    /// exponent `>= p^s` vanish in `A_s` and are dropped.
    pub fn vector_of_poly(&self, f: &Poly) -> Result<SparseRow> {
        let q = match self.algebra {
            Algebra::Ordinary { q } => q,
            _ => return Err(DpError::Unsupported("module is not a truncated ring".into())),
        };
        if Some(f.vars().as_ref()) != self.vars.as_deref() {
            return Err(DpError::Mismatch);
        }
        self.collect(
            f.terms()
                .filter(|(m, _)| (m.max_exp() as u64) < q)
                .map(|(m, c)| (m.exps().to_vec(), c)),
        )
    }

    /// Sparse coordinates of a divided power element in a `D_s` module.
    pub fn vector_of_dp(&self, f: &DPElement) -> Result<SparseRow> {
        if !matches!(self.algebra, Algebra::Divided { .. }) {
            return Err(DpError::Unsupported("module is not divided powers".into()));
        }
        if Some(f.vars().as_ref()) != self.vars.as_deref() {
            return Err(DpError::Mismatch);
        }
        self.collect(f.terms().map(|(m, c)| (m.exps().to_vec(), c)))
    }

    /// Sparse coordinates of a tensor given as `(labels, coefficient)`,
    /// each label the pairs `(i_1, j_1, .., i_r, j_r)`.
    pub fn vector_of_tensor(&self, terms: &[(Vec<u16>, Residue)]) -> Result<SparseRow> {
        if self.algebra != Algebra::Tensor {
            return Err(DpError::Unsupported("module is not a tensor power".into()));
        }
        self.collect(terms.iter().cloned())
    }

    fn collect(&self, terms: impl Iterator<Item = (Vec<u16>, Residue)>) -> Result<SparseRow> {
        let mut acc: HashMap<u32, Residue> = HashMap::new();
        for (lab, c) in terms {
            let k = *self.index.get(&lab).ok_or_else(|| {
                DpError::InvalidArgument(format!("term {lab:?} is not in the module"))
            })?;
            let e = acc.entry(k).or_insert(0);
            *e = self.ctx.add(*e, c % self.ctx.p());
        }
        let mut v: SparseRow = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Text of a vector as a polynomial, divided power element or tensor.
    pub fn format_vector(&self, v: &SparseRow) -> String {
        match (&self.algebra, &self.vars) {
            (Algebra::Ordinary { .. }, Some(vars)) => Poly::from_terms(
                vars.clone(),
                self.ctx,
                v.iter()
                    .map(|&(k, c)| (Monomial::new(self.labels[k as usize].clone()), c)),
            )
            .to_string(),
            (Algebra::Divided { .. }, Some(vars)) => DPElement::from_terms(
                vars.clone(),
                self.ctx,
                v.iter()
                    .map(|&(k, c)| (Monomial::new(self.labels[k as usize].clone()), c)),
            )
            .to_string(),
            _ => {
                if v.is_empty() {
                    return "0".into();
                }
                v.iter()
                    .map(|&(k, c)| {
                        let lab = &self.labels[k as usize];
                        let factors: Vec<String> = lab
                            .chunks(2)
                            .map(|pr| format!("E[{},{}]", pr[0], pr[1]))
                            .collect();
                        format!("{c}*{}", factors.join("(x)"))
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        }
    }
}

/// Which operators must kill a vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generators {
    /// `E_{i,i+1}`, `E_{i+1,i}` and the diagonal.
    Simple,
    /// Every `E_ab`, `a != b`, and the diagonal.
    All,
    /// `E_ab` for `a < b` and the diagonal.
    UpperBorel,
    /// Root pairs `(a, b)` (1-based) plus, if `diagonal`, the torus.
    Custom { roots: Vec<(usize, usize)>, diagonal: bool },
}

impl Generators {
    fn resolve(&self, n: usize) -> (Vec<(usize, usize)>, bool) {
        match self {
            Generators::Simple => {
                let mut r = Vec::new();
                for i in 1..n {
                    r.push((i, i + 1));
                    r.push((i + 1, i));
                }
                (r, true)
            }
            Generators::All => {
                let mut r = Vec::new();
                for a in 1..=n {
                    for b in 1..=n {
                        if a != b {
                            r.push((a, b));
                        }
                    }
                }
                (r, true)
            }
            Generators::UpperBorel => {
                let mut r = Vec::new();
                for a in 1..=n {
                    for b in a + 1..=n {
                        r.push((a, b));
                    }
                }
                (r, true)
            }
            Generators::Custom { roots, diagonal } => (roots.clone(), *diagonal),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Group,
    Lie,
}

/// A subspace stored as its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSubspace {
    ctx: PrimeCtx,
    ambient: usize,
    rows: Vec<SparseRow>,
}

impl InvariantSubspace {
    pub fn span(ctx: PrimeCtx, ambient: usize, vectors: impl IntoIterator<Item = SparseRow>) -> Self {
        let mut e = Echelon::new(ctx, ambient);
        for v in vectors {
            e.insert(v);
        }
        InvariantSubspace {
            ctx,
            ambient,
            rows: e.into_rref(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ctx, self.ambient);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.echelon().is_in_span(v)
    }

    pub fn contains_space(&self, other: &InvariantSubspace) -> bool {
        let e = self.echelon();
        other.rows.iter().all(|r| e.is_in_span(r))
    }

    /// One line per basis vector: the dense coefficients in `[0, p)`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let dense = crate::linalg::dense_from_sparse(r, self.ambient);
            let line: Vec<String> = dense.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub dim_a: usize,
    pub dim_b: usize,
    pub a_in_b: bool,
    pub b_in_a: bool,
    pub equal: bool,
}

pub fn subspace_compare(a: &InvariantSubspace, b: &InvariantSubspace) -> Result<Comparison> {
    if a.ambient != b.ambient || a.ctx != b.ctx {
        return Err(DpError::Mismatch);
    }
    let a_in_b = b.contains_space(a);
    let b_in_a = a.contains_space(b);
    Ok(Comparison {
        dim_a: a.dim(),
        dim_b: b.dim(),
        a_in_b,
        b_in_a,
        equal: a_in_b && b_in_a,
    })
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim A = {}, dim B = {}, A in B: {}, B in A: {}",
            self.dim_a, self.dim_b, self.a_in_b, self.b_in_a
        )
    }
}

fn solve(m: &GradedModuleSpec, gens: &Generators, mode: Mode) -> InvariantSubspace {
    let ctx = m.ctx;
    let p = ctx.p() as i32;
    let (roots, diagonal) = gens.resolve(m.n);
    let unknowns: Vec<usize> = (0..m.dim())
        .filter(|&k| {
            let w = m.torus_weight(k);
            match (mode, diagonal) {
                (_, false) => true,
                (Mode::Group, true) => w.iter().all(|&x| x == 0),
                (Mode::Lie, true) => w.iter().all(|&x| x.rem_euclid(p) == 0),
            }
        })
        .collect();
    let cap = match mode {
        Mode::Group => m.t_cap,
        Mode::Lie => 1,
    };
    let k = unknowns.len();
    let mut e = Echelon::new(ctx, k);
    for &(a, b) in &roots {
        if e.is_full() {
            break;
        }
        let images: Vec<Vec<Vec<(usize, Residue)>>> = unknowns
            .par_iter()
            .map(|&u| m.rho(a, b, u, cap))
            .collect();
        let mut rows: HashMap<(usize, usize), SparseRow> = HashMap::new();
        for (col, img) in images.iter().enumerate() {
            for (d, vec) in img.iter().enumerate().skip(1) {
                for &(w, c) in vec {
                    rows.entry((d, w)).or_default().push((col as u32, c));
                }
            }
        }
        let mut keys: Vec<(usize, usize)> = rows.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            if e.is_full() {
                break;
            }
            e.insert(rows.remove(&key).unwrap());
        }
    }
    let kernel = e.kernel();
    let lifted = kernel.into_iter().map(|v| {
        v.into_iter()
            .map(|(c, x)| (unknowns[c as usize] as u32, x))
            .collect::<SparseRow>()
    });
    InvariantSubspace::span(ctx, m.dim(), lifted)
}

/// `GL_n`-invariants, using the simple root subgroups.
pub fn group_invariants(m: &GradedModuleSpec) -> InvariantSubspace {
    solve(m, &Generators::Simple, Mode::Group)
}

/// Invariants under the torus and the root subgroups selected by `gens`.
pub fn group_invariants_with(m: &GradedModuleSpec, gens: &Generators) -> InvariantSubspace {
    solve(m, gens, Mode::Group)
}

/// Vectors killed by the chosen Lie algebra elements.
pub fn lie_invariants(m: &GradedModuleSpec, gens: &Generators) -> InvariantSubspace {
    solve(m, gens, Mode::Lie)
}

/// Whether a single vector is group invariant, checked directly.
pub fn is_group_invariant(m: &GradedModuleSpec, v: &SparseRow) -> bool {
    is_invariant(m, v, Mode::Group)
}

/// Whether a single vector is killed by all of `gl_n`.
pub fn is_lie_invariant(m: &GradedModuleSpec, v: &SparseRow) -> bool {
    is_invariant(m, v, Mode::Lie)
}

fn is_invariant(m: &GradedModuleSpec, v: &SparseRow, mode: Mode) -> bool {
    let ctx = m.ctx;
    let p = ctx.p() as i32;
    for &(k, _) in v {
        let w = m.torus_weight(k as usize);
        let ok = match mode {
            Mode::Group => w.iter().all(|&x| x == 0),
            Mode::Lie => w.iter().all(|&x| x.rem_euclid(p) == 0),
        };
        if !ok {
            return false;
        }
    }
    let cap = match mode {
        Mode::Group => m.t_cap,
        Mode::Lie => 1,
    };
    let (roots, _) = Generators::All.resolve(m.n);
    for (a, b) in roots {
        let mut acc: Vec<HashMap<usize, Residue>> = vec![HashMap::new(); cap + 1];
        for &(k, c) in v {
            for (d, img) in m.rho(a, b, k as usize, cap).into_iter().enumerate().skip(1) {
                for (w, x) in img {
                    let e = acc[d].entry(w).or_insert(0);
                    *e = ctx.add(*e, ctx.mul(c, x));
                }
            }
        }
        if acc.iter().any(|h| h.values().any(|&x| x != 0)) {
            return false;
        }
    }
    true
}

/// The module one size down for the restriction `gl_{n-1} -> gl_n`.
pub fn restriction_target(m: &GradedModuleSpec, caps: &Caps) -> Result<GradedModuleSpec> {
    let n = m.n;
    if n < 2 {
        return Err(DpError::InvalidArgument("cannot restrict from n = 1".into()));
    }
    let kind = match &m.kind {
        ModuleKind::Asr { s, r, .. } => ModuleKind::Asr {
            n: n - 1,
            s: *s,
            r: *r,
        },
        ModuleKind::VecCovec {
            m1, m2, s, degree, ..
        } => ModuleKind::VecCovec {
            n: n - 1,
            m1: *m1,
            m2: *m2,
            s: *s,
            degree: degree.clone(),
        },
        other => {
            return Err(DpError::Unsupported(format!(
                "restriction is not defined for {other:?}"
            )))
        }
    };
    build_module(kind, m.ctx, caps)
}

/// Restricts a vector: variables involving the last coordinate are set to
/// zero and the rest are renamed into the smaller variable set.
pub fn restrict(from: &GradedModuleSpec, to: &GradedModuleSpec, v: &SparseRow) -> Result<SparseRow> {
    let (vf, vt) = match (&from.vars, &to.vars) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(DpError::Unsupported("restriction needs variables".into())),
    };
    if to.n + 1 != from.n {
        return Err(DpError::Mismatch);
    }
    let n = from.n;
    let mut map: Vec<Option<usize>> = vec![None; vf.len()];
    for (v_idx, slot) in map.iter_mut().enumerate() {
        *slot = match vf.label(v_idx) {
            VarLabel::Matrix { slot: s, i, j } => {
                if i as usize == n || j as usize == n {
                    None
                } else {
                    Some(vt.matrix_var(s as usize, i as usize, j as usize))
                }
            }
            VarLabel::Vector { slot: s, a } => {
                (a as usize != n).then(|| vt.vector_var(s as usize, a as usize))
            }
            VarLabel::Covector { slot: s, a } => {
                (a as usize != n).then(|| vt.covector_var(s as usize, a as usize))
            }
            VarLabel::Plain => None,
        };
    }
    let mut terms = Vec::new();
    'terms: for &(k, c) in v {
        let lab = &from.labels[k as usize];
        let mut out = vec![0u16; vt.len()];
        for (w, &e) in lab.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match map[w] {
                Some(t) => out[t] = e,
                None => continue 'terms,
            }
        }
        terms.push((out, c));
    }
    to.collect(terms.into_iter())
}

pub fn restrict_subspace(
    from: &GradedModuleSpec,
    to: &GradedModuleSpec,
    space: &InvariantSubspace,
) -> Result<InvariantSubspace> {
    let images = space
        .rows()
        .iter()
        .map(|r| restrict(from, to, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantSubspace::span(from.ctx, to.dim(), images))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PrimeCtx {
        PrimeCtx::new(p).unwrap()
    }

    #[test]
    fn module_examples() {
        let caps = Caps::default();
        let m = build_module(ModuleKind::Asr { n: 1, s: 1, r: 0 }, ctx(2), &caps).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.torus_weight(0), &[0]);
        let m = build_module(ModuleKind::Asr { n: 2, s: 1, r: 1 }, ctx(2), &caps).unwrap();
        assert_eq!(m.dim(), 4);
        let x12 = m.vars().unwrap().matrix_var(1, 1, 2);
        let mut lab = vec![0u16; 4];
        lab[x12] = 1;
        assert_eq!(m.torus_weight(m.index_of(&lab).unwrap()), &[1, -1]);
        let m = build_module(ModuleKind::Dsr { n: 2, s: 1, r: 2 }, ctx(2), &caps).unwrap();
        assert_eq!(m.dim(), 6);
    }

    #[test]
    fn constants_are_invariant() {
        let caps = Caps::default();
        for p in [2, 3] {
            for n in 1..=3 {
                let m = build_module(ModuleKind::Asr { n, s: 1, r: 0 }, ctx(p), &caps).unwrap();
                assert_eq!(group_invariants(&m).dim(), 1);
                assert_eq!(lie_invariants(&m, &Generators::All).dim(), 1);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps {
            max_degree: 64,
            max_basis: 5,
        };
        assert!(matches!(
            build_module(ModuleKind::Asr { n: 2, s: 1, r: 2 }, ctx(2), &caps),
            Err(DpError::CapExceeded { .. })
        ));
    }

    #[test]
    fn compare_examples() {
        let c = ctx(3);
        let v: SparseRow = vec![(0, 1)];
        let w: SparseRow = vec![(1, 2)];
        let a = InvariantSubspace::span(c, 3, [v.clone()]);
        let b = InvariantSubspace::span(c, 3, [v, w]);
        let cmp = subspace_compare(&a, &b).unwrap();
        assert!(cmp.a_in_b && !cmp.equal);
        assert!(subspace_compare(&a, &a).unwrap().equal);
        let other = InvariantSubspace::span(c, 4, []);
        assert!(subspace_compare(&a, &other).is_err());
    }

    #[test]
    fn n_one_needs_only_weight_zero() {
        let m = build_module(ModuleKind::Dsr { n: 1, s: 2, r: 3 }, ctx(2), &Caps::default()).unwrap();
        assert_eq!(group_invariants(&m).dim(), m.dim());
    }
}
