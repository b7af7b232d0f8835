//! Vectors and covectors: `W = V^{m1} + (V*)^{m2}` with `GL_n` acting on
//! `V = k^n`. Invariants come from the brackets `<x_i, y_j>`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::divpow::{dp_gamma, dp_mul, DPElement, Poly, VarSet};
use crate::error::{DpError, Result};
use crate::invsolver::{
    build_module, group_invariants, lie_invariants, subspace_compare, Caps, Generators,
    InvariantSubspace, ModuleKind, VcDegree,
};
use crate::modarith::PrimeCtx;
use crate::perm::Perm;
use crate::symmfunc::bracket;

/// Variables `x_i[a]` (`1 <= i <= m1`) and `y_j[a]` (`1 <= j <= m2`),
/// `1 <= a <= n`.
#[derive(Debug, Clone)]
pub struct VecCovecCtx {
    n: usize,
    m1: usize,
    m2: usize,
    ctx: PrimeCtx,
    vars: Arc<VarSet>,
}

impl VecCovecCtx {
    pub fn new(n: usize, m1: usize, m2: usize, ctx: PrimeCtx) -> Result<Self> {
        if n == 0 {
            return Err(DpError::InvalidArgument("n must be positive".into()));
        }
        Ok(VecCovecCtx {
            n,
            m1,
            m2,
            ctx,
            vars: VarSet::vec_covec(n, m1, m2),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.m2
    }

    pub fn ctx(&self) -> PrimeCtx {
        self.ctx
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn x(&self, i: usize, a: usize) -> Poly {
        Poly::var(self.vars.clone(), self.ctx, self.vars.vector_var(i, a))
    }

    pub fn y(&self, j: usize, a: usize) -> Poly {
        Poly::var(self.vars.clone(), self.ctx, self.vars.covector_var(j, a))
    }
}

/// An `m1 x m2` matrix of exponents, one per bracket `<x_i, y_j>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BracketMatrix {
    pub m: Vec<Vec<u32>>,
}

impl BracketMatrix {
    pub fn new(m: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(first) = m.first() {
            if m.iter().any(|row| row.len() != first.len()) {
                return Err(DpError::InvalidArgument("ragged bracket matrix".into()));
            }
        }
        Ok(BracketMatrix { m })
    }

    pub fn rows(&self) -> usize {
        self.m.len()
    }

    pub fn cols(&self) -> usize {
        self.m.first().map_or(0, |r| r.len())
    }

    pub fn total(&self) -> u32 {
        self.m.iter().flatten().sum()
    }

    /// Row sums `alpha^1`.
    pub fn row_sums(&self) -> Vec<u32> {
        self.m.iter().map(|r| r.iter().sum()).collect()
    }

    /// Column sums `alpha^2`.
    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols())
            .map(|j| self.m.iter().map(|r| r[j]).sum())
            .collect()
    }

    /// All `m1 x m2` matrices with entries summing to `r`, in lexicographic
    /// order of the flattened entries, largest first.
    pub fn all(m1: usize, m2: usize, r: u32) -> Vec<BracketMatrix> {
        let k = m1 * m2;
        let mut out = Vec::new();
        if k == 0 {
            if r == 0 {
                out.push(BracketMatrix { m: vec![Vec::new(); m1] });
            }
            return out;
        }
        let mut cur = vec![0u32; k];
        fn rec(pos: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos + 1 == cur.len() {
                cur[pos] = rest;
                out.push(cur.clone());
                return;
            }
            for e in (0..=rest).rev() {
                cur[pos] = e;
                rec(pos + 1, rest - e, cur, out);
            }
        }
        let mut flat = Vec::new();
        rec(0, r, &mut cur, &mut flat);
        for f in flat {
            out.push(BracketMatrix {
                m: f.chunks(m2).map(|c| c.to_vec()).collect(),
            });
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str::<BracketMatrix>(s)
            .map_err(|e| DpError::Parse(format!("bracket matrix: {e}")))
            .and_then(|b| BracketMatrix::new(b.m))
    }
}

impl fmt::Display for BracketMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

fn check_shape(m: &BracketMatrix, vc: &VecCovecCtx) -> Result<()> {
    if m.rows() != vc.m1 || (vc.m1 > 0 && m.cols() != vc.m2) {
        return Err(DpError::InvalidArgument(format!(
            "bracket matrix is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            vc.m1,
            vc.m2
        )));
    }
    Ok(())
}

/// `prod gamma_{m_ij}(<x_i, y_j>)` when `divided`, else the ordinary
/// product `prod <x_i, y_j>^{m_ij}` viewed in `D`.
pub fn bracket_monomial(m: &BracketMatrix, vc: &VecCovecCtx, divided: bool) -> Result<DPElement> {
    check_shape(m, vc)?;
    if divided {
        let mut acc = DPElement::one(vc.vars.clone(), vc.ctx);
        for (i, row) in m.m.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e > 0 {
                    let b = bracket(i + 1, j + 1, vc)?.to_dp();
                    acc = dp_mul(&acc, &dp_gamma(e as u64, &b)?)?;
                }
            }
        }
        Ok(acc)
    } else {
        let mut acc = Poly::one(vc.vars.clone(), vc.ctx);
        for (i, row) in m.m.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e > 0 {
                    acc = acc.mul(&bracket(i + 1, j + 1, vc)?.pow(e as u64))?;
                }
            }
        }
        Ok(acc.to_dp())
    }
}

/// The permutation of `{1..r}` sending `D2_ij` increasingly onto `D1_ij`.
///
/// `D1_i` are consecutive blocks of sizes `alpha^1`, each cut into `D1_ij`
/// of sizes `m_i1, m_i2, ..`; `D2_j` are blocks of sizes `alpha^2`, each cut
/// into `D2_ij` of sizes `m_1j, m_2j, ..`.
pub fn orbit_representative(m: &BracketMatrix) -> Result<Perm> {
    let r = m.total() as usize;
    if r > u8::MAX as usize {
        return Err(DpError::InvalidArgument("r too large for a permutation".into()));
    }
    let (m1, m2) = (m.rows(), m.cols());
    let mut start1 = vec![vec![0usize; m2]; m1];
    let mut pos = 0;
    for (i, row) in m.m.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            start1[i][j] = pos;
            pos += e as usize;
        }
    }
    let mut images = vec![0u8; r];
    let mut pos = 0;
    for j in 0..m2 {
        for i in 0..m1 {
            let e = m.m[i][j] as usize;
            for k in 0..e {
                images[pos + k] = (start1[i][j] + k) as u8;
            }
            pos += e;
        }
    }
    Perm::from_images(images)
}

/// The transcribed degree-6 invariant for `n = 2, m1 = 1, m2 = 3`:
/// `x1 x2 (x1 y21 - x2 y22)(y12 y31 - y11 y32)`, with `x_a = x1[a]`.
/// When `covector_first` holds, `y_jb` is `y_j[b]`; otherwise `y_j[b]` is
/// read as `y_bj`.
pub fn counterexample_element(vc: &VecCovecCtx, covector_first: bool) -> Result<DPElement> {
    if vc.n != 2 || vc.m1 != 1 || vc.m2 != 3 {
        return Err(DpError::InvalidArgument(
            "the element lives in n = 2, m1 = 1, m2 = 3".into(),
        ));
    }
    let x = |a| vc.x(1, a);
    let y = |j: usize, b: usize| -> Result<Poly> {
        let (slot, comp) = if covector_first { (j, b) } else { (b, j) };
        if slot > vc.m2 || comp > vc.n {
            return Err(DpError::InvalidArgument(format!(
                "y{j}{b} has no meaning in this convention"
            )));
        }
        Ok(vc.y(slot, comp))
    };
    let first = x(1).mul(&y(2, 1)?)?.sub(&x(2).mul(&y(2, 2)?)?)?;
    let second = y(1, 2)?.mul(&y(3, 1)?)?.sub(&y(1, 1)?.mul(&y(3, 2)?)?)?;
    Ok(x(1).mul(&x(2))?.mul(&first)?.mul(&second)?.to_dp())
}

/// Invariants against bracket monomials in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketReport {
    pub degree: u32,
    pub module_dim: usize,
    pub invariant_dim: usize,
    pub lie_dim: usize,
    pub lie_equals_group: bool,
    pub span_dim: usize,
    pub span_in_invariants: bool,
    pub missing: usize,
}

/// Span of divided bracket monomials inside a `D_s` module.
fn bracket_span(
    vc: &VecCovecCtx,
    r: u32,
    module: &crate::invsolver::GradedModuleSpec,
) -> Result<InvariantSubspace> {
    let mut vectors = Vec::new();
    for m in BracketMatrix::all(vc.m1, vc.m2, r) {
        let f = bracket_monomial(&m, vc, true)?;
        vectors.push(module.vector_of_dp(&f)?);
    }
    Ok(InvariantSubspace::span(vc.ctx, module.dim(), vectors))
}

/// Compares `D_s` invariants of total degree `d` with the span of the
/// divided bracket monomials of bidegree `(d/2, d/2)`.
pub fn verify_bracket_basis_total(
    vc: &VecCovecCtx,
    d: u32,
    s: u32,
    caps: &Caps,
) -> Result<BracketReport> {
    let module = build_module(
        ModuleKind::VecCovec {
            n: vc.n,
            m1: vc.m1,
            m2: vc.m2,
            s,
            degree: VcDegree::Total(d),
        },
        vc.ctx,
        caps,
    )?;
    report(vc, d, &module)
}

/// Compares the `(r, r)` piece of the `D_s` invariants with the span of
/// divided bracket monomials.
pub fn verify_bracket_basis(vc: &VecCovecCtx, r: u32, s: u32, caps: &Caps) -> Result<BracketReport> {
    let module = build_module(
        ModuleKind::VecCovec {
            n: vc.n,
            m1: vc.m1,
            m2: vc.m2,
            s,
            degree: VcDegree::Bi(r, r),
        },
        vc.ctx,
        caps,
    )?;
    report(vc, 2 * r, &module)
}

fn report(
    vc: &VecCovecCtx,
    d: u32,
    module: &crate::invsolver::GradedModuleSpec,
) -> Result<BracketReport> {
    let inv = group_invariants(module);
    let lie = lie_invariants(module, &Generators::Simple);
    let span = if d.is_multiple_of(2) {
        bracket_span(vc, d / 2, module)?
    } else {
        InvariantSubspace::span(vc.ctx, module.dim(), [])
    };
    let cmp = subspace_compare(&span, &inv)?;
    let lie_equals_group = subspace_compare(&lie, &inv)?.equal;
    Ok(BracketReport {
        degree: d,
        module_dim: module.dim(),
        invariant_dim: inv.dim(),
        lie_dim: lie.dim(),
        lie_equals_group,
        span_dim: span.dim(),
        span_in_invariants: cmp.a_in_b,
        missing: inv.dim() - span.dim().min(inv.dim()),
    })
}

/// Whether the element is an invariant outside the bracket span, in the
/// `D_s` module of its degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub s: u32,
    pub in_module: bool,
    pub is_invariant: bool,
    pub in_span: bool,
}

pub fn check_counterexample(
    vc: &VecCovecCtx,
    s: u32,
    covector_first: bool,
    caps: &Caps,
) -> Result<CounterexampleReport> {
    let f = counterexample_element(vc, covector_first)?;
    let module = build_module(
        ModuleKind::VecCovec {
            n: vc.n,
            m1: vc.m1,
            m2: vc.m2,
            s,
            degree: VcDegree::Total(6),
        },
        vc.ctx,
        caps,
    )?;
    let v = match module.vector_of_dp(&f) {
        Ok(v) => v,
        Err(DpError::InvalidArgument(_)) => {
            return Ok(CounterexampleReport {
                s,
                in_module: false,
                is_invariant: false,
                in_span: false,
            })
        }
        Err(e) => return Err(e),
    };
    let inv = group_invariants(&module);
    let span = bracket_span(vc, 3, &module)?;
    Ok(CounterexampleReport {
        s,
        in_module: true,
        is_invariant: inv.contains(&v),
        in_span: span.contains(&v),
    })
}
