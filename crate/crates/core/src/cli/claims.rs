//! The claim registry behind `dpinv verify`.

use serde::{Deserialize, Serialize};

use crate::divpow::{DPElement, Monomial, Poly, VarSet};
use crate::error::{DpError, Result};
use crate::invsolver::{
    build_module, group_invariants, is_group_invariant, is_lie_invariant, lie_invariants,
    restrict_subspace, restriction_target, subspace_compare, Caps, Generators, GradedModuleSpec,
    InvariantSubspace, ModuleKind,
};
use crate::modarith::PrimeCtx;
use crate::partitions::{
    s_equivalence_classes, s_equivalence_classes_multi, s_reduce, s_reduce_multi, YoungData,
};
use crate::symmfunc::{divided_family, FamilyIndex, Kind, MatrixVarCtx};
use crate::tensorinv::{
    class_sum, divided_p_lambda_via_walks, s_class_sum, to_dp_element, to_dp_element_young,
    ClassSpec, UNION_MAX_R,
};
use crate::vecscovecs::{check_counterexample, verify_bracket_basis_total, VecCovecCtx};

pub const BUILTIN_MANIFEST: &str = include_str!("claims.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Default,
    Extended,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Manifest {
    pub claim: Vec<Claim>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Claim {
    pub id: String,
    pub suite: Suite,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Check {
    /// Group and Lie (all of `gl_n`) invariant dimensions of a module.
    Dims {
        p: u64,
        module: ModuleKind,
        group: Option<usize>,
        lie: Option<usize>,
    },
    /// One tensor, given by its basis labels with coefficient 1.
    TensorElement {
        p: u64,
        n: usize,
        terms: Vec<Vec<u16>>,
        lie: bool,
        group: bool,
    },
    /// `n = 2` invariant dimensions of `A_s` against the closed form.
    Series { p: u64, s: u32 },
    /// `A_s` invariants for `n = 2` and the image of the Borel invariants
    /// for `n = 3` under restriction.
    RestrictionAs {
        p: u64,
        s: u32,
        r: u32,
        group_basis: Vec<Vec<[u16; 4]>>,
        image_basis: Vec<usize>,
    },
    /// Span of the merged class sums against the invariant dimension.
    ClassSpan {
        p: u64,
        n: usize,
        r: u32,
        s: u32,
        span: usize,
        group: usize,
    },
    /// The merged class sums and divided `e`, `h` families are bases.
    Families { p: u64, s: u32, n: usize, r: u32 },
    /// Cumulative dimensions against partitions with few ones.
    Cumulative { p: u64, s: u32, n: usize },
    /// Several matrices: the three families are bases.
    Several {
        p: u64,
        s: u32,
        n: usize,
        alpha: Vec<u32>,
    },
    /// Vectors and covectors, per total degree.
    Brackets {
        p: u64,
        n: usize,
        m1: usize,
        m2: usize,
        s: u32,
        group: Vec<usize>,
        span: Vec<usize>,
    },
    /// The degree-6 invariant outside the bracket span.
    Counterexample { p: u64, s: u32 },
    LieEqualsGroup { p: u64, module: ModuleKind },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let m: Manifest = toml::from_str(text).map_err(|e| DpError::Parse(format!("manifest: {e}")))?;
    let mut seen = std::collections::BTreeSet::new();
    for c in &m.claim {
        if !seen.insert(c.id.clone()) {
            return Err(DpError::Parse(format!("duplicate claim id {}", c.id)));
        }
    }
    Ok(m)
}

impl Manifest {
    pub fn find(&self, id: &str) -> Result<&Claim> {
        self.claim
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| DpError::UnknownClaim(id.to_string()))
    }

    /// Claims of the suite; `extended` includes the default suite.
    pub fn suite(&self, suite: Suite) -> Vec<&Claim> {
        self.claim
            .iter()
            .filter(|c| suite == Suite::Extended || c.suite == Suite::Default)
            .collect()
    }
}

fn ctx(p: u64) -> Result<PrimeCtx> {
    PrimeCtx::new(p)
}

fn verdict(pass: bool, detail: String) -> (bool, String) {
    (pass, detail)
}

fn span_of(m: &GradedModuleSpec, elems: &[DPElement]) -> Result<InvariantSubspace> {
    let rows = elems
        .iter()
        .map(|f| m.vector_of_dp(f))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantSubspace::span(m.ctx(), m.dim(), rows))
}

/// Closed form for `n = 2`: `(1-T^q)/(1-T) (1-T^{3(q-1)+2})/(1-T^2)` up to
/// the top degree `4(q-1)`.
pub fn n2_series(q: u64) -> Vec<i64> {
    let top = 4 * (q as usize - 1);
    let mut out = vec![0i64; top + 1];
    let e2 = 3 * (q as usize - 1) + 2;
    for (d, slot) in out.iter_mut().enumerate() {
        // coefficient of T^d in (1 - T^q)(1 - T^e2) / ((1 - T)(1 - T^2))
        let base = |k: isize| -> i64 {
            if k < 0 {
                0
            } else {
                (k / 2 + 1) as i64
            }
        };
        let d = d as isize;
        *slot = base(d) - base(d - q as isize) - base(d - e2 as isize)
            + base(d - q as isize - e2 as isize);
    }
    out
}

/// Merged class sums of `D_s^r` in `n x n` matrices, through the walk
/// route when `r` exceeds the class-union guard.
pub fn merged_class_sums(pc: PrimeCtx, n: usize, r: u32, s: u32) -> Result<Vec<DPElement>> {
    let mut out = Vec::new();
    for class in s_equivalence_classes(r, pc, s, None) {
        if r as u64 > UNION_MAX_R {
            let mut acc = DPElement::zero(VarSet::matrix(n), pc);
            for lambda in &class {
                acc = acc.add(&divided_p_lambda_via_walks(lambda, n, pc)?)?;
            }
            out.push(acc);
        } else {
            out.push(to_dp_element(&s_class_sum(&class[0], pc, s)?, n)?);
        }
    }
    Ok(out)
}

/// Divided `e` or `h` over the s-reduced partitions of `r`.
pub fn reduced_family(pc: PrimeCtx, n: usize, r: u32, s: u32, kind: Kind) -> Result<Vec<DPElement>> {
    let mctx = MatrixVarCtx::new(n, 1, pc)?;
    s_equivalence_classes(r, pc, s, None)
        .iter()
        .map(|class| {
            divided_family(
                &FamilyIndex::Single(s_reduce(&class[0], pc, s)),
                kind,
                &mctx,
            )
        })
        .collect()
}

pub fn run_check(check: &Check, caps: &Caps) -> Result<(bool, String)> {
    match check {
        Check::Dims {
            p,
            module,
            group,
            lie,
        } => {
            let m = build_module(module.clone(), ctx(*p)?, caps)?;
            let g = group_invariants(&m).dim();
            let l = lie_invariants(&m, &Generators::All).dim();
            let pass = group.is_none_or(|x| x == g) && lie.is_none_or(|x| x == l);
            Ok(verdict(pass, format!("dim_G = {g}, dim_g = {l}")))
        }
        Check::TensorElement {
            p,
            n,
            terms,
            lie,
            group,
        } => {
            let r = terms.first().map_or(0, |t| t.len() / 2) as u32;
            let m = build_module(ModuleKind::Tensor { n: *n, r }, ctx(*p)?, caps)?;
            let labelled: Vec<(Vec<u16>, u32)> = terms.iter().map(|t| (t.clone(), 1)).collect();
            let v = m.vector_of_tensor(&labelled)?;
            let (l, g) = (is_lie_invariant(&m, &v), is_group_invariant(&m, &v));
            Ok(verdict(
                l == *lie && g == *group,
                format!("Lie invariant: {l}, group invariant: {g}"),
            ))
        }
        Check::Series { p, s } => {
            let pc = ctx(*p)?;
            let q = pc.pow_p(*s);
            let series = n2_series(q);
            let mut dims = Vec::new();
            for r in 0..series.len() as u32 {
                let m = build_module(ModuleKind::Asr { n: 2, s: *s, r }, pc, caps)?;
                dims.push(group_invariants(&m).dim() as i64);
            }
            let total: i64 = dims.iter().sum();
            let closed_total = (q * q + q * (q - 1) / 2) as i64;
            Ok(verdict(
                dims == series && total == closed_total,
                format!("dims {dims:?}, total {total} (closed form {closed_total})"),
            ))
        }
        Check::RestrictionAs {
            p,
            s,
            r,
            group_basis,
            image_basis,
        } => {
            let pc = ctx(*p)?;
            let m2 = build_module(ModuleKind::Asr { n: 2, s: *s, r: *r }, pc, caps)?;
            let vars = m2.vars().expect("matrix module").clone();
            let mut vectors = Vec::new();
            for elem in group_basis {
                let mut f = Poly::zero(vars.clone(), pc);
                for e in elem {
                    let mut exps = vec![0u16; vars.len()];
                    exps[vars.matrix_var(1, 1, 1)] = e[0];
                    exps[vars.matrix_var(1, 1, 2)] = e[1];
                    exps[vars.matrix_var(1, 2, 1)] = e[2];
                    exps[vars.matrix_var(1, 2, 2)] = e[3];
                    f = f.add(&Poly::monomial(vars.clone(), pc, Monomial::new(exps), 1))?;
                }
                vectors.push(m2.vector_of_poly(&f)?);
            }
            let g2 = group_invariants(&m2);
            let stated = InvariantSubspace::span(pc, m2.dim(), vectors.clone());
            let g_ok = subspace_compare(&g2, &stated)?.equal;
            let m3 = build_module(ModuleKind::Asr { n: 3, s: *s, r: *r }, pc, caps)?;
            let b3 = lie_invariants(&m3, &Generators::UpperBorel);
            let down = restriction_target(&m3, caps)?;
            let image = restrict_subspace(&m3, &down, &b3)?;
            let expected_image = InvariantSubspace::span(
                pc,
                m2.dim(),
                image_basis.iter().filter_map(|&k| vectors.get(k).cloned()),
            );
            let img_ok = subspace_compare(&image, &expected_image)?.equal;
            let lie2 = lie_invariants(&m2, &Generators::All).dim();
            let proper = image.dim() < g2.dim() && image.dim() < lie2;
            Ok(verdict(
                g_ok && img_ok && proper,
                format!(
                    "n=2 invariants dim {} (stated span: {g_ok}), restricted Borel invariants dim {} (stated: {img_ok}), proper: {proper}",
                    g2.dim(),
                    image.dim()
                ),
            ))
        }
        Check::ClassSpan {
            p,
            n,
            r,
            s,
            span,
            group,
        } => {
            let pc = ctx(*p)?;
            let m = build_module(ModuleKind::Dsr { n: *n, s: *s, r: *r }, pc, caps)?;
            let sp = span_of(&m, &merged_class_sums(pc, *n, *r, *s)?)?;
            let inv = group_invariants(&m);
            let inside = inv.contains_space(&sp);
            Ok(verdict(
                sp.dim() == *span && inv.dim() == *group && inside,
                format!("class-sum span {} < invariants {}", sp.dim(), inv.dim()),
            ))
        }
        Check::Families { p, s, n, r } => {
            let pc = ctx(*p)?;
            let m = build_module(ModuleKind::Dsr { n: *n, s: *s, r: *r }, pc, caps)?;
            let inv = group_invariants(&m);
            let classes = s_equivalence_classes(*r, pc, *s, None).len();
            let mut ok = inv.dim() == classes;
            let mut parts = vec![format!("dim {} vs {classes} classes", inv.dim())];
            let fams = [
                ("class sums", merged_class_sums(pc, *n, *r, *s)?),
                ("divided e", reduced_family(pc, *n, *r, *s, Kind::E)?),
                ("divided h", reduced_family(pc, *n, *r, *s, Kind::H)?),
            ];
            for (name, fam) in fams {
                let sp = span_of(&m, &fam)?;
                let basis = sp.dim() == fam.len() && subspace_compare(&sp, &inv)?.equal;
                ok &= basis;
                parts.push(format!("{name}: {}", if basis { "basis" } else { "not a basis" }));
            }
            Ok(verdict(ok, parts.join(", ")))
        }
        Check::Cumulative { p, s, n } => {
            let pc = ctx(*p)?;
            let q = pc.pow_p(*s);
            let mut cum = 0;
            let mut expected = 0;
            let mut ok = true;
            let mut seq = Vec::new();
            for r in 0..=*n as u32 {
                let m = build_module(ModuleKind::Dsr { n: *n, s: *s, r }, pc, caps)?;
                cum += group_invariants(&m).dim();
                expected += crate::partitions::enumerate_partitions(r, None, Some(q as u32)).len();
                ok &= cum == expected;
                seq.push(cum);
            }
            Ok(verdict(ok, format!("cumulative dims {seq:?}")))
        }
        Check::Several { p, s, n, alpha } => {
            let pc = ctx(*p)?;
            let young = YoungData::new(alpha.clone());
            let m = build_module(
                ModuleKind::SeveralMatrices {
                    n: *n,
                    s: *s,
                    alpha: alpha.clone(),
                },
                pc,
                caps,
            )?;
            let inv = group_invariants(&m);
            let classes = s_equivalence_classes_multi(&young, pc, *s)?;
            let mctx = MatrixVarCtx::new(*n, alpha.len(), pc)?;
            let mut fam_p = Vec::new();
            let mut fam_e = Vec::new();
            let mut fam_h = Vec::new();
            for class in &classes {
                let u = class_sum(
                    &ClassSpec::AlphaSClass {
                        alpha: alpha.clone(),
                        cycle_type: class[0].to_string(),
                        s: *s,
                    },
                    pc,
                )?;
                fam_p.push(to_dp_element_young(&u, &young, *n)?);
                let red = s_reduce_multi(&class[0], pc, *s, alpha.len());
                fam_e.push(divided_family(&FamilyIndex::Multi(red.clone()), Kind::E, &mctx)?);
                fam_h.push(divided_family(&FamilyIndex::Multi(red), Kind::H, &mctx)?);
            }
            let mut ok = inv.dim() == classes.len();
            for fam in [&fam_p, &fam_e, &fam_h] {
                let sp = span_of(&m, fam)?;
                ok &= sp.dim() == fam.len() && subspace_compare(&sp, &inv)?.equal;
            }
            Ok(verdict(
                ok,
                format!("dim {} vs {} classes; families are bases: {ok}", inv.dim(), classes.len()),
            ))
        }
        Check::Brackets {
            p,
            n,
            m1,
            m2,
            s,
            group,
            span,
        } => {
            let vc = VecCovecCtx::new(*n, *m1, *m2, ctx(*p)?)?;
            let mut g = Vec::new();
            let mut sp = Vec::new();
            let mut inside = true;
            for d in 0..group.len().max(span.len()) as u32 {
                let rep = verify_bracket_basis_total(&vc, d, *s, caps)?;
                g.push(rep.invariant_dim);
                sp.push(rep.span_dim);
                inside &= rep.span_in_invariants;
            }
            Ok(verdict(
                &g == group && &sp == span && inside,
                format!("invariants {g:?}, bracket span {sp:?}"),
            ))
        }
        Check::Counterexample { p, s } => {
            let vc = VecCovecCtx::new(2, 1, 3, ctx(*p)?)?;
            let rep = check_counterexample(&vc, *s, true, caps)?;
            Ok(verdict(
                rep.in_module && rep.is_invariant && !rep.in_span,
                format!(
                    "in D_{s}: {}, invariant: {}, in bracket span: {}",
                    rep.in_module, rep.is_invariant, rep.in_span
                ),
            ))
        }
        Check::LieEqualsGroup { p, module } => {
            let m = build_module(module.clone(), ctx(*p)?, caps)?;
            let g = group_invariants(&m);
            let l = lie_invariants(&m, &Generators::All);
            let eq = subspace_compare(&g, &l)?.equal;
            Ok(verdict(eq, format!("dim_G = {}, dim_g = {}", g.dim(), l.dim())))
        }
    }
}

pub fn run_claim(claim: &Claim, caps: &Caps) -> Verdict {
    match run_check(&claim.check, caps) {
        Ok((pass, detail)) => Verdict {
            id: claim.id.clone(),
            pass,
            detail,
        },
        Err(e) => Verdict {
            id: claim.id.clone(),
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}
