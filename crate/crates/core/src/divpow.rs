//! The divided power algebra `D(V)` over F_p on a finite variable set, and
//! the ordinary polynomial ring on the same variables.
//!
//! Both element types store a map from exponent vectors to nonzero
//! residues. They differ only in how monomials multiply: a divided power
//! monomial `prod y^(t)` multiplies with binomial coefficients, an ordinary
//! one by adding exponents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{DpError, Result};
use crate::modarith::{
    binom_mod_p, factorial_ratio_mod_p, factorial_unit_mod_p, p_adic_digits,
    PrimeCtx, Residue,
};

/// What a variable stands for. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarLabel {
    Plain,
    Matrix { slot: u16, i: u16, j: u16 },
    Vector { slot: u16, a: u16 },
    Covector { slot: u16, a: u16 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    Plain,
    Matrices { m: usize, n: usize },
    VecCovec { n: usize, m1: usize, m2: usize },
}

/// An ordered set of named variables. Each variable carries a degree
/// weight and a grade index used for multidegrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<u32>,
    labels: Vec<VarLabel>,
    grades: Vec<u16>,
    ngrades: usize,
    layout: Layout,
}

impl VarSet {
    pub fn plain(names: &[&str]) -> Result<Arc<VarSet>> {
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if !seen.insert(*n) {
                return Err(DpError::InvalidArgument(format!("duplicate variable {n}")));
            }
        }
        Ok(Arc::new(VarSet {
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: vec![1; names.len()],
            labels: vec![VarLabel::Plain; names.len()],
            grades: vec![0; names.len()],
            ngrades: 1,
            layout: Layout::Plain,
        }))
    }

    /// Entries `x[i,j]` of one `n x n` matrix, row-major.
    pub fn matrix(n: usize) -> Arc<VarSet> {
        VarSet::matrices(1, n)
    }

    /// Entries `x1[i,j], .., xm[i,j]` of `m` matrices, slot-major then
    /// row-major. With `m = 1` the names are `x[i,j]`.
    pub fn matrices(m: usize, n: usize) -> Arc<VarSet> {
        let mut names = Vec::new();
        let mut labels = Vec::new();
        let mut grades = Vec::new();
        for q in 1..=m {
            let prefix = if m == 1 { "x".to_string() } else { format!("x{q}") };
            for i in 1..=n {
                for j in 1..=n {
                    names.push(format!("{prefix}[{i},{j}]"));
                    labels.push(VarLabel::Matrix {
                        slot: q as u16,
                        i: i as u16,
                        j: j as u16,
                    });
                    grades.push((q - 1) as u16);
                }
            }
        }
        Arc::new(VarSet {
            weights: vec![1; names.len()],
            names,
            labels,
            grades,
            ngrades: m,
            layout: Layout::Matrices { m, n },
        })
    }

    /// Coordinates `x1[a]..x{m1}[a]` of vectors followed by `y1[a]..y{m2}[a]`
    /// of covectors in dimension `n`.
    pub fn vec_covec(n: usize, m1: usize, m2: usize) -> Arc<VarSet> {
        let mut names = Vec::new();
        let mut labels = Vec::new();
        let mut grades = Vec::new();
        for i in 1..=m1 {
            for a in 1..=n {
                names.push(format!("x{i}[{a}]"));
                labels.push(VarLabel::Vector {
                    slot: i as u16,
                    a: a as u16,
                });
                grades.push((i - 1) as u16);
            }
        }
        for j in 1..=m2 {
            for a in 1..=n {
                names.push(format!("y{j}[{a}]"));
                labels.push(VarLabel::Covector {
                    slot: j as u16,
                    a: a as u16,
                });
                grades.push((m1 + j - 1) as u16);
            }
        }
        Arc::new(VarSet {
            weights: vec![1; names.len()],
            names,
            labels,
            grades,
            ngrades: m1 + m2,
            layout: Layout::VecCovec { n, m1, m2 },
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn label(&self, v: usize) -> VarLabel {
        self.labels[v]
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    pub fn grade(&self, v: usize) -> usize {
        self.grades[v] as usize
    }

    pub fn ngrades(&self) -> usize {
        self.ngrades
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// Index of `x_slot[i,j]` (1-based arguments).
    pub fn matrix_var(&self, slot: usize, i: usize, j: usize) -> usize {
        match self.layout {
            Layout::Matrices { m, n } => {
                assert!(slot >= 1 && slot <= m && i >= 1 && i <= n && j >= 1 && j <= n);
                (slot - 1) * n * n + (i - 1) * n + (j - 1)
            }
            _ => panic!("not a matrix variable set"),
        }
    }

    pub fn vector_var(&self, slot: usize, a: usize) -> usize {
        match self.layout {
            Layout::VecCovec { n, m1, .. } => {
                assert!(slot >= 1 && slot <= m1 && a >= 1 && a <= n);
                (slot - 1) * n + (a - 1)
            }
            _ => panic!("not a vector/covector variable set"),
        }
    }

    pub fn covector_var(&self, slot: usize, a: usize) -> usize {
        match self.layout {
            Layout::VecCovec { n, m1, m2 } => {
                assert!(slot >= 1 && slot <= m2 && a >= 1 && a <= n);
                m1 * n + (slot - 1) * n + (a - 1)
            }
            _ => panic!("not a vector/covector variable set"),
        }
    }
}

/// An exponent vector. Ordered so that ascending iteration gives the
/// canonical order: higher total degree first, then lexicographically
/// larger exponent vectors first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            deg,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize, e: u16) -> Self {
        let mut exps = vec![0; nvars];
        exps[v] = e;
        Monomial::new(exps)
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn max_exp(&self) -> u16 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    /// Exponent-wise sum; `None` on overflow.
    pub fn add(&self, other: &Monomial) -> Option<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b))
            .collect::<Option<Vec<u16>>>()?;
        Some(Monomial::new(exps))
    }

    pub fn weighted_degree(&self, vars: &VarSet) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(v, &e)| e as u32 * vars.weight(v))
            .sum()
    }

    pub fn multidegree(&self, vars: &VarSet) -> Vec<u32> {
        let mut d = vec![0u32; vars.ngrades()];
        for (v, &e) in self.exps.iter().enumerate() {
            d[vars.grade(v)] += e as u32;
        }
        d
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .deg
            .cmp(&self.deg)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Shared storage for both element types.
#[derive(Clone, PartialEq, Eq)]
struct Terms {
    vars: Arc<VarSet>,
    ctx: PrimeCtx,
    map: BTreeMap<Monomial, Residue>,
}

impl Terms {
    fn zero(vars: Arc<VarSet>, ctx: PrimeCtx) -> Self {
        Terms {
            vars,
            ctx,
            map: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Residue) {
        let c = c % self.ctx.p();
        if c == 0 {
            return;
        }
        let ctx = self.ctx;
        match self.map.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = ctx.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Terms) -> Result<()> {
        if self.ctx != other.ctx || !(Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
        {
            return Err(DpError::Mismatch);
        }
        Ok(())
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, divided: bool) -> fmt::Result {
        if self.map.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.map.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = self.vars.name(v);
                if divided {
                    write!(f, "*{name}^({e})")?;
                } else if e == 1 {
                    write!(f, "*{name}")?;
                } else {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! linear_impl {
    ($T:ident) => {
        impl $T {
            pub fn zero(vars: Arc<VarSet>, ctx: PrimeCtx) -> Self {
                $T(Terms::zero(vars, ctx))
            }

            pub fn constant(vars: Arc<VarSet>, ctx: PrimeCtx, c: Residue) -> Self {
                let n = vars.len();
                let mut t = Terms::zero(vars, ctx);
                t.add_term(Monomial::one(n), c);
                $T(t)
            }

            pub fn one(vars: Arc<VarSet>, ctx: PrimeCtx) -> Self {
                Self::constant(vars, ctx, 1)
            }

            /// The degree-one element given by variable `v`.
            pub fn var(vars: Arc<VarSet>, ctx: PrimeCtx, v: usize) -> Self {
                let n = vars.len();
                Self::monomial(vars, ctx, Monomial::var(n, v, 1), 1)
            }

            pub fn monomial(vars: Arc<VarSet>, ctx: PrimeCtx, m: Monomial, c: Residue) -> Self {
                assert_eq!(m.exps().len(), vars.len());
                let mut t = Terms::zero(vars, ctx);
                t.add_term(m, c);
                $T(t)
            }

            /// Sums repeated monomials and drops zero coefficients.
            pub fn from_terms(
                vars: Arc<VarSet>,
                ctx: PrimeCtx,
                terms: impl IntoIterator<Item = (Monomial, Residue)>,
            ) -> Self {
                let mut t = Terms::zero(vars, ctx);
                for (m, c) in terms {
                    assert_eq!(m.exps().len(), t.vars.len());
                    t.add_term(m, c);
                }
                $T(t)
            }

            pub fn vars(&self) -> &Arc<VarSet> {
                &self.0.vars
            }

            pub fn ctx(&self) -> PrimeCtx {
                self.0.ctx
            }

            /// Terms in canonical order.
            pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Residue)> + '_ {
                self.0.map.iter().map(|(m, &c)| (m, c))
            }

            pub fn coeff(&self, m: &Monomial) -> Residue {
                self.0.map.get(m).copied().unwrap_or(0)
            }

            pub fn len(&self) -> usize {
                self.0.map.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.map.is_empty()
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                self.0.check(&other.0)?;
                let mut t = self.0.clone();
                for (m, &c) in &other.0.map {
                    t.add_term(m.clone(), c);
                }
                Ok($T(t))
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.add(&other.neg())
            }

            pub fn neg(&self) -> Self {
                self.scale(self.0.ctx.neg(1))
            }

            pub fn scale(&self, c: Residue) -> Self {
                let ctx = self.0.ctx;
                let c = c % ctx.p();
                let mut t = Terms::zero(self.0.vars.clone(), ctx);
                if c != 0 {
                    for (m, &x) in &self.0.map {
                        t.map.insert(m.clone(), ctx.mul(x, c));
                    }
                }
                $T(t)
            }

            /// Largest total degree of a term; `None` for zero.
            pub fn degree(&self) -> Option<u32> {
                self.0.map.keys().map(|m| m.degree()).max()
            }

            pub fn is_homogeneous(&self) -> bool {
                let mut degs = self.0.map.keys().map(|m| m.degree());
                match degs.next() {
                    None => true,
                    Some(d) => degs.all(|e| e == d),
                }
            }

            pub fn has_constant_term(&self) -> bool {
                self.0.map.keys().any(|m| m.is_one())
            }

            pub fn max_exponent(&self) -> u16 {
                self.0.map.keys().map(|m| m.max_exp()).max().unwrap_or(0)
            }

            /// Terms of total degree `r`.
            pub fn homogeneous_component(&self, r: u32) -> Self {
                self.filter(|m| m.degree() == r)
            }

            /// Terms whose multidegree (per variable grade) equals `d`.
            pub fn multihomogeneous_component(&self, d: &[u32]) -> Self {
                let vars = self.0.vars.clone();
                self.filter(|m| m.multidegree(&vars) == d)
            }

            pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
                let mut t = Terms::zero(self.0.vars.clone(), self.0.ctx);
                for (m, &c) in &self.0.map {
                    if keep(m) {
                        t.map.insert(m.clone(), c);
                    }
                }
                $T(t)
            }

            /// Rewrites every monomial through `f` into the variable set
            /// `vars`; `None` drops the term.
            pub fn map_monomials(
                &self,
                vars: Arc<VarSet>,
                f: impl Fn(&Monomial) -> Option<Monomial>,
            ) -> Self {
                let mut t = Terms::zero(vars, self.0.ctx);
                for (m, &c) in &self.0.map {
                    if let Some(m2) = f(m) {
                        t.add_term(m2, c);
                    }
                }
                $T(t)
            }
        }

        impl fmt::Debug for $T {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }
    };
}

/// An element of `D(V)` over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct DPElement(Terms);

/// An ordinary polynomial over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly(Terms);

linear_impl!(DPElement);
linear_impl!(Poly);

impl fmt::Display for DPElement {
    /// `1*x[1,1]^(2)*x[2,2]^(1) + 2*x[1,2]^(3)`, terms in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, true)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, false)
    }
}

/// Product of two divided power monomials: the merged monomial and
/// `prod binom(s_v + t_v, s_v)` mod p.
pub fn dp_monomial_mul(a: &Monomial, b: &Monomial, ctx: PrimeCtx) -> (Monomial, Residue) {
    let mut coeff = 1 % ctx.p();
    let mut exps = Vec::with_capacity(a.exps().len());
    for (&s, &t) in a.exps().iter().zip(b.exps().iter()) {
        if s != 0 && t != 0 && coeff != 0 {
            coeff = ctx.mul(coeff, binom_mod_p(s as u64 + t as u64, s as u64, ctx));
        }
        exps.push(s.checked_add(t).expect("exponent overflow"));
    }
    (Monomial::new(exps), coeff)
}

/// Product in `D(V)`.
pub fn dp_mul(a: &DPElement, b: &DPElement) -> Result<DPElement> {
    a.0.check(&b.0)?;
    let ctx = a.ctx();
    let mut t = Terms::zero(a.0.vars.clone(), ctx);
    for (ma, &ca) in &a.0.map {
        for (mb, &cb) in &b.0.map {
            let (m, c) = dp_monomial_mul(ma, mb, ctx);
            if c != 0 {
                t.add_term(m, ctx.mul(c, ctx.mul(ca, cb)));
            }
        }
    }
    Ok(DPElement(t))
}

/// `gamma_a(m)` for a single divided power monomial `m` of positive degree:
/// the monomial with exponents `a * t_v` and coefficient
/// `prod (a t_v)! / (t_v!)^a / a!`.
pub fn gamma_monomial(a: u64, m: &Monomial, ctx: PrimeCtx) -> Result<(Monomial, Residue)> {
    if a == 0 {
        return Ok((Monomial::one(m.exps().len()), 1 % ctx.p()));
    }
    if m.is_one() {
        return Err(DpError::ForbiddenDegree(0));
    }
    let mut num = Vec::new();
    let mut den = vec![(a, 1u64)];
    let mut exps = Vec::with_capacity(m.exps().len());
    for &t in m.exps() {
        let at = a * t as u64;
        if at > u16::MAX as u64 {
            return Err(DpError::CapExceeded {
                what: "exponent",
                value: at,
                cap: u16::MAX as u64,
            });
        }
        if t > 0 {
            num.push(at);
            den.push((t as u64, a));
        }
        exps.push(at as u16);
    }
    Ok((Monomial::new(exps), factorial_ratio_mod_p(&num, &den, ctx)))
}

/// Default bound on `i * (term count)` for [`dp_gamma`].
pub const DEFAULT_GAMMA_GUARD: u64 = 1 << 16;

/// `gamma_i(x)` for `x` without constant term.
pub fn dp_gamma(i: u64, x: &DPElement) -> Result<DPElement> {
    dp_gamma_with_guard(i, x, DEFAULT_GAMMA_GUARD)
}

pub fn dp_gamma_with_guard(i: u64, x: &DPElement, guard: u64) -> Result<DPElement> {
    if x.has_constant_term() {
        return Err(DpError::ForbiddenDegree(0));
    }
    crate::error::cap_check("gamma order times term count", i * x.len() as u64, guard)?;
    let ctx = x.ctx();
    let vars = x.vars().clone();
    let i = i as usize;
    // g[j] = gamma_j of the terms processed so far.
    let mut g: Vec<DPElement> = (0..=i)
        .map(|j| {
            if j == 0 {
                DPElement::one(vars.clone(), ctx)
            } else {
                DPElement::zero(vars.clone(), ctx)
            }
        })
        .collect();
    for (m, c) in x.terms() {
        let mut powers = Vec::with_capacity(i + 1);
        for a in 0..=i {
            let (ma, ca) = gamma_monomial(a as u64, m, ctx)?;
            powers.push((ma, ctx.mul(ca, ctx.pow(c, a as u64))));
        }
        let mut next = Vec::with_capacity(i + 1);
        for j in 0..=i {
            let mut t = Terms::zero(vars.clone(), ctx);
            for (a, (ma, ca)) in powers.iter().enumerate().take(j + 1) {
                if *ca == 0 {
                    continue;
                }
                for (mb, &cb) in &g[j - a].0.map {
                    let (mm, cm) = dp_monomial_mul(ma, mb, ctx);
                    if cm != 0 {
                        t.add_term(mm, ctx.mul(cm, ctx.mul(*ca, cb)));
                    }
                }
            }
            next.push(DPElement(t));
        }
        g = next;
    }
    Ok(g.pop().unwrap())
}

/// True iff every exponent of every term is `< p^s`.
pub fn is_in_ds(x: &DPElement, s: u32) -> bool {
    let q = x.ctx().pow_p(s);
    x.terms().all(|(m, _)| (m.max_exp() as u64) < q)
}

/// The ordinary power `x^k` in `D(V)`.
pub fn dp_pow(x: &DPElement, k: u64) -> DPElement {
    let mut acc = DPElement::one(x.vars().clone(), x.ctx());
    for _ in 0..k {
        acc = dp_mul(&acc, x).expect("same ring");
    }
    acc
}

fn check_phi_domain(u: &DPElement) -> Result<()> {
    let p = u.ctx().p() as u16;
    for (m, _) in u.terms() {
        if m.degree() < 2 {
            return Err(DpError::ForbiddenDegree(m.degree()));
        }
        if m.max_exp() >= p {
            return Err(DpError::InvalidArgument(format!(
                "exponent {} is not below p = {p}",
                m.max_exp()
            )));
        }
    }
    Ok(())
}

/// `phi_p(u) = u^p / p`, which over F_p equals `-gamma_p(u)`.
pub fn phi_p(u: &DPElement) -> Result<DPElement> {
    check_phi_domain(u)?;
    Ok(dp_gamma(u.ctx().p() as u64, u)?.neg())
}

/// `u^(m)` as `(1/q) prod_i (phi_p^i(u))^{a_i}` with `a_i` the base-p
/// digits of `m` and `q` the unit part of `m!`.
pub fn divided_power_via_phi(u: &DPElement, m: u64) -> Result<DPElement> {
    check_phi_domain(u)?;
    let ctx = u.ctx();
    let digits = p_adic_digits(m, ctx).digits;
    let mut acc = DPElement::one(u.vars().clone(), ctx);
    let mut iterate = u.clone();
    for (k, &a) in digits.iter().enumerate() {
        if k > 0 {
            iterate = phi_p(&iterate)?;
        }
        acc = dp_mul(&acc, &dp_pow(&iterate, a as u64))?;
    }
    let q = factorial_unit_mod_p(m, ctx);
    Ok(acc.scale(ctx.inv(q)))
}

pub fn homogeneous_component(x: &DPElement, r: u32) -> DPElement {
    x.homogeneous_component(r)
}

impl DPElement {
    pub fn mul(&self, other: &DPElement) -> Result<DPElement> {
        dp_mul(self, other)
    }

    pub fn gamma(&self, i: u64) -> Result<DPElement> {
        dp_gamma(i, self)
    }

    pub fn is_in_ds(&self, s: u32) -> bool {
        is_in_ds(self, s)
    }
}

impl Poly {
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.0.check(&other.0)?;
        let ctx = self.ctx();
        let mut t = Terms::zero(self.0.vars.clone(), ctx);
        for (ma, &ca) in &self.0.map {
            for (mb, &cb) in &other.0.map {
                t.add_term(ma.add(mb).expect("exponent overflow"), ctx.mul(ca, cb));
            }
        }
        Ok(Poly(t))
    }

    pub fn pow(&self, k: u64) -> Poly {
        let mut acc = Poly::one(self.vars().clone(), self.ctx());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// The image in `D(V)` under `x^e -> (prod e_v!) x^(e)`.
    pub fn to_dp(&self) -> DPElement {
        let ctx = self.ctx();
        DPElement::from_terms(
            self.vars().clone(),
            ctx,
            self.terms().map(|(m, c)| {
                let parts: Vec<u64> = m.exps().iter().map(|&e| e as u64).collect();
                let f = factorial_ratio_mod_p(&parts, &[], ctx);
                (m.clone(), ctx.mul(c, f))
            }),
        )
    }

    /// The image in the truncated ring `A_s`, dropping exponents `>= p^s`.
    pub fn truncate(&self, s: u32) -> Poly {
        let q = self.ctx().pow_p(s);
        self.filter(|m| (m.max_exp() as u64) < q)
    }

    /// Substitutes a polynomial for each variable, landing in `target`.
    pub fn substitute(&self, target: Arc<VarSet>, images: &[Poly]) -> Result<Poly> {
        assert_eq!(images.len(), self.vars().len());
        let ctx = self.ctx();
        let mut acc = Poly::zero(target.clone(), ctx);
        for (m, c) in self.terms() {
            let mut t = Poly::constant(target.clone(), ctx, c);
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[v].pow(e as u64))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}
