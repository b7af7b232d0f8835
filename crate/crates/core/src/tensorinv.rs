//! Multilinear invariants of matrices through the map `pi -> f_pi`, where
//! `f_pi(E_{i_1 j_1}, .., E_{i_r j_r}) = 1` iff `j = i o pi`.
//!
//! Class sums are never expanded into tensors. A tuple is evaluated by
//! running over the permutations compatible with it, which form a coset of
//! the stabiliser of `i`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::divpow::{dp_gamma, dp_mul, DPElement, Layout, Monomial, Poly, VarSet};
use crate::error::{cap_check, DpError, Result};
use crate::modarith::{PrimeCtx, Residue};
use crate::partitions::{
    enumerate_partitions, enumerate_theta_alpha, s_alpha_cycle_type, s_reduce, s_reduce_multi,
    MultiPartition, Partition, YoungData,
};
use crate::perm::Perm;

/// Largest `r` for class sums stored by explicit support.
pub const EXPLICIT_MAX_R: u64 = 8;
/// Largest `r` for class sums stored as unions of cycle types.
pub const UNION_MAX_R: u64 = 12;
/// Bound on the number of tuples or contents visited by one enumeration.
pub const ENUMERATION_CAP: u64 = 5_000_000;

/// The tuple `(E_{i_1 j_1}, .., E_{i_r j_r})`, entries 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisTuple {
    pub i: Vec<u8>,
    pub j: Vec<u8>,
}

impl BasisTuple {
    pub fn new(i: Vec<u8>, j: Vec<u8>) -> Self {
        BasisTuple { i, j }
    }

    pub fn len(&self) -> usize {
        self.i.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i.is_empty()
    }

    /// Positions permuted by `sigma`: `(i o sigma, j o sigma)`.
    pub fn permute(&self, sigma: &Perm) -> BasisTuple {
        BasisTuple {
            i: (0..self.len()).map(|l| self.i[sigma.apply(l)]).collect(),
            j: (0..self.len()).map(|l| self.j[sigma.apply(l)]).collect(),
        }
    }

    /// Builds the row-major arrangement of an `n x n` content matrix.
    pub fn from_content(content: &[u16], n: usize) -> BasisTuple {
        let mut i = Vec::new();
        let mut j = Vec::new();
        for (k, &c) in content.iter().enumerate() {
            for _ in 0..c {
                i.push((k / n + 1) as u8);
                j.push((k % n + 1) as u8);
            }
        }
        BasisTuple { i, j }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Support(BTreeMap<Perm, Residue>),
    /// Every permutation whose cycle type lies in the set, coefficient 1.
    Union(BTreeSet<Partition>),
}

/// `sum c_pi E_pi` for permutations of `{1..r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermClassSum {
    r: usize,
    ctx: PrimeCtx,
    repr: Repr,
}

impl PermClassSum {
    pub fn zero(r: usize, ctx: PrimeCtx) -> Self {
        PermClassSum {
            r,
            ctx,
            repr: Repr::Support(BTreeMap::new()),
        }
    }

    pub fn from_perm(pi: Perm, ctx: PrimeCtx) -> Self {
        let r = pi.len();
        PermClassSum {
            r,
            ctx,
            repr: Repr::Support(BTreeMap::from([(pi, 1 % ctx.p())])),
        }
    }

    pub fn from_support(
        r: usize,
        ctx: PrimeCtx,
        support: impl IntoIterator<Item = (Perm, Residue)>,
    ) -> Result<Self> {
        cap_check("r", r as u64, EXPLICIT_MAX_R)?;
        let mut map: BTreeMap<Perm, Residue> = BTreeMap::new();
        for (pi, c) in support {
            if pi.len() != r {
                return Err(DpError::InvalidArgument(format!(
                    "permutation {pi} is not on {r} letters"
                )));
            }
            let e = map.entry(pi).or_insert(0);
            *e = ctx.add(*e, c % ctx.p());
        }
        map.retain(|_, c| *c != 0);
        Ok(PermClassSum {
            r,
            ctx,
            repr: Repr::Support(map),
        })
    }

    /// Sum of all permutations whose cycle type lies in `types`.
    pub fn class_union(r: usize, ctx: PrimeCtx, types: BTreeSet<Partition>) -> Result<Self> {
        cap_check("r", r as u64, UNION_MAX_R)?;
        if let Some(bad) = types.iter().find(|l| l.size() as usize != r) {
            return Err(DpError::InvalidArgument(format!(
                "cycle type {bad} is not a partition of {r}"
            )));
        }
        Ok(PermClassSum {
            r,
            ctx,
            repr: Repr::Union(types),
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ctx(&self) -> PrimeCtx {
        self.ctx
    }

    /// Cycle types making up a union-of-classes sum.
    pub fn cycle_types(&self) -> Option<&BTreeSet<Partition>> {
        match &self.repr {
            Repr::Union(t) => Some(t),
            Repr::Support(_) => None,
        }
    }

    /// The explicit support (expanding unions, `r <= 8`).
    pub fn support(&self) -> Result<BTreeMap<Perm, Residue>> {
        match &self.repr {
            Repr::Support(m) => Ok(m.clone()),
            Repr::Union(types) => {
                cap_check("r", self.r as u64, EXPLICIT_MAX_R)?;
                Ok(Perm::all(self.r)
                    .filter(|pi| types.contains(&pi.cycle_type()))
                    .map(|pi| (pi, 1 % self.ctx.p()))
                    .collect())
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Support(m) => m.is_empty(),
            Repr::Union(t) => t.is_empty(),
        }
    }

    pub fn add(&self, other: &PermClassSum) -> Result<PermClassSum> {
        if self.r != other.r || self.ctx != other.ctx {
            return Err(DpError::Mismatch);
        }
        if let (Repr::Union(a), Repr::Union(b)) = (&self.repr, &other.repr) {
            if a.is_disjoint(b) {
                return PermClassSum::class_union(self.r, self.ctx, a.union(b).cloned().collect());
            }
        }
        let a = self.support()?;
        let b = other.support()?;
        PermClassSum::from_support(self.r, self.ctx, a.into_iter().chain(b))
    }

    pub fn scale(&self, c: Residue) -> Result<PermClassSum> {
        let c = c % self.ctx.p();
        if c == 1 {
            return Ok(self.clone());
        }
        let ctx = self.ctx;
        PermClassSum::from_support(
            self.r,
            ctx,
            self.support()?.into_iter().map(|(pi, x)| (pi, ctx.mul(x, c))),
        )
    }

    /// `sum c_pi E_{sigma pi sigma^-1}`.
    pub fn conjugate_by(&self, sigma: &Perm) -> PermClassSum {
        match &self.repr {
            Repr::Union(_) => self.clone(),
            Repr::Support(m) => PermClassSum {
                r: self.r,
                ctx: self.ctx,
                repr: Repr::Support(
                    m.iter().map(|(pi, &c)| (pi.conjugate_by(sigma), c)).collect(),
                ),
            },
        }
    }

    /// Invariance under conjugation by all of `S_r`, checked on the
    /// adjacent transpositions.
    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric_under(&YoungData::new(vec![self.r as u32]))
    }

    /// Invariance under conjugation by the Young subgroup `S_alpha`,
    /// checked on its adjacent transpositions.
    pub fn is_symmetric_under(&self, young: &YoungData) -> bool {
        match &self.repr {
            Repr::Union(_) => true,
            Repr::Support(m) => (0..self.r.saturating_sub(1)).all(|k| {
                if young.zeta(k) != young.zeta(k + 1) {
                    return true;
                }
                let mut images: Vec<u8> = (0..self.r as u8).collect();
                images.swap(k, k + 1);
                let tau = Perm::from_images(images).unwrap();
                m.iter()
                    .all(|(pi, &c)| m.get(&pi.conjugate_by(&tau)).copied() == Some(c))
            }),
        }
    }
}

/// Calls `f` on the image array of every permutation `pi` with
/// `i[pi(l)] = j[l]` for all `l`.
fn for_each_compatible(i: &[u8], j: &[u8], mut f: impl FnMut(&[u8])) {
    let r = i.len();
    let mut ci = i.to_vec();
    let mut cj = j.to_vec();
    ci.sort_unstable();
    cj.sort_unstable();
    if ci != cj {
        return;
    }
    let candidates: Vec<Vec<u8>> = (0..r)
        .map(|l| (0..r).filter(|&k| i[k] == j[l]).map(|k| k as u8).collect())
        .collect();
    let mut images = vec![0u8; r];
    let mut used = vec![false; r];
    fn rec(
        l: usize,
        candidates: &[Vec<u8>],
        images: &mut [u8],
        used: &mut [bool],
        f: &mut dyn FnMut(&[u8]),
    ) {
        if l == images.len() {
            f(images);
            return;
        }
        for &k in &candidates[l] {
            if !used[k as usize] {
                used[k as usize] = true;
                images[l] = k;
                rec(l + 1, candidates, images, used, f);
                used[k as usize] = false;
            }
        }
    }
    rec(0, &candidates, &mut images, &mut used, &mut f);
}

fn cycle_type_of(images: &[u8]) -> Partition {
    let r = images.len();
    let mut seen = vec![false; r];
    let mut parts = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut l = start;
        while !seen[l] {
            seen[l] = true;
            l = images[l] as usize;
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts)
}

/// Size of the coset of permutations compatible with `i`.
fn coset_size(i: &[u8]) -> u128 {
    let mut counts: HashMap<u8, u128> = HashMap::new();
    for &x in i {
        *counts.entry(x).or_default() += 1;
    }
    counts.values().map(|&c| (1..=c).product::<u128>()).product()
}

/// `sum_{pi : j = i o pi} c_pi` mod p.
pub fn eval_class_sum(u: &PermClassSum, t: &BasisTuple, n: usize) -> Result<Residue> {
    if t.i.len() != u.r || t.j.len() != u.r {
        return Err(DpError::InvalidArgument(format!(
            "tuple length {} does not match r = {}",
            t.i.len(),
            u.r
        )));
    }
    if t.i.iter().chain(t.j.iter()).any(|&x| x == 0 || x as usize > n) {
        return Err(DpError::InvalidArgument(format!("tuple entries must lie in 1..={n}")));
    }
    let ctx = u.ctx;
    let mut acc: Residue = 0;
    match &u.repr {
        Repr::Union(types) => {
            for_each_compatible(&t.i, &t.j, |img| {
                if types.contains(&cycle_type_of(img)) {
                    acc = ctx.add(acc, 1);
                }
            });
        }
        Repr::Support(m) => {
            if (m.len() as u128) <= coset_size(&t.i) {
                for (pi, &c) in m {
                    if (0..u.r).all(|l| t.j[l] == t.i[pi.apply(l)]) {
                        acc = ctx.add(acc, c);
                    }
                }
            } else {
                for_each_compatible(&t.i, &t.j, |img| {
                    let pi = Perm::from_images(img.to_vec()).unwrap();
                    if let Some(&c) = m.get(&pi) {
                        acc = ctx.add(acc, c);
                    }
                });
            }
        }
    }
    Ok(acc)
}

/// Which set of permutations a class sum runs over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ClassSpec {
    /// The `S_r`-class of cycle type `lambda`.
    Class { lambda: Vec<u32> },
    /// The union of the classes s-equivalent to `lambda`.
    SClass { lambda: Vec<u32>, s: u32 },
    /// The `S_alpha`-class with the given `S_alpha` cycle type.
    AlphaClass { alpha: Vec<u32>, cycle_type: String },
    /// The union of `S_alpha`-classes (s, alpha)-equivalent to the given one.
    AlphaSClass {
        alpha: Vec<u32>,
        cycle_type: String,
        s: u32,
    },
    /// The orbit `{sigma pi tau^-1}` under `S_alpha1 x S_alpha2`.
    DoubleCoset {
        alpha1: Vec<u32>,
        alpha2: Vec<u32>,
        perm: String,
    },
}

/// The sum, with coefficient 1, over the permutations described by `spec`.
pub fn class_sum(spec: &ClassSpec, ctx: PrimeCtx) -> Result<PermClassSum> {
    match spec {
        ClassSpec::Class { lambda } => {
            let l = Partition::new(lambda.clone());
            PermClassSum::class_union(l.size() as usize, ctx, BTreeSet::from([l]))
        }
        ClassSpec::SClass { lambda, s } => {
            let l = Partition::new(lambda.clone());
            s_class_sum(&l, ctx, *s)
        }
        ClassSpec::AlphaClass { alpha, cycle_type } => {
            let young = YoungData::new(alpha.clone());
            let target = MultiPartition::parse(cycle_type)?;
            alpha_class_sum(&young, &BTreeSet::from([target]), ctx)
        }
        ClassSpec::AlphaSClass {
            alpha,
            cycle_type,
            s,
        } => {
            let young = YoungData::new(alpha.clone());
            let target = MultiPartition::parse(cycle_type)?;
            let red = s_reduce_multi(&target, ctx, *s, young.m());
            let members: BTreeSet<MultiPartition> = enumerate_theta_alpha(&young)?
                .into_iter()
                .filter(|l| s_reduce_multi(l, ctx, *s, young.m()) == red)
                .collect();
            alpha_class_sum(&young, &members, ctx)
        }
        ClassSpec::DoubleCoset {
            alpha1,
            alpha2,
            perm,
        } => {
            let y1 = YoungData::new(alpha1.clone());
            let y2 = YoungData::new(alpha2.clone());
            if y1.r() != y2.r() {
                return Err(DpError::InvalidArgument(
                    "compositions of different sizes".into(),
                ));
            }
            cap_check("r", y1.r() as u64, EXPLICIT_MAX_R)?;
            let pi = Perm::parse(y1.r(), perm)?;
            double_coset_sum(&y1, &y2, &pi, ctx)
        }
    }
}

/// Sum over the s-equivalence class of `lambda`.
pub fn s_class_sum(lambda: &Partition, ctx: PrimeCtx, s: u32) -> Result<PermClassSum> {
    let r = lambda.size();
    let red = s_reduce(lambda, ctx, s);
    let types: BTreeSet<Partition> = enumerate_partitions(r, None, None)
        .into_iter()
        .filter(|l| s_reduce(l, ctx, s) == red)
        .collect();
    PermClassSum::class_union(r as usize, ctx, types)
}

fn alpha_class_sum(
    young: &YoungData,
    types: &BTreeSet<MultiPartition>,
    ctx: PrimeCtx,
) -> Result<PermClassSum> {
    let r = young.r();
    cap_check("r", r as u64, EXPLICIT_MAX_R)?;
    let mut support = Vec::new();
    for pi in Perm::all(r) {
        if types.contains(&s_alpha_cycle_type(&pi, young)?) {
            support.push((pi, 1));
        }
    }
    PermClassSum::from_support(r, ctx, support)
}

/// Sum over `{sigma pi tau^-1 : sigma in S_alpha1, tau in S_alpha2}`.
pub fn double_coset_sum(
    y1: &YoungData,
    y2: &YoungData,
    pi: &Perm,
    ctx: PrimeCtx,
) -> Result<PermClassSum> {
    let g1 = y1.subgroup_elements();
    let g2 = y2.subgroup_elements();
    let mut set = BTreeSet::new();
    for s in &g1 {
        for t in &g2 {
            set.insert(s.compose(pi).compose(&t.inverse()));
        }
    }
    PermClassSum::from_support(pi.len(), ctx, set.into_iter().map(|x| (x, 1)))
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for x in 0..k {
        acc = acc * (n - x) as u128 / (x + 1) as u128;
    }
    acc
}

/// All compositions of `r` into `parts` nonnegative parts.
fn compositions(r: u32, parts: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; parts];
    fn rec(k: usize, rest: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if k + 1 == cur.len() {
            cur[k] = rest as u16;
            out.push(cur.clone());
            return;
        }
        for a in (0..=rest).rev() {
            cur[k] = a as u16;
            rec(k + 1, rest - a, cur, out);
        }
    }
    if parts == 0 {
        if r == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, r, &mut cur, &mut out);
    out
}

/// D_s membership: the class sum vanishes on every tuple in which some
/// pair `(i_l, j_l)` occurs at least `p^s` times. Requires a symmetric
/// class sum; tuples are visited up to position permutations and value
/// relabelling.
pub fn is_in_ds_tensor(u: &PermClassSum, n: usize, s: u32) -> Result<bool> {
    let ctx = u.ctx;
    let q = ctx.pow_p(s);
    let r = u.r;
    if q > r as u64 {
        return Ok(true);
    }
    if !u.is_symmetric() {
        return Err(DpError::NotSymmetric);
    }
    let q = q as usize;
    let k = r - q;
    let mut pinned: Vec<(u8, u8)> = vec![(1, 1)];
    if n >= 2 {
        pinned.push((1, 2));
    }
    for &(a, b) in &pinned {
        let used0 = a.max(b) as usize;
        let v = n.min(used0 + 2 * k);
        let npairs = (v * v) as u64;
        let count = binomial_u128(npairs + k as u64 - 1, k as u64);
        if count > ENUMERATION_CAP as u128 {
            return Err(DpError::CapExceeded {
                what: "canonical tuples",
                value: count.min(u64::MAX as u128) as u64,
                cap: ENUMERATION_CAP,
            });
        }
        // Nondecreasing sequences of pair indices.
        let mut idx = vec![0usize; k];
        loop {
            let mut i = vec![a; q];
            let mut j = vec![b; q];
            let mut used = vec![false; v + 1];
            used[a as usize] = true;
            used[b as usize] = true;
            for &x in &idx {
                let (pi, pj) = (x / v + 1, x % v + 1);
                i.push(pi as u8);
                j.push(pj as u8);
                used[pi] = true;
                used[pj] = true;
            }
            let top = (1..=v).rev().find(|&x| used[x]).unwrap();
            if (1..=top).all(|x| used[x])
                && eval_class_sum(u, &BasisTuple::new(i, j), n)? != 0
            {
                return Ok(false);
            }
            // advance
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if idx[pos] + 1 < v * v {
                    idx[pos] += 1;
                    for later in pos + 1..k {
                        idx[later] = idx[pos];
                    }
                    pos = usize::MAX;
                    break;
                }
            }
            if pos != usize::MAX {
                break;
            }
        }
    }
    Ok(true)
}

/// The same test by visiting every tuple in `[n]^{2r}`; `r <= 5`.
pub fn is_in_ds_tensor_full(u: &PermClassSum, n: usize, s: u32) -> Result<bool> {
    let r = u.r;
    cap_check("r", r as u64, 5)?;
    let q = u.ctx.pow_p(s);
    let total = (n as u64).pow(2 * r as u32);
    cap_check("tuples", total, ENUMERATION_CAP)?;
    for code in 0..total {
        let mut c = code;
        let mut i = Vec::with_capacity(r);
        let mut j = Vec::with_capacity(r);
        for _ in 0..r {
            i.push((c % n as u64) as u8 + 1);
            c /= n as u64;
            j.push((c % n as u64) as u8 + 1);
            c /= n as u64;
        }
        let mut counts: HashMap<(u8, u8), u64> = HashMap::new();
        for l in 0..r {
            *counts.entry((i[l], j[l])).or_default() += 1;
        }
        if counts.values().all(|&m| m < q) {
            continue;
        }
        if eval_class_sum(u, &BasisTuple::new(i, j), n)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The symmetric multilinear function of a symmetric class sum as an
/// element of `D^r` in the variables `x[i,j]`.
pub fn to_dp_element(u: &PermClassSum, n: usize) -> Result<DPElement> {
    to_dp_element_young(u, &YoungData::new(vec![u.r as u32]), n)
}

/// The `S_alpha`-symmetric multilinear function of `u` as an element of
/// `D^alpha` in the variables of `m = |alpha|` matrices. Positions in block
/// `q` take the `q`-th matrix.
pub fn to_dp_element_young(u: &PermClassSum, young: &YoungData, n: usize) -> Result<DPElement> {
    if young.r() != u.r {
        return Err(DpError::Mismatch);
    }
    if !u.is_symmetric_under(young) {
        return Err(DpError::NotSymmetric);
    }
    let vars = VarSet::matrices(young.m(), n);
    let mut terms = Vec::new();
    for_each_alpha_content(young, n, |exps, t| {
        let c = eval_class_sum(u, t, n)?;
        if c != 0 {
            terms.push((Monomial::new(exps.to_vec()), c));
        }
        Ok(())
    })?;
    Ok(DPElement::from_terms(vars, u.ctx, terms))
}

/// Calls `f` with the exponent vector and row-major arrangement of every
/// content of multidegree `alpha` in `m` matrices of size `n`.
fn for_each_alpha_content(
    young: &YoungData,
    n: usize,
    mut f: impl FnMut(&[u16], &BasisTuple) -> Result<()>,
) -> Result<()> {
    let mut count: u128 = 1;
    for &a in young.alpha() {
        count = count.saturating_mul(binomial_u128((n * n) as u64 + a as u64 - 1, a as u64));
    }
    cap_check("contents", count.min(u64::MAX as u128) as u64, ENUMERATION_CAP)?;
    let per_slot: Vec<Vec<Vec<u16>>> = young
        .alpha()
        .iter()
        .map(|&a| compositions(a, n * n))
        .collect();
    let mut choice = vec![0usize; per_slot.len()];
    loop {
        let mut exps = Vec::with_capacity(n * n * per_slot.len());
        let mut i = Vec::new();
        let mut j = Vec::new();
        for (q, c) in choice.iter().enumerate() {
            let content = &per_slot[q][*c];
            exps.extend_from_slice(content);
            let t = BasisTuple::from_content(content, n);
            i.extend(t.i);
            j.extend(t.j);
        }
        f(&exps, &BasisTuple::new(i, j))?;
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < per_slot[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            return Ok(());
        }
    }
}

/// Divided `p_k = tr(X^k)/k` in `D^k`, from exact closed-walk counts:
/// the coefficient of `x^(t)` is `N_t prod t! / k` where `N_t` counts the
/// closed walks of length `k` with edge content `t`.
pub fn divided_power_sum_via_walks(k: usize, n: usize, ctx: PrimeCtx) -> Result<DPElement> {
    if k == 0 {
        return Err(DpError::InvalidArgument("k must be positive".into()));
    }
    cap_check("walks", (n as u64).saturating_pow(k as u32), ENUMERATION_CAP)?;
    let vars = VarSet::matrix(n);
    let mut counts: HashMap<Vec<u16>, u128> = HashMap::new();
    let total = (n as u64).pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let mut walk = Vec::with_capacity(k);
        for _ in 0..k {
            walk.push((c % n as u64) as usize);
            c /= n as u64;
        }
        let mut content = vec![0u16; n * n];
        for l in 0..k {
            content[walk[l] * n + walk[(l + 1) % k]] += 1;
        }
        *counts.entry(content).or_default() += 1;
    }
    let mut terms = Vec::new();
    for (content, walks) in counts {
        let fact: u128 = content
            .iter()
            .map(|&e| (1..=e as u128).product::<u128>())
            .product();
        let num = walks * fact;
        debug_assert_eq!(num % k as u128, 0);
        let coeff = ((num / k as u128) % ctx.p() as u128) as Residue;
        terms.push((Monomial::new(content), coeff));
    }
    Ok(DPElement::from_terms(vars, ctx, terms))
}

/// Divided `p_lambda = prod_k gamma_{m_k}(divided p_k)`.
pub fn divided_p_lambda_via_walks(
    lambda: &Partition,
    n: usize,
    ctx: PrimeCtx,
) -> Result<DPElement> {
    let vars = VarSet::matrix(n);
    let mut acc = DPElement::one(vars, ctx);
    for (k, m) in lambda.multiplicities() {
        let pk = divided_power_sum_via_walks(k as usize, n, ctx)?;
        acc = dp_mul(&acc, &dp_gamma(m as u64, &pk)?)?;
    }
    Ok(acc)
}

/// The DP element of a union-of-classes sum through the walk route.
pub fn to_dp_element_via_walks(u: &PermClassSum, n: usize) -> Result<DPElement> {
    let types = u.cycle_types().ok_or_else(|| {
        DpError::Unsupported("walk route needs a union of conjugacy classes".into())
    })?;
    let mut acc = DPElement::zero(VarSet::matrix(n), u.ctx);
    for l in types {
        acc = acc.add(&divided_p_lambda_via_walks(l, n, u.ctx)?)?;
    }
    Ok(acc)
}

/// The partial polarisation `P_alpha(f)` of an ordinary polynomial in
/// `m` matrices, evaluated lazily on basis tuples.
#[derive(Debug, Clone)]
pub struct Polarisation {
    f: Poly,
    young: YoungData,
    n: usize,
}

/// Checks that `f` is homogeneous of multidegree `alpha` and wraps it.
pub fn polarise(f: &Poly, young: &YoungData) -> Result<Polarisation> {
    let (m, n) = match f.vars().layout() {
        Layout::Matrices { m, n } => (m, n),
        _ => {
            return Err(DpError::InvalidArgument(
                "polarisation needs matrix variables".into(),
            ))
        }
    };
    if m != young.m() {
        return Err(DpError::Mismatch);
    }
    let alpha: Vec<u32> = young.alpha().to_vec();
    for (mono, _) in f.terms() {
        if mono.multidegree(f.vars()) != alpha {
            return Err(DpError::InvalidArgument(format!(
                "term of multidegree {:?}, expected {alpha:?}",
                mono.multidegree(f.vars())
            )));
        }
    }
    Ok(Polarisation {
        f: f.clone(),
        young: young.clone(),
        n,
    })
}

impl Polarisation {
    /// Coefficient of `s_1 .. s_r` in `f(X_1, .., X_m)` with
    /// `X_q = sum_{l in block q} s_l E_{i_l j_l}`.
    pub fn eval(&self, t: &BasisTuple) -> Result<Residue> {
        let r = self.young.r();
        if t.len() != r {
            return Err(DpError::InvalidArgument("tuple length".into()));
        }
        let ctx = self.f.ctx();
        let names: Vec<String> = (1..=r).map(|l| format!("s{l}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let svars = VarSet::plain(&refs)?;
        let fvars = self.f.vars().clone();
        let mut images = vec![Poly::zero(svars.clone(), ctx); fvars.len()];
        for l in 0..r {
            let v = fvars.matrix_var(
                self.young.zeta(l),
                t.i[l] as usize,
                t.j[l] as usize,
            );
            images[v] = images[v].add(&Poly::var(svars.clone(), ctx, l))?;
        }
        let mut acc: Residue = 0;
        let target = Monomial::new(vec![1; r]);
        for (mono, c) in self.f.terms() {
            let single = Poly::monomial(fvars.clone(), ctx, mono.clone(), c);
            let expanded = single
                .substitute(svars.clone(), &images)?
                .filter(|x| x.max_exp() <= 1);
            acc = ctx.add(acc, expanded.coeff(&target));
        }
        Ok(acc)
    }

    /// The values on all content tuples, as an element of `D` in the
    /// same variables as `f`.
    pub fn to_dp(&self) -> Result<DPElement> {
        let mut terms = Vec::new();
        for_each_alpha_content(&self.young, self.n, |exps, t| {
            let v = self.eval(t)?;
            if v != 0 {
                terms.push((Monomial::new(exps.to_vec()), v));
            }
            Ok(())
        })?;
        Ok(DPElement::from_terms(
            self.f.vars().clone(),
            self.f.ctx(),
            terms,
        ))
    }
}
